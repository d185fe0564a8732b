//! The NMT training-recipe document: a fixed, versioned description of
//! the model and training configuration the corpus is meant to feed.
//!
//! ```text
//! cargo run -p locforge --example emit_recipe
//! ```

use std::collections::BTreeMap;

use locforge::corpus::emit_recipe;

fn main() {
    // The recipe is inert data, not a trainer: downstream tooling reads it
    // to configure the actual NMT framework.
    let recipe = emit_recipe(None).unwrap();
    println!("default recipe (schema {}):", recipe.schema_version);
    println!("{}", recipe.to_json());

    let mut overrides = BTreeMap::new();
    overrides.insert("train_steps".to_string(), serde_json::json!(50_000));
    overrides.insert("beam_size".to_string(), serde_json::json!(12));
    let tuned = emit_recipe(Some(&overrides)).unwrap();
    println!("with overrides: train_steps {}, beam_size {}", tuned.train_steps, tuned.beam_size);

    // Unknown fields and out-of-type values are rejected, never ignored.
    let mut bad = BTreeMap::new();
    bad.insert("warmup_steps".to_string(), serde_json::json!(4000));
    let err = emit_recipe(Some(&bad)).unwrap_err();
    println!("bad override: {err}");
}
