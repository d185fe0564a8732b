//! Read a TMX translation memory, inspect units and parse issues, and
//! re-serialize it canonically.
//!
//! ```text
//! cargo run -p locforge --example parse_tmx
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use locforge::locfile::{parse_tmx, write_tmx};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/demo.tmx");
    let bytes = std::fs::read(&path).expect("demo.tmx ships with the crate");

    // Parsing is lenient: a tu with a missing language variant is skipped
    // and reported, not fatal. Inline markup like <ph> flattens to its
    // text content.
    let (units, issues) = parse_tmx(&bytes).expect("well-formed TMX");
    println!("{}: {} units, {} issue(s)", path.display(), units.len(), issues.len());
    for issue in &issues {
        println!("  {issue}");
    }

    println!();
    for unit in &units {
        println!("[{}]", unit.source.key);
        println!("  en: {}", unit.source.text);
        println!("  fr: {}", unit.target.text);
        for (k, v) in &unit.source.meta {
            println!("  meta {k} = {v}");
        }
        if !unit.origin.is_empty() {
            println!("  origin {}", unit.origin);
        }
    }

    // Writing always produces the same canonical form; parse(write(units))
    // gives the units back exactly.
    let canonical = write_tmx(&units, &BTreeMap::new()).unwrap();
    let (reparsed, reissues) = parse_tmx(&canonical).unwrap();
    assert_eq!(reparsed, units);
    assert!(reissues.is_empty());
    println!();
    println!("canonical serialization: {} bytes, reparses to identical units", canonical.len());
}
