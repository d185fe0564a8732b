//! The placeholder lexer on tricky game strings: engine tags, printf and
//! named variables, and project-specific literals.
//!
//! ```text
//! cargo run -p locforge --example extract_placeholders
//! ```

use locforge::locfile::{extract_placeholders, extract_placeholders_with, PlaceholderConfig};

fn show(text: &str, spans: &[locforge::PlaceholderSpan]) {
    println!("{text}");
    for span in spans {
        println!("  {:>3}..{:<3} {:?} {}", span.start, span.end, span.kind, span.literal);
    }
    if spans.is_empty() {
        println!("  (none)");
    }
}

fn main() {
    let samples = [
        "You gain %d gold and %{item_count} items.",
        "<Alias=Player>, meet me at the <Alias.ShortName=Inn>.",
        "Press [icon_attack] to strike. 100%% guaranteed.",
        "Malformed: <unterminated and [unclosed stay plain text.",
        "Héroïne: %s fought at the Château.",
    ];
    for text in samples {
        show(text, &extract_placeholders(text));
        println!();
    }

    // Projects can extend the grammar with exact literals, useful for
    // engines with unusual markers. Extras win over built-ins when they
    // match a longer stretch.
    let config = PlaceholderConfig { extra_literals: vec!["{0}".into(), "|n".into()] };
    let text = "Deal {0} damage.|nCosts {0} mana.";
    show(text, &extract_placeholders_with(text, &config));

    // Spans never overlap and always cover the exact literal, so splicing
    // them back into the gaps reconstructs the input.
    let spans = extract_placeholders_with(text, &config);
    let mut rebuilt = String::new();
    let mut cursor = 0;
    for span in &spans {
        rebuilt.push_str(&text[cursor..span.start]);
        rebuilt.push_str(&span.literal);
        cursor = span.end;
    }
    rebuilt.push_str(&text[cursor..]);
    assert_eq!(rebuilt, text);
    println!();
    println!("splicing the {} spans back reconstructs the input", spans.len());
}
