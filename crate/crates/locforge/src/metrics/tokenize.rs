//! mteval-v13a tokenization.
//!
//! This is the `tok:13a` step named in the metric signatures: the tokenizer
//! of the NIST mteval-v13a script, in its widely pinned regex formulation.
//! Case is preserved; the rules are language-blind. The exact rule sequence
//! (order matters) is:
//!
//! 1. drop `<skipped>` markers, join hyphen-wrapped linebreaks, newlines → spaces;
//! 2. if the line contains `&`, decode `&quot; &amp; &lt; &gt;`;
//! 3. pad ASCII symbols and punctuation (except `. , -`) with spaces;
//! 4. split `.` and `,` off when either neighbor is a non-digit;
//! 5. split `-` off when preceded by a digit;
//! 6. collapse all whitespace.

use std::sync::OnceLock;

use regex::Regex;

struct Rules {
    symbols: Regex,
    punct_before: Regex,
    punct_after: Regex,
    digit_dash: Regex,
}

fn rules() -> &'static Rules {
    static RULES: OnceLock<Rules> = OnceLock::new();
    RULES.get_or_init(|| Rules {
        symbols: Regex::new(r"([\x20-\x26\x28-\x2b\x2f\x3a-\x40\x5b-\x60\x7b-\x7e])").unwrap(),
        punct_before: Regex::new(r"([^0-9])([\.,])").unwrap(),
        punct_after: Regex::new(r"([\.,])([^0-9])").unwrap(),
        digit_dash: Regex::new(r"([0-9])(-)").unwrap(),
    })
}

/// Tokenizes into the canonical space-joined form.
///
/// Equivalent to `tokenize_13a(text).join(" ")` without the vector.
pub fn tokenize_13a_joined(text: &str) -> String {
    let mut line = text.replace("<skipped>", "").replace("-\n", "").replace('\n', " ");
    if line.contains('&') {
        line = line
            .replace("&quot;", "\"")
            .replace("&amp;", "&")
            .replace("&lt;", "<")
            .replace("&gt;", ">");
    }
    let r = rules();
    let line = format!(" {line} ");
    let line = r.symbols.replace_all(&line, " $1 ");
    let line = r.punct_before.replace_all(&line, "$1 $2 ");
    let line = r.punct_after.replace_all(&line, " $1 $2");
    let line = r.digit_dash.replace_all(&line, "$1 $2 ");
    let mut out = String::with_capacity(line.len());
    for (i, tok) in line.split_whitespace().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(tok);
    }
    out
}

/// Tokenizes `text` with the mteval-13a rules.
pub fn tokenize_13a(text: &str) -> Vec<String> {
    let joined = tokenize_13a_joined(text);
    if joined.is_empty() {
        Vec::new()
    } else {
        joined.split(' ').map(str::to_string).collect()
    }
}

/// Token count without materializing the tokens.
pub fn count_13a_tokens(text: &str) -> usize {
    let joined = tokenize_13a_joined(text);
    if joined.is_empty() {
        0
    } else {
        joined.split(' ').count()
    }
}
