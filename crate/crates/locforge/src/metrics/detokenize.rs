//! Language-aware rejoining of space-separated tokens.

/// Rejoins tokens produced by a Moses-style tokenizer.
///
/// Rules applied, in order of precedence:
/// - `, . ! ? : ;` attach to the preceding token; in French, `? ! : ;` get
///   a narrow no-break space (U+202F) instead of attaching directly.
/// - A token ending in an apostrophe (`'` or `’`) absorbs the following
///   token: `l' homme` → `l'homme`.
/// - Straight double quotes pair by alternation: the first of a pair opens
///   (attaches right), the second closes (attaches left).
/// - Guillemets attach inward, with no-break spaces (U+00A0) in French:
///   `« mot »` → `«\u{a0}mot\u{a0}»`.
///
/// Anything else is joined with a single space; a lone token passes through
/// unchanged. `lang` is an IETF-style code; only the primary subtag is
/// inspected, and any language other than French gets the English rules.
pub fn detokenize(text: &str, lang: &str) -> String {
    let french = lang
        .split(['-', '_'])
        .next()
        .is_some_and(|primary| primary.eq_ignore_ascii_case("fr"));

    let mut out = String::with_capacity(text.len());
    let mut quote_open = false;
    let mut glue_next = true;
    for token in text.split_whitespace() {
        let sep = if glue_next {
            ""
        } else {
            match token {
                "," | "." => "",
                "?" | "!" | ":" | ";" => {
                    if french {
                        "\u{202F}"
                    } else {
                        ""
                    }
                }
                "\"" if quote_open => "",
                "»" => {
                    if french {
                        "\u{A0}"
                    } else {
                        ""
                    }
                }
                _ => " ",
            }
        };
        out.push_str(sep);
        out.push_str(token);

        glue_next = match token {
            "\"" => {
                quote_open = !quote_open;
                quote_open
            }
            "«" => {
                if french {
                    out.push('\u{A0}');
                }
                true
            }
            _ => token.ends_with('\'') || token.ends_with('’'),
        };
    }
    out
}
