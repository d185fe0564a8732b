//! Typographic normalization of segment text.
//!
//! Game localization files mix straight and curly quotes, ASCII dot
//! ellipses, and ad-hoc spacing around French punctuation. This pass
//! unifies them under one explicit rule table so that equality comparisons
//! (untranslated detection, deduplication) and exported corpora are
//! consistent. Placeholder spans are exempt: engine markup like
//! `<color:red>` passes through byte-for-byte.
//!
//! Rules, in application order:
//! 1. `...` → `…`
//! 2. Double-quote unification per target convention: French maps `“ ”` to
//!    `« »` and alternates straight `"` into guillemet pairs; other
//!    languages map `“ ” « »` to straight `"`.
//! 3. French: ASCII apostrophe → `’`.
//! 4. Runs of spacing characters (including tabs, newlines, and no-break
//!    spaces with no French role) collapse to one plain space, so admitted
//!    segments are single-line.
//! 5. French spacing: U+202F before `? ! : ;` (inserted if missing,
//!    replacing other spaces; not between grouped punctuation marks, and
//!    not for a colon between digits), U+00A0 after `«` and before `»`.
//! 6. Leading/trailing whitespace is trimmed.
//!
//! The pass is idempotent, and it only grows a string by the no-break
//! spaces it inserts.

use crate::locfile::extract_placeholders;

fn is_space_run_char(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r' | '\u{A0}' | '\u{202F}')
}

fn is_spaced_mark(c: char) -> bool {
    matches!(c, '?' | '!' | ':' | ';')
}

struct Normalizer {
    french: bool,
    /// Parity of straight double quotes seen so far; `false` means the
    /// next one opens.
    quote_open: bool,
    out: String,
}

impl Normalizer {
    /// Pushes one character, supplying the no-break space a preceding `«`
    /// calls for. Marks that bring their own U+202F are excluded so the
    /// two insertions never stack.
    fn emit(&mut self, c: char) {
        if self.french
            && c != '\u{A0}'
            && !is_spaced_mark(c)
            && self.out.ends_with('«')
        {
            self.out.push('\u{A0}');
        }
        self.out.push(c);
    }

    /// Appends one placeholder-free chunk of text, normalized.
    fn push_gap(&mut self, text: &str) {
        let text = text.replace("...", "…");
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                '“' | '”' | '«' | '»' | '"' => {
                    self.push_quote(c);
                    i += 1;
                }
                '\'' if self.french => {
                    self.emit('’');
                    i += 1;
                }
                c if is_space_run_char(c) => {
                    let mut j = i;
                    while j < chars.len() && is_space_run_char(chars[j]) {
                        j += 1;
                    }
                    self.push_spacing(chars.get(j).copied());
                    i = j;
                }
                '?' | '!' | ':' | ';' if self.french => {
                    let prev = self.out.chars().last();
                    let grouped = prev.is_none()
                        || matches!(prev, Some('?' | '!' | ':' | ';' | '\u{202F}'));
                    let digit_colon = c == ':'
                        && prev.is_some_and(|p| p.is_ascii_digit())
                        && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit());
                    if !grouped && !digit_colon {
                        self.out.push('\u{202F}');
                    }
                    self.out.push(c);
                    i += 1;
                }
                _ => {
                    self.emit(c);
                    i += 1;
                }
            }
        }
    }

    fn push_quote(&mut self, c: char) {
        if !self.french {
            self.emit('"');
            return;
        }
        let open = match c {
            '“' | '«' => true,
            '”' | '»' => false,
            _ => {
                self.quote_open = !self.quote_open;
                self.quote_open
            }
        };
        if open {
            self.emit('«');
        } else {
            if !self.out.is_empty() && !self.out.ends_with('\u{A0}') {
                self.out.push('\u{A0}');
            }
            self.out.push('»');
        }
    }

    /// Emits the replacement for a run of spacing characters, given the
    /// character right after the run.
    fn push_spacing(&mut self, next: Option<char>) {
        if self.french {
            match next {
                Some(c) if is_spaced_mark(c) => {
                    self.out.push('\u{202F}');
                    return;
                }
                Some('»') => {
                    self.out.push('\u{A0}');
                    return;
                }
                _ => {}
            }
            if self.out.ends_with('«') {
                self.out.push('\u{A0}');
                return;
            }
        }
        self.out.push(' ');
    }

    /// Settles spacing owed at a chunk boundary, e.g. before a placeholder
    /// that directly follows an opening guillemet.
    fn close_boundary(&mut self) {
        if self.french && self.out.ends_with('«') {
            self.out.push('\u{A0}');
        }
    }
}

/// Normalizes typography per the module rule table; see the module docs.
pub fn normalize_typography(text: &str, lang: &str) -> String {
    let french = lang
        .split(['-', '_'])
        .next()
        .is_some_and(|primary| primary.eq_ignore_ascii_case("fr"));

    let spans = extract_placeholders(text);
    let mut n = Normalizer { french, quote_open: false, out: String::with_capacity(text.len()) };
    let mut pos = 0;
    for span in &spans {
        n.push_gap(&text[pos..span.start]);
        n.close_boundary();
        n.out.push_str(&span.literal);
        pos = span.end;
    }
    n.push_gap(&text[pos..]);
    n.close_boundary();
    n.out.trim_matches(|c: char| c.is_whitespace()).to_string()
}

#[cfg(test)]
mod tests {
    use super::normalize_typography;

    fn fr(text: &str) -> String {
        normalize_typography(text, "fr")
    }

    fn en(text: &str) -> String {
        normalize_typography(text, "en")
    }

    #[test]
    fn french_question_mark_gets_narrow_space() {
        assert_eq!(fr("Pourquoi ?"), "Pourquoi\u{202F}?");
        assert_eq!(fr("Pourquoi?"), "Pourquoi\u{202F}?");
        assert_eq!(fr("Pourquoi\u{A0}?"), "Pourquoi\u{202F}?");
        assert_eq!(fr("Quoi?!"), "Quoi\u{202F}?!");
    }

    #[test]
    fn colon_between_digits_is_left_alone() {
        assert_eq!(fr("Rendez-vous à 10:30"), "Rendez-vous à 10:30");
        assert_eq!(fr("Score : 10"), "Score\u{202F}: 10");
        assert_eq!(fr("Attention: piège"), "Attention\u{202F}: piège");
    }

    #[test]
    fn ellipsis_and_quotes_unify() {
        assert_eq!(en("\"Hello...\""), "\"Hello…\"");
        assert_eq!(en("“Hello”"), "\"Hello\"");
        assert_eq!(en("«Hi»"), "\"Hi\"");
        assert_eq!(fr("“Bonjour”"), "«\u{A0}Bonjour\u{A0}»");
        assert_eq!(fr("\"Bonjour\""), "«\u{A0}Bonjour\u{A0}»");
        assert_eq!(fr("« déjà  bon »"), "«\u{A0}déjà bon\u{A0}»");
    }

    #[test]
    fn french_apostrophe_is_curly() {
        assert_eq!(fr("l'homme"), "l’homme");
        assert_eq!(en("it's"), "it's");
    }

    #[test]
    fn spaces_collapse_and_trim() {
        assert_eq!(en("  a   b  "), "a b");
        assert_eq!(fr("a\u{A0}b"), "a b");
        assert_eq!(en("line one\nline two\r\n"), "line one line two");
        assert_eq!(fr("col\tonne"), "col onne");
    }

    #[test]
    fn placeholders_are_exempt() {
        assert_eq!(fr("Appuyez sur <color:red> maintenant"), "Appuyez sur <color:red> maintenant");
        assert_eq!(fr("Gain: %d"), "Gain\u{202F}: %d");
        assert_eq!(en("Use [item:3]..."), "Use [item:3]…");
    }

    #[test]
    fn idempotent_on_examples() {
        for (text, lang) in [
            ("Pourquoi ?", "fr"),
            ("\"Bonjour...\"  dit-il !", "fr"),
            ("« déjà  bon »", "fr"),
            ("«?", "fr"),
            ("x»", "fr"),
            ("«<b>ok</b>»", "fr"),
            ("\"Hello...\"", "en"),
            ("mixed “x”  and «y» ... ", "en"),
            ("A <tag:v> B : C", "fr"),
        ] {
            let once = normalize_typography(text, lang);
            let twice = normalize_typography(&once, lang);
            assert_eq!(once, twice, "not idempotent for {text:?}");
        }
    }
}
