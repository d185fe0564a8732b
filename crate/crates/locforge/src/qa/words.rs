//! Word segmentation and term matching for the QA checks.
//!
//! A word is a maximal run of Unicode alphanumerics plus internal
//! apostrophes (`'` and `’`); edge apostrophes are trimmed. Term lookups
//! use plain non-alphanumeric boundaries instead, so French elision never
//! hides a term: `l'épée` is one word but still exposes `épée`.

pub fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Byte spans of the words in `text`, in order.
pub fn word_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if is_word_char(c) || is_apostrophe(c) {
            start.get_or_insert(i);
        } else if let Some(s) = start.take() {
            push_trimmed(text, s, i, &mut spans);
        }
    }
    if let Some(s) = start {
        push_trimmed(text, s, text.len(), &mut spans);
    }
    spans
}

fn push_trimmed(text: &str, start: usize, end: usize, spans: &mut Vec<(usize, usize)>) {
    let word = &text[start..end];
    let trimmed = word.trim_matches(is_apostrophe);
    if trimmed.is_empty() {
        return;
    }
    let offset = word.len() - word.trim_start_matches(is_apostrophe).len();
    spans.push((start + offset, start + offset + trimmed.len()));
}

/// Case-folded equality on short word-sized strings.
fn fold_eq(a: &str, b: &str) -> bool {
    a.chars().flat_map(char::to_lowercase).eq(b.chars().flat_map(char::to_lowercase))
}

/// Whether the word at `span` matches `target`, either whole or as one of
/// its apostrophe-separated pieces (so `t'es` matches both `t` and `es`).
/// `target` is expected case-folded.
pub fn word_matches(text: &str, span: (usize, usize), target: &str) -> bool {
    let word = &text[span.0..span.1];
    if fold_eq(word, target) {
        return true;
    }
    word.split(is_apostrophe).any(|piece| fold_eq(piece, target))
}

/// Byte spans of every word-bounded occurrence of `term` in `text`.
///
/// Both ends of the occurrence must touch a non-alphanumeric character or
/// the text edge. `term` may span several words (`viande de chien`).
pub fn find_term_spans(text: &str, term: &str, case_sensitive: bool) -> Vec<(usize, usize)> {
    if term.is_empty() {
        return Vec::new();
    }
    let mut spans = Vec::new();
    let positions = text.char_indices().map(|(i, _)| i).chain(std::iter::once(text.len()));
    for start in positions {
        let Some(len) = match_at(&text[start..], term, case_sensitive) else {
            continue;
        };
        let end = start + len;
        let left_ok = text[..start].chars().next_back().is_none_or(|c| !is_word_char(c));
        let right_ok = text[end..].chars().next().is_none_or(|c| !is_word_char(c));
        if left_ok && right_ok {
            spans.push((start, end));
        }
    }
    spans
}

/// Length in bytes of `term` matched at the head of `text`, if it matches.
fn match_at(text: &str, term: &str, case_sensitive: bool) -> Option<usize> {
    if case_sensitive {
        return text.starts_with(term).then(|| term.len());
    }
    let mut term_chars = term.chars().flat_map(char::to_lowercase);
    let mut len = 0;
    let mut text_chars = text.char_indices();
    loop {
        let Some(expected) = term_chars.next() else {
            return Some(len);
        };
        let (i, c) = text_chars.next()?;
        let mut folded = c.to_lowercase();
        if folded.next() != Some(expected) {
            return None;
        }
        for extra in folded {
            if term_chars.next() != Some(extra) {
                return None;
            }
        }
        len = i + c.len_utf8();
    }
}
