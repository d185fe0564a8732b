//! Parallel plain-text export: one segment per line, source and target in
//! lockstep files.

use super::{LocfileError, TranslationUnit};

/// Writes paired line files from any sequence of (source, target) texts.
/// Every line ends with LF, including the last; an empty input produces
/// two empty files. Texts must not contain newline characters.
pub fn write_parallel<'a, I>(pairs: I) -> Result<(Vec<u8>, Vec<u8>), LocfileError>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (index, (s, t)) in pairs.into_iter().enumerate() {
        if s.contains(['\n', '\r']) || t.contains(['\n', '\r']) {
            return Err(LocfileError::EmbeddedNewline { index });
        }
        src.extend_from_slice(s.as_bytes());
        src.push(b'\n');
        tgt.extend_from_slice(t.as_bytes());
        tgt.push(b'\n');
    }
    Ok((src, tgt))
}

/// [`write_parallel`] over translation units.
pub fn write_bitext(units: &[TranslationUnit]) -> Result<(Vec<u8>, Vec<u8>), LocfileError> {
    write_parallel(units.iter().map(|u| (u.source.text.as_str(), u.target.text.as_str())))
}

/// Reads one-segment-per-line UTF-8 text as written by [`write_parallel`].
/// A UTF-8 BOM is stripped; CRLF endings are tolerated.
pub fn read_lines(bytes: &[u8]) -> Result<Vec<String>, LocfileError> {
    let bytes = bytes.strip_prefix("\u{FEFF}".as_bytes()).unwrap_or(bytes);
    let mut lines = Vec::new();
    for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw)
            .map_err(|_| LocfileError::EncodingError { line: i as u64 + 1 })?;
        lines.push(line.to_string());
    }
    // A trailing LF produces one phantom empty line; drop it.
    if lines.last().is_some_and(String::is_empty) {
        lines.pop();
    }
    Ok(lines)
}
