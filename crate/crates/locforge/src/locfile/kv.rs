//! Key/value string tables: two-column TSV or CSV exports of game string
//! databases.

use serde::{Deserialize, Serialize};

use super::{LocfileError, RawEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableFormat {
    Tsv,
    Csv,
}

/// A recoverable problem in one table row; the row is skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum KvIssue {
    /// Row with a column count other than 2.
    RaggedRow { line: u64, columns: usize },
    /// Row with an empty key cell.
    EmptyKey { line: u64 },
}

impl std::fmt::Display for KvIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KvIssue::RaggedRow { line, columns } => {
                write!(f, "line {line}: expected 2 columns, found {columns}; row skipped")
            }
            KvIssue::EmptyKey { line } => write!(f, "line {line}: empty key; row skipped"),
        }
    }
}

/// Decodes the TSV text escapes `\t`, `\n`, `\r`, and `\\`. Unknown escapes
/// pass through unchanged.
fn decode_tsv_escapes(text: &str) -> String {
    if !text.contains('\\') {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('\\') => out.push('\\'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

/// Parses a two-column `key,text` table into entries tagged with `lang`.
///
/// The first row is treated as a header and skipped when its second cell is
/// `text` (case-insensitive). CSV rows follow RFC-4180 quoting; TSV rows
/// must not contain raw tabs inside cells and use `\t`/`\n` escapes
/// instead. A UTF-8 BOM is tolerated. Rows with the wrong column count or
/// an empty key are skipped and reported, not fatal. Each entry's meta
/// records its 1-based `line` for later diagnostics.
pub fn parse_kv_table(
    bytes: &[u8],
    format: TableFormat,
    lang: &str,
) -> Result<(Vec<RawEntry>, Vec<KvIssue>), LocfileError> {
    let bytes = bytes.strip_prefix("\u{FEFF}".as_bytes()).unwrap_or(bytes);
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(match format {
            TableFormat::Tsv => b'\t',
            TableFormat::Csv => b',',
        })
        .quoting(matches!(format, TableFormat::Csv))
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);

    let mut entries = Vec::new();
    let mut issues = Vec::new();
    let mut record = csv::ByteRecord::new();
    let mut first_row = true;
    loop {
        let more = reader
            .read_byte_record(&mut record)
            .map_err(|e| LocfileError::TableRead { message: e.to_string() })?;
        if !more {
            break;
        }
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            // A fully empty line comes back as one empty field; ignore it.
            if record.len() == 1 && record[0].is_empty() {
                continue;
            }
            issues.push(KvIssue::RaggedRow { line, columns: record.len() });
            first_row = false;
            continue;
        }
        let key = std::str::from_utf8(&record[0])
            .map_err(|_| LocfileError::EncodingError { line })?;
        let text = std::str::from_utf8(&record[1])
            .map_err(|_| LocfileError::EncodingError { line })?;
        if first_row {
            first_row = false;
            if text.eq_ignore_ascii_case("text") {
                continue;
            }
        }
        if key.is_empty() {
            issues.push(KvIssue::EmptyKey { line });
            continue;
        }
        let text = match format {
            TableFormat::Tsv => decode_tsv_escapes(text),
            TableFormat::Csv => text.to_string(),
        };
        entries.push(RawEntry::new(key, text, lang).with_meta("line", line.to_string()));
    }
    Ok((entries, issues))
}
