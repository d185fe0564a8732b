//! TMX 1.4 translation memory parsing and serialization.
//!
//! Units map to `tu` elements: the unit key is the `tuid`, per-side
//! metadata becomes `x-meta-*` props on the `tuv`, and the manifest origin
//! becomes an `x-origin` prop on the `tu`. Inline markup inside `seg`
//! (`bpt`/`ept`/`ph`/...) is flattened to its literal text content;
//! placeholders are re-lexed from the text downstream.

use std::collections::BTreeMap;

use quick_xml::escape::{escape, partial_escape};
use quick_xml::events::{BytesRef, BytesStart, Event};
use quick_xml::Reader;
use serde::{Deserialize, Serialize};

use super::{LocfileError, RawEntry, TranslationUnit};

/// A non-fatal problem with one `tu`; the unit is skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TmxIssue {
    /// The `tu` does not hold exactly two variants in two languages.
    MissingVariant { tu_index: usize, found_variants: usize },
}

impl std::fmt::Display for TmxIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TmxIssue::MissingVariant { tu_index, found_variants } => write!(
                f,
                "tu {tu_index}: expected 2 language variants, found {found_variants}; unit skipped"
            ),
        }
    }
}

#[derive(Debug, Default)]
struct Tuv {
    lang: String,
    text: String,
    meta: BTreeMap<String, String>,
    key_override: Option<String>,
}

#[derive(Debug, Default)]
struct Tu {
    tuid: Option<String>,
    origin: String,
    variants: Vec<Tuv>,
}

struct Parser<'a> {
    reader: Reader<&'a [u8]>,
    srclang: String,
    header_meta: BTreeMap<String, String>,
    units: Vec<TranslationUnit>,
    issues: Vec<TmxIssue>,
    tu_count: usize,
}

fn xml_err(reader: &Reader<&[u8]>, e: impl std::fmt::Display) -> LocfileError {
    LocfileError::MalformedXml { position: reader.error_position(), message: e.to_string() }
}

fn resolve_ref(r: &BytesRef, reader: &Reader<&[u8]>) -> Result<String, LocfileError> {
    if let Some(c) = r.resolve_char_ref().map_err(|e| xml_err(reader, e))? {
        return Ok(c.to_string());
    }
    let name = r.decode().map_err(|e| xml_err(reader, e))?;
    match name.as_ref() {
        "amp" => Ok("&".to_string()),
        "lt" => Ok("<".to_string()),
        "gt" => Ok(">".to_string()),
        "quot" => Ok("\"".to_string()),
        "apos" => Ok("'".to_string()),
        other => Err(LocfileError::MalformedXml {
            position: reader.error_position(),
            message: format!("unknown entity &{other};"),
        }),
    }
}

impl<'a> Parser<'a> {
    fn validate_root(&self, e: &BytesStart) -> Result<(), LocfileError> {
        if e.local_name().as_ref() != b"tmx" {
            return Err(LocfileError::MalformedXml {
                position: self.reader.error_position(),
                message: format!(
                    "root element is <{}>, expected <tmx>",
                    String::from_utf8_lossy(e.local_name().as_ref())
                ),
            });
        }
        let version = self.attr(e, &[b"version"])?.unwrap_or_default();
        if version != "1.4" && version != "1.4b" {
            return Err(LocfileError::UnsupportedVersion { found: version });
        }
        Ok(())
    }

    fn attr(&self, start: &BytesStart, names: &[&[u8]]) -> Result<Option<String>, LocfileError> {
        for attr in start.attributes() {
            let attr = attr.map_err(|e| xml_err(&self.reader, e))?;
            if names.contains(&attr.key.as_ref()) {
                let value = attr.unescape_value().map_err(|e| xml_err(&self.reader, e))?;
                return Ok(Some(value.into_owned()));
            }
        }
        Ok(None)
    }

    fn read_event(&mut self) -> Result<Event<'a>, LocfileError> {
        self.reader.read_event().map_err(|e| xml_err(&self.reader, e))
    }

    /// Concatenated text of the current element and everything nested in
    /// it, wrapper tags dropped. Consumes up to the matching end tag.
    fn flatten_text(&mut self) -> Result<String, LocfileError> {
        let mut depth = 0usize;
        let mut text = String::new();
        loop {
            match self.read_event()? {
                Event::Start(_) => depth += 1,
                Event::End(_) => {
                    if depth == 0 {
                        return Ok(text);
                    }
                    depth -= 1;
                }
                Event::Text(t) => {
                    text.push_str(&t.xml10_content().map_err(|e| xml_err(&self.reader, e))?)
                }
                Event::CData(c) => {
                    text.push_str(&c.decode().map_err(|e| xml_err(&self.reader, e))?)
                }
                Event::GeneralRef(r) => text.push_str(&resolve_ref(&r, &self.reader)?),
                Event::Empty(_) | Event::Comment(_) | Event::PI(_) => {}
                Event::Eof => {
                    return Err(LocfileError::MalformedXml {
                        position: self.reader.error_position(),
                        message: "unexpected end of document inside element".to_string(),
                    })
                }
                Event::Decl(_) | Event::DocType(_) => {}
            }
        }
    }

    /// Consumes events up to the end tag of an element just opened,
    /// ignoring everything inside.
    fn skip_element(&mut self) -> Result<(), LocfileError> {
        let mut depth = 0usize;
        loop {
            match self.read_event()? {
                Event::Start(_) => depth += 1,
                Event::End(_) => {
                    if depth == 0 {
                        return Ok(());
                    }
                    depth -= 1;
                }
                Event::Eof => {
                    return Err(LocfileError::MalformedXml {
                        position: self.reader.error_position(),
                        message: "unexpected end of document inside element".to_string(),
                    })
                }
                _ => {}
            }
        }
    }

    fn parse_prop(&mut self, start: &BytesStart, empty: bool) -> Result<(String, String), LocfileError> {
        let kind = self.attr(start, &[b"type"])?.unwrap_or_default();
        let value = if empty { String::new() } else { self.flatten_text()? };
        Ok((kind, value))
    }

    fn parse_tuv(&mut self, start: &BytesStart, empty: bool) -> Result<Tuv, LocfileError> {
        let mut tuv = Tuv {
            lang: self.attr(start, &[b"xml:lang", b"lang"])?.unwrap_or_default(),
            ..Tuv::default()
        };
        if empty {
            return Ok(tuv);
        }
        loop {
            match self.read_event()? {
                Event::Start(e) => match e.local_name().as_ref() {
                    b"seg" => tuv.text = self.flatten_text()?,
                    b"prop" => {
                        let (kind, value) = self.parse_prop(&e, false)?;
                        tuv_prop(&mut tuv, kind, value);
                    }
                    _ => self.skip_element()?,
                },
                Event::Empty(e) => match e.local_name().as_ref() {
                    b"seg" => tuv.text = String::new(),
                    b"prop" => {
                        let (kind, value) = self.parse_prop(&e, true)?;
                        tuv_prop(&mut tuv, kind, value);
                    }
                    _ => {}
                },
                Event::End(_) => return Ok(tuv),
                Event::Eof => {
                    return Err(LocfileError::MalformedXml {
                        position: self.reader.error_position(),
                        message: "unexpected end of document inside tuv".to_string(),
                    })
                }
                _ => {}
            }
        }
    }

    fn parse_tu(&mut self, start: &BytesStart, empty: bool) -> Result<(), LocfileError> {
        let mut tu = Tu { tuid: self.attr(start, &[b"tuid"])?, ..Tu::default() };
        if !empty {
            loop {
                match self.read_event()? {
                    Event::Start(e) => match e.local_name().as_ref() {
                        b"tuv" => {
                            let owned = e.into_owned();
                            let tuv = self.parse_tuv(&owned, false)?;
                            tu.variants.push(tuv);
                        }
                        b"prop" => {
                            let (kind, value) = self.parse_prop(&e, false)?;
                            if kind == "x-origin" {
                                tu.origin = value;
                            }
                        }
                        _ => self.skip_element()?,
                    },
                    Event::Empty(e) => {
                        if e.local_name().as_ref() == b"tuv" {
                            let owned = e.into_owned();
                            let tuv = self.parse_tuv(&owned, true)?;
                            tu.variants.push(tuv);
                        }
                    }
                    Event::End(_) => break,
                    Event::Eof => {
                        return Err(LocfileError::MalformedXml {
                            position: self.reader.error_position(),
                            message: "unexpected end of document inside tu".to_string(),
                        })
                    }
                    _ => {}
                }
            }
        }

        let index = self.tu_count;
        self.tu_count += 1;

        let distinct_langs =
            tu.variants.iter().map(|v| v.lang.to_ascii_lowercase()).collect::<std::collections::BTreeSet<_>>();
        if tu.variants.len() != 2 || distinct_langs.len() != 2 {
            self.issues
                .push(TmxIssue::MissingVariant { tu_index: index, found_variants: tu.variants.len() });
            return Ok(());
        }

        let mut variants = tu.variants;
        let srclang = self.srclang.to_ascii_lowercase();
        let source_first = srclang == "*all*"
            || srclang.is_empty()
            || variants[0].lang.to_ascii_lowercase() == srclang
            || variants[1].lang.to_ascii_lowercase() != srclang;
        if !source_first {
            variants.swap(0, 1);
        }
        let target = variants.pop().expect("two variants");
        let source = variants.pop().expect("two variants");

        let key = tu.tuid.unwrap_or_else(|| format!("tu-{index}"));
        let make = |v: Tuv, key: &str| {
            let mut entry =
                RawEntry::new(v.key_override.unwrap_or_else(|| key.to_string()), v.text, v.lang);
            entry.meta = v.meta;
            entry
        };
        self.units.push(TranslationUnit {
            source: make(source, &key),
            target: make(target, &key),
            origin: tu.origin,
        });
        Ok(())
    }
}

fn tuv_prop(tuv: &mut Tuv, kind: String, value: String) {
    if let Some(name) = kind.strip_prefix("x-meta-") {
        tuv.meta.insert(name.to_string(), value);
    } else if kind == "x-key" {
        tuv.key_override = Some(value);
    }
}

/// Everything a TMX document carries: the units plus header fields needed
/// to re-serialize it faithfully.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmxDocument {
    pub srclang: String,
    pub header_meta: BTreeMap<String, String>,
    pub units: Vec<TranslationUnit>,
    pub issues: Vec<TmxIssue>,
}

/// Parses a TMX 1.4 / 1.4b document.
///
/// Units lacking exactly two language variants are skipped and reported in
/// the issue list rather than failing the parse. Foreign documents without
/// `tuid` attributes get synthesized `tu-<index>` keys.
pub fn parse_tmx(bytes: &[u8]) -> Result<(Vec<TranslationUnit>, Vec<TmxIssue>), LocfileError> {
    let doc = parse_tmx_document(bytes)?;
    Ok((doc.units, doc.issues))
}

/// [`parse_tmx`], keeping the header fields as well.
pub fn parse_tmx_document(bytes: &[u8]) -> Result<TmxDocument, LocfileError> {
    let bytes = bytes.strip_prefix("\u{FEFF}".as_bytes()).unwrap_or(bytes);
    let text = std::str::from_utf8(bytes)
        .map_err(|e| LocfileError::MalformedXml {
            position: e.valid_up_to() as u64,
            message: "document is not valid UTF-8".to_string(),
        })?;
    let mut parser = Parser {
        reader: Reader::from_str(text),
        srclang: String::new(),
        header_meta: BTreeMap::new(),
        units: Vec::new(),
        issues: Vec::new(),
        tu_count: 0,
    };

    let mut saw_root = false;
    let mut root_closed = false;
    loop {
        match parser.read_event()? {
            Event::Start(e) if !saw_root => {
                parser.validate_root(&e)?;
                saw_root = true;
            }
            Event::Empty(e) if !saw_root => {
                parser.validate_root(&e)?;
                saw_root = true;
                root_closed = true;
            }
            Event::Start(e) => match e.local_name().as_ref() {
                b"header" => {
                    let owned = e.into_owned();
                    parser.srclang = parser.attr(&owned, &[b"srclang"])?.unwrap_or_default();
                    loop {
                        match parser.read_event()? {
                            Event::Start(p) if p.local_name().as_ref() == b"prop" => {
                                let (kind, value) = parser.parse_prop(&p, false)?;
                                parser.header_meta.insert(kind, value);
                            }
                            Event::Empty(p) if p.local_name().as_ref() == b"prop" => {
                                let (kind, value) = parser.parse_prop(&p, true)?;
                                parser.header_meta.insert(kind, value);
                            }
                            Event::Start(_) => parser.skip_element()?,
                            Event::End(_) => break,
                            Event::Eof => {
                                return Err(LocfileError::MalformedXml {
                                    position: parser.reader.error_position(),
                                    message: "unexpected end of document inside header".to_string(),
                                })
                            }
                            _ => {}
                        }
                    }
                }
                b"tu" => {
                    let owned = e.into_owned();
                    parser.parse_tu(&owned, false)?;
                }
                b"body" => {}
                _ => parser.skip_element()?,
            },
            Event::Empty(e) => match e.local_name().as_ref() {
                b"header" => {
                    parser.srclang = parser.attr(&e, &[b"srclang"])?.unwrap_or_default();
                }
                b"tu" => {
                    let owned = e.into_owned();
                    parser.parse_tu(&owned, true)?;
                }
                _ => {}
            },
            Event::End(e) if e.local_name().as_ref() == b"tmx" => root_closed = true,
            Event::Eof => {
                if saw_root && !root_closed {
                    return Err(LocfileError::MalformedXml {
                        position: parser.reader.error_position(),
                        message: "unexpected end of document before </tmx>".to_string(),
                    });
                }
                break;
            }
            _ => {}
        }
    }
    if !saw_root {
        return Err(LocfileError::MalformedXml {
            position: parser.reader.error_position(),
            message: "no root element".to_string(),
        });
    }
    Ok(TmxDocument {
        srclang: parser.srclang,
        header_meta: parser.header_meta,
        units: parser.units,
        issues: parser.issues,
    })
}

/// Escapes text content: `& < >` plus `&#13;` for carriage returns so CRs
/// survive the XML-mandated newline normalization on re-parse.
fn escape_text(text: &str) -> String {
    partial_escape(text).replace('\r', "&#13;")
}

fn escape_attr(text: &str) -> String {
    escape(text).into_owned()
}

fn write_entry(out: &mut String, entry: &RawEntry, tuid: &str) {
    out.push_str(&format!("    <tuv xml:lang=\"{}\">\n", escape_attr(&entry.lang)));
    if entry.key != tuid {
        out.push_str(&format!("      <prop type=\"x-key\">{}</prop>\n", escape_text(&entry.key)));
    }
    for (k, v) in &entry.meta {
        out.push_str(&format!(
            "      <prop type=\"x-meta-{}\">{}</prop>\n",
            escape_attr(k),
            escape_text(v)
        ));
    }
    out.push_str(&format!("      <seg>{}</seg>\n", escape_text(&entry.text)));
    out.push_str("    </tuv>\n");
}

/// Serializes units as TMX 1.4. `header_meta` entries become header props.
/// The header `srclang` is taken from the first unit (`en` for an empty
/// list). Fails with `InvalidUnit` when a unit has an empty key or
/// language, or identical languages on both sides.
pub fn write_tmx(
    units: &[TranslationUnit],
    header_meta: &BTreeMap<String, String>,
) -> Result<Vec<u8>, LocfileError> {
    for (index, unit) in units.iter().enumerate() {
        let reason = if unit.source.key.is_empty() || unit.target.key.is_empty() {
            "empty key"
        } else if unit.source.lang.is_empty() || unit.target.lang.is_empty() {
            "empty language"
        } else if unit.source.lang.eq_ignore_ascii_case(&unit.target.lang) {
            "source and target language are identical"
        } else {
            continue;
        };
        return Err(LocfileError::InvalidUnit { index, reason: reason.to_string() });
    }

    let srclang = units.first().map_or("en", |u| u.source.lang.as_str());
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<tmx version=\"1.4\">\n");
    out.push_str(&format!(
        "  <header creationtool=\"locforge\" creationtoolversion=\"{}\" segtype=\"sentence\" \
         o-tmf=\"locforge\" adminlang=\"en\" srclang=\"{}\" datatype=\"plaintext\">\n",
        escape_attr(crate::TOOL_VERSION),
        escape_attr(srclang)
    ));
    for (k, v) in header_meta {
        out.push_str(&format!(
            "    <prop type=\"{}\">{}</prop>\n",
            escape_attr(k),
            escape_text(v)
        ));
    }
    out.push_str("  </header>\n");
    out.push_str("  <body>\n");
    for unit in units {
        out.push_str(&format!("  <tu tuid=\"{}\">\n", escape_attr(&unit.source.key)));
        if !unit.origin.is_empty() {
            out.push_str(&format!(
                "    <prop type=\"x-origin\">{}</prop>\n",
                escape_text(&unit.origin)
            ));
        }
        write_entry(&mut out, &unit.source, &unit.source.key);
        write_entry(&mut out, &unit.target, &unit.source.key);
        out.push_str("  </tu>\n");
    }
    out.push_str("  </body>\n");
    out.push_str("</tmx>\n");
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(key: &str, en: &str, fr: &str) -> TranslationUnit {
        TranslationUnit::new(RawEntry::new(key, en, "en"), RawEntry::new(key, fr, "fr"))
    }

    #[test]
    fn empty_body_parses_to_empty_list() {
        let doc = b"<?xml version=\"1.0\"?><tmx version=\"1.4\"><header srclang=\"en\"/><body/></tmx>";
        let (units, issues) = parse_tmx(doc).unwrap();
        assert!(units.is_empty() && issues.is_empty());
    }

    #[test]
    fn one_unit_with_langs() {
        let doc = br#"<?xml version="1.0"?>
<tmx version="1.4"><header srclang="en"/><body>
  <tu tuid="loc_01"><tuv xml:lang="en"><seg>Skyrim</seg></tuv><tuv xml:lang="fr"><seg>Bordeciel</seg></tuv></tu>
</body></tmx>"#;
        let (units, issues) = parse_tmx(doc).unwrap();
        assert!(issues.is_empty());
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].source.text, "Skyrim");
        assert_eq!(units[0].source.lang, "en");
        assert_eq!(units[0].target.text, "Bordeciel");
        assert_eq!(units[0].target.lang, "fr");
        assert_eq!(units[0].source.key, "loc_01");
    }

    #[test]
    fn entities_decode() {
        let doc = br#"<tmx version="1.4"><header srclang="en"/><body>
  <tu><tuv xml:lang="en"><seg>Press &lt;BUTTON&gt;</seg></tuv><tuv xml:lang="fr"><seg>Appuyez sur &lt;BUTTON&gt; &amp; go &#233;</seg></tuv></tu>
</body></tmx>"#;
        let (units, _) = parse_tmx(doc).unwrap();
        assert_eq!(units[0].source.text, "Press <BUTTON>");
        assert_eq!(units[0].target.text, "Appuyez sur <BUTTON> & go é");
        assert_eq!(units[0].source.key, "tu-0");
    }

    #[test]
    fn srclang_selects_source_variant() {
        let doc = br#"<tmx version="1.4"><header srclang="EN-us"/><body>
  <tu><tuv xml:lang="fr"><seg>Oui</seg></tuv><tuv xml:lang="en-US"><seg>Yes</seg></tuv></tu>
</body></tmx>"#;
        let (units, _) = parse_tmx(doc).unwrap();
        assert_eq!(units[0].source.text, "Yes");
        assert_eq!(units[0].target.text, "Oui");
    }

    #[test]
    fn inline_markup_flattens() {
        let doc = r#"<tmx version="1.4"><header srclang="en"/><body>
  <tu><tuv xml:lang="en"><seg>Take <ph x="1">%d</ph> coins</seg></tuv><tuv xml:lang="fr"><seg>Prenez <ph x="1">%d</ph> pièces</seg></tuv></tu>
</body></tmx>"#;
        let (units, _) = parse_tmx(doc.as_bytes()).unwrap();
        assert_eq!(units[0].source.text, "Take %d coins");
        assert_eq!(units[0].target.text, "Prenez %d pièces");
    }

    #[test]
    fn missing_variant_is_reported_not_fatal() {
        let doc = br#"<tmx version="1.4"><header srclang="en"/><body>
  <tu tuid="a"><tuv xml:lang="en"><seg>One side only</seg></tuv></tu>
  <tu tuid="b"><tuv xml:lang="en"><seg>Hi</seg></tuv><tuv xml:lang="fr"><seg>Salut</seg></tuv></tu>
</body></tmx>"#;
        let (units, issues) = parse_tmx(doc).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].source.key, "b");
        assert_eq!(issues, vec![TmxIssue::MissingVariant { tu_index: 0, found_variants: 1 }]);
    }

    #[test]
    fn version_and_shape_checks() {
        assert!(matches!(
            parse_tmx(br#"<tmx version="2.0"><body/></tmx>"#).unwrap_err(),
            LocfileError::UnsupportedVersion { .. }
        ));
        assert!(matches!(
            parse_tmx(br#"<notmx/>"#).unwrap_err(),
            LocfileError::MalformedXml { .. }
        ));
        assert!(matches!(
            parse_tmx(br#"<tmx version="1.4"><body>"#).unwrap_err(),
            LocfileError::MalformedXml { .. }
        ));
        let ok = parse_tmx(br#"<tmx version="1.4b"><body/></tmx>"#);
        assert!(ok.is_ok());
    }

    #[test]
    fn round_trip_identity() {
        let mut u1 = unit("greet_01", "Hello & <world>!", "Bonjour « monde » !");
        u1.source.meta.insert("game".to_string(), "skyrim".to_string());
        u1.origin = "skyrim-strings".to_string();
        let mut u2 = unit("multi", "line one\nline two\rwith cr", "ligne \"une\"");
        u2.target.key = "other_key".to_string();
        let units = vec![u1, u2];

        let mut header = BTreeMap::new();
        header.insert("x-note".to_string(), "fixture & test".to_string());

        let bytes = write_tmx(&units, &header).unwrap();
        let doc = parse_tmx_document(&bytes).unwrap();
        assert_eq!(doc.units, units);
        assert_eq!(doc.header_meta, header);
        assert!(doc.issues.is_empty());

        let again = write_tmx(&doc.units, &doc.header_meta).unwrap();
        assert_eq!(bytes, again);
    }

    #[test]
    fn invalid_units_are_rejected_with_index() {
        let bad = TranslationUnit::new(RawEntry::new("k", "x", "en"), RawEntry::new("k", "y", "EN"));
        let err = write_tmx(&[unit("a", "x", "y"), bad], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, LocfileError::InvalidUnit { index: 1, .. }));
    }
}
