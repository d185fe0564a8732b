//! Run the localization QA checks over an aligned corpus and read the
//! findings.
//!
//! ```text
//! cargo run -p locforge --example qa_suite
//! ```

use std::path::Path;

use locforge::qa::{
    run_suite, summary_table, write_findings_jsonl, QaConfig, RegisterProfile, Termbase,
};
use locforge::BiSegment;

fn sample_corpus() -> Vec<BiSegment> {
    let seg = |en: &str, fr: &str| BiSegment::new(en, fr, "en", "fr");
    vec![
        // %d present in the source, dropped from the target.
        seg("You gain %d gold.", "Vous gagnez de l'or."),
        // The termbase says Greyhollow must become Creuxgris.
        seg("Greyhollow awaits you.", "Trou-Gris vous attend."),
        // English title casing carried into French prose.
        seg("The Iron Gate Key", "La Clé De La Porte De Fer"),
        // One conversation mixing tu and vous.
        seg("You found it.", "Tu l'as trouvé.").with_meta("conversation", "well_01"),
        seg("Can you help?", "Pouvez-vous aider ?").with_meta("conversation", "well_01"),
        // First word readable as imperative or infinitive.
        seg("Open the chest.", "Ouvrir le coffre."),
        // Nothing wrong here.
        seg("The well is dry.", "Le puits est à sec."),
    ]
}

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let termbase = Termbase::from_csv(&std::fs::read(data.join("termbase.csv")).unwrap()).unwrap();
    let config = QaConfig {
        termbase,
        register_profile: RegisterProfile::Vous,
        ..QaConfig::default()
    };

    let corpus = sample_corpus();
    let report = run_suite(&corpus, &config).unwrap();
    print!("{}", summary_table(&report.summary));

    println!();
    for finding in &report.findings {
        let seg = &corpus[finding.segment_index];
        println!(
            "segment {} ({:?} / {:?})",
            finding.segment_index, seg.source_text, seg.target_text
        );
        println!("  {:?} {}", finding.severity, finding.category.slug());
        for ev in &finding.evidence {
            println!("  {} [{}..{}] {:?}", ev.side, ev.start, ev.end, ev.excerpt);
        }
        for note in &finding.notes {
            println!("  note: {note}");
        }
    }

    // Findings serialize as JSON lines, one object per finding; the same
    // format round-trips human annotations.
    println!();
    let jsonl = write_findings_jsonl(&report.findings);
    println!("first finding as JSONL:");
    println!("{}", jsonl.lines().next().unwrap());
}
