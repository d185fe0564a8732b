//! Score MT output with BLEU, chrF2++ and TER, then compare several
//! systems against one reference in a single table.
//!
//! ```text
//! cargo run -p locforge --example score_systems
//! ```

use std::path::Path;

use locforge::locfile::read_lines;
use locforge::metrics::{bleu, compare, score_system, Metric};

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let read = |name: &str| read_lines(&std::fs::read(data.join(name)).unwrap()).unwrap();
    let refs = read("ref.fr");
    let baseline = read("mt_baseline.fr");
    let tuned = read("mt_tuned.fr");

    // Each metric function also exists standalone; results carry raw
    // statistics, not just the headline score.
    let result = bleu(&baseline, &refs).unwrap();
    println!(
        "baseline BLEU {:.2} (precisions {})",
        result.score,
        result
            .precisions
            .iter()
            .map(|p| format!("{p:.1}"))
            .collect::<Vec<_>>()
            .join("/")
    );

    // A score report bundles all three metrics with their signature
    // strings, so any number in it can be traced to an exact
    // configuration.
    let (report, _ter_alignments) = score_system("baseline", &baseline, &refs).unwrap();
    println!();
    for metric in [Metric::Bleu, Metric::Chrf2pp, Metric::Ter] {
        println!(
            "{}{} {:6.2}  {}",
            metric.display_name(),
            metric.arrow(),
            report.score(metric),
            report.signatures[&metric]
        );
    }

    let systems = vec![
        ("baseline".to_string(), baseline),
        ("tuned".to_string(), tuned),
        ("reference-as-system".to_string(), refs.clone()),
    ];
    let comparison = compare(&systems, &refs).unwrap();
    println!();
    print!("{}", comparison.render_text());

    // Reports serialize to JSON for dashboards and regression tracking.
    println!();
    println!("{}", serde_json::to_string_pretty(&comparison.systems[1]).unwrap());
}
