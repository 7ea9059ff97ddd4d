//! Machine-readable reports as produced by `spin-actions --json`.

use spin_actions::cli::{cmd_degree, parse_index_doc, RunReport};

fn main() {
    let doc = parse_index_doc(r#"{"version":1,"group":{"kind":"odd","p":1},"s":[1,1],"t":[1,2]}"#).unwrap();
    let report = cmd_degree(&doc);
    let json = serde_json::to_string_pretty(&report).unwrap();
    println!("{json}");
    let back: RunReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}
