//! The committed 20-coefficient character documents are the contract of the
//! pipeline: regenerated output must match them byte for byte.

use wtheta::models::{characters_document, run_model, MODEL_NAMES};

#[test]
fn character_documents_match_committed_fixtures() {
    let fixtures: [(&str, &str); 5] = [
        ("WG2", include_str!("fixtures/WG2.json")),
        ("WF4", include_str!("fixtures/WF4.json")),
        ("W24", include_str!("fixtures/W24.json")),
        ("W26", include_str!("fixtures/W26.json")),
        ("W28", include_str!("fixtures/W28.json")),
    ];
    assert_eq!(
        fixtures.map(|(n, _)| n),
        MODEL_NAMES,
        "one fixture per model"
    );
    for (name, fixture) in fixtures {
        let run = run_model(name, 20).unwrap();
        let doc = serde_json::to_string_pretty(&characters_document(&run)).unwrap();
        assert_eq!(format!("{doc}\n"), fixture, "{name} snapshot");
    }
}
