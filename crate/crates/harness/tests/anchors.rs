use std::path::Path;

use adjlab::anchors::{missing_from, ANCHORS};
use adjlab::catalog;

#[test]
fn anchors_occur_verbatim_in_the_source_text() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../paper.md");
    let Ok(text) = std::fs::read_to_string(&path) else {
        eprintln!("{} not present; skipping", path.display());
        return;
    };
    assert_eq!(missing_from(&text), vec![]);
}

#[test]
fn anchor_keys_and_strings_are_unique() {
    for (i, (k, a)) in ANCHORS.iter().enumerate() {
        assert!(!a.is_empty());
        for (k2, a2) in &ANCHORS[i + 1..] {
            assert_ne!(k, k2);
            assert_ne!(a, a2);
        }
    }
    for e in catalog() {
        assert!(ANCHORS.iter().any(|(_, a)| *a == e.anchor), "{}", e.name);
    }
}
