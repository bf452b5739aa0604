//! Every registry entry quotes the formula it checks; quotes must occur
//! verbatim in the source document named by `ANCHOR_SOURCE`, when present.

use std::collections::BTreeSet;

use rescoef::identities::registry_list;

#[test]
fn anchors_are_present_and_unique() {
    let reg = registry_list();
    let mut seen = BTreeSet::new();
    for i in &reg {
        assert!(i.anchor.trim().len() >= 8, "{}: anchor too short", i.id);
        assert!(
            i.anchor.contains('\\') || i.anchor.contains('{') || i.anchor.contains('='),
            "{}: anchor is not a formula",
            i.id
        );
        assert!(
            seen.insert(i.anchor),
            "{}: anchor shared with another entry",
            i.id
        );
        assert!(!i.summary.is_empty(), "{}", i.id);
    }
}

#[test]
fn anchors_occur_verbatim() {
    let Some(path) = std::env::var_os("ANCHOR_SOURCE") else {
        eprintln!("ANCHOR_SOURCE unset; verbatim check skipped");
        return;
    };
    let Ok(text) = std::fs::read_to_string(&path) else {
        eprintln!(
            "{} unreadable; verbatim check skipped",
            path.to_string_lossy()
        );
        return;
    };
    let missing: Vec<&str> = registry_list()
        .iter()
        .filter(|i| !text.contains(i.anchor))
        .map(|i| i.id)
        .collect();
    assert!(
        missing.is_empty(),
        "anchors not found verbatim: {missing:?}"
    );
}
