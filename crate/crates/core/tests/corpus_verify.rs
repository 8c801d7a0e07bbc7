use isgw::corpus::{builtin, load_dir, CorpusConfig, Instance};
use isgw::report::{Outcome, SCHEMA_VERSION};
use isgw::semigroup::SemigroupInput;
use isgw::verify::{verify_corpus, VerifyConfig};
use isgw::{fixtures, Error};

#[test]
fn builtin_corpus_has_no_falsification() {
    let entries = builtin(&CorpusConfig::default());
    let report = verify_corpus(&entries, &VerifyConfig::default()).unwrap();
    assert_eq!(report.schema, SCHEMA_VERSION);
    let failures: Vec<_> = report
        .instances
        .iter()
        .flat_map(|i| i.falsifications().map(move |(n, t)| (i.id.clone(), n.clone(), t.clone())))
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(!report.has_falsification());
    // every check ran somewhere
    for (name, tally) in &report.summary {
        assert!(tally.pass > 0, "{name} never passed");
    }
}

#[test]
fn z2_records_effective_false_and_passes() {
    let entries = builtin(&CorpusConfig::default());
    let z2: Vec<_> = entries.into_iter().filter(|e| e.id == "Z2-with-zero").collect();
    let report = verify_corpus(&z2, &VerifyConfig::default()).unwrap();
    let inst = &report.instances[0];
    assert_eq!(inst.properties["effective"].value, serde_json::json!(false));
    assert_eq!(inst.properties["conditionL"].value, serde_json::json!(false));
    assert_eq!(inst.theorems["condition L and effectiveness"].outcome, Outcome::Pass);
    assert_eq!(inst.theorems["effectiveness chain"].outcome, Outcome::Pass);
}

#[test]
fn reports_are_byte_identical() {
    let cfg = VerifyConfig::default();
    let entries = builtin(&CorpusConfig::default());
    let a = verify_corpus(&entries, &cfg).unwrap().to_json();
    let b = verify_corpus(&builtin(&CorpusConfig::default()), &cfg).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn seed_changes_only_the_random_part() {
    let a = builtin(&CorpusConfig::default());
    let b = builtin(&CorpusConfig { seed: 99, ..Default::default() });
    let fixed = |v: &[isgw::corpus::CorpusEntry]| -> Vec<String> {
        v.iter().filter(|e| !e.id.starts_with("random-")).map(|e| e.id.clone()).collect()
    };
    assert_eq!(fixed(&a), fixed(&b));
}

#[test]
fn corpus_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let i2 = serde_json::to_string(&SemigroupInput::table_of(&fixtures::i2())).unwrap();
    std::fs::write(dir.path().join("i2.json"), i2).unwrap();
    std::fs::write(dir.path().join("l1.json"), fixtures::graph_l1().to_json().to_string()).unwrap();
    std::fs::write(dir.path().join("mirror.json"), fixtures::mirror().to_json().to_string()).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let entries = load_dir(dir.path(), 1000).unwrap();
    let kinds: Vec<(&str, &str)> = entries.iter().map(|e| (e.id.as_str(), e.instance.kind())).collect();
    assert_eq!(kinds, vec![("i2", "semigroup"), ("l1", "graph"), ("mirror", "selfsimilar")]);
    let Instance::Semigroup(s) = &entries[0].instance else { panic!() };
    assert_eq!(s.len(), 7);
    let report = verify_corpus(&entries, &VerifyConfig::default()).unwrap();
    assert!(!report.has_falsification());
}

#[test]
fn corrupted_table_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    // 1·1 = 0 breaks associativity against the identity law on x
    let bad = r#"{"table": [[0,0,0],[0,0,2],[0,2,1]]}"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let err = load_dir(dir.path(), 1000).unwrap_err();
    assert!(
        matches!(err, Error::NotInverse(_) | Error::NotAssociative { .. } | Error::Parse(_)),
        "{err:?}"
    );
}
