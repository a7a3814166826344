use reprzeta::corpus::{self, AlgebraSpec, Filter, Status};
use reprzeta::engine::EngineConfig;

#[test]
fn builtin_corpus_is_well_formed() {
    let entries = corpus::builtin();
    assert_eq!(entries.iter().filter(|e| e.group == "table1").count(), 30);
    assert_eq!(entries.iter().filter(|e| e.group == "eps").count(), 12);
    let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), entries.len());
    for e in &entries {
        let l = e.algebra().unwrap();
        assert_eq!(l.name.as_deref(), Some(e.name.as_str()));
        e.expected().unwrap();
        assert!(!e.source.is_empty());
    }
}

#[test]
fn filters() {
    let entries = corpus::builtin();
    let count = |f: Filter| entries.iter().filter(|e| f.accepts(e)).count();
    let slow = entries.iter().filter(|e| e.slow).count();
    assert_eq!(count(Filter::default()), entries.len() - slow);
    assert_eq!(count(Filter { include_slow: true, ..Default::default() }), entries.len());
    assert_eq!(count(Filter { name: Some("L_{6,2".into()), include_slow: true, ..Default::default() }), entries.iter().filter(|e| e.name.contains("L_{6,2")).count());
    let dim5 = count(Filter { dim: Some(5), ..Default::default() });
    assert!(dim5 > 0 && dim5 < entries.len());
    assert_eq!(count(Filter { group: Some("table1".into()), ..Default::default() }), 30);
    assert!(count(Filter { weight: Some(0), ..Default::default() }) > 0);
}

#[test]
fn load_inline_and_expression_entries() {
    let text = r#"[
        {"name": "heis", "algebra": "L_{3,2}", "expected_zeta": "s/(s-1)", "source": "test"},
        {"name": "inline", "algebra": {"name": "h", "dim": 3, "brackets": {"[1,2]": {"3": "1"}}},
         "expected_zeta": "s/(s - 1)", "expected_weight": 0, "group": "x", "source": "test"},
        {"name": "wrong", "algebra": "L_{4,3}", "expected_zeta": "s/(s-1)", "source": "test"}
    ]"#;
    let entries = corpus::load(text).unwrap();
    assert!(matches!(entries[0].algebra, AlgebraSpec::Expression(_)));
    assert!(matches!(entries[1].algebra, AlgebraSpec::Inline(_)));
    let reports = corpus::run(&entries, &EngineConfig::default(), 2);
    assert!(reports[0].passed() && reports[1].passed());
    assert!(matches!(reports[2].status, Status::Mismatch { .. }));
    let json: serde_json::Value = serde_json::from_str(&corpus::canonical_json(&reports)).unwrap();
    assert_eq!(json[1]["name"], "inline");
    assert_eq!(json[0]["zeta"], serde_json::json!({"num": [0, 1], "den": [-1, 1]}));
    assert_eq!(json[0]["omega"], "1");
    assert!(corpus::load(r#"[{"name": "x", "algebra": "L_{9,9}", "expected_zeta": "1", "source": ""}]"#).is_err());
    assert!(corpus::load(r#"[{"name": "x", "algebra": "L_{3,2}", "expected_zeta": "s/(", "source": ""}]"#).is_err());
}
