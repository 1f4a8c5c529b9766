use nonsolv::catalog::{builtin, lookup};
use nonsolv::chartable::load_character_table;
use nonsolv::conditions::SearchMode;
use nonsolv::report::{
    analyze, check_condition, count_triples, scan, AnalyzeDocument, CheckDocument, Condition,
    CountDocument, CountMethod, ScanDocument, SCHEMA_VERSION,
};
use nonsolv::DEFAULT_ORDER_CAP;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(doc: &T) {
    let text = serde_json::to_string_pretty(doc).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, doc);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
}

#[test]
fn analyze_documents_round_trip() {
    for e in builtin() {
        let g = e.definition.build(DEFAULT_ORDER_CAP).unwrap();
        for timings in [false, true] {
            round_trip(&AnalyzeDocument {
                schema_version: SCHEMA_VERSION,
                report: analyze(&g, SearchMode::Exhaustive, timings),
            });
        }
    }
}

#[test]
fn scan_and_check_documents_round_trip() {
    let inputs: Vec<_> = builtin().into_iter().map(Into::into).collect();
    let doc: ScanDocument = scan(&inputs, DEFAULT_ORDER_CAP, SearchMode::Fast, false);
    round_trip(&doc);

    let g = lookup("SL(2,5)")
        .unwrap()
        .definition
        .build(DEFAULT_ORDER_CAP)
        .unwrap();
    for c in Condition::ALL {
        let doc: CheckDocument = check_condition(&g, c, SearchMode::Exhaustive);
        round_trip(&doc);
        assert_eq!(doc.holds, c != Condition::ThreePo, "{}", c.name());
        assert_eq!(c.name().parse::<Condition>().unwrap(), c);
    }
    assert!("5po".parse::<Condition>().is_err());
}

#[test]
fn count_documents_round_trip() {
    let g = lookup("SL(2,5)")
        .unwrap()
        .definition
        .build(DEFAULT_ORDER_CAP)
        .unwrap();
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/tables/2a5.table"
    ))
    .unwrap();
    let t = load_character_table(&text).unwrap();
    let sel = ["1A_1".to_string(), "3A_0".to_string(), "5B_0".to_string()];
    let doc: CountDocument = count_triples(&g, &sel, CountMethod::Both, Some(&t)).unwrap();
    assert_eq!(doc.brute, Some(0));
    assert_eq!(doc.character, Some(0));
    assert_eq!(doc.character_sum.as_deref(), Some("0"));
    assert!(doc.matching.as_ref().unwrap().ambiguous);
    round_trip(&doc);

    let sel = ["4".to_string(), "4".to_string(), "2".to_string()];
    let doc = count_triples(&g, &sel, CountMethod::Both, Some(&t)).unwrap();
    assert_eq!(doc.agree, Some(true));
    assert_eq!(doc.brute, Some(30));
}

#[test]
fn reports_are_deterministic() {
    let g = lookup("PSL(2,7)")
        .unwrap()
        .definition
        .build(DEFAULT_ORDER_CAP)
        .unwrap();
    let a = analyze(&g, SearchMode::Exhaustive, false);
    let h = lookup("PSL(2,7)")
        .unwrap()
        .definition
        .build(DEFAULT_ORDER_CAP)
        .unwrap();
    let b = analyze(&h, SearchMode::Exhaustive, false);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
