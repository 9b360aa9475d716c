use std::time::Duration;

use adjlab::anchors::ANCHORS;
use adjlab::document::run_document;
use adjlab::{catalog, run_many, run_scenario, CatalogEntry, FieldChoice, HarnessError, Params, Status};
use adjlab_core::exec::Exec;
use serde_json::Value;

const QUICK: [&str; 4] = ["node_suite", "inversion_subspace", "prop_4_3", "jet_estimate_cross"];

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn equal_inputs_give_equal_bodies() {
    let p = Params::default();
    for name in QUICK {
        let a = run_scenario(name, &p).unwrap();
        let b = run_scenario(name, &p).unwrap();
        assert_eq!(a.body_json(), b.body_json(), "{name}");
        assert!(!a.body_json().contains("timings"));
    }
}

#[test]
fn scenario_order_does_not_matter() {
    let p = Params::default();
    let forward = run_many(&QUICK, &p);
    let mut rev = QUICK;
    rev.reverse();
    let backward = run_many(&rev, &p);
    for (i, r) in forward.iter().enumerate() {
        let other = &backward[QUICK.len() - 1 - i];
        assert_eq!(r.as_ref().unwrap().body_json(), other.as_ref().unwrap().body_json());
    }
    let seq = run_many(&QUICK, &Params { exec: Exec::Sequential, ..p });
    for (a, b) in forward.iter().zip(&seq) {
        assert_eq!(a.as_ref().unwrap().body_json(), b.as_ref().unwrap().body_json());
    }
}

#[test]
fn assertions_are_sorted_and_anchored() {
    let r = run_scenario("node_suite", &Params::default()).unwrap();
    let ids: Vec<&str> = r.assertions.iter().map(|a| a.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for a in &r.assertions {
        assert!(ANCHORS.iter().any(|(_, s)| *s == a.anchor), "{}", a.id);
    }
    let json: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert!(no_floats(&json));
    assert_eq!(r.summary.pass, r.assertions.len());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn catalog_lists_every_scenario_and_round_trips() {
    let cat = catalog();
    let names: Vec<&str> = cat.iter().map(|e| e.name.as_str()).collect();
    for want in [
        "example_3_1_toric",
        "example_3_1_embedded_modp",
        "example_3_2",
        "node_suite",
        "prop_4_3",
        "eq3_random",
        "inversion_subspace",
        "mld_corpus",
        "jet_estimate_cross",
    ] {
        assert!(names.contains(&want), "{want}");
    }
    assert!(cat.iter().all(|e| !e.anchor.is_empty()));
    assert!(cat.iter().filter(|e| e.stretch).all(|e| e.name == "example_3_1_embedded_modp"));
    let json = serde_json::to_string(&cat).unwrap();
    let back: Vec<CatalogEntry> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cat);
}

#[test]
fn stretch_scenarios_need_the_flag() {
    let err = run_scenario("example_3_1_embedded_modp", &Params::default()).unwrap_err();
    assert!(matches!(err, HarnessError::Invalid(_)));
    assert!(matches!(run_scenario("missing", &Params::default()), Err(HarnessError::Unknown(_))));
}

#[test]
fn field_flag_parses() {
    assert_eq!("q".parse::<FieldChoice>().unwrap(), FieldChoice::Rationals);
    assert_eq!("p:32003".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(32003));
    assert!("p:32004".parse::<FieldChoice>().is_err());
    assert!("r".parse::<FieldChoice>().is_err());
    let r = run_scenario("node_suite", &Params { field: Some(FieldChoice::Prime(101)), ..Params::default() }).unwrap();
    assert_eq!(r.field, "p:101");
    assert!(r.passed());
}

#[test]
fn exhausted_time_budget_aborts() {
    let p = Params {
        time_budget: Some(Duration::ZERO),
        ..Params::default()
    };
    let r = run_scenario("node_suite", &p).unwrap();
    assert!(r.aborted.is_some());
    assert!(r.assertions.is_empty());
    assert_eq!(r.exit_code(), 2);
}

#[test]
fn degree_cap_makes_tasks_inconclusive() {
    let doc = r#"{
        "ring": {"vars": ["x", "y", "z"], "char": 32003},
        "ideals": {"I": ["x^3 - y", "x*y^2 - z"]},
        "tasks": [{"op": "groebner", "args": {"ideal": "I"}}]
    }"#;
    let p = Params {
        deg_cap: Some(4),
        ..Params::default()
    };
    let r = run_document(doc, "capped", None, &p).unwrap();
    assert_eq!(r.assertions[0].status, Status::Inconclusive);
    assert!(r.assertions[0].witness.contains_key("budget"));
    assert_eq!(r.exit_code(), 0);
    let r = run_document(doc, "uncapped", None, &Params::default()).unwrap();
    assert_eq!(r.assertions[0].status, Status::Pass);
}
