use indexmap::IndexMap;
use proptest::prelude::*;
use serde_json::{json, Value};
use sumsq_cli::output::{float, write_json, OutputRecord};

fn cell() -> impl Strategy<Value = Value> {
    prop_oneof![
        any::<f64>().prop_map(float),
        any::<u64>().prop_map(|u| json!(u)),
        any::<i32>().prop_map(|i| json!(i)),
        any::<bool>().prop_map(|b| json!(b)),
        "[a-z_ ]{0,12}".prop_map(|s| json!(s)),
    ]
}

fn record() -> impl Strategy<Value = OutputRecord> {
    let row = prop::collection::vec(("[a-z]{1,6}", cell()), 1..6)
        .prop_map(|cells| cells.into_iter().collect::<IndexMap<String, Value>>());
    (
        "[a-z]{1,8}",
        prop::collection::vec(("[a-z]{1,6}", cell()), 0..4),
        prop::collection::vec(row, 1..5),
    )
        .prop_map(|(command, inputs, rows)| {
            OutputRecord::new(&command, inputs.into_iter().collect(), rows)
        })
}

proptest! {
    #[test]
    fn json_round_trips(rec in record()) {
        let mut buf = Vec::new();
        write_json(&rec, &mut buf).unwrap();
        let back: OutputRecord = serde_json::from_slice(&buf).unwrap();
        prop_assert_eq!(back, rec);
    }

    #[test]
    fn rounding_is_idempotent(x in any::<f64>()) {
        let once = float(x);
        if let Some(v) = once.as_f64() {
            prop_assert_eq!(float(v), once.clone());
            prop_assert!(((v - x) / x).abs() <= 5e-12 || x == 0.0);
        } else {
            prop_assert!(!x.is_finite());
        }
    }
}
