use mwq_core::lattice::{builtin_table, table_row};
use mwq_core::report::{
    example_by_id, run_example, run_table_verify, run_table_verify_rows, ExampleData, RunReport,
    Status, EXAMPLE_2A1, EXAMPLE_A3, RECORD_SCHEMA, REPORT_SCHEMA,
};

#[test]
fn table_verification_passes_on_a_range() {
    let rep = run_table_verify(Some(38..=42));
    assert_eq!(rep.status, Status::Ok);
    assert_eq!(rep.results.len(), 5);
    assert_eq!(rep.inputs[0].1, "38..42");
}

#[test]
fn altered_row_is_reported() {
    let mut row = table_row(40).unwrap().clone();
    row.expected_qretc += 1;
    let rep = run_table_verify_rows(&[row, table_row(41).unwrap().clone()]);
    assert_eq!(rep.status, Status::Mismatch);
    let bad: Vec<_> = rep.failures().collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].name, "row 40");
    assert_ne!(bad[0].value, *bad[0].expected.as_ref().unwrap());
    assert!(rep.to_string().contains("[FAIL] row 40"));
}

#[test]
fn examples_replay_cleanly() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let rep = run_example(ex);
        assert_eq!(rep.status, Status::Ok, "{rep}");
        assert!(rep.passed() > 20);
    }
    assert_eq!(example_by_id(" A3 ").unwrap().id, "a3");
    assert!(example_by_id("5.1").is_none());
}

#[test]
fn perturbed_section_fails_on_curve() {
    let ex = ExampleData {
        s1_tilde: "(-32*t, 2*t^2 - 6930*t + 1)",
        ..EXAMPLE_2A1
    };
    let rep = run_example(&ex);
    assert_eq!(rep.status, Status::Mismatch);
    let bad: Vec<_> = rep.failures().map(|r| r.name.as_str()).collect();
    assert_eq!(bad, ["on_curve(s~1)"]);
}

#[test]
fn unparsable_input_is_a_failure() {
    let ex = ExampleData {
        quartic: "u^3 + (t",
        ..EXAMPLE_A3
    };
    let rep = run_example(&ex);
    assert_ne!(rep.status, Status::Ok);
    assert_eq!(rep.results.len(), 1);
}

#[test]
fn records_are_deterministic_json() {
    let a = run_example(&EXAMPLE_A3).to_records();
    assert_eq!(a, run_example(&EXAMPLE_A3).to_records());
    let lines: Vec<serde_json::Value> = a
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let (last, body) = lines.split_last().unwrap();
    assert!(body.iter().all(|v| v["schema"] == RECORD_SCHEMA));
    assert_eq!(last["schema"], REPORT_SCHEMA);
    assert_eq!(last["status"], "ok");
    assert_eq!(last["total"], body.len());
}

#[test]
fn empty_report_is_ok() {
    let rep = RunReport::new("noop");
    assert_eq!(rep.status, Status::Ok);
    assert_eq!(rep.to_records().lines().count(), 1);
    assert_eq!(run_table_verify_rows(&[]).results.len(), 0);
    assert_eq!(builtin_table().len(), 60);
}
