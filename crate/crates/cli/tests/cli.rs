use std::process::{Command, Output};

const A3: &str = "u^3 + (25*t + 9)*u^2 + (144*t^2 + t^3)*u + 16*t^4";

fn mwq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwq"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn example_replay_exits_zero() {
    let o = mwq(&["example", "a3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("status: ok"));
}

#[test]
fn symbol_of_each_example_conic() {
    let plus = mwq(&["symbol", A3, "u = 1/64*t^2 - 41/2*t + 315"]);
    let minus = mwq(&["symbol", A3, "u = t^2 + 192*t + 8640"]);
    assert_eq!(plus.status.code(), Some(0));
    assert_eq!(minus.status.code(), Some(0));
    assert_ne!(stdout(&plus), stdout(&minus));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(mwq(&["tangency", A3, "u = t^3"]).status.code(), Some(2));
    assert_eq!(mwq(&["example", "nope"]).status.code(), Some(2));
    assert_eq!(
        mwq(&["symbol", "u^3 + (t", "u = t^2"]).status.code(),
        Some(2)
    );
}

#[test]
fn records_format_is_json_lines() {
    let o = mwq(&["--format", "records", "table", "--verify", "--rows", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["passed"], 3);
    for l in out.lines() {
        serde_json::from_str::<serde_json::Value>(l).unwrap();
    }
}
