//! Run reports: table verification and end-to-end replays of the two worked examples.

use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;
use serde_json::json;

use crate::arith::rational::fmt_rational;
use crate::arith::{frac, Rational};
use crate::error::{Error, Result};
use crate::lattice::{builtin_table, count_etc, count_qretc, table_row, TableRow};
use crate::quartic::{
    combinatorial_type, conic_from_section, dihedral_feasibility, even_tangency,
    find_splitting_certificate, lift_conic, qr_symbol, singular_configuration, zariski_pair_check,
    Conic, Feasibility, PreparedQuartic, SymbolRoute, Verdict,
};
use crate::surface::{halve, section_o_intersection, HeightContext, SectionPoint};

pub const REPORT_SCHEMA: &str = "mwq.report/1";
pub const RECORD_SCHEMA: &str = "mwq.record/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::Error => "error",
        })
    }
}

/// One checked or computed value with the chain of operations that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub ok: bool,
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<ResultEntry>,
    pub status: Status,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            results: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn input(&mut self, name: &str, value: impl fmt::Display) {
        self.inputs.push((name.to_string(), value.to_string()));
    }

    /// A computed value with no expectation attached.
    pub fn value(&mut self, name: &str, value: impl fmt::Display, provenance: &[&str]) {
        self.push(name, value.to_string(), None, true, provenance);
    }

    /// Compares `value` with `expected` by their text forms.
    pub fn expect(
        &mut self,
        name: &str,
        value: impl fmt::Display,
        expected: impl fmt::Display,
        provenance: &[&str],
    ) -> bool {
        let (v, e) = (value.to_string(), expected.to_string());
        let ok = v == e;
        self.push(name, v, Some(e), ok, provenance);
        ok
    }

    /// Records `Err` as a failed check; returns the value on success.
    pub fn attempt<T>(&mut self, name: &str, provenance: &[&str], r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                if matches!(e, Error::Inconsistency(_)) {
                    self.status = Status::Error;
                }
                self.push(name, format!("error: {e}"), None, false, provenance);
                None
            }
        }
    }

    fn push(
        &mut self,
        name: &str,
        value: String,
        expected: Option<String>,
        ok: bool,
        prov: &[&str],
    ) {
        if !ok && self.status == Status::Ok {
            self.status = Status::Mismatch;
        }
        self.results.push(ResultEntry {
            name: name.to_string(),
            value,
            expected,
            ok,
            provenance: prov.iter().map(|s| s.to_string()).collect(),
        });
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.ok).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResultEntry> {
        self.results.iter().filter(|r| !r.ok)
    }

    /// Line-delimited JSON: one record per result, then a summary record.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let mut v = serde_json::to_value(r).expect("serializable");
            v["schema"] = json!(RECORD_SCHEMA);
            v["command"] = json!(self.command);
            out.push_str(&v.to_string());
            out.push('\n');
        }
        let inputs: serde_json::Map<String, serde_json::Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let summary = json!({
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "inputs": inputs,
            "status": self.status,
            "passed": self.passed(),
            "total": self.results.len(),
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(f, "  {k}: {v}")?;
        }
        for r in &self.results {
            match (&r.expected, r.ok) {
                (Some(e), false) => writeln!(f, "[FAIL] {}: {} (expected {e})", r.name, r.value)?,
                (None, false) => writeln!(f, "[FAIL] {}: {}", r.name, r.value)?,
                (Some(_), true) => writeln!(f, "[ ok ] {}: {}", r.name, r.value)?,
                (None, true) => writeln!(f, "       {}: {}", r.name, r.value)?,
            }
        }
        write!(
            f,
            "status: {} ({}/{} checks passed)",
            self.status,
            self.passed(),
            self.results.len()
        )
    }
}

/// Recomputes `(♯ETC, ♯QRETC)` for the given rows and compares with their expected columns.
pub fn run_table_verify_rows(rows: &[TableRow]) -> RunReport {
    let mut rep = RunReport::new("table --verify");
    rep.input("rows", rows.len());
    for r in rows {
        let got = (count_etc(&r.mw), count_qretc(&r.mw));
        rep.expect(
            &format!("row {}", r.row_no),
            format!("({}, {})", got.0, got.1),
            format!("({}, {})", r.expected_etc, r.expected_qretc),
            &["builtin_table", "count_etc", "count_qretc"],
        );
    }
    rep
}

/// Table verification over the built-in data, optionally restricted to a row range.
pub fn run_table_verify(rows: Option<RangeInclusive<u32>>) -> RunReport {
    let selected: Vec<TableRow> = builtin_table()
        .iter()
        .filter(|r| rows.as_ref().is_none_or(|rg| rg.contains(&r.row_no)))
        .cloned()
        .collect();
    let mut rep = run_table_verify_rows(&selected);
    if let Some(rg) = rows {
        rep.inputs[0].1 = format!("{}..{}", rg.start(), rg.end());
    }
    rep
}

/// Everything asserted by one worked example.
#[derive(Clone, Debug)]
pub struct ExampleData {
    pub id: &'static str,
    pub quartic: &'static str,
    pub s_o: &'static str,
    pub s1_tilde: &'static str,
    pub s2_tilde: &'static str,
    /// `2s_o`.
    pub s1: &'static str,
    /// `s̃₁ + s̃₂`.
    pub s2: &'static str,
    pub conic1: &'static str,
    pub conic2: &'static str,
    /// Reducible fibers as `(place, type)`.
    pub fibers: &'static [(&'static str, &'static str)],
    /// `⟨s_o,s_o⟩, ⟨s̃₁,s̃₁⟩, ⟨s̃₂,s̃₂⟩, ⟨s̃₁,s̃₂⟩`.
    pub heights: [(i64, i64); 4],
    pub sing_type: &'static str,
    pub row: u32,
}

/// A quartic with two nodes (`Ξ = 2A₁`), table row 50.
pub const EXAMPLE_2A1: ExampleData = ExampleData {
    id: "2a1",
    quartic: "u^3 + (271350 - 98*t)*u^2 + t*(t - 5825)*(t - 2025)*u + 36*t^2*(t - 2025)^2",
    s_o: "(0, 6*t^2 - 12150*t)",
    s1_tilde: "(-32*t, 2*t^2 - 6930*t)",
    s2_tilde: "(-20*t, 4*t^2 - 4500*t)",
    s1: "(1/144*t^2 + 1231/72*t - 5143775/144, -1/1728*t^3 - 2335/576*t^2 + 13493375/576*t - 29962489375/1728)",
    s2: "(1/36*t^2 + 435/2*t - 921375/4, -1/216*t^3 - 1181/24*t^2 - 41625/8*t + 373156875/8)",
    conic1: "u = 1/144*t^2 + 1231/72*t - 5143775/144",
    conic2: "u = 1/36*t^2 + 435/2*t - 921375/4",
    fibers: &[("0", "I2"), ("2025", "I2"), ("inf", "III")],
    heights: [(1, 2), (1, 1), (1, 1), (0, 1)],
    sing_type: "2A1",
    row: 50,
};

/// A quartic with one `A₃` singularity, table row 40.
pub const EXAMPLE_A3: ExampleData = ExampleData {
    id: "a3",
    quartic: "u^3 + (25*t + 9)*u^2 + (144*t^2 + t^3)*u + 16*t^4",
    s_o: "(0, 4*t^2)",
    s1_tilde: "(-16*t, -48*t)",
    s2_tilde: "(-15*t, t^2 + 45*t)",
    s1: "(1/64*t^2 - 41/2*t + 315, -1/512*t^3 - 55/32*t^2 + 2637/8*t - 5670)",
    s2: "(t^2 + 192*t + 8640, -t^3 - 301*t^2 - 27936*t - 803520)",
    conic1: "u = 1/64*t^2 - 41/2*t + 315",
    conic2: "u = t^2 + 192*t + 8640",
    fibers: &[("0", "I4"), ("inf", "III")],
    heights: [(1, 2), (3, 4), (3, 4), (1, 4)],
    sing_type: "A3",
    row: 40,
};

pub fn example_by_id(id: &str) -> Option<&'static ExampleData> {
    [&EXAMPLE_2A1, &EXAMPLE_A3]
        .into_iter()
        .find(|e| e.id.eq_ignore_ascii_case(id.trim()))
}

fn fmt_q(q: &Rational) -> String {
    fmt_rational(q)
}

/// Replays every checkable assertion of a worked example.
pub fn run_example(ex: &ExampleData) -> RunReport {
    let mut rep = RunReport::new(format!("example {}", ex.id));
    rep.input("quartic", ex.quartic);
    replay(ex, &mut rep);
    rep
}

fn replay(ex: &ExampleData, rep: &mut RunReport) -> Option<()> {
    const PARSE: &[&str] = &["parse_input"];
    let q = rep.attempt("quartic", PARSE, PreparedQuartic::parse(ex.quartic))?;
    let e = q.surface().clone();
    let pts: Vec<SectionPoint> = [ex.s_o, ex.s1_tilde, ex.s2_tilde, ex.s1, ex.s2]
        .iter()
        .map(|s| rep.attempt("section", PARSE, SectionPoint::parse(s)))
        .collect::<Option<_>>()?;
    let [so, a, b, s1x, s2x] = <[SectionPoint; 5]>::try_from(pts).ok()?;
    let names = ["s_o", "s~1", "s~2", "s1", "s2"];
    let mut all_on = true;
    for (n, p) in names.iter().zip([&so, &a, &b, &s1x, &s2x]) {
        all_on &= rep.expect(
            &format!("on_curve({n})"),
            e.on_curve(p),
            true,
            &["surface_of", "on_curve"],
        );
    }
    if !all_on {
        return None;
    }

    let ctx = rep.attempt(
        "height context",
        &["surface_of", "HeightContext"],
        HeightContext::new(e.clone()),
    )?;
    let fibers: Vec<String> = ctx
        .reducible_places()
        .map(|p| format!("{}:{}", p.place, p.kodaira))
        .collect();
    let want: Vec<String> = ex.fibers.iter().map(|(p, k)| format!("{p}:{k}")).collect();
    rep.expect(
        "reducible fibers",
        fibers.join(" "),
        want.join(" "),
        &["surface_of", "kodaira_type_at"],
    );
    rep.expect(
        "euler sum",
        ctx.euler_sum(),
        12,
        &["surface_of", "kodaira_type_at"],
    );

    const HP: &[&str] = &[
        "surface_of",
        "component_of",
        "corr_v",
        "section_pair_intersection",
        "height_pairing",
    ];
    let pairs = [
        ("<s_o,s_o>", &so, &so),
        ("<s~1,s~1>", &a, &a),
        ("<s~2,s~2>", &b, &b),
        ("<s~1,s~2>", &a, &b),
    ];
    for ((name, p, r), (n, d)) in pairs.into_iter().zip(ex.heights) {
        if let Some(h) = rep.attempt(name, HP, ctx.height_pairing(p, r, &[])) {
            rep.expect(name, fmt_q(&h), fmt_q(&frac(n, d)), HP);
        }
    }

    let s1 = rep.attempt("2 s_o", &["double"], e.double(&so))?;
    rep.expect("2 s_o = s1", &s1, &s1x, &["double"]);
    let s2 = rep.attempt("s~1 + s~2", &["add"], e.add(&a, &b))?;
    rep.expect("s~1 + s~2 = s2", &s2, &s2x, &["add"]);
    for (name, s) in [("s1", &s1), ("s2", &s2)] {
        if let Some(h) = rep.attempt(name, HP, ctx.height(s)) {
            rep.expect(&format!("<{name},{name}>"), fmt_q(&h), "2", HP);
        }
        if let Some(k) = rep.attempt(name, &["section_O_intersection"], section_o_intersection(s)) {
            rep.expect(&format!("{name}.O"), k, 0, &["section_O_intersection"]);
        }
    }

    let cfg = rep.attempt(
        "configuration",
        &["singular_configuration"],
        singular_configuration(&q),
    )?;
    rep.expect(
        "configuration",
        format!("({}, {})", cfg.sing_type, cfg.line_class),
        format!("({}, s)", ex.sing_type),
        &["surface_of", "kodaira_type_at", "singular_configuration"],
    );
    rep.expect(
        "table row",
        format!("{:?}", cfg.rows),
        format!("[{}]", ex.row),
        &["singular_configuration", "lookup_rows"],
    );
    if let Some(row) = table_row(ex.row) {
        rep.expect(
            "lattice counts (ETC, QRETC)",
            format!("({}, {})", count_etc(&row.mw), count_qretc(&row.mw)),
            format!("({}, {})", row.expected_etc, row.expected_qretc),
            &["builtin_table", "count_etc", "count_qretc"],
        );
    }

    let c1 = rep.attempt("C1", PARSE, Conic::parse(ex.conic1))?;
    let c2 = rep.attempt("C2", PARSE, Conic::parse(ex.conic2))?;
    for (name, s, c) in [("C1", &s1, &c1), ("C2", &s2, &c2)] {
        if let Some(cc) = rep.attempt(name, &["conic_from_section"], conic_from_section(s)) {
            rep.expect(
                &format!("conic_from_section -> {name}"),
                &cc,
                c,
                &["conic_from_section"],
            );
        }
        if let Some(t) = rep.attempt(name, &["even_tangency"], even_tangency(&q, c)) {
            rep.expect(
                &format!("{name} even tangential"),
                t.is_even_tangential,
                true,
                &["even_tangency"],
            );
            rep.expect(
                &format!("{name} contact points"),
                format!(
                    "{} points, multiplicities {:?}",
                    t.point_count(),
                    t.multiset()
                ),
                "4 points, multiplicities [2, 2, 2, 2]",
                &["even_tangency"],
            );
        }
        if let Some((plus, minus)) = rep.attempt(name, &["lift_conic"], lift_conic(&q, c)) {
            rep.expect(
                &format!("lift_conic({name}) = ±section"),
                plus == *s || minus == *s,
                true,
                &["lift_conic"],
            );
        }
    }

    let h1 = rep.attempt("halve(s1)", &["halve"], halve(&e, &s1))?;
    rep.expect(
        "halve(s1) = ±s_o",
        h1.as_ref().is_some_and(|h| *h == so || *h == so.neg()),
        true,
        &["halve"],
    );
    let h2 = rep.attempt("halve(s2)", &["halve"], halve(&e, &s2))?;
    rep.expect(
        "halve(s2)",
        h2.map_or("none".to_string(), |h| h.to_string()),
        "none",
        &["halve"],
    );

    const SYM: &[&str] = &["lift_conic", "halve", "qr_symbol"];
    let sy1 = rep.attempt("(C1/Q)", SYM, qr_symbol(&q, &c1))?;
    let sy2 = rep.attempt("(C2/Q)", SYM, qr_symbol(&q, &c2))?;
    rep.expect(
        "(C1/Q)",
        format!("{:+} via {}", sy1.value, sy1.route),
        format!("+1 via {}", SymbolRoute::Halving),
        SYM,
    );
    rep.expect(
        "(C2/Q)",
        format!("{:+} via {}", sy2.value, sy2.route),
        format!("-1 via {}", SymbolRoute::HalvingAbsence),
        SYM,
    );
    if let Some(cert) = &sy1.certificate {
        rep.expect(
            "certificate from s_o verifies",
            cert.verify(q.f()),
            true,
            &["splitting_certificate"],
        );
    }

    const CERT: &[&str] = &["find_splitting_certificate"];
    for (name, c, sy) in [("C1", &c1, &sy1), ("C2", &c2, &sy2)] {
        if let Some(cert) = rep.attempt(name, CERT, find_splitting_certificate(&q, c)) {
            let route = if cert.as_ref().is_some_and(|c| c.verify(q.f())) {
                1
            } else {
                -1
            };
            rep.expect(
                &format!("certificate route agrees for {name}"),
                route,
                sy.value as i32,
                CERT,
            );
        }
    }

    let t1 = rep.attempt(
        "type C1",
        &["combinatorial_type"],
        combinatorial_type(&q, &c1),
    )?;
    let t2 = rep.attempt(
        "type C2",
        &["combinatorial_type"],
        combinatorial_type(&q, &c2),
    )?;
    rep.expect(
        "combinatorial types equal",
        t1 == t2,
        true,
        &["combinatorial_type"],
    );
    let z = rep.attempt(
        "zariski",
        &["zariski_pair_check"],
        zariski_pair_check((&q, &c1), (&q, &c2)),
    )?;
    rep.expect(
        "verdict",
        z.verdict,
        Verdict::ZariskiPair,
        &["combinatorial_type", "qr_symbol", "zariski_pair_check"],
    );

    const FEAS: &[&str] = &["qr_symbol", "dihedral_feasibility"];
    if let Some(f) = rep.attempt("feasibility C1", FEAS, dihedral_feasibility(&q, &c1)) {
        rep.expect("feasibility C1", f.feasibility, Feasibility::AllN, FEAS);
    }
    if let Some(f) = rep.attempt("feasibility C2", FEAS, dihedral_feasibility(&q, &c2)) {
        rep.expect(
            "feasibility C2",
            f.feasibility,
            Feasibility::NoOddPrime,
            FEAS,
        );
    }
    Some(())
}
