use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mwq_core::arith::{parse_rational, rat};
use mwq_core::lattice::{
    builtin_table, dual_gram, enumerate_by_norm, enumerate_up_to, parse_lattice, GramLattice,
};
use mwq_core::quartic::{
    combinatorial_type, dihedral_feasibility, even_tangency, lift_conic, qr_symbol,
    singular_configuration, zariski_pair_check, Conic, PreparedQuartic,
};
use mwq_core::report::{example_by_id, run_example, run_table_verify, RunReport, Status};
use mwq_core::surface::{
    halve, section_o_intersection, ComponentOverride, HeightContext, Place, SectionPoint,
    WeierstrassCurve,
};
use mwq_core::Error;

/// Mordell-Weil lattices of rational elliptic surfaces attached to plane
/// quartics, and quadratic-residue symbols of even tangential conics.
#[derive(Parser)]
#[command(name = "mwq", version)]
struct Cli {
    /// Output as human-readable text or as line-delimited JSON records.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Print the configuration table, or recompute its ETC/QRETC columns with --verify.
    Table {
        #[arg(long)]
        verify: bool,
        /// Row range `a..b` (inclusive).
        #[arg(long, value_parser = parse_range)]
        rows: Option<RangeInclusive<u32>>,
    },
    /// Replay a worked example end to end: `2a1` or `a3`.
    Example { id: String },
    /// Contact of a conic `u = q(t)` with a prepared quartic.
    Tangency { quartic: String, conic: String },
    /// The quadratic-residue symbol (C/Q).
    Symbol { quartic: String, conic: String },
    /// Compare two conics (on one quartic, or on two with --quartic2).
    Zariski {
        quartic: String,
        conic1: String,
        conic2: String,
        #[arg(long)]
        quartic2: Option<String>,
    },
    /// Existence of dihedral covers branched along C + Q.
    Feasibility { quartic: String, conic: String },
    /// Operations on the elliptic surface y² = cubic(u).
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Lattice utilities.
    #[command(subcommand)]
    Lattice(LatticeCmd),
}

#[derive(Subcommand)]
enum CurveCmd {
    Check {
        curve: String,
        point: String,
    },
    Double {
        curve: String,
        point: String,
    },
    Add {
        curve: String,
        p: String,
        q: String,
    },
    Negate {
        curve: String,
        point: String,
    },
    Halve {
        curve: String,
        point: String,
    },
    Fibers {
        curve: String,
    },
    /// Height pairing; `--component v=i,j` fixes the components met at the place `v`.
    Height {
        curve: String,
        p: String,
        q: String,
        #[arg(long = "component", value_parser = parse_component)]
        components: Vec<ComponentOverride>,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Vectors of norm exactly `norm` (or at most `norm` with --up-to).
    Enumerate {
        lattice: String,
        norm: String,
        #[arg(long)]
        up_to: bool,
    },
    /// Vectors of norm 2.
    Roots { lattice: String },
    /// Gram matrix of the dual lattice.
    Dual { lattice: String },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u32 = a.trim().parse().map_err(|_| "bad range start")?;
    let b: u32 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| "bad range end")?;
    if a > b {
        return Err("empty range".into());
    }
    Ok(a..=b)
}

fn parse_component(s: &str) -> Result<ComponentOverride, String> {
    let (v, ij) = s.split_once('=').ok_or("expected v=i,j")?;
    let (i, j) = ij.split_once(',').ok_or("expected v=i,j")?;
    Ok(ComponentOverride {
        place: Place::parse(v).map_err(|e| e.to_string())?,
        first: i.trim().parse().map_err(|_| "bad component index")?,
        second: j.trim().parse().map_err(|_| "bad component index")?,
    })
}

/// `@path` reads the argument from a file.
fn arg_text(s: &str) -> Result<String, Error> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .map_err(|e| Error::Invalid(format!("cannot read {path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn quartic(s: &str) -> Result<PreparedQuartic, Error> {
    PreparedQuartic::parse(&arg_text(s)?)
}

fn conic(s: &str) -> Result<Conic, Error> {
    Conic::parse(&arg_text(s)?)
}

fn curve(s: &str) -> Result<WeierstrassCurve, Error> {
    WeierstrassCurve::parse(&arg_text(s)?)
}

fn point(s: &str) -> Result<SectionPoint, Error> {
    SectionPoint::parse(&arg_text(s)?)
}

fn lattice(s: &str) -> Result<GramLattice, Error> {
    let d = parse_lattice(&arg_text(s)?)?;
    if !d.torsion.is_empty() {
        return Err(Error::Invalid(
            "torsion is ignored by lattice commands; drop the Z terms".into(),
        ));
    }
    Ok(d.free)
}

fn run(cmd: Command) -> Result<RunReport, Error> {
    let mut rep;
    match cmd {
        Command::Table { verify: true, rows } => rep = run_table_verify(rows),
        Command::Table {
            verify: false,
            rows,
        } => {
            rep = RunReport::new("table");
            for r in builtin_table()
                .iter()
                .filter(|r| rows.as_ref().is_none_or(|rg| rg.contains(&r.row_no)))
            {
                rep.value(
                    &format!("row {}", r.row_no),
                    format!(
                        "Xi={} line={} R={} MW rank={} torsion={:?} ETC={} QRETC={}",
                        r.sing_type,
                        r.line_class,
                        r.root_lattice,
                        r.mw.mw_free.rank(),
                        r.mw.torsion,
                        r.expected_etc,
                        r.expected_qretc
                    ),
                    &["builtin_table"],
                );
            }
        }
        Command::Example { id } => {
            let ex = example_by_id(&id)
                .ok_or_else(|| Error::Invalid(format!("unknown example '{id}'; use 2a1 or a3")))?;
            rep = run_example(ex);
        }
        Command::Tangency {
            quartic: qs,
            conic: cs,
        } => {
            let (q, c) = (quartic(&qs)?, conic(&cs)?);
            rep = RunReport::new("tangency");
            rep.input("quartic", &q);
            rep.input("conic", &c);
            let t = even_tangency(&q, &c)?;
            const P: &[&str] = &["parse_input", "even_tangency"];
            rep.value("f(t, q(t))", &t.restriction, P);
            rep.value("even tangential", t.is_even_tangential, P);
            for ct in &t.contact {
                rep.value(
                    &format!("contact at {}", ct.place),
                    format!("multiplicity {} at {} point(s)", ct.multiplicity, ct.points),
                    P,
                );
            }
            rep.value("total multiplicity", t.total_multiplicity(), P);
            if let Some(h) = &t.sqrt_witness {
                rep.value("sqrt witness", h, P);
            }
        }
        Command::Symbol {
            quartic: qs,
            conic: cs,
        } => {
            let (q, c) = (quartic(&qs)?, conic(&cs)?);
            rep = RunReport::new("symbol");
            rep.input("quartic", &q);
            rep.input("conic", &c);
            let cfg = singular_configuration(&q)?;
            rep.value(
                "configuration",
                format!("({}, {})", cfg.sing_type, cfg.line_class),
                &["singular_configuration"],
            );
            let (plus, _) = lift_conic(&q, &c)?;
            rep.value("s_C+", &plus, &["even_tangency", "lift_conic"]);
            let s = qr_symbol(&q, &c)?;
            const P: &[&str] = &["lift_conic", "genus_from_sing", "halve", "qr_symbol"];
            rep.value("genus", s.genus, &["genus_from_sing"]);
            rep.value("(C/Q)", format!("{:+}", s.value), P);
            rep.value("route", s.route, P);
            if let Some(w) = &s.witness {
                rep.value("s_o with 2 s_o = s_C+", w, P);
            }
            if let Some(cert) = &s.certificate {
                rep.value("splitting certificate", cert, &["splitting_certificate"]);
            }
        }
        Command::Zariski {
            quartic: qs,
            conic1,
            conic2,
            quartic2,
        } => {
            let q1 = quartic(&qs)?;
            let q2 = match &quartic2 {
                Some(s) => quartic(s)?,
                None => q1.clone(),
            };
            let (c1, c2) = (conic(&conic1)?, conic(&conic2)?);
            rep = RunReport::new("zariski");
            rep.input("quartic", &q1);
            rep.input("quartic2", &q2);
            rep.input("conic1", &c1);
            rep.input("conic2", &c2);
            let z = zariski_pair_check((&q1, &c1), (&q2, &c2))?;
            for (i, (t, s)) in z.types.iter().zip(&z.symbols).enumerate() {
                rep.value(
                    &format!("pair {}", i + 1),
                    format!(
                        "Xi={} line={} contact={:?} symbol={:+} ({})",
                        t.sing_type, t.line_class, t.contact_multiset, s.value, s.route
                    ),
                    &["combinatorial_type", "qr_symbol"],
                );
            }
            rep.value(
                "verdict",
                z.verdict,
                &["combinatorial_type", "qr_symbol", "zariski_pair_check"],
            );
        }
        Command::Feasibility {
            quartic: qs,
            conic: cs,
        } => {
            let (q, c) = (quartic(&qs)?, conic(&cs)?);
            rep = RunReport::new("feasibility");
            rep.input("quartic", &q);
            rep.input("conic", &c);
            let _ = combinatorial_type(&q, &c)?;
            let f = dihedral_feasibility(&q, &c)?;
            rep.value(
                "Xi",
                &f.configuration.sing_type,
                &["singular_configuration"],
            );
            rep.value(
                "(C/Q)",
                format!("{:+} ({})", f.symbol.value, f.symbol.route),
                &["qr_symbol"],
            );
            rep.value(
                "dihedral covers",
                f.feasibility,
                &["qr_symbol", "dihedral_feasibility"],
            );
        }
        Command::Curve(c) => rep = run_curve(c)?,
        Command::Lattice(c) => rep = run_lattice(c)?,
    }
    Ok(rep)
}

fn run_curve(cmd: CurveCmd) -> Result<RunReport, Error> {
    let mut rep;
    match cmd {
        CurveCmd::Check {
            curve: cs,
            point: ps,
        } => {
            let (e, p) = (curve(&cs)?, point(&ps)?);
            rep = RunReport::new("curve check");
            rep.input("curve", &e);
            rep.input("point", &p);
            rep.value("on curve", e.on_curve(&p), &["on_curve"]);
        }
        CurveCmd::Double {
            curve: cs,
            point: ps,
        } => {
            let (e, p) = (curve(&cs)?, point(&ps)?);
            rep = RunReport::new("curve double");
            rep.input("curve", &e);
            rep.input("point", &p);
            rep.value("2P", e.double(&p)?, &["double"]);
        }
        CurveCmd::Add { curve: cs, p, q } => {
            let (e, p, q) = (curve(&cs)?, point(&p)?, point(&q)?);
            rep = RunReport::new("curve add");
            rep.input("curve", &e);
            rep.input("p", &p);
            rep.input("q", &q);
            rep.value("P + Q", e.add(&p, &q)?, &["add"]);
        }
        CurveCmd::Negate {
            curve: cs,
            point: ps,
        } => {
            let (e, p) = (curve(&cs)?, point(&ps)?);
            rep = RunReport::new("curve negate");
            rep.input("curve", &e);
            rep.input("point", &p);
            rep.value("-P", e.negate(&p)?, &["negate"]);
        }
        CurveCmd::Halve {
            curve: cs,
            point: ps,
        } => {
            let (e, p) = (curve(&cs)?, point(&ps)?);
            rep = RunReport::new("curve halve");
            rep.input("curve", &e);
            rep.input("point", &p);
            let h = halve(&e, &p)?;
            rep.value(
                "P/2",
                h.map_or("none".to_string(), |s| s.to_string()),
                &["halve"],
            );
        }
        CurveCmd::Fibers { curve: cs } => {
            let e = curve(&cs)?;
            rep = RunReport::new("curve fibers");
            rep.input("curve", &e);
            let ctx = HeightContext::new(e)?;
            for pd in &ctx.places {
                rep.value(
                    &format!("fiber over {}", pd.place),
                    format!(
                        "{} m_v={} ord_disc={} degree={}",
                        pd.kodaira,
                        pd.m_v,
                        pd.ord_disc,
                        pd.place.degree()
                    ),
                    &["discriminant", "kodaira_type_at"],
                );
            }
            rep.value("euler sum", ctx.euler_sum(), &["kodaira_type_at"]);
        }
        CurveCmd::Height {
            curve: cs,
            p,
            q,
            components,
        } => {
            let (e, p, q) = (curve(&cs)?, point(&p)?, point(&q)?);
            rep = RunReport::new("curve height");
            rep.input("curve", &e);
            rep.input("p", &p);
            rep.input("q", &q);
            let ctx = HeightContext::new(e)?;
            const P: &[&str] = &[
                "component_of",
                "corr_v",
                "section_pair_intersection",
                "height_pairing",
            ];
            if !p.is_zero() && !q.is_zero() {
                rep.value(
                    "P.O",
                    section_o_intersection(&p)?,
                    &["section_O_intersection"],
                );
                rep.value(
                    "Q.O",
                    section_o_intersection(&q)?,
                    &["section_O_intersection"],
                );
                if p != q {
                    rep.value(
                        "P.Q",
                        ctx.section_pair_intersection(&p, &q, &components)?,
                        P,
                    );
                }
                rep.value("sum Corr", ctx.corr_sum(&p, &q, &components)?, P);
            }
            rep.value("<P,Q>", ctx.height_pairing(&p, &q, &components)?, P);
        }
    }
    Ok(rep)
}

fn vec_text(v: &[i64]) -> String {
    format!("{v:?}")
}

fn run_lattice(cmd: LatticeCmd) -> Result<RunReport, Error> {
    let mut rep;
    match cmd {
        LatticeCmd::Enumerate {
            lattice: ls,
            norm,
            up_to,
        } => {
            let l = lattice(&ls)?;
            let q = parse_rational(&norm)
                .ok_or_else(|| Error::Invalid(format!("bad norm '{norm}'")))?;
            rep = RunReport::new("lattice enumerate");
            rep.input("gram", &l);
            rep.input("norm", &norm);
            let vs = if up_to {
                enumerate_up_to(&l, &q)
            } else {
                enumerate_by_norm(&l, &q)
            };
            rep.value("count", vs.len(), &["enumerate"]);
            for v in &vs {
                rep.value(
                    "vector",
                    format!("{} norm {}", vec_text(v), l.norm(v)),
                    &["enumerate"],
                );
            }
        }
        LatticeCmd::Roots { lattice: ls } => {
            let l = lattice(&ls)?;
            rep = RunReport::new("lattice roots");
            rep.input("gram", &l);
            let vs = enumerate_by_norm(&l, &rat(2));
            rep.value("root count", vs.len(), &["enumerate_by_norm"]);
            for v in &vs {
                rep.value("root", vec_text(v), &["enumerate_by_norm"]);
            }
        }
        LatticeCmd::Dual { lattice: ls } => {
            let l = lattice(&ls)?;
            rep = RunReport::new("lattice dual");
            rep.input("gram", &l);
            let d = dual_gram(&l);
            rep.value("dual gram", &d, &["dual_gram"]);
            rep.value("det", d.det(), &["dual_gram"]);
        }
    }
    Ok(rep)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconsistency(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(rep) => {
            match cli.format {
                Format::Text => println!("{rep}"),
                Format::Records => print!("{}", rep.to_records()),
            }
            ExitCode::from(match rep.status {
                Status::Ok => 0,
                Status::Mismatch => 1,
                Status::Error => 3,
            })
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Records => println!(
                    "{}",
                    serde_json::json!({"schema": mwq_core::report::REPORT_SCHEMA, "status": "error", "error": e.to_string()})
                ),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
