//! Command line front end: tangle and pattern utilities, knot expression
//! evaluation, surgery classes with their comparison witnesses, the
//! definite-form search, and a reproduction harness for the bundled worked
//! examples.
//!
//! Exit codes: 0 on success, 1 when a reproduction fixture fails, 2 on
//! usage or input errors.

mod repro;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use floercalc::cobordism::{
    chern_shift_e, char_poly, find_params, form, is_negative_definite, v0_bound_report,
    CobordismParams,
};
use floercalc::knot::KnotExpr;
use floercalc::local::witness_to_json;
use floercalc::surgery::{comparison_witness, d_surgery, model_for, surgery_class, Parity};
use floercalc::tangle::{is_proper, Frac, PatternRecord, TangleWord};

#[derive(Parser)]
#[command(
    name = "floercalc",
    version,
    about = "Exact involutive local-class calculator for surgeries and satellites"
)]
struct Cli {
    /// Emit a JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to a file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rational tangle words, fractions, and connectivity.
    Tangle {
        #[command(subcommand)]
        cmd: TangleCmd,
    },
    /// Satellite pattern records.
    Pattern {
        #[command(subcommand)]
        cmd: PatternCmd,
    },
    /// Knot expression parsing and invariants.
    Knot {
        #[command(subcommand)]
        cmd: KnotCmd,
    },
    /// Surgery classes, comparison witnesses, and d-invariants.
    Surgery {
        #[command(subcommand)]
        cmd: SurgeryCmd,
    },
    /// Intersection forms of the comparison cobordism.
    Cobordism {
        #[command(subcommand)]
        cmd: CobordismCmd,
    },
    /// Replay a bundled worked example and report PASS/FAIL per fixture.
    Reproduce {
        /// Target name, or "all".
        target: String,
    },
}

#[derive(Subcommand)]
enum TangleCmd {
    /// Expand a fraction into an alternating twist word.
    Expand {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Decide whether replacement by the tangle is proper.
    Proper {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Multiply clasped, multiply twisted Whitehead pattern.
    Whitehead {
        /// Signed clasp count; must be odd.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        clasps: i64,
        /// Full twist count.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twists: i64,
    },
    /// Declare a pattern by coefficient and linking number.
    Declare {
        #[arg(long, allow_hyphen_values = true)]
        pq: String,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
    },
}

#[derive(Subcommand)]
enum KnotCmd {
    /// Parse an expression and print its canonical form and invariants.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Subcommand)]
enum SurgeryCmd {
    /// Build the local class of a positive surgery on the doubled companion.
    Class {
        /// Companion knot; the surgery acts on its connected sum with its
        /// reverse, which is the branched double cover of the satellite.
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long)]
        pq: String,
    },
    /// Explicit verified map from the dual one-tower model into the class.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long)]
        pq: String,
    },
    /// d-invariant of an odd integer surgery on a thin or L-space knot.
    D {
        #[arg(long = "M", allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
    },
}

#[derive(Subcommand)]
enum CobordismCmd {
    /// Evaluate the form and the definiteness predicate at one point.
    Check {
        #[arg(long = "M", allow_negative_numbers = true)]
        m: i64,
        #[arg(long = "N1", allow_negative_numbers = true)]
        n1: i64,
        #[arg(long = "N2", allow_negative_numbers = true)]
        n2: i64,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
    },
    /// Search for the minimal admissible odd pair.
    Find {
        #[arg(long = "M")]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
    },
    /// Correction-term lower bound for a satellite by this companion.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
    },
}

/// A finished command: human text, machine JSON, and whether every fixture
/// line passed (only reproduction targets ever fail without erroring).
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome { text, json, passed: true }
    }
}

fn parse_fraction(s: &str) -> Result<Frac, String> {
    s.parse::<Frac>().map_err(|e| e.to_string())
}

fn parse_finite_slope(s: &str) -> Result<(i64, i64), String> {
    let f = parse_fraction(s)?;
    if f.is_infinite() {
        return Err("surgery slope must be finite".into());
    }
    Ok((f.num, f.den))
}

fn parse_knot(s: &str) -> Result<KnotExpr, String> {
    s.parse::<KnotExpr>().map_err(|e| e.to_string())
}

fn pattern_json(p: &PatternRecord) -> Value {
    serde_json::to_value(p).expect("pattern serializes")
}

fn pattern_text(p: &PatternRecord) -> String {
    format!(
        "coefficient {} ({:?} denominator, {:?}), linking {}, kind {:?}, proper: {}",
        p.coefficient,
        p.parity,
        p.sign,
        p.linking,
        p.kind,
        p.is_proper()
    )
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Tangle { cmd } => match cmd {
            TangleCmd::Expand { fraction } => {
                let f = parse_fraction(fraction)?;
                let w = TangleWord::from_fraction(f);
                let conn = w.connectivity();
                let text = format!(
                    "{f} = {w}\nexponents: {:?}\nconnectivity: {conn}",
                    w.exponents
                );
                let json = json!({
                    "fraction": f.to_string(),
                    "word": w.to_string(),
                    "exponents": w.exponents,
                    "connectivity": conn.to_string(),
                });
                Ok(Outcome::ok(text, json))
            }
            TangleCmd::Proper { fraction } => {
                let f = parse_fraction(fraction)?;
                let proper = is_proper(f);
                let text = format!("{f}: proper = {proper} (denominator {})", f.den);
                let json = json!({
                    "fraction": f.to_string(),
                    "proper": proper,
                });
                Ok(Outcome::ok(text, json))
            }
        },
        Command::Pattern { cmd } => {
            let record = match cmd {
                PatternCmd::Whitehead { clasps, twists } => {
                    PatternRecord::whitehead(*clasps, *twists).map_err(|e| e.to_string())?
                }
                PatternCmd::Declare { pq, ell } => {
                    let (p, q) = parse_finite_slope(pq)?;
                    PatternRecord::declared(p, q, *ell).map_err(|e| e.to_string())?
                }
            };
            Ok(Outcome::ok(pattern_text(&record), pattern_json(&record)))
        }
        Command::Knot { cmd } => match cmd {
            KnotCmd::Eval { expr } => {
                let k = parse_knot(expr)?;
                let mut text = format!("canonical: {k}");
                let mut json = json!({ "canonical": k.to_string() });
                match k.tau() {
                    Ok(t) => {
                        text.push_str(&format!("\ntau: {t}"));
                        json["tau"] = json!(t);
                    }
                    Err(e) => text.push_str(&format!("\ntau: unavailable ({e})")),
                }
                match k.v0_exact() {
                    Ok(v) => {
                        text.push_str(&format!("\nV0: {v}"));
                        json["v0"] = json!(v);
                    }
                    Err(e) => text.push_str(&format!("\nV0: unavailable ({e})")),
                }
                if let Ok(sc) = k.staircase() {
                    text.push_str(&format!(
                        "\ngenus: {}\nstep corners: {:?}",
                        sc.genus(),
                        sc.s_points()
                    ));
                    json["genus"] = json!(sc.genus());
                    json["step_corners"] = json!(sc.s_points());
                }
                Ok(Outcome::ok(text, json))
            }
        },
        Command::Surgery { cmd } => match cmd {
            SurgeryCmd::Class { knot, pq } => {
                let k = parse_knot(knot)?;
                let (p, q) = parse_finite_slope(pq)?;
                // The branched double cover of the satellite is surgery on the
                // companion summed with its reverse, whose model is the double.
                let doubled = KnotExpr::Multiple(2, Box::new(k.clone()));
                let model = model_for(&doubled).map_err(|e| e.to_string())?;
                let sc =
                    surgery_class(&model, p, q, &k.to_string()).map_err(|e| e.to_string())?;
                let d = sc.class.d_invariant();
                let mut text = format!(
                    "{}/{} surgery on the double of {}\nparity: {:?}\ngenerators: {}\nd-invariant: {}",
                    p, q, sc.knot, sc.parity, sc.class.complex().len(), d
                );
                if let (Some(s), Some(vs)) = (sc.s, sc.v_s) {
                    text.push_str(&format!("\nlevel s: {s}\nV_s: {vs}"));
                }
                let json = json!({
                    "knot": sc.knot,
                    "p": p,
                    "q": q,
                    "parity": format!("{:?}", sc.parity),
                    "s": sc.s,
                    "v_s": sc.v_s,
                    "generators": sc.class.complex().len(),
                    "d_invariant": d.to_string(),
                    "class": sc.class.to_json(),
                });
                Ok(Outcome::ok(text, json))
            }
            SurgeryCmd::Witness { knot, pq } => {
                let k = parse_knot(knot)?;
                let (p, q) = parse_finite_slope(pq)?;
                let doubled = KnotExpr::Multiple(2, Box::new(k.clone()));
                let model = model_for(&doubled).map_err(|e| e.to_string())?;
                let sc =
                    surgery_class(&model, p, q, &k.to_string()).map_err(|e| e.to_string())?;
                if sc.parity != Parity::Even {
                    return Err("comparison witnesses exist for even denominators only".into());
                }
                let cw = comparison_witness(&model, &sc).map_err(|e| e.to_string())?;
                let text = format!(
                    "verified map from the index-{} dual one-tower model (shift {}) into the class\nf entries: {}\nhomotopy entries: {}",
                    cw.index,
                    cw.shift,
                    cw.witness.f.iter().count(),
                    cw.witness.h.iter().count()
                );
                let json = json!({
                    "knot": sc.knot,
                    "index": cw.index,
                    "shift": cw.shift.to_string(),
                    "witness": witness_to_json(&cw.source, &sc.class, &cw.witness, true),
                });
                Ok(Outcome::ok(text, json))
            }
            SurgeryCmd::D { m, knot } => {
                let k = parse_knot(knot)?;
                let d = d_surgery(*m, &k).map_err(|e| e.to_string())?;
                let text = format!("d({m} surgery on {k}) = {d}");
                let json = json!({
                    "m": m,
                    "knot": k.to_string(),
                    "d": d.to_string(),
                });
                Ok(Outcome::ok(text, json))
            }
        },
        Command::Cobordism { cmd } => match cmd {
            CobordismCmd::Check { m, n1, n2, ell } => {
                let p = CobordismParams::new(*m, *n1, *n2, *ell).map_err(|e| e.to_string())?;
                let f = form(p);
                let (trace_term, det_term) = char_poly(f);
                let definite = is_negative_definite(p);
                let chern = chern_shift_e(*m, *n1, *n2).ok();
                let mut text = format!(
                    "form [[{}, {}], [{}, {}]]\ncharacteristic terms: trace {trace_term}, det {det_term}\nnegative definite: {definite}",
                    f.a, f.b, f.b, f.d
                );
                if let Some(e) = chern {
                    text.push_str(&format!("\ntwisting exponent E: {e}"));
                }
                let json = json!({
                    "params": { "M": m, "N1": n1, "N2": n2, "ell": ell },
                    "form": [[f.a, f.b], [f.b, f.d]],
                    "trace_term": trace_term,
                    "det_term": det_term,
                    "negative_definite": definite,
                    "twisting_exponent": chern,
                });
                Ok(Outcome::ok(text, json))
            }
            CobordismCmd::Find { m, ell } => {
                let (n1, n2) = find_params(*m, *ell).map_err(|e| e.to_string())?;
                let text = format!("minimal admissible pair: N1 = {n1}, N2 = {n2}");
                let json = json!({ "M": m, "ell": ell, "N1": n1, "N2": n2 });
                Ok(Outcome::ok(text, json))
            }
            CobordismCmd::Bound { knot, ell } => {
                let k = parse_knot(knot)?;
                let pattern =
                    PatternRecord::declared(1, 2, *ell).map_err(|e| e.to_string())?;
                let report = v0_bound_report(&k, &pattern).map_err(|e| e.to_string())?;
                let text = format!(
                    "{}\nV0({}) = {}, V0(mirror) = {}, gap = {}\nhandle data: M = {}, N1 = {}, N2 = {}, twisting exponent {}",
                    report.inequality,
                    report.knot,
                    report.v0,
                    report.v0_mirror,
                    report.gap,
                    report.m,
                    report.n1,
                    report.n2,
                    report.chern_shift
                );
                let json = serde_json::to_value(&report).expect("report serializes");
                Ok(Outcome::ok(text, json))
            }
        },
        Command::Reproduce { target } => {
            let reports = repro::run(target)?;
            let passed = reports.iter().all(|r| r.passed());
            let text = reports
                .iter()
                .map(|r| r.to_text())
                .collect::<Vec<_>>()
                .join("\n\n");
            let json = Value::Array(reports.iter().map(|r| r.to_json()).collect());
            Ok(Outcome { text, json, passed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let code = if outcome.passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
            let body = if cli.json {
                serde_json::to_string_pretty(&outcome.json).unwrap()
            } else {
                outcome.text.clone()
            };
            // A consumer like `head` may close the pipe early; that is a
            // normal shutdown, not an error.
            if let Err(e) = writeln!(io::stdout().lock(), "{body}") {
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return code;
                }
                eprintln!("error: cannot write to stdout: {e}");
                return ExitCode::from(2);
            }
            if let Some(path) = &cli.out {
                let report = serde_json::to_string_pretty(&outcome.json).unwrap();
                if let Err(e) = fs::write(path, report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            code
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
