use std::io::{self, Write};
use std::path::Path;

use qlattice::arith::{format_gaussian, format_rational, parse_rational, Rational, Verdict};
use qlattice::codec::{
    certificate_to_json, operator_from_json, parse_json, state_from_json, subspace_from_json, vector_from_json,
};
use qlattice::lattice::{encode, semidecide_not_member, Subspace};
use qlattice::spectral::{valuation_semidecide, valuation_upper, BoundedOperator, ClosedRationalSet};
use qlattice::states::mixed_eval;
use qlattice::topology::{
    demo_biorth_discontinuity, demo_join_discontinuity, demo_schroeder, sot_check, OperatorSequence, Weights,
};
use qlattice::{Span, Vector};
use serde_json::{json, Value};

use crate::config::{Config, OutputFormat};
use crate::{Cli, CliError, Command, Demo, SequenceKind};

struct Out {
    format: OutputFormat,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn emit(&mut self, record: Value, text: impl FnOnce() -> String) -> Result<(), CliError> {
        let line = match self.format {
            OutputFormat::Json => serde_json::to_string(&record).expect("JSON values serialize"),
            OutputFormat::Text => text(),
        };
        writeln!(self.stdout, "{line}").map_err(|e| CliError::Domain(format!("writing output: {e}")))
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_vector(path: &Path) -> Result<Vector, CliError> {
    Ok(vector_from_json(&read_json(path)?)?)
}

fn read_subspace(path: &Path) -> Result<Span, CliError> {
    Ok(subspace_from_json(&read_json(path)?)?)
}

fn read_probes(path: &Path) -> Result<Vec<Vector>, CliError> {
    match read_json(path)? {
        Value::Array(items) => Ok(items.iter().map(vector_from_json).collect::<Result<_, _>>()?),
        single => Ok(vec![vector_from_json(&single)?]),
    }
}

fn vector_text(x: &Vector) -> String {
    let parts: Vec<String> = x.entries().map(|(i, z)| format!("{i}: {}", format_gaussian(z))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "confirmed",
        Verdict::Unknown => "unknown",
    }
}

fn fuel_or_default(fuel: Option<u64>, cfg: &Config) -> Result<u64, CliError> {
    match fuel {
        Some(0) => Err(CliError::Domain("fuel must be at least 1".into())),
        Some(f) => Ok(f),
        None => Ok(cfg.default_fuel),
    }
}

pub fn run(cli: Cli, cfg: &Config) -> Result<(), CliError> {
    let mut out = Out {
        format: cli.output.unwrap_or(cfg.output_format),
        stdout: io::stdout().lock(),
    };
    match cli.command {
        Command::Dist { vec, subspace } => {
            let x = read_vector(&vec)?;
            let l = read_subspace(&subspace)?;
            let d = format_rational(&l.distance_sq(&x));
            out.emit(json!({ "distance_sq": d }), || d.clone())
        }
        Command::Encode {
            subspace,
            max_certs,
            max_rounds,
        } => {
            let l = read_subspace(&subspace)?;
            let code = encode(&Subspace::Finite(l));
            let mut emitted = 0;
            for round in code.rounds().take(max_rounds) {
                for cert in round {
                    if emitted == max_certs {
                        return Ok(());
                    }
                    out.emit(certificate_to_json(&cert), || {
                        format!("c = {}  r = {}", vector_text(&cert.c), format_rational(&cert.r))
                    })?;
                    emitted += 1;
                }
            }
            Ok(())
        }
        Command::Notmember { vec, subspace, fuel } => {
            let x = read_vector(&vec)?;
            let l = read_subspace(&subspace)?;
            let fuel = fuel_or_default(fuel, cfg)?;
            let s = semidecide_not_member(&encode(&Subspace::Finite(l)), &x)?;
            let first = s.first_confirmation(fuel);
            let verdict = if first.is_some() { Verdict::Confirmed } else { Verdict::Unknown };
            out.emit(
                json!({ "verdict": verdict_name(verdict), "fuel": fuel, "rounds": first }),
                || match first {
                    Some(k) => format!("not a member (confirmed after {k} rounds)"),
                    None => format!("unknown after {fuel} rounds"),
                },
            )
        }
        Command::State { state, subspace, prefix } => {
            let s = state_from_json(&read_json(&state)?)?;
            let l = read_subspace(&subspace)?;
            let n = prefix.or(s.term_count()).unwrap_or(cfg.default_fuel as usize);
            let v = mixed_eval(&s, &l, n)?;
            out.emit(
                json!({
                    "lo": format_rational(v.lo()),
                    "hi": format_rational(v.hi()),
                    "exact": v.is_point(),
                    "terms": n,
                }),
                || {
                    if v.is_point() {
                        format_rational(v.lo())
                    } else {
                        v.to_string()
                    }
                },
            )
        }
        Command::Specval {
            op,
            vec,
            set,
            q,
            fuel,
            upper,
        } => {
            if q.is_none() && !upper {
                return Err(CliError::Usage("specval needs --q, --upper or both".into()));
            }
            let a = operator_from_json(&read_json(&op)?)?;
            let x = read_vector(&vec)?;
            let c = ClosedRationalSet::parse(&set)?;
            let fuel = fuel_or_default(fuel, cfg)?;
            let q = q.map(|q| parse_rational(&q)).transpose()?;
            if upper {
                let u = valuation_upper(&a, &x, &c)?;
                for (k, b) in u.bounds().take(fuel as usize).enumerate() {
                    let b = format_rational(&b);
                    out.emit(json!({ "step": k + 1, "bound": b }), || format!("{}: {b}", k + 1))?;
                }
            }
            if let Some(q) = q {
                let s = valuation_semidecide(&a, &x, &c, &q)?;
                let first = s.first_confirmation(fuel);
                let verdict = if first.is_some() { Verdict::Confirmed } else { Verdict::Unknown };
                let q = format_rational(&q);
                out.emit(
                    json!({ "verdict": verdict_name(verdict), "q": q, "fuel": fuel, "steps": first }),
                    || match first {
                        Some(k) => format!("nu(C) < {q}: confirmed at step {k}"),
                        None => format!("nu(C) < {q}: unknown after {fuel} steps"),
                    },
                )?;
            }
            Ok(())
        }
        Command::Sotcheck {
            seq,
            probes,
            limit,
            eps,
            max_n,
        } => {
            let seq = match seq {
                SequenceKind::LeftShift => OperatorSequence::left_shift_powers(),
                SequenceKind::RightShift => OperatorSequence::right_shift_powers(),
                SequenceKind::Projections => OperatorSequence::coordinate_projections(),
            };
            let limit = match limit {
                Some(path) => operator_from_json(&read_json(&path)?)?,
                None => seq.limit.clone().unwrap_or_else(BoundedOperator::zero),
            };
            let eps = match eps {
                Some(e) => parse_rational(&e)?,
                None => cfg.default_precision.clone(),
            };
            let probes = read_probes(&probes)?;
            let report = sot_check(&seq, &limit, &probes, &eps, max_n)?;
            let record = serde_json::to_value(&report).expect("reports serialize");
            out.emit(record, || {
                let mut lines: Vec<String> = report
                    .per_probe
                    .iter()
                    .map(|p| match p.n0 {
                        Some(n0) => format!("probe {}: within eps from n = {n0}", p.probe),
                        None => format!(
                            "probe {}: not within eps at n = {} (distance^2 {})",
                            p.probe,
                            report.window,
                            format_rational(&p.final_distance_sq)
                        ),
                    })
                    .collect();
                lines.push(format!(
                    "verdict: {} over n <= {}",
                    if report.verdict { "converges" } else { "no convergence" },
                    report.window
                ));
                lines.join("\n")
            })
        }
        Command::Demo { which } => run_demo(which, &mut out),
    }
}

fn run_demo(which: Demo, out: &mut Out) -> Result<(), CliError> {
    match which {
        Demo::Schroeder { max_n, summary } => {
            let r = demo_schroeder(max_n)?;
            for row in &r.rows {
                let v = format_rational(&row.value);
                out.emit(json!({ "n": row.n, "value": v }), || format!("n = {}: s(A_n)(e_0) = {v}", row.n))?;
            }
            if summary {
                let limit = format_rational(&r.limit_value);
                out.emit(
                    json!({ "all_half": r.all_half, "limit_value": limit, "conclusion": r.conclusion }),
                    || format!("limit value {limit}; {}", r.conclusion),
                )?;
            }
            Ok(())
        }
        Demo::Join {
            max_n,
            k,
            ratio,
            summary,
        } => {
            let ratio: Rational = parse_rational(&ratio)?;
            let r = demo_join_discontinuity(max_n, k, &Weights::Geometric(ratio))?;
            for row in &r.rows {
                let record = serde_json::to_value(row).expect("rows serialize");
                out.emit(record, || {
                    format!(
                        "n = {}: dim meet(P, Q_n) = {}{}",
                        row.n,
                        row.meet_dim,
                        if row.meet_is_p { " (= P)" } else { "" }
                    )
                })?;
            }
            if summary {
                out.emit(
                    json!({
                        "k": r.k,
                        "p_in_join": r.p_in_join,
                        "zero_below_k": r.zero_below_k,
                        "note": r.note,
                    }),
                    || format!("P in join: {}; meet zero below K: {}; {}", r.p_in_join, r.zero_below_k, r.note),
                )?;
            }
            Ok(())
        }
        Demo::Biorth { max_n, vec, summary } => {
            let x = match vec {
                Some(path) => read_vector(&path)?,
                None => Vector::basis(0),
            };
            let r = demo_biorth_discontinuity(max_n, &x)?;
            for row in &r.rows {
                let record = serde_json::to_value(row).expect("rows serialize");
                out.emit(record, || {
                    format!(
                        "n = {}: {} points, biorthogonal closure {}",
                        row.n,
                        row.points,
                        if row.biorth_is_line { "is the line" } else { "is not the line" }
                    )
                })?;
            }
            if summary {
                out.emit(
                    json!({
                        "all_line": r.all_line,
                        "intersection_empty": r.intersection_empty,
                        "note": r.note,
                    }),
                    || r.note.clone(),
                )?;
            }
            Ok(())
        }
    }
}
