//! Execution of the non-verify subcommands.

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use satmat_core::classifier::{
    corner_construction, pump, sat_classify, ssat_classify, ssat_properties, witness_check,
    witness_search, Certificate, Classification, Verdict, WitnessCertificate,
    WitnessSearchParams,
};
use satmat_core::constructions::{
    corner_reduced_pattern, extend_pattern_corner, extendcorner_extend, extendcorner_reduce,
    gen_frame, gen_named, pattern_ik_ik, pattern_q, pattern_q_double_prime, pattern_q_prime,
    Named,
};
use satmat_core::containment::{enumerate_occurrences, find_occurrence, Occurrence};
use satmat_core::saturation::{is_saturating, is_semisaturating};
use satmat_core::search::{certificate_ok, exact, Budget, SearchKind};
use satmat_core::staircase::{below_staircase_zero, extremal_staircase, verify_level_lemmas};
use satmat_core::{HostMatrix, Pattern, Position};
use serde_json::{json, Value};

use crate::args::{BudgetArg, Command, Construction, DimsArg};
use crate::input::{describe, load_matrix, load_pattern};
use crate::report::{rows_json, BudgetStatus, Report};

/// Exit status: definitive answer.
pub const EXIT_OK: i32 = 0;
/// Exit status: malformed input or failed precondition.
pub const EXIT_INPUT: i32 = 1;
/// Exit status: budget ran out, answer inconclusive.
pub const EXIT_INCONCLUSIVE: i32 = 2;

fn pattern_input(report: &mut Report, source: &str) -> Result<Pattern> {
    let p = load_pattern(source)?;
    report.input("pattern", describe(source, p.rows(), p.cols(), p.row_strings()));
    Ok(p)
}

fn matrix_input(report: &mut Report, source: &str) -> Result<HostMatrix> {
    let m = load_matrix(source)?;
    report.input("matrix", describe(source, m.rows(), m.cols(), m.row_strings()));
    Ok(m)
}

pub fn budget_from(arg: &BudgetArg, default: Budget) -> Result<Budget> {
    let nodes = arg.budget_nodes.unwrap_or(default.max_nodes);
    let seconds = arg.budget_seconds.unwrap_or(default.max_seconds);
    Ok(Budget::new(nodes, seconds)?)
}

fn occurrence_json(o: &Occurrence) -> Value {
    json!({
        "rows": o.rows.iter().map(|r| r + 1).collect::<Vec<_>>(),
        "cols": o.cols.iter().map(|c| c + 1).collect::<Vec<_>>(),
    })
}

fn position_json(p: Position) -> Value {
    let (r, c) = p.one_based();
    json!([r, c])
}

fn parse_pivot(s: &str) -> Result<Position> {
    let (r, c) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("pivot {s:?} must be ROW,COL"))?;
    let r: usize = r.trim().parse().with_context(|| format!("pivot {s:?}"))?;
    let c: usize = c.trim().parse().with_context(|| format!("pivot {s:?}"))?;
    Position::from_one_based(r, c).ok_or_else(|| anyhow!("pivot {s:?} is 1-based"))
}

/// Runs a subcommand, filling `report`. Returns the exit status.
pub fn execute(command: &Command, report: &mut Report) -> Result<i32> {
    match command {
        Command::Contains { pattern, matrix } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let m = matrix_input(report, &matrix.matrix)?;
            let found = find_occurrence(&m, &p)?;
            report.result("contains", found.is_some());
            report.result("occurrence", found.as_ref().map_or(Value::Null, occurrence_json));
            if let Some(o) = &found {
                let ok = p
                    .ones_positions()
                    .all(|q| m.get(Position::new(o.rows[q.row], o.cols[q.col])));
                report.check("occurrence covers the pattern", ok, "every pattern 1 maps to a 1");
            }
            Ok(EXIT_OK)
        }
        Command::Occurrences { pattern, matrix, limit } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let m = matrix_input(report, &matrix.matrix)?;
            report.input("limit", *limit);
            let list = enumerate_occurrences(&m, &p, *limit)?;
            report.result("count", list.occurrences.len());
            report.result("truncated", list.truncated);
            report.result(
                "occurrences",
                Value::Array(list.occurrences.iter().map(occurrence_json).collect()),
            );
            Ok(EXIT_OK)
        }
        Command::Sat { pattern, dims, budget } => search(report, SearchKind::Sat, &pattern.pattern, dims, budget),
        Command::Ssat { pattern, dims, budget } => search(report, SearchKind::Ssat, &pattern.pattern, dims, budget),
        Command::Ex { pattern, dims, budget } => search(report, SearchKind::Ex, &pattern.pattern, dims, budget),
        Command::Classify { pattern, budget, seed } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let search_budget = budget_from(budget, Budget::seconds(10.0))?;
            let params = WitnessSearchParams {
                seed: *seed,
                ..WitnessSearchParams::default()
            };
            report.input("seed", *seed);
            report.input("search_budget_seconds", search_budget.max_seconds);
            let c = sat_classify(&p, &search_budget, &params)?;
            classification_results(report, &c);
            if let Some(Certificate::Witness(w)) = &c.certificate {
                let ok = witness_check(&w.matrix, &p).is_ok();
                report.check("witness re-verifies", ok, "saturating with the required empty runs");
            }
            Ok(if c.verdict == Verdict::Unknown {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            })
        }
        Command::SsatClassify { pattern } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let props = ssat_properties(&p)?;
            let c = ssat_classify(&p)?;
            classification_results(report, &c);
            report.result("properties", json!(props));
            if c.verdict == Verdict::Constant {
                let (k, l) = p.dims();
                let n = 2 * k.max(l) + 1;
                let corners = corner_construction(&p, n, n)?;
                let ok = is_semisaturating(&corners, &p)?;
                report.result("corner_construction", rows_json(&corners));
                report.check(
                    "corner construction semisaturates",
                    ok,
                    format!("{n}x{n}, weight {}", corners.weight()),
                );
            }
            Ok(EXIT_OK)
        }
        Command::Construct { name, k, l, pattern, rows, cols, pivot } => {
            construct(report, *name, *k, *l, pattern.as_deref(), *rows, *cols, pivot.as_deref())
        }
        Command::Staircase { matrix } => {
            let m = matrix_input(report, &matrix.matrix)?;
            let s = extremal_staircase(&m)?;
            report.result("size", s.len());
            report.result(
                "positions",
                Value::Array(s.positions().into_iter().map(position_json).collect()),
            );
            report.result(
                "spans",
                Value::Array(
                    (0..s.rows())
                        .map(|r| {
                            let (a, b) = s.span(r);
                            json!([a + 1, b + 1])
                        })
                        .collect(),
                ),
            );
            let below = below_staircase_zero(&m, &s);
            report.result("below_zero", below);
            report.check("staircase size", s.len() == m.rows() + m.cols() - 1, "m + n - 1 positions");
            Ok(EXIT_OK)
        }
        Command::Levels { matrix, k } => {
            let m = matrix_input(report, &matrix.matrix)?;
            report.input("k", *k);
            let r = verify_level_lemmas(&m, *k)?;
            let grid: Vec<String> = r
                .levels
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|l| match l {
                            None => "S".to_string(),
                            Some(l) if *l < 10 => l.to_string(),
                            Some(_) => "+".to_string(),
                        })
                        .collect()
                })
                .collect();
            report.result("levels", grid);
            report.result("passed", r.passed());
            for c in &r.clauses {
                let status = match (c.passed, c.experimental) {
                    (true, _) => crate::report::Status::Pass,
                    (false, true) => crate::report::Status::Inconclusive,
                    (false, false) => crate::report::Status::Fail,
                };
                let mut detail = c.detail.clone();
                if let Some(p) = c.witness {
                    detail.push_str(&format!("; first violation at {p}"));
                }
                if c.experimental {
                    detail.push_str(" (experimental)");
                }
                report.checks.push(crate::report::Check::new(c.name, status, detail));
            }
            Ok(EXIT_OK)
        }
        Command::WitnessCheck { pattern, matrix } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let m = matrix_input(report, &matrix.matrix)?;
            match witness_check(&m, &p) {
                Ok(w) => {
                    report.result("witness", true);
                    witness_results(report, &w);
                }
                Err(satmat_core::classifier::WitnessFailure::Input(e)) => return Err(e.into()),
                Err(e) => {
                    report.result("witness", false);
                    report.result("reason", e.to_string());
                }
            }
            Ok(EXIT_OK)
        }
        Command::WitnessSearch { pattern, budget, seed, max_block, max_size, restarts } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let budget = budget_from(budget, Budget::seconds(30.0))?;
            report.input("seed", *seed);
            report.input("max_block", *max_block);
            report.input("max_size", *max_size);
            report.input("restarts", *restarts);
            let params = WitnessSearchParams {
                block_sizes: 1..=*max_block,
                sizes: 1..=*max_size,
                restarts: *restarts,
                seed: *seed,
                budget,
            };
            let out = witness_search(&p, &params)?;
            report.result("found", out.witness.is_some());
            report.result("attempts", out.attempts);
            if let (Some(w), Some((n, b, restart))) = (&out.witness, out.found_at) {
                report.result("found_at", json!({"size": n, "block": b, "restart": restart}));
                witness_results(report, w);
                let ok = witness_check(&w.matrix, &p).is_ok();
                report.check("witness re-verifies", ok, "saturating with the required empty runs");
            }
            report.budget = Some(BudgetStatus::new(&budget, out.budget_exhausted));
            Ok(if out.budget_exhausted {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            })
        }
        Command::Pump { pattern, matrix, t } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let m = matrix_input(report, &matrix.matrix)?;
            report.input("t", *t);
            let w = witness_check(&m, &p).map_err(|e| anyhow!("matrix is not a witness: {e}"))?;
            let grown = pump(&w, *t)?;
            report.result("matrix", rows_json(&grown));
            report.result("rows", grown.rows());
            report.result("cols", grown.cols());
            report.result("weight", grown.weight());
            report.check("pumped matrix saturates", is_saturating(&grown, &p)?, "re-verified");
            Ok(EXIT_OK)
        }
        Command::Extend { pattern, matrix } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let m = matrix_input(report, &matrix.matrix)?;
            let grown = extendcorner_extend(&m, &p)?;
            let big = extend_pattern_corner(&p)?;
            report.result("matrix", rows_json(&grown));
            report.result("weight", grown.weight());
            report.result("pattern", rows_json(&big));
            report.check(
                "extended matrix saturates the extended pattern",
                is_saturating(&grown, &big)?,
                format!("weight {} = {} + {}", grown.weight(), m.weight(), m.rows() + m.cols() + 1),
            );
            Ok(EXIT_OK)
        }
        Command::Reduce { pattern, matrix } => {
            let p = pattern_input(report, &pattern.pattern)?;
            let m = matrix_input(report, &matrix.matrix)?;
            let small = extendcorner_reduce(&m, &p)?;
            let reduced = corner_reduced_pattern(&p).expect("checked by reduce");
            report.result("matrix", rows_json(&small));
            report.result("weight", small.weight());
            report.result("pattern", rows_json(&reduced));
            report.check(
                "reduced matrix saturates the reduced pattern",
                is_saturating(&small, &reduced)?,
                format!("weight {} = {} - {}", small.weight(), m.weight(), m.rows() + m.cols() - 1),
            );
            Ok(EXIT_OK)
        }
        Command::Verify { .. } => unreachable!("verify is dispatched separately"),
    }
}

fn search(
    report: &mut Report,
    kind: SearchKind,
    source: &str,
    dims: &DimsArg,
    budget: &BudgetArg,
) -> Result<i32> {
    let p = pattern_input(report, source)?;
    report.input("rows", dims.rows);
    report.input("cols", dims.cols);
    let budget = budget_from(budget, Budget::default())?;
    let r = exact(kind, &p, dims.rows, dims.cols, &budget)?;
    let (lower, upper) = match (kind, r.exhausted) {
        (_, true) => (r.value, r.value),
        (SearchKind::Ex, false) => (r.value, r.proven_bound),
        (_, false) => (r.proven_bound, r.value),
    };
    report.result("value", r.value);
    report.result("optimal", r.exhausted);
    report.result("bounds", json!({"lower": lower, "upper": upper}));
    report.result("nodes_explored", r.nodes_explored);
    report.result("certificate", rows_json(&r.certificate));
    report.check(
        "certificate re-verifies",
        certificate_ok(kind, &r.certificate, &p)? && r.certificate.weight() == r.value,
        format!("{} certificate of weight {}", kind.name(), r.certificate.weight()),
    );
    report.budget = Some(BudgetStatus::new(&budget, !r.exhausted));
    Ok(if r.exhausted {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    })
}

fn classification_results(report: &mut Report, c: &Classification) {
    report.result("verdict", c.verdict.to_string());
    report.result("rule", c.rule.tag());
    match &c.certificate {
        Some(Certificate::Witness(w)) => witness_results(report, w),
        Some(Certificate::Property(i)) => report.result("failing_property", *i),
        None => {}
    }
}

fn witness_results(report: &mut Report, w: &WitnessCertificate) {
    report.result(
        "certificate",
        json!({
            "matrix": rows_json(&w.matrix),
            "weight": w.matrix.weight(),
            "empty_rows": [w.empty_rows.start + 1, w.empty_rows.end],
            "empty_cols": [w.empty_cols.start + 1, w.empty_cols.end],
            "zero_pattern_rows": w.s_rows,
            "zero_pattern_cols": w.s_cols,
        }),
    );
}

#[allow(clippy::too_many_arguments)]
fn construct(
    report: &mut Report,
    name: Construction,
    k: Option<usize>,
    l: Option<usize>,
    pattern: Option<&str>,
    rows: Option<usize>,
    cols: Option<usize>,
    pivot: Option<&str>,
) -> Result<i32> {
    let need_k = || k.ok_or_else(|| anyhow!("--k is required for this construction"));
    let named = |family: Named| -> Result<Pattern> { Ok(gen_named(family, need_k()?)?) };
    let built = match name {
        Construction::Identity => named(Named::Identity)?.as_host(),
        Construction::IdentityReflected => named(Named::IdentityReflected)?.as_host(),
        Construction::Jk => named(Named::Jk)?.as_host(),
        Construction::JkReflected => named(Named::JkReflected)?.as_host(),
        Construction::Q => pattern_q().as_host(),
        Construction::QPrime => pattern_q_prime().as_host(),
        Construction::QDoublePrime => pattern_q_double_prime().as_host(),
        Construction::Block => {
            let l = l.ok_or_else(|| anyhow!("--l is required for the block pattern"))?;
            pattern_ik_ik(need_k()?, l)?.as_host()
        }
        Construction::Frame | Construction::Corner => {
            let source = pattern.ok_or_else(|| anyhow!("--pattern is required for this construction"))?;
            let p = pattern_input(report, source)?;
            let (Some(m), Some(n)) = (rows, cols) else {
                bail!("--rows and --cols are required for this construction");
            };
            report.input("rows", m);
            report.input("cols", n);
            if name == Construction::Frame {
                let pivot = pivot.map(parse_pivot).transpose()?;
                if let Some(pv) = pivot {
                    report.input("pivot", position_json(pv));
                }
                let f = gen_frame(&p, m, n, pivot)?;
                report.check("frame saturates the pattern", is_saturating(&f, &p)?, "re-verified");
                f
            } else {
                let c = corner_construction(&p, m, n)?;
                report.check(
                    "corner construction semisaturates the pattern",
                    is_semisaturating(&c, &p)?,
                    "re-verified",
                );
                c
            }
        }
    };
    if let Some(k) = k {
        report.input("k", k);
    }
    if let Some(l) = l {
        report.input("l", l);
    }
    if let Some(v) = name.to_possible_value() {
        report.input("name", v.get_name());
    }
    report.result("matrix", rows_json(&built));
    report.result("rows", built.rows());
    report.result("cols", built.cols());
    report.result("weight", built.weight());
    Ok(EXIT_OK)
}
