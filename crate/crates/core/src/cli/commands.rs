use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::RunConfig;
use super::output::{json_bytes, profile_csv, sweep_csv, SweepRow};
use super::{CliError, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_INADMISSIBLE, EXIT_OK, EXIT_SOLVER};
use crate::fields::sample_profile;
use crate::model::{check_admissibility, BoundaryCondition, ModelError, ProblemSpec};
use crate::solver::{probe_out_of_gate, solve, SimilaritySolution, SolveError, SolverConfig};
use crate::verify::{
    equivalence_check, erf_mu_bounds_check, full_report, origin_of, GridSpec, VerifyError,
    CONTRACT_FIELD, CONTRACT_FRONT, CONTRACT_TK,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Q0,
    H0,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Q0 => "q0",
            SweepParam::H0 => "h0",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Check,
    Solve,
    Profile {
        times: Vec<f64>,
        x_max: f64,
        n_x: usize,
    },
    Verify,
    Equivalence,
    Sweep {
        param: SweepParam,
        from: f64,
        to: f64,
        steps: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Solve => "solve",
            Command::Profile { .. } => "profile",
            Command::Verify => "verify",
            Command::Equivalence => "equivalence",
            Command::Sweep { .. } => "sweep",
        }
    }
}

/// Bytes to emit and the exit code to finish with.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub output: Vec<u8>,
}

fn solve_error(e: SolveError) -> CliError {
    let code = match &e {
        SolveError::Inadmissible(_) | SolveError::Model(ModelError::Precondition(_)) => {
            EXIT_INADMISSIBLE
        }
        SolveError::Model(_) | SolveError::Config(_) => EXIT_CONFIG,
        _ => EXIT_SOLVER,
    };
    CliError::new(code, e.to_string())
}

fn verify_error(e: VerifyError) -> CliError {
    match e {
        VerifyError::Solve(e) => solve_error(e),
        VerifyError::Domain(_) | VerifyError::Model(_) => CliError::new(EXIT_CONFIG, e.to_string()),
        VerifyError::Equivalence(_) => CliError::new(EXIT_SOLVER, e.to_string()),
    }
}

fn envelope(cfg: &RunConfig, command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("config".into(), json!(cfg.raw));
    m.insert("solver".into(), json!(cfg.solver));
    m
}

fn summary(sol: &SimilaritySolution) -> Value {
    json!({
        "kind": sol.kind,
        "front_coefficient": sol.front_coefficient,
        "T_k": sol.t_k,
        "T_fixed_face": sol.t_fixed_face,
        "residuals": sol.residuals,
        "warnings": sol.warnings,
    })
}

fn solved(cfg: &RunConfig) -> Result<SimilaritySolution, CliError> {
    let sol = solve(&cfg.spec, &cfg.solver).map_err(solve_error)?;
    for w in &sol.warnings {
        log::warn!("{w}");
    }
    Ok(sol)
}

pub fn run_command(cfg: &RunConfig, cmd: &Command) -> Result<Outcome, CliError> {
    let mut out = envelope(cfg, cmd.name());
    match cmd {
        Command::Check => {
            let report =
                check_admissibility(&cfg.spec).map_err(|e| solve_error(SolveError::Model(e)))?;
            out.insert("admissibility".into(), json!(report));
            if !report.admissible {
                let probe = probe_out_of_gate(&cfg.spec, &cfg.solver);
                if let Some(x) = probe {
                    log::info!("outside the gate, yet g changes sign near {x}; not solved");
                }
                out.insert("out_of_gate_sign_change".into(), json!(probe));
            }
            let code = if report.admissible {
                EXIT_OK
            } else {
                EXIT_INADMISSIBLE
            };
            Ok(Outcome {
                code,
                output: json_bytes(&Value::Object(out)),
            })
        }
        Command::Solve => {
            let sol = solved(cfg)?;
            let report = check_admissibility(&cfg.spec).map_err(|e| solve_error(e.into()))?;
            if let Value::Object(s) = summary(&sol) {
                out.extend(s);
            }
            out.insert("admissibility".into(), json!(report));
            Ok(Outcome {
                code: EXIT_OK,
                output: json_bytes(&Value::Object(out)),
            })
        }
        Command::Profile { times, x_max, n_x } => {
            let sol = solved(cfg)?;
            let samples = sample_profile(&sol, times, *x_max, *n_x)
                .map_err(|e| CliError::new(EXIT_CONFIG, e.to_string()))?;
            Ok(Outcome {
                code: EXIT_OK,
                output: profile_csv(&samples)?,
            })
        }
        Command::Verify => {
            let sol = solved(cfg)?;
            let report = full_report(&sol, &GridSpec::default()).map_err(verify_error)?;
            for c in report.failures() {
                log::warn!("check failed: {} ({})", c.name, c.detail);
            }
            out.insert("solution".into(), summary(&sol));
            out.insert("report".into(), json!(report));
            out.insert("pass".into(), json!(report.pass));
            Ok(Outcome {
                code: if report.pass {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                },
                output: json_bytes(&Value::Object(out)),
            })
        }
        Command::Equivalence => {
            let eq = equivalence_check(&cfg.spec, &cfg.solver).map_err(verify_error)?;
            let origin = origin_of(&eq.original).ok_or_else(|| {
                CliError::new(EXIT_CONFIG, "equivalence needs flux or convective data")
            })?;
            let bounds = erf_mu_bounds_check(&eq.fixed_face, origin).map_err(verify_error)?;
            let within = eq.delta.within_contract();
            out.insert("T1".into(), json!(eq.t1));
            out.insert("original".into(), summary(&eq.original));
            out.insert("fixed_face".into(), summary(&eq.fixed_face));
            out.insert("deltas".into(), json!(eq.delta));
            out.insert(
                "contract".into(),
                json!({
                    "delta_front": CONTRACT_FRONT,
                    "delta_Tk": CONTRACT_TK,
                    "sup_field_delta": CONTRACT_FIELD,
                }),
            );
            out.insert("within_contract".into(), json!(within));
            out.insert("inequalities".into(), json!(bounds));
            let pass = within && bounds.pass;
            out.insert("pass".into(), json!(pass));
            if !within {
                log::warn!("equivalence deltas outside contract: {:?}", eq.delta);
            }
            for c in bounds.failures() {
                log::warn!("inequality failed: {} ({})", c.name, c.detail);
            }
            Ok(Outcome {
                code: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
                output: json_bytes(&Value::Object(out)),
            })
        }
        Command::Sweep {
            param,
            from,
            to,
            steps,
        } => {
            let rows = sweep(&cfg.spec, &cfg.solver, *param, *from, *to, *steps)?;
            Ok(Outcome {
                code: EXIT_OK,
                output: sweep_csv(&rows)?,
            })
        }
    }
}

/// One row per value of a linear range `from..=to` with `steps` points.
pub fn sweep(
    spec: &ProblemSpec,
    solver: &SolverConfig,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<SweepRow>, CliError> {
    if steps < 2 || !from.is_finite() || !to.is_finite() {
        return Err(CliError::new(
            EXIT_CONFIG,
            format!("sweep needs finite bounds and at least 2 steps, got {from}..{to} in {steps}"),
        ));
    }
    let with_value = |v: f64| match (param, *spec.bc()) {
        (SweepParam::Q0, BoundaryCondition::Flux { .. }) => Some(BoundaryCondition::Flux { q0: v }),
        (SweepParam::H0, BoundaryCondition::Convective { t_inf, .. }) => {
            Some(BoundaryCondition::Convective { h0: v, t_inf })
        }
        _ => None,
    };
    if with_value(from).is_none() {
        return Err(CliError::new(
            EXIT_CONFIG,
            format!(
                "cannot sweep {} with a {} boundary condition",
                param.name(),
                spec.bc().name()
            ),
        ));
    }
    let values: Vec<f64> = (0..steps)
        .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
        .collect();
    let rows = values
        .par_iter()
        .map(|&v| {
            let mut row = SweepRow {
                param: param.name(),
                value: v,
                admissible: false,
                front_coefficient: None,
                t_k: None,
                t_fixed_face: None,
            };
            let Some(Ok(s)) = with_value(v).map(|bc| spec.with_boundary(bc)) else {
                return row;
            };
            row.admissible = check_admissibility(&s).is_ok_and(|r| r.admissible);
            if row.admissible {
                match solve(&s, solver) {
                    Ok(sol) => {
                        row.front_coefficient = Some(sol.front_coefficient);
                        row.t_k = Some(sol.t_k);
                        row.t_fixed_face = Some(sol.t_fixed_face);
                    }
                    Err(e) => log::warn!("{} = {v}: {e}", param.name()),
                }
            }
            row
        })
        .collect();
    Ok(rows)
}
