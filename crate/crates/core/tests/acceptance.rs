//! One PASS/FAIL line per acceptance criterion. Exits non-zero when any fails.

mod common;

use std::time::Instant;

use alloystef::fields::{fixed_face_temperature, temperature_at};
use alloystef::model::{check_admissibility, BoundaryCondition, ProblemSpec};
use alloystef::phase_diagram::PhaseDiagram;
use alloystef::solver::{solve, SimilaritySolution, SolverConfig};
use alloystef::specfun::{erf, erfc, erfcx, q_of, SQRT_PI};
use alloystef::verify::{
    c0_interval_check, equivalence_check, erf_mu_bounds_check, monotonicity_suite, origin_of,
    residual_report, Equivalence, GridSpec, FLAG_PHYSICAL,
};
use common::{ref1, ref1_convective, ref1_dirichlet, ref1_flux};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ref1_solutions(cfg: &SolverConfig) -> Vec<SimilaritySolution> {
    [ref1_flux(), ref1_convective(), ref1_dirichlet()]
        .iter()
        .map(|s| solve(s, cfg).expect("REF1 solves"))
        .collect()
}

fn special_functions() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let x = 6.0 * i as f64 / 999.0;
        let e = (erf(x).unwrap() - common::erf_oracle(x)).abs();
        let c = (erfc(x).unwrap() - common::erfc_oracle(x)).abs();
        worst = worst.max(e).max(c);
    }
    let mut asym = Vec::new();
    for x in [50.0f64, 100.0, 500.0] {
        let two_term = (1.0 - 0.5 / (x * x)) / (SQRT_PI * x);
        asym.push((x, (erfcx(x).unwrap() / two_term - 1.0).abs()));
    }
    let q_ok = (0..=7000).all(|i| {
        let q = q_of(0.1 * i as f64).unwrap();
        q.is_finite() && q < 1.0
    });
    let asym_ok = asym.iter().all(|&(_, r)| r <= 1e-8);
    let bad: Vec<String> = asym
        .iter()
        .filter(|(_, r)| *r > 1e-8)
        .map(|(x, r)| format!("x = {x}: {r:.2e}"))
        .collect();
    outcome(
        worst <= 1e-13 && asym_ok && q_ok,
        format!(
            "erf/erfc max error {worst:.1e}; two-term erfcx over 1e-8 at [{}]; Q < 1 to 700: {q_ok}",
            bad.join(", ")
        ),
    )
}

fn propositions() -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for spec in [ref1_flux(), ref1_convective(), ref1_dirichlet()] {
        let r = monotonicity_suite(&spec).unwrap();
        n += r.checks.len();
        failures.extend(r.failures().map(|c| c.name.clone()));
    }
    outcome(
        failures.is_empty(),
        format!("{n} checks, failing: {failures:?}"),
    )
}

fn gates() -> Outcome {
    let flux = check_admissibility(&ref1_flux()).unwrap();
    let conv = check_admissibility(&ref1_convective()).unwrap();
    let f_err = (flux.lower_bound - 0.3 / SQRT_PI)
        .abs()
        .max((flux.upper_bound - 0.55 / SQRT_PI).abs());
    let c_err = (conv.lower_bound - 0.3 / (0.5 * SQRT_PI))
        .abs()
        .max((conv.upper_bound - 0.55 / (0.25 * SQRT_PI)).abs());
    let mut rejected = true;
    for q0 in [flux.lower_bound, flux.upper_bound] {
        rejected &= !check_admissibility(&ref1(BoundaryCondition::Flux { q0 }))
            .unwrap()
            .admissible;
    }
    for h0 in [conv.lower_bound, conv.upper_bound] {
        rejected &= !check_admissibility(&ref1(BoundaryCondition::Convective { h0, t_inf: 0.0 }))
            .unwrap()
            .admissible;
    }
    outcome(
        f_err <= 1e-12 && c_err <= 1e-9 && rejected && flux.admissible && conv.admissible,
        format!(
            "flux ({:.12}, {:.12}) err {f_err:.1e}; convective ({:.9}, {:.9}) err {c_err:.1e}; \
             boundary inputs rejected: {rejected}",
            flux.lower_bound, flux.upper_bound, conv.lower_bound, conv.upper_bound
        ),
    )
}

/// Independent REF1 flux gap from oracle functions and the written-out diagram.
fn oracle_gap(x: f64) -> f64 {
    let q = |y: f64| SQRT_PI * y * (y * y).exp() * common::erfc_oracle(y);
    let f = 0.8 + q(x) - 0.25 * SQRT_PI * common::erfc_oracle(x);
    1.0 / q(x) - (f - f * f) / (0.25 - f * f)
}

fn solver(sols: &[SimilaritySolution]) -> Outcome {
    let worst = sols
        .iter()
        .map(|s| s.residuals.temperature.max(s.residuals.segregation))
        .fold(0.0, f64::max);
    let lambda = sols[0].front_coefficient;
    let signs = oracle_gap(0.05) > 0.0 && oracle_gap(0.06) < 0.0;
    outcome(
        worst <= 1e-10 && signs && lambda > 0.05 && lambda < 0.06,
        format!("max residual {worst:.1e}; lambda = {lambda:.12}; oracle g(0.05) > 0 > g(0.06): {signs}"),
    )
}

fn full_system(sols: &[SimilaritySolution]) -> Outcome {
    let grid = GridSpec::default();
    let mut failing = Vec::new();
    let mut missed = Vec::new();
    let mut injected = 0;
    for sol in sols {
        let r = residual_report(sol, &grid).unwrap();
        failing.extend(r.failures().map(|c| format!("{:?}: {}", sol.kind, c.name)));
        for (what, v) in common::single_faults(sol, 1e-3) {
            injected += 1;
            if residual_report(&v, &grid).unwrap().pass {
                missed.push(format!("{:?}: {what}", sol.kind));
            }
        }
    }
    outcome(
        failing.is_empty() && missed.is_empty(),
        format!("failing checks {failing:?}; {injected} faults injected, missed {missed:?}"),
    )
}

/// REF1 material and state with random power-law exponents and boundary data
/// drawn inside the gate; even draws are flux, odd ones convective.
fn randomized_specs() -> Vec<ProblemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..20)
        .map(|i| {
            let exponent_l = rng.gen_range(1.5..3.0);
            let exponent_s = rng.gen_range(1.0..exponent_l - 0.1);
            let d = PhaseDiagram::power_law(0.0, 1.0, exponent_l, exponent_s).unwrap();
            let base = ref1_flux();
            let spec = ProblemSpec::new(*base.material(), d, 0.8, 0.25, *base.bc()).unwrap();
            let bc = if i % 2 == 0 {
                BoundaryCondition::Flux { q0: 1.0 }
            } else {
                BoundaryCondition::Convective {
                    h0: 1.0,
                    t_inf: 0.0,
                }
            };
            let probe = spec.with_boundary(bc).unwrap();
            let gate = check_admissibility(&probe).unwrap();
            let v = rng.gen_range(gate.lower_bound..gate.upper_bound);
            let bc = match bc {
                BoundaryCondition::Flux { .. } => BoundaryCondition::Flux { q0: v },
                _ => BoundaryCondition::Convective { h0: v, t_inf: 0.0 },
            };
            spec.with_boundary(bc).unwrap()
        })
        .collect()
}

fn equivalence(runs: &[Result<Equivalence, String>]) -> Outcome {
    let mut worst = [0.0f64; 3];
    let mut bad = Vec::new();
    for (i, run) in runs.iter().enumerate() {
        match run {
            Ok(eq) => {
                let d = eq.delta;
                worst[0] = worst[0].max(d.delta_front);
                worst[1] = worst[1].max(d.delta_tk);
                worst[2] = worst[2].max(d.sup_field_delta);
                if !d.within_contract() {
                    bad.push(format!("#{i} {d:?}"));
                }
            }
            Err(e) => bad.push(format!("#{i} {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} runs; max |coef delta| {:.1e}, |T_k delta| {:.1e}, field {:.1e}; out of contract {bad:?}",
            runs.len(),
            worst[0],
            worst[1],
            worst[2]
        ),
    )
}

fn inequalities(runs: &[Result<Equivalence, String>]) -> Outcome {
    let mut failing = Vec::new();
    let mut flags = 0;
    let mut physical = 0;
    let mut checked = 0;
    for (i, eq) in runs.iter().enumerate() {
        let Ok(eq) = eq else {
            failing.push(format!("#{i}: no solution"));
            continue;
        };
        let r = erf_mu_bounds_check(&eq.fixed_face, origin_of(&eq.original).unwrap()).unwrap();
        checked += 1;
        let above_solidus = if r.notes.iter().any(|n| n.contains("T_0s")) {
            " (T1 above T_0s)"
        } else {
            ""
        };
        for c in r.failures() {
            failing.push(format!(
                "#{i} {:?}: {}{above_solidus}",
                eq.original.kind, c.name
            ));
        }
        if let Some(f) = r.flags.iter().find(|f| f.name == FLAG_PHYSICAL) {
            flags += 1;
            physical += f.value as usize;
        }
    }
    outcome(
        failing.is_empty() && flags == checked,
        format!(
            "{checked} solutions; physical-meaning flag reported {flags} times ({physical} true); \
             failing {failing:?}"
        ),
    )
}

fn monotone_response(cfg: &SolverConfig) -> Outcome {
    let gate = check_admissibility(&ref1_flux()).unwrap();
    let mut rows = Vec::new();
    for i in 0..31 {
        let q0 = gate.lower_bound + (gate.upper_bound - gate.lower_bound) * (i + 1) as f64 / 32.0;
        match solve(&ref1(BoundaryCondition::Flux { q0 }), cfg) {
            Ok(s) => rows.push((s.front_coefficient, s.t_fixed_face)),
            Err(e) => return outcome(false, format!("q0 = {q0}: {e}")),
        }
    }
    let front_up = rows.windows(2).all(|w| w[1].0 > w[0].0);
    let face_down = rows.windows(2).all(|w| w[1].1 < w[0].1);
    outcome(
        front_up && face_down,
        format!(
            "derived property; coefficient increasing: {front_up}, \
             face temperature decreasing: {face_down}"
        ),
    )
}

fn collapse(sols: &[SimilaritySolution]) -> Outcome {
    let mut worst = 0.0f64;
    let mut face = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for sol in sols {
        for _ in 0..200 {
            let x = rng.gen_range(0.0..2.0);
            let t = rng.gen_range(0.01..25.0);
            let a = temperature_at(sol, x, t).unwrap();
            let b = temperature_at(sol, 2.0 * x, 4.0 * t).unwrap();
            worst = worst.max((a - b).abs());
        }
        let f1 = temperature_at(sol, 0.0, 1.0).unwrap();
        let f100 = temperature_at(sol, 0.0, 100.0).unwrap();
        face = face
            .max((f1 - f100).abs())
            .max((f1 - fixed_face_temperature(sol)).abs());
    }
    outcome(
        worst <= 1e-14 && face <= 1e-14,
        format!("max collapse difference {worst:.1e}; fixed face t = 1 vs 100: {face:.1e}"),
    )
}

fn c0_interval(sols: &[&SimilaritySolution]) -> Outcome {
    let failing: Vec<usize> = sols
        .iter()
        .enumerate()
        .filter(|(_, s)| !c0_interval_check(s).pass)
        .map(|(i, _)| i)
        .collect();
    outcome(
        failing.is_empty(),
        format!("{} solved instances, failing {failing:?}", sols.len()),
    )
}

fn main() {
    let cfg = SolverConfig::default();
    let sols = ref1_solutions(&cfg);

    let mut specs = vec![ref1_flux(), ref1_convective()];
    specs.extend(randomized_specs());
    let runs: Vec<Result<Equivalence, String>> = specs
        .iter()
        .map(|s| equivalence_check(s, &cfg).map_err(|e| e.to_string()))
        .collect();

    let mut solved: Vec<&SimilaritySolution> = sols.iter().collect();
    for eq in runs.iter().flatten() {
        solved.push(&eq.original);
        solved.push(&eq.fixed_face);
    }

    let criteria: Vec<Criterion> = vec![
        ("special-function accuracy", Box::new(special_functions)),
        ("monotonicity and limits", Box::new(propositions)),
        ("admissibility gates", Box::new(gates)),
        ("solver correctness", Box::new(|| solver(&sols))),
        ("full system verification", Box::new(|| full_system(&sols))),
        (
            "equivalence with the fixed-face problem",
            Box::new(|| equivalence(&runs)),
        ),
        ("erf(mu) inequalities", Box::new(|| inequalities(&runs))),
        (
            "monotone response to q0",
            Box::new(|| monotone_response(&cfg)),
        ),
        ("similarity collapse", Box::new(|| collapse(&sols))),
        ("C0 liquidus interval", Box::new(|| c0_interval(&solved))),
    ];

    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name} ({ms:.0} ms): {}", i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", criteria.len());
    } else {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
