//! Scalar functions of the similarity solutions and the coupled solvers.
//!
//! Each boundary condition reduces to a pair of equations in the front
//! coefficient `x` and the interface temperature `T_k`:
//!
//! ```text
//!   T_k = target(x)          target = F (flux), W (convective), G (fixed face)
//!   M(x) = phi(T_k)
//! ```
//!
//! `M` is decreasing and `phi` has a pole at `T_0l`, so the gap
//! `g(x) = M(x) - phi(target(x))` is bracketed on `(0, x_max)` where
//! `target(x_max)` sits just below `T_0l`, and the root is found by bisection.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::FieldPair;
use crate::model::{
    check_admissibility, AdmissibilityReport, BoundaryCondition, ModelError, ProblemSpec,
};
use crate::phase_diagram::DiagramError;
use crate::specfun::{erf_raw, erfc_raw, erfcx_raw, q1_of, SpecFunError, SQRT_PI};

/// Lower end of every root bracket; stands in for `0+`.
const X_FLOOR: f64 = 1e-100;
/// Search interval for the upper bracket.
const BRACKET_SEARCH: (f64, f64) = (1e-12, 1e3);
const SCAN_STEP: f64 = 1e-3;
const SCAN_MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Absolute tolerance on the front coefficient.
    pub tol_lambda: f64,
    /// Bound on `|T_k - target(x)|` and on `|M(x) - phi(T_k)| / max(1, M(x))`.
    pub tol_residual: f64,
    pub max_iterations: usize,
    /// Relative offset of the upper bracket below `T_0l`.
    pub bracket_margin: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol_lambda: 1e-12,
            tol_residual: 1e-10,
            max_iterations: 200,
            bracket_margin: 1e-9,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        if !(pos(self.tol_lambda) && pos(self.tol_residual) && pos(self.bracket_margin))
            || self.max_iterations == 0
        {
            return Err(SolveError::Config(format!(
                "solver tolerances and max_iterations must be positive: {self:?}"
            )));
        }
        if self.tol_lambda >= self.bracket_margin {
            return Err(SolveError::Config(format!(
                "need tol_lambda < bracket_margin, got {} >= {}",
                self.tol_lambda, self.bracket_margin
            )));
        }
        if self.bracket_margin >= 1.0 {
            return Err(SolveError::Config(format!(
                "bracket_margin must be < 1, got {}",
                self.bracket_margin
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(
        "data not admissible: {} = {:?} outside ({}, {})",
        .0.parameter, .0.actual, .0.lower_bound, .0.upper_bound
    )]
    Inadmissible(AdmissibilityReport),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bracket failure: {0}")]
    Bracket(String),
    #[error(
        "bisection did not converge after {iterations} iterations: \
         bracket [{lo}, {hi}], g = [{g_lo}, {g_hi}]"
    )]
    NoConvergence {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
        iterations: usize,
    },
    #[error(
        "no Rubinstein solution detected for this T1 (T1 = {t1}; g = {g_lo} at {x_lo}, {g_hi} at {x_hi})"
    )]
    NoRubinsteinSolution {
        t1: f64,
        x_lo: f64,
        x_hi: f64,
        g_lo: f64,
        g_hi: f64,
    },
    #[error(
        "residual contract violated: |T_k - target| = {temperature}, \
         relative |M - phi| = {segregation}, tolerance {tol}"
    )]
    ResidualContract {
        temperature: f64,
        segregation: f64,
        tol: f64,
    },
    #[error("invalid solver configuration: {0}")]
    Config(String),
}

impl From<DiagramError> for SolveError {
    fn from(e: DiagramError) -> Self {
        SolveError::Model(ModelError::Diagram(e))
    }
}

impl From<SpecFunError> for SolveError {
    fn from(e: SpecFunError) -> Self {
        SolveError::Domain(e.to_string())
    }
}

fn check_x(func: &str, x: f64) -> Result<(), SolveError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(SolveError::Domain(format!(
            "{func}: need finite x > 0, got {x}"
        )))
    }
}

fn wrong_kind(func: &str, spec: &ProblemSpec) -> SolveError {
    SolveError::Domain(format!(
        "{func} is not defined for a {} boundary condition",
        spec.bc().name()
    ))
}

#[inline]
fn q_raw(y: f64) -> f64 {
    SQRT_PI * y * erfcx_raw(y)
}

/// `sqrt(alpha_s / alpha_l)`.
fn thermal_ratio(spec: &ProblemSpec) -> f64 {
    let m = spec.material();
    (m.solid.alpha / m.liquid.alpha).sqrt()
}

fn m_raw(spec: &ProblemSpec, x: f64) -> f64 {
    let m = spec.material();
    1.0 / q_raw((m.solid.alpha / m.liquid.d).sqrt() * x)
}

fn f_raw(spec: &ProblemSpec, q0: f64, x: f64) -> f64 {
    let m = spec.material();
    let l = m.liquid;
    let cx = thermal_ratio(spec) * x;
    spec.t0() + m.gamma * m.rho * l.alpha / l.k * q_raw(cx)
        - q0 / l.k * (l.alpha * std::f64::consts::PI).sqrt() * (-x * x).exp() * erfcx_raw(cx)
}

/// `k_s + h0 sqrt(pi alpha_s) erf(x)`.
fn convective_denominator(spec: &ProblemSpec, h0: f64, x: f64) -> f64 {
    let s = spec.material().solid;
    s.k + h0 * (std::f64::consts::PI * s.alpha).sqrt() * erf_raw(x)
}

fn f2_raw(spec: &ProblemSpec, h0: f64, x: f64) -> f64 {
    let m = spec.material();
    let cx = thermal_ratio(spec) * x;
    h0 * m.solid.k * (std::f64::consts::PI * m.liquid.alpha).sqrt() * (-x * x).exp() * erfcx_raw(cx)
        / (m.liquid.k * convective_denominator(spec, h0, x))
}

fn h_raw(spec: &ProblemSpec, h0: f64, x: f64) -> f64 {
    let m = spec.material();
    let cx = thermal_ratio(spec) * x;
    h0 * m.solid.k * (std::f64::consts::PI * m.liquid.alpha).sqrt() * (-x * x).exp()
        / (x * convective_denominator(spec, h0, x))
        + m.liquid.k / (x * erfcx_raw(cx))
}

fn w_raw(spec: &ProblemSpec, h0: f64, t_inf: f64, x: f64) -> f64 {
    let m = spec.material();
    t_inf
        + (spec.t0() - t_inf) / (f2_raw(spec, h0, x) + 1.0)
        + m.gamma * m.rho * (std::f64::consts::PI * m.solid.alpha * m.liquid.alpha).sqrt()
            / h_raw(spec, h0, x)
}

// G with numerator and denominator divided by Q1(x); r = Q(c x) / Q1(x).
// When r > 1 both are divided by r once more so nothing overflows near 0+.
fn g_raw(spec: &ProblemSpec, t1: f64, x: f64) -> f64 {
    let m = spec.material();
    let (s, l) = (m.solid, m.liquid);
    let c = thermal_ratio(spec);
    let qc = q_raw(c * x);
    let r = c * erfcx_raw(c * x) * (-x * x).exp() / erf_raw(x);
    let latent = m.gamma * m.rho * s.alpha * l.alpha * qc;
    if r > 1.0 {
        (latent / r + t1 * s.k * l.alpha + spec.t0() * l.k * s.alpha / r)
            / (s.k * l.alpha + l.k * s.alpha / r)
    } else {
        (latent + t1 * s.k * l.alpha * r + spec.t0() * l.k * s.alpha)
            / (s.k * l.alpha * r + l.k * s.alpha)
    }
}

fn target_raw(spec: &ProblemSpec, x: f64) -> f64 {
    match *spec.bc() {
        BoundaryCondition::Flux { q0 } => f_raw(spec, q0, x),
        BoundaryCondition::Convective { h0, t_inf } => w_raw(spec, h0, t_inf, x),
        BoundaryCondition::Dirichlet { t1 } => g_raw(spec, t1, x),
    }
}

/// `M(x) = 1 / Q(sqrt(alpha_s / d_l) x)`; decreasing from `+inf` to 1.
pub fn eval_m(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("M", x)?;
    Ok(m_raw(spec, x))
}

/// Interface-temperature function of the flux problem.
pub fn eval_f(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("F", x)?;
    match *spec.bc() {
        BoundaryCondition::Flux { q0 } => Ok(f_raw(spec, q0, x)),
        _ => Err(wrong_kind("F", spec)),
    }
}

pub fn eval_f2(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("F2", x)?;
    match *spec.bc() {
        BoundaryCondition::Convective { h0, .. } => Ok(f2_raw(spec, h0, x)),
        _ => Err(wrong_kind("F2", spec)),
    }
}

pub fn eval_h(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("H", x)?;
    match *spec.bc() {
        BoundaryCondition::Convective { h0, .. } => Ok(h_raw(spec, h0, x)),
        _ => Err(wrong_kind("H", spec)),
    }
}

/// Interface-temperature function of the convective problem.
pub fn eval_w(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("W", x)?;
    match *spec.bc() {
        BoundaryCondition::Convective { h0, t_inf } => Ok(w_raw(spec, h0, t_inf, x)),
        _ => Err(wrong_kind("W", spec)),
    }
}

/// Interface-temperature function of the fixed-face problem, ratio form.
pub fn eval_g(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("G", x)?;
    match *spec.bc() {
        BoundaryCondition::Dirichlet { t1 } => Ok(g_raw(spec, t1, x)),
        _ => Err(wrong_kind("G", spec)),
    }
}

/// `G` written with `Q1` directly. Only usable while `exp(x^2)` is finite.
pub fn eval_g_direct(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("G", x)?;
    let BoundaryCondition::Dirichlet { t1 } = *spec.bc() else {
        return Err(wrong_kind("G", spec));
    };
    let m = spec.material();
    let (s, l) = (m.solid, m.liquid);
    let qc = q_raw(thermal_ratio(spec) * x);
    let q1 = q1_of(x)?;
    Ok((m.gamma * m.rho * s.alpha * l.alpha * qc * q1
        + t1 * s.k * l.alpha * qc
        + spec.t0() * l.k * s.alpha * q1)
        / (s.k * l.alpha * qc + l.k * s.alpha * q1))
}

/// The boundary condition's interface-temperature function (`F`, `W` or `G`).
pub fn eval_target(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("target", x)?;
    Ok(target_raw(spec, x))
}

/// `g(x) = M(x) - phi(target(x))`, whose zero is the front coefficient.
pub fn eval_gap(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    check_x("g", x)?;
    gap_raw(spec, x)
}

fn gap_raw(spec: &ProblemSpec, x: f64) -> Result<f64, SolveError> {
    let phi = spec.diagram().phi(spec.c0(), target_raw(spec, x))?;
    Ok(m_raw(spec, x) - phi)
}

struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    iterations: usize,
}

// Bisection for a decreasing function with f(lo) > 0 > f(hi). Runs until the
// midpoint is no longer representable between the ends or max_iter is hit.
fn bisect_decreasing<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    max_iter: usize,
) -> Result<Bracket, E> {
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(Bracket {
                lo: mid,
                hi: mid,
                f_lo: fm,
                f_hi: fm,
                iterations,
            });
        }
        if fm > 0.0 {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    Ok(Bracket {
        lo,
        hi,
        f_lo,
        f_hi,
        iterations,
    })
}

/// Locates `x_max` with `target(x_max) = T_0l - margin * (T_0l - T_0s)`.
pub fn find_upper_bracket(spec: &ProblemSpec, cfg: &SolverConfig) -> Result<f64, SolveError> {
    let d = spec.diagram();
    let (t_0s, t_0l) = (d.inv_solidus(spec.c0())?, d.inv_liquidus(spec.c0())?);
    let level = t_0l - cfg.bracket_margin * (t_0l - t_0s);
    let (x_lo, x_hi) = BRACKET_SEARCH;
    let gap = |x: f64| Ok::<f64, SolveError>(level - target_raw(spec, x));
    let (g_lo, g_hi) = (gap(x_lo)?, gap(x_hi)?);
    if g_lo.is_nan() || g_lo <= 0.0 {
        return Err(SolveError::Bracket(format!(
            "target({x_lo}) = {} is not below T_0l - margin = {level}",
            level - g_lo
        )));
    }
    if g_hi.is_nan() || g_hi >= 0.0 {
        return Err(SolveError::Bracket(format!(
            "target({x_hi}) = {} never reaches T_0l - margin = {level}",
            level - g_hi
        )));
    }
    let b = bisect_decreasing(gap, x_lo, x_hi, g_lo, g_hi, cfg.max_iterations)?;
    if b.hi - b.lo > cfg.tol_lambda {
        return Err(SolveError::NoConvergence {
            lo: b.lo,
            hi: b.hi,
            g_lo: b.f_lo,
            g_hi: b.f_hi,
            iterations: b.iterations,
        });
    }
    Ok(b.lo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Flux,
    Convective,
    Dirichlet,
}

impl SolutionKind {
    fn of(bc: &BoundaryCondition) -> Self {
        match bc {
            BoundaryCondition::Flux { .. } => Self::Flux,
            BoundaryCondition::Convective { .. } => Self::Convective,
            BoundaryCondition::Dirichlet { .. } => Self::Dirichlet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// `|T_k - target(x)|`.
    pub temperature: f64,
    /// `|M(x) - phi(T_k)|`.
    pub segregation: f64,
    /// `|M(x) - phi(T_k)| / max(1, M(x))`, the quantity held to `tol_residual`.
    pub segregation_relative: f64,
}

/// A solved similarity solution; every field is `a + b erf(x / (2 sqrt(theta t)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilaritySolution {
    pub kind: SolutionKind,
    /// `lambda`, `delta` or `mu`; the front is `s(t) = 2 coef sqrt(alpha_s t)`.
    pub front_coefficient: f64,
    pub t_k: f64,
    pub t_fixed_face: f64,
    pub temp_solid: FieldPair,
    pub temp_liquid: FieldPair,
    pub conc_solid: FieldPair,
    pub conc_liquid: FieldPair,
    /// `f_s(T_k)`.
    pub interface_solid_concentration: f64,
    /// `f_l(T_k)`.
    pub interface_liquid_concentration: f64,
    pub residuals: Residuals,
    pub warnings: Vec<String>,
    pub spec: ProblemSpec,
}

impl SimilaritySolution {
    /// Builds all field coefficients from a front coefficient and interface
    /// temperature, without solving anything.
    pub fn assemble(
        spec: &ProblemSpec,
        front_coefficient: f64,
        t_k: f64,
    ) -> Result<Self, SolveError> {
        check_x("front coefficient", front_coefficient)?;
        let m = spec.material();
        let (s, l) = (m.solid, m.liquid);
        let d = spec.diagram();
        let x = front_coefficient;
        let pi_alpha_s = (std::f64::consts::PI * s.alpha).sqrt();

        let temp_solid = match *spec.bc() {
            BoundaryCondition::Flux { q0 } => {
                let b = q0 * pi_alpha_s / s.k;
                FieldPair::new(t_k - b * erf_raw(x), b, s.alpha)
            }
            BoundaryCondition::Convective { h0, t_inf } => {
                let den = convective_denominator(spec, h0, x);
                FieldPair::new(
                    t_inf + s.k * (t_k - t_inf) / den,
                    h0 * pi_alpha_s * (t_k - t_inf) / den,
                    s.alpha,
                )
            }
            BoundaryCondition::Dirichlet { t1 } => {
                FieldPair::new(t1, (t_k - t1) / erf_raw(x), s.alpha)
            }
        };

        let b_tl = (spec.t0() - t_k) / erfc_raw(thermal_ratio(spec) * x);
        let temp_liquid = FieldPair::new(spec.t0() - b_tl, b_tl, l.alpha);

        let fs = d.solidus(t_k)?;
        let fl = d.liquidus(t_k)?;
        let conc_solid = FieldPair::new(fs, 0.0, s.d);
        let b_cl = (spec.c0() - fl) / erfc_raw((s.alpha / l.d).sqrt() * x);
        let conc_liquid = FieldPair::new(spec.c0() - b_cl, b_cl, l.d);

        let residuals = residuals_at(spec, x, t_k)?;
        Ok(Self {
            kind: SolutionKind::of(spec.bc()),
            front_coefficient: x,
            t_k,
            t_fixed_face: temp_solid.a,
            temp_solid,
            temp_liquid,
            conc_solid,
            conc_liquid,
            interface_solid_concentration: fs,
            interface_liquid_concentration: fl,
            residuals,
            warnings: Vec::new(),
            spec: spec.clone(),
        })
    }

    /// The four pairs in the order solid T, liquid T, solid C, liquid C.
    pub fn pairs(&self) -> [FieldPair; 4] {
        [
            self.temp_solid,
            self.temp_liquid,
            self.conc_solid,
            self.conc_liquid,
        ]
    }

    pub fn pairs_mut(&mut self) -> [&mut FieldPair; 4] {
        [
            &mut self.temp_solid,
            &mut self.temp_liquid,
            &mut self.conc_solid,
            &mut self.conc_liquid,
        ]
    }
}

fn residuals_at(spec: &ProblemSpec, x: f64, t_k: f64) -> Result<Residuals, SolveError> {
    let m = m_raw(spec, x);
    let phi = spec.diagram().phi(spec.c0(), t_k)?;
    let seg = (m - phi).abs();
    Ok(Residuals {
        temperature: (t_k - target_raw(spec, x)).abs(),
        segregation: seg,
        segregation_relative: seg / m.max(1.0),
    })
}

pub fn solve_flux(
    spec: &ProblemSpec,
    cfg: &SolverConfig,
) -> Result<SimilaritySolution, SolveError> {
    if !matches!(spec.bc(), BoundaryCondition::Flux { .. }) {
        return Err(wrong_kind("solve_flux", spec));
    }
    solve(spec, cfg)
}

pub fn solve_convective(
    spec: &ProblemSpec,
    cfg: &SolverConfig,
) -> Result<SimilaritySolution, SolveError> {
    if !matches!(spec.bc(), BoundaryCondition::Convective { .. }) {
        return Err(wrong_kind("solve_convective", spec));
    }
    solve(spec, cfg)
}

pub fn solve_dirichlet(
    spec: &ProblemSpec,
    cfg: &SolverConfig,
) -> Result<SimilaritySolution, SolveError> {
    if !matches!(spec.bc(), BoundaryCondition::Dirichlet { .. }) {
        return Err(wrong_kind("solve_dirichlet", spec));
    }
    solve(spec, cfg)
}

/// Runs the solver matching the boundary condition.
pub fn solve(spec: &ProblemSpec, cfg: &SolverConfig) -> Result<SimilaritySolution, SolveError> {
    cfg.validate()?;
    let report = check_admissibility(spec)?;
    if !report.admissible {
        return Err(SolveError::Inadmissible(report));
    }
    let x_max = find_upper_bracket(spec, cfg)?;
    let g_lo = gap_raw(spec, X_FLOOR)?;
    let g_hi = gap_raw(spec, x_max)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        if let BoundaryCondition::Dirichlet { t1 } = *spec.bc() {
            return Err(SolveError::NoRubinsteinSolution {
                t1,
                x_lo: X_FLOOR,
                x_hi: x_max,
                g_lo,
                g_hi,
            });
        }
        return Err(SolveError::Bracket(format!(
            "g has no sign change on [{X_FLOOR}, {x_max}]: g = [{g_lo}, {g_hi}]"
        )));
    }
    let b = bisect_decreasing(
        |x| gap_raw(spec, x),
        X_FLOOR,
        x_max,
        g_lo,
        g_hi,
        cfg.max_iterations,
    )?;
    if b.hi - b.lo > cfg.tol_lambda {
        return Err(SolveError::NoConvergence {
            lo: b.lo,
            hi: b.hi,
            g_lo: b.f_lo,
            g_hi: b.f_hi,
            iterations: b.iterations,
        });
    }
    let root = if b.f_lo.abs() <= b.f_hi.abs() {
        b.lo
    } else {
        b.hi
    };
    log::debug!(
        "{} root {root} after {} bisection steps, bracket upper end {x_max}",
        spec.bc().name(),
        b.iterations
    );
    let t_k = target_raw(spec, root);
    let mut sol = SimilaritySolution::assemble(spec, root, t_k)?;
    let r = sol.residuals;
    if r.temperature > cfg.tol_residual || r.segregation_relative > cfg.tol_residual {
        return Err(SolveError::ResidualContract {
            temperature: r.temperature,
            segregation: r.segregation_relative,
            tol: cfg.tol_residual,
        });
    }
    if sol.kind == SolutionKind::Dirichlet {
        let changes = count_sign_changes(spec, x_max);
        if changes > 1 {
            let msg = format!(
                "multiplicity: g changes sign {changes} times on (0, {x_max}); returned the root at {root}"
            );
            log::warn!("{msg}");
            sol.warnings.push(msg);
        }
    }
    Ok(sol)
}

fn count_sign_changes(spec: &ProblemSpec, x_max: f64) -> usize {
    let n = ((x_max / SCAN_STEP).ceil() as usize).clamp(2, SCAN_MAX_POINTS);
    let mut prev: Option<bool> = gap_raw(spec, X_FLOOR)
        .ok()
        .filter(|g| !g.is_nan())
        .map(|g| g > 0.0);
    let mut changes = 0;
    for i in 1..=n {
        let x = x_max * i as f64 / n as f64;
        let Some(g) = gap_raw(spec, x).ok().filter(|g| !g.is_nan()) else {
            continue;
        };
        let sign = g > 0.0;
        if prev.is_some_and(|p| p != sign) {
            changes += 1;
        }
        prev = Some(sign);
    }
    changes
}

/// For data outside the gate, looks for a sign change of `g` below the upper
/// bracket anyway. Returns the first bracketed location found, if any. Used for
/// reporting only; such roots are never solved.
pub fn probe_out_of_gate(spec: &ProblemSpec, cfg: &SolverConfig) -> Option<f64> {
    let x_max = find_upper_bracket(spec, cfg).ok()?;
    let n = 10_000;
    let mut prev = gap_raw(spec, X_FLOOR).ok()?;
    for i in 1..=n {
        let x = x_max * i as f64 / n as f64;
        let g = gap_raw(spec, x).ok()?;
        if prev > 0.0 && g <= 0.0 {
            return Some(x);
        }
        prev = g;
    }
    None
}
