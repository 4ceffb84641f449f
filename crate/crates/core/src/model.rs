//! Problem data and the admissibility gates for instantaneous solidification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phase_diagram::{DiagramError, PhaseDiagram};
use crate::specfun::SQRT_PI;

pub const INV_PHASE_POSITIVE: &str = "k, alpha, d strictly positive and finite";
pub const INV_MATERIAL_POSITIVE: &str = "rho > 0 and gamma > 0";
pub const INV_T0_RANGE: &str = "T_A < T0 < T_B";
pub const INV_C0_RANGE: &str = "C0 strictly inside the concentration range of the diagram";
pub const INV_INITIALLY_LIQUID: &str = "C0 < f_l(T0) (alloy initially liquid)";
pub const INV_Q0_POSITIVE: &str = "q0 > 0";
pub const INV_H0_POSITIVE: &str = "h0 > 0";
pub const INV_FINITE_TEMPERATURE: &str = "boundary temperature finite";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invariant violated: {invariant} ({detail})")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("boundary condition is {actual}, operation needs {expected}")]
    WrongBoundary {
        expected: &'static str,
        actual: &'static str,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn invariant(invariant: &'static str, detail: String) -> ModelError {
    ModelError::Invariant { invariant, detail }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseProperties {
    /// Thermal conductivity.
    pub k: f64,
    /// Thermal diffusivity.
    pub alpha: f64,
    /// Mass diffusivity.
    pub d: f64,
}

impl PhaseProperties {
    pub fn new(k: f64, alpha: f64, d: f64) -> Self {
        Self { k, alpha, d }
    }

    fn validate(&self, phase: &str) -> Result<(), ModelError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(self.k) && ok(self.alpha) && ok(self.d) {
            Ok(())
        } else {
            Err(invariant(
                INV_PHASE_POSITIVE,
                format!(
                    "{phase}: k = {}, alpha = {}, d = {}",
                    self.k, self.alpha, self.d
                ),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Material {
    pub solid: PhaseProperties,
    pub liquid: PhaseProperties,
    /// Mass density, shared by both phases.
    pub rho: f64,
    /// Latent heat per unit mass.
    pub gamma: f64,
}

impl Material {
    pub fn validate(&self) -> Result<(), ModelError> {
        self.solid.validate("solid")?;
        self.liquid.validate("liquid")?;
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.rho) && ok(self.gamma)) {
            return Err(invariant(
                INV_MATERIAL_POSITIVE,
                format!("rho = {}, gamma = {}", self.rho, self.gamma),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundaryCondition {
    /// `k_s T_x(0, t) = q0 / sqrt(t)`.
    Flux { q0: f64 },
    /// `k_s T_x(0, t) = h0 / sqrt(t) * (T(0, t) - t_inf)`.
    Convective { h0: f64, t_inf: f64 },
    /// `T(0, t) = t1`.
    Dirichlet { t1: f64 },
}

impl BoundaryCondition {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Flux { .. } => "flux",
            Self::Convective { .. } => "convective",
            Self::Dirichlet { .. } => "dirichlet",
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        match *self {
            Self::Flux { q0 } if !(q0.is_finite() && q0 > 0.0) => {
                Err(invariant(INV_Q0_POSITIVE, format!("q0 = {q0}")))
            }
            Self::Convective { h0, .. } if !(h0.is_finite() && h0 > 0.0) => {
                Err(invariant(INV_H0_POSITIVE, format!("h0 = {h0}")))
            }
            Self::Convective { t_inf, .. } if !t_inf.is_finite() => Err(invariant(
                INV_FINITE_TEMPERATURE,
                format!("t_inf = {t_inf}"),
            )),
            Self::Dirichlet { t1 } if !t1.is_finite() => {
                Err(invariant(INV_FINITE_TEMPERATURE, format!("t1 = {t1}")))
            }
            _ => Ok(()),
        }
    }
}

/// A validated problem: material, phase diagram, initial liquid state and one
/// boundary condition at the fixed face `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    material: Material,
    diagram: PhaseDiagram,
    t0: f64,
    c0: f64,
    bc: BoundaryCondition,
}

impl ProblemSpec {
    pub fn new(
        material: Material,
        diagram: PhaseDiagram,
        t0: f64,
        c0: f64,
        bc: BoundaryCondition,
    ) -> Result<Self, ModelError> {
        material.validate()?;
        bc.validate()?;
        let (t_a, t_b) = (diagram.t_a(), diagram.t_b());
        if !(t0 > t_a && t0 < t_b) {
            return Err(invariant(
                INV_T0_RANGE,
                format!("T0 = {t0}, T_A = {t_a}, T_B = {t_b}"),
            ));
        }
        let (lo, hi) = diagram.concentration_range();
        if !(c0 > lo && c0 < hi) {
            return Err(invariant(
                INV_C0_RANGE,
                format!("C0 = {c0}, range = [{lo}, {hi}]"),
            ));
        }
        let fl0 = diagram.liquidus(t0)?;
        if c0 >= fl0 {
            return Err(invariant(
                INV_INITIALLY_LIQUID,
                format!("C0 = {c0}, f_l(T0) = {fl0}"),
            ));
        }
        Ok(Self {
            material,
            diagram,
            t0,
            c0,
            bc,
        })
    }

    /// Same problem with another boundary condition.
    pub fn with_boundary(&self, bc: BoundaryCondition) -> Result<Self, ModelError> {
        bc.validate()?;
        Ok(Self { bc, ..self.clone() })
    }

    pub fn material(&self) -> &Material {
        &self.material
    }

    pub fn diagram(&self) -> &PhaseDiagram {
        &self.diagram
    }

    /// Initial (and far-field) liquid temperature.
    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Initial (and far-field) concentration.
    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn bc(&self) -> &BoundaryCondition {
        &self.bc
    }
}

/// `(T_0s, T_0l) = (f_s^{-1}(C0), f_l^{-1}(C0))`.
pub fn characteristic_temperatures(spec: &ProblemSpec) -> Result<(f64, f64), ModelError> {
    let d = spec.diagram();
    Ok((d.inv_solidus(spec.c0())?, d.inv_liquidus(spec.c0())?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    /// Boundary parameter the bounds apply to: `q0`, `h0` or `T1`.
    pub parameter: &'static str,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub actual: Option<f64>,
    pub admissible: bool,
    #[serde(rename = "T_0l")]
    pub t_0l: f64,
    #[serde(rename = "T_0s")]
    pub t_0s: f64,
}

impl AdmissibilityReport {
    fn new(
        parameter: &'static str,
        lower: f64,
        upper: f64,
        actual: f64,
        t_0s: f64,
        t_0l: f64,
    ) -> Self {
        Self {
            parameter,
            lower_bound: lower,
            upper_bound: upper,
            actual: Some(actual),
            admissible: lower < actual && actual < upper,
            t_0l,
            t_0s,
        }
    }
}

/// `sqrt(pi alpha_l) / k_l`, the factor turning a boundary flux into a
/// temperature drop in the liquid.
fn liquid_drop_factor(spec: &ProblemSpec) -> f64 {
    let l = spec.material().liquid;
    SQRT_PI * l.alpha.sqrt() / l.k
}

/// Flux gate: `(T0 - T_0l) k_l / sqrt(pi alpha_l) < q0 < (T0 - T_0s) k_l / sqrt(pi alpha_l)`.
pub fn check_admissibility_flux(spec: &ProblemSpec) -> Result<AdmissibilityReport, ModelError> {
    let BoundaryCondition::Flux { q0 } = *spec.bc() else {
        return Err(ModelError::WrongBoundary {
            expected: "flux",
            actual: spec.bc().name(),
        });
    };
    let (t_0s, t_0l) = characteristic_temperatures(spec)?;
    let f = liquid_drop_factor(spec);
    let t0 = spec.t0();
    Ok(AdmissibilityReport::new(
        "q0",
        (t0 - t_0l) / f,
        (t0 - t_0s) / f,
        q0,
        t_0s,
        t_0l,
    ))
}

/// Convective gate: the flux bounds divided by `T_0l - T_inf` and
/// `T_0s - T_inf` respectively. Requires `T_inf < T_0s`.
pub fn check_admissibility_convective(
    spec: &ProblemSpec,
) -> Result<AdmissibilityReport, ModelError> {
    let BoundaryCondition::Convective { h0, t_inf } = *spec.bc() else {
        return Err(ModelError::WrongBoundary {
            expected: "convective",
            actual: spec.bc().name(),
        });
    };
    let (t_0s, t_0l) = characteristic_temperatures(spec)?;
    if t_inf >= t_0s {
        return Err(ModelError::Precondition(format!(
            "convective gate needs T_inf < T_0s, got T_inf = {t_inf} >= T_0s = {t_0s}"
        )));
    }
    let f = liquid_drop_factor(spec);
    let t0 = spec.t0();
    Ok(AdmissibilityReport::new(
        "h0",
        (t0 - t_0l) / ((t_0l - t_inf) * f),
        (t0 - t_0s) / ((t_0s - t_inf) * f),
        h0,
        t_0s,
        t_0l,
    ))
}

/// Working gate for a fixed face temperature: `T_A < T1 < T_0l`. Existence is
/// confirmed only by the solver's sign-change search.
pub fn check_admissibility_dirichlet(
    spec: &ProblemSpec,
) -> Result<AdmissibilityReport, ModelError> {
    let BoundaryCondition::Dirichlet { t1 } = *spec.bc() else {
        return Err(ModelError::WrongBoundary {
            expected: "dirichlet",
            actual: spec.bc().name(),
        });
    };
    let (t_0s, t_0l) = characteristic_temperatures(spec)?;
    Ok(AdmissibilityReport::new(
        "T1",
        spec.diagram().t_a(),
        t_0l,
        t1,
        t_0s,
        t_0l,
    ))
}

pub fn check_admissibility(spec: &ProblemSpec) -> Result<AdmissibilityReport, ModelError> {
    match spec.bc() {
        BoundaryCondition::Flux { .. } => check_admissibility_flux(spec),
        BoundaryCondition::Convective { .. } => check_admissibility_convective(spec),
        BoundaryCondition::Dirichlet { .. } => check_admissibility_dirichlet(spec),
    }
}
