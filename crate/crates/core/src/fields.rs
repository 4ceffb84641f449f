//! Closed-form temperature and concentration fields of a solved problem.

use serde::Serialize;
use thiserror::Error;

use crate::solver::SimilaritySolution;
use crate::specfun::{erf_raw, FRAC_1_SQRT_PI};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// One field in similarity form `a + b * erf(x / (2 sqrt(diffusivity * t)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldPair {
    pub a: f64,
    pub b: f64,
    pub diffusivity: f64,
}

impl FieldPair {
    pub fn new(a: f64, b: f64, diffusivity: f64) -> Self {
        Self { a, b, diffusivity }
    }

    #[inline]
    pub fn similarity_variable(&self, x: f64, t: f64) -> f64 {
        x / (2.0 * (self.diffusivity * t).sqrt())
    }

    #[inline]
    pub fn value(&self, x: f64, t: f64) -> f64 {
        self.a + self.b * erf_raw(self.similarity_variable(x, t))
    }

    /// Exact derivative in `x`.
    pub fn gradient(&self, x: f64, t: f64) -> f64 {
        let eta = self.similarity_variable(x, t);
        self.b * FRAC_1_SQRT_PI * (-eta * eta).exp() / (self.diffusivity * t).sqrt()
    }

    /// Exact derivative in `t`.
    pub fn time_derivative(&self, x: f64, t: f64) -> f64 {
        let eta = self.similarity_variable(x, t);
        -self.b * FRAC_1_SQRT_PI * (-eta * eta).exp() * eta / t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Solid,
    Interface,
    Liquid,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Solid => "solid",
            Region::Interface => "interface",
            Region::Liquid => "liquid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub x: f64,
    pub region: Region,
    #[serde(rename = "T")]
    pub temperature: f64,
    /// Liquid-side value at the interface.
    #[serde(rename = "C")]
    pub concentration: f64,
    /// Solid-side concentration, only set on the interface sample.
    pub solid_concentration: Option<f64>,
}

fn check_time(t: f64) -> Result<(), FieldError> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(FieldError::Domain(format!(
            "time must be finite and > 0, got {t}"
        )))
    }
}

fn check_point(x: f64, t: f64) -> Result<(), FieldError> {
    check_time(t)?;
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(FieldError::Domain(format!(
            "position must be finite and >= 0, got {x}"
        )))
    }
}

/// `s(t) = 2 * coefficient * sqrt(alpha_s t)`.
pub fn front_position(sol: &SimilaritySolution, t: f64) -> Result<f64, FieldError> {
    check_time(t)?;
    Ok(front_raw(sol, t))
}

fn front_raw(sol: &SimilaritySolution, t: f64) -> f64 {
    2.0 * sol.front_coefficient * (sol.temp_solid.diffusivity * t).sqrt()
}

/// Width of the band around `s(t)` treated as the interface itself.
pub fn interface_band(s: f64) -> f64 {
    1e-12 * s.max(1.0)
}

pub fn region_at(sol: &SimilaritySolution, x: f64, t: f64) -> Result<Region, FieldError> {
    check_point(x, t)?;
    Ok(region_raw(x, front_raw(sol, t)))
}

fn region_raw(x: f64, s: f64) -> Region {
    let band = interface_band(s);
    if x < s - band {
        Region::Solid
    } else if x <= s + band {
        Region::Interface
    } else {
        Region::Liquid
    }
}

pub fn temperature_at(sol: &SimilaritySolution, x: f64, t: f64) -> Result<f64, FieldError> {
    check_point(x, t)?;
    Ok(match region_raw(x, front_raw(sol, t)) {
        Region::Solid => sol.temp_solid.value(x, t),
        Region::Interface => sol.t_k,
        Region::Liquid => sol.temp_liquid.value(x, t),
    })
}

/// Concentration; on the interface the liquid-side value `f_l(T_k)` is returned.
pub fn concentration_at(sol: &SimilaritySolution, x: f64, t: f64) -> Result<f64, FieldError> {
    check_point(x, t)?;
    Ok(match region_raw(x, front_raw(sol, t)) {
        Region::Solid => sol.conc_solid.value(x, t),
        Region::Interface => sol.interface_liquid_concentration,
        Region::Liquid => sol.conc_liquid.value(x, t),
    })
}

/// Temperature at `x = 0`, the same for every `t > 0`.
pub fn fixed_face_temperature(sol: &SimilaritySolution) -> f64 {
    sol.t_fixed_face
}

/// Samples both fields on a uniform grid `[0, x_max]` with `n_x` points for
/// each time, plus one sample exactly on the front. Ordered by `(t, x)`.
pub fn sample_profile(
    sol: &SimilaritySolution,
    times: &[f64],
    x_max: f64,
    n_x: usize,
) -> Result<Vec<ProfileSample>, FieldError> {
    if times.is_empty() {
        return Err(FieldError::Domain("no sample times given".into()));
    }
    for &t in times {
        check_time(t)?;
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(FieldError::Domain(format!(
            "x_max must be > 0, got {x_max}"
        )));
    }
    if n_x < 2 {
        return Err(FieldError::Domain(format!("n_x must be >= 2, got {n_x}")));
    }
    let mut times = times.to_vec();
    times.sort_by(f64::total_cmp);

    let mut out = Vec::with_capacity(times.len() * (n_x + 1));
    for t in times {
        let s = front_raw(sol, t);
        let mut xs: Vec<f64> = (0..n_x)
            .map(|i| x_max * i as f64 / (n_x - 1) as f64)
            .collect();
        if !xs.contains(&s) {
            let at = xs.partition_point(|&x| x < s);
            xs.insert(at, s);
        }
        for x in xs {
            let region = region_raw(x, s);
            let (temperature, concentration, solid_concentration) = match region {
                Region::Solid => (sol.temp_solid.value(x, t), sol.conc_solid.value(x, t), None),
                Region::Interface => (
                    sol.t_k,
                    sol.interface_liquid_concentration,
                    Some(sol.interface_solid_concentration),
                ),
                Region::Liquid => (
                    sol.temp_liquid.value(x, t),
                    sol.conc_liquid.value(x, t),
                    None,
                ),
            };
            out.push(ProfileSample {
                t,
                x,
                region,
                temperature,
                concentration,
                solid_concentration,
            });
        }
    }
    Ok(out)
}
