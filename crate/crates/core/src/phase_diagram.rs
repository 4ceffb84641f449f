//! Liquidus/solidus equilibrium curves of a binary alloy.
//!
//! A diagram lives on `[T_A, T_B]` (melting points of the pure components).
//! Both curves are strictly increasing, meet at the endpoints, and the liquidus
//! lies strictly below the solidus inside the interval. Alloy of concentration
//! `C` at temperature `T` is liquid when `C < f_l(T)` and solid when `C > f_s(T)`.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

/// Absolute tolerance on T for the inverse curves.
pub const INVERSE_TOL: f64 = 1e-13;
const INVERSE_MAX_ITER: usize = 200;
/// Endpoint equality tolerance for tabulated curves.
pub const ENDPOINT_TOL: f64 = 1e-12;
/// |C0 - f_l(T)| below this is treated as the pole of the segregation function.
pub const POLE_TOL: f64 = 1e-14;
const VALIDATION_GRID: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("temperature {t} outside diagram range [{t_a}, {t_b}]")]
    TemperatureOutOfRange { t: f64, t_a: f64, t_b: f64 },
    #[error("concentration {c} outside curve range [{lo}, {hi}]")]
    ConcentrationOutOfRange { c: f64, lo: f64, hi: f64 },
    #[error("segregation function has a pole at T = {t} (C0 = f_l(T))")]
    Pole { t: f64 },
    #[error("diagram violates its axioms:\n{0}")]
    Axioms(DiagramReport),
    #[error("table line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("cannot read table {path}: {msg}")]
    Io { path: String, msg: String },
}

/// One row of a tabulated diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Knot {
    pub t: f64,
    pub c_l: f64,
    pub c_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Curves {
    /// `f_s = b^exponent_s`, `f_l = b^exponent_l` with `b = (T - T_A)/(T_B - T_A)`.
    PowerLaw { exponent_l: f64, exponent_s: f64 },
    /// Piecewise-linear interpolation between knots.
    Tabulated(Vec<Knot>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    t_a: f64,
    t_b: f64,
    curves: Curves,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    Liquidus,
    Solidus,
}

impl PhaseDiagram {
    /// Builds a diagram after structural checks only (finite data, `T_A < T_B`,
    /// sorted knots). Use [`validate_diagram`] or [`PhaseDiagram::into_validated`]
    /// to check the curve axioms.
    pub fn new(t_a: f64, t_b: f64, curves: Curves) -> Result<Self, DiagramError> {
        if !(t_a.is_finite() && t_b.is_finite()) || t_a >= t_b {
            return Err(DiagramError::Invalid(format!(
                "need finite T_A < T_B, got T_A = {t_a}, T_B = {t_b}"
            )));
        }
        match &curves {
            Curves::PowerLaw {
                exponent_l,
                exponent_s,
            } => {
                if !(exponent_l.is_finite() && exponent_s.is_finite()) || *exponent_s < 1.0 {
                    return Err(DiagramError::Invalid(format!(
                        "power-law exponents must be finite with exponent_s >= 1, got \
                         exponent_l = {exponent_l}, exponent_s = {exponent_s}"
                    )));
                }
            }
            Curves::Tabulated(knots) => {
                if knots.len() < 2 {
                    return Err(DiagramError::Invalid(
                        "a table needs at least two knots".into(),
                    ));
                }
                if knots
                    .iter()
                    .any(|k| !(k.t.is_finite() && k.c_l.is_finite() && k.c_s.is_finite()))
                {
                    return Err(DiagramError::Invalid(
                        "table contains non-finite values".into(),
                    ));
                }
                if knots.windows(2).any(|w| w[1].t <= w[0].t) {
                    return Err(DiagramError::Invalid(
                        "table temperatures must be strictly increasing".into(),
                    ));
                }
                let first = knots[0].t;
                let last = knots[knots.len() - 1].t;
                if first != t_a || last != t_b {
                    return Err(DiagramError::Invalid(format!(
                        "table spans [{first}, {last}] but diagram is [{t_a}, {t_b}]"
                    )));
                }
            }
        }
        Ok(Self { t_a, t_b, curves })
    }

    /// Power-law diagram, validated.
    pub fn power_law(
        t_a: f64,
        t_b: f64,
        exponent_l: f64,
        exponent_s: f64,
    ) -> Result<Self, DiagramError> {
        Self::new(
            t_a,
            t_b,
            Curves::PowerLaw {
                exponent_l,
                exponent_s,
            },
        )?
        .into_validated()
    }

    /// Tabulated diagram spanning the first to the last knot, validated.
    pub fn tabulated(knots: Vec<Knot>) -> Result<Self, DiagramError> {
        let (t_a, t_b) = match (knots.first(), knots.last()) {
            (Some(a), Some(b)) => (a.t, b.t),
            _ => return Err(DiagramError::Invalid("empty table".into())),
        };
        Self::new(t_a, t_b, Curves::Tabulated(knots))?.into_validated()
    }

    /// Parses the plain-text table format: a `T C_l C_s` header followed by
    /// whitespace-separated rows. Blank lines and `#` comments are skipped.
    pub fn parse_table(text: &str) -> Result<Vec<Knot>, DiagramError> {
        let mut header_seen = false;
        let mut knots = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if !header_seen {
                if cols != ["T", "C_l", "C_s"] {
                    return Err(DiagramError::Table {
                        line: line_no,
                        msg: format!("expected header `T C_l C_s`, found `{line}`"),
                    });
                }
                header_seen = true;
                continue;
            }
            if cols.len() != 3 {
                return Err(DiagramError::Table {
                    line: line_no,
                    msg: format!("expected 3 columns, found {}", cols.len()),
                });
            }
            let mut vals = [0.0; 3];
            for (v, c) in vals.iter_mut().zip(&cols) {
                *v = c.parse().map_err(|_| DiagramError::Table {
                    line: line_no,
                    msg: format!("`{c}` is not a number"),
                })?;
            }
            if let Some(prev) = knots.last().map(|k: &Knot| k.t) {
                if vals[0] <= prev {
                    return Err(DiagramError::Table {
                        line: line_no,
                        msg: format!("T = {} does not increase (previous {prev})", vals[0]),
                    });
                }
            }
            knots.push(Knot {
                t: vals[0],
                c_l: vals[1],
                c_s: vals[2],
            });
        }
        if !header_seen {
            return Err(DiagramError::Table {
                line: 1,
                msg: "missing `T C_l C_s` header".into(),
            });
        }
        Ok(knots)
    }

    pub fn from_table_file(path: &Path) -> Result<Self, DiagramError> {
        let text = std::fs::read_to_string(path).map_err(|e| DiagramError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::tabulated(Self::parse_table(&text)?)
    }

    /// Returns `self` if every axiom of [`validate_diagram`] holds.
    pub fn into_validated(self) -> Result<Self, DiagramError> {
        let report = validate_diagram(&self);
        if report.pass {
            Ok(self)
        } else {
            Err(DiagramError::Axioms(report))
        }
    }

    pub fn t_a(&self) -> f64 {
        self.t_a
    }

    pub fn t_b(&self) -> f64 {
        self.t_b
    }

    pub fn curves(&self) -> &Curves {
        &self.curves
    }

    fn check_temperature(&self, t: f64) -> Result<(), DiagramError> {
        if t >= self.t_a && t <= self.t_b {
            Ok(())
        } else {
            Err(DiagramError::TemperatureOutOfRange {
                t,
                t_a: self.t_a,
                t_b: self.t_b,
            })
        }
    }

    /// Evaluates a branch at a temperature already known to be in range.
    fn eval(&self, branch: Branch, t: f64) -> f64 {
        match &self.curves {
            Curves::PowerLaw {
                exponent_l,
                exponent_s,
            } => {
                let base = ((t - self.t_a) / (self.t_b - self.t_a)).clamp(0.0, 1.0);
                let e = match branch {
                    Branch::Liquidus => *exponent_l,
                    Branch::Solidus => *exponent_s,
                };
                base.powf(e)
            }
            Curves::Tabulated(knots) => {
                let pick = |k: &Knot| match branch {
                    Branch::Liquidus => k.c_l,
                    Branch::Solidus => k.c_s,
                };
                let hi = knots
                    .partition_point(|k| k.t <= t)
                    .clamp(1, knots.len() - 1);
                let (k0, k1) = (&knots[hi - 1], &knots[hi]);
                let w = (t - k0.t) / (k1.t - k0.t);
                pick(k0) + w * (pick(k1) - pick(k0))
            }
        }
    }

    /// Liquidus concentration `f_l(T)`.
    pub fn liquidus(&self, t: f64) -> Result<f64, DiagramError> {
        self.check_temperature(t)?;
        Ok(self.eval(Branch::Liquidus, t))
    }

    /// Solidus concentration `f_s(T)`.
    pub fn solidus(&self, t: f64) -> Result<f64, DiagramError> {
        self.check_temperature(t)?;
        Ok(self.eval(Branch::Solidus, t))
    }

    /// `f_l^{-1}(C)`, the temperature `T_0l` at which the liquidus reaches `C`.
    pub fn inv_liquidus(&self, c: f64) -> Result<f64, DiagramError> {
        self.invert(Branch::Liquidus, c)
    }

    /// `f_s^{-1}(C)`, the temperature `T_0s` at which the solidus reaches `C`.
    pub fn inv_solidus(&self, c: f64) -> Result<f64, DiagramError> {
        self.invert(Branch::Solidus, c)
    }

    /// Shared concentration range `[f(T_A), f(T_B)]` of the two curves.
    pub fn concentration_range(&self) -> (f64, f64) {
        (
            self.eval(Branch::Liquidus, self.t_a),
            self.eval(Branch::Liquidus, self.t_b),
        )
    }

    // Bisection on the increasing curve; runs to floating-point resolution,
    // which is tighter than INVERSE_TOL.
    fn invert(&self, branch: Branch, c: f64) -> Result<f64, DiagramError> {
        let lo_c = self.eval(branch, self.t_a);
        let hi_c = self.eval(branch, self.t_b);
        if !(c >= lo_c && c <= hi_c) {
            return Err(DiagramError::ConcentrationOutOfRange {
                c,
                lo: lo_c,
                hi: hi_c,
            });
        }
        if c == lo_c {
            return Ok(self.t_a);
        }
        if c == hi_c {
            return Ok(self.t_b);
        }
        let (mut lo, mut hi) = (self.t_a, self.t_b);
        for _ in 0..INVERSE_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(branch, mid) < c {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        debug_assert!(hi - lo <= INVERSE_TOL);
        let (flo, fhi) = (self.eval(branch, lo), self.eval(branch, hi));
        Ok(if (flo - c).abs() <= (fhi - c).abs() {
            lo
        } else {
            hi
        })
    }

    /// Segregation function `phi(T) = (f_s(T) - f_l(T)) / (C0 - f_l(T))`.
    ///
    /// Defined on `(T_A, T_B)` away from `T_0l`; increasing on `[T_0s, T_0l)`
    /// from 1 to `+inf`. Values below 1 (for `T < T_0s`) are legal.
    pub fn phi(&self, c0: f64, t: f64) -> Result<f64, DiagramError> {
        if !(t > self.t_a && t < self.t_b) {
            return Err(DiagramError::TemperatureOutOfRange {
                t,
                t_a: self.t_a,
                t_b: self.t_b,
            });
        }
        let fl = self.eval(Branch::Liquidus, t);
        let fs = self.eval(Branch::Solidus, t);
        let den = c0 - fl;
        if den.abs() < POLE_TOL {
            return Err(DiagramError::Pole { t });
        }
        Ok((fs - fl) / den)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramReport {
    pub checks: Vec<AxiomCheck>,
    pub pass: bool,
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

impl DiagramReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const AXIOM_ENDPOINT_A: &str = "endpoint equality at T_A";
pub const AXIOM_ENDPOINT_B: &str = "endpoint equality at T_B";
pub const AXIOM_LIQUIDUS_MONOTONE: &str = "liquidus strictly increasing";
pub const AXIOM_SOLIDUS_MONOTONE: &str = "solidus strictly increasing";
pub const AXIOM_ORDERING: &str = "f_l < f_s inside (T_A, T_B)";

/// Checks the curve axioms on a 1000-point grid (plus every knot of a
/// tabulated diagram).
pub fn validate_diagram(d: &PhaseDiagram) -> DiagramReport {
    let mut grid: Vec<f64> = (0..=VALIDATION_GRID)
        .map(|i| d.t_a + (d.t_b - d.t_a) * i as f64 / VALIDATION_GRID as f64)
        .collect();
    if let Curves::Tabulated(knots) = &d.curves {
        grid.extend(knots.iter().map(|k| k.t));
        grid.sort_by(f64::total_cmp);
        grid.dedup();
    }
    *grid.last_mut().unwrap() = d.t_b;

    let fl: Vec<f64> = grid.iter().map(|&t| d.eval(Branch::Liquidus, t)).collect();
    let fs: Vec<f64> = grid.iter().map(|&t| d.eval(Branch::Solidus, t)).collect();

    let endpoint = |name, fl: f64, fs: f64| AxiomCheck {
        name,
        pass: (fl - fs).abs() <= ENDPOINT_TOL,
        detail: format!("f_l = {fl}, f_s = {fs}"),
    };
    let monotone = |name, vals: &[f64]| {
        let bad = vals.windows(2).position(|w| w[1] <= w[0]);
        AxiomCheck {
            name,
            pass: bad.is_none(),
            detail: match bad {
                None => format!("{} grid points", vals.len()),
                Some(i) => format!(
                    "not increasing between T = {} and T = {}",
                    grid[i],
                    grid[i + 1]
                ),
            },
        }
    };
    let n = grid.len();
    let bad_order = (1..n - 1).find(|&i| fl[i] >= fs[i]);

    let checks = vec![
        endpoint(AXIOM_ENDPOINT_A, fl[0], fs[0]),
        endpoint(AXIOM_ENDPOINT_B, fl[n - 1], fs[n - 1]),
        monotone(AXIOM_LIQUIDUS_MONOTONE, &fl),
        monotone(AXIOM_SOLIDUS_MONOTONE, &fs),
        AxiomCheck {
            name: AXIOM_ORDERING,
            pass: bad_order.is_none(),
            detail: match bad_order {
                None => format!("{} interior points", n - 2),
                Some(i) => format!("f_l = {} >= f_s = {} at T = {}", fl[i], fs[i], grid[i]),
            },
        },
    ];
    let pass = checks.iter().all(|c| c.pass);
    DiagramReport { checks, pass }
}
