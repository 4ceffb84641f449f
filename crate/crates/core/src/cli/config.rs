//! TOML run configuration.
//!
//! ```toml
//! [material]
//! rho = 1.0
//! gamma = 1.0
//! [material.solid]
//! k = 1.0
//! alpha = 1.0
//! d = 1.0
//! [material.liquid]
//! k = 1.0
//! alpha = 1.0
//! d = 1.0
//! [diagram]
//! type = "power_law"        # or "tabulated" with path = "table.txt"
//! t_a = 0.0
//! t_b = 1.0
//! exponent_l = 2.0
//! exponent_s = 1.0
//! [initial]
//! t0 = 0.8
//! c0 = 0.25
//! [boundary]
//! type = "flux"             # flux: q0 | convective: h0, t_inf | dirichlet: t1
//! q0 = 0.25
//! [solver]                  # optional
//! tol_lambda = 1e-12
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CliError, EXIT_CONFIG};
use crate::model::{self, BoundaryCondition, Material, ModelError, PhaseProperties, ProblemSpec};
use crate::phase_diagram::{Curves, PhaseDiagram};
use crate::solver::SolverConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSection {
    pub k: f64,
    pub alpha: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSection {
    pub rho: f64,
    pub gamma: f64,
    pub solid: PhaseSection,
    pub liquid: PhaseSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DiagramSection {
    PowerLaw {
        t_a: f64,
        t_b: f64,
        exponent_l: f64,
        exponent_s: f64,
    },
    /// Table file, relative paths resolved against the config file's directory.
    Tabulated { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub t0: f64,
    pub c0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub material: MaterialSection,
    pub diagram: DiagramSection,
    pub initial: InitialSection,
    pub boundary: BoundaryCondition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub path: PathBuf,
    pub spec: ProblemSpec,
    pub solver: SolverConfig,
    /// The file as parsed, echoed into JSON output.
    pub raw: ConfigFile,
}

/// 1-based line of `key = ...` inside `[section]`, or of the section header.
fn line_of(text: &str, section: &str, key: Option<&str>) -> Option<usize> {
    let mut current = String::new();
    let mut header = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_string();
            if current == section {
                header = Some(i + 1);
            }
            continue;
        }
        if current != section {
            continue;
        }
        if let (Some(key), Some((lhs, _))) = (key, line.split_once('=')) {
            if lhs.trim() == key {
                return Some(i + 1);
            }
        }
    }
    header
}

fn located(path: &Path, line: Option<usize>, msg: impl std::fmt::Display) -> CliError {
    let msg = match line {
        Some(l) => format!("{}:{l}: {msg}", path.display()),
        None => format!("{}: {msg}", path.display()),
    };
    CliError::new(EXIT_CONFIG, msg)
}

// Where in the file a model error points.
fn model_error_site(
    err: &ModelError,
    bc: &BoundaryCondition,
) -> (&'static str, Option<&'static str>) {
    match err {
        ModelError::Invariant { invariant, detail } => match *invariant {
            model::INV_T0_RANGE => ("initial", Some("t0")),
            model::INV_C0_RANGE | model::INV_INITIALLY_LIQUID => ("initial", Some("c0")),
            model::INV_Q0_POSITIVE => ("boundary", Some("q0")),
            model::INV_H0_POSITIVE => ("boundary", Some("h0")),
            model::INV_FINITE_TEMPERATURE => match bc {
                BoundaryCondition::Convective { .. } => ("boundary", Some("t_inf")),
                _ => ("boundary", Some("t1")),
            },
            model::INV_PHASE_POSITIVE if detail.starts_with("solid") => ("material.solid", None),
            model::INV_PHASE_POSITIVE => ("material.liquid", None),
            _ => ("material", None),
        },
        ModelError::Diagram(_) => ("diagram", None),
        _ => ("boundary", None),
    }
}

pub fn parse_config(text: &str, path: &Path) -> Result<RunConfig, CliError> {
    let raw: ConfigFile = toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        located(path, line, format!("parse error: {}", e.message()))
    })?;

    let diagram = match &raw.diagram {
        DiagramSection::PowerLaw {
            t_a,
            t_b,
            exponent_l,
            exponent_s,
        } => PhaseDiagram::new(
            *t_a,
            *t_b,
            Curves::PowerLaw {
                exponent_l: *exponent_l,
                exponent_s: *exponent_s,
            },
        )
        .and_then(PhaseDiagram::into_validated),
        DiagramSection::Tabulated { path: table } => {
            let base = path.parent().unwrap_or(Path::new("."));
            PhaseDiagram::from_table_file(&base.join(table))
        }
    }
    .map_err(|e| located(path, line_of(text, "diagram", None), e))?;

    let phase = |p: &PhaseSection| PhaseProperties::new(p.k, p.alpha, p.d);
    let material = Material {
        solid: phase(&raw.material.solid),
        liquid: phase(&raw.material.liquid),
        rho: raw.material.rho,
        gamma: raw.material.gamma,
    };
    let spec = ProblemSpec::new(
        material,
        diagram,
        raw.initial.t0,
        raw.initial.c0,
        raw.boundary,
    )
    .map_err(|e| {
        let (section, key) = model_error_site(&e, &raw.boundary);
        located(path, line_of(text, section, key), e)
    })?;

    let solver = raw.solver.unwrap_or_default();
    solver
        .validate()
        .map_err(|e| located(path, line_of(text, "solver", None), e))?;

    Ok(RunConfig {
        path: path.to_path_buf(),
        spec,
        solver,
        raw,
    })
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_CONFIG, format!("{}: {e}", path.display())))?;
    parse_config(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REF1: &str = r#"
[material]
rho = 1.0
gamma = 1.0

[material.solid]
k = 1.0
alpha = 1.0
d = 1.0

[material.liquid]
k = 1.0
alpha = 1.0
d = 1.0

[diagram]
type = "power_law"
t_a = 0.0
t_b = 1.0
exponent_l = 2.0
exponent_s = 1.0

[initial]
t0 = 0.8
c0 = 0.25

[boundary]
type = "flux"
q0 = 0.25
"#;

    fn parse(text: &str) -> Result<RunConfig, CliError> {
        parse_config(text, Path::new("run.toml"))
    }

    #[test]
    fn ref1_parses() {
        let cfg = parse(REF1).unwrap();
        assert_eq!(cfg.spec.t0(), 0.8);
        assert_eq!(*cfg.spec.bc(), BoundaryCondition::Flux { q0: 0.25 });
        assert_eq!(cfg.solver, SolverConfig::default());
    }

    #[test]
    fn t0_at_upper_melting_point_is_named() {
        let err = parse(&REF1.replace("t0 = 0.8", "t0 = 1.0")).unwrap_err();
        assert_eq!(err.code, EXIT_CONFIG);
        assert!(err.message.contains("T_A < T0 < T_B"), "{}", err.message);
        assert!(err.message.starts_with("run.toml:24:"), "{}", err.message);
    }

    #[test]
    fn initially_solid_is_named() {
        let err = parse(&REF1.replace("c0 = 0.25", "c0 = 0.7")).unwrap_err();
        assert!(err.message.contains("initially liquid"), "{}", err.message);
        assert!(err.message.starts_with("run.toml:25:"), "{}", err.message);
    }

    #[test]
    fn parse_errors_carry_a_line() {
        let err = parse(&REF1.replace("q0 = 0.25", "q0 = oops")).unwrap_err();
        assert_eq!(err.code, EXIT_CONFIG);
        assert!(err.message.starts_with("run.toml:29:"), "{}", err.message);
        let err = parse(&REF1.replace("q0 = 0.25", "q0 = 0.25\nextra = 1")).unwrap_err();
        assert_eq!(err.code, EXIT_CONFIG);
    }

    #[test]
    fn other_boundaries_and_solver_section() {
        let text = REF1.replace(
            "type = \"flux\"\nq0 = 0.25",
            "type = \"convective\"\nh0 = 0.7\nt_inf = 0.0\n\n[solver]\ntol_lambda = 1e-13",
        );
        let cfg = parse(&text).unwrap();
        assert_eq!(
            *cfg.spec.bc(),
            BoundaryCondition::Convective {
                h0: 0.7,
                t_inf: 0.0
            }
        );
        assert_eq!(cfg.solver.tol_lambda, 1e-13);
        assert_eq!(cfg.solver.tol_residual, 1e-10);

        let text = REF1.replace(
            "type = \"flux\"\nq0 = 0.25",
            "type = \"dirichlet\"\nt1 = 0.3",
        );
        assert_eq!(
            *parse(&text).unwrap().spec.bc(),
            BoundaryCondition::Dirichlet { t1: 0.3 }
        );
    }

    #[test]
    fn bad_diagram_is_rejected() {
        let err = parse(&REF1.replace("exponent_l = 2.0", "exponent_l = 1.0")).unwrap_err();
        assert_eq!(err.code, EXIT_CONFIG);
        assert!(err.message.contains("f_l < f_s"), "{}", err.message);
    }
}
