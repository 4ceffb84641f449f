mod common;

use alloystef::model::{
    characteristic_temperatures, check_admissibility, BoundaryCondition, Material, ModelError,
    PhaseProperties, ProblemSpec,
};
use alloystef::specfun::SQRT_PI;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Skips draws that sit within rounding distance of a bound.
fn clear_of(v: f64, lo: f64, hi: f64) -> bool {
    let eps = 1e-12 * v.abs().max(1.0);
    (v - lo).abs() > eps && (v - hi).abs() > eps
}

#[test]
fn flux_gate_matches_face_temperature_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    let mut admitted = 0;
    while compared < 1000 {
        let base = common::random_base(&mut rng);
        let (t_0s, t_0l) = characteristic_temperatures(&base).unwrap();
        let l = base.material().liquid;
        let scale = (base.t0() - t_0s) * l.k / (SQRT_PI * l.alpha.sqrt());
        let q0 = rng.gen_range(0.0..1.5) * scale;
        if q0 <= 0.0 {
            continue;
        }
        let spec = base.with_boundary(BoundaryCondition::Flux { q0 }).unwrap();
        let face = base.t0() - q0 * SQRT_PI * l.alpha.sqrt() / l.k;
        if !clear_of(face, t_0s, t_0l) {
            continue;
        }
        let report = check_admissibility(&spec).unwrap();
        assert_eq!(report.admissible, t_0s < face && face < t_0l, "{spec:?}");
        admitted += report.admissible as usize;
        compared += 1;
    }
    assert!(
        admitted > 100 && admitted < 900,
        "draws should straddle the gate: {admitted}"
    );
}

#[test]
fn convective_gate_matches_face_temperature_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut compared = 0;
    let mut admitted = 0;
    while compared < 1000 {
        let base = common::random_base(&mut rng);
        let (t_0s, t_0l) = characteristic_temperatures(&base).unwrap();
        let t_a = base.diagram().t_a();
        let t_inf = t_a - 1.0 + rng.gen_range(0.0..1.0) * (t_0s - t_a + 1.0) * 0.99;
        let l = base.material().liquid;
        let upper = (base.t0() - t_0s) * l.k / ((t_0s - t_inf) * SQRT_PI * l.alpha.sqrt());
        let h0 = rng.gen_range(0.0..1.5) * upper;
        if h0 <= 0.0 {
            continue;
        }
        let spec = base
            .with_boundary(BoundaryCondition::Convective { h0, t_inf })
            .unwrap();
        let w0 = t_inf + (base.t0() - t_inf) / (1.0 + h0 * SQRT_PI * l.alpha.sqrt() / l.k);
        if !clear_of(w0, t_0s, t_0l) {
            continue;
        }
        let report = check_admissibility(&spec).unwrap();
        assert_eq!(report.admissible, t_0s < w0 && w0 < t_0l, "{spec:?}");
        admitted += report.admissible as usize;
        compared += 1;
    }
    assert!(
        admitted > 100 && admitted < 900,
        "draws should straddle the gate: {admitted}"
    );
}

fn with_liquid(k: f64, alpha: f64) -> ProblemSpec {
    let base = common::ref1_flux();
    let mut material: Material = *base.material();
    material.liquid = PhaseProperties::new(k, alpha, 1.0);
    ProblemSpec::new(material, base.diagram().clone(), 0.8, 0.25, *base.bc()).unwrap()
}

#[test]
fn bounds_scale_with_liquid_conductivity_and_diffusivity() {
    let unit = check_admissibility(&with_liquid(1.0, 1.0)).unwrap();
    for k in [0.1, 2.0, 37.0] {
        let r = check_admissibility(&with_liquid(k, 1.0)).unwrap();
        assert!((r.lower_bound - k * unit.lower_bound).abs() <= 1e-14 * k);
        assert!((r.upper_bound - k * unit.upper_bound).abs() <= 1e-14 * k);
    }
    for alpha in [0.01, 4.0, 250.0] {
        let r = check_admissibility(&with_liquid(1.0, alpha)).unwrap();
        let f = 1.0 / alpha.sqrt();
        assert!((r.lower_bound - f * unit.lower_bound).abs() <= 1e-14);
        assert!((r.upper_bound - f * unit.upper_bound).abs() <= 1e-14);
    }
}

#[test]
fn boundary_equal_inputs_rejected() {
    let flux = check_admissibility(&common::ref1_flux()).unwrap();
    for q0 in [flux.lower_bound, flux.upper_bound] {
        let s = common::ref1(BoundaryCondition::Flux { q0 });
        assert!(!check_admissibility(&s).unwrap().admissible);
    }
    let conv = check_admissibility(&common::ref1_convective()).unwrap();
    for h0 in [conv.lower_bound, conv.upper_bound] {
        let s = common::ref1(BoundaryCondition::Convective { h0, t_inf: 0.0 });
        assert!(!check_admissibility(&s).unwrap().admissible);
    }
    for t1 in [0.0, 0.5] {
        let s = common::ref1(BoundaryCondition::Dirichlet { t1 });
        assert!(!check_admissibility(&s).unwrap().admissible);
    }
}

#[test]
fn convective_needs_bulk_below_solidus_temperature() {
    for t_inf in [0.25, 0.4] {
        let s = common::ref1(BoundaryCondition::Convective { h0: 0.7, t_inf });
        let err = check_admissibility(&s).unwrap_err();
        assert!(
            matches!(err, ModelError::Precondition(ref m) if m.contains("T_inf < T_0s")),
            "{err}"
        );
    }
}

#[test]
fn characteristic_temperatures_ordered() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let s = common::random_base(&mut rng);
        let (t_0s, t_0l) = characteristic_temperatures(&s).unwrap();
        assert!(s.diagram().t_a() < t_0s && t_0s < t_0l && t_0l < s.t0());
    }
}

#[test]
fn spec_rejects_solid_initial_state() {
    let base = common::ref1_flux();
    let err = ProblemSpec::new(
        *base.material(),
        base.diagram().clone(),
        0.8,
        0.7,
        *base.bc(),
    )
    .unwrap_err();
    assert!(err.to_string().contains("initially liquid"), "{err}");
}
