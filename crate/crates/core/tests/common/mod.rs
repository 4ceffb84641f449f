#![allow(dead_code)]

use alloystef::model::{BoundaryCondition, Material, PhaseProperties, ProblemSpec};
use alloystef::phase_diagram::PhaseDiagram;
use alloystef::solver::SimilaritySolution;
use rand::Rng;

/// Unevaluated sum `hi + lo`, about 32 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl Dd {
    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = q1 * d;
        let e = q1.mul_add(d, -p);
        let r = (self.hi - p - e + self.lo) / d;
        quick_two_sum(q1, r)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

const TWO_OVER_SQRT_PI: Dd = Dd {
    hi: std::f64::consts::FRAC_2_SQRT_PI,
    lo: 1.533_545_961_316_588e-17,
};

/// erf by its Maclaurin series in double-double; good to ~1e-17 absolute on [0, 6].
pub fn erf_dd(x: f64) -> Dd {
    let xx = Dd::from(x).mul(Dd::from(x));
    let mut term = Dd::from(x);
    let mut sum = Dd::from(x);
    let mut n = 1u32;
    loop {
        term = term.mul(xx).neg().div_f64(n as f64);
        let contrib = term.div_f64((2 * n + 1) as f64);
        sum = sum.add(contrib);
        if contrib.hi.abs() < 1e-40 && n > 10 {
            break;
        }
        n += 1;
    }
    sum.mul(TWO_OVER_SQRT_PI)
}

pub fn erf_oracle(x: f64) -> f64 {
    erf_dd(x).to_f64()
}

pub fn erfc_oracle(x: f64) -> f64 {
    Dd::from(1.0).add(erf_dd(x).neg()).to_f64()
}

/// exp(x^2) erfc(x) by the Laplace continued fraction, for x >= 3.
pub fn erfcx_cf(x: f64) -> f64 {
    assert!(x >= 3.0);
    let mut tail = x;
    for k in (1..=400).rev() {
        tail = x + (k as f64 / 2.0) / tail;
    }
    1.0 / (std::f64::consts::PI.sqrt() * tail)
}

pub fn unit_material() -> Material {
    let unit = PhaseProperties::new(1.0, 1.0, 1.0);
    Material {
        solid: unit,
        liquid: unit,
        rho: 1.0,
        gamma: 1.0,
    }
}

pub fn ref1_diagram() -> PhaseDiagram {
    PhaseDiagram::power_law(0.0, 1.0, 2.0, 1.0).unwrap()
}

pub fn ref1(bc: BoundaryCondition) -> ProblemSpec {
    ProblemSpec::new(unit_material(), ref1_diagram(), 0.8, 0.25, bc).unwrap()
}

pub fn ref1_flux() -> ProblemSpec {
    ref1(BoundaryCondition::Flux { q0: 0.25 })
}

pub fn ref1_convective() -> ProblemSpec {
    ref1(BoundaryCondition::Convective {
        h0: 0.7,
        t_inf: 0.0,
    })
}

pub fn ref1_dirichlet() -> ProblemSpec {
    ref1(BoundaryCondition::Dirichlet { t1: 0.3 })
}

/// Random material and power-law diagram with a liquid initial state. The
/// boundary condition is a placeholder flux; callers swap it in.
pub fn random_base<R: Rng>(rng: &mut R) -> ProblemSpec {
    let phase = |rng: &mut R| {
        PhaseProperties::new(
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.2..5.0),
        )
    };
    let material = Material {
        solid: phase(rng),
        liquid: phase(rng),
        rho: rng.gen_range(0.5..3.0),
        gamma: rng.gen_range(0.2..3.0),
    };
    let exponent_s = rng.gen_range(1.0..2.0);
    let exponent_l = exponent_s + rng.gen_range(0.2..2.0);
    let t_a = rng.gen_range(-1.0..1.0);
    let t_b = t_a + rng.gen_range(0.5..3.0);
    let diagram = PhaseDiagram::power_law(t_a, t_b, exponent_l, exponent_s).unwrap();
    let t0 = t_a + (t_b - t_a) * rng.gen_range(0.3..0.95);
    let c0 = diagram.liquidus(t0).unwrap() * rng.gen_range(0.05..0.95);
    ProblemSpec::new(
        material,
        diagram,
        t0,
        c0,
        BoundaryCondition::Flux { q0: 1.0 },
    )
    .unwrap()
}

/// Copies of `sol` with exactly one stored quantity shifted by `by`.
pub fn single_faults(sol: &SimilaritySolution, by: f64) -> Vec<(String, SimilaritySolution)> {
    let mut out = Vec::new();
    let mut push = |what: String, f: &dyn Fn(&mut SimilaritySolution)| {
        let mut v = sol.clone();
        f(&mut v);
        out.push((what, v));
    };
    push("front coefficient".into(), &|v| v.front_coefficient += by);
    push("T_k".into(), &|v| v.t_k += by);
    push("T_fixed_face".into(), &|v| v.t_fixed_face += by);
    push("f_s(T_k)".into(), &|v| {
        v.interface_solid_concentration += by
    });
    push("f_l(T_k)".into(), &|v| {
        v.interface_liquid_concentration += by
    });
    for (i, name) in ["T_s", "T_l", "C_s", "C_l"].iter().enumerate() {
        push(format!("{name} a"), &|v| v.pairs_mut()[i].a += by);
        push(format!("{name} b"), &|v| v.pairs_mut()[i].b += by);
    }
    out
}
