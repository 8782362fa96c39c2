//! Isoparametric minimal hypersurfaces of S⁵ with exact invariants.
//!
//! Up to congruence there are four: the totally geodesic equator, the two
//! Clifford products S¹(1/2)×S³(√3/2) and S²(√2/2)×S²(√2/2), and Cartan's
//! hypersurface with four distinct principal curvatures, the level
//! `F = 1/2` of the Cartan quartic. Curvatures are stored as exact elements
//! of ℚ(√d), so every check in [`model_check`] is exact.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::ScalarFieldSpec;
use crate::numeric::{Rational, Surd};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("Clifford factors must satisfy r + s = 4 and 1 <= r <= s, got ({r}, {s})")]
    BadClifford { r: usize, s: usize },
    #[error("Cartan parameter t = {0} is outside (0, pi/4)")]
    BadParameter(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelName {
    Equator,
    Clifford { r: usize, s: usize },
    Cartan,
}

impl ModelName {
    /// Stable identifier, matching the sweep verdict names.
    pub fn label(&self) -> String {
        match self {
            ModelName::Equator => "equator".into(),
            ModelName::Clifford { r, s } => format!("clifford_{r}_{s}"),
            ModelName::Cartan => "cartan".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoModel {
    pub name: ModelName,
    pub g: usize,
    /// Multiplicity of `curvatures[k]`.
    pub multiplicities: Vec<usize>,
    /// Distinct principal curvatures, strictly descending.
    pub curvatures: Vec<Surd>,
    pub s_expected: i64,
    /// θ₀ as a fraction of π.
    pub theta0_over_pi: Option<Rational>,
    pub field: Option<ScalarFieldSpec>,
    pub level: Option<f64>,
}

fn q(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

pub fn equator_model() -> IsoModel {
    IsoModel {
        name: ModelName::Equator,
        g: 1,
        multiplicities: vec![4],
        curvatures: vec![Surd::from_int(0)],
        s_expected: 0,
        theta0_over_pi: Some(q(1, 2)),
        field: Some(ScalarFieldSpec::Coordinate { index: 5 }),
        level: Some(0.0),
    }
}

/// `S^r(√(r/4)) × S^s(√(s/4))`: curvature `√(s/r)` on the first factor
/// and `−√(r/s)` on the second.
pub fn clifford_model(r: usize, s: usize) -> Result<IsoModel, CatalogError> {
    if r + s != 4 || r < 1 || r > s {
        return Err(CatalogError::BadClifford { r, s });
    }
    let (ri, si) = (r as i64, s as i64);
    let big = Surd::sqrt(&q(si, ri));
    let small = -Surd::sqrt(&q(ri, si));
    // cot θ₀ = √(s/r): θ₀ = π/6 for (1,3), π/4 for (2,2).
    let theta0 = match (r, s) {
        (1, 3) => q(1, 6),
        _ => q(1, 4),
    };
    Ok(IsoModel {
        name: ModelName::Clifford { r, s },
        g: 2,
        multiplicities: vec![r, s],
        curvatures: vec![big, small],
        s_expected: 4,
        theta0_over_pi: Some(theta0),
        field: None,
        level: None,
    })
}

/// Cartan's minimal hypersurface, curvatures `cot(π/8 + (k−1)π/4)`.
pub fn cartan_model() -> IsoModel {
    let one = q(1, 1);
    let two = q(2, 1);
    let curvatures = vec![
        Surd::new(one.clone(), one.clone(), &two),  // 1 + √2
        Surd::new(-one.clone(), one.clone(), &two), // √2 − 1
        Surd::new(one.clone(), -one.clone(), &two), // 1 − √2
        Surd::new(-one.clone(), -one, &two),        // −1 − √2
    ];
    IsoModel {
        name: ModelName::Cartan,
        g: 4,
        multiplicities: vec![1, 1, 1, 1],
        curvatures,
        s_expected: 12,
        theta0_over_pi: Some(q(1, 8)),
        field: Some(ScalarFieldSpec::CartanQuartic),
        level: Some(cartan_level(PI / 8.0).expect("pi/8 is in range")),
    }
}

/// The four isoparametric minimal hypersurfaces of S⁵.
pub fn all_models() -> Vec<IsoModel> {
    vec![
        equator_model(),
        clifford_model(1, 3).expect("valid"),
        clifford_model(2, 2).expect("valid"),
        cartan_model(),
    ]
}

/// Level `cos²(2t)` of the Cartan quartic for the member `M⁴(t)`.
pub fn cartan_level(t: f64) -> Result<f64, CatalogError> {
    if !(t > 0.0 && t < PI / 4.0) {
        return Err(CatalogError::BadParameter(t));
    }
    let c = (2.0 * t).cos();
    Ok(c * c)
}

impl IsoModel {
    /// All four principal curvatures with multiplicity, ascending.
    pub fn curvature_list(&self) -> Vec<Surd> {
        let mut out = Vec::with_capacity(4);
        for (lam, &m) in self.curvatures.iter().zip(&self.multiplicities).rev() {
            out.extend(std::iter::repeat_n(lam.clone(), m));
        }
        out
    }

    pub fn curvatures_f64(&self) -> Vec<f64> {
        self.curvature_list().iter().map(Surd::to_f64).collect()
    }

    pub fn power_sum(&self, k: u32) -> Surd {
        self.curvatures
            .iter()
            .zip(&self.multiplicities)
            .fold(Surd::from_int(0), |acc, (lam, &m)| &acc + &(&Surd::from_int(m as i64) * &lam.powi(k)))
    }

    /// Gauss–Kronecker curvature `Π λ_i`.
    pub fn gauss_kronecker(&self) -> Surd {
        self.curvature_list().iter().fold(Surd::from_int(1), |acc, lam| &acc * lam)
    }

    /// Scalar curvature `12 − S` (minimal case).
    pub fn scalar_curvature(&self) -> i64 {
        12 - self.s_expected
    }

    pub fn theta0(&self) -> Option<f64> {
        self.theta0_over_pi.as_ref().and_then(|t| t.to_f64()).map(|t| t * PI)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelCheck {
    pub model: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// `cot(π/g)` for the supported cot-form patterns.
fn cot_pi_over(g: usize) -> Option<Surd> {
    match g {
        2 => Some(Surd::from_int(0)),
        4 => Some(Surd::from_int(1)),
        _ => None,
    }
}

/// Verifies every structural invariant of a model exactly.
pub fn model_check(m: &IsoModel) -> ModelCheck {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check { name, passed, detail });
    };

    let total: usize = m.multiplicities.iter().sum();
    push("multiplicity_sum", total == 4, format!("sum m_k = {total}"));

    let shape_ok = m.curvatures.len() == m.g
        && m.multiplicities.len() == m.g
        && m.curvatures.windows(2).all(|w| w[0] > w[1]);
    push("distinct_descending", shape_ok, format!("g = {}, {} curvature values", m.g, m.curvatures.len()));

    let f1 = m.power_sum(1);
    push("minimal", f1.is_zero(), format!("sum m_k lambda_k = {f1}"));

    let f2 = m.power_sum(2);
    let s = Surd::from_int(m.s_expected);
    push("squared_length", f2 == s, format!("sum m_k lambda_k^2 = {f2}, expected {}", m.s_expected));

    let gauss = (m.g as i64 - 1) * 4;
    push("s_equals_(g-1)n", m.s_expected == gauss, format!("S = {}, (g-1)n = {gauss}", m.s_expected));

    let periodic = m.g > 0
        && (0..m.g).all(|k| m.multiplicities.get(k) == m.multiplicities.get((k + 2) % m.g));
    push("multiplicity_period", periodic, format!("m = {:?}", m.multiplicities));

    if let Some(c) = cot_pi_over(m.g) {
        // cot(θ + π/g) = (cot θ · cot(π/g) − 1) / (cot θ + cot(π/g)); θ₀ ∈ (0, π/g) ⇔ λ₁ > cot(π/g).
        let mut ok = shape_ok && m.curvatures[0] > c;
        for w in m.curvatures.windows(2) {
            let denom = &w[0] + &c;
            ok &= !denom.is_zero() && w[1] == &(&(&w[0] * &c) - &Surd::from_int(1)) / &denom;
        }
        push("cot_form", ok, format!("lambda_(k+1) = cot-shift of lambda_k by pi/{}", m.g));
    }

    if let Some(t) = &m.theta0_over_pi {
        let lower = t > &Rational::zero();
        let upper = t < &(Rational::one() / BigRational::from_integer((m.g as i64).into()));
        let theta = m.theta0().unwrap_or(f64::NAN);
        let lam1 = m.curvatures.first().map(Surd::to_f64).unwrap_or(f64::NAN);
        let cot = theta.cos() / theta.sin();
        let matches = (cot - lam1).abs() <= 1e-12 * (1.0 + lam1.abs());
        let in_range = if m.g == 1 { t == &q(1, 2) } else { lower && upper };
        push("theta0", in_range && matches, format!("theta0 = {t}·pi, cot(theta0) = {cot}, lambda_1 = {lam1}"));
    }

    let r = m.scalar_curvature();
    push("scalar_curvature_nonnegative", r >= 0, format!("R = 12 - S = {r}"));

    let passed = checks.iter().all(|c| c.passed);
    ModelCheck { model: m.name.label(), passed, checks }
}

/// Flattened, serializable view of a model with its check results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSummary {
    pub name: String,
    pub g: usize,
    pub multiplicities: Vec<usize>,
    pub curvatures_exact: Vec<String>,
    pub curvatures: Vec<f64>,
    #[serde(rename = "S")]
    pub s: i64,
    #[serde(rename = "R")]
    pub r: i64,
    pub f3_exact: String,
    pub f3: f64,
    #[serde(rename = "K_exact")]
    pub k_exact: String,
    #[serde(rename = "K")]
    pub k: f64,
    pub theta0: Option<f64>,
    pub theta0_over_pi: Option<String>,
    pub field: Option<ScalarFieldSpec>,
    pub level: Option<f64>,
    pub checks_passed: bool,
    pub checks: Vec<Check>,
}

impl IsoModel {
    pub fn summary(&self) -> ModelSummary {
        let check = model_check(self);
        let f3 = self.power_sum(3);
        let k = self.gauss_kronecker();
        ModelSummary {
            name: self.name.label(),
            g: self.g,
            multiplicities: self.multiplicities.clone(),
            curvatures_exact: self.curvatures.iter().map(|c| c.to_string()).collect(),
            curvatures: self.curvatures.iter().map(Surd::to_f64).collect(),
            s: self.s_expected,
            r: self.scalar_curvature(),
            f3_exact: f3.to_string(),
            f3: f3.to_f64(),
            k_exact: k.to_string(),
            k: k.to_f64(),
            theta0: self.theta0(),
            theta0_over_pi: self.theta0_over_pi.as_ref().map(crate::numeric::rational_string),
            field: self.field.clone(),
            level: self.level,
            checks_passed: check.passed,
            checks: check.checks,
        }
    }
}
