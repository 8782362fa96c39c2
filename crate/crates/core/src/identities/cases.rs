//! The two- and three-curvature cases.

use num_traits::{Signed, Zero};

use super::{fmt_list, IdentityError};
use crate::numeric::{det_exact, rank_exact, Rational, Surd};

/// Both sign branches `(λ, μ)` of the two-curvature system
/// `kλ + (4−k)μ = 0`, `kλ² + (4−k)μ² = S`.
#[derive(Debug, Clone, PartialEq)]
pub struct G2Branches {
    pub k: usize,
    pub s: Rational,
    pub branches: [(Surd, Surd); 2],
}

impl G2Branches {
    pub fn as_f64(&self) -> [(f64, f64); 2] {
        self.branches.clone().map(|(l, m)| (l.to_f64(), m.to_f64()))
    }

    /// Whether `(λ, μ)` satisfies both equations exactly.
    pub fn satisfies(&self, lam: &Surd, mu: &Surd) -> bool {
        let m1 = Surd::from_int(self.k as i64);
        let m2 = Surd::from_int(4 - self.k as i64);
        let linear = &(&m1 * lam) + &(&m2 * mu);
        let quad = &(&m1 * &(lam * lam)) + &(&m2 * &(mu * mu));
        linear.is_zero() && quad == Surd::rational(self.s.clone())
    }
}

/// Solves for the two curvatures given the multiplicity `k` of `λ` and `S`:
/// `λ = √(k(4−k)S) / (2k)`, `μ = −√(kS) / (2√(4−k))`, and the negated branch.
pub fn g2_solve(k: usize, s: &Rational) -> Result<G2Branches, IdentityError> {
    if !(1..=3).contains(&k) {
        return Err(IdentityError::BadMultiplicity(k));
    }
    if s.is_negative() {
        return Err(IdentityError::NegativeS(crate::numeric::rational_string(s)));
    }
    if s.is_zero() {
        return Err(IdentityError::Degenerate);
    }
    let ki = k as i64;
    let root = Surd::sqrt(&(Rational::from_integer((ki * (4 - ki)).into()) * s));
    let lam = &root / &Surd::from_int(2 * ki);
    // √(kS)/√(4−k) = √(k(4−k)S)/(4−k)
    let mu = -(&root / &Surd::from_int(2 * (4 - ki)));
    let out = G2Branches { k, s: s.clone(), branches: [(lam.clone(), mu.clone()), (-lam, -mu)] };
    if !out.branches.iter().all(|(l, m)| out.satisfies(l, m)) {
        return Err(IdentityError::Postcondition("g2 branch fails its system"));
    }
    Ok(out)
}

/// Kernel of the linearized three-curvature system.
#[derive(Debug, Clone, PartialEq)]
pub struct G3Kernel {
    pub kernel_dim: usize,
    pub det: Rational,
    /// `pqr (μ−λ)(σ−λ)(σ−μ)`.
    pub det_formula: Rational,
}

/// Kernel dimension of `[[p,q,r],[pλ,qμ,rσ],[pλ²,qμ²,rσ²]]` acting on
/// `(dλ, dμ, dσ)`.
pub fn g3_kernel(mult: [usize; 3], vals: &[Rational; 3]) -> Result<G3Kernel, IdentityError> {
    let [p, q, r] = mult;
    if p == 0 || q == 0 || r == 0 || p + q + r != 4 {
        return Err(IdentityError::BadMultiplicities(p, q, r));
    }
    let [l, m, s] = vals;
    if l == m || l == s || m == s {
        return Err(IdentityError::RepeatedValues(fmt_list(vals)));
    }
    let w: [Rational; 3] = mult.map(|x| Rational::from_integer((x as i64).into()));
    let rows: Vec<Vec<Rational>> = (0..3u32)
        .map(|pow| (0..3).map(|c| &w[c] * num_traits::pow(vals[c].clone(), pow as usize)).collect())
        .collect();
    let rank = rank_exact(&rows);
    let det = det_exact(&rows);
    let det_formula = &w[0] * &w[1] * &w[2] * (m - l) * (s - l) * (s - m);
    Ok(G3Kernel { kernel_dim: 3 - rank, det, det_formula })
}
