//! Exact checks of the algebraic steps in the rigidity argument.
//!
//! Everything here runs on [`Rational`] inputs with no floating-point
//! intermediates, except [`recover_curvatures`], which solves a quartic.
//! Indices are 0-based: `lam[0] < lam[1] < lam[2] < lam[3]`.

mod cases;
mod dpsi;
mod recover;
mod sums;
mod sweep;
mod vandermonde;

pub use cases::{g2_solve, g3_kernel, G2Branches, G3Kernel};
pub use dpsi::{dpsi_coeff, dpsi_term, PSI_TERMS};
pub use recover::{recover_curvatures, recover_from_rationals, Recovered};
pub use sums::{gauss_r, i_closed, i_def, sign_lemma};
pub use sweep::{run_sweep, Counterexample, IdentityKind, IdentityVerdict, SweepConfig};
pub use vandermonde::{diag_from_k, diag_from_system, DerivativeTable};

use num_traits::Zero;
use thiserror::Error;

use crate::numeric::{rational_string, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error("curvatures must be strictly increasing: {0}")]
    NotIncreasing(String),
    #[error("repeated curvature values: {0}")]
    RepeatedValues(String),
    #[error("multiplicity k = {0} must be 1, 2 or 3")]
    BadMultiplicity(usize),
    #[error("multiplicities ({0}, {1}, {2}) must be positive and sum to 4")]
    BadMultiplicities(usize, usize, usize),
    #[error("degenerate: S = 0 forces equal curvatures")]
    Degenerate,
    #[error("S must be nonnegative, got {0}")]
    NegativeS(String),
    #[error("component index {0} out of range 0..4")]
    BadIndex(usize),
    #[error("invariants admit non-real curvatures: {0:?}")]
    ComplexRoots(Vec<(f64, f64)>),
    #[error("non-finite invariant {0}")]
    NonFinite(f64),
    #[error("invalid sweep configuration: {0}")]
    BadConfig(String),
    #[error("internal postcondition violated: {0}")]
    Postcondition(&'static str),
}

/// Four principal curvatures, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadruple {
    lam: [Rational; 4],
}

impl Quadruple {
    pub fn new(lam: [Rational; 4]) -> Result<Self, IdentityError> {
        if lam.windows(2).any(|w| w[0] >= w[1]) {
            return Err(IdentityError::NotIncreasing(fmt_list(&lam)));
        }
        Ok(Quadruple { lam })
    }

    /// Sorts the values; fails only on a collision.
    pub fn from_unsorted(mut lam: [Rational; 4]) -> Result<Self, IdentityError> {
        lam.sort();
        if lam.windows(2).any(|w| w[0] == w[1]) {
            return Err(IdentityError::RepeatedValues(fmt_list(&lam)));
        }
        Ok(Quadruple { lam })
    }

    pub fn values(&self) -> &[Rational; 4] {
        &self.lam
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.lam[i]
    }

    /// `Π_{j≠i} (λ_j − λ_i)`.
    pub fn gap_product(&self, i: usize) -> Rational {
        (0..4)
            .filter(|&j| j != i)
            .fold(Rational::from_integer(1.into()), |acc, j| acc * (&self.lam[j] - &self.lam[i]))
    }

    /// `D = Π_{i<j} (λ_j − λ_i)`.
    pub fn vandermonde(&self) -> Rational {
        let mut d = Rational::from_integer(1.into());
        for i in 0..4 {
            for j in i + 1..4 {
                d *= &self.lam[j] - &self.lam[i];
            }
        }
        d
    }

    pub fn power_sum(&self, k: u32) -> Rational {
        self.lam.iter().fold(Rational::zero(), |acc, l| acc + num_traits::pow(l.clone(), k as usize))
    }
}

pub(crate) fn fmt_list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational_string).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use num_rational::BigRational;

    pub fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    pub fn quad(v: [i64; 4]) -> Quadruple {
        Quadruple::new(v.map(|x| q(x, 1))).unwrap()
    }

    pub fn ints(v: [i64; 4]) -> [Rational; 4] {
        v.map(|x| q(x, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;

    #[test]
    fn ordering_enforced() {
        assert!(Quadruple::new(ints([1, 2, 2, 3])).is_err());
        assert!(Quadruple::new(ints([2, 1, 3, 4])).is_err());
        assert_eq!(Quadruple::from_unsorted(ints([4, 1, 3, 2])).unwrap(), quad([1, 2, 3, 4]));
        assert!(matches!(Quadruple::from_unsorted(ints([4, 1, 4, 2])), Err(IdentityError::RepeatedValues(_))));
    }

    #[test]
    fn vandermonde_and_gaps() {
        let l = quad([1, 2, 3, 4]);
        assert_eq!(l.vandermonde(), q(12, 1));
        assert_eq!(l.gap_product(0), q(6, 1));
        assert_eq!(l.gap_product(1), q(-2, 1));
        assert_eq!(l.power_sum(2), q(30, 1));
    }
}
