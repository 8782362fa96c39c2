//! Foundational numerics shared by the geometric and exact layers.

mod eigen;
mod jet;
mod rational;
mod rng;
mod surd;

pub use eigen::{sym_eigen, Eigen4, SymMat4};
pub use jet::{Jet2, Scalar, HESS_LEN};
pub use rational::{
    det_exact, parse_rational, rank_exact, rational_from_f64, rational_string, solve_exact,
    Rational,
};
pub use rng::{Draw, DrawKind, RngStream};
pub use surd::Surd;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("invalid float range [{lo}, {hi})")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("rational height must be at least 1, got {0}")]
    InvalidHeight(u64),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("non-finite value {0}")]
    NonFinite(f64),
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
