//! Diagonal components `h_iil` of ∇h from the gradient of `K = det h`.
//!
//! Differentiating `Σλ_i = 0`, `Σλ_i² = S` and `Σλ_i³ = f3` gives, for each
//! direction `l`, three linear equations in `(h_00l, …, h_33l)`; the gradient
//! component `K_l = Σ_i h_iil Π_{j≠i} λ_j` pins down the remaining degree of
//! freedom. The solution is `h_iil = K_l / Π_{j≠i}(λ_j − λ_i)`.

use num_traits::Zero;

use super::{IdentityError, Quadruple};
use crate::numeric::{solve_exact, Rational};

/// Exact parameterization of ∇h at a point in a frame diagonalizing `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTable {
    pub lam: Quadruple,
    /// Components of `dK`.
    pub k: [Rational; 4],
    /// `h_012, h_013, h_023, h_123`.
    pub mixed: [Rational; 4],
    /// `diag[i][l] = h_iil`.
    pub diag: [[Rational; 4]; 4],
}

impl DerivativeTable {
    pub fn new(lam: Quadruple, k: [Rational; 4], mixed: [Rational; 4]) -> Result<Self, IdentityError> {
        let diag = diag_from_k(&lam, &k)?;
        Ok(DerivativeTable { lam, k, mixed, diag })
    }

    /// `h_ijk` of the totally symmetric tensor ∇h.
    pub fn h(&self, i: usize, j: usize, k: usize) -> &Rational {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        match idx {
            [a, b, c] if a == b && b == c => &self.diag[a][a],
            [a, b, c] if a == b => &self.diag[a][c],
            [a, b, c] if b == c => &self.diag[b][a],
            [0, 1, 2] => &self.mixed[0],
            [0, 1, 3] => &self.mixed[1],
            [0, 2, 3] => &self.mixed[2],
            [1, 2, 3] => &self.mixed[3],
            _ => unreachable!("indices are below 4"),
        }
    }

    /// `λ_l` shorthand.
    pub fn lam(&self, l: usize) -> &Rational {
        self.lam.get(l)
    }
}

fn constraint_residuals(lam: &Quadruple, col: &[Rational; 4]) -> [Rational; 3] {
    std::array::from_fn(|pow| {
        (0..4).fold(Rational::zero(), |acc, i| acc + num_traits::pow(lam.get(i).clone(), pow) * &col[i])
    })
}

/// `h_iil = K_l / Π_{j≠i}(λ_j − λ_i)` for all `i, l`.
pub fn diag_from_k(lam: &Quadruple, k: &[Rational; 4]) -> Result<[[Rational; 4]; 4], IdentityError> {
    let gaps: [Rational; 4] = std::array::from_fn(|i| lam.gap_product(i));
    let diag: [[Rational; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|l| &k[l] / &gaps[i]));
    for l in 0..4 {
        let col: [Rational; 4] = std::array::from_fn(|i| diag[i][l].clone());
        if constraint_residuals(lam, &col).iter().any(|r| !r.is_zero()) {
            return Err(IdentityError::Postcondition("diagonal column violates the power-sum constraints"));
        }
    }
    Ok(diag)
}

/// Solves `Σ_i λ_i^p h_iil = 0 (p = 0, 1, 2)`, `Σ_i h_iil Π_{j≠i} λ_j = K_l`
/// by exact elimination and returns `(h_00l, h_11l, h_22l, h_33l)`.
pub fn diag_from_system(lam: &Quadruple, k_l: &Rational, l: usize) -> Result<[Rational; 4], IdentityError> {
    if l >= 4 {
        return Err(IdentityError::BadIndex(l));
    }
    let l4 = lam.values();
    let mut rows: Vec<Vec<Rational>> = (0..3usize)
        .map(|p| l4.iter().map(|x| num_traits::pow(x.clone(), p)).collect())
        .collect();
    rows.push(
        (0..4)
            .map(|i| {
                (0..4)
                    .filter(|&j| j != i)
                    .fold(Rational::from_integer(1.into()), |acc, j| acc * &l4[j])
            })
            .collect(),
    );
    let rhs = [Rational::zero(), Rational::zero(), Rational::zero(), k_l.clone()];
    let x = solve_exact(&rows, &rhs).ok_or(IdentityError::Postcondition("singular Vandermonde-type system"))?;
    Ok([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()])
}
