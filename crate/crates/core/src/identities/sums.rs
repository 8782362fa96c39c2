//! The quadratic forms `I_l`, their closed forms, and the Gauss scalar curvature.

use num_traits::{Signed, Zero};

use super::Quadruple;
use crate::numeric::Rational;

/// `R = Σ_{i≠j} (1 + λ_i λ_j)`, which equals `12 + f1² − S`.
pub fn gauss_r(lam: &Quadruple) -> Rational {
    let mut r = Rational::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                r += Rational::from_integer(1.into()) + lam.get(i) * lam.get(j);
            }
        }
    }
    r
}

/// `I_l = Σ_{i<j, i,j≠l} h_iil h_jjl / ((λ_l − λ_i)(λ_l − λ_j))`.
pub fn i_def(lam: &Quadruple, diag: &[[Rational; 4]; 4]) -> [Rational; 4] {
    std::array::from_fn(|l| {
        let mut acc = Rational::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                if i == l || j == l {
                    continue;
                }
                let num = &diag[i][l] * &diag[j][l];
                if num.is_zero() {
                    continue;
                }
                acc += num / ((lam.get(l) - lam.get(i)) * (lam.get(l) - lam.get(j)));
            }
        }
        acc
    })
}

/// `I_l = −K_l²/D² · [bracket_l]`, with the four brackets written out as
/// polynomials in the curvature gaps and `D = Π_{i<j}(λ_j − λ_i)`.
pub fn i_closed(lam: &Quadruple, k: &[Rational; 4]) -> [Rational; 4] {
    let [l1, l2, l3, l4] = lam.values();
    let sq = |x: Rational| &x * &x;
    let brackets: [Rational; 4] = [
        (l4 - l3) * (l4 - l2) * sq(l4 - l1)
            + (l3 - l4) * (l3 - l2) * sq(l3 - l1)
            + (l2 - l4) * (l2 - l3) * sq(l2 - l1),
        (l4 - l3) * sq(l4 - l2) * (l4 - l1)
            + (l3 - l4) * sq(l3 - l2) * (l3 - l1)
            + (l1 - l4) * (l1 - l3) * sq(l1 - l2),
        sq(l4 - l3) * (l4 - l2) * (l4 - l1)
            + (l2 - l4) * sq(l2 - l3) * (l2 - l1)
            + (l1 - l4) * sq(l1 - l3) * (l1 - l2),
        sq(l3 - l4) * (l3 - l2) * (l3 - l1)
            + sq(l2 - l4) * (l2 - l3) * (l2 - l1)
            + sq(l1 - l4) * (l1 - l3) * (l1 - l2),
    ];
    let d2 = sq(lam.vandermonde());
    std::array::from_fn(|l| {
        if k[l].is_zero() {
            return Rational::zero();
        }
        -(&k[l] * &k[l]) * &brackets[l] / &d2
    })
}

/// `I_l ≤ 0` for each `l`, evaluated exactly from the closed forms.
pub fn sign_lemma(lam: &Quadruple, k: &[Rational; 4]) -> [bool; 4] {
    i_closed(lam, k).map(|i| !i.is_positive())
}
