//! Scalar coefficient of the exterior derivative of the connection 3-form
//!
//! ```text
//! ψ = Σ_{i<j} ⋆(ω_i ∧ ω_j) ∧ ω_ij
//! ```
//!
//! in a frame diagonalizing `h`. Each of the six terms `ω_a ∧ ω_b ∧ ω_cd`
//! (all even permutations of 0123, so `ω_a∧ω_b∧ω_c∧ω_d = ⋆1`) differentiates to
//!
//! ```text
//! dω_a∧ω_b∧ω_cd − ω_a∧dω_b∧ω_cd + ω_a∧ω_b∧dω_cd
//! ```
//!
//! and each piece is a rational function of `λ` and `h_ijk` obtained from the
//! structure equations, `ω_ij = Σ_k h_ijk ω_k / (λ_j − λ_i)`, total symmetry
//! of `h_ijk`, and `R_cdcd = 1 + λ_c λ_d`.

use super::vandermonde::DerivativeTable;
use crate::numeric::Rational;

/// `(a, b, c, d)` for the six terms `ω_a ∧ ω_b ∧ ω_cd` of ψ.
pub const PSI_TERMS: [(usize, usize, usize, usize); 6] =
    [(0, 1, 2, 3), (1, 2, 0, 3), (2, 0, 1, 3), (0, 3, 1, 2), (1, 3, 2, 0), (2, 3, 0, 1)];

/// The three pieces of `d(ω_a ∧ ω_b ∧ ω_cd)` as multiples of `⋆1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DpsiPieces {
    /// `dω_a ∧ ω_b ∧ ω_cd`
    pub d_first: Rational,
    /// `ω_a ∧ dω_b ∧ ω_cd`
    pub d_second: Rational,
    /// `ω_a ∧ ω_b ∧ dω_cd`
    pub d_connection: Rational,
}

impl DpsiPieces {
    pub fn total(&self) -> Rational {
        &self.d_first - &self.d_second + &self.d_connection
    }
}

/// `h_xxc h_ddc/((λ_c−λ_x)(λ_c−λ_d)) + h_xxd h_ccd/((λ_d−λ_x)(λ_d−λ_c))
///  + h_xcd²/((λ_c−λ_x)(λ_d−λ_x))`
fn frame_bracket(t: &DerivativeTable, x: usize, c: usize, d: usize) -> Rational {
    let (lx, lc, ld) = (t.lam(x), t.lam(c), t.lam(d));
    let mixed = t.h(x, c, d);
    t.h(x, x, c) * t.h(d, d, c) / ((lc - lx) * (lc - ld))
        + t.h(x, x, d) * t.h(c, c, d) / ((ld - lx) * (ld - lc))
        + mixed * mixed / ((lc - lx) * (ld - lx))
}

/// Coefficient of `ω_c ∧ ω_d` in `−ω_cy ∧ ω_yd` for `y ∉ {c, d}`.
fn connection_product(t: &DerivativeTable, y: usize, c: usize, d: usize) -> Rational {
    let (ly, lc, ld) = (t.lam(y), t.lam(c), t.lam(d));
    let mixed = t.h(y, c, d);
    (t.h(c, c, y) * t.h(d, d, y) - mixed * mixed) / ((lc - ly) * (ld - ly))
}

pub fn dpsi_term(t: &DerivativeTable, (a, b, c, d): (usize, usize, usize, usize)) -> DpsiPieces {
    let curvature = Rational::from_integer(1.into()) + t.lam(c) * t.lam(d);
    DpsiPieces {
        d_first: -frame_bracket(t, a, c, d),
        d_second: frame_bracket(t, b, c, d),
        d_connection: connection_product(t, a, c, d) + connection_product(t, b, c, d) + curvature,
    }
}

/// Sum of the six term coefficients: `dψ = dpsi_coeff · ⋆1`.
pub fn dpsi_coeff(t: &DerivativeTable) -> Rational {
    PSI_TERMS.iter().map(|&idx| dpsi_term(t, idx).total()).sum()
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::{gauss_r, i_closed, Quadruple};
    use super::*;

    fn table(lam: [i64; 4], k: [i64; 4], mixed: [i64; 4]) -> DerivativeTable {
        DerivativeTable::new(quad(lam), ints(k), ints(mixed)).unwrap()
    }

    #[test]
    fn terms_are_even_permutations_covering_all_pairs() {
        let mut pairs = Vec::new();
        for (a, b, c, d) in PSI_TERMS {
            let p = [a, b, c, d];
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(inversions % 2, 0);
            pairs.push((c.min(d), c.max(d)));
        }
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn example_without_mixed() {
        let t = table([1, 2, 3, 4], [1, 1, 1, 1], [0; 4]);
        assert_eq!(dpsi_coeff(&t), q(373, 9));
    }

    #[test]
    fn mixed_components_cancel() {
        let t = table([1, 2, 3, 4], [1, 1, 1, 1], [7, -3, 5, 11]);
        assert_eq!(dpsi_coeff(&t), q(373, 9));
    }

    #[test]
    fn minimal_without_gradient() {
        let lam = quad([-4, -1, 2, 3]);
        let s = lam.power_sum(2);
        let t = DerivativeTable::new(lam, ints([0; 4]), ints([0; 4])).unwrap();
        assert_eq!(dpsi_coeff(&t), (q(12, 1) - s) / q(2, 1));
    }

    #[test]
    fn first_piece_matches_expanded_form() {
        // dω_1∧ω_2∧ω_34 = −[h113 h443/((λ3−λ1)(λ3−λ4)) + h114 h334/((λ4−λ1)(λ4−λ3))
        //                   + h134²/((λ3−λ1)(λ4−λ1))] ⋆1, 1-based.
        let lam = Quadruple::new([q(-2, 1), q(1, 3), q(3, 2), q(5, 1)]).unwrap();
        let t = DerivativeTable::new(lam, [q(2, 1), q(-1, 1), q(3, 4), q(1, 5)], [q(1, 1), q(2, 1), q(-3, 1), q(4, 7)])
            .unwrap();
        let l = |i: usize| t.lam(i).clone();
        let h = |i, j, k| t.h(i, j, k).clone();
        let expected = -(h(0, 0, 2) * h(3, 3, 2) / ((l(2) - l(0)) * (l(2) - l(3)))
            + h(0, 0, 3) * h(2, 2, 3) / ((l(3) - l(0)) * (l(3) - l(2)))
            + h(0, 2, 3) * h(0, 2, 3) / ((l(2) - l(0)) * (l(3) - l(0))));
        assert_eq!(dpsi_term(&t, PSI_TERMS[0]).d_first, expected);
        let identity = gauss_r(&t.lam) / q(2, 1) - i_closed(&t.lam, &t.k).into_iter().sum::<Rational>();
        assert_eq!(dpsi_coeff(&t), identity);
    }
}

#[cfg(test)]
mod sign_variant {
    use num_traits::Zero;

    use super::super::testutil::*;
    use super::*;

    /// Term `(0,1;2,3)` expanded by hand with `+h_113 h_223` in place of the
    /// derived `−h_113 h_223`.
    fn flipped(t: &DerivativeTable) -> Rational {
        let l = |i: usize| t.lam(i).clone();
        let h = |i, j, k| t.h(i, j, k).clone();
        let two = q(2, 1);
        h(2, 2, 0) * h(3, 3, 0) / ((l(2) - l(0)) * (l(3) - l(0)))
            + h(2, 2, 1) * h(3, 3, 1) / ((l(2) - l(1)) * (l(3) - l(1)))
            - h(0, 0, 2) * h(3, 3, 2) / ((l(2) - l(0)) * (l(2) - l(3)))
            - h(0, 0, 3) * h(2, 2, 3) / ((l(3) - l(0)) * (l(3) - l(2)))
            - h(1, 1, 2) * h(3, 3, 2) / ((l(2) - l(1)) * (l(2) - l(3)))
            + h(1, 1, 3) * h(2, 2, 3) / ((l(3) - l(1)) * (l(3) - l(2)))
            - &two * h(0, 2, 3) * h(0, 2, 3) / ((l(2) - l(0)) * (l(3) - l(0)))
            - &two * h(1, 2, 3) * h(1, 2, 3) / ((l(2) - l(1)) * (l(3) - l(1)))
            + q(1, 1)
            + l(2) * l(3)
    }

    #[test]
    fn flipped_sign_breaks_the_term() {
        let t = DerivativeTable::new(quad([1, 2, 3, 5]), ints([2, -1, 3, 1]), ints([1, 2, -3, 4])).unwrap();
        let ours = dpsi_term(&t, PSI_TERMS[0]).total();
        let l = |i: usize| t.lam(i).clone();
        let term = t.h(1, 1, 3) * t.h(2, 2, 3) / ((l(3) - l(1)) * (l(3) - l(2)));
        assert!(!term.is_zero());
        assert_eq!(flipped(&t) - ours, q(2, 1) * term);
    }
}
