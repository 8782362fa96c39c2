//! Principal curvatures from their invariants.
//!
//! Power sums `p1, p2, p3` and the product `e4` determine the elementary
//! symmetric functions through Newton's identities, hence the characteristic
//! quartic `x⁴ − e1 x³ + e2 x² − e3 x + e4`. Its roots are found with
//! Aberth–Ehrlich iteration; clusters of nearby roots produced by rounding
//! of a multiple root are merged and re-polished on the appropriate
//! derivative, which keeps repeated curvatures accurate to near machine
//! precision instead of the cube root of it.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::IdentityError;
use crate::numeric::Rational;

/// Largest |Im| (relative to `1 + |Re|`) accepted for a simple real root.
/// A merged multiple root may sit anywhere inside its rounding radius.
pub const IMAG_TOL: f64 = 1e-10;
const MAX_ITER: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct Recovered {
    /// Ascending, with repetition.
    pub roots: [f64; 4],
    /// Sizes of groups of equal roots, ascending by value.
    pub multiplicities: Vec<usize>,
    /// `[1, −e1, e2, −e3, e4]`.
    pub coefficients: [f64; 5],
}

/// Newton's identities: `(e1, e2, e3)` from `(p1, p2, p3)`.
pub fn elementary_from_power_sums(p1: f64, p2: f64, p3: f64) -> (f64, f64, f64) {
    let e1 = p1;
    let e2 = (p1 * p1 - p2) / 2.0;
    let e3 = (p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0;
    (e1, e2, e3)
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    c[..n].iter().enumerate().map(|(i, &a)| a * (n - i) as f64).collect()
}

/// All complex roots of a monic polynomial (coefficients highest first).
fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let dc = derivative(c);
    let bound = 1.0 + c[1..].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..MAX_ITER {
        let mut worst = 0.0f64;
        for k in 0..n {
            let p = horner(c, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dp = horner(&dc, z[k]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let ratio = p / dp;
            let w = if ratio.is_finite() { ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion) } else { Complex64::new(1e-3, 1e-3) };
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            worst = worst.max(w.norm() / (1.0 + z[k].norm()));
        }
        if worst <= 4.0 * f64::EPSILON {
            break;
        }
    }
    z
}

/// Spread below which an `m`-cluster centred at `c` is taken to be one root
/// of multiplicity `m`: ten times the radius over which rounding in the
/// evaluation of `P` can scatter an exact `m`-fold root.
fn cluster_radius(poly: &[f64], c: Complex64, m: usize) -> f64 {
    let r = c.norm();
    let noise = 4.0 * f64::EPSILON * poly.iter().fold(0.0, |acc, a| acc * r + a.abs());
    let mut d = poly.to_vec();
    let mut factorial = 1.0;
    for k in 1..=m {
        d = derivative(&d);
        factorial *= k as f64;
    }
    let curvature = horner(&d, c).norm() / factorial;
    if curvature == 0.0 {
        return f64::INFINITY;
    }
    10.0 * (noise / curvature).powf(1.0 / m as f64)
}

fn polish_real(c: &[f64], x0: f64, m: usize) -> f64 {
    // The (m−1)-th derivative has a simple root at an m-fold root.
    let mut d = c.to_vec();
    for _ in 1..m {
        d = derivative(&d);
    }
    let dd = derivative(&d);
    let eval = |poly: &[f64], x: f64| poly.iter().fold(0.0, |acc, &a| acc * x + a);
    let mut x = x0;
    for _ in 0..8 {
        let fx = eval(&d, x);
        let dfx = eval(&dd, x);
        if fx == 0.0 || dfx == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        if !next.is_finite() || eval(&d, next).abs() >= fx.abs() {
            break;
        }
        x = next;
    }
    x
}

/// Real principal curvatures with power sums `p1, p2, p3` and product `e4`.
pub fn recover_curvatures(p1: f64, p2: f64, p3: f64, e4: f64) -> Result<Recovered, IdentityError> {
    for v in [p1, p2, p3, e4] {
        if !v.is_finite() {
            return Err(IdentityError::NonFinite(v));
        }
    }
    let (e1, e2, e3) = elementary_from_power_sums(p1, p2, p3);
    roots_of([1.0, -e1, e2, -e3, e4])
}

/// Same as [`recover_curvatures`] with the symmetric functions formed exactly.
pub fn recover_from_rationals(
    p1: &Rational,
    p2: &Rational,
    p3: &Rational,
    e4: &Rational,
) -> Result<Recovered, IdentityError> {
    let two = Rational::from_integer(2.into());
    let six = Rational::from_integer(6.into());
    let three = Rational::from_integer(3.into());
    let e2 = (p1 * p1 - p2) / &two;
    let e3 = (p1 * p1 * p1 - &three * p1 * p2 + &two * p3) / &six;
    let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
    roots_of([1.0, -f(p1), f(&e2), -f(&e3), f(e4)])
}

fn roots_of(coefficients: [f64; 5]) -> Result<Recovered, IdentityError> {
    let mut poly: Vec<f64> = coefficients.to_vec();
    let mut zeros = 0;
    while poly.len() > 1 && *poly.last().expect("nonempty") == 0.0 {
        poly.pop();
        zeros += 1;
    }
    let mut z = aberth(&poly);
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    // Single-linkage candidates, accepted as a multiple root only when tight enough.
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for r in z {
        match groups.last_mut() {
            Some(g) if g.iter().any(|x| (x - r).norm() <= 1e-3 * (1.0 + r.norm())) => g.push(r),
            _ => groups.push(vec![r]),
        }
    }
    // (centroid, multiplicity, admissible |Im|)
    let mut clusters: Vec<(Complex64, usize, f64)> = Vec::new();
    for g in groups {
        let m = g.len();
        let centroid = g.iter().sum::<Complex64>() / m as f64;
        let spread = g.iter().flat_map(|a| g.iter().map(move |b| (a - b).norm())).fold(0.0, f64::max);
        let simple_tol = |c: Complex64| IMAG_TOL * (1.0 + c.re.abs());
        let radius = if m == 1 { 0.0 } else { cluster_radius(&poly, centroid, m) };
        if m == 1 || spread <= radius {
            clusters.push((centroid, m, simple_tol(centroid).max(radius)));
        } else {
            clusters.extend(g.into_iter().map(|r| (r, 1, simple_tol(r))));
        }
    }

    let complex: Vec<(f64, f64)> = clusters
        .iter()
        .filter(|(c, _, tol)| c.im.abs() > *tol)
        .map(|(c, _, _)| (c.re, c.im))
        .collect();
    if !complex.is_empty() {
        return Err(IdentityError::ComplexRoots(complex));
    }

    let mut real: Vec<(f64, usize)> = clusters.into_iter().map(|(c, m, _)| (polish_real(&poly, c.re, m), m)).collect();
    if zeros > 0 {
        real.push((0.0, zeros));
    }
    real.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut roots = [0.0; 4];
    let mut i = 0;
    for &(x, m) in &real {
        for _ in 0..m {
            roots[i] = x;
            i += 1;
        }
    }
    Ok(Recovered { roots, multiplicities: real.iter().map(|r| r.1).collect(), coefficients })
}
