//! Second-order forward-mode jets over ℝ⁶.
//!
//! A [`Jet2`] carries a value together with the full gradient and Hessian
//! (upper triangle) with respect to six ambient coordinates. Arithmetic
//! applies the sum, product and Leibniz rules directly, so for polynomial
//! fields the result is exact in [`Rational`](super::Rational) mode.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

const N: usize = 6;
/// Length of the packed upper triangle of a 6×6 symmetric matrix.
pub const HESS_LEN: usize = N * (N + 1) / 2;

/// Ring elements a jet can be built over.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Exact image of a finite double; `None` for non-finite input.
    fn from_f64(x: f64) -> Option<Self>;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }
}

impl Scalar for BigRational {
    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * N - (i * i - i) / 2 + j - i
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet2<T> {
    pub value: T,
    pub grad: [T; N],
    hess: [T; HESS_LEN],
}

impl<T: Scalar> Jet2<T> {
    pub fn constant(c: T) -> Self {
        Jet2 {
            value: c,
            grad: std::array::from_fn(|_| T::zero()),
            hess: std::array::from_fn(|_| T::zero()),
        }
    }

    /// The coordinate function `x_i` evaluated at `value`.
    pub fn variable(i: usize, value: T) -> Self {
        let mut j = Self::constant(value);
        j.grad[i] = T::one();
        j
    }

    pub fn hess(&self, i: usize, j: usize) -> &T {
        &self.hess[packed(i, j)]
    }

    pub fn hess_matrix(&self) -> [[T; N]; N] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.hess(i, j).clone()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Jet2 {
            value: self.value.clone() * c.clone(),
            grad: std::array::from_fn(|i| self.grad[i].clone() * c.clone()),
            hess: std::array::from_fn(|k| self.hess[k].clone() * c.clone()),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::constant(T::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a, T: Scalar> Add for &'a Jet2<T> {
    type Output = Jet2<T>;
    fn add(self, rhs: &'a Jet2<T>) -> Jet2<T> {
        Jet2 {
            value: self.value.clone() + rhs.value.clone(),
            grad: std::array::from_fn(|i| self.grad[i].clone() + rhs.grad[i].clone()),
            hess: std::array::from_fn(|k| self.hess[k].clone() + rhs.hess[k].clone()),
        }
    }
}

impl<'a, T: Scalar> Sub for &'a Jet2<T> {
    type Output = Jet2<T>;
    fn sub(self, rhs: &'a Jet2<T>) -> Jet2<T> {
        Jet2 {
            value: self.value.clone() - rhs.value.clone(),
            grad: std::array::from_fn(|i| self.grad[i].clone() - rhs.grad[i].clone()),
            hess: std::array::from_fn(|k| self.hess[k].clone() - rhs.hess[k].clone()),
        }
    }
}

impl<'a, T: Scalar> Mul for &'a Jet2<T> {
    type Output = Jet2<T>;
    fn mul(self, rhs: &'a Jet2<T>) -> Jet2<T> {
        let (u, v) = (&self.value, &rhs.value);
        let mut hess: [T; HESS_LEN] = std::array::from_fn(|_| T::zero());
        for i in 0..N {
            for j in i..N {
                hess[packed(i, j)] = u.clone() * rhs.hess(i, j).clone()
                    + v.clone() * self.hess(i, j).clone()
                    + self.grad[i].clone() * rhs.grad[j].clone()
                    + self.grad[j].clone() * rhs.grad[i].clone();
            }
        }
        Jet2 {
            value: u.clone() * v.clone(),
            grad: std::array::from_fn(|i| {
                u.clone() * rhs.grad[i].clone() + v.clone() * self.grad[i].clone()
            }),
            hess,
        }
    }
}

impl<T: Scalar> Neg for &Jet2<T> {
    type Output = Jet2<T>;
    fn neg(self) -> Jet2<T> {
        Jet2 {
            value: -self.value.clone(),
            grad: std::array::from_fn(|i| -self.grad[i].clone()),
            hess: std::array::from_fn(|k| -self.hess[k].clone()),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Jet2<T> {
            type Output = Jet2<T>;
            fn $m(self, rhs: Jet2<T>) -> Jet2<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_index_is_a_bijection_onto_the_upper_triangle() {
        let mut seen = [false; HESS_LEN];
        for i in 0..N {
            for j in i..N {
                let k = packed(i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(k, packed(j, i));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn product_of_variables() {
        let x = Jet2::variable(0, 2.0);
        let y = Jet2::variable(3, 5.0);
        let p = &(&x * &y) * &x;
        // x²y
        assert_eq!(p.value, 20.0);
        assert_eq!(p.grad[0], 20.0);
        assert_eq!(p.grad[3], 4.0);
        assert_eq!(*p.hess(0, 0), 10.0);
        assert_eq!(*p.hess(0, 3), 4.0);
        assert_eq!(*p.hess(3, 0), 4.0);
        assert_eq!(*p.hess(3, 3), 0.0);
    }
}
