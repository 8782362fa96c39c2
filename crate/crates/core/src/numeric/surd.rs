//! Exact arithmetic in a real quadratic field ℚ(√d).
//!
//! The closed-form principal curvatures of the catalog all live in ℚ(√2) or
//! ℚ(√3), so every catalog invariant can be checked with no rounding at all.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Decimal digits used when rounding a surd to `f64`.
const EVAL_DIGITS: usize = 60;
/// Largest prime tried when stripping square factors from the radicand.
const SQUARE_STRIP_LIMIT: u64 = 10_000;

/// `a + b·√d` with `a, b ∈ ℚ` and `d` a positive integer.
///
/// Values are kept canonical: `b = 0 ⇒ d = 1`, and square factors of `d` found
/// by trial division are moved into `b`. Binary operations require both
/// operands to share `d` unless one of them is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd { a, b: Rational::zero(), d: BigInt::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `a + b·√r` for a nonnegative rational radicand `r`.
    pub fn new(a: Rational, b: Rational, radicand: &Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        // √(p/q) = √(pq)/q
        let d = radicand.numer() * radicand.denom();
        let b = b / BigRational::from_integer(radicand.denom().clone());
        let mut s = Surd { a, b, d };
        s.canonicalize();
        s
    }

    /// `√r`.
    pub fn sqrt(radicand: &Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), radicand)
    }

    fn canonicalize(&mut self) {
        if self.d.is_zero() || self.b.is_zero() {
            self.b = Rational::zero();
            self.d = BigInt::one();
            return;
        }
        let mut outside = BigInt::one();
        let mut rest = self.d.clone();
        let mut p = 2u64;
        while p <= SQUARE_STRIP_LIMIT {
            let pp = BigInt::from(p * p);
            if pp > rest {
                break;
            }
            while (&rest % &pp).is_zero() {
                rest /= &pp;
                outside *= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        let root = rest.sqrt();
        if &root * &root == rest {
            outside *= root;
            rest = BigInt::one();
        }
        self.b = &self.b * BigRational::from_integer(outside);
        self.d = rest;
        if self.d.is_one() {
            self.a = &self.a + &self.b;
            self.b = Rational::zero();
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn field(&self, other: &Surd) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "surds from different quadratic fields");
                self.d.clone()
            }
        }
    }

    fn build(a: Rational, b: Rational, d: BigInt) -> Self {
        let mut s = Surd { a, b, d };
        s.canonicalize();
        s
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        Surd { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Surd::build(c.a / &n, c.b / &n, c.d))
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with d b².
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        (0..k).fold(Surd::from_int(1), |acc, _| &acc * self)
    }

    /// Rational approximation with [`EVAL_DIGITS`] correct decimals.
    pub fn approx_rational(&self) -> Rational {
        if self.is_rational() {
            return self.a.clone();
        }
        // b√d = sign(b)·√(b² d) = sign(b)·√(P/Q) ≈ isqrt(P Q 10^2k) / (Q 10^k)
        let r = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        let scale = num_traits::pow(BigInt::from(10), EVAL_DIGITS);
        let root = (r.numer() * r.denom() * &scale * &scale).sqrt();
        let mut tail = BigRational::new(root, r.denom() * &scale);
        if self.b.is_negative() {
            tail = -tail;
        }
        &self.a + tail
    }

    /// Nearest double, evaluated through [`Surd::approx_rational`].
    pub fn to_f64(&self) -> f64 {
        self.approx_rational().to_f64().unwrap_or(f64::NAN)
    }
}

fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self - other).signum().cmp(&0))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use super::rational_string;
        if self.is_rational() {
            return write!(f, "{}", rational_string(&self.a));
        }
        if !self.a.is_zero() {
            write!(f, "{} + ", rational_string(&self.a))?;
        }
        write!(f, "{}*sqrt({})", rational_string(&self.b), self.d)
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let d = self.field(rhs);
        Surd::build(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let d = self.field(rhs);
        Surd::build(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let d = self.field(rhs);
        let dq = BigRational::from_integer(d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Surd::build(a, b, d)
    }
}

impl Div for &Surd {
    type Output = Surd;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Surd) -> Surd {
        self * &rhs.recip().expect("division by zero surd")
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_factors_are_pulled_out() {
        let s = Surd::sqrt(&q(12, 1));
        assert_eq!(s.radicand(), &BigInt::from(3));
        assert_eq!(s.surd_part(), &q(2, 1));
        assert!(Surd::sqrt(&q(9, 4)).is_rational());
        assert_eq!(Surd::sqrt(&q(9, 4)), Surd::rational(q(3, 2)));
    }

    #[test]
    fn field_arithmetic() {
        let r2 = Surd::sqrt(&q(2, 1));
        let one = Surd::from_int(1);
        let x = &r2 + &one;
        let y = &r2 - &one;
        assert_eq!(&x * &y, one);
        assert_eq!(&one / &x, y);
        assert_eq!((&r2 * &r2), Surd::from_int(2));
    }

    #[test]
    fn sign_and_order_are_exact() {
        let r2 = Surd::sqrt(&q(2, 1));
        // 1.4142 vs 99/70 = 1.41428...
        let approx = Surd::rational(q(99, 70));
        assert!(r2 < approx);
        assert_eq!((&Surd::from_int(1) - &r2).signum(), -1);
        assert_eq!(Surd::from_int(0).signum(), 0);
    }

    #[test]
    fn high_precision_rounding() {
        let r3 = Surd::sqrt(&q(3, 1));
        assert_eq!(r3.to_f64(), 3f64.sqrt());
        let v = Surd::new(q(1, 1), q(1, 1), &q(2, 1));
        assert_eq!(v.to_f64(), 1.0 + 2f64.sqrt());
        assert_eq!(format!("{}", v), "1 + 1*sqrt(2)");
    }
}
