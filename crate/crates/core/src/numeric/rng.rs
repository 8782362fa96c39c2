//! Counter-based SplitMix64 stream.
//!
//! Output `k` of a stream is `mix(seed + (k + 1)·γ)` with the SplitMix64
//! finalizer and golden-ratio increment γ, so draws depend only on
//! `(seed, counter)` and use integer arithmetic alone.

use num_rational::BigRational;

use super::{NumericError, Rational};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub counter: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DrawKind {
    /// Uniform in `[lo, hi)`.
    Float { lo: f64, hi: f64 },
    /// `num/den` with `|num| ≤ height` and `1 ≤ den ≤ height`, reduced.
    Rational { height: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Draw {
    Float(f64),
    Rational(Rational),
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, counter: 0 }
    }

    /// Independent child stream, keyed by `index`.
    pub fn split(&self, index: u64) -> Self {
        let key = mix(self.seed ^ mix(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
        RngStream::new(mix(key.wrapping_add(self.counter)))
    }

    pub fn next_u64(self) -> (u64, Self) {
        let out = mix(self
            .seed
            .wrapping_add(self.counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
        (out, RngStream { seed: self.seed, counter: self.counter.wrapping_add(1) })
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit_f64(self) -> (f64, Self) {
        let (u, next) = self.next_u64();
        ((u >> 11) as f64 * (1.0 / (1u64 << 53) as f64), next)
    }

    /// Uniform integer in `[0, n)` by rejection; `n` must be positive.
    pub fn below(self, n: u64) -> (u64, Self) {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % n);
        let mut s = self;
        loop {
            let (u, next) = s.next_u64();
            s = next;
            if u < zone {
                return (u % n, s);
            }
        }
    }

    pub fn draw(self, kind: DrawKind) -> Result<(Draw, Self), NumericError> {
        match kind {
            DrawKind::Float { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(NumericError::InvalidRange { lo, hi });
                }
                let (u, next) = self.unit_f64();
                let x = lo + (hi - lo) * u;
                // Rounding can land exactly on `hi`.
                let x = if x < hi { x } else { lo };
                Ok((Draw::Float(x), next))
            }
            DrawKind::Rational { height } => {
                if height == 0 {
                    return Err(NumericError::InvalidHeight(height));
                }
                let (n, s) = self.below(2 * height + 1);
                let (d, s) = s.below(height);
                let q = BigRational::new((n as i128 - height as i128).into(), (d + 1).into());
                Ok((Draw::Rational(q), s))
            }
        }
    }

    pub fn uniform(self, lo: f64, hi: f64) -> Result<(f64, Self), NumericError> {
        match self.draw(DrawKind::Float { lo, hi })? {
            (Draw::Float(x), s) => Ok((x, s)),
            _ => unreachable!(),
        }
    }

    pub fn rational(self, height: u64) -> Result<(Rational, Self), NumericError> {
        match self.draw(DrawKind::Rational { height })? {
            (Draw::Rational(q), s) => Ok((q, s)),
            _ => unreachable!(),
        }
    }

    /// Uniform point on S⁵ by rejection from the cube onto the unit ball,
    /// then normalization. Only IEEE-exact operations are involved.
    pub fn unit_sphere6(self) -> ([f64; 6], Self) {
        let mut s = self;
        loop {
            let mut x = [0.0; 6];
            for xi in &mut x {
                let (u, next) = s.unit_f64();
                s = next;
                *xi = 2.0 * u - 1.0;
            }
            let r2: f64 = x.iter().map(|v| v * v).sum();
            if r2 > 1e-6 && r2 <= 1.0 {
                let r = r2.sqrt();
                return (x.map(|v| v / r), s);
            }
        }
    }
}
