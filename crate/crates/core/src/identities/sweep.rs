//! Randomized exact sweeps over the identities in this module.
//!
//! Trial `i` draws its inputs from `RngStream::new(seed).split(i)`, so a
//! verdict depends only on `(identity, trials, seed, height)` and not on how
//! trials are distributed over workers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{
    diag_from_k, diag_from_system, dpsi_coeff, g2_solve, g3_kernel, gauss_r, i_closed, i_def, recover_from_rationals,
    sign_lemma, DerivativeTable, Quadruple,
};
use crate::numeric::{rational_string, Rational, RngStream};

/// Absolute tolerance for recovered curvatures.
pub const RECOVER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityKind {
    G2,
    G3,
    Vandermonde,
    IClosed,
    ISign,
    Dpsi,
    Recover,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 7] = [
        IdentityKind::G2,
        IdentityKind::G3,
        IdentityKind::Vandermonde,
        IdentityKind::IClosed,
        IdentityKind::ISign,
        IdentityKind::Dpsi,
        IdentityKind::Recover,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::G2 => "g2",
            IdentityKind::G3 => "g3",
            IdentityKind::Vandermonde => "vandermonde",
            IdentityKind::IClosed => "i-closed",
            IdentityKind::ISign => "i-sign",
            IdentityKind::Dpsi => "dpsi",
            IdentityKind::Recover => "recover",
        }
    }

    /// Whether pass/fail is decided in exact arithmetic.
    pub fn is_exact(self) -> bool {
        self != IdentityKind::Recover
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown identity '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub trials: u64,
    pub seed: u64,
    /// Bound on `|num|` and `den` of every drawn rational.
    pub height: u64,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { trials: 1000, seed: 0, height: 1000, workers: 1 }
    }
}

/// Named exact inputs of a failing trial, each as `"num/den"`.
pub type Counterexample = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityVerdict {
    pub identity_name: String,
    pub trials: u64,
    pub failures: u64,
    /// Trial index of the first failure, if any.
    pub first_failure_trial: Option<u64>,
    pub first_counterexample: Option<Counterexample>,
    pub exact: bool,
}

impl IdentityVerdict {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn record(out: &mut Counterexample, name: &str, vals: &[Rational]) {
    for (i, v) in vals.iter().enumerate() {
        out.insert(format!("{name}[{i}]"), rational_string(v));
    }
}

fn draw(s: RngStream, height: u64) -> (Rational, RngStream) {
    s.rational(height).expect("height validated by run_sweep")
}

fn draw_nonzero(mut s: RngStream, height: u64) -> (Rational, RngStream) {
    loop {
        let (q, next) = draw(s, height);
        s = next;
        if !q.is_zero() {
            return (q, s);
        }
    }
}

fn draw_array<const N: usize>(mut s: RngStream, height: u64) -> ([Rational; N], RngStream) {
    let vals = std::array::from_fn(|_| {
        let (q, next) = draw(s, height);
        s = next;
        q
    });
    (vals, s)
}

/// Strictly increasing quadruple; draws with a collision are discarded.
fn draw_quadruple(mut s: RngStream, height: u64) -> (Quadruple, RngStream) {
    loop {
        let (vals, next) = draw_array::<4>(s, height);
        s = next;
        if let Ok(q) = Quadruple::from_unsorted(vals) {
            return (q, s);
        }
    }
}

/// Runs one trial; `Some(inputs)` on failure.
fn trial(kind: IdentityKind, s: RngStream, height: u64) -> Option<Counterexample> {
    let mut ce = Counterexample::new();
    let ok = match kind {
        IdentityKind::G2 => {
            let (k, s) = s.below(3);
            let (sq, _) = draw_nonzero(s, height);
            let sq = sq.abs();
            ce.insert("k".into(), (k + 1).to_string());
            ce.insert("S".into(), rational_string(&sq));
            g2_solve(k as usize + 1, &sq).is_ok_and(|b| {
                let (l, m) = &b.branches[0];
                b.branches.iter().all(|(l, m)| b.satisfies(l, m)) && l.signum() > 0 && m.signum() < 0
            })
        }
        IdentityKind::G3 => {
            const SPLITS: [[usize; 3]; 3] = [[1, 1, 2], [1, 2, 1], [2, 1, 1]];
            let (which, mut s) = s.below(3);
            let vals = loop {
                let (v, next) = draw_array::<3>(s, height);
                s = next;
                if v[0] != v[1] && v[0] != v[2] && v[1] != v[2] {
                    break v;
                }
            };
            let mult = SPLITS[which as usize];
            ce.insert("multiplicities".into(), format!("{},{},{}", mult[0], mult[1], mult[2]));
            record(&mut ce, "vals", &vals);
            g3_kernel(mult, &vals).is_ok_and(|g| g.kernel_dim == 0 && g.det == g.det_formula && !g.det.is_zero())
        }
        IdentityKind::Vandermonde => {
            let (lam, s) = draw_quadruple(s, height);
            let (k, _) = draw_array::<4>(s, height);
            record(&mut ce, "lam", lam.values());
            record(&mut ce, "K", &k);
            match diag_from_k(&lam, &k) {
                Ok(diag) => (0..4).all(|l| {
                    diag_from_system(&lam, &k[l], l).is_ok_and(|col| (0..4).all(|i| col[i] == diag[i][l]))
                }),
                Err(_) => false,
            }
        }
        IdentityKind::IClosed => {
            let (lam, s) = draw_quadruple(s, height);
            let (k, _) = draw_array::<4>(s, height);
            record(&mut ce, "lam", lam.values());
            record(&mut ce, "K", &k);
            diag_from_k(&lam, &k).is_ok_and(|diag| i_def(&lam, &diag) == i_closed(&lam, &k))
        }
        IdentityKind::ISign => {
            let (lam, s) = draw_quadruple(s, height);
            let (k, _) = draw_array::<4>(s, height);
            record(&mut ce, "lam", lam.values());
            record(&mut ce, "K", &k);
            sign_lemma(&lam, &k).iter().all(|&b| b)
        }
        IdentityKind::Dpsi => {
            let (lam, s) = draw_quadruple(s, height);
            let (k, s) = draw_array::<4>(s, height);
            let (mixed, _) = draw_array::<4>(s, height);
            record(&mut ce, "lam", lam.values());
            record(&mut ce, "K", &k);
            record(&mut ce, "mixed", &mixed);
            let expected = gauss_r(&lam) / Rational::from_integer(2.into())
                - i_closed(&lam, &k).iter().fold(Rational::zero(), |acc, x| acc + x);
            DerivativeTable::new(lam, k, mixed).is_ok_and(|t| dpsi_coeff(&t) == expected)
        }
        IdentityKind::Recover => {
            let (lam, _) = draw_quadruple(s, height);
            record(&mut ce, "lam", lam.values());
            let e4 = lam.values().iter().fold(Rational::from_integer(1.into()), |acc, x| acc * x);
            match recover_from_rationals(&lam.power_sum(1), &lam.power_sum(2), &lam.power_sum(3), &e4) {
                Ok(r) => r
                    .roots
                    .iter()
                    .zip(lam.values())
                    .all(|(x, l)| (x - l.to_f64().unwrap_or(f64::NAN)).abs() <= RECOVER_TOL),
                Err(_) => false,
            }
        }
    };
    (!ok).then_some(ce)
}

#[derive(Default)]
struct Partial {
    failures: u64,
    first: Option<(u64, Counterexample)>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.failures += other.failures;
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn run_range(kind: IdentityKind, root: RngStream, height: u64, range: std::ops::Range<u64>) -> Partial {
    let mut p = Partial::default();
    for i in range {
        if let Some(ce) = trial(kind, root.split(i), height) {
            p.failures += 1;
            if p.first.is_none() {
                p.first = Some((i, ce));
            }
        }
    }
    p
}

/// Runs `cfg.trials` random trials of `kind`.
pub fn run_sweep(kind: IdentityKind, cfg: &SweepConfig) -> Result<IdentityVerdict, super::IdentityError> {
    if cfg.height == 0 {
        return Err(super::IdentityError::BadConfig("height must be at least 1".into()));
    }
    let root = RngStream::new(cfg.seed);
    let workers = cfg.workers.max(1) as u64;
    let partial = if workers == 1 || cfg.trials < 2 {
        run_range(kind, root, cfg.height, 0..cfg.trials)
    } else {
        let chunk = cfg.trials.div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = (w * chunk).min(cfg.trials);
                    let hi = ((w + 1) * chunk).min(cfg.trials);
                    scope.spawn(move || run_range(kind, root, cfg.height, lo..hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .fold(Partial::default(), Partial::merge)
        })
    };
    let (first_failure_trial, first_counterexample) = match partial.first {
        Some((i, ce)) => (Some(i), Some(ce)),
        None => (None, None),
    };
    Ok(IdentityVerdict {
        identity_name: kind.name().to_string(),
        trials: cfg.trials,
        failures: partial.failures,
        first_failure_trial,
        first_counterexample,
        exact: kind.is_exact(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trials: u64) -> SweepConfig {
        SweepConfig { trials, seed: 7, height: 50, workers: 1 }
    }

    #[test]
    fn names_round_trip() {
        for k in IdentityKind::ALL {
            assert_eq!(k.name().parse::<IdentityKind>().unwrap(), k);
        }
        assert!("i_sign".parse::<IdentityKind>().is_err());
    }

    #[test]
    fn every_identity_passes_a_short_sweep() {
        for k in IdentityKind::ALL {
            let v = run_sweep(k, &cfg(40)).unwrap();
            assert_eq!(v.failures, 0, "{k}: {:?}", v.first_counterexample);
            assert!(v.first_counterexample.is_none());
            assert_eq!(v.exact, k != IdentityKind::Recover);
        }
    }

    #[test]
    fn worker_count_does_not_change_verdict() {
        let one = run_sweep(IdentityKind::Dpsi, &cfg(30)).unwrap();
        let four = run_sweep(IdentityKind::Dpsi, &SweepConfig { workers: 4, ..cfg(30) }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn merge_keeps_earliest_failure() {
        let a = Partial { failures: 2, first: Some((9, Counterexample::new())) };
        let mut ce = Counterexample::new();
        ce.insert("x".into(), "1".into());
        let b = Partial { failures: 1, first: Some((3, ce.clone())) };
        let m = a.merge(b);
        assert_eq!(m.failures, 3);
        assert_eq!(m.first, Some((3, ce)));
    }

    #[test]
    fn zero_height_rejected() {
        assert!(run_sweep(IdentityKind::G2, &SweepConfig { height: 0, ..cfg(1) }).is_err());
    }
}
