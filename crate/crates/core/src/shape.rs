//! Second fundamental form of level hypersurfaces and their curvature invariants.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, IsoModel};
use crate::numeric::{sym_eigen, CompensatedSum, RngStream, SymMat4};
use crate::sphere::{
    dot, norm, project_to_level, surface_normal, tangent_basis, tangential, GeomError, LevelSpec,
    SpherePoint, TangentFrame, FOCAL_THRESHOLD,
};

/// Gap above which neighbouring eigenvalues belong to different clusters.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-4;
/// Share of failed projections tolerated by a sweep.
pub const MAX_FAILURE_FRACTION: f64 = 0.10;
const THETA_GRID: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShapeError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("expected {expected} distinct curvature values, got {got}")]
    PatternMismatch { expected: usize, got: usize },
    #[error("unsupported number of distinct curvatures g = {0}")]
    UnsupportedG(usize),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("{failed} of {attempted} projections failed (first: sample {first_index}: {first_error})")]
    TooManyFailures { failed: usize, attempted: usize, first_index: usize, first_error: String },
}

/// Best cot-form fit of the distinct curvatures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaFit {
    pub theta0: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    /// Ascending principal curvatures.
    pub lambdas: [f64; 4],
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub g: usize,
    /// Cluster sizes in ascending curvature order.
    pub multiplicities: Vec<usize>,
    pub theta0: Option<ThetaFit>,
}

/// `h(e_a, e_b) = [Hess F(e_a, e_b) − ⟨∇F, p⟩ δ_ab] / |P∇F|`.
///
/// Eigenvalues are principal curvatures for the normal along the tangential
/// gradient of the field.
pub fn second_form(spec: &LevelSpec, frame: &TangentFrame) -> Result<SymMat4, ShapeError> {
    let p = frame.base.coords();
    let jet = spec.field.eval2(p).map_err(GeomError::from)?;
    let gt = norm(&tangential(&jet.grad, p));
    if gt < FOCAL_THRESHOLD {
        return Err(GeomError::FocalPoint(gt).into());
    }
    let radial = dot(&jet.grad, p);
    let hess = jet.hess_matrix();
    let hv: [[f64; 6]; 4] = frame.e.map(|e| std::array::from_fn(|i| dot(&hess[i], &e)));
    Ok(SymMat4::from_upper(|a, b| {
        let mut v = dot(&frame.e[a], &hv[b]);
        if a == b {
            v -= radial;
        }
        v / gt
    }))
}

/// Splits ascending values wherever consecutive gaps exceed `tol`.
fn clusters(lambdas: &[f64; 4], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(CompensatedSum, usize)> = Vec::new();
    for (i, &l) in lambdas.iter().enumerate() {
        if i == 0 || l - lambdas[i - 1] > tol {
            out.push((CompensatedSum::default(), 0));
        }
        let last = out.last_mut().expect("nonempty");
        last.0.add(l);
        last.1 += 1;
    }
    out.into_iter().map(|(s, m)| (s.value() / m as f64, m)).collect()
}

impl CurvatureReport {
    /// Builds the report from four principal curvatures in any order.
    pub fn from_lambdas(mut lambdas: [f64; 4], cluster_tol: f64) -> Self {
        lambdas.sort_by(f64::total_cmp);
        let power = |k: i32| {
            let mut s = CompensatedSum::default();
            lambdas.iter().for_each(|l| s.add(l.powi(k)));
            s.value()
        };
        let (f1, f2, f3, f4) = (power(1), power(2), power(3), power(4));
        let k = lambdas.iter().product();
        let r = 12.0 + f1 * f1 - f2;
        let groups = clusters(&lambdas, cluster_tol);
        let g = groups.len();
        let multiplicities: Vec<usize> = groups.iter().map(|c| c.1).collect();
        let theta0 = match g {
            1 | 2 | 4 => {
                let desc: Vec<f64> = groups.iter().rev().map(|c| c.0).collect();
                fit_theta0(&desc, g).ok()
            }
            _ => None,
        };
        CurvatureReport { lambdas, f1, f2, f3, f4, s: f2, k, r, g, multiplicities, theta0 }
    }
}

/// Principal curvatures and invariants of the level set at `p`.
pub fn curvature_report(
    spec: &LevelSpec,
    p: &SpherePoint,
    cluster_tol: f64,
) -> Result<CurvatureReport, ShapeError> {
    let normal = surface_normal(p, spec)?;
    let frame = tangent_basis(p, &normal)?;
    let h = second_form(spec, &frame)?;
    Ok(CurvatureReport::from_lambdas(sym_eigen(&h).values, cluster_tol))
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

fn misfit(desc: &[f64], g: usize, theta: f64) -> (f64, f64) {
    // (Σ (λ_k − cot φ_k)², d/dθ of it)
    let step = PI / g as f64;
    desc.iter().enumerate().fold((0.0, 0.0), |(v, dv), (k, &l)| {
        let phi = k as f64 * step + theta;
        let e = l - cot(phi);
        let s = phi.sin();
        (v + e * e, dv + 2.0 * e / (s * s))
    })
}

/// Fits `λ_k ≈ cot((k−1)π/g + θ₀)`, `θ₀ ∈ (0, π/g)`, to distinct curvatures
/// given in descending order. For `g = 1` the convention `θ₀ = π/2` applies
/// and the residual is `|λ|`.
pub fn fit_theta0(desc: &[f64], g: usize) -> Result<ThetaFit, ShapeError> {
    if desc.len() != g {
        return Err(ShapeError::PatternMismatch { expected: g, got: desc.len() });
    }
    match g {
        1 => return Ok(ThetaFit { theta0: FRAC_PI_2, residual: desc[0].abs() }),
        2 | 3 | 4 | 6 => {}
        _ => return Err(ShapeError::UnsupportedG(g)),
    }
    let width = PI / g as f64;
    let at = |i: usize| (i as f64 + 0.5) * width / THETA_GRID as f64;
    let best = (0..THETA_GRID)
        .min_by(|&a, &b| misfit(desc, g, at(a)).0.total_cmp(&misfit(desc, g, at(b)).0))
        .expect("nonempty grid");
    // Bisect on the derivative within the neighbouring grid cells.
    let mut lo = if best == 0 { at(0) * 1e-3 } else { at(best - 1) };
    let mut hi = if best + 1 == THETA_GRID { width - (width - at(best)) * 1e-3 } else { at(best + 1) };
    let mut theta = at(best);
    if misfit(desc, g, lo).1 < 0.0 && misfit(desc, g, hi).1 > 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if misfit(desc, g, mid).1 < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        theta = 0.5 * (lo + hi);
    }
    Ok(ThetaFit { theta0: theta, residual: misfit(desc, g, theta).0.sqrt() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepTolerances {
    pub projection_tol: f64,
    pub max_iter: usize,
    pub cluster_tol: f64,
    /// `|f1|` bound for calling a point minimal.
    pub minimal_tol: f64,
    /// `|S − S_model|` bound for matching a catalog entry.
    pub s_tol: f64,
}

impl Default for SweepTolerances {
    fn default() -> Self {
        SweepTolerances {
            projection_tol: 1e-12,
            max_iter: 100,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            minimal_tol: 1e-6,
            s_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equator,
    #[serde(rename = "clifford_1_3")]
    Clifford13,
    #[serde(rename = "clifford_2_2")]
    Clifford22,
    Cartan,
    NonIsoparametric,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Equator => "equator",
            Verdict::Clifford13 => "clifford_1_3",
            Verdict::Clifford22 => "clifford_2_2",
            Verdict::Cartan => "cartan",
            Verdict::NonIsoparametric => "non_isoparametric",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    fn of_model(m: &IsoModel) -> Self {
        use catalog::ModelName::*;
        match m.name {
            Equator => Verdict::Equator,
            Clifford { r: 1, .. } => Verdict::Clifford13,
            Clifford { .. } => Verdict::Clifford22,
            Cartan => Verdict::Cartan,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceStats {
    pub n_points: usize,
    pub n_failed: usize,
    pub max_abs_f1: f64,
    #[serde(rename = "S_mean")]
    pub s_mean: f64,
    #[serde(rename = "S_min")]
    pub s_min: f64,
    #[serde(rename = "S_max")]
    pub s_max: f64,
    pub f3_mean: f64,
    pub f3_spread: f64,
    pub max_abs_f3: f64,
    #[serde(rename = "K_min")]
    pub k_min: f64,
    #[serde(rename = "K_max")]
    pub k_max: f64,
    #[serde(rename = "R_min")]
    pub r_min: f64,
    #[serde(rename = "R_max")]
    pub r_max: f64,
    pub g_histogram: BTreeMap<usize, usize>,
    pub theta0_mean: Option<f64>,
    pub theta0_min: Option<f64>,
    pub theta0_max: Option<f64>,
    pub theta0_residual_max: Option<f64>,
    pub classification_verdict: Verdict,
}

fn sample(spec: &LevelSpec, stream: RngStream, tols: &SweepTolerances) -> Result<CurvatureReport, ShapeError> {
    let (x0, _) = stream.unit_sphere6();
    let p = project_to_level(&x0, spec, tols.projection_tol, tols.max_iter)?;
    curvature_report(spec, &p, tols.cluster_tol)
}

/// Samples `n` points of the level set and aggregates their reports.
///
/// Sample `i` draws its starting point from `RngStream::new(seed).split(i)`
/// and aggregation runs in index order, so the statistics do not depend on
/// `workers`.
pub fn sweep_analyze(
    spec: &LevelSpec,
    n: usize,
    seed: u64,
    tols: &SweepTolerances,
    workers: usize,
) -> Result<(SurfaceStats, Vec<CurvatureReport>), ShapeError> {
    if n == 0 {
        return Err(ShapeError::NoSamples);
    }
    let root = RngStream::new(seed);
    let workers = workers.clamp(1, n);
    let results: Vec<Result<CurvatureReport, ShapeError>> = if workers == 1 {
        (0..n).map(|i| sample(spec, root.split(i as u64), tols)).collect()
    } else {
        let chunk = n.div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        (w * chunk..((w + 1) * chunk).min(n))
                            .map(|i| sample(spec, root.split(i as u64), tols))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
        })
    };

    let mut reports = Vec::with_capacity(n);
    let mut first_failure = None;
    let mut failed = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => {
                failed += 1;
                if first_failure.is_none() {
                    first_failure = Some((i, e.to_string()));
                }
            }
        }
    }
    if failed as f64 > MAX_FAILURE_FRACTION * n as f64 || reports.is_empty() {
        let (first_index, first_error) = first_failure.expect("failures recorded");
        return Err(ShapeError::TooManyFailures { failed, attempted: n, first_index, first_error });
    }
    Ok((aggregate(&reports, failed, tols), reports))
}

fn aggregate(reports: &[CurvatureReport], failed: usize, tols: &SweepTolerances) -> SurfaceStats {
    let n = reports.len();
    let mut s_sum = CompensatedSum::default();
    let mut f3_sum = CompensatedSum::default();
    let mut th_sum = CompensatedSum::default();
    let mut th_count = 0usize;
    let mut hist = BTreeMap::new();
    let fold_max = |f: &dyn Fn(&CurvatureReport) -> f64| reports.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let fold_min = |f: &dyn Fn(&CurvatureReport) -> f64| reports.iter().map(f).fold(f64::INFINITY, f64::min);
    let mut th_min = f64::INFINITY;
    let mut th_max = f64::NEG_INFINITY;
    let mut th_res = f64::NEG_INFINITY;
    for r in reports {
        s_sum.add(r.s);
        f3_sum.add(r.f3);
        *hist.entry(r.g).or_insert(0) += 1;
        if let Some(fit) = r.theta0 {
            th_sum.add(fit.theta0);
            th_count += 1;
            th_min = th_min.min(fit.theta0);
            th_max = th_max.max(fit.theta0);
            th_res = th_res.max(fit.residual);
        }
    }
    let has_theta = th_count > 0;
    let max_abs_f1 = fold_max(&|r| r.f1.abs());

    let verdict = if max_abs_f1 > tols.minimal_tol {
        Verdict::NonIsoparametric
    } else {
        catalog::all_models()
            .iter()
            .find(|m| {
                let mut want = m.multiplicities.clone();
                want.sort_unstable();
                reports.iter().all(|r| {
                    let mut got = r.multiplicities.clone();
                    got.sort_unstable();
                    r.g == m.g && got == want && (r.s - m.s_expected as f64).abs() <= tols.s_tol
                })
            })
            .map_or(Verdict::Inconclusive, Verdict::of_model)
    };

    SurfaceStats {
        n_points: n,
        n_failed: failed,
        max_abs_f1,
        s_mean: s_sum.value() / n as f64,
        s_min: fold_min(&|r| r.s),
        s_max: fold_max(&|r| r.s),
        f3_mean: f3_sum.value() / n as f64,
        f3_spread: fold_max(&|r| r.f3) - fold_min(&|r| r.f3),
        max_abs_f3: fold_max(&|r| r.f3.abs()),
        k_min: fold_min(&|r| r.k),
        k_max: fold_max(&|r| r.k),
        r_min: fold_min(&|r| r.r),
        r_max: fold_max(&|r| r.r),
        g_histogram: hist,
        theta0_mean: has_theta.then(|| th_sum.value() / th_count as f64),
        theta0_min: has_theta.then_some(th_min),
        theta0_max: has_theta.then_some(th_max),
        theta0_residual_max: has_theta.then_some(th_res),
        classification_verdict: verdict,
    }
}
