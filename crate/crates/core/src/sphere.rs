//! Geometry of level sets `{x ∈ S⁵ : F(x) = c}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, ScalarFieldSpec};

/// Norm tolerance for [`SpherePoint`].
pub const UNIT_TOL: f64 = 1e-12;
/// Below this tangential gradient norm a point is treated as focal.
pub const FOCAL_THRESHOLD: f64 = 1e-10;
/// Coordinate seeds with a smaller residual are skipped in Gram–Schmidt.
const SEED_SKIP: f64 = 1e-6;
/// Largest tangential Newton step, in radians along the sphere.
const MAX_STEP: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("no convergence after {iterations} iterations (sphere residual {sphere_residual:e}, level residual {level_residual:e})")]
    NoConvergence { iterations: usize, sphere_residual: f64, level_residual: f64 },
    #[error("focal point: tangential gradient norm {0:e}")]
    FocalPoint(f64),
    #[error("point is not on the unit sphere (|x| = {0})")]
    NotOnSphere(f64),
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

pub(crate) fn dot(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64; 6]) -> f64 {
    dot(a, a).sqrt()
}

/// `v − ⟨v, p⟩ p`.
pub(crate) fn tangential(v: &[f64; 6], p: &[f64; 6]) -> [f64; 6] {
    let c = dot(v, p);
    std::array::from_fn(|i| v[i] - c * p[i])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint {
    coords: [f64; 6],
}

impl SpherePoint {
    pub fn new(coords: [f64; 6]) -> Result<Self, GeomError> {
        let r = norm(&coords);
        if !r.is_finite() || (r - 1.0).abs() > UNIT_TOL {
            return Err(GeomError::NotOnSphere(r));
        }
        Ok(SpherePoint { coords })
    }

    /// Radial projection of a nonzero vector.
    pub fn normalize(x: [f64; 6]) -> Result<Self, GeomError> {
        let r = norm(&x);
        if !(r.is_finite() && r > 0.0) {
            return Err(GeomError::InvalidInput("cannot normalize a zero or non-finite vector"));
        }
        Ok(SpherePoint { coords: x.map(|v| v / r) })
    }

    pub fn coords(&self) -> &[f64; 6] {
        &self.coords
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub field: ScalarFieldSpec,
    pub level: f64,
}

impl LevelSpec {
    pub fn new(field: ScalarFieldSpec, level: f64) -> Self {
        LevelSpec { field, level }
    }
}

/// Unit normal and orthonormal tangent frame of a level hypersurface at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentFrame {
    pub base: SpherePoint,
    pub normal: [f64; 6],
    pub e: [[f64; 6]; 4],
}

impl TangentFrame {
    /// Largest deviation from the frame's orthonormality relations.
    pub fn orthonormality_defect(&self) -> f64 {
        let p = self.base.coords();
        let mut worst = (dot(&self.normal, &self.normal) - 1.0).abs().max(dot(&self.normal, p).abs());
        for a in 0..4 {
            worst = worst.max(dot(&self.e[a], p).abs()).max(dot(&self.e[a], &self.normal).abs());
            for b in 0..4 {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot(&self.e[a], &self.e[b]) - target).abs());
            }
        }
        worst
    }
}

/// Newton projection of `x0` onto `{|x| = 1, F(x) = level}`.
///
/// Each step solves the 2×2 linearized system for a correction in
/// span{x, P∇F}, with the tangential part clamped to [`MAX_STEP`].
/// Stalling at a critical point of `F` away from the level is reported as
/// non-convergence; a vanishing gradient on the level itself is focal.
pub fn project_to_level(
    x0: &[f64; 6],
    spec: &LevelSpec,
    tol: f64,
    max_iter: usize,
) -> Result<SpherePoint, GeomError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(GeomError::InvalidInput("tolerance must be positive"));
    }
    let r0 = norm(x0);
    if !(r0.is_finite() && r0 > 0.0) {
        return Err(GeomError::InvalidInput("starting point must be nonzero and finite"));
    }
    let mut x = *x0;
    let mut sphere_res = f64::INFINITY;
    let mut level_res = f64::INFINITY;
    for _ in 0..=max_iter {
        // Converged once the normalized point satisfies the level equation.
        let r = norm(&x);
        let p = x.map(|v| v / r);
        let jp = spec.field.eval2(&p)?;
        sphere_res = (norm(&p) - 1.0).abs();
        level_res = (jp.value - spec.level).abs();
        if sphere_res <= tol && level_res <= tol {
            return Ok(SpherePoint { coords: p });
        }

        let jet = spec.field.eval2(&x)?;
        let u_raw = tangential(&jet.grad, &p);
        let gt = norm(&u_raw);
        if gt < FOCAL_THRESHOLD {
            if level_res <= tol.sqrt() {
                return Err(GeomError::FocalPoint(gt));
            }
            // Critical point of F off the level: Newton cannot proceed.
            return Err(GeomError::NoConvergence {
                iterations: max_iter,
                sphere_residual: sphere_res,
                level_residual: level_res,
            });
        }
        let u = u_raw.map(|v| v / gt);
        // δ = α x + β u with ⟨x, u⟩ = 0:
        //   2 r² α           = 1 − r²
        //   ⟨∇F, x⟩ α + |P∇F| β = c − F(x)
        let alpha = (1.0 - r * r) / (2.0 * r * r);
        let beta = ((spec.level - jet.value) - dot(&jet.grad, &x) * alpha) / gt;
        let beta = beta.clamp(-MAX_STEP, MAX_STEP);
        x = std::array::from_fn(|i| x[i] + alpha * x[i] + beta * u[i]);
    }
    Err(GeomError::NoConvergence { iterations: max_iter, sphere_residual: sphere_res, level_residual: level_res })
}

/// `ν = P∇F / |P∇F|` at `p`.
pub fn surface_normal(p: &SpherePoint, spec: &LevelSpec) -> Result<[f64; 6], GeomError> {
    let jet = spec.field.eval2(p.coords())?;
    let t = tangential(&jet.grad, p.coords());
    let n = norm(&t);
    if n < FOCAL_THRESHOLD {
        return Err(GeomError::FocalPoint(n));
    }
    Ok(t.map(|v| v / n))
}

fn orthogonalize(v: &mut [f64; 6], against: &[[f64; 6]]) {
    for b in against {
        let c = dot(v, b);
        v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
    }
}

/// Orthonormal completion of `{p, normal}` by Gram–Schmidt over the
/// coordinate axes `e₁, …, e₆` in order, skipping near-dependent seeds.
pub fn tangent_basis(p: &SpherePoint, normal: &[f64; 6]) -> Result<TangentFrame, GeomError> {
    if (norm(normal) - 1.0).abs() > 1e-10 || dot(normal, p.coords()).abs() > 1e-10 {
        return Err(GeomError::InvalidInput("normal must be a unit vector orthogonal to p"));
    }
    let mut basis: Vec<[f64; 6]> = vec![*p.coords(), *normal];
    for seed in 0..6 {
        if basis.len() == 6 {
            break;
        }
        let mut v = [0.0; 6];
        v[seed] = 1.0;
        orthogonalize(&mut v, &basis);
        if norm(&v) < SEED_SKIP {
            continue;
        }
        // Second pass restores orthogonality lost to cancellation.
        orthogonalize(&mut v, &basis);
        let n = norm(&v);
        basis.push(v.map(|x| x / n));
    }
    debug_assert_eq!(basis.len(), 6);
    Ok(TangentFrame { base: *p, normal: *normal, e: [basis[2], basis[3], basis[4], basis[5]] })
}
