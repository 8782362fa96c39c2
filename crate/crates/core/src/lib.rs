//! Principal-curvature invariants of level hypersurfaces of the unit 5-sphere,
//! the catalog of isoparametric minimal hypersurfaces of S⁵, and exact-rational
//! checks of the algebraic identities behind the rigidity argument for minimal
//! hypersurfaces with constant scalar curvature, `f3` and number of distinct
//! principal curvatures.
//!
//! Layout:
//!
//! * [`numeric`]: jets, a 4×4 Jacobi eigen-solver, exact rationals and
//!   quadratic surds, a counter-based random stream.
//! * [`field`]: ambient scalar fields on ℝ⁶ with exact second derivatives.
//! * [`sphere`]: projection onto level sets inside S⁵, normals and frames.
//! * [`shape`]: second fundamental form, curvature reports, sweeps.
//! * [`catalog`]: closed-form isoparametric minimal hypersurfaces of S⁵.
//! * [`identities`]: exact verification of the curvature identities.

pub mod catalog;
pub mod field;
pub mod identities;
pub mod numeric;
pub mod shape;
pub mod sphere;

pub use catalog::{IsoModel, ModelName};
pub use field::{Polynomial, ScalarFieldSpec};
pub use numeric::{Jet2, Rational, RngStream, SymMat4};
pub use shape::{CurvatureReport, SurfaceStats, Verdict};
pub use sphere::{LevelSpec, SpherePoint, TangentFrame};

/// Dimension of the hypersurfaces studied here (M⁴ ⊂ S⁵).
pub const DIM: usize = 4;
/// Dimension of the ambient Euclidean space (S⁵ ⊂ ℝ⁶).
pub const AMBIENT: usize = 6;
