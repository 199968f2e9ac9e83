//! Named tolerances shared by every kernel operation.
//!
//! Geometric tolerances are relative to the extent of the point cloud they
//! are applied to; see [`scaled`].

/// Affine rank tests.
pub const EPS_RANK: f64 = 1e-9;
/// Vertex and facet identity.
pub const EPS_GEOM: f64 = 1e-9;
/// Strict interiority of witnesses and of the origin.
pub const EPS_STRICT: f64 = 1e-10;
/// Largest admissible condition estimate of a triangulation simplex.
pub const COND_MAX: f64 = 1e12;
/// Largest admissible condition estimate of the Bernstein collocation system.
pub const INTERP_COND_MAX: f64 = 1e10;

/// `eps` scaled by a length, floored so that tiny bodies keep a usable tolerance.
pub fn scaled(eps: f64, extent: f64) -> f64 {
    eps * extent.max(1e-3)
}
