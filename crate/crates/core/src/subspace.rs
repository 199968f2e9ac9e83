//! Affine subspaces, sections and orthogonal projections.
//!
//! Both operations return bodies in the intrinsic coordinates of the
//! subspace's orthonormal basis, so intrinsic volume equals ambient
//! j-dimensional volume.

use crate::error::{GeomError, Result};
use crate::hpoly::{h_to_v, v_to_h, HPolytope, Halfspace};
use crate::linalg::{self, dot, norm};
use crate::lp;
use crate::polytope::{VPolytope, Vector};
use crate::tol::{scaled, EPS_GEOM, EPS_STRICT};

/// `{ point + Σ u_k basis_k }` with orthonormal `basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    point: Vector,
    basis: Vec<Vector>,
}

impl AffineSubspace {
    /// Takes an orthonormal basis as given (checked within `EPS_GEOM`).
    pub fn new(point: Vector, basis: Vec<Vector>) -> Result<Self> {
        let d = point.len();
        if basis.is_empty() || basis.len() > d {
            return Err(GeomError::InvalidParameter(format!(
                "subspace dimension {} not in 1..={d}",
                basis.len()
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.len() != d {
                return Err(GeomError::DimensionMismatch { expected: d, found: b.len() });
            }
            for (j, c) in basis.iter().enumerate().skip(i) {
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot(b, c) - want).abs() > EPS_GEOM {
                    return Err(GeomError::InvalidParameter("basis is not orthonormal".into()));
                }
            }
        }
        Ok(AffineSubspace { point, basis })
    }

    /// Orthonormalises arbitrary spanning vectors.
    pub fn spanned_by(point: Vector, vectors: &[Vector]) -> Result<Self> {
        let basis = linalg::orthonormalize(vectors, 1e-12);
        if basis.len() != vectors.len() {
            return Err(GeomError::InvalidParameter("spanning vectors are dependent".into()));
        }
        Self::new(point, basis)
    }

    /// Linear subspace spanned by coordinate axes `axes`.
    pub fn coordinate(d: usize, axes: &[usize]) -> Result<Self> {
        let basis = axes
            .iter()
            .map(|&k| {
                let mut e = vec![0.0; d];
                e[k] = 1.0;
                e
            })
            .collect();
        Self::new(vec![0.0; d], basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_linear(&self) -> bool {
        norm(&self.point) <= EPS_GEOM
    }

    /// Linear orthogonal complement of the direction space (empty basis is
    /// not representable, so this fails for `dim == ambient_dim`).
    pub fn orthogonal_complement(&self) -> Result<Self> {
        let d = self.ambient_dim();
        Self::new(vec![0.0; d], linalg::complement(&self.basis, d))
    }

    /// Ambient point for intrinsic coordinates `u`.
    pub fn embed(&self, u: &[f64]) -> Vector {
        let mut x = self.point.clone();
        for (uk, b) in u.iter().zip(&self.basis) {
            linalg::axpy(&mut x, *uk, b);
        }
        x
    }

    /// Intrinsic coordinates of the orthogonal projection of `x`.
    pub fn coords(&self, x: &[f64]) -> Vector {
        let rel = linalg::sub(x, &self.point);
        self.basis.iter().map(|b| dot(b, &rel)).collect()
    }
}

/// `K ∩ E` in intrinsic coordinates of `E`.
pub fn section(k: &VPolytope, e: &AffineSubspace) -> Result<VPolytope> {
    k.check_dim(e.ambient_dim())?;
    let h = v_to_h(k);
    let eps = k.eps();
    let mut hs = Vec::with_capacity(h.halfspaces().len());
    for c in h.halfspaces() {
        let a: Vector = e.basis().iter().map(|b| dot(&c.normal, b)).collect();
        let rhs = c.offset - dot(&c.normal, e.point());
        if norm(&a) <= 1e-12 {
            // constraint is constant on E
            if rhs < -eps {
                return Err(GeomError::EmptySection);
            }
            continue;
        }
        hs.push(Halfspace::new(a, rhs)?);
    }
    if hs.is_empty() {
        return Err(GeomError::DegenerateSection);
    }
    let a: Vec<Vector> = hs.iter().map(|h| h.normal.clone()).collect();
    let b: Vec<f64> = hs.iter().map(|h| h.offset).collect();
    let (w, slack) = lp::max_slack_point(&a, &b)?;
    if slack < -eps {
        return Err(GeomError::EmptySection);
    }
    if slack <= scaled(EPS_STRICT, k.extent()) {
        return Err(GeomError::DegenerateSection);
    }
    h_to_v(&HPolytope::trusted(hs, w)?)
}

/// Orthogonal projection of `K` onto the linear subspace `E`, in intrinsic
/// coordinates.
pub fn project(k: &VPolytope, e: &AffineSubspace) -> Result<VPolytope> {
    k.check_dim(e.ambient_dim())?;
    if !e.is_linear() {
        return Err(GeomError::InvalidParameter("projection target must pass through 0".into()));
    }
    let pts: Vec<Vector> = k.vertices().iter().map(|v| e.coords(v)).collect();
    VPolytope::from_points(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;

    fn sym_cube(d: usize) -> VPolytope {
        let pts: Vec<Vector> = (0..1usize << d)
            .map(|m| (0..d).map(|k| if (m >> k) & 1 == 1 { 1.0 } else { -1.0 }).collect())
            .collect();
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn square_cut_by_axis() {
        let e = AffineSubspace::coordinate(2, &[0]).unwrap();
        let s = section(&sym_cube(2), &e).unwrap();
        assert!((s.volume().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cube_shadow_is_square() {
        let e = AffineSubspace::coordinate(3, &[0, 1]).unwrap();
        let p = project(&sym_cube(3), &e).unwrap();
        assert!(p.same_vertices(&sym_cube(2), 1e-12));
        let full = AffineSubspace::coordinate(3, &[0, 1, 2]).unwrap();
        assert!(project(&sym_cube(3), &full).unwrap().same_vertices(&sym_cube(3), 0.0));
    }

    #[test]
    fn diagonal_section_of_cube() {
        // plane x + y + z = 0 cuts [-1,1]^3 in a regular hexagon of side √2
        let e = AffineSubspace::spanned_by(
            vec![0.0; 3],
            &[vec![1.0, -1.0, 0.0], vec![1.0, 1.0, -2.0]],
        )
        .unwrap();
        let s = section(&sym_cube(3), &e).unwrap();
        let side = 2f64.sqrt();
        let want = 1.5 * 3f64.sqrt() * side * side;
        assert!((s.volume().unwrap() - want).abs() < 1e-12);
        assert_eq!(s.vertices().len(), 6);
    }

    #[test]
    fn missing_and_touching_sections() {
        let off = AffineSubspace::new(vec![0.0, 5.0], vec![vec![1.0, 0.0]]).unwrap();
        assert_eq!(section(&sym_cube(2), &off).unwrap_err(), GeomError::EmptySection);
        let corner = AffineSubspace::spanned_by(vec![1.0, 1.0], &[vec![1.0, -1.0]]).unwrap();
        assert_eq!(section(&sym_cube(2), &corner).unwrap_err(), GeomError::DegenerateSection);
    }

    #[test]
    fn bad_basis() {
        assert!(AffineSubspace::new(vec![0.0; 2], vec![vec![1.0, 1.0]]).is_err());
        let e = AffineSubspace::coordinate(2, &[0]).unwrap();
        assert_eq!(e.orthogonal_complement().unwrap().basis()[0].iter().map(|v| v.abs()).sum::<f64>(), 1.0);
    }
}
