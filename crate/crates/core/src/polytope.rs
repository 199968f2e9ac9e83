//! Vertex-represented convex bodies.

use std::sync::{Arc, OnceLock};

use crate::error::{GeomError, Result};
use crate::hull::{Facet, Hull};
use crate::linalg::{self, dot};
use crate::tol::{scaled, EPS_GEOM, EPS_STRICT};

/// A point or direction in R^d.
pub type Vector = Vec<f64>;

/// Full-dimensional convex polytope stored by its irredundant vertices.
///
/// The hull (facets and boundary triangulation) is computed once at
/// construction and shared between clones.
#[derive(Clone)]
pub struct VPolytope {
    hull: Arc<Hull>,
    vertices: Vec<Vector>,
    measure: Arc<OnceLock<Result<(f64, Vector)>>>,
}

impl std::fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VPolytope")
            .field("dim", &self.dim())
            .field("vertices", &self.vertices)
            .finish()
    }
}

/// Hull of a finite point set. Fails with `DegenerateInput` when the points
/// do not span R^d affinely.
pub fn convex_hull(points: &[Vector]) -> Result<VPolytope> {
    VPolytope::from_points(points)
}

impl VPolytope {
    pub fn from_points(points: &[Vector]) -> Result<Self> {
        Ok(Self::from_hull(Hull::build(points)?))
    }

    fn from_hull(hull: Hull) -> Self {
        let vertices = hull.vertex_points();
        VPolytope { hull: Arc::new(hull), vertices, measure: Arc::new(OnceLock::new()) }
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        self.hull.facets()
    }

    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    /// Largest coordinate range of the vertex set.
    pub fn extent(&self) -> f64 {
        self.hull.extent()
    }

    /// Geometric tolerance scaled to this body.
    pub fn eps(&self) -> f64 {
        scaled(EPS_GEOM, self.extent())
    }

    fn measure(&self) -> Result<(f64, Vector)> {
        self.measure.get_or_init(|| self.hull.volume_and_centroid()).clone()
    }

    pub fn volume(&self) -> Result<f64> {
        self.measure().map(|(v, _)| v)
    }

    /// Centre of mass, from the same fan triangulation as [`Self::volume`].
    pub fn centroid(&self) -> Result<Vector> {
        self.measure().map(|(_, c)| c)
    }

    pub fn vertex_centroid(&self) -> Vector {
        linalg::mean(&self.vertices)
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.hull.contains(p, self.eps())
    }

    /// Largest signed facet distance of `p` (negative inside).
    pub fn max_violation(&self, p: &[f64]) -> f64 {
        self.hull.max_violation(p)
    }

    pub fn contains_origin_strictly(&self) -> bool {
        let origin = vec![0.0; self.dim()];
        self.max_violation(&origin) < -scaled(EPS_STRICT, self.extent())
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        if s == 0.0 {
            return Err(GeomError::ZeroScale);
        }
        if !s.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self::from_hull(self.hull.map_scale_translate(s, &vec![0.0; self.dim()])))
    }

    pub fn negate(&self) -> Self {
        Self::from_hull(self.hull.map_scale_translate(-1.0, &vec![0.0; self.dim()]))
    }

    pub fn translate(&self, t: &[f64]) -> Result<Self> {
        self.check_dim(t.len())?;
        if t.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Self::from_hull(self.hull.map_scale_translate(1.0, t)))
    }

    /// Image under `x ↦ A x + t`, with `A` given row-major. The hull is
    /// recomputed; a singular `A` yields `DegenerateInput`.
    pub fn affine_image(&self, matrix: &[Vec<f64>], t: &[f64]) -> Result<Self> {
        let d = self.dim();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(GeomError::DimensionMismatch { expected: d, found: matrix.len() });
        }
        self.check_dim(t.len())?;
        let pts: Vec<Vector> = self
            .vertices
            .iter()
            .map(|v| linalg::add(&linalg::mat_vec(matrix, v), t))
            .collect();
        Self::from_points(&pts)
    }

    pub fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }

    /// Vertex sets equal up to `tol` (as sets, matched greedily).
    pub fn same_vertices(&self, other: &VPolytope, tol: f64) -> bool {
        vertex_sets_match(&self.vertices, &other.vertices, tol)
    }

    /// Support value `max_v ⟨u, v⟩`.
    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(u, v)).fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn vertex_sets_match(a: &[Vector], b: &[Vector], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for p in a {
        let hit = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .find(|(_, q)| p.iter().zip(q.iter()).all(|(x, y)| (x - y).abs() <= tol));
        match hit {
            Some((i, _)) => used[i] = true,
            None => return false,
        }
    }
    true
}

/// Hull of all pairwise vertex sums.
pub fn minkowski_sum(a: &VPolytope, b: &VPolytope) -> Result<VPolytope> {
    a.check_dim(b.dim())?;
    let mut pts = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for p in &a.vertices {
        for q in &b.vertices {
            pts.push(linalg::add(p, q));
        }
    }
    VPolytope::from_points(&pts)
}

/// Hull of the union of the two vertex sets.
pub fn hull_of_union(a: &VPolytope, b: &VPolytope) -> Result<VPolytope> {
    a.check_dim(b.dim())?;
    let pts: Vec<Vector> = a.vertices.iter().chain(&b.vertices).cloned().collect();
    VPolytope::from_points(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> VPolytope {
        convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn interior_point_is_dropped() {
        let k = convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![0.25, 0.25]]).unwrap();
        assert_eq!(k.vertices().len(), 3);
        assert!(k.same_vertices(&tri(), 0.0));
    }

    #[test]
    fn cube_with_centre() {
        let mut pts: Vec<Vector> = (0..8)
            .map(|m: usize| (0..3).map(|k| ((m >> k) & 1) as f64).collect())
            .collect();
        pts.push(vec![0.5; 3]);
        let k = convex_hull(&pts).unwrap();
        assert_eq!(k.vertices().len(), 8);
        assert!((k.volume().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn difference_body_of_triangle_is_hexagon() {
        let t = tri();
        let h = minkowski_sum(&t, &t.negate()).unwrap();
        let want = convex_hull(&[
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(h.vertices().len(), 6);
        assert!(h.same_vertices(&want, 1e-12));
        assert!((h.volume().unwrap() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn sum_with_point_is_translate() {
        let t = tri();
        let pt = convex_hull(&[vec![2.0, 3.0], vec![2.0, 3.0], vec![2.0, 3.0]]);
        // a single point is not full-dimensional
        assert!(matches!(pt, Err(GeomError::DegenerateInput(_))));
        let moved = t.translate(&[2.0, 3.0]).unwrap();
        assert!((moved.volume().unwrap() - 0.5).abs() < 1e-15);
        assert!(moved.contains(&[2.1, 3.1]));
    }

    #[test]
    fn scale_rules() {
        let t = tri();
        assert_eq!(t.scale(0.0).unwrap_err(), GeomError::ZeroScale);
        assert!(t.scale(1.0).unwrap().same_vertices(&t, 0.0));
        let s = t.scale(-2.0).unwrap();
        assert!((s.volume().unwrap() - 2.0).abs() < 1e-14);
        assert!(s.contains(&[-0.5, -0.5]));
        assert!(!s.contains(&[0.5, 0.5]));
    }

    #[test]
    fn centroid_of_triangle() {
        let c = tri().centroid().unwrap();
        assert!((c[0] - 1.0 / 3.0).abs() < 1e-15 && (c[1] - 1.0 / 3.0).abs() < 1e-15);
    }
}
