//! Half-space representation, polarity and V↔H conversion.
//!
//! Vertex enumeration goes through the dual hull: translate the interior
//! witness to the origin, map each constraint `⟨a, x⟩ <= b` to the point
//! `a / b`, take the hull, and read each dual facet `⟨n, y⟩ <= h` back as
//! the primal vertex `n / h`.

use crate::error::{GeomError, Result};
use crate::hull::Hull;
use crate::linalg::{self, dot, norm};
use crate::lp::{self, LpOutcome};
use crate::polytope::{VPolytope, Vector};
use crate::tol::{scaled, EPS_GEOM, EPS_STRICT};

/// `⟨normal, x⟩ <= offset`, with `normal` of unit length.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    /// Normalises the constraint; a zero normal is rejected.
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        let n = norm(&normal);
        if !(n > 0.0) || !offset.is_finite() || normal.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::InvalidParameter("half-space needs a finite non-zero normal".into()));
        }
        Ok(Halfspace { normal: linalg::scale(&normal, 1.0 / n), offset: offset / n })
    }

    pub fn slack(&self, x: &[f64]) -> f64 {
        self.offset - dot(&self.normal, x)
    }
}

/// Bounded intersection of half-spaces carrying a strictly interior witness.
#[derive(Debug, Clone)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    witness: Vector,
}

impl HPolytope {
    /// Checks the witness and boundedness (support values at ±e_k).
    pub fn new(halfspaces: Vec<Halfspace>, witness: Vector) -> Result<Self> {
        let h = Self::trusted(halfspaces, witness)?;
        for k in 0..h.dim {
            for sign in [1.0, -1.0] {
                let mut u = vec![0.0; h.dim];
                u[k] = sign;
                h.support(&u)?;
            }
        }
        Ok(h)
    }

    /// Finds a witness by maximising the minimum slack.
    pub fn from_halfspaces(halfspaces: Vec<Halfspace>) -> Result<Self> {
        let d = halfspaces
            .first()
            .map(|h| h.normal.len())
            .ok_or_else(|| GeomError::InvalidParameter("no half-spaces".into()))?;
        let a: Vec<Vector> = halfspaces.iter().map(|h| h.normal.clone()).collect();
        let b: Vec<f64> = halfspaces.iter().map(|h| h.offset).collect();
        let (w, slack) = lp::max_slack_point(&a, &b)?;
        if slack <= EPS_STRICT {
            return Err(GeomError::EmptyIntersection);
        }
        debug_assert_eq!(w.len(), d);
        Self::new(halfspaces, w)
    }

    /// Witness validation only; for constraint sets known to be bounded.
    pub(crate) fn trusted(halfspaces: Vec<Halfspace>, witness: Vector) -> Result<Self> {
        let dim = witness.len();
        for h in &halfspaces {
            if h.normal.len() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, found: h.normal.len() });
            }
        }
        let worst = halfspaces.iter().map(|h| h.slack(&witness)).fold(f64::INFINITY, f64::min);
        if worst < EPS_STRICT {
            return Err(GeomError::BadWitness(worst));
        }
        Ok(HPolytope { dim, halfspaces, witness })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn witness(&self) -> &[f64] {
        &self.witness
    }

    /// `max ⟨u, x⟩` over the body; `Unbounded` if infinite.
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        let a: Vec<Vector> = self.halfspaces.iter().map(|h| h.normal.clone()).collect();
        let b: Vec<f64> = self.halfspaces.iter().map(|h| h.offset).collect();
        match lp::maximize(u, &a, &b)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Unbounded => Err(GeomError::Unbounded),
            LpOutcome::Infeasible => Err(GeomError::EmptyIntersection),
        }
    }

    pub fn contains(&self, x: &[f64], eps: f64) -> bool {
        self.halfspaces.iter().all(|h| h.slack(x) >= -eps)
    }

    pub fn translate(&self, t: &[f64]) -> Result<Self> {
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Halfspace { normal: h.normal.clone(), offset: h.offset + dot(&h.normal, t) })
            .collect();
        Self::trusted(hs, linalg::add(&self.witness, t))
    }

    /// Dual points `a_i / (b_i − ⟨a_i, w⟩)` relative to the witness.
    fn dual_points(&self) -> Vec<Vector> {
        self.halfspaces
            .iter()
            .map(|h| linalg::scale(&h.normal, 1.0 / h.slack(&self.witness)))
            .collect()
    }

    /// Drops redundant constraints: those whose dual point is not a vertex
    /// of the dual hull.
    pub fn prune(&self) -> Result<Self> {
        let dual = self.dual_points();
        let hull = Hull::build(&dual).map_err(|_| GeomError::Unbounded)?;
        let mut keep: Vec<usize> = hull
            .vertex_points()
            .iter()
            .map(|p| dual.iter().position(|q| q == p).expect("hull points come from the input"))
            .collect();
        keep.sort_unstable();
        let hs = keep.into_iter().map(|i| self.halfspaces[i].clone()).collect();
        Self::trusted(hs, self.witness.clone())
    }
}

/// Facet description of a V-polytope; the witness is the vertex centroid.
pub fn v_to_h(k: &VPolytope) -> HPolytope {
    let hs = k
        .facets()
        .iter()
        .map(|f| Halfspace { normal: f.normal.clone(), offset: f.offset })
        .collect();
    HPolytope::trusted(hs, k.vertex_centroid()).expect("vertex centroid is interior")
}

/// Vertex enumeration through the dual hull.
pub fn h_to_v(h: &HPolytope) -> Result<VPolytope> {
    let w = h.witness();
    let dual = h.dual_points();
    let dual_hull = match Hull::build(&dual) {
        Ok(hull) => hull,
        Err(GeomError::DegenerateInput(_)) => return Err(GeomError::Unbounded),
        Err(e) => return Err(e),
    };
    let eps = scaled(EPS_GEOM, dual_hull.extent());
    let mut verts = Vec::with_capacity(dual_hull.facets().len());
    for f in dual_hull.facets() {
        if f.offset <= eps {
            return Err(GeomError::Unbounded);
        }
        verts.push(linalg::add(&linalg::scale(&f.normal, 1.0 / f.offset), w));
    }
    VPolytope::from_points(&verts)
}

/// `K° = {y : ⟨v, y⟩ <= 1 for every vertex v}`; needs 0 strictly inside K.
pub fn polar(k: &VPolytope) -> Result<HPolytope> {
    if !k.contains_origin_strictly() {
        return Err(GeomError::OriginNotInterior);
    }
    let hs = k
        .vertices()
        .iter()
        .map(|v| Halfspace::new(v.clone(), 1.0))
        .collect::<Result<Vec<_>>>()?;
    HPolytope::trusted(hs, vec![0.0; k.dim()])
}

/// Polar of an H-polytope as a V-polytope: `conv{a_i / b_i}`. Needs the
/// origin strictly inside `h`.
pub fn polar_h(h: &HPolytope) -> Result<VPolytope> {
    let origin = vec![0.0; h.dim()];
    if h.halfspaces().iter().any(|hs| hs.slack(&origin) <= EPS_STRICT) {
        return Err(GeomError::OriginNotInterior);
    }
    let pts: Vec<Vector> = h
        .halfspaces()
        .iter()
        .map(|hs| linalg::scale(&hs.normal, 1.0 / hs.offset))
        .collect();
    let p = match VPolytope::from_points(&pts) {
        Ok(p) => p,
        Err(GeomError::DegenerateInput(_)) => return Err(GeomError::Unbounded),
        Err(e) => return Err(e),
    };
    if !p.contains_origin_strictly() {
        return Err(GeomError::Unbounded);
    }
    Ok(p)
}

/// Intersection with redundant constraints pruned and a fresh witness.
pub fn intersect(h1: &HPolytope, h2: &HPolytope) -> Result<HPolytope> {
    if h1.dim() != h2.dim() {
        return Err(GeomError::DimensionMismatch { expected: h1.dim(), found: h2.dim() });
    }
    let hs: Vec<Halfspace> = h1.halfspaces().iter().chain(h2.halfspaces()).cloned().collect();
    let a: Vec<Vector> = hs.iter().map(|h| h.normal.clone()).collect();
    let b: Vec<f64> = hs.iter().map(|h| h.offset).collect();
    let (w, slack) = lp::max_slack_point(&a, &b)?;
    if slack <= EPS_STRICT {
        return Err(GeomError::EmptyIntersection);
    }
    HPolytope::trusted(hs, w)?.prune()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;

    fn box_h(lo: &[f64], hi: &[f64]) -> HPolytope {
        let d = lo.len();
        let mut hs = Vec::new();
        for k in 0..d {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            hs.push(Halfspace::new(e.clone(), hi[k]).unwrap());
            hs.push(Halfspace::new(linalg::scale(&e, -1.0), -lo[k]).unwrap());
        }
        HPolytope::from_halfspaces(hs).unwrap()
    }

    fn sym_cube(d: usize) -> VPolytope {
        let pts: Vec<Vector> = (0..1usize << d)
            .map(|m| (0..d).map(|k| if (m >> k) & 1 == 1 { 1.0 } else { -1.0 }).collect())
            .collect();
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn cube_facets_are_unit_halfspaces() {
        let h = v_to_h(&sym_cube(3));
        assert_eq!(h.halfspaces().len(), 6);
        for hs in h.halfspaces() {
            assert!((hs.offset - 1.0).abs() < 1e-12);
            assert!((hs.normal.iter().map(|v| v.abs()).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_of_cube_is_cross_polytope() {
        for d in 2..=4 {
            let cross = polar_h(&v_to_h(&sym_cube(d))).unwrap();
            assert_eq!(cross.vertices().len(), 2 * d);
            let via_h = h_to_v(&polar(&sym_cube(d)).unwrap()).unwrap();
            assert!(via_h.same_vertices(&cross, 1e-12));
        }
    }

    #[test]
    fn box_intersection() {
        let a = box_h(&[0.0, 0.0], &[1.0, 1.0]);
        let b = box_h(&[0.5, 0.5], &[1.5, 1.5]);
        let c = intersect(&a, &b).unwrap();
        assert_eq!(c.halfspaces().len(), 4);
        let v = h_to_v(&c).unwrap();
        assert!((v.volume().unwrap() - 0.25).abs() < 1e-12);
        let far = box_h(&[2.0, 2.0], &[3.0, 3.0]);
        assert_eq!(intersect(&a, &far).unwrap_err(), GeomError::EmptyIntersection);
    }

    #[test]
    fn unbounded_is_detected() {
        let hs = vec![
            Halfspace::new(vec![1.0, 0.0], 1.0).unwrap(),
            Halfspace::new(vec![-1.0, 0.0], 1.0).unwrap(),
            Halfspace::new(vec![0.0, 1.0], 1.0).unwrap(),
        ];
        assert_eq!(HPolytope::new(hs.clone(), vec![0.0, 0.0]).unwrap_err(), GeomError::Unbounded);
        let h = HPolytope::trusted(hs, vec![0.0, 0.0]).unwrap();
        assert_eq!(h_to_v(&h).unwrap_err(), GeomError::Unbounded);
        assert_eq!(polar_h(&h).unwrap_err(), GeomError::Unbounded);
    }

    #[test]
    fn origin_must_be_interior_for_polarity() {
        let k = convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(polar(&k).unwrap_err(), GeomError::OriginNotInterior);
        let bad = HPolytope::new(
            vec![
                Halfspace::new(vec![1.0, 0.0], 2.0).unwrap(),
                Halfspace::new(vec![-1.0, 0.0], -1.0).unwrap(),
                Halfspace::new(vec![0.0, 1.0], 1.0).unwrap(),
                Halfspace::new(vec![0.0, -1.0], 1.0).unwrap(),
            ],
            vec![1.5, 0.0],
        )
        .unwrap();
        assert_eq!(polar_h(&bad).unwrap_err(), GeomError::OriginNotInterior);
    }

    #[test]
    fn bad_witness_is_rejected() {
        let hs = vec![Halfspace::new(vec![1.0], 1.0).unwrap(), Halfspace::new(vec![-1.0], 1.0).unwrap()];
        assert!(matches!(HPolytope::new(hs, vec![1.0]), Err(GeomError::BadWitness(_))));
    }

    #[test]
    fn redundant_constraints_are_pruned() {
        let mut hs = box_h(&[-1.0, -1.0], &[1.0, 1.0]).halfspaces().to_vec();
        hs.push(Halfspace::new(vec![1.0, 1.0], 5.0).unwrap());
        hs.push(hs[0].clone());
        let h = HPolytope::from_halfspaces(hs).unwrap().prune().unwrap();
        assert_eq!(h.halfspaces().len(), 4);
    }
}
