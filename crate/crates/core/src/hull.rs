//! Incremental beneath-beyond convex hull in arbitrary dimension.
//!
//! The boundary is kept as a list of oriented (d−1)-simplices. A new point
//! replaces the simplices it sees (signed distance above tolerance) by the
//! cone over their horizon; horizon ridges are the ridges that occur exactly
//! once among the visible simplices, so no adjacency structure is stored.
//! Points at most `eps` outside are treated as inside, which keeps coplanar
//! clusters (cube faces, Minkowski sums) from producing slivers.
//!
//! After insertion, coplanar simplices are merged into true facets and a
//! referenced point is kept as a vertex only when the normals of the facets
//! through it span the whole space.

use std::collections::HashMap;

use crate::error::{GeomError, Result};
use crate::linalg::{self, dot, norm, orthonormalize, residual, sub};
use crate::tol::{scaled, COND_MAX, EPS_GEOM, EPS_RANK};

/// Boundary simplex with outward unit normal: `normal·x <= offset` inside.
#[derive(Debug, Clone)]
pub(crate) struct Simplex {
    pub verts: Vec<usize>,
    pub normal: Vec<f64>,
    pub offset: f64,
    /// Product of Gram-Schmidt residuals, proportional to the simplex volume.
    quality: f64,
}

/// A facet of the hull: outward unit normal, offset and the indices of the
/// hull vertices lying on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Hull {
    dim: usize,
    points: Vec<Vec<f64>>,
    simplices: Vec<Simplex>,
    facets: Vec<Facet>,
    vertices: Vec<usize>,
    interior: Vec<f64>,
    extent: f64,
}

pub(crate) fn validate_points(points: &[Vec<f64>]) -> Result<usize> {
    let first = points
        .first()
        .ok_or_else(|| GeomError::DegenerateInput("empty point set".into()))?;
    let d = first.len();
    if d == 0 {
        return Err(GeomError::DegenerateInput("zero-dimensional points".into()));
    }
    for p in points {
        if p.len() != d {
            return Err(GeomError::DimensionMismatch { expected: d, found: p.len() });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
    }
    Ok(d)
}

pub(crate) fn extent_of(points: &[Vec<f64>]) -> f64 {
    let d = points[0].len();
    (0..d)
        .map(|k| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            hi - lo
        })
        .fold(0.0, f64::max)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

impl Hull {
    pub fn build(input: &[Vec<f64>]) -> Result<Self> {
        let d = validate_points(input)?;
        let mut points = input.to_vec();
        points.sort_by(|a, b| lex_cmp(a, b));
        points.dedup();
        let extent = extent_of(&points);
        let eps = scaled(EPS_GEOM, extent);
        let eps_rank = scaled(EPS_RANK, extent);

        let seed = initial_simplex(&points, d, eps_rank)?;
        let interior = linalg::mean(&seed.iter().map(|&i| points[i].clone()).collect::<Vec<_>>());

        let mut simplices = Vec::with_capacity(d + 1);
        for skip in 0..=d {
            let mut verts: Vec<usize> = seed
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &i)| i)
                .collect();
            verts.sort_unstable();
            simplices.push(make_simplex(&points, verts, &interior)?);
        }

        let mut order: Vec<usize> = (0..points.len()).filter(|i| !seed.contains(i)).collect();
        let far: Vec<f64> = points.iter().map(|p| linalg::dist(p, &interior)).collect();
        order.sort_by(|&a, &b| far[b].total_cmp(&far[a]).then(a.cmp(&b)));

        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for p_idx in order {
            let p = &points[p_idx];
            let visible: Vec<bool> = simplices
                .iter()
                .map(|s| dot(&s.normal, p) - s.offset > eps)
                .collect();
            if !visible.iter().any(|&v| v) {
                continue;
            }
            ridge_count.clear();
            for (s, _) in simplices.iter().zip(&visible).filter(|(_, &v)| v) {
                for skip in 0..d {
                    let ridge: Vec<usize> = s
                        .verts
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &i)| i)
                        .collect();
                    *ridge_count.entry(ridge).or_insert(0) += 1;
                }
            }
            let mut horizon: Vec<&Vec<usize>> =
                ridge_count.iter().filter(|(_, &c)| c == 1).map(|(r, _)| r).collect();
            horizon.sort();
            let mut fresh = Vec::with_capacity(horizon.len());
            for ridge in horizon {
                let mut verts = ridge.clone();
                verts.push(p_idx);
                verts.sort_unstable();
                fresh.push(make_simplex(&points, verts, &interior)?);
            }
            let mut keep = Vec::with_capacity(simplices.len() + fresh.len());
            for (s, v) in simplices.into_iter().zip(visible) {
                if !v {
                    keep.push(s);
                }
            }
            keep.extend(fresh);
            simplices = keep;
        }

        let mut hull = Hull {
            dim: d,
            points,
            simplices,
            facets: Vec::new(),
            vertices: Vec::new(),
            interior,
            extent,
        };
        hull.merge_facets(eps);
        Ok(hull)
    }

    fn merge_facets(&mut self, eps: f64) {
        let d = self.dim;
        let mut order: Vec<usize> = (0..self.simplices.len()).collect();
        order.sort_by(|&a, &b| {
            self.simplices[b]
                .quality
                .total_cmp(&self.simplices[a].quality)
                .then(a.cmp(&b))
        });
        // (representative simplex, member vertex indices)
        let mut clusters: Vec<(usize, Vec<usize>)> = Vec::new();
        for &si in &order {
            let s = &self.simplices[si];
            let found = clusters.iter_mut().find(|(rep, _)| {
                let r = &self.simplices[*rep];
                dot(&r.normal, &s.normal) > 0.5
                    && s.verts
                        .iter()
                        .all(|&v| (dot(&r.normal, &self.points[v]) - r.offset).abs() <= eps)
            });
            match found {
                Some((_, members)) => members.extend_from_slice(&s.verts),
                None => clusters.push((si, s.verts.clone())),
            }
        }

        let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
        for (ci, (_, members)) in clusters.iter_mut().enumerate() {
            members.sort_unstable();
            members.dedup();
            for &v in members.iter() {
                incident.entry(v).or_default().push(ci);
            }
        }
        let mut vertices: Vec<usize> = incident
            .iter()
            .filter(|(_, cs)| {
                let normals: Vec<Vec<f64>> = cs
                    .iter()
                    .map(|&c| self.simplices[clusters[c].0].normal.clone())
                    .collect();
                cs.len() >= d && orthonormalize(&normals, EPS_RANK).len() == d
            })
            .map(|(&v, _)| v)
            .collect();
        vertices.sort_unstable();
        let is_vertex: Vec<bool> = {
            let mut flags = vec![false; self.points.len()];
            for &v in &vertices {
                flags[v] = true;
            }
            flags
        };
        self.facets = clusters
            .into_iter()
            .map(|(rep, members)| {
                let r = &self.simplices[rep];
                Facet {
                    normal: r.normal.clone(),
                    offset: r.offset,
                    vertices: members.into_iter().filter(|&v| is_vertex[v]).collect(),
                }
            })
            .collect();
        self.vertices = vertices;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Irredundant vertices, in lexicographic order.
    pub fn vertex_points(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn interior_point(&self) -> &[f64] {
        &self.interior
    }

    /// Boundary triangulation as lists of point indices.
    pub fn boundary_simplices(&self) -> impl Iterator<Item = &[usize]> {
        self.simplices.iter().map(|s| s.verts.as_slice())
    }

    /// Largest signed facet distance; `<= 0` means inside.
    pub fn max_violation(&self, p: &[f64]) -> f64 {
        self.facets
            .iter()
            .map(|f| dot(&f.normal, p) - f.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, p: &[f64], eps: f64) -> bool {
        self.max_violation(p) <= eps
    }

    /// Volume and centroid from the fan over the boundary triangulation,
    /// apexed at the interior point.
    pub fn volume_and_centroid(&self) -> Result<(f64, Vec<f64>)> {
        let d = self.dim;
        let c = &self.interior;
        let fact = linalg::factorial(d);
        let mut vol = 0.0;
        let mut hadamard_mass = 0.0;
        let mut moment = vec![0.0; d];
        for s in &self.simplices {
            let rows: Vec<Vec<f64>> = s.verts.iter().map(|&v| sub(&self.points[v], c)).collect();
            hadamard_mass += rows.iter().map(|r| norm(r)).product::<f64>();
            let v = linalg::det(rows.clone()).abs() / fact;
            vol += v;
            // centroid of the simplex (c, verts) = c + sum(rows)/(d+1)
            for k in 0..d {
                let sum_k: f64 = rows.iter().map(|r| r[k]).sum();
                moment[k] += v * sum_k / (d + 1) as f64;
            }
        }
        // rounding error of each determinant is proportional to its Hadamard
        // bound, so slivers only matter when they dominate the total
        if hadamard_mass > COND_MAX * vol * fact {
            return Err(GeomError::NumericalFailure(format!(
                "triangulation condition estimate {:e} exceeds {COND_MAX:e}",
                hadamard_mass / (vol * fact).max(f64::MIN_POSITIVE)
            )));
        }
        let centroid = (0..d).map(|k| c[k] + moment[k] / vol).collect();
        Ok((vol, centroid))
    }

    /// Applies `x ↦ s·x + t` (s ≠ 0) without recomputing the hull.
    pub(crate) fn map_scale_translate(&self, s: f64, t: &[f64]) -> Hull {
        let map = |p: &Vec<f64>| -> Vec<f64> { p.iter().zip(t).map(|(x, ti)| s * x + ti).collect() };
        let flip = s.signum();
        let points: Vec<Vec<f64>> = self.points.iter().map(map).collect();
        let simplices = self
            .simplices
            .iter()
            .map(|sx| {
                let normal: Vec<f64> = sx.normal.iter().map(|v| v * flip).collect();
                let offset = s.abs() * sx.offset + dot(&normal, t);
                Simplex {
                    verts: sx.verts.clone(),
                    normal,
                    offset,
                    quality: sx.quality * s.abs().powi(self.dim as i32 - 1),
                }
            })
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let normal: Vec<f64> = f.normal.iter().map(|v| v * flip).collect();
                let offset = s.abs() * f.offset + dot(&normal, t);
                Facet { normal, offset, vertices: f.vertices.clone() }
            })
            .collect();
        let mut hull = Hull {
            dim: self.dim,
            points,
            simplices,
            facets,
            vertices: self.vertices.clone(),
            interior: map(&self.interior),
            extent: self.extent * s.abs(),
        };
        if s < 0.0 {
            // Lexicographic order of vertices reverses under negation.
            hull.vertices.sort_by(|&a, &b| lex_cmp(&hull.points[a], &hull.points[b]));
        }
        hull
    }
}

/// Greedy choice of d+1 affinely independent points, starting from the
/// lexicographically smallest one.
fn initial_simplex(points: &[Vec<f64>], d: usize, eps_rank: f64) -> Result<Vec<usize>> {
    let mut chosen = vec![0usize];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let origin = &points[0];
    while chosen.len() < d + 1 {
        let mut best: Option<(f64, usize, Vec<f64>)> = None;
        for (i, p) in points.iter().enumerate() {
            let r = residual(&basis, &sub(p, origin));
            let nr = norm(&r);
            if best.as_ref().is_none_or(|(bn, _, _)| nr > *bn) {
                best = Some((nr, i, r));
            }
        }
        let (nr, i, r) = best.expect("non-empty");
        if nr <= eps_rank {
            return Err(GeomError::DegenerateInput(format!(
                "affine rank {} < {}",
                chosen.len(),
                d + 1
            )));
        }
        basis.push(linalg::scale(&r, 1.0 / nr));
        chosen.push(i);
    }
    Ok(chosen)
}

fn make_simplex(points: &[Vec<f64>], verts: Vec<usize>, interior: &[f64]) -> Result<Simplex> {
    let d = interior.len();
    let base = &points[verts[0]];
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
    let mut quality = 1.0;
    for &v in &verts[1..] {
        let r = residual(&basis, &sub(&points[v], base));
        let nr = norm(&r);
        if nr == 0.0 {
            return Err(GeomError::NumericalFailure("degenerate boundary simplex".into()));
        }
        quality *= nr;
        basis.push(linalg::scale(&r, 1.0 / nr));
    }
    let normal = linalg::complement(&basis, d).pop().expect("codimension one");
    let mut offset = verts.iter().map(|&v| dot(&normal, &points[v])).sum::<f64>() / verts.len() as f64;
    let mut normal = normal;
    if dot(&normal, interior) > offset {
        normal.iter_mut().for_each(|v| *v = -*v);
        offset = -offset;
    }
    Ok(Simplex { verts, normal, offset, quality })
}
