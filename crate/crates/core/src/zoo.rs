//! Deterministic test-body generators.
//!
//! Randomness comes from ChaCha8 seeded with the body spec's seed, so a body spec
//! reproduces the same vertex list bit for bit on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{self, norm};
use crate::polytope::{convex_hull, VPolytope, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Generator {
    Simplex,
    Cube,
    Cross,
    RandomSphere,
    RandomGaussHull,
    ReuleauxPoly,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Simplex => "SIMPLEX",
            Generator::Cube => "CUBE",
            Generator::Cross => "CROSS",
            Generator::RandomSphere => "RANDOM_SPHERE",
            Generator::RandomGaussHull => "RANDOM_GAUSS_HULL",
            Generator::ReuleauxPoly => "REULEAUX_POLY",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let key = s.to_ascii_uppercase().replace('-', "_");
        [
            Generator::Simplex,
            Generator::Cube,
            Generator::Cross,
            Generator::RandomSphere,
            Generator::RandomGaussHull,
            Generator::ReuleauxPoly,
        ]
        .into_iter()
        .find(|g| g.name() == key)
    }
}

/// `x ↦ matrix·x + translation`, matrix row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub matrix: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
}

impl AffineMap {
    /// Random well-conditioned map: orthogonal × diagonal(0.5..2) × orthogonal,
    /// plus a Gaussian translation.
    pub fn random(dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q1 = random_orthogonal(dim, &mut rng);
        let q2 = random_orthogonal(dim, &mut rng);
        let diag: Vec<f64> = (0..dim).map(|_| rng.random_range(0.5..2.0)).collect();
        let matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).map(|k| q1[i][k] * diag[k] * q2[k][j]).sum())
                    .collect()
            })
            .collect();
        let translation = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        AffineMap { matrix, translation }
    }

    pub fn det(&self) -> f64 {
        linalg::det(self.matrix.clone())
    }
}

/// Orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
pub fn random_orthogonal<R: Rng>(dim: usize, rng: &mut R) -> Vec<Vec<f64>> {
    loop {
        let rows: Vec<Vector> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
            .collect();
        let q = linalg::orthonormalize(&rows, 1e-6);
        if q.len() == dim {
            return q;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodySpec {
    pub generator: Generator,
    pub dim: usize,
    /// Number of sampled points (random generators).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of arcs of the Reuleaux polygon (odd, >= 3).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<AffineMap>,
}

impl BodySpec {
    pub fn new(generator: Generator, dim: usize) -> Self {
        BodySpec { generator, dim, points: None, seed: None, arcs: None, transform: None }
    }

    pub fn random(generator: Generator, dim: usize, points: usize, seed: u64) -> Self {
        BodySpec { points: Some(points), seed: Some(seed), ..Self::new(generator, dim) }
    }

    pub fn reuleaux(arcs: usize) -> Self {
        BodySpec { arcs: Some(arcs), ..Self::new(Generator::ReuleauxPoly, 2) }
    }

    pub fn with_transform(mut self, map: AffineMap) -> Self {
        self.transform = Some(map);
        self
    }

    /// Stable human-readable identifier used in reports.
    pub fn label(&self) -> String {
        let mut parts = vec![format!("n={}", self.dim)];
        if let Some(m) = self.points {
            parts.push(format!("m={m}"));
        }
        if let Some(s) = self.seed {
            parts.push(format!("seed={s}"));
        }
        if let Some(k) = self.arcs {
            parts.push(format!("k={k}"));
        }
        let mut label = format!("{}({})", self.generator.name(), parts.join(","));
        if self.transform.is_some() {
            label.push_str("+affine");
        }
        label
    }
}

fn unit(dim: usize, k: usize) -> Vector {
    let mut e = vec![0.0; dim];
    e[k] = 1.0;
    e
}

pub fn generate(spec: &BodySpec) -> Result<VPolytope> {
    let n = spec.dim;
    if n == 0 || n > 8 {
        return Err(GeomError::BadSpec(format!("dimension {n} outside 1..=8")));
    }
    let sampled = |min: usize| -> Result<(usize, ChaCha8Rng)> {
        let m = spec.points.ok_or_else(|| GeomError::BadSpec("random generator needs `points`".into()))?;
        let seed = spec.seed.ok_or_else(|| GeomError::BadSpec("random generator needs `seed`".into()))?;
        if m < min {
            return Err(GeomError::BadSpec(format!("need at least {min} points, got {m}")));
        }
        Ok((m, ChaCha8Rng::seed_from_u64(seed)))
    };
    let points: Vec<Vector> = match spec.generator {
        Generator::Simplex => std::iter::once(vec![0.0; n]).chain((0..n).map(|k| unit(n, k))).collect(),
        Generator::Cube => (0..1usize << n)
            .map(|mask| (0..n).map(|k| ((mask >> k) & 1) as f64).collect())
            .collect(),
        Generator::Cross => (0..n)
            .flat_map(|k| [unit(n, k), linalg::scale(&unit(n, k), -1.0)])
            .collect(),
        Generator::RandomSphere => {
            let (m, mut rng) = sampled(n + 1)?;
            (0..m)
                .map(|_| loop {
                    let g: Vector = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                    let r = norm(&g);
                    if r > 1e-6 {
                        break linalg::scale(&g, 1.0 / r);
                    }
                })
                .collect()
        }
        Generator::RandomGaussHull => {
            let (m, mut rng) = sampled(n + 1)?;
            (0..m)
                .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
                .collect()
        }
        Generator::ReuleauxPoly => {
            let k = spec.arcs.unwrap_or(3);
            if n != 2 || k < 3 || k.is_multiple_of(2) {
                return Err(GeomError::BadSpec("Reuleaux polygon needs dim 2 and odd k >= 3".into()));
            }
            reuleaux_points(k, 8)
        }
    };
    let body = convex_hull(&points).map_err(|e| GeomError::BadSpec(e.to_string()))?;
    match &spec.transform {
        None => Ok(body),
        Some(map) => {
            if map.det().abs() < 1e-12 {
                return Err(GeomError::BadSpec("singular transform".into()));
            }
            body.affine_image(&map.matrix, &map.translation)
        }
    }
}

/// Points on the boundary of the Reuleaux k-gon built on the regular k-gon
/// inscribed in the unit circle; `per_arc` samples per arc, arc endpoints
/// included once.
fn reuleaux_points(k: usize, per_arc: usize) -> Vec<Vector> {
    use std::f64::consts::PI;
    let corner = |i: usize| {
        let t = PI / 2.0 + 2.0 * PI * i as f64 / k as f64;
        [t.cos(), t.sin()]
    };
    let mut pts = Vec::with_capacity(k * per_arc);
    for i in 0..k {
        // arc from corner i to corner i+1, centred at the opposite corner
        let centre = corner((i + k.div_ceil(2)) % k);
        let (a, b) = (corner(i), corner((i + 1) % k));
        let r = ((a[0] - centre[0]).powi(2) + (a[1] - centre[1]).powi(2)).sqrt();
        let ta = (a[1] - centre[1]).atan2(a[0] - centre[0]);
        let mut tb = (b[1] - centre[1]).atan2(b[0] - centre[0]);
        while tb < ta {
            tb += 2.0 * PI;
        }
        for s in 0..per_arc {
            let t = ta + (tb - ta) * s as f64 / per_arc as f64;
            pts.push(vec![centre[0] + r * t.cos(), centre[1] + r * t.sin()]);
        }
    }
    pts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Recenter {
    /// Centre of mass.
    Centroid,
    /// Mean of the vertices; interior but LP-free.
    VertexMean,
}

pub fn centroid(k: &VPolytope) -> Result<Vector> {
    k.centroid()
}

/// Translates `k` so the chosen centre lands at the origin; returns the
/// body and the translation applied.
pub fn recenter(k: &VPolytope, mode: Recenter) -> Result<(VPolytope, Vector)> {
    let c = match mode {
        Recenter::Centroid => k.centroid()?,
        Recenter::VertexMean => k.vertex_centroid(),
    };
    let t = linalg::scale(&c, -1.0);
    Ok((k.translate(&t)?, t))
}

/// Bodies used for whole-zoo checks in dimension `n`.
pub fn default_zoo(n: usize, seed: u64) -> Vec<BodySpec> {
    let mut zoo = vec![
        BodySpec::new(Generator::Simplex, n),
        BodySpec::new(Generator::Cube, n),
        BodySpec::new(Generator::Cross, n),
        BodySpec::random(Generator::RandomSphere, n, n + 4, seed),
        BodySpec::random(Generator::RandomGaussHull, n, 2 * n + 3, seed.wrapping_add(1)),
        BodySpec::new(Generator::Simplex, n).with_transform(AffineMap::random(n, seed.wrapping_add(2))),
    ];
    if n == 2 {
        zoo.push(BodySpec::reuleaux(3));
        zoo.push(BodySpec::reuleaux(5));
    }
    zoo
}
