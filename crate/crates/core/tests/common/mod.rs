//! Independent oracles for the integration tests. Nothing here goes through
//! the library's hull or LP code.
#![allow(dead_code)]

use godbersen_core::zoo::{generate, BodySpec, Generator};
use godbersen_core::VPolytope;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn sym_cube(d: usize) -> VPolytope {
    let pts: Vec<Vec<f64>> = (0..1usize << d)
        .map(|m| (0..d).map(|k| if (m >> k) & 1 == 1 { 1.0 } else { -1.0 }).collect())
        .collect();
    VPolytope::from_points(&pts).unwrap()
}

pub fn body(g: Generator, n: usize) -> VPolytope {
    generate(&BodySpec::new(g, n)).unwrap()
}

pub fn random_body(g: Generator, n: usize, m: usize, seed: u64) -> VPolytope {
    generate(&BodySpec::random(g, n, m, seed)).unwrap()
}

/// Five seeded bodies in `R^n` of varied shape.
pub fn seeded_bodies(n: usize) -> Vec<(String, VPolytope)> {
    [
        BodySpec::random(Generator::RandomSphere, n, n + 5, 11),
        BodySpec::random(Generator::RandomSphere, n, 2 * n + 4, 12),
        BodySpec::random(Generator::RandomGaussHull, n, n + 6, 13),
        BodySpec::random(Generator::RandomGaussHull, n, 3 * n, 14),
        BodySpec::new(Generator::Cross, n)
            .with_transform(godbersen_core::zoo::AffineMap::random(n, 15)),
    ]
    .into_iter()
    .map(|s| (s.label(), generate(&s).unwrap()))
    .collect()
}

/// Polygon vertices in counter-clockwise order around their mean.
pub fn ccw(points: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / points.len() as f64;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / points.len() as f64;
    let mut v: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    v.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    v
}

/// Shoelace area of a convex polygon given by its vertices in any order.
pub fn shoelace(points: &[Vec<f64>]) -> f64 {
    let v = ccw(points);
    let m = v.len();
    0.5 * (0..m).map(|i| v[i][0] * v[(i + 1) % m][1] - v[(i + 1) % m][0] * v[i][1]).sum::<f64>()
}

/// `V(K, L)` in the plane as `½ Σ_e h_K(u_e) |e|` over the edges of `L`.
pub fn planar_mixed_area(k: &[Vec<f64>], l: &[Vec<f64>]) -> f64 {
    let v = ccw(l);
    let m = v.len();
    let mut s = 0.0;
    for i in 0..m {
        let (a, b) = (v[i], v[(i + 1) % m]);
        let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
        // outward normal of a ccw edge, times the edge length
        let (nx, ny) = (ey, -ex);
        let len = (ex * ex + ey * ey).sqrt();
        let h = k.iter().map(|p| (p[0] * nx + p[1] * ny) / len).fold(f64::NEG_INFINITY, f64::max);
        s += h * len;
    }
    0.5 * s
}

/// Sutherland–Hodgman: convex polygon `subject` clipped by convex `clip`.
pub fn clip_polygon(subject: &[Vec<f64>], clip: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let c = ccw(clip);
    let mut out: Vec<[f64; 2]> = ccw(subject);
    for i in 0..c.len() {
        let (a, b) = (c[i], c[(i + 1) % c.len()]);
        let side = |p: [f64; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let (p, q) = (input[j], input[(j + 1) % input.len()]);
            let (sp, sq) = (side(p), side(q));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                let t = sp / (sp - sq);
                out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            }
        }
    }
    out.into_iter().map(|p| p.to_vec()).collect()
}

/// Points of the standard simplex, scaled.
pub fn scaled(points: &[Vec<f64>], s: f64) -> Vec<Vec<f64>> {
    points.iter().map(|p| p.iter().map(|x| s * x).collect()).collect()
}

/// `|det|` by cofactor expansion; small matrices only.
pub fn det_cofactor(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, v)| *v).collect())
                .collect();
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][c] * det_cofactor(&minor)
        })
        .sum()
}

pub fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn fact(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}
