//! Fixtures shared by the criterion benchmarks.

use godbersen_core::zoo::{generate, BodySpec, Generator};
use godbersen_core::VPolytope;

/// Points sampled on the unit sphere, seeded so runs compare.
pub fn sphere_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    sphere_body(dim, count, seed).vertices().to_vec()
}

pub fn sphere_body(dim: usize, count: usize, seed: u64) -> VPolytope {
    generate(&BodySpec::random(Generator::RandomSphere, dim, count, seed)).expect("fixture body")
}

pub fn gauss_body(dim: usize, count: usize, seed: u64) -> VPolytope {
    generate(&BodySpec::random(Generator::RandomGaussHull, dim, count, seed)).expect("fixture body")
}
