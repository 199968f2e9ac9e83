//! Mixed volumes `V_j = V(K[j], −K[n−j])`.
//!
//! `λ ↦ vol((1−λ)K + λ(−K))` is a degree-n polynomial whose Bernstein
//! coefficients are `V_{n−j}` (equal to `V_j` by the reflection `x ↦ −x`).
//! The profile samples it at `λ_i = i/n` and solves the collocation system.
//! [`polarization_mixed_volume`] is an independent inclusion-exclusion
//! route used for cross-checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{self, binomial};
use crate::polytope::{minkowski_sum, VPolytope};
use crate::tol::INTERP_COND_MAX;

/// Profile of a body: `values[j] = V(K[j], −K[n−j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ProfileJson", from = "ProfileJson")]
pub struct MixedVolumeProfile {
    pub n: usize,
    pub vol_k: f64,
    pub values: Vec<f64>,
    pub condition_estimate: f64,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    n: usize,
    vol: f64,
    #[serde(rename = "V")]
    values: Vec<f64>,
    #[serde(default, skip_deserializing)]
    ratios: Vec<f64>,
    cond: f64,
}

impl From<MixedVolumeProfile> for ProfileJson {
    fn from(p: MixedVolumeProfile) -> Self {
        let ratios = p.godbersen_ratios();
        ProfileJson { n: p.n, vol: p.vol_k, values: p.values, ratios, cond: p.condition_estimate }
    }
}

impl From<ProfileJson> for MixedVolumeProfile {
    fn from(p: ProfileJson) -> Self {
        MixedVolumeProfile { n: p.n, vol_k: p.vol, values: p.values, condition_estimate: p.cond }
    }
}

/// Relative tolerance for the profile invariants.
pub const PROFILE_TOL: f64 = 1e-7;

impl MixedVolumeProfile {
    /// `V_j / vol(K)`.
    pub fn normalized(&self) -> Vec<f64> {
        self.values.iter().map(|v| v / self.vol_k).collect()
    }

    /// `V_j / (C(n,j) vol(K))`; Godbersen's conjecture says these are <= 1.
    pub fn godbersen_ratios(&self) -> Vec<f64> {
        godbersen_ratios(self)
    }

    /// Bernstein form `Σ C(n,j) λ^j (1−λ)^{n−j} V_j`.
    pub fn blend_polynomial(&self, lambda: f64) -> f64 {
        let n = self.n;
        (0..=n)
            .map(|j| binomial(n, j) * lambda.powi(j as i32) * (1.0 - lambda).powi((n - j) as i32) * self.values[j])
            .sum()
    }

    /// Violations of endpoint, symmetry and Alexandrov invariants at
    /// relative tolerance `tol`; empty when all hold.
    pub fn invariant_violations(&self, tol: f64) -> Vec<String> {
        let n = self.n;
        let vol = self.vol_k;
        let mut out = Vec::new();
        for j in [0, n] {
            if (self.values[j] - vol).abs() > tol * vol {
                out.push(format!("endpoint V_{j} = {} != vol {vol}", self.values[j]));
            }
        }
        for j in 0..=n / 2 {
            let (a, b) = (self.values[j], self.values[n - j]);
            if (a - b).abs() > tol * a.abs().max(b.abs()) {
                out.push(format!("asymmetry V_{j} = {a} vs V_{} = {b}", n - j));
            }
        }
        for (j, &v) in self.values.iter().enumerate() {
            if v < vol * (1.0 - tol) {
                out.push(format!("Alexandrov V_{j} = {v} < vol {vol}"));
            }
        }
        out
    }
}

/// `vol((1−λ)K + λ(−K))`, exact `vol(K)` at the endpoints.
pub fn blend_volume(k: &VPolytope, lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeomError::InvalidParameter(format!("λ = {lambda} outside [0, 1]")));
    }
    if lambda == 0.0 || lambda == 1.0 {
        return k.volume();
    }
    minkowski_sum(&k.scale(1.0 - lambda)?, &k.scale(-lambda)?)?.volume()
}

/// Bernstein collocation matrix at the uniform nodes `i/n`.
fn collocation_matrix(n: usize) -> Vec<Vec<f64>> {
    (0..=n)
        .map(|i| {
            let l = i as f64 / n as f64;
            (0..=n)
                .map(|j| binomial(n, j) * l.powi(j as i32) * (1.0 - l).powi((n - j) as i32))
                .collect()
        })
        .collect()
}

pub fn mixed_volume_profile(k: &VPolytope) -> Result<MixedVolumeProfile> {
    let n = k.dim();
    if n > 8 {
        return Err(GeomError::InvalidParameter(format!("profile needs n <= 8, got {n}")));
    }
    let vol = k.volume()?;
    let samples: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|i| blend_volume(k, i as f64 / n as f64))
        .collect::<Result<_>>()?;
    let a = collocation_matrix(n);
    let inv = linalg::inverse(&a).ok_or(GeomError::IllConditioned(f64::INFINITY))?;
    let cond = linalg::norm_1(&a) * linalg::norm_1(&inv);
    if cond > INTERP_COND_MAX {
        return Err(GeomError::IllConditioned(cond));
    }
    let coeffs = linalg::solve(a, samples).ok_or(GeomError::IllConditioned(f64::INFINITY))?;
    // coefficient of λ^j (1−λ)^{n−j} is V(K[n−j], −K[j])
    let values = (0..=n).map(|j| coeffs[n - j]).collect();
    Ok(MixedVolumeProfile { n, vol_k: vol, values, condition_estimate: cond })
}

pub fn godbersen_ratios(profile: &MixedVolumeProfile) -> Vec<f64> {
    let n = profile.n;
    profile
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| v / (binomial(n, j) * profile.vol_k))
        .collect()
}

/// `V(K_1, …, K_n) = (1/n!) Σ_{∅≠S⊆[n]} (−1)^{n−|S|} vol(Σ_{i∈S} K_i)`.
///
/// Identical arguments are grouped, so `V(K[j], L[n−j])` costs
/// `(j+1)(n−j+1) − 1` volumes instead of `2^n − 1`.
pub fn polarization_mixed_volume(bodies: &[VPolytope]) -> Result<f64> {
    let n = bodies.len();
    let d = bodies.first().map(VPolytope::dim).unwrap_or(0);
    if n == 0 || n != d {
        return Err(GeomError::DimensionMismatch { expected: d, found: n });
    }
    if n > 5 {
        return Err(GeomError::InvalidParameter(format!("polarization capped at n <= 5, got {n}")));
    }
    for b in bodies {
        b.check_dim(d)?;
    }
    let mut groups: Vec<(&VPolytope, usize)> = Vec::new();
    for b in bodies {
        match groups.iter_mut().find(|(g, _)| g.same_vertices(b, 0.0)) {
            Some((_, m)) => *m += 1,
            None => groups.push((b, 1)),
        }
    }
    let mut counts = vec![0usize; groups.len()];
    let mut total = 0.0;
    loop {
        // next count vector in mixed radix
        let mut pos = 0;
        loop {
            if pos == groups.len() {
                return Ok(total / linalg::factorial(n));
            }
            if counts[pos] < groups[pos].1 {
                counts[pos] += 1;
                break;
            }
            counts[pos] = 0;
            pos += 1;
        }
        let size: usize = counts.iter().sum();
        let mut weight = if (n - size).is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut sum: Option<VPolytope> = None;
        for ((body, m), &c) in groups.iter().zip(&counts) {
            if c == 0 {
                continue;
            }
            weight *= binomial(*m, c);
            let part = body.scale(c as f64)?;
            sum = Some(match sum {
                None => part,
                Some(acc) => minkowski_sum(&acc, &part)?,
            });
        }
        total += weight * sum.expect("non-empty subset").volume()?;
    }
}

/// `V(K[j], −K[n−j])` through [`polarization_mixed_volume`].
pub fn polarization_profile_entry(k: &VPolytope, j: usize) -> Result<f64> {
    let n = k.dim();
    let neg = k.negate();
    let mut args = vec![k.clone(); j];
    args.extend(std::iter::repeat_n(neg, n - j));
    polarization_mixed_volume(&args)
}
