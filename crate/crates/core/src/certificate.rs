//! The `n = 4, 5` certificate for the unbalanced difference-body
//! inequality: the target inequality, reduced to the middle indices, is a
//! nonnegative combination `a·(sum bound) + b·(difference body bound)`.
//!
//! Reduction drops `j = 0, n` and folds `j ↔ n−j`: pairs count twice and
//! the middle term (n even) once. For odd `n` every coefficient of the
//! difference-body row is even and the row is halved.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::binomial;
use crate::mixed::MixedVolumeProfile;
use crate::verify::{InequalityReport, StatementId};

/// Sign tolerance for `a`, `b` and the residual.
pub const CERT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateResult {
    pub n: usize,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub det: f64,
    pub det_factored: f64,
    /// Max-norm residual of the 2×2 system at `(a, b)`.
    pub residual: f64,
    /// `λ ∈ {0, 1}`: the system is singular and `(a, b)` is the limit.
    pub boundary: bool,
    pub valid: bool,
}

/// Middle-index rows of the three inequalities, `j = 1..=⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedRows {
    pub sum_bound: Vec<f64>,
    pub difference: Vec<f64>,
    pub target: Vec<f64>,
}

impl ReducedRows {
    pub fn new(n: usize, lambda: f64) -> Self {
        let w = |j: usize| lambda.powi(j as i32) * (1.0 - lambda).powi((n - j) as i32);
        let mut sum_bound = Vec::new();
        let mut difference = Vec::new();
        let mut target = Vec::new();
        for j in 1..=n / 2 {
            let paired = j != n - j;
            let s = if paired { w(j) + w(n - j) } else { w(j) };
            let mut d = if paired { 2.0 } else { 1.0 } * binomial(n, j);
            if n % 2 == 1 {
                d /= 2.0;
            }
            sum_bound.push(s);
            difference.push(d);
            target.push(binomial(n, j) * s);
        }
        ReducedRows { sum_bound, difference, target }
    }

    /// `Σ row_j · v_j` over the middle indices.
    pub fn apply(row: &[f64], v: &[f64]) -> f64 {
        row.iter().enumerate().map(|(i, c)| c * v[i + 1]).sum()
    }

    /// The same row evaluated at the simplex values `v_j = C(n,j)`, which
    /// is the right-hand side of each reduced inequality.
    pub fn bound(row: &[f64], n: usize) -> f64 {
        row.iter().enumerate().map(|(i, c)| c * binomial(n, i + 1)).sum()
    }
}

pub fn certificate(n: usize, lambda: f64) -> Result<CertificateResult> {
    if n != 4 && n != 5 {
        return Err(GeomError::InvalidParameter(format!("certificate exists for n = 4, 5, got {n}")));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeomError::InvalidParameter(format!("λ = {lambda} outside [0, 1]")));
    }
    let rows = ReducedRows::new(n, lambda);
    // columns: a multiplies the sum-bound row, b the difference row
    let m = [[rows.sum_bound[0], rows.difference[0]], [rows.sum_bound[1], rows.difference[1]]];
    let r = [rows.target[0], rows.target[1]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let det_factored = if n == 4 {
        let l = lambda;
        2.0 * l * (1.0 - l) * (3.0 * (1.0 - 2.0 * l).powi(2) + 2.0 * l * (1.0 - l))
    } else {
        det
    };
    let boundary = lambda == 0.0 || lambda == 1.0;
    let (a, b) = if boundary {
        (n as f64, 0.0)
    } else {
        let c = 1.0 / det;
        (c * (m[1][1] * r[0] - m[0][1] * r[1]), c * (m[0][0] * r[1] - m[1][0] * r[0]))
    };
    let residual = (0..2)
        .map(|i| (m[i][0] * a + m[i][1] * b - r[i]).abs())
        .fold(0.0, f64::max);
    let valid = a >= -CERT_TOL && b >= -CERT_TOL && (det > 0.0 || boundary);
    Ok(CertificateResult { n, lambda, a, b, det, det_factored, residual, boundary, valid })
}

/// Closed forms of the solution in its polynomial normalization (scaled by `det`):
/// `(a·det, b·det)`.
pub fn scaled_solution(n: usize, lambda: f64) -> Result<(f64, f64)> {
    let l = lambda;
    let lc = 1.0 - l;
    match n {
        4 => {
            let p = l.powi(3) * lc + l * lc.powi(3);
            let q = l * l * lc * lc;
            Ok((24.0 * l * lc * (1.0 - 2.0 * l).powi(2), 2.0 * p * q))
        }
        5 => {
            let p = l.powi(4) * lc + l * lc.powi(4);
            let q = l * l * lc.powi(3) + l.powi(3) * lc * lc;
            Ok((50.0 * (p - q), 5.0 * p * q))
        }
        _ => Err(GeomError::InvalidParameter(format!("certificate exists for n = 4, 5, got {n}"))),
    }
}

/// Checks that `a·(sum bound) + b·(difference bound)` reproduces the target
/// coefficientwise and that the target holds for `profile`. The report's
/// sides are those of the reduced target inequality.
pub fn verify_certificate_combination(n: usize, lambda: f64, profile: &MixedVolumeProfile) -> Result<InequalityReport> {
    if profile.n != n {
        return Err(GeomError::DimensionMismatch { expected: n, found: profile.n });
    }
    let cert = certificate(n, lambda)?;
    let rows = ReducedRows::new(n, lambda);
    let v = profile.normalized();
    let coef_residual = (0..rows.target.len())
        .map(|i| (cert.a * rows.sum_bound[i] + cert.b * rows.difference[i] - rows.target[i]).abs())
        .fold(0.0, f64::max);
    let slack = |row: &[f64]| ReducedRows::bound(row, n) - ReducedRows::apply(row, &v);
    let lhs = ReducedRows::apply(&rows.target, &v);
    let rhs = ReducedRows::bound(&rows.target, n);
    let mut r = InequalityReport::new(StatementId::Unbalanced, Vec::new(), n, lhs, rhs);
    r.lambda = Some(lambda);
    r.note = Some("certificate combination".into());
    r.extra.insert("a".into(), cert.a);
    r.extra.insert("b".into(), cert.b);
    r.extra.insert("coef_residual".into(), coef_residual);
    r.extra.insert("sum_bound_slack".into(), slack(&rows.sum_bound));
    r.extra.insert("difference_slack".into(), slack(&rows.difference));
    r.extra.insert("combined_slack".into(), cert.a * slack(&rows.sum_bound) + cert.b * slack(&rows.difference));
    Ok(r)
}

/// `s_j = λ^j (1−λ)^{n−j} + λ^{n−j} (1−λ)^j` is nonincreasing for
/// `j = 0..=⌊n/2⌋`.
pub fn symmetric_weight_monotonicity(n: usize, lambda: f64) -> bool {
    let s = |j: usize| {
        lambda.powi(j as i32) * (1.0 - lambda).powi((n - j) as i32)
            + lambda.powi((n - j) as i32) * (1.0 - lambda).powi(j as i32)
    };
    (0..n / 2).all(|j| s(j + 1) <= s(j) * (1.0 + 1e-12))
}
