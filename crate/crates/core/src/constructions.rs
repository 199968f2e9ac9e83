//! Auxiliary bodies: the lifted body `C`, the body `T` in `R^{2n+1}`, the
//! join `conv(K×{0} ∪ {0}×L)` in `R^{2n}` with its diagonal sections and
//! shadows, unbalanced difference bodies, `conv(K ∪ −L)` and
//! `(K° + L°)°`.

use crate::error::{GeomError, Result};
use crate::hpoly::{h_to_v, polar};
use crate::io::BodyRecord;
use crate::linalg::{binomial, factorial};
use crate::polytope::{hull_of_union, minkowski_sum, VPolytope, Vector};
use crate::subspace::{project, section, AffineSubspace};

fn check_unit(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) || lambda.is_nan() {
        return Err(GeomError::InvalidParameter(format!("λ = {lambda} outside [0, 1]")));
    }
    Ok(())
}

fn check_open_unit(name: &str, t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(GeomError::InvalidParameter(format!("{name} = {t} outside (0, 1)")));
    }
    Ok(())
}

fn lift(head: &[f64], v: &[f64], s: f64) -> Vector {
    head.iter().copied().chain(v.iter().map(|x| s * x)).collect()
}

/// `conv({0}×(1−λ)K ∪ {1}×(−λK)) ⊂ R^{n+1}`.
#[derive(Debug, Clone)]
pub struct LiftedBodyC {
    pub base_dim: usize,
    pub lambda: f64,
    pub body: VPolytope,
}

impl LiftedBodyC {
    pub fn label(&self, base: &str) -> String {
        format!("C({base},λ={})", self.lambda)
    }

    pub fn record(&self, base: &str) -> BodyRecord {
        BodyRecord::from_polytope(&self.body, self.label(base))
    }

    /// Horizontal slice at height `t ∈ [0, 1]`, as a body in `R^n`.
    pub fn slice(&self, t: f64) -> Result<VPolytope> {
        check_unit(t)?;
        let n = self.base_dim;
        let mut point = vec![0.0; n + 1];
        point[0] = t;
        let basis = (1..=n)
            .map(|i| {
                let mut e = vec![0.0; n + 1];
                e[i] = 1.0;
                e
            })
            .collect();
        section(&self.body, &AffineSubspace::new(point, basis)?)
    }
}

#[allow(non_snake_case)]
pub fn build_C(k: &VPolytope, lambda: f64) -> Result<LiftedBodyC> {
    check_unit(lambda)?;
    let n = k.dim();
    let mut pts = Vec::with_capacity(2 * k.vertices().len());
    // at the endpoints one of the two slices is the apex point
    if lambda < 1.0 {
        pts.extend(k.vertices().iter().map(|v| lift(&[0.0], v, 1.0 - lambda)));
    } else {
        pts.push(vec![0.0; n + 1]);
    }
    if lambda > 0.0 {
        pts.extend(k.vertices().iter().map(|v| lift(&[1.0], v, -lambda)));
    } else {
        pts.push(lift(&[1.0], &vec![0.0; n], 1.0));
    }
    let body = VPolytope::from_points(&pts)?;
    Ok(LiftedBodyC { base_dim: n, lambda, body })
}

/// Closed form `(1/(n+1)) Σ_j (1−λ)^{n−j} λ^j V_j` for `vol(C)`.
pub fn c_volume_from_profile(values: &[f64], lambda: f64) -> f64 {
    let n = values.len() - 1;
    let s: f64 = values
        .iter()
        .enumerate()
        .map(|(j, v)| (1.0 - lambda).powi((n - j) as i32) * lambda.powi(j as i32) * v)
        .sum();
    s / (n + 1) as f64
}

/// Largest base dimension for which `T` is built (ambient dimension 7).
pub const T_MAX_BASE_DIM: usize = 3;

/// `conv({(0,0,y) : y ∈ K2} ∪ {(1,x,−x) : x ∈ K1}) ⊂ R^{2n+1}`, coordinates
/// ordered `(θ, x, y)`.
#[derive(Debug, Clone)]
pub struct LiftedBodyT {
    pub base_dim: usize,
    pub body: VPolytope,
    pub k1: VPolytope,
    pub k2: VPolytope,
}

impl LiftedBodyT {
    pub fn label(&self, k1: &str, k2: &str) -> String {
        format!("T({k1},{k2})")
    }

    /// `E = {(θ0, x, 0)}`.
    pub fn section_plane(&self, theta0: f64) -> Result<AffineSubspace> {
        let n = self.base_dim;
        let mut point = vec![0.0; 2 * n + 1];
        point[0] = theta0;
        AffineSubspace::coordinate(2 * n + 1, &(1..=n).collect::<Vec<_>>())
            .and_then(|e| AffineSubspace::new(point, e.basis().to_vec()))
    }

    /// `E^⊥ = span(e_θ, y-block)`.
    pub fn projection_plane(&self) -> Result<AffineSubspace> {
        let n = self.base_dim;
        let axes: Vec<usize> = std::iter::once(0).chain(n + 1..=2 * n).collect();
        AffineSubspace::coordinate(2 * n + 1, &axes)
    }

    /// `n! n! / (2n+1)! · vol(K1) vol(K2)`.
    pub fn closed_form_volume(&self) -> Result<f64> {
        let n = self.base_dim;
        let c = factorial(n) * factorial(n) / factorial(2 * n + 1);
        Ok(c * self.k1.volume()? * self.k2.volume()?)
    }
}

#[allow(non_snake_case)]
pub fn build_T(k1: &VPolytope, k2: &VPolytope) -> Result<LiftedBodyT> {
    let n = k1.dim();
    k2.check_dim(n)?;
    if n > T_MAX_BASE_DIM {
        return Err(GeomError::InvalidParameter(format!("T needs n <= {T_MAX_BASE_DIM}, got {n}")));
    }
    let zeros = vec![0.0; n];
    let mut pts: Vec<Vector> = k2
        .vertices()
        .iter()
        .map(|y| [0.0].iter().chain(&zeros).chain(y).copied().collect())
        .collect();
    pts.extend(k1.vertices().iter().map(|x| {
        std::iter::once(1.0).chain(x.iter().copied()).chain(x.iter().map(|v| -v)).collect()
    }));
    let body = VPolytope::from_points(&pts)?;
    Ok(LiftedBodyT { base_dim: n, body, k1: k1.clone(), k2: k2.clone() })
}

/// `T ∩ {(θ0, x, 0)}` in the `x` coordinates; equals `θ0K1 ∩ (1−θ0)K2`.
#[allow(non_snake_case)]
pub fn section_T(t: &LiftedBodyT, theta0: f64) -> Result<VPolytope> {
    check_open_unit("θ0", theta0)?;
    section(&t.body, &t.section_plane(theta0)?)
}

/// Shadow of `T` on `span(e_θ, y-block)`, coordinates `(θ, y)`.
#[allow(non_snake_case)]
pub fn project_T(t: &LiftedBodyT) -> Result<VPolytope> {
    project(&t.body, &t.projection_plane()?)
}

/// Largest base dimension for the join in `R^{2n}`.
pub const DIAG_MAX_BASE_DIM: usize = 3;

/// `conv(K×{0} ∪ {0}×L) ⊂ R^{2n}`; both bodies must contain the origin.
#[allow(non_snake_case)]
pub fn build_diag_C(k: &VPolytope, l: &VPolytope) -> Result<VPolytope> {
    let n = k.dim();
    l.check_dim(n)?;
    if n > DIAG_MAX_BASE_DIM {
        return Err(GeomError::InvalidParameter(format!("diagonal join needs n <= {DIAG_MAX_BASE_DIM}, got {n}")));
    }
    let origin = vec![0.0; n];
    if !k.contains(&origin) || !l.contains(&origin) {
        return Err(GeomError::OriginNotContained);
    }
    let zeros = vec![0.0; n];
    let pts: Vec<Vector> = k
        .vertices()
        .iter()
        .map(|x| x.iter().chain(&zeros).copied().collect())
        .chain(l.vertices().iter().map(|y| zeros.iter().chain(y).copied().collect()))
        .collect();
    VPolytope::from_points(&pts)
}

/// `vol(K) vol(L) / C(2n, n)`.
pub fn diag_closed_form_volume(k: &VPolytope, l: &VPolytope) -> Result<f64> {
    let n = k.dim();
    Ok(k.volume()? * l.volume()? / binomial(2 * n, n))
}

/// `ρ = √(λ² + (1−λ)²)`: the length of `(λx, (1−λ)x)` for unit `x`. A body
/// given in the `x` parameter of `E_λ` has intrinsic volume `ρ^n` times
/// larger.
pub fn diag_rho(lambda: f64) -> f64 {
    (lambda * lambda + (1.0 - lambda) * (1.0 - lambda)).sqrt()
}

/// Orthonormal bases of `E_λ = {(λx, (1−λ)x)}` and `E_λ^⊥ = {((1−λ)x, −λx)}`.
pub fn diag_planes(n: usize, lambda: f64) -> Result<(AffineSubspace, AffineSubspace)> {
    check_open_unit("λ", lambda)?;
    let rho = diag_rho(lambda);
    let block = |a: f64, b: f64| -> Vec<Vector> {
        (0..n)
            .map(|i| {
                let mut v = vec![0.0; 2 * n];
                v[i] = a / rho;
                v[n + i] = b / rho;
                v
            })
            .collect()
    };
    let e = AffineSubspace::new(vec![0.0; 2 * n], block(lambda, 1.0 - lambda))?;
    let perp = AffineSubspace::new(vec![0.0; 2 * n], block(1.0 - lambda, -lambda))?;
    Ok((e, perp))
}

fn half_dim(c: &VPolytope) -> Result<usize> {
    let d = c.dim();
    if !d.is_multiple_of(2) {
        return Err(GeomError::DimensionMismatch { expected: d + 1, found: d });
    }
    Ok(d / 2)
}

/// `C ∩ E_λ` in intrinsic orthonormal coordinates.
pub fn diag_section(c: &VPolytope, lambda: f64) -> Result<VPolytope> {
    let (e, _) = diag_planes(half_dim(c)?, lambda)?;
    section(c, &e)
}

/// Shadow of `C` on `E_λ^⊥` in intrinsic orthonormal coordinates.
pub fn diag_projection(c: &VPolytope, lambda: f64) -> Result<VPolytope> {
    let (_, perp) = diag_planes(half_dim(c)?, lambda)?;
    project(c, &perp)
}

/// Rewrites an intrinsic `E_λ` or `E_λ^⊥` body in the `x` parameter.
pub fn diag_to_parameter(intrinsic: &VPolytope, lambda: f64) -> Result<VPolytope> {
    intrinsic.scale(1.0 / diag_rho(lambda))
}

/// `D_λK = (1−λ)K + λ(−K)`.
pub fn unbalanced_difference_body(k: &VPolytope, lambda: f64) -> Result<VPolytope> {
    check_unit(lambda)?;
    if lambda == 0.0 {
        return Ok(k.clone());
    }
    if lambda == 1.0 {
        return Ok(k.negate());
    }
    minkowski_sum(&k.scale(1.0 - lambda)?, &k.scale(-lambda)?)
}

/// `conv(K ∪ −L)`.
pub fn conv_union(k: &VPolytope, l: &VPolytope) -> Result<VPolytope> {
    hull_of_union(k, &l.negate())
}

/// `(K° + L°)°`, through the polar pipeline.
pub fn polar_sum_body(k: &VPolytope, l: &VPolytope) -> Result<VPolytope> {
    k.check_dim(l.dim())?;
    let kp = h_to_v(&polar(k)?)?;
    let lp = h_to_v(&polar(l)?)?;
    h_to_v(&polar(&minkowski_sum(&kp, &lp)?)?)
}

/// `conv((1−λ)K ∪ −λK)`; at the endpoints this is the cone of `K` or `−K`
/// with the origin.
pub fn remark_body(k: &VPolytope, lambda: f64) -> Result<VPolytope> {
    check_unit(lambda)?;
    let n = k.dim();
    let mut pts: Vec<Vector> = Vec::with_capacity(2 * k.vertices().len() + 1);
    pts.extend(k.vertices().iter().map(|v| v.iter().map(|x| (1.0 - lambda) * x).collect()));
    pts.extend(k.vertices().iter().map(|v| v.iter().map(|x| -lambda * x).collect()));
    if lambda == 0.0 || lambda == 1.0 {
        pts.push(vec![0.0; n]);
    }
    VPolytope::from_points(&pts)
}
