//! Verifiers: each evaluates one inequality on concrete bodies and returns
//! [`InequalityReport`]s with both sides and the margin `rhs − lhs`.
//!
//! Reports for proven statements are `asserted`; a failing asserted report
//! is a bug (or a counterexample to a theorem). Conjectural ones (middle
//! `j` of Godbersen's conjecture, the unbalanced inequality for `n >= 6`)
//! are recorded only, with the offending bodies attached when they fail.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_C, build_T, build_diag_C, c_volume_from_profile, conv_union, diag_planes, diag_section, polar_sum_body,
    project_T, remark_body, section_T,
};
use crate::error::{GeomError, Result};
use crate::hpoly::{h_to_v, intersect, v_to_h};
use crate::io::BodyRecord;
use crate::linalg::{binomial, norm};
use crate::mixed::{mixed_volume_profile, MixedVolumeProfile};
use crate::polytope::{minkowski_sum, VPolytope};
use crate::subspace::{project, section, AffineSubspace};
use crate::tol::{scaled, EPS_GEOM};
use crate::zoo::{recenter, Recenter};

/// Default relative verification tolerance.
pub const TOL_VERIFY: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StatementId {
    Thm1,
    Lem2,
    Cor3,
    Cor4,
    RsDiff,
    RsSecproj,
    GodbersenJ,
    AlexandrovJ,
    Unbalanced,
    Strange,
    MilmanPajor,
    RemarkEl,
}

impl StatementId {
    pub const ALL: [StatementId; 12] = [
        StatementId::Thm1,
        StatementId::Lem2,
        StatementId::Cor3,
        StatementId::Cor4,
        StatementId::RsDiff,
        StatementId::RsSecproj,
        StatementId::GodbersenJ,
        StatementId::AlexandrovJ,
        StatementId::Unbalanced,
        StatementId::Strange,
        StatementId::MilmanPajor,
        StatementId::RemarkEl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::Thm1 => "THM1",
            StatementId::Lem2 => "LEM2",
            StatementId::Cor3 => "COR3",
            StatementId::Cor4 => "COR4",
            StatementId::RsDiff => "RS_DIFF",
            StatementId::RsSecproj => "RS_SECPROJ",
            StatementId::GodbersenJ => "GODBERSEN_J",
            StatementId::AlexandrovJ => "ALEXANDROV_J",
            StatementId::Unbalanced => "UNBALANCED",
            StatementId::Strange => "STRANGE",
            StatementId::MilmanPajor => "MILMAN_PAJOR",
            StatementId::RemarkEl => "REMARK_EL",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub statement: StatementId,
    pub bodies: Vec<String>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    pub passed: bool,
    /// Whether the statement is a theorem (true) or only explored.
    pub asserted: bool,
    /// Normalizations applied to the inputs, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
    /// Bodies of a failing exploratory report.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<BodyRecord>,
}

impl InequalityReport {
    /// Report for `lhs <= rhs`.
    pub fn new(statement: StatementId, bodies: Vec<String>, n: usize, lhs: f64, rhs: f64) -> Self {
        let mut r = InequalityReport {
            statement,
            bodies,
            n,
            j: None,
            k: None,
            lambda: None,
            grid: None,
            lhs,
            rhs,
            margin: rhs - lhs,
            tol: 0.0,
            passed: false,
            asserted: true,
            note: None,
            extra: BTreeMap::new(),
            witness: Vec::new(),
        };
        r.set_tol(TOL_VERIFY);
        r
    }

    /// Re-evaluates `passed` with `tol_rel · max(1, |rhs|)`.
    pub fn set_tol(&mut self, tol_rel: f64) {
        self.tol = tol_rel * self.rhs.abs().max(1.0);
        self.passed = self.margin >= -self.tol;
    }

    pub fn failed_assertion(&self) -> bool {
        self.asserted && !self.passed
    }

    fn with_lambda(mut self, lambda: f64, grid: usize) -> Self {
        self.lambda = Some(lambda);
        self.grid = Some(grid);
        self
    }

    fn with_j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    fn with_note(mut self, note: Option<String>) -> Self {
        self.note = note;
        self
    }

    fn extra(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    fn explore(mut self, witness: &[&Subject]) -> Self {
        self.asserted = false;
        if !self.passed {
            self.witness = witness.iter().map(|s| BodyRecord::from_polytope(&s.body, s.label.clone())).collect();
        }
        self
    }
}

/// A labelled body with its profile computed on first use.
#[derive(Debug)]
pub struct Subject {
    pub label: String,
    pub body: VPolytope,
    profile: OnceLock<Result<MixedVolumeProfile>>,
}

impl Subject {
    pub fn new(label: impl Into<String>, body: VPolytope) -> Self {
        Subject { label: label.into(), body, profile: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn profile(&self) -> Result<&MixedVolumeProfile> {
        self.profile.get_or_init(|| mixed_volume_profile(&self.body)).as_ref().map_err(Clone::clone)
    }

    fn labels(&self) -> Vec<String> {
        vec![self.label.clone()]
    }
}

/// `count` uniform points of `[0, 1]`, endpoints included.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..count).map(|i| i as f64 / (count - 1) as f64).collect(),
    }
}

fn pw(x: f64, e: usize) -> f64 {
    x.powi(e as i32)
}

/// `Σ_j λ^j (1−λ)^{n−j} V_j <= vol(K)`, one report per λ.
pub fn verify_theorem_sum(s: &Subject, grid: &[f64]) -> Result<Vec<InequalityReport>> {
    let p = s.profile()?;
    let n = p.n;
    Ok(grid
        .iter()
        .map(|&l| {
            let lhs: f64 = (0..=n).map(|j| pw(l, j) * pw(1.0 - l, n - j) * p.values[j]).sum();
            let reformulated: f64 = (1..n)
                .map(|j| pw(l, j - 1) * pw(1.0 - l, n - j - 1) * (p.values[j] / p.vol_k - binomial(n, j)))
                .sum();
            InequalityReport::new(StatementId::Thm1, s.labels(), n, lhs, p.vol_k)
                .with_lambda(l, grid.len())
                .extra("reformulated_lhs", reformulated)
        })
        .collect())
}

/// `vol(C) <= vol(K)/(n+1)` for the lifted body `C`, one report per λ;
/// `profile_identity` records the closed form through the profile.
pub fn verify_lemma2(s: &Subject, grid: &[f64]) -> Result<Vec<InequalityReport>> {
    let p = s.profile()?;
    let n = p.n;
    grid.iter()
        .map(|&l| {
            let c = build_C(&s.body, l)?;
            let vol_c = c.body.volume()?;
            Ok(InequalityReport::new(StatementId::Lem2, vec![c.label(&s.label)], n, vol_c, p.vol_k / (n + 1) as f64)
                .with_lambda(l, grid.len())
                .extra("profile_identity", c_volume_from_profile(&p.values, l)))
        })
        .collect()
}

/// Average of `V_j / C(n,j)` over `j = 0..n` at most `vol(K)`; the
/// equivalent form over the middle indices goes to `second_form_lhs`.
pub fn verify_average_corollary(s: &Subject) -> Result<InequalityReport> {
    let p = s.profile()?;
    let n = p.n;
    let terms: Vec<f64> = (0..=n).map(|j| p.values[j] / binomial(n, j)).collect();
    let lhs = terms.iter().sum::<f64>() / (n + 1) as f64;
    let mut r = InequalityReport::new(StatementId::Cor3, s.labels(), n, lhs, p.vol_k);
    if n >= 2 {
        let second = terms[1..n].iter().sum::<f64>() / (n - 1) as f64;
        r = r.extra("second_form_lhs", second);
    }
    Ok(r)
}

/// At least `k` of the middle indices satisfy
/// `V_j <= (n−1)/(n−k) · C(n,j) vol(K)`. Reported as `k <= count`.
pub fn verify_markov_corollary(s: &Subject, k: usize) -> Result<InequalityReport> {
    let p = s.profile()?;
    let n = p.n;
    if n < 2 || k == 0 || k > n - 1 {
        return Err(GeomError::InvalidParameter(format!("k = {k} outside 1..={} for n = {n}", n.saturating_sub(1))));
    }
    let factor = (n - 1) as f64 / (n - k) as f64;
    let count = (1..n)
        .filter(|&j| {
            let thr = factor * binomial(n, j) * p.vol_k;
            p.values[j] <= thr + TOL_VERIFY * thr.max(1.0)
        })
        .count();
    let mut ratios: Vec<f64> = p.godbersen_ratios()[1..n].to_vec();
    ratios.sort_by(f64::total_cmp);
    let median = ratios[(ratios.len() - 1) / 2];
    let mut r = InequalityReport::new(StatementId::Cor4, s.labels(), n, k as f64, count as f64)
        .extra("threshold_factor", factor)
        .extra("median_ratio", median);
    r.k = Some(k);
    Ok(r)
}

/// `vol(K − K) <= C(2n,n) vol(K)` by direct hull; `profile_sum` records
/// `Σ C(n,j) V_j`, the same volume through the profile.
pub fn verify_rs_difference(s: &Subject) -> Result<InequalityReport> {
    let p = s.profile()?;
    let n = p.n;
    let direct = minkowski_sum(&s.body, &s.body.negate())?.volume()?;
    let profile_sum: f64 = (0..=n).map(|j| binomial(n, j) * p.values[j]).sum();
    let c = binomial(2 * n, n);
    Ok(InequalityReport::new(StatementId::RsDiff, s.labels(), n, direct, c * p.vol_k)
        .extra("profile_sum", profile_sum)
        .extra("normalized_lhs", profile_sum / c))
}

/// `vol(P_{E^⊥} T) vol(T ∩ E) <= C(m, j) vol(T)` with `j = dim E`, `E`
/// linear or affine. The projection is taken along the linear part of `E`.
pub fn verify_secproj(label: &str, t: &VPolytope, e: &AffineSubspace) -> Result<InequalityReport> {
    let m = t.dim();
    let j = e.dim();
    let sec = section(t, e)?.volume()?;
    let linear = AffineSubspace::new(vec![0.0; m], e.basis().to_vec())?;
    let shadow = project(t, &linear.orthogonal_complement()?)?.volume()?;
    Ok(InequalityReport::new(StatementId::RsSecproj, vec![label.to_string()], m, shadow * sec, binomial(m, j) * t.volume()?)
        .with_j(j)
        .extra("section_volume", sec)
        .extra("projection_volume", shadow))
}

/// The section/projection bound on `T(K1, K2)` at `θ0`, and the chain it
/// implies: `vol(P T) <= vol(K1) vol(K2) / ((n+1) vol(θ0K1 ∩ (1−θ0)K2))`.
pub fn verify_t_secproj(k1: &Subject, k2: &Subject, theta0: f64) -> Result<Vec<InequalityReport>> {
    let t = build_T(&k1.body, &k2.body)?;
    let n = t.base_dim;
    let label = t.label(&k1.label, &k2.label);
    let mut generic = verify_secproj(&label, &t.body, &t.section_plane(theta0)?)?;
    generic.lambda = Some(theta0);
    generic = generic.extra("closed_form_volume", t.closed_form_volume()?);
    let shadow = project_T(&t)?.volume()?;
    let sec = section_T(&t, theta0)?.volume()?;
    let bound = k1.body.volume()? * k2.body.volume()? / ((n + 1) as f64 * sec);
    let mut chain = InequalityReport::new(StatementId::RsSecproj, vec![label], n, shadow, bound)
        .with_note(Some("chain through vol(T)".into()));
    chain.lambda = Some(theta0);
    Ok(vec![generic, chain])
}

/// The section/projection bound on `conv(K×{0} ∪ {0}×L)` along the
/// diagonal, plus the two volume identities of the diagonal argument as
/// extras (`section_vs_polar`, `projection_vs_union`; both ratios are 1).
pub fn verify_diag_secproj(k: &Subject, l: &Subject) -> Result<InequalityReport> {
    let n = k.dim();
    let c = build_diag_C(&k.body, &l.body)?;
    let (e, _) = diag_planes(n, 0.5)?;
    let label = format!("diag({},{})", k.label, l.label);
    let mut r = verify_secproj(&label, &c, &e)?;
    r.n = n;
    let sqrt2n = 2f64.sqrt().powi(n as i32);
    let sec = r.extra["section_volume"];
    let shadow = r.extra["projection_volume"];
    if k.body.contains_origin_strictly() && l.body.contains_origin_strictly() {
        let polar_sum = polar_sum_body(&k.body, &l.body)?.volume()?;
        r = r.extra("section_vs_polar", sec / (sqrt2n * polar_sum));
    }
    let union = conv_union(&k.body, &l.body)?.volume()?;
    Ok(r.extra("projection_vs_union", shadow * sqrt2n / union))
}

/// `V(K[j], −K[n−j]) <= C(n,j) vol(K)` for every `j`; asserted only for
/// `j ∈ {0, 1, n−1, n}`.
pub fn verify_godbersen(s: &Subject) -> Result<Vec<InequalityReport>> {
    let p = s.profile()?;
    let n = p.n;
    Ok((0..=n)
        .map(|j| {
            let r = InequalityReport::new(StatementId::GodbersenJ, s.labels(), n, p.values[j], binomial(n, j) * p.vol_k)
                .with_j(j);
            if j <= 1 || j + 1 >= n {
                r
            } else {
                r.explore(&[s])
            }
        })
        .collect())
}

/// `V(K[j], −K[n−j]) >= vol(K)` for every `j`.
pub fn verify_alexandrov(s: &Subject) -> Result<Vec<InequalityReport>> {
    let p = s.profile()?;
    Ok((0..=p.n)
        .map(|j| InequalityReport::new(StatementId::AlexandrovJ, s.labels(), p.n, p.vol_k, p.values[j]).with_j(j))
        .collect())
}

/// Largest dimension where the unbalanced inequality is a theorem.
pub const UNBALANCED_PROVEN_MAX_DIM: usize = 5;

/// `Σ C(n,j) λ^j (1−λ)^{n−j} V_j <= Σ C(n,j)² λ^j (1−λ)^{n−j}` with
/// `V_j` normalized by `vol(K)`. Exploratory for `n >= 6` except at
/// `λ ∈ {0, 1/2, 1}`.
pub fn verify_unbalanced(s: &Subject, grid: &[f64]) -> Result<Vec<InequalityReport>> {
    let p = s.profile()?;
    let n = p.n;
    let v = p.normalized();
    Ok(grid
        .iter()
        .map(|&l| {
            let w = |j: usize| binomial(n, j) * pw(l, j) * pw(1.0 - l, n - j);
            let lhs: f64 = (0..=n).map(|j| w(j) * v[j]).sum();
            let rhs: f64 = (0..=n).map(|j| w(j) * binomial(n, j)).sum();
            let r = InequalityReport::new(StatementId::Unbalanced, s.labels(), n, lhs, rhs).with_lambda(l, grid.len());
            if n <= UNBALANCED_PROVEN_MAX_DIM || l == 0.0 || l == 0.5 || l == 1.0 {
                r
            } else {
                r.explore(&[s])
            }
        })
        .collect())
}

/// Records a translation unless it is rounding noise.
fn note_shift(name: &str, t: &[f64], extent: f64) -> Option<String> {
    (norm(t) > scaled(EPS_GEOM, extent)).then(|| format!("{name} translated by {t:?}"))
}

fn join_notes(notes: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    let parts: Vec<String> = notes.into_iter().flatten().collect();
    (!parts.is_empty()).then(|| parts.join("; "))
}

/// Translates to the centroid when the origin is not interior.
fn origin_interior(s: &Subject) -> Result<(VPolytope, Option<String>)> {
    if s.body.contains_origin_strictly() {
        return Ok((s.body.clone(), None));
    }
    let (b, t) = recenter(&s.body, Recenter::Centroid)?;
    let note = note_shift(&s.label, &t, s.body.extent());
    Ok((b, note))
}

/// `vol(conv(K ∪ −L)) vol((K° + L°)°) <= vol(K) vol(L)`.
pub fn verify_strange(k: &Subject, l: &Subject) -> Result<InequalityReport> {
    let (kb, nk) = origin_interior(k)?;
    let (lb, nl) = origin_interior(l)?;
    let lhs = conv_union(&kb, &lb)?.volume()? * polar_sum_body(&kb, &lb)?.volume()?;
    let rhs = kb.volume()? * lb.volume()?;
    Ok(InequalityReport::new(StatementId::Strange, vec![k.label.clone(), l.label.clone()], k.dim(), lhs, rhs)
        .with_note(join_notes([nk, nl])))
}

/// `vol(K ∩ −L) vol(K + L) >= vol(K) vol(L)` with both bodies moved to
/// their centroids first.
pub fn verify_milman_pajor(k: &Subject, l: &Subject) -> Result<InequalityReport> {
    let (kb, tk) = recenter(&k.body, Recenter::Centroid)?;
    let (lb, tl) = recenter(&l.body, Recenter::Centroid)?;
    let meet = h_to_v(&intersect(&v_to_h(&kb), &v_to_h(&lb.negate()))?)?.volume()?;
    let sum = minkowski_sum(&kb, &lb)?.volume()?;
    let lhs = kb.volume()? * lb.volume()?;
    Ok(InequalityReport::new(StatementId::MilmanPajor, vec![k.label.clone(), l.label.clone()], k.dim(), lhs, meet * sum)
        .with_note(join_notes([note_shift(&k.label, &tk, k.body.extent()), note_shift(&l.label, &tl, l.body.extent())])))
}

/// `vol(conv((1−λ)K ∪ −λK)) <= vol(K)` for `0 ∈ K`; bodies missing the
/// origin are moved to their centroid.
pub fn verify_remark_el(s: &Subject, grid: &[f64]) -> Result<Vec<InequalityReport>> {
    let (body, note) = if s.body.contains(&vec![0.0; s.dim()]) {
        (s.body.clone(), None)
    } else {
        let (b, t) = recenter(&s.body, Recenter::Centroid)?;
        (b, note_shift(&s.label, &t, s.body.extent()))
    };
    let vol = body.volume()?;
    grid.iter()
        .map(|&l| {
            let lhs = remark_body(&body, l)?.volume()?;
            Ok(InequalityReport::new(StatementId::RemarkEl, s.labels(), s.dim(), lhs, vol)
                .with_lambda(l, grid.len())
                .with_note(note.clone()))
        })
        .collect()
}

/// Intrinsic volumes of the diagonal section and shadow of the join of
/// `K` with itself at `λ`; their product equals `vol(K) vol(conv((1−λ)K ∪ −λK))`.
pub fn remark_el_product(k: &VPolytope, lambda: f64) -> Result<(f64, f64)> {
    let c = build_diag_C(k, k)?;
    let sec = diag_section(&c, lambda)?.volume()?;
    let shadow = crate::constructions::diag_projection(&c, lambda)?.volume()?;
    Ok((sec * shadow, k.volume()? * remark_body(k, lambda)?.volume()?))
}
