//! Convex-polytope kernel, mixed-volume profiles `V(K[j], −K[n−j])`, the
//! auxiliary bodies used in difference-body and section/projection bounds,
//! and verifiers that check those bounds on concrete polytopes.

pub mod certificate;
pub mod constructions;
pub mod error;
pub mod hpoly;
pub mod hull;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod mixed;
pub mod output;
pub mod polytope;
pub mod subspace;
pub mod sweep;
pub mod tol;
pub mod verify;
pub mod zoo;

pub use error::{GeomError, Result};
pub use hpoly::{h_to_v, intersect, polar, polar_h, v_to_h, HPolytope, Halfspace};
pub use polytope::{convex_hull, hull_of_union, minkowski_sum, VPolytope, Vector};
pub use subspace::{project, section, AffineSubspace};
pub use mixed::{blend_volume, godbersen_ratios, mixed_volume_profile, polarization_mixed_volume, MixedVolumeProfile};
pub use zoo::{generate, BodySpec, Generator};
pub use verify::{InequalityReport, StatementId, Subject};
pub use certificate::{certificate, CertificateResult};
pub use sweep::{run, RunConfig, RunOutcome};
