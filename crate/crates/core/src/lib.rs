//! Canonical namings of points in the convex hull of the moment curve
//! `t ↦ (t, t², ..., t^n)` on a closed interval.
//!
//! A point of the hull is a finite convex combination of curve points. The
//! principal naming uses the fewest atoms allowed by the parity of `n` and
//! is unique for interior points; [`principal_from_moments`] computes it,
//! and the reduction routines bring any other naming to the same form.
//!
//! ```
//! use moment_naming::{principal_from_moments, Interval, MomentPoint};
//!
//! let unit = Interval::new(0.0, 1.0).unwrap();
//! let v = MomentPoint::new(vec![0.5, 0.3]).unwrap();
//! let p = principal_from_moments(&v, unit).unwrap();
//! let atoms = p.naming().atoms();
//! assert_eq!(atoms[0].t, 0.0);
//! assert!((atoms[1].t - 0.6).abs() < 1e-12);
//! assert!((atoms[1].c - 5.0 / 6.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod format;
mod linalg;
pub mod naming;
pub mod oracle;
pub mod principal;
pub mod pvmat;
pub mod reduction;
pub mod tolerance;
pub mod transform;

pub use error::{NamingError, Result};
pub use naming::{lift, Atom, BoundaryReport, Interval, MomentPoint, Naming, NamingIndex, Parity};
pub use oracle::{boundary_band, continuity_probe, lp_membership, lp_residual, random_naming, GridSpec};
pub use principal::{
    membership, membership_with, principal_from_moments, principal_from_moments_with, MembershipTag, MembershipVerdict,
    SolveOptions,
};
pub use pvmat::{solve_weights, PvMatrix};
pub use reduction::{
    canonicalize, canonicalize_with, caratheodory_linear_reduce, equivalent, reduce_to_principal,
    reduce_to_principal_with, simplify_fully, simplify_once, CanonicalNaming,
};
pub use tolerance::{Tolerances, DEFAULT_SOLVER_MAX_N, HARD_MAX_N};
pub use transform::{pull_point, push_naming, PolyCurve};
