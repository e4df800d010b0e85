//! Exact piecewise-isometric extension of non-expansive planar point maps.
//!
//! Given rational points `a_i` and targets `b_i` with
//! `|b_i - b_j| <= |a_i - a_j|`, [`extend_all`] builds a map on the convex
//! hull of the `a_i` that is a rigid motion on each triangle of a
//! triangulation, continuous, non-expansive, and sends every `a_i` to `b_i`.
//! All arithmetic is exact; see [`exact`].
//!
//! ```
//! use plext_core::{extend_all, Instance, Point};
//!
//! let inst = Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (2, 2)]).unwrap();
//! let f = extend_all(&inst).unwrap();
//! assert_eq!(f.evaluate(&Point::from_ints(0, 4)).unwrap(), Point::from_ints(2, 2));
//! assert!(f.validate().passed());
//! ```

pub mod exact;
pub mod extension;
pub mod geometry;
pub mod json;
pub mod motion;
pub mod pl_map;
pub mod random;
pub mod verification;

pub use exact::{ExactError, ExactNumber, Rational, Sign};
pub use extension::{
    check_nonexpansive, extend_all, extend_all_traced, extend_step, BranchFlags, ExtensionError, Feasibility,
    Instance,
};
pub use geometry::{ConvexPolygon, Line, Point, Segment, Triangle};
pub use motion::{Motion, MotionKind};
pub use pl_map::{PlMap, ValidationReport};
pub use verification::{AuditConfig, AuditMode, AuditReport};
