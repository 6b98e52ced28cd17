//! Constant mean curvature 1 surfaces in hyperbolic space: Bryant frames,
//! the pseudometric spectrum of the Jacobi operator, and index bounds.

// `!(x > 0.0)` style guards deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ends;
pub mod error;
pub mod geometry;
pub mod holo;
pub mod index;
pub mod killing;
pub mod mat2;
pub mod quad;
pub mod spectral;
pub mod weierstrass;

pub use error::{Error, Result};
pub use holo::{cplx, cpow, hypergeom_terminating, pochhammer, BranchedPoint, Cplx, HoloFn, Path};
pub use mat2::Mat2;
pub use weierstrass::{
    immerse, integrate_frame, minimal_immersion, monodromy, secondary_gauss, su2_action, AmbientPoint, Convention,
    Frame, Model, Monodromy, SU2Matrix, SpherePoint, WeierstrassData,
};
