//! Riesz-transform calculus for Hermite, special Hermite and multiple Laguerre
//! expansions, together with the kernel integrals and transference probes that
//! accompany dimension-free bounds on the Heisenberg group.
//!
//! Everything works in `f64`; complex values use [`num_complex::Complex64`].
//! Axes are zero-based throughout the library.

pub mod error;
pub mod hermite_ops;
pub mod kernel_bounds;
pub mod laguerre_riesz;
pub mod special_fn;
pub mod special_hermite;
pub mod transference;

pub use error::{Error, Result};
pub use special_fn::MultiIndex;
