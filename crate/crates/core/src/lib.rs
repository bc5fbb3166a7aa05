//! Exact multi-Gieseker stability computations.
//!
//! - [`exact`]: rationals, polynomials, eventual comparison, root isolation.
//! - [`sheaf`]: numerical sheaf classes and stability verdicts at a fixed
//!   parameter.
//! - [`segment`]: walls, chambers, flips and uniformity along a segment of
//!   parameters.
//! - [`quiver`]: the labelled quiver, θ-weights and semistability of small
//!   representations.
//! - [`io`]: problem files, command dispatch and reports.

pub mod exact;
pub mod io;
pub mod quiver;
pub mod segment;
pub mod sheaf;
