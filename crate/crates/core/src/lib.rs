//! Exact-arithmetic toolkit for arrangements of construction lines and the
//! registration marks where they cross.
//!
//! An arrangement is a pair `(L, P)` of lines and points: every point lies on
//! at least two lines and every two non-parallel lines meet in a point of
//! `P`. All coordinates are exact rationals.

pub mod arrangement;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod io;
pub mod render;
pub mod report;

pub use arrangement::{Arrangement, FamilyKind, Segment, Shape};
pub use error::{Error, Result};
pub use geometry::{Line, Point, Rational, Slope};
