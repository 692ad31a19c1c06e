//! Exact counting, upper bounds and tractability classification for
//! weighted tensor product problems in the worst-case setting.
//!
//! The information complexity of such a problem at accuracy `ε` equals the
//! number of multi-indices whose product eigenvalue exceeds `ε²`. This crate
//! counts that set exactly, brackets it with closed-form bounds, and decides
//! tractability notions from the weights and eigenvalues alone.

pub mod bounds;
pub mod counting;
pub mod logvalue;
pub mod seqcore;
pub mod tract;

pub use logvalue::LogValue;
