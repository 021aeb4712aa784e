//! The guide's chapters, compiled as doctests so the samples cannot drift.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/algebra.md")]
pub mod algebra {}

#[doc = include_str!("../../../book/src/wick.md")]
pub mod wick {}

#[doc = include_str!("../../../book/src/integrands.md")]
pub mod integrands {}

#[doc = include_str!("../../../book/src/census.md")]
pub mod census {}

#[doc = include_str!("../../../book/src/fatgraphs.md")]
pub mod fatgraphs {}

#[doc = include_str!("../../../book/src/walks.md")]
pub mod walks {}

#[doc = include_str!("../../../book/src/verify.md")]
pub mod verify {}
