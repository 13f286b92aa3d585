#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod characters;
pub mod convolution;
pub mod eisenstein;
pub mod epstein;
pub mod majorant;
pub mod qfield;
pub mod report;
pub mod special;
pub mod suites;
pub mod symplectic;
