//! Multivariate interlace polynomials of looped graphs.

pub mod cli;
pub mod cwdp;
pub mod generate;
pub mod gf2;
pub mod graph;
pub mod interlace;
pub mod kexpr;
pub mod matroid;
pub mod poly;
pub mod suites;
