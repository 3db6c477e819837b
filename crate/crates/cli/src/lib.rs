//! Command-line surface, JSON I/O, and floating-point validation for the
//! exact Koba-Nielsen polar-locus machinery in `kn-polar-core`.

pub mod cli;
pub mod domains;
pub mod json;
pub mod numerics;
