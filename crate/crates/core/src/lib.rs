//! Elliptic surfaces over the projective line and over abstract base curves:
//! exact Kodaira classification of Weierstrass models, the invariants and
//! twist calculus of fiber configurations, and permutation searches for the
//! monodromy of j-maps.

pub mod cli;
pub mod configuration;
pub mod input;
pub mod kodaira;
pub mod monodromy;
pub mod ratfunc;
pub mod tables;
pub mod weierstrass;
