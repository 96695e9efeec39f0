//! Poly-extendability of outerplanar graphs with two marked vertices.

pub mod graph;
pub mod classifier;
pub mod coloring;
pub mod polynomial;
pub mod structure;
pub mod verifier;

#[cfg(test)]
mod testutil;
