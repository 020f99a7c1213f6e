pub mod algebra;
pub mod coefficients;
pub mod combinatorics;
pub mod fixed;
pub mod hecke;
pub mod linalg;
pub mod presentations;
pub mod rep;
pub mod report;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
