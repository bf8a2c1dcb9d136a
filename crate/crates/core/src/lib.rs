//! Exact structure-constant toolkit for split regular Hom-Leibniz-Rinehart algebras.
//!
//! All arithmetic is over the rationals; nothing is approximated.

pub mod connections;
pub mod construct;
pub mod decomposition;
pub mod fixtures;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod model;
pub mod report;
pub mod roots;
pub mod structure;
pub mod tensor;
