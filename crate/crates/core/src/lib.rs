//! Ordered orthogonal arrays OOA(4, s, 2, q) built from strongly orthogonal
//! families of linear sudoku solutions, together with exhaustive verifiers
//! for every object along the way.

pub mod cli;
pub mod error;
pub mod families;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod ooa;
pub mod strong;
pub mod sudoku;

pub use error::{Error, Result};
pub use gf::{Elem, Field};
