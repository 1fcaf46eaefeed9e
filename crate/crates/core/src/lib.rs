//! Matrix-algebra frames and unital *-homomorphisms, with the surrounding
//! machinery: centralizers and subalgebra functors, nerve faces, a
//! finite-window Fredholm index model, and exact abelian-group arithmetic.

pub mod abgroup;
pub mod battery;
pub mod catverify;
pub mod error;
pub mod fredholm;
pub mod frames;
pub mod grassmannian;
pub mod homspace;
pub mod linalg;

pub use error::{Error, Result};
