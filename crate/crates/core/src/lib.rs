//! Highest weight crystals of finite and affine Kac-Moody algebras, the
//! level-1 perfect crystals `B^{1,1}`, and exhaustive checks that walks to
//! singular nodes are consecutive arrows in those perfect crystals.

pub mod cartan;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod io;
pub mod perfect;
pub mod tensor;
pub mod verify;

pub use error::{CrystalError, Result};
