//! Exact computer algebra for N=1 super Virasoro singular vectors, their
//! free-field images and Uglov symmetric functions.

pub mod error;
pub mod finite_n;
pub mod fock;
pub mod kernel;
pub mod selberg;
pub mod svir;
pub mod symfunc;
pub mod uglov;
pub mod vertexops;

pub use error::{Error, KernelError, Result};
