//! Exact computations on small tensors over ℚ: orbit classification of
//! 2×n×m tensors, decomposition loci of rank-one tensors, minimal
//! decompositions of tangential tensors, and the rank-lowering game.
//!
//! The linear algebra and tensor containers are generic over [`Field`];
//! [`Q`], [`RatFunc`] and [`AlgebraicElement`] are the instances used here.

pub mod binforms;
pub mod classify;
pub mod error;
pub mod exactnum;
pub mod game;
pub mod linalg;
pub mod locus;
pub mod normal_forms;
pub mod pencil;
pub mod tensorcore;
pub mod wstate;

pub use error::{Error, Result};
pub use exactnum::{AlgebraicElement, Field, Poly, RatFunc, UniPoly, Q};
