//! Exact reduction of singularities and formal classification of
//! holomorphic foliation germs (and pairs of germs) on surfaces.
//!
//! Everything runs over the field Q(i), optionally extended by a single
//! square root of a positive square-free rational, with truncated power
//! series at a fixed working order. No floating point is used.

pub mod blowup;
pub mod error;
pub mod factor;
pub mod germ;
pub mod holonomy;
pub mod jet1;
pub mod jet2;
pub mod normal_form;
pub mod pair;
pub mod parse;
pub mod report;
pub mod roots;
pub mod seidenberg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
