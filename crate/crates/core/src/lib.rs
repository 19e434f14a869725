pub mod abelian;
pub mod cocycle;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod knots;
pub mod order;
pub mod par;
pub mod presentation;
pub mod tensor;
pub mod word;

pub use error::{Error, Result};
