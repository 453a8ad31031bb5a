//! Finite span calculus and skew monoidales in `Span`.

pub mod category;
pub mod characterization;
pub mod cli;
pub mod element;
pub mod error;
pub mod examples;
pub mod finset;
pub mod io;
pub mod simplicial;
pub mod skew;
pub mod span;

pub use element::Element;
pub use error::{Error, Result};
pub use finset::{FinFn, FinSet};
