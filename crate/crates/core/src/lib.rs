//! Exact computer algebra for weak Jacobi forms and elliptic genera.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated Laurent series in `q` and half-integral powers of `y`;
//! * [`modular`]: `E₄`, `E₆`, `Δ`;
//! * [`jacobi`]: the weight-0 weak Jacobi generators and their checks;
//! * [`genus`]: elliptic genera from Chern numbers;
//! * [`divis`]: Euler-number divisibility constants;
//! * [`cells`]: long exact sequences of two-cell module complexes;
//! * [`hodge`]: Hodge-number constraints for hyperkähler manifolds;
//! * [`acceptance`]: the end-to-end verification suite.

pub mod acceptance;
pub mod cells;
pub mod divis;
pub mod error;
pub mod genus;
pub mod hodge;
pub mod jacobi;
pub mod lattice;
pub mod modular;
pub mod order;
pub mod series;

pub use error::{Error, Result};
pub use order::Order;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/jacobi.md")]
    mod jacobi {}
    #[doc = include_str!("../../../book/src/genus.md")]
    mod genus {}
    #[doc = include_str!("../../../book/src/divisibility.md")]
    mod divisibility {}
    #[doc = include_str!("../../../book/src/cells.md")]
    mod cells {}
    #[doc = include_str!("../../../book/src/hodge.md")]
    mod hodge {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
