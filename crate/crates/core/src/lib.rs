//! Exact computations with cones of divisors and curves: effective, movable
//! and nef cones, Mori chamber decompositions, and comparisons between a
//! variety and a subvariety through restriction of divisors.
//!
//! ```
//! use mori_cones::zoo;
//!
//! let x = zoo::by_name("collineations-3").unwrap();
//! let fan = x.mcd().unwrap();
//! assert!(mori_cones::chamber::verify_fan(fan).unwrap().passed());
//! ```
//!
//! The guide in `book/` walks through each module.

pub mod arith;
pub mod chamber;
pub mod cli;
pub mod cone;
pub mod expr;
pub mod io;
pub mod lattice;
pub mod lefschetz;
pub mod monomial;
pub mod plot;
pub mod zoo;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/chambers.md")]
    mod chambers {}
    #[doc = include_str!("../../../book/src/twins.md")]
    mod twins {}
    #[doc = include_str!("../../../book/src/monomial.md")]
    mod monomial {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
