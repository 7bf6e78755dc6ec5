//! Explicit translation surfaces with prescribed periods.
//!
//! The crate builds square-tiled and grid surfaces in every connected
//! component of a stratum of abelian differentials, checks them with an
//! independent invariant pipeline, and decides in exact arithmetic which
//! period data are realizable.

pub mod builders;
pub mod checker;
pub mod flat;
pub mod hnf;
pub mod invariants;
pub mod oracle;
pub mod perm;

pub use flat::{canonical_pair, GridSurface, Stratum};
pub use perm::Perm;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/builders.md")]
    mod builders {}
    #[doc = include_str!("../../../book/src/checker.md")]
    mod checker {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
