//! Free idempotent generated semigroups `IG(B)` over finite bands.
//!
//! The crate is organised bottom-up:
//!
//! - [`band`]: Cayley tables, D-class decomposition, classification and the
//!   structure maps of normal bands.
//! - [`rewrite`]: the presentation of `IG(B)` as a string rewriting system,
//!   with replayable certificates and a bounded equality oracle.
//! - [`igword`]: significant indices, Y-projection and almost normal forms.
//! - [`decide`]: word problem deciders per band class plus a dispatcher.
//! - [`greens`]: tilde idempotents, non-abundance and regularity witnesses,
//!   and a bounded search for violations of Condition (P).
//! - [`cli`]: the command-line front end.

pub mod analysis;
pub mod band;
pub mod bundled;
pub mod cli;
pub mod decide;
pub mod error;
pub mod greens;
pub mod igword;
pub mod rewrite;

pub use analysis::Analysis;
pub use band::{Band, ClassId, Elem};
pub use error::{Error, Result};
pub use rewrite::{Budget, GenWord, RewriteCertificate};
