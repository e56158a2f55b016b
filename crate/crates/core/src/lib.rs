//! Natural Hopf algebras of nonsymmetric operads.
//!
//! The crate covers the free operad on a signature, the associative operad and
//! the multi-multiassociative operads, the Hopf algebras they generate, the
//! easterly-wind lattices on forests together with the E/F/H bases, operad
//! congruences, and polynomial realizations over related alphabets.

pub mod bases;
pub mod error;
pub mod hopf;
pub mod lattice;
pub mod linear;
pub mod operad;
pub mod quotient;
pub mod realization;
pub mod signature;
pub mod special;
pub mod term;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use hopf::{Basis, HopfElement, NaturalHopf, TensorElement};
pub use linear::{Coeff, LinComb};
pub use operad::{AsElem, AssociativeOperad, Factorization, FreeOperad, Multiset, MultisetOperad, Operad};
pub use signature::{Generator, Signature};
pub use term::{enumerate_reduced_forests, enumerate_terms, Edge, Forest, NodeId, NodeInfo, Term};
pub use word::Word;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/operads.md")]
    mod operads {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    mod hopf {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/bases.md")]
    mod bases {}
    #[doc = include_str!("../../../book/src/quotient.md")]
    mod quotient {}
    #[doc = include_str!("../../../book/src/realization.md")]
    mod realization {}
    #[doc = include_str!("../../../book/src/special.md")]
    mod special {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
