//! Sumset arithmetic on non-empty finite sets of integers and the closed-form
//! algebra of the maps that preserve it.
//!
//! The library has four layers:
//!
//! * [`finset`] — the value type [`FinSet`] (a sorted, strictly increasing,
//!   non-empty set of `i64`) together with sumsets, iterated sumsets,
//!   negation, translation, discrete intervals, the `δ±` statistics,
//!   reduction and reversal. All element arithmetic is checked; overflow is
//!   reported, never wrapped.
//! * [`aut`] — descriptors for the automorphisms of the sumset monoid
//!   ([`AutElem`]), with O(1) composition, inversion, classification of
//!   candidate coefficient pairs, black-box identification, and coordinates
//!   in the direct product of a two-element group with the infinite dihedral
//!   group ([`Z2DihElem`]).
//! * [`structure`] — reduced-quotient normal forms: extraction of min/max
//!   homomorphisms, the `id`/`rev` decomposition of a black-box automorphism,
//!   and the induced action on reduced sets.
//! * [`oracle`] — bounded-universe enumeration and brute-force suites that
//!   re-verify every closed form pointwise, plus mutation fixtures that prove
//!   the suites can actually catch a wrong rule.
//!
//! ```
//! use pfin::{AutElem, FinSet};
//!
//! let x = FinSet::new([0, 2]).unwrap();
//! let f1: AutElem = "f[1]".parse().unwrap();
//! assert_eq!(f1.apply(&x).unwrap().to_string(), "{-2,0}");
//! ```

pub mod aut;
pub mod finset;
pub mod oracle;
pub mod parse;
pub mod structure;

pub use aut::{
    AutElem, DihElem, Family, IdentifyError, NotAutomorphism, PhiAB, Sign, Z2DihElem,
};
pub use finset::{FinSet, SetError};
pub use oracle::{Corpus, CorpusError, Failure, OracleConfig, VerificationReport};
pub use parse::ParseError;
pub use structure::{Decomposition, DecompositionKind, HomDescriptor, StructureError};
