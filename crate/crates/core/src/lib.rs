//! Computational theory of the singular braid monoid `SB_n`.
//!
//! * [`words`]: alphabets, token grammar, degrees, the reflection `R`.
//! * [`rewrite`]: positive equivalence by class enumeration, bases, division.
//! * [`garside`]: `Δ`, Garside normal forms, the word problem, greedy forms.
//! * [`conjugacy`]: units, simple elements, summit sets.
//! * [`bkl`]: band generators and the band presentation.
//! * [`cli`]: the command-line front end.
//! * [`selfcheck`]: exhaustive small-instance consistency suites.

pub mod bkl;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod garside;
mod reversing;
pub mod rewrite;
pub mod selfcheck;
pub mod words;

pub use bkl::{BandKind, BandLetter, BandWord, FamilyReport, PresentationReport};
pub use conjugacy::SummitSet;
pub use error::{Error, Result};
pub use garside::{GreedyBlock, GreedyForm, NormalForm};
pub use rewrite::{Engine, EquivalenceClass, MaxDivisorSplit, Side};
pub use words::{Context, Degrees, Letter, LetterKind, PositiveWord, Word};
