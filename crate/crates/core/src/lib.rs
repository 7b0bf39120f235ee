//! Stallings automata and rational subsets of free groups.

pub mod automata;
pub mod error;
pub mod format;
pub mod oracle;
pub mod rational;
pub mod stallings;
pub mod word;

pub use automata::{InverseAutomaton, InvolutiveAutomaton, MonoidElement, PartialMap, State};
pub use error::{Error, Result};
pub use oracle::EnumerationBudget;
pub use rational::{reduce_lang, RationalSet, Recognizability, SaturationTrace, WordNFA};
pub use stallings::{Basis, CoreTail, Index, SpanningTree, StallingsAutomaton, Subgroup};
pub use word::{Alphabet, CyclicDecomposition, Letter, PrefixDistance, ReducedWord, Word};
