//! Involutive and inverse automata over `Ã`.

pub mod inverse;
pub mod involutive;
pub mod monoid;
pub(crate) mod refine;

pub use inverse::{InverseAutomaton, State};
pub use involutive::{Clash, InvolutiveAutomaton};
pub use monoid::{transition_monoid, MonoidElement, PartialMap, DEFAULT_MONOID_LIMIT};
