use crate::automata::{transition_monoid, DEFAULT_MONOID_LIMIT};
use crate::error::Result;
use crate::stallings::{StallingsAutomaton, Subgroup};

impl StallingsAutomaton {
    /// Without `prime`: the transition monoid is aperiodic (`H` is pure).
    /// With `prime`: no monoid element has period divisible by it, i.e. the
    /// monoid has no subgroup of that order.
    pub fn is_pure(&self, prime: Option<usize>, limit: usize) -> Result<bool> {
        let monoid = transition_monoid(self.automaton(), limit)?;
        Ok(match prime {
            None => monoid.iter().all(|e| e.period == 1),
            Some(p) => monoid.iter().all(|e| e.period % p != 0),
        })
    }
}

impl Subgroup {
    pub fn is_pure(&self, prime: Option<usize>) -> Result<bool> {
        self.stallings().is_pure(prime, DEFAULT_MONOID_LIMIT)
    }
}
