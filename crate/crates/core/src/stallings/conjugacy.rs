use crate::error::Result;
use crate::stallings::{StallingsAutomaton, Subgroup};
use crate::word::ReducedWord;

impl StallingsAutomaton {
    /// A word `x` with `K = x^-1 H x` (`self = H`), if the two subgroups are
    /// conjugate. Conjugate iff the cores are isomorphic once the basepoint
    /// is forgotten.
    pub fn conjugator_to(&self, k: &StallingsAutomaton) -> Option<ReducedWord> {
        if self.alphabet() != k.alphabet() {
            return None;
        }
        match (self.is_trivial(), k.is_trivial()) {
            (true, true) => return Some(ReducedWord::identity()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        let h_ct = self.core_tail().ok()?;
        let k_ct = k.core_tail().ok()?;
        if h_ct.core.state_count() != k_ct.core.state_count() {
            return None;
        }
        let paths = k_ct.core.geodesics_from(k_ct.core.basepoint());
        for (s, path) in paths.iter().enumerate() {
            if k_ct.core.rebased(s).canonicalize() == h_ct.core {
                // loops at s in core(K) = loops at the attachment of core(H)
                let w = path.as_ref().expect("core is connected");
                return Some(h_ct.tail.mult(&w.invert()).mult(&k_ct.tail.invert()));
            }
        }
        None
    }

    /// Normal iff trivial, or of finite index with every choice of
    /// basepoint giving the same automaton.
    pub fn is_normal(&self) -> bool {
        if self.is_trivial() {
            return true;
        }
        if !self.index().is_finite() {
            return false;
        }
        (0..self.state_count()).all(|q| self.rebased(q) == *self)
    }
}

impl Subgroup {
    pub fn conjugator_to(&self, k: &Subgroup) -> Result<Option<ReducedWord>> {
        self.alphabet().check(&k.alphabet())?;
        Ok(self.stallings().conjugator_to(&k.stallings()))
    }

    pub fn is_conjugate_to(&self, k: &Subgroup) -> Result<bool> {
        Ok(self.conjugator_to(k)?.is_some())
    }

    pub fn is_normal(&self) -> bool {
        self.stallings().is_normal()
    }
}
