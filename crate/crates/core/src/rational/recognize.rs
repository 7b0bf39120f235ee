use crate::automata::InvolutiveAutomaton;
use crate::error::{Error, Result};
use crate::rational::RationalSet;
use crate::stallings::{StallingsAutomaton, Subgroup};
use crate::word::{Letter, ReducedWord};

/// Cap on the number of words listed by [`RationalSet::subgroup_generators`].
pub const DEFAULT_GENERATOR_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognizability {
    /// `K(X)`, the largest subgroup contained in the right stabilizer.
    pub k_of_x: Subgroup,
    /// Normal core of `K(X)`, when it has finite index.
    pub n_of_x: Option<Subgroup>,
    pub recognizable: bool,
    pub disjunctive: bool,
}

impl RationalSet {
    /// All members of length below `2m` (`m` states), which generate `X`
    /// when `X` is a subgroup.
    pub fn subgroup_generators(&self, limit: usize) -> Result<Subgroup> {
        if !self.is_subgroup() {
            return Err(Error::NotASubgroup);
        }
        let bound = 2 * self.state_count();
        let mut words = Vec::new();
        let mut stack: Vec<(usize, Vec<Letter>)> = vec![(0, Vec::new())];
        while let Some((p, w)) = stack.pop() {
            if self.is_final(p) && !w.is_empty() {
                if words.len() == limit {
                    return Err(Error::GuardExceeded {
                        what: "subgroup generator enumeration",
                        limit,
                    });
                }
                words.push(ReducedWord::new(w.clone()).expect("accepted words are reduced"));
            }
            if w.len() + 1 < bound {
                for l in self.alphabet().letters() {
                    if let Some(q) = self.next(p, l) {
                        let mut v = w.clone();
                        v.push(l);
                        stack.push((q, v));
                    }
                }
            }
        }
        words.sort_by(|u, v| (u.len(), u.letters()).cmp(&(v.len(), v.letters())));
        Subgroup::new(self.alphabet(), words)
    }

    /// Stallings automaton of a subgroup `X`: glue every final state to the
    /// initial one and fold.
    pub fn to_stallings(&self) -> Result<StallingsAutomaton> {
        if !self.is_subgroup() {
            return Err(Error::NotASubgroup);
        }
        Ok(self.fold_to_stallings())
    }

    pub(crate) fn fold_to_stallings(&self) -> StallingsAutomaton {
        let glue = |p: usize| if self.is_final(p) { 0 } else { p };
        let mut a = InvolutiveAutomaton::new(self.alphabet(), self.state_count(), 0, 0);
        for (p, l, q) in self.transitions() {
            a.add_edge(glue(p), l, glue(q));
        }
        StallingsAutomaton::from_inverse(&a.fold())
    }

    /// `R(X) = { g : Xg ⊆ X } = F \ X^-1 (F \ X)`.
    pub fn right_stabilizer(&self) -> RationalSet {
        let outside = self.complement();
        self.inverse_set().concat(&outside).expect("same alphabet").complement()
    }

    /// `K(X) = R(X) ∩ R(X)^-1`; `X` is recognizable iff `K(X)` has finite
    /// index, and disjunctive otherwise.
    pub fn recognizability(&self) -> Recognizability {
        let r = self.right_stabilizer();
        let k = r.intersection(&r.inverse_set()).expect("same alphabet");
        let s = k.fold_to_stallings();
        let recognizable = s.index().is_finite();
        let n_of_x = recognizable.then(|| s.normal_core().expect("finite index").subgroup());
        Recognizability {
            k_of_x: s.subgroup(),
            n_of_x,
            recognizable,
            disjunctive: !recognizable,
        }
    }
}
