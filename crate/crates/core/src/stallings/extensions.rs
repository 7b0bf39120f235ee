//! Intersections, overgroups and separation.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automata::{InverseAutomaton, State};
use crate::error::{Error, Result};
use crate::stallings::{with_tail, Index, StallingsAutomaton, Subgroup};
use crate::word::{Alphabet, Letter, ReducedWord};

pub const DEFAULT_TAKAHASI_LIMIT: usize = 10_000;

impl StallingsAutomaton {
    /// `S(H ∩ K)`: basepoint component of the product automaton, pruned.
    pub fn intersection(&self, other: &StallingsAutomaton) -> Result<StallingsAutomaton> {
        self.alphabet().check(&other.alphabet())?;
        let (x, y) = (self.automaton(), other.automaton());
        let start = (x.basepoint(), y.basepoint());
        let mut ids: HashMap<(State, State), State> = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        let mut edges = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            let from = ids[&(p, q)];
            for g in self.alphabet().letters() {
                if let (Some(p2), Some(q2)) = (x.next(p, g), y.next(q, g)) {
                    let fresh = ids.len();
                    let to = *ids.entry((p2, q2)).or_insert_with(|| {
                        queue.push_back((p2, q2));
                        fresh
                    });
                    if g.is_positive() {
                        edges.push((from, g, to));
                    }
                }
            }
        }
        let product = InverseAutomaton::from_edges(self.alphabet(), ids.len(), &edges, 0, 0)?;
        Ok(StallingsAutomaton::from_inverse(&product))
    }

    /// All morphic images of this automaton up to isomorphism, obtained as
    /// the closure under "identify two states, then fold". The input comes
    /// first.
    pub fn takahasi_extensions(&self, limit: usize) -> Result<Vec<StallingsAutomaton>> {
        let mut seen: HashSet<StallingsAutomaton> = HashSet::from([self.clone()]);
        let mut order = vec![self.clone()];
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(s) = queue.pop_front() {
            let inv = s.automaton().to_involutive();
            let n = s.state_count();
            for i in 0..n {
                for j in i + 1..n {
                    let image = StallingsAutomaton::from_inverse(&inv.merge_states(i, j).fold());
                    if seen.insert(image.clone()) {
                        if seen.len() > limit {
                            return Err(Error::GuardExceeded {
                                what: "extension closure",
                                limit,
                            });
                        }
                        order.push(image.clone());
                        queue.push_back(image);
                    }
                }
            }
        }
        Ok(order)
    }

    /// A finite index overgroup `K` of `H` with `u ∉ K` (so `H ∩ Ku = ∅`).
    ///
    /// Extends the automaton so that `u` reads from the basepoint to some
    /// other state, then completes every letter to a permutation.
    pub fn hall_separation(&self, u: &ReducedWord) -> Result<StallingsAutomaton> {
        if self.member(u) {
            return Err(Error::MemberAlready);
        }
        let mut a = self.automaton().clone();
        let end = a.extend_along(u.letters());
        debug_assert_ne!(end, a.basepoint());
        let completed = a.complete_to_permutations();
        Ok(StallingsAutomaton::from_inverse(&completed))
    }

    /// `S(H_fi)`: the core minimized with every state final, with the tail
    /// glued back at the image of its attachment state.
    pub fn commensurator_fi(&self) -> Result<StallingsAutomaton> {
        let ct = self.core_tail()?;
        let quotient = ct.core.minimize_all_final();
        Ok(with_tail(&quotient, quotient.basepoint(), &ct.tail))
    }

    /// Intersection of the conjugates `g_q^-1 H g_q` over all states `q`,
    /// i.e. over all cosets. Requires finite index.
    pub fn normal_core(&self) -> Result<StallingsAutomaton> {
        if !self.index().is_finite() {
            return Err(Error::InfiniteIndex);
        }
        let mut acc = self.clone();
        for q in 1..self.state_count() {
            acc = acc.intersection(&self.rebased(q))?;
        }
        Ok(acc)
    }

    /// `[self : H]` for a subgroup `H ≤ self`: rewrite the generators of `H`
    /// in the basis of `self` and measure the index of the result in the
    /// free group on that basis.
    pub fn relative_index(&self, h: &Subgroup) -> Result<Index> {
        self.alphabet().check(&h.alphabet())?;
        let basis = self.basis();
        if basis.is_empty() {
            return if h.is_trivial() {
                Ok(Index::Finite(1))
            } else {
                Err(Error::NotMember)
            };
        }
        let over = Alphabet::new(basis.len())?;
        let rewritten = h
            .generators()
            .iter()
            .map(|g| {
                let indices = self.express_in_basis(g)?;
                let letters = indices
                    .iter()
                    .map(|&k| Letter::new(k.unsigned_abs(), k < 0))
                    .collect::<Vec<_>>();
                ReducedWord::new(letters)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::new(over, rewritten)?.stallings().index())
    }
}

impl Subgroup {
    pub fn intersect(&self, k: &Subgroup) -> Result<Subgroup> {
        Ok(self.stallings().intersection(&k.stallings())?.subgroup())
    }

    /// Every returned `K` contains `H`; `H` itself comes first.
    pub fn takahasi_extensions(&self, limit: usize) -> Result<Vec<Subgroup>> {
        Ok(self
            .stallings()
            .takahasi_extensions(limit)?
            .iter()
            .map(StallingsAutomaton::subgroup)
            .collect())
    }

    pub fn hall_separation(&self, u: &ReducedWord) -> Result<Subgroup> {
        Ok(self.stallings().hall_separation(u)?.subgroup())
    }

    pub fn commensurator_fi(&self) -> Result<Subgroup> {
        Ok(self.stallings().commensurator_fi()?.subgroup())
    }

    pub fn normal_core(&self) -> Result<Subgroup> {
        Ok(self.stallings().normal_core()?.subgroup())
    }

    pub fn index(&self) -> Index {
        self.stallings().index()
    }
}
