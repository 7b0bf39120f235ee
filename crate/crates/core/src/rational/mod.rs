//! Rational subsets of `F_A` as canonical automata over reduced words.

mod dfa;
mod nfa;
mod recognize;

use std::fmt;

use crate::automata::State;
use crate::error::Result;
use crate::stallings::{StallingsAutomaton, Subgroup};
use crate::word::{Alphabet, Letter, ReducedWord, Word};

pub use nfa::{SaturationTrace, WordNFA};
pub use recognize::{Recognizability, DEFAULT_GENERATOR_LIMIT};

/// A rational subset of `F_A`, stored as the minimal trim DFA of its set of
/// reduced words, numbered breadth-first from the initial state 0. Equal
/// sets have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSet {
    alphabet: Alphabet,
    trans: Vec<Option<State>>,
    accepting: Vec<bool>,
}

pub fn reduce_lang(a: &WordNFA) -> RationalSet {
    dfa::reduce_lang(a)
}

impl RationalSet {
    pub(crate) fn from_canonical(alphabet: Alphabet, trans: Vec<Option<State>>, accepting: Vec<bool>) -> Self {
        RationalSet {
            alphabet,
            trans,
            accepting,
        }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        RationalSet {
            alphabet,
            trans: vec![None; alphabet.size()],
            accepting: vec![false],
        }
    }

    /// All of `F_A`.
    pub fn full(alphabet: Alphabet) -> Self {
        reduce_lang(&WordNFA::subgroup_closure(
            alphabet,
            &alphabet.generators().map(ReducedWord::letter).collect::<Vec<_>>(),
        ))
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        reduce_lang(&WordNFA::from_word(alphabet, &Word::empty()))
    }

    /// The finite set of reductions of `words`.
    pub fn finite(alphabet: Alphabet, words: &[Word]) -> Self {
        reduce_lang(&WordNFA::from_words(alphabet, words))
    }

    /// The subgroup generated by `generators`, as a rational set.
    pub fn subgroup_closure(alphabet: Alphabet, generators: &[ReducedWord]) -> Self {
        reduce_lang(&WordNFA::subgroup_closure(alphabet, generators))
    }

    pub fn from_subgroup(h: &Subgroup) -> Self {
        Self::from_stallings(&h.stallings())
    }

    /// Reduced loops at the basepoint of a Stallings automaton.
    pub fn from_stallings(s: &StallingsAutomaton) -> Self {
        let a = s.automaton();
        let mut nfa = WordNFA::new(a.alphabet(), a.state_count());
        for (p, l, q) in a.positive_edges() {
            nfa.add_edge(p, Some(l), q);
            nfa.add_edge(q, Some(l.inverse()), p);
        }
        nfa.add_initial(a.basepoint());
        nfa.add_final(a.basepoint());
        reduce_lang(&nfa)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn next(&self, p: State, l: Letter) -> Option<State> {
        self.trans[p * self.alphabet.size() + l.index()]
    }

    pub fn is_final(&self, p: State) -> bool {
        self.accepting[p]
    }

    /// `(source, letter, target)` in state-then-letter order.
    pub fn transitions(&self) -> Vec<(State, Letter, State)> {
        (0..self.state_count())
            .flat_map(|p| {
                self.alphabet
                    .letters()
                    .filter_map(move |l| self.next(p, l).map(|q| (p, l, q)))
            })
            .collect()
    }

    pub fn final_states(&self) -> Vec<State> {
        (0..self.state_count()).filter(|&p| self.accepting[p]).collect()
    }

    pub fn to_nfa(&self) -> WordNFA {
        let mut nfa = WordNFA::new(self.alphabet, self.state_count());
        for (p, l, q) in self.transitions() {
            nfa.add_edge(p, Some(l), q);
        }
        nfa.add_initial(0);
        for p in self.final_states() {
            nfa.add_final(p);
        }
        nfa
    }

    pub fn is_empty(&self) -> bool {
        !self.accepting.iter().any(|&a| a)
    }

    pub fn contains_reduced(&self, u: &ReducedWord) -> bool {
        let mut p = 0;
        for &l in u.letters() {
            match self.next(p, l) {
                Some(q) => p = q,
                None => return false,
            }
        }
        self.accepting[p]
    }

    /// Membership of the element represented by `u`.
    pub fn contains(&self, u: &Word) -> bool {
        self.contains_reduced(&u.reduce())
    }

    /// Members of length at most `max_len`, shortest first, then in
    /// letter order.
    pub fn members_up_to(&self, max_len: usize) -> Vec<ReducedWord> {
        let mut out = Vec::new();
        let mut layer: Vec<(State, Vec<Letter>)> = vec![(0, Vec::new())];
        for len in 0..=max_len {
            for (p, w) in &layer {
                if self.accepting[*p] {
                    out.push(ReducedWord::new(w.clone()).expect("accepted words are reduced"));
                }
            }
            if len == max_len {
                break;
            }
            layer = layer
                .into_iter()
                .flat_map(|(p, w)| {
                    self.alphabet.letters().filter_map(move |l| {
                        self.next(p, l).map(|q| {
                            let mut w = w.clone();
                            w.push(l);
                            (q, w)
                        })
                    })
                })
                .collect();
        }
        out
    }

    pub fn union(&self, other: &RationalSet) -> Result<RationalSet> {
        self.alphabet.check(&other.alphabet)?;
        Ok(dfa::product(self, other, |x, y| x || y))
    }

    pub fn intersection(&self, other: &RationalSet) -> Result<RationalSet> {
        self.alphabet.check(&other.alphabet)?;
        Ok(dfa::product(self, other, |x, y| x && y))
    }

    pub fn difference(&self, other: &RationalSet) -> Result<RationalSet> {
        self.alphabet.check(&other.alphabet)?;
        Ok(dfa::product(self, other, |x, y| x && !y))
    }

    /// `F_A \ X`.
    pub fn complement(&self) -> RationalSet {
        dfa::product(self, self, |x, _| !x)
    }

    /// `XY`, reduced.
    pub fn concat(&self, other: &RationalSet) -> Result<RationalSet> {
        self.alphabet.check(&other.alphabet)?;
        let n = self.state_count();
        let mut nfa = WordNFA::new(self.alphabet, n + other.state_count());
        for (p, l, q) in self.transitions() {
            nfa.add_edge(p, Some(l), q);
        }
        for (p, l, q) in other.transitions() {
            nfa.add_edge(n + p, Some(l), n + q);
        }
        for p in self.final_states() {
            nfa.add_edge(p, None, n);
        }
        nfa.add_initial(0);
        for p in other.final_states() {
            nfa.add_final(n + p);
        }
        Ok(reduce_lang(&nfa))
    }

    /// `X*` as a submonoid, reduced.
    pub fn star(&self) -> RationalSet {
        let hub = self.state_count();
        let mut nfa = WordNFA::new(self.alphabet, hub + 1);
        for (p, l, q) in self.transitions() {
            nfa.add_edge(p, Some(l), q);
        }
        nfa.add_edge(hub, None, 0);
        for p in self.final_states() {
            nfa.add_edge(p, None, hub);
        }
        nfa.add_initial(hub);
        nfa.add_final(hub);
        reduce_lang(&nfa)
    }

    /// `X^-1`: the reversed automaton with inverted labels.
    pub fn inverse_set(&self) -> RationalSet {
        let mut nfa = WordNFA::new(self.alphabet, self.state_count());
        for (p, l, q) in self.transitions() {
            nfa.add_edge(q, Some(l.inverse()), p);
        }
        for p in self.final_states() {
            nfa.add_initial(p);
        }
        nfa.add_final(0);
        reduce_lang(&nfa)
    }

    /// `1 ∈ X`, `X^-1 = X` and `XX ⊆ X`.
    pub fn is_subgroup(&self) -> bool {
        self.accepting[0]
            && self.inverse_set() == *self
            && self
                .concat(self)
                .expect("same alphabet")
                .difference(self)
                .expect("same alphabet")
                .is_empty()
    }
}

impl fmt::Display for RationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} states, final {:?}:", self.state_count(), self.final_states())?;
        for (p, l, q) in self.transitions() {
            write!(f, " ({p},{l},{q})")?;
        }
        Ok(())
    }
}
