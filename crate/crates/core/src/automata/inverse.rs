//! Deterministic involutive automata with a single final state.

use std::collections::VecDeque;

use crate::automata::involutive::InvolutiveAutomaton;
use crate::automata::refine::refine;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, ReducedWord};

pub type State = usize;

/// An inverse automaton: deterministic over `Ã`, with every edge `(p, a, q)`
/// paired with `(q, a^-1, p)`.
///
/// The transition table covers the full involutive alphabet, so reading is
/// a lookup per letter. Equality is structural; two canonical forms are
/// equal iff the automata are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InverseAutomaton {
    alphabet: Alphabet,
    states: usize,
    trans: Vec<Option<State>>,
    basepoint: State,
    terminal: State,
}

impl InverseAutomaton {
    /// Edgeless automaton.
    pub fn new(alphabet: Alphabet, states: usize, basepoint: State, terminal: State) -> Self {
        assert!(basepoint < states && terminal < states, "state out of range");
        InverseAutomaton {
            alphabet,
            states,
            trans: vec![None; states * alphabet.size()],
            basepoint,
            terminal,
        }
    }

    /// Single state, no edges: the automaton of the trivial subgroup.
    pub fn trivial(alphabet: Alphabet) -> Self {
        InverseAutomaton::new(alphabet, 1, 0, 0)
    }

    /// One state with a loop for every generator.
    pub fn bouquet(alphabet: Alphabet) -> Self {
        let mut a = InverseAutomaton::trivial(alphabet);
        for g in alphabet.generators() {
            a.set(0, g, 0);
        }
        a
    }

    /// Build from edges with arbitrary letters; inverse edges are implied.
    /// Fails if two edges leaving a state share a label.
    pub fn from_edges(
        alphabet: Alphabet,
        states: usize,
        edges: &[(State, Letter, State)],
        basepoint: State,
        terminal: State,
    ) -> Result<Self> {
        if states == 0 || basepoint >= states || terminal >= states {
            return Err(Error::MalformedAutomaton("state index out of range".into()));
        }
        let mut a = InverseAutomaton::new(alphabet, states, basepoint, terminal);
        for &(p, l, q) in edges {
            a.add_edge(p, l, q)?;
        }
        Ok(a)
    }

    pub fn add_edge(&mut self, p: State, l: Letter, q: State) -> Result<()> {
        if p >= self.states || q >= self.states {
            return Err(Error::MalformedAutomaton(format!("edge ({p}, {l}, {q}) out of range")));
        }
        if !self.alphabet.contains(l) {
            return Err(Error::MalformedAutomaton(format!("letter {l} beyond rank")));
        }
        match (self.next(p, l), self.next(q, l.inverse())) {
            (None, None) => {
                self.set(p, l, q);
                Ok(())
            }
            (Some(t), Some(s)) if t == q && s == p => Ok(()),
            _ => Err(Error::MalformedAutomaton(format!(
                "edge ({p}, {l}, {q}) breaks determinism"
            ))),
        }
    }

    fn set(&mut self, p: State, l: Letter, q: State) {
        let k = self.alphabet.size();
        self.trans[p * k + l.index()] = Some(q);
        self.trans[q * k + l.inverse().index()] = Some(p);
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn basepoint(&self) -> State {
        self.basepoint
    }

    pub fn final_state(&self) -> State {
        self.terminal
    }

    #[inline]
    pub fn next(&self, p: State, l: Letter) -> Option<State> {
        self.trans[p * self.alphabet.size() + l.index()]
    }

    /// Follow `letters` from `p`; `None` if some transition is missing.
    pub fn read(&self, p: State, letters: &[Letter]) -> Option<State> {
        letters.iter().try_fold(p, |s, &l| self.next(s, l))
    }

    pub fn accepts(&self, letters: &[Letter]) -> bool {
        self.read(self.basepoint, letters) == Some(self.terminal)
    }

    /// Positively labelled edges, sorted by source then letter.
    pub fn positive_edges(&self) -> Vec<(State, Letter, State)> {
        let mut out = Vec::new();
        for p in 0..self.states {
            for g in self.alphabet.generators() {
                if let Some(q) = self.next(p, g) {
                    out.push((p, g, q));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.positive_edges().len()
    }

    /// Number of outgoing `Ã`-edges.
    pub fn degree(&self, p: State) -> usize {
        self.alphabet.letters().filter(|&l| self.next(p, l).is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.trans.iter().all(Option::is_some)
    }

    pub fn to_involutive(&self) -> InvolutiveAutomaton {
        let mut a = InvolutiveAutomaton::new(self.alphabet, self.states, self.basepoint, self.terminal);
        for (p, g, q) in self.positive_edges() {
            a.add_edge(p, g, q);
        }
        a
    }

    /// Same automaton with basepoint and final state both moved to `s`.
    pub fn rebased(&self, s: State) -> Self {
        assert!(s < self.states, "state out of range");
        InverseAutomaton {
            basepoint: s,
            terminal: s,
            ..self.clone()
        }
    }

    /// Renumber states breadth-first from the basepoint, exploring labels in
    /// the global letter order. States unreachable from the basepoint are
    /// dropped.
    pub fn canonicalize(&self) -> Self {
        let mut order = vec![usize::MAX; self.states];
        let mut queue = VecDeque::from([self.basepoint]);
        order[self.basepoint] = 0;
        let mut visited = vec![self.basepoint];
        while let Some(p) = queue.pop_front() {
            for l in self.alphabet.letters() {
                if let Some(q) = self.next(p, l) {
                    if order[q] == usize::MAX {
                        order[q] = visited.len();
                        visited.push(q);
                        queue.push_back(q);
                    }
                }
            }
        }
        self.renumbered(&order, visited.len())
    }

    /// Keep the states with `map[s] != usize::MAX`, renumbered to `map[s]`.
    /// `map` must be injective on kept states and closed under edges, and
    /// must keep the basepoint and final state.
    fn renumbered(&self, map: &[usize], count: usize) -> Self {
        let k = self.alphabet.size();
        let mut trans = vec![None; count * k];
        for p in 0..self.states {
            if map[p] == usize::MAX {
                continue;
            }
            for l in 0..k {
                if let Some(q) = self.trans[p * k + l] {
                    trans[map[p] * k + l] = Some(map[q]);
                }
            }
        }
        InverseAutomaton {
            alphabet: self.alphabet,
            states: count,
            trans,
            basepoint: map[self.basepoint],
            terminal: map[self.terminal],
        }
    }

    /// Subautomaton induced by `keep`; edges to dropped states are removed.
    pub(crate) fn induced(&self, keep: &[bool]) -> Self {
        let mut map = vec![usize::MAX; self.states];
        let mut count = 0;
        for s in 0..self.states {
            if keep[s] {
                map[s] = count;
                count += 1;
            }
        }
        let k = self.alphabet.size();
        let mut trans = vec![None; count * k];
        for p in 0..self.states {
            if !keep[p] {
                continue;
            }
            for l in 0..k {
                if let Some(q) = self.trans[p * k + l] {
                    if keep[q] {
                        trans[map[p] * k + l] = Some(map[q]);
                    }
                }
            }
        }
        InverseAutomaton {
            alphabet: self.alphabet,
            states: count,
            trans,
            basepoint: map[self.basepoint],
            terminal: map[self.terminal],
        }
    }

    /// Drop states outside the basepoint's component, then repeatedly drop
    /// states other than the basepoint and final state having at most one
    /// outgoing edge. What remains reads the same reduced words between
    /// basepoint and final state.
    pub fn prune(&self) -> Self {
        let mut keep = vec![false; self.states];
        let mut stack = vec![self.basepoint];
        keep[self.basepoint] = true;
        while let Some(p) = stack.pop() {
            for l in self.alphabet.letters() {
                if let Some(q) = self.next(p, l) {
                    if !keep[q] {
                        keep[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        if !keep[self.terminal] {
            // final state unreachable: the language is empty, keep the basepoint only
            let mut only = vec![false; self.states];
            only[self.basepoint] = true;
            let mut a = self.induced(&only);
            a.terminal = a.basepoint;
            return a;
        }
        let mut degree: Vec<usize> = (0..self.states)
            .map(|p| {
                self.alphabet
                    .letters()
                    .filter(|&l| self.next(p, l).is_some_and(|q| keep[q]))
                    .count()
            })
            .collect();
        let mut queue: Vec<State> = (0..self.states)
            .filter(|&p| keep[p] && degree[p] <= 1 && p != self.basepoint && p != self.terminal)
            .collect();
        while let Some(p) = queue.pop() {
            if !keep[p] {
                continue;
            }
            keep[p] = false;
            for l in self.alphabet.letters() {
                if let Some(q) = self.next(p, l) {
                    if keep[q] && q != p {
                        degree[q] -= 1;
                        if degree[q] <= 1 && q != self.basepoint && q != self.terminal {
                            queue.push(q);
                        }
                    }
                }
            }
        }
        self.induced(&keep)
    }

    /// The unique morphism to `other` (basepoint to basepoint, final to
    /// final, edges to edges), if any. Exists iff `L(self) ⊆ L(other)`.
    pub fn morphism_to(&self, other: &InverseAutomaton) -> Option<Vec<State>> {
        if self.alphabet != other.alphabet {
            return None;
        }
        let mut map = vec![usize::MAX; self.states];
        map[self.basepoint] = other.basepoint;
        let mut stack = vec![self.basepoint];
        while let Some(p) = stack.pop() {
            for l in self.alphabet.letters() {
                if let Some(q) = self.next(p, l) {
                    let image = other.next(map[p], l)?;
                    if map[q] == usize::MAX {
                        map[q] = image;
                        stack.push(q);
                    } else if map[q] != image {
                        return None;
                    }
                }
            }
        }
        if map[self.terminal] != other.terminal {
            return None;
        }
        Some(map)
    }

    pub fn morphism_exists(&self, other: &InverseAutomaton) -> bool {
        self.morphism_to(other).is_some()
    }

    /// The subautomaton of `other` covered by the image of the morphism from
    /// `self`, if the morphism exists.
    pub fn morphic_image(&self, other: &InverseAutomaton) -> Option<InverseAutomaton> {
        let map = self.morphism_to(other)?;
        let mut image = InverseAutomaton::new(other.alphabet, other.states, other.basepoint, other.terminal);
        for (p, g, q) in self.positive_edges() {
            image.set(map[p], g, map[q]);
        }
        let mut keep = vec![false; other.states];
        for &s in map.iter().filter(|&&s| s != usize::MAX) {
            keep[s] = true;
        }
        Some(image.induced(&keep))
    }

    /// Add edges until every letter acts as a permutation of the states.
    ///
    /// For each generator, states lacking an outgoing edge and states lacking
    /// an incoming edge are listed in state order and paired positionally.
    pub fn complete_to_permutations(&self) -> Self {
        let mut out = self.clone();
        for g in self.alphabet.generators() {
            let missing_out: Vec<State> = (0..self.states).filter(|&p| self.next(p, g).is_none()).collect();
            let missing_in: Vec<State> = (0..self.states)
                .filter(|&q| self.next(q, g.inverse()).is_none())
                .collect();
            debug_assert_eq!(missing_out.len(), missing_in.len());
            for (&p, &q) in missing_out.iter().zip(&missing_in) {
                out.set(p, g, q);
            }
        }
        out
    }

    /// Quotient by the Nerode equivalence computed with every state final.
    pub fn minimize_all_final(&self) -> Self {
        let k = self.alphabet.size();
        let class = refine(&vec![0; self.states], k, |s, l| self.trans[s * k + l]);
        let count = class.iter().copied().max().map_or(0, |m| m + 1);
        let mut trans = vec![None; count * k];
        for p in 0..self.states {
            for l in 0..k {
                if let Some(q) = self.trans[p * k + l] {
                    trans[class[p] * k + l] = Some(class[q]);
                }
            }
        }
        InverseAutomaton {
            alphabet: self.alphabet,
            states: count,
            trans,
            basepoint: class[self.basepoint],
            terminal: class[self.terminal],
        }
    }

    /// Label of a shortest path from `from` to every state, in the global
    /// letter order (breadth first).
    pub fn geodesics_from(&self, from: State) -> Vec<Option<ReducedWord>> {
        let mut out: Vec<Option<Vec<Letter>>> = vec![None; self.states];
        out[from] = Some(Vec::new());
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            for l in self.alphabet.letters() {
                if let Some(q) = self.next(p, l) {
                    if out[q].is_none() {
                        let mut w = out[p].clone().unwrap();
                        w.push(l);
                        out[q] = Some(w);
                        queue.push_back(q);
                    }
                }
            }
        }
        out.into_iter()
            .map(|w| w.map(|w| ReducedWord::new(w).expect("geodesic labels are reduced")))
            .collect()
    }

    /// Glue a new path reading `word` from the basepoint, starting where the
    /// existing automaton can no longer read it. Returns the state the word
    /// ends at.
    pub(crate) fn extend_along(&mut self, word: &[Letter]) -> State {
        let mut p = self.basepoint;
        let mut i = 0;
        while i < word.len() {
            match self.next(p, word[i]) {
                Some(q) => p = q,
                None => break,
            }
            i += 1;
        }
        let fresh = word.len() - i;
        if fresh > 0 {
            let k = self.alphabet.size();
            self.trans.extend(std::iter::repeat_n(None, fresh * k));
            for &l in &word[i..] {
                let q = self.states;
                self.states += 1;
                self.set(p, l, q);
                p = q;
            }
        }
        p
    }

    /// Letter maps as partial functions on states.
    pub(crate) fn letter_action(&self, l: Letter) -> Vec<Option<State>> {
        (0..self.states).map(|p| self.next(p, l)).collect()
    }
}
