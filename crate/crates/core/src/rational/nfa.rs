use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::automata::State;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, ReducedWord, Word};

/// Finite automaton over `Ã` with `ε`-edges (`None` labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordNFA {
    alphabet: Alphabet,
    states: usize,
    edges: Vec<(State, Option<Letter>, State)>,
    initial: Vec<State>,
    terminal: Vec<State>,
}

/// The automata `A_0, A_1, ..., A_m, A_m` produced by saturation, with the
/// `ε`-edges added at each step.
#[derive(Debug, Clone)]
pub struct SaturationTrace {
    pub stages: Vec<WordNFA>,
    pub added: Vec<Vec<(State, State)>>,
}

impl WordNFA {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        WordNFA {
            alphabet,
            states,
            edges: Vec::new(),
            initial: Vec::new(),
            terminal: Vec::new(),
        }
    }

    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        edges: Vec<(State, Option<Letter>, State)>,
        initial: Vec<State>,
        terminal: Vec<State>,
    ) -> Result<Self> {
        let bad = |s: State| s >= states;
        if let Some(&(p, _, q)) = edges.iter().find(|(p, _, q)| bad(*p) || bad(*q)) {
            return Err(Error::MalformedAutomaton(format!("edge ({p}, {q}) leaves 0..{states}")));
        }
        if let Some(l) = edges.iter().filter_map(|e| e.1).find(|l| !alphabet.contains(*l)) {
            return Err(Error::MalformedAutomaton(format!(
                "letter {l} beyond rank {}",
                alphabet.rank()
            )));
        }
        if let Some(s) = initial.iter().chain(&terminal).find(|s| bad(**s)) {
            return Err(Error::MalformedAutomaton(format!("state {s} out of range")));
        }
        Ok(WordNFA {
            alphabet,
            states,
            edges,
            initial,
            terminal,
        })
    }

    /// Single path spelling `w` (not reduced first).
    pub fn from_word(alphabet: Alphabet, w: &Word) -> Self {
        Self::from_words(alphabet, std::slice::from_ref(w))
    }

    /// Finite language: one branch per word, sharing the initial state.
    pub fn from_words(alphabet: Alphabet, words: &[Word]) -> Self {
        let mut a = WordNFA::new(alphabet, 1);
        a.initial.push(0);
        for w in words {
            let mut p = 0;
            for &l in w.letters() {
                let q = a.add_state();
                a.add_edge(p, Some(l), q);
                p = q;
            }
            a.terminal.push(p);
        }
        a
    }

    /// `(X ∪ X^-1)*`: a petal and its reverse petal per generator.
    pub fn subgroup_closure(alphabet: Alphabet, generators: &[ReducedWord]) -> Self {
        let mut a = WordNFA::new(alphabet, 1);
        a.initial.push(0);
        a.terminal.push(0);
        for g in generators.iter().flat_map(|g| [g.clone(), g.invert()]) {
            let letters = g.letters();
            let mut p = 0;
            for (i, &l) in letters.iter().enumerate() {
                let q = if i + 1 == letters.len() { 0 } else { a.add_state() };
                a.add_edge(p, Some(l), q);
                p = q;
            }
        }
        a
    }

    pub fn add_state(&mut self) -> State {
        self.states += 1;
        self.states - 1
    }

    pub fn add_edge(&mut self, p: State, label: Option<Letter>, q: State) {
        self.edges.push((p, label, q));
    }

    pub fn add_initial(&mut self, s: State) {
        self.initial.push(s);
    }

    pub fn add_final(&mut self, s: State) {
        self.terminal.push(s);
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[(State, Option<Letter>, State)] {
        &self.edges
    }

    pub fn initial(&self) -> &[State] {
        &self.initial
    }

    pub fn final_states(&self) -> &[State] {
        &self.terminal
    }

    pub fn epsilon_edges(&self) -> BTreeSet<(State, State)> {
        self.edges
            .iter()
            .filter(|e| e.1.is_none())
            .map(|&(p, _, q)| (p, q))
            .collect()
    }

    /// Does the automaton accept `w` as a word over `Ã` (no reduction)?
    pub fn accepts(&self, w: &Word) -> bool {
        let m = self.moves();
        let mut current = m.close(&m.set(&self.initial));
        for &l in w.letters() {
            current = m.close(&m.step(&current, l));
            if current.is_clear() {
                return false;
            }
        }
        self.terminal.iter().any(|&t| current.contains(t))
    }

    pub(crate) fn moves(&self) -> Moves {
        Moves::new(self)
    }

    /// Add `ε`-edges until no pair `(p, q)` is joined by a path labelled
    /// `a a^-1` without also being joined by a path labelled `1`.
    pub fn saturate(&self) -> WordNFA {
        let mut a = self.clone();
        while let Some(step) = a.saturation_step() {
            a = step.0;
        }
        a
    }

    pub fn saturate_traced(&self) -> SaturationTrace {
        let mut stages = vec![self.clone()];
        let mut added = Vec::new();
        loop {
            let last = stages.last().unwrap();
            match last.saturation_step() {
                Some((next, new)) => {
                    added.push(new);
                    stages.push(next);
                }
                None => {
                    added.push(Vec::new());
                    stages.push(last.clone());
                    break;
                }
            }
        }
        SaturationTrace { stages, added }
    }

    fn saturation_step(&self) -> Option<(WordNFA, Vec<(State, State)>)> {
        let m = self.moves();
        let mut new = BTreeSet::new();
        for p in 0..self.states {
            let from = &m.closure[p];
            for l in self.alphabet.letters() {
                let mid = m.close(&m.step(from, l));
                if mid.is_clear() {
                    continue;
                }
                let end = m.close(&m.step(&mid, l.inverse()));
                for q in end.ones() {
                    if !from.contains(q) {
                        new.insert((p, q));
                    }
                }
            }
        }
        if new.is_empty() {
            return None;
        }
        let mut next = self.clone();
        for &(p, q) in &new {
            next.add_edge(p, None, q);
        }
        Some((next, new.into_iter().collect()))
    }
}

/// Letter moves and reflexive-transitive `ε`-closures as bitsets.
pub(crate) struct Moves {
    states: usize,
    delta: Vec<Vec<Vec<State>>>,
    pub(crate) closure: Vec<FixedBitSet>,
}

impl Moves {
    fn new(a: &WordNFA) -> Self {
        let n = a.states;
        let mut delta = vec![vec![Vec::new(); a.alphabet.size()]; n];
        let mut closure: Vec<FixedBitSet> = (0..n)
            .map(|p| {
                let mut b = FixedBitSet::with_capacity(n);
                b.insert(p);
                b
            })
            .collect();
        for &(p, label, q) in &a.edges {
            match label {
                Some(l) => delta[p][l.index()].push(q),
                None => closure[p].insert(q),
            }
        }
        // transitive closure by iterated union
        loop {
            let mut changed = false;
            for p in 0..n {
                let mut acc = closure[p].clone();
                for r in closure[p].ones() {
                    acc.union_with(&closure[r]);
                }
                if acc != closure[p] {
                    closure[p] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Moves {
            states: n,
            delta,
            closure,
        }
    }

    pub(crate) fn set(&self, states: &[State]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.states);
        for &s in states {
            b.insert(s);
        }
        b
    }

    pub(crate) fn close(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = s.clone();
        for p in s.ones() {
            out.union_with(&self.closure[p]);
        }
        out
    }

    pub(crate) fn step(&self, s: &FixedBitSet, l: Letter) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.states);
        for p in s.ones() {
            for &q in &self.delta[p][l.index()] {
                out.insert(q);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn benois() -> WordNFA {
        let al = Alphabet::new(2).unwrap();
        let l = |c| Some(Letter::parse(c, al).unwrap());
        WordNFA::from_parts(
            al,
            4,
            vec![
                (0, l('a'), 1),
                (1, l('a'), 2),
                (1, l('b'), 1),
                (2, l('b'), 2),
                (2, l('A'), 3),
                (3, l('B'), 0),
            ],
            vec![0],
            vec![0],
        )
        .unwrap()
    }

    #[test]
    fn benois_stages() {
        let t = benois().saturate_traced();
        assert_eq!(t.added, vec![vec![(1, 3)], vec![(1, 0)], vec![]]);
        assert_eq!(t.stages.len(), 4);
        assert_eq!(t.stages[2], t.stages[3]);
        assert_eq!(benois().saturate().epsilon_edges(), BTreeSet::from([(1, 0), (1, 3)]));
    }

    #[test]
    fn reduced_language_untouched() {
        let al = Alphabet::new(2).unwrap();
        let w = Word::parse("abAb", al).unwrap();
        let a = WordNFA::from_word(al, &w);
        assert_eq!(a.saturate(), a);
    }

    #[test]
    fn trivial_paths_count_as_empty_paths() {
        let al = Alphabet::new(1).unwrap();
        let a = WordNFA::from_parts(
            al,
            2,
            vec![(0, Some(Letter::new(1, false)), 1), (1, Some(Letter::new(1, true)), 0)],
            vec![0],
            vec![0],
        )
        .unwrap();
        assert!(a.saturate().epsilon_edges().is_empty());
    }

    #[test]
    fn accepts_raw_words() {
        let al = Alphabet::new(2).unwrap();
        let a = benois();
        assert!(a.accepts(&Word::parse("aabAB", al).unwrap()));
        assert!(!a.accepts(&Word::parse("ab", al).unwrap()));
        assert!(a.saturate().accepts(&Word::parse("abB", al).unwrap()));
        assert!(a.saturate().accepts(&Word::empty()));
    }

    #[test]
    fn bad_parts() {
        let al = Alphabet::new(1).unwrap();
        assert!(WordNFA::from_parts(al, 1, vec![(0, None, 1)], vec![0], vec![0]).is_err());
        assert!(WordNFA::from_parts(al, 1, vec![(0, Some(Letter::new(2, false)), 0)], vec![0], vec![0]).is_err());
    }
}
