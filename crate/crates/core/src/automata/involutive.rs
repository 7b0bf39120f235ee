//! Involutive automata and Stallings folding.

use crate::automata::inverse::{InverseAutomaton, State};
use crate::word::{Alphabet, Letter};

/// An automaton over `Ã` in which every edge `(p, a, q)` implies the edge
/// `(q, a^-1, p)`. Only positively labelled edges are stored; parallel
/// duplicates are allowed (they are distinct edges until folded).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvolutiveAutomaton {
    alphabet: Alphabet,
    states: usize,
    edges: Vec<(State, Letter, State)>,
    basepoint: State,
    terminal: State,
}

/// Two distinct edges leaving the same state with the same label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clash {
    pub state: State,
    pub letter: Letter,
    pub first: usize,
    pub second: usize,
}

impl InvolutiveAutomaton {
    pub fn new(alphabet: Alphabet, states: usize, basepoint: State, terminal: State) -> Self {
        assert!(basepoint < states && terminal < states, "state out of range");
        InvolutiveAutomaton {
            alphabet,
            states,
            edges: Vec::new(),
            basepoint,
            terminal,
        }
    }

    /// Adds `(p, l, q)`; an inverse letter is stored as the reversed
    /// positive edge.
    pub fn add_edge(&mut self, p: State, l: Letter, q: State) {
        assert!(p < self.states && q < self.states, "state out of range");
        assert!(self.alphabet.contains(l), "letter beyond rank");
        if l.is_inverse() {
            self.edges.push((q, l.inverse(), p));
        } else {
            self.edges.push((p, l, q));
        }
    }

    pub fn add_state(&mut self) -> State {
        self.states += 1;
        self.states - 1
    }

    /// Identify two states (no folding).
    pub fn merge_states(&self, x: State, y: State) -> Self {
        let (keep, drop) = (x.min(y), x.max(y));
        if keep == drop {
            return self.clone();
        }
        let map: Vec<State> = (0..self.states)
            .map(|s| match s.cmp(&drop) {
                std::cmp::Ordering::Less => s,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => s - 1,
            })
            .collect();
        InvolutiveAutomaton {
            alphabet: self.alphabet,
            states: self.states - 1,
            edges: self.edges.iter().map(|&(p, l, q)| (map[p], l, map[q])).collect(),
            basepoint: map[self.basepoint],
            terminal: map[self.terminal],
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[(State, Letter, State)] {
        &self.edges
    }

    pub fn basepoint(&self) -> State {
        self.basepoint
    }

    pub fn final_state(&self) -> State {
        self.terminal
    }

    /// Every `(state, label, target, edge index)` leaving a state, both
    /// directions of each stored edge.
    fn outgoing(&self) -> impl Iterator<Item = (State, Letter, State, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(i, &(p, l, q))| [(p, l, q, i), (q, l.inverse(), p, i)])
    }

    /// All foldable pairs of edges.
    pub fn clashes(&self) -> Vec<Clash> {
        let mut ends: Vec<(State, Letter, usize)> = self.outgoing().map(|(p, l, _, i)| (p, l, i)).collect();
        ends.sort();
        let mut out = Vec::new();
        let mut start = 0;
        while start < ends.len() {
            let mut end = start + 1;
            while end < ends.len() && ends[end].0 == ends[start].0 && ends[end].1 == ends[start].1 {
                end += 1;
            }
            for i in start..end {
                for j in i + 1..end {
                    out.push(Clash {
                        state: ends[i].0,
                        letter: ends[i].1,
                        first: ends[i].2,
                        second: ends[j].2,
                    });
                }
            }
            start = end;
        }
        out
    }

    fn target(&self, edge: usize, from: State, letter: Letter) -> State {
        let (p, l, q) = self.edges[edge];
        if p == from && l == letter {
            q
        } else {
            debug_assert!(q == from && l.inverse() == letter);
            p
        }
    }

    /// Perform a single folding: identify the two clashing edges (and so
    /// their targets).
    pub fn fold_once(&self, clash: Clash) -> Self {
        let q = self.target(clash.first, clash.state, clash.letter);
        let r = self.target(clash.second, clash.state, clash.letter);
        let mut without = self.clone();
        without.edges.remove(clash.second);
        without.merge_states(q, r)
    }

    /// Fold to determinism.
    ///
    /// Disjoint-set union over states, with a per-class table of outgoing
    /// labels; every collision in a table queues the two targets for merging.
    /// Surviving classes are numbered in order of their smallest member, so
    /// an input that is already deterministic comes back unchanged.
    pub fn fold(&self) -> InverseAutomaton {
        let n = self.states;
        let k = self.alphabet.size();
        let mut sets = DisjointSets::new(n);
        let mut table: Vec<Option<State>> = vec![None; n * k];
        let mut pending: Vec<(State, State)> = Vec::new();
        for (p, l, q, _) in self.outgoing() {
            let slot = &mut table[p * k + l.index()];
            match *slot {
                None => *slot = Some(q),
                Some(t) => pending.push((t, q)),
            }
        }
        while let Some((x, y)) = pending.pop() {
            let Some((root, child)) = sets.union(x, y) else {
                continue;
            };
            for l in 0..k {
                if let Some(t) = table[child * k + l].take() {
                    let slot = &mut table[root * k + l];
                    match *slot {
                        None => *slot = Some(t),
                        Some(u) => pending.push((t, u)),
                    }
                }
            }
        }
        let mut id = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            let r = sets.find(s);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
        }
        let mut out = InverseAutomaton::new(
            self.alphabet,
            count,
            id[sets.find(self.basepoint)],
            id[sets.find(self.terminal)],
        );
        for s in 0..n {
            if sets.find(s) != s {
                continue;
            }
            for l in self.alphabet.letters() {
                if let Some(t) = table[s * k + l.index()] {
                    let t = id[sets.find(t)];
                    out.add_edge(id[s], l, t).expect("folded table is deterministic");
                }
            }
        }
        out
    }

    /// `Some` if no two edges clash.
    pub fn to_inverse(&self) -> Option<InverseAutomaton> {
        InverseAutomaton::from_edges(self.alphabet, self.states, &self.edges, self.basepoint, self.terminal).ok()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns `(root, absorbed)`, or `None` if already joined.
    fn union(&mut self, x: usize, y: usize) -> Option<(usize, usize)> {
        let (x, y) = (self.find(x), self.find(y));
        if x == y {
            return None;
        }
        let (root, child) = if self.size[x] >= self.size[y] { (x, y) } else { (y, x) };
        self.parent[child] = root;
        self.size[root] += self.size[child];
        Some((root, child))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: char) -> Letter {
        Letter::parse(s, Alphabet::new(26).unwrap()).unwrap()
    }

    fn r2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    #[test]
    fn duplicate_petals_collapse() {
        let mut a = InvolutiveAutomaton::new(r2(), 1, 0, 0);
        a.add_edge(0, l('a'), 0);
        a.add_edge(0, l('a'), 0);
        assert_eq!(a.clashes().len(), 2); // one on `a`, one on `A`
        let f = a.fold();
        assert_eq!(f.state_count(), 1);
        assert_eq!(f.positive_edges(), vec![(0, l('a'), 0)]);
    }

    #[test]
    fn deterministic_input_unchanged() {
        let mut a = InvolutiveAutomaton::new(r2(), 3, 0, 0);
        a.add_edge(0, l('b'), 2);
        a.add_edge(1, l('a'), 0);
        a.add_edge(1, l('b'), 1);
        a.add_edge(2, l('a'), 1);
        assert!(a.clashes().is_empty());
        assert_eq!(a.fold(), a.to_inverse().unwrap());
    }

    #[test]
    fn fold_once_identifies_targets() {
        // 0 -a-> 1, 0 -a-> 2
        let mut a = InvolutiveAutomaton::new(r2(), 3, 0, 0);
        a.add_edge(0, l('a'), 1);
        a.add_edge(0, l('a'), 2);
        let c = a.clashes();
        assert_eq!(c.len(), 1);
        let f = a.fold_once(c[0]);
        assert_eq!(f.state_count(), 2);
        assert_eq!(f.edges(), &[(0, l('a'), 1)]);
    }

    #[test]
    fn inverse_edges_clash_too() {
        // 1 -a-> 0 and 2 -a-> 0 clash on A at state 0
        let mut a = InvolutiveAutomaton::new(r2(), 3, 0, 0);
        a.add_edge(1, l('a'), 0);
        a.add_edge(0, l('A'), 2);
        let c = a.clashes();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].state, c[0].letter), (0, l('A')));
        assert_eq!(a.fold().state_count(), 2);
    }
}
