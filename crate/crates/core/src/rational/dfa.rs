use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::automata::refine::refine;
use crate::automata::State;
use crate::rational::{RationalSet, WordNFA};
use crate::word::{Alphabet, Letter};

/// Partial DFA under construction; state 0 is initial.
pub(crate) struct RawDfa {
    pub alphabet: Alphabet,
    pub trans: Vec<Option<State>>,
    pub accepting: Vec<bool>,
}

impl RawDfa {
    fn with_alphabet(alphabet: Alphabet) -> Self {
        RawDfa {
            alphabet,
            trans: Vec::new(),
            accepting: Vec::new(),
        }
    }

    fn push_state(&mut self, accepting: bool) -> State {
        self.trans.extend(std::iter::repeat_n(None, self.alphabet.size()));
        self.accepting.push(accepting);
        self.accepting.len() - 1
    }

    fn next(&self, p: State, l: usize) -> Option<State> {
        self.trans[p * self.alphabet.size() + l]
    }

    /// Trim, minimize, and number states breadth-first from the initial
    /// state in letter order.
    pub fn into_set(self) -> RationalSet {
        let n = self.accepting.len();
        let k = self.alphabet.size();
        // co-reachability
        let mut preds: Vec<Vec<State>> = vec![Vec::new(); n];
        for p in 0..n {
            for l in 0..k {
                if let Some(q) = self.next(p, l) {
                    preds[q].push(p);
                }
            }
        }
        let mut live = vec![false; n];
        let mut stack: Vec<State> = (0..n).filter(|&p| self.accepting[p]).collect();
        for &p in &stack {
            live[p] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        if n == 0 || !live[0] {
            return RationalSet::empty(self.alphabet);
        }
        let step = |p: usize, l: usize| self.next(p, l).filter(|&q| live[q]);
        let initial: Vec<usize> = (0..n).map(|p| usize::from(self.accepting[p])).collect();
        let class = refine(&initial, k, step);

        let mut id: HashMap<usize, State> = HashMap::from([(class[0], 0)]);
        let mut queue = VecDeque::from([0usize]);
        let mut out = RawDfa::with_alphabet(self.alphabet);
        out.push_state(self.accepting[0]);
        while let Some(p) = queue.pop_front() {
            let from = id[&class[p]];
            for l in 0..k {
                if let Some(q) = step(p, l) {
                    let to = match id.get(&class[q]) {
                        Some(&t) => t,
                        None => {
                            let t = out.push_state(self.accepting[q]);
                            id.insert(class[q], t);
                            queue.push_back(q);
                            t
                        }
                    };
                    out.trans[from * k + l] = Some(to);
                }
            }
        }
        RationalSet::from_canonical(self.alphabet, out.trans, out.accepting)
    }
}

/// Subset construction on the saturated automaton, reading only letters
/// that do not cancel the previous one.
pub(crate) fn reduce_lang(a: &WordNFA) -> RationalSet {
    let sat = a.saturate();
    let m = sat.moves();
    let accepting = |s: &FixedBitSet| sat.final_states().iter().any(|&t| s.contains(t));
    let start = m.close(&m.set(sat.initial()));
    let mut dfa = RawDfa::with_alphabet(a.alphabet());
    let mut ids: HashMap<(FixedBitSet, Option<Letter>), State> = HashMap::new();
    let mut queue = VecDeque::new();
    dfa.push_state(accepting(&start));
    ids.insert((start.clone(), None), 0);
    queue.push_back((start, None::<Letter>));
    let k = a.alphabet().size();
    while let Some((set, last)) = queue.pop_front() {
        let from = ids[&(set.clone(), last)];
        for l in a.alphabet().letters() {
            if last == Some(l.inverse()) {
                continue;
            }
            let next = m.close(&m.step(&set, l));
            if next.is_clear() {
                continue;
            }
            let key = (next, Some(l));
            let to = match ids.get(&key) {
                Some(&t) => t,
                None => {
                    let t = dfa.push_state(accepting(&key.0));
                    ids.insert(key.clone(), t);
                    queue.push_back(key);
                    t
                }
            };
            dfa.trans[from * k + l.index()] = Some(to);
        }
    }
    dfa.into_set()
}

/// Product of `x`, `y` (each completed with a sink) and the last-letter
/// memory of reduced words; acceptance decided by `keep`.
pub(crate) fn product(x: &RationalSet, y: &RationalSet, keep: impl Fn(bool, bool) -> bool) -> RationalSet {
    let alphabet = x.alphabet();
    let k = alphabet.size();
    type Key = (Option<State>, Option<State>, Option<Letter>);
    let acc = |s: &RationalSet, p: Option<State>| p.is_some_and(|p| s.is_final(p));
    let start: Key = (Some(0), Some(0), None);
    let mut dfa = RawDfa::with_alphabet(alphabet);
    let mut ids: HashMap<Key, State> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([start]);
    dfa.push_state(keep(acc(x, start.0), acc(y, start.1)));
    while let Some(key) = queue.pop_front() {
        let from = ids[&key];
        let (p, q, last) = key;
        for l in alphabet.letters() {
            if last == Some(l.inverse()) {
                continue;
            }
            let next: Key = (p.and_then(|p| x.next(p, l)), q.and_then(|q| y.next(q, l)), Some(l));
            let to = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = dfa.push_state(keep(acc(x, next.0), acc(y, next.1)));
                    ids.insert(next, t);
                    queue.push_back(next);
                    t
                }
            };
            dfa.trans[from * k + l.index()] = Some(to);
        }
    }
    dfa.into_set()
}
