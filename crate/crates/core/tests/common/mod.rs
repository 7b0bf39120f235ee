#![allow(dead_code)]

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::Rng;
use stallings_core::oracle::enum_reduced;
use stallings_core::{
    Alphabet, InverseAutomaton, InvolutiveAutomaton, Letter, RationalSet, ReducedWord, Subgroup, Word, WordNFA,
};

pub fn alphabet(rank: usize) -> Alphabet {
    Alphabet::new(rank).unwrap()
}

pub fn rw(s: &str) -> ReducedWord {
    ReducedWord::parse(s, alphabet(26)).unwrap()
}

pub fn sg(rank: usize, gens: &[&str]) -> Subgroup {
    Subgroup::parse(rank, gens).unwrap()
}

pub fn reduced_up_to(rank: usize, len: usize) -> Vec<ReducedWord> {
    enum_reduced(alphabet(rank), len).unwrap()
}

pub fn random_letter(rng: &mut StdRng, a: Alphabet) -> Letter {
    Letter::from_index(rng.random_range(0..a.size()))
}

pub fn random_word(rng: &mut StdRng, a: Alphabet, max_len: usize) -> Word {
    let n = rng.random_range(0..=max_len);
    (0..n).map(|_| random_letter(rng, a)).collect()
}

pub fn random_reduced(rng: &mut StdRng, a: Alphabet, max_len: usize) -> ReducedWord {
    let n = rng.random_range(0..=max_len);
    let mut out: Vec<Letter> = Vec::new();
    while out.len() < n {
        let l = random_letter(rng, a);
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    ReducedWord::new(out).unwrap()
}

/// Connected-or-not involutive automaton with basepoint = final state 0.
pub fn random_involutive(rng: &mut StdRng, rank: usize, max_states: usize, max_edges: usize) -> InvolutiveAutomaton {
    let a = alphabet(rank);
    let n = rng.random_range(1..=max_states);
    let mut aut = InvolutiveAutomaton::new(a, n, 0, 0);
    for _ in 0..rng.random_range(0..=max_edges) {
        let g = Letter::new(rng.random_range(1..=rank), false);
        aut.add_edge(rng.random_range(0..n), g, rng.random_range(0..n));
    }
    aut
}

pub fn random_subgroup(rng: &mut StdRng, rank: usize, max_gens: usize, max_len: usize) -> Subgroup {
    let a = alphabet(rank);
    let k = rng.random_range(0..=max_gens);
    Subgroup::new(a, (0..k).map(|_| random_reduced(rng, a, max_len))).unwrap()
}

/// A random subgroup whose Stallings automaton has at most `max_states`
/// states.
pub fn small_subgroup(rng: &mut StdRng, rank: usize, max_states: usize) -> Subgroup {
    loop {
        let h = random_subgroup(rng, rank, 3, 4);
        if h.stallings().state_count() <= max_states {
            return h;
        }
    }
}

/// Every maximal folding sequence (exhaustive when `exhaustive`, otherwise
/// `samples` random sequences); returns the distinct canonical results.
pub fn fold_outcomes(
    a: &InvolutiveAutomaton,
    exhaustive: bool,
    samples: usize,
    rng: &mut StdRng,
) -> HashSet<InverseAutomaton> {
    let mut out = HashSet::new();
    if exhaustive {
        let mut seen = HashSet::new();
        let mut stack = vec![a.clone()];
        while let Some(b) = stack.pop() {
            if !seen.insert(b.clone()) {
                continue;
            }
            let clashes = b.clashes();
            if clashes.is_empty() {
                out.insert(b.to_inverse().unwrap().canonicalize());
            }
            for c in clashes {
                stack.push(b.fold_once(c));
            }
        }
    } else {
        for _ in 0..samples {
            let mut b = a.clone();
            loop {
                let clashes = b.clashes();
                if clashes.is_empty() {
                    break;
                }
                let c = clashes[rng.random_range(0..clashes.len())];
                b = b.fold_once(c);
            }
            out.insert(b.to_inverse().unwrap().canonicalize());
        }
    }
    out
}

/// A random rational set over rank 2 from at most three petal words of
/// length at most four: a finite set, a star, or a subgroup closure.
pub fn random_rational(rng: &mut StdRng) -> RationalSet {
    let a = alphabet(2);
    let k = rng.random_range(1..=3);
    let words: Vec<Word> = (0..k).map(|_| random_word(rng, a, 4)).collect();
    match rng.random_range(0..3) {
        0 => RationalSet::finite(a, &words),
        1 => {
            let mut nfa = WordNFA::new(a, 1);
            nfa.add_initial(0);
            nfa.add_final(0);
            for w in &words {
                let mut p = 0;
                for (i, &l) in w.letters().iter().enumerate() {
                    let q = if i + 1 == w.len() { 0 } else { nfa.add_state() };
                    nfa.add_edge(p, Some(l), q);
                    p = q;
                }
            }
            stallings_core::reduce_lang(&nfa)
        }
        _ => RationalSet::subgroup_closure(a, &words.iter().map(Word::reduce).collect::<Vec<_>>()),
    }
}

/// Independent coset count: classes of reduced words of length at most
/// `radius` under `u ~ v` iff `u v^-1` lies in `members`.
pub fn coset_count(members: &std::collections::BTreeSet<ReducedWord>, words: &[ReducedWord]) -> usize {
    let mut reps: Vec<&ReducedWord> = Vec::new();
    for u in words {
        if !reps.iter().any(|v| members.contains(&u.mult(&v.invert()))) {
            reps.push(u);
        }
    }
    reps.len()
}
