//! Brute-force enumeration used to cross-check the decision procedures on
//! small inputs.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::rational::WordNFA;
use crate::word::{Alphabet, Letter, ReducedWord, Word};

pub const WORD_LENGTH_CEILING: usize = 8;
pub const PRODUCT_LENGTH_CEILING: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_word_length: usize,
    pub max_product_length: usize,
}

impl EnumerationBudget {
    pub fn new(max_word_length: usize, max_product_length: usize) -> Result<Self> {
        if max_word_length == 0 || max_product_length == 0 {
            return Err(Error::BudgetExceeded("budgets must be positive".into()));
        }
        check(max_word_length, WORD_LENGTH_CEILING, "word length")?;
        check(max_product_length, PRODUCT_LENGTH_CEILING, "product length")?;
        Ok(EnumerationBudget {
            max_word_length,
            max_product_length,
        })
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_word_length: WORD_LENGTH_CEILING,
            max_product_length: PRODUCT_LENGTH_CEILING,
        }
    }
}

fn check(value: usize, ceiling: usize, what: &str) -> Result<()> {
    if value > ceiling {
        Err(Error::BudgetExceeded(format!("{what} {value} above ceiling {ceiling}")))
    } else {
        Ok(())
    }
}

/// Every reduced word of length at most `max_len`, shortest first and in
/// letter order within a length.
pub fn enum_reduced(alphabet: Alphabet, max_len: usize) -> Result<Vec<ReducedWord>> {
    check(max_len, WORD_LENGTH_CEILING, "word length")?;
    Ok(reduced_words(alphabet, max_len))
}

pub(crate) fn reduced_words(alphabet: Alphabet, max_len: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::identity()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet
                    .letters()
                    .filter(move |l| w.last() != Some(&l.inverse()))
                    .map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
            })
            .collect();
        out.extend(layer.iter().map(|w| ReducedWord::new(w.clone()).unwrap()));
    }
    out
}

/// Reduced forms of all products of at most `max_product_length` factors
/// from `gens ∪ gens^-1`, kept when no longer than `max_word_length`.
pub fn brute_membership_set(gens: &[ReducedWord], budget: EnumerationBudget) -> Result<BTreeSet<ReducedWord>> {
    let budget = EnumerationBudget::new(budget.max_word_length, budget.max_product_length)?;
    let factors: Vec<ReducedWord> = gens.iter().flat_map(|g| [g.clone(), g.invert()]).collect();
    let mut seen: BTreeSet<ReducedWord> = BTreeSet::from([ReducedWord::identity()]);
    let mut frontier = vec![ReducedWord::identity()];
    let longest = factors.iter().map(ReducedWord::len).max().unwrap_or(0);
    for step in 1..=budget.max_product_length {
        // anything longer cannot shrink back into range with the factors left
        let reach = budget.max_word_length + longest * (budget.max_product_length - step);
        let mut next = Vec::new();
        for u in &frontier {
            for f in &factors {
                let v = u.mult(f);
                if v.len() <= reach && seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen.into_iter().filter(|u| u.len() <= budget.max_word_length).collect())
}

/// `{ reduce(w) : w ∈ L(nfa), |w| ≤ max_in }`, restricted to length
/// `max_out`.
pub fn brute_reduced_language(nfa: &WordNFA, max_in: usize, max_out: usize) -> Result<BTreeSet<ReducedWord>> {
    check(max_in, PRODUCT_LENGTH_CEILING, "input word length")?;
    check(max_out, WORD_LENGTH_CEILING, "output word length")?;
    let m = nfa.moves();
    let accepting = |s: &FixedBitSet| nfa.final_states().iter().any(|&t| s.contains(t));
    let mut out = BTreeSet::new();
    let mut stack: Vec<(FixedBitSet, Vec<Letter>)> = vec![(m.close(&m.set(nfa.initial())), Vec::new())];
    while let Some((set, w)) = stack.pop() {
        if accepting(&set) {
            let r = Word::new(w.clone()).reduce();
            if r.len() <= max_out {
                out.insert(r);
            }
        }
        if w.len() == max_in {
            continue;
        }
        for l in nfa.alphabet().letters() {
            let next = m.close(&m.step(&set, l));
            if !next.is_clear() {
                let mut v = w.clone();
                v.push(l);
                stack.push((next, v));
            }
        }
    }
    Ok(out)
}
