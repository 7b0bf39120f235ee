//! Transition monoids of inverse automata.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::automata::inverse::{InverseAutomaton, State};
use crate::error::{Error, Result};

pub const DEFAULT_MONOID_LIMIT: usize = 100_000;

const UNDEFINED: u32 = u32::MAX;

/// Injective partial map on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap(Vec<u32>);

impl PartialMap {
    pub fn identity(n: usize) -> Self {
        PartialMap((0..n as u32).collect())
    }

    /// Fails if `images` is not injective on its domain.
    pub fn new(images: &[Option<State>]) -> Result<Self> {
        let mut seen = HashSet::new();
        for t in images.iter().flatten() {
            if !seen.insert(*t) {
                return Err(Error::MalformedAutomaton("partial map is not injective".into()));
            }
        }
        Ok(PartialMap(
            images.iter().map(|t| t.map_or(UNDEFINED, |t| t as u32)).collect(),
        ))
    }

    pub fn apply(&self, s: State) -> Option<State> {
        match self.0[s] {
            UNDEFINED => None,
            t => Some(t as usize),
        }
    }

    /// `self` first, then `other` (right action, matching words read left
    /// to right).
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        PartialMap(
            self.0
                .iter()
                .map(|&t| if t == UNDEFINED { UNDEFINED } else { other.0[t as usize] })
                .collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.0.iter().filter(|&&t| t != UNDEFINED).all(|t| seen.insert(*t))
    }

    pub fn domain_size(&self) -> usize {
        self.0.iter().filter(|&&t| t != UNDEFINED).count()
    }

    /// `(index, period)`: the least `i >= 1`, `p >= 1` with
    /// `self^(i+p) = self^i`.
    pub fn index_period(&self) -> (usize, usize) {
        let mut seen: HashMap<PartialMap, usize> = HashMap::new();
        let mut power = self.clone();
        let mut k = 1;
        loop {
            if let Some(&i) = seen.get(&power) {
                return (i, k - i);
            }
            let next = power.then(self);
            seen.insert(power, k);
            power = next;
            k += 1;
        }
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|&t| if t == UNDEFINED { None } else { Some(t) }))
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidElement {
    pub map: PartialMap,
    pub index: usize,
    pub period: usize,
}

impl MonoidElement {
    fn new(map: PartialMap) -> Self {
        let (index, period) = map.index_period();
        MonoidElement { map, index, period }
    }
}

/// All partial maps induced by words over `Ã`, including the identity.
/// Fails once the closure exceeds `limit` elements.
pub fn transition_monoid(a: &InverseAutomaton, limit: usize) -> Result<Vec<MonoidElement>> {
    let generators: Vec<PartialMap> = a
        .alphabet()
        .letters()
        .map(|l| PartialMap::new(&a.letter_action(l)))
        .collect::<Result<_>>()?;
    let identity = PartialMap::identity(a.state_count());
    let mut seen: HashSet<PartialMap> = HashSet::from([identity.clone()]);
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(m) = queue.pop_front() {
        for g in &generators {
            let next = m.then(g);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Err(Error::GuardExceeded {
                        what: "transition monoid",
                        limit,
                    });
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order.into_iter().map(MonoidElement::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Letter};

    fn l(s: char) -> Letter {
        Letter::parse(s, Alphabet::new(26).unwrap()).unwrap()
    }

    #[test]
    fn a_squared_has_period_two() {
        let a = InverseAutomaton::from_edges(Alphabet::new(1).unwrap(), 2, &[(0, l('a'), 1), (1, l('a'), 0)], 0, 0)
            .unwrap();
        let m = transition_monoid(&a, DEFAULT_MONOID_LIMIT).unwrap();
        // identity and the swap
        assert_eq!(m.len(), 2);
        assert!(m.iter().any(|e| e.period == 2));
    }

    #[test]
    fn ab_is_aperiodic() {
        // S(<ab>): 0 -a-> 1 -b-> 0
        let a = InverseAutomaton::from_edges(Alphabet::new(2).unwrap(), 2, &[(0, l('a'), 1), (1, l('b'), 0)], 0, 0)
            .unwrap();
        let m = transition_monoid(&a, DEFAULT_MONOID_LIMIT).unwrap();
        assert!(m.iter().all(|e| e.period == 1));
        assert!(m.iter().all(|e| e.map.is_injective()));
    }

    #[test]
    fn bouquet_monoid_is_trivial() {
        let b = InverseAutomaton::bouquet(Alphabet::new(2).unwrap());
        let m = transition_monoid(&b, DEFAULT_MONOID_LIMIT).unwrap();
        assert!(m.len() <= 2);
        assert!(m.iter().all(|e| e.period == 1 && e.index == 1));
    }

    #[test]
    fn index_and_period_of_nilpotent() {
        // 0 -> 1 -> undefined: x^2 = x^3 = empty map
        let m = PartialMap::new(&[Some(1), None]).unwrap();
        assert_eq!(m.index_period(), (2, 1));
        assert!(PartialMap::new(&[Some(1), Some(1)]).is_err());
    }

    #[test]
    fn size_guard() {
        let a = InverseAutomaton::from_edges(Alphabet::new(1).unwrap(), 2, &[(0, l('a'), 1), (1, l('a'), 0)], 0, 0)
            .unwrap();
        assert!(matches!(transition_monoid(&a, 1), Err(Error::GuardExceeded { .. })));
    }
}
