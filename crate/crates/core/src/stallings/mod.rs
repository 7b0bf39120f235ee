//! Finitely generated subgroups of free groups via Stallings automata.

mod conjugacy;
mod extensions;
mod purity;

use std::fmt;

use crate::automata::{InverseAutomaton, InvolutiveAutomaton, State};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, ReducedWord, Word};

pub use extensions::DEFAULT_TAKAHASI_LIMIT;

/// `H = <X>` given by a finite list of reduced, nonempty generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    alphabet: Alphabet,
    generators: Vec<ReducedWord>,
}

impl Subgroup {
    /// Identity generators are dropped.
    pub fn new(alphabet: Alphabet, generators: impl IntoIterator<Item = ReducedWord>) -> Result<Self> {
        let generators: Vec<ReducedWord> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        for g in &generators {
            if let Some(l) = g.letters().iter().find(|l| !alphabet.contains(**l)) {
                return Err(Error::MalformedAutomaton(format!(
                    "generator {g} uses letter {l} beyond rank {}",
                    alphabet.rank()
                )));
            }
        }
        Ok(Subgroup { alphabet, generators })
    }

    /// Generators in word syntax; each is reduced on the way in.
    pub fn parse<S: AsRef<str>>(rank: usize, generators: &[S]) -> Result<Self> {
        let alphabet = Alphabet::new(rank)?;
        let gens = generators
            .iter()
            .map(|g| Word::parse(g.as_ref(), alphabet).map(|w| w.reduce()))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::new(alphabet, gens)
    }

    pub fn trivial(alphabet: Alphabet) -> Self {
        Subgroup {
            alphabet,
            generators: Vec::new(),
        }
    }

    /// The whole free group, generated by the letters.
    pub fn full(alphabet: Alphabet) -> Self {
        Subgroup {
            alphabet,
            generators: alphabet.generators().map(ReducedWord::letter).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn generators(&self) -> &[ReducedWord] {
        &self.generators
    }

    /// `x^-1 H x`.
    pub fn conjugate(&self, x: &ReducedWord) -> Self {
        Subgroup {
            alphabet: self.alphabet,
            generators: self
                .generators
                .iter()
                .map(|g| g.conjugate_by(x))
                .filter(|g| !g.is_identity())
                .collect(),
        }
    }

    /// One petal per generator glued at the basepoint.
    pub fn flower(&self) -> InvolutiveAutomaton {
        let states = 1 + self.generators.iter().map(|g| g.len() - 1).sum::<usize>();
        let mut a = InvolutiveAutomaton::new(self.alphabet, states, 0, 0);
        let mut fresh = 1;
        for g in &self.generators {
            let letters = g.letters();
            let mut p = 0;
            for (i, &l) in letters.iter().enumerate() {
                let q = if i + 1 == letters.len() {
                    0
                } else {
                    fresh += 1;
                    fresh - 1
                };
                a.add_edge(p, l, q);
                p = q;
            }
        }
        a
    }

    pub fn stallings(&self) -> StallingsAutomaton {
        StallingsAutomaton::from_inverse(&self.flower().fold())
    }

    pub fn contains_word(&self, u: &ReducedWord) -> bool {
        self.stallings().member(u)
    }

    /// `K ≤ H`, with `self = H`.
    pub fn contains(&self, k: &Subgroup) -> Result<bool> {
        self.alphabet.check(&k.alphabet)?;
        let s = self.stallings();
        Ok(k.generators.iter().all(|g| s.member(g)))
    }

    /// Equality of subgroups (identical Stallings automata).
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.alphabet == other.alphabet && self.stallings() == other.stallings()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Index of a subgroup in the ambient free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn is_finite(self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// Canonical Stallings automaton: inverse, basepoint = final state, no
/// vertex other than the basepoint of degree below 2, numbered canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StallingsAutomaton(InverseAutomaton);

impl StallingsAutomaton {
    /// Normalize an inverse automaton whose basepoint is its final state:
    /// keep the basepoint component, prune hanging trees, canonicalize.
    pub fn from_inverse(a: &InverseAutomaton) -> Self {
        StallingsAutomaton(a.rebased(a.basepoint()).prune().canonicalize())
    }

    pub fn bouquet(alphabet: Alphabet) -> Self {
        StallingsAutomaton(InverseAutomaton::bouquet(alphabet))
    }

    pub fn trivial(alphabet: Alphabet) -> Self {
        StallingsAutomaton(InverseAutomaton::trivial(alphabet))
    }

    pub fn automaton(&self) -> &InverseAutomaton {
        &self.0
    }

    pub fn alphabet(&self) -> Alphabet {
        self.0.alphabet()
    }

    pub fn state_count(&self) -> usize {
        self.0.state_count()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    /// Rank of the subgroup: `|E+| - (states - 1)`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.state_count()
    }

    /// `u ∈ H` iff the reduced word labels a loop at the basepoint.
    pub fn member(&self, u: &ReducedWord) -> bool {
        self.0.accepts(u.letters())
    }

    pub fn index(&self) -> Index {
        if self.0.is_complete() {
            Index::Finite(self.state_count())
        } else {
            Index::Infinite
        }
    }

    /// Stallings automaton of the conjugate `g_q^-1 H g_q`, where `g_q`
    /// reads from the basepoint to `q`.
    pub fn rebased(&self, q: State) -> StallingsAutomaton {
        StallingsAutomaton::from_inverse(&self.0.rebased(q))
    }

    /// Depth-first spanning tree from the basepoint, trying generators
    /// `a, b, ...` before inverses `A, B, ...`.
    pub fn spanning_tree(&self) -> SpanningTree {
        let a = &self.0;
        let order: Vec<Letter> = a
            .alphabet()
            .generators()
            .chain(a.alphabet().generators().map(Letter::inverse))
            .collect();
        let n = a.state_count();
        let mut label: Vec<Option<Vec<Letter>>> = vec![None; n];
        label[a.basepoint()] = Some(Vec::new());
        let mut tree_edges = Vec::new();
        // (state, position in `order` to try next)
        let mut stack = vec![(a.basepoint(), 0usize)];
        while let Some(top) = stack.last_mut() {
            let (p, i) = *top;
            if i == order.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let l = order[i];
            if let Some(q) = a.next(p, l) {
                if label[q].is_none() {
                    let mut w = label[p].clone().unwrap();
                    w.push(l);
                    label[q] = Some(w);
                    tree_edges.push(if l.is_positive() {
                        (p, l, q)
                    } else {
                        (q, l.inverse(), p)
                    });
                    stack.push((q, 0));
                }
            }
        }
        let geodesics = label
            .into_iter()
            .map(|w| ReducedWord::new(w.expect("automaton is connected")).expect("tree paths are reduced"))
            .collect();
        tree_edges.sort();
        SpanningTree { tree_edges, geodesics }
    }

    /// Free basis `{ g_p a g_q^-1 : (p, a, q) ∉ T }`, ordered by edge.
    pub fn basis(&self) -> Basis {
        self.basis_with(&self.spanning_tree())
    }

    pub fn basis_with(&self, tree: &SpanningTree) -> Basis {
        let edges: Vec<(State, Letter, State)> = self
            .0
            .positive_edges()
            .into_iter()
            .filter(|e| tree.tree_edges.binary_search(e).is_err())
            .collect();
        let elements = edges
            .iter()
            .map(|&(p, a, q)| {
                tree.geodesics[p]
                    .mult(&ReducedWord::letter(a))
                    .mult(&tree.geodesics[q].invert())
            })
            .collect();
        Basis { elements, edges }
    }

    /// Write `u` as a product of basis elements: `+k` is element `k`
    /// (1-based), `-k` its inverse.
    pub fn express_in_basis(&self, u: &ReducedWord) -> Result<Vec<isize>> {
        let basis = self.basis();
        let mut p = self.0.basepoint();
        let mut out = Vec::new();
        for &l in u.letters() {
            let q = self.0.next(p, l).ok_or(Error::NotMember)?;
            let edge = if l.is_positive() {
                (p, l, q)
            } else {
                (q, l.inverse(), p)
            };
            if let Some(i) = basis.edges.iter().position(|e| *e == edge) {
                let k = i as isize + 1;
                out.push(if l.is_positive() { k } else { -k });
            }
            p = q;
        }
        if p != self.0.basepoint() {
            return Err(Error::NotMember);
        }
        Ok(out)
    }

    /// The subgroup with this automaton, generated by its basis.
    pub fn subgroup(&self) -> Subgroup {
        Subgroup {
            alphabet: self.alphabet(),
            generators: self.basis().elements,
        }
    }

    /// Split off the tail: the stem from the basepoint to the first state
    /// lying on a reduced closed path.
    pub fn core_tail(&self) -> Result<CoreTail> {
        if self.is_trivial() {
            return Err(Error::TrivialSubgroup);
        }
        let a = &self.0;
        let mut removed = vec![false; a.state_count()];
        let mut p = a.basepoint();
        let mut tail = Vec::new();
        let live_degree = |p: State, removed: &[bool]| {
            a.alphabet()
                .letters()
                .filter(|&l| a.next(p, l).is_some_and(|q| !removed[q]))
                .count()
        };
        while live_degree(p, &removed) == 1 {
            let l = a
                .alphabet()
                .letters()
                .find(|&l| a.next(p, l).is_some_and(|q| !removed[q]))
                .unwrap();
            removed[p] = true;
            tail.push(l);
            p = a.next(p, l).unwrap();
        }
        let keep: Vec<bool> = removed.iter().map(|r| !r).collect();
        let core = a.rebased(p).induced(&keep).canonicalize();
        Ok(CoreTail {
            core,
            tail: ReducedWord::new(tail).expect("tail is a path in an inverse automaton"),
        })
    }
}

impl fmt::Display for StallingsAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} states:", self.state_count())?;
        for (p, a, q) in self.0.positive_edges() {
            write!(f, " ({p},{a},{q})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// Positive edges of the tree, sorted.
    pub tree_edges: Vec<(State, Letter, State)>,
    /// `geodesics[p]` labels the tree path from the basepoint to `p`.
    pub geodesics: Vec<ReducedWord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub elements: Vec<ReducedWord>,
    /// The non-tree edge each element comes from.
    pub edges: Vec<(State, Letter, State)>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Multiply out a signed index sequence.
    pub fn evaluate(&self, indices: &[isize]) -> ReducedWord {
        indices.iter().fold(ReducedWord::identity(), |acc, &k| {
            let e = &self.elements[k.unsigned_abs() - 1];
            if k > 0 {
                acc.mult(e)
            } else {
                acc.mult(&e.invert())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreTail {
    /// The core, canonical, with its basepoint at the attachment state.
    pub core: InverseAutomaton,
    /// Label of the tail from the basepoint to the attachment state.
    pub tail: ReducedWord,
}

impl CoreTail {
    /// Glue the tail back onto the core.
    pub fn reattach(&self) -> StallingsAutomaton {
        with_tail(&self.core, self.core.basepoint(), &self.tail)
    }
}

/// Stallings automaton obtained by gluing a path labelled `tail` that ends
/// at `attach`, with the basepoint at the start of the path, then folding.
pub(crate) fn with_tail(core: &InverseAutomaton, attach: State, tail: &ReducedWord) -> StallingsAutomaton {
    let mut a = core.to_involutive();
    let mut p = attach;
    for &l in tail.letters().iter().rev() {
        let q = a.add_state();
        a.add_edge(q, l, p);
        p = q;
    }
    let folded = {
        let mut b = InvolutiveAutomaton::new(a.alphabet(), a.state_count(), p, p);
        for &(s, l, t) in a.edges() {
            b.add_edge(s, l, t);
        }
        b.fold()
    };
    StallingsAutomaton::from_inverse(&folded)
}
