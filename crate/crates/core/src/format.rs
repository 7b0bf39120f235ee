//! JSON file formats and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::InverseAutomaton;
use crate::error::{Error, Result};
use crate::rational::{reduce_lang, RationalSet, WordNFA};
use crate::stallings::{StallingsAutomaton, Subgroup};
use crate::word::{Alphabet, Letter, Word};

/// Inverse automaton: positive edges only, labels are lowercase letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub rank: usize,
    pub states: usize,
    pub basepoint: usize,
    #[serde(rename = "final")]
    pub terminal: usize,
    pub edges: Vec<(usize, String, usize)>,
}

/// Automaton with `ε`-edges (label `"e"`) and sets of initial and final
/// states. Rational sets use the same shape with `deterministic: true`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfaFile {
    pub rank: usize,
    pub states: usize,
    pub initial: Vec<usize>,
    #[serde(rename = "final")]
    pub terminal: Vec<usize>,
    pub edges: Vec<(usize, String, usize)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupFile {
    pub rank: usize,
    pub generators: Vec<String>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn single_letter(text: &str, alphabet: Alphabet) -> Result<Letter> {
    let mut chars = text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Letter::parse(c, alphabet),
        _ => Err(Error::Format(format!("edge label {text:?} is not a single letter"))),
    }
}

impl AutomatonFile {
    pub fn from_automaton(a: &InverseAutomaton) -> Self {
        AutomatonFile {
            rank: a.alphabet().rank(),
            states: a.state_count(),
            basepoint: a.basepoint(),
            terminal: a.final_state(),
            edges: a
                .positive_edges()
                .into_iter()
                .map(|(p, l, q)| (p, l.to_string(), q))
                .collect(),
        }
    }

    pub fn to_automaton(&self) -> Result<InverseAutomaton> {
        let alphabet = Alphabet::new(self.rank)?;
        let edges = self
            .edges
            .iter()
            .map(|(p, text, q)| {
                let l = single_letter(text, alphabet)?;
                if l.is_inverse() {
                    return Err(Error::Format(format!(
                        "edge label {text:?}: inverse edges are implicit, use lowercase"
                    )));
                }
                Ok((*p, l, *q))
            })
            .collect::<Result<Vec<_>>>()?;
        InverseAutomaton::from_edges(alphabet, self.states, &edges, self.basepoint, self.terminal)
    }

    /// Read as a Stallings automaton; the basepoint must be the final state.
    pub fn to_stallings(&self) -> Result<StallingsAutomaton> {
        if self.basepoint != self.terminal {
            return Err(Error::MalformedAutomaton("basepoint differs from final state".into()));
        }
        Ok(StallingsAutomaton::from_inverse(&self.to_automaton()?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_err)
    }
}

impl NfaFile {
    pub fn from_nfa(a: &WordNFA) -> Self {
        NfaFile {
            rank: a.alphabet().rank(),
            states: a.state_count(),
            initial: a.initial().to_vec(),
            terminal: a.final_states().to_vec(),
            edges: a
                .edges()
                .iter()
                .map(|&(p, l, q)| (p, l.map_or_else(|| "e".to_string(), |l| l.to_string()), q))
                .collect(),
            deterministic: false,
        }
    }

    pub fn from_set(x: &RationalSet) -> Self {
        NfaFile {
            deterministic: true,
            ..NfaFile::from_nfa(&x.to_nfa())
        }
    }

    pub fn to_nfa(&self) -> Result<WordNFA> {
        let alphabet = Alphabet::new(self.rank)?;
        let edges = self
            .edges
            .iter()
            .map(|(p, text, q)| {
                let label = if text == "e" {
                    None
                } else {
                    Some(single_letter(text, alphabet)?)
                };
                Ok((*p, label, *q))
            })
            .collect::<Result<Vec<_>>>()?;
        WordNFA::from_parts(
            alphabet,
            self.states,
            edges,
            self.initial.clone(),
            self.terminal.clone(),
        )
    }

    /// Any file in this shape denotes the rational set of reductions of its
    /// language.
    pub fn to_set(&self) -> Result<RationalSet> {
        Ok(reduce_lang(&self.to_nfa()?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_err)
    }
}

impl SubgroupFile {
    pub fn from_subgroup(h: &Subgroup) -> Self {
        SubgroupFile {
            rank: h.alphabet().rank(),
            generators: h.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn to_subgroup(&self) -> Result<Subgroup> {
        Subgroup::parse(self.rank, &self.generators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_err)
    }
}

/// One edge per positive edge; the basepoint is a double circle.
pub fn automaton_dot(a: &InverseAutomaton) -> String {
    let mut out = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
    for s in 0..a.state_count() {
        let shape = if s == a.basepoint() { "doublecircle" } else { "circle" };
        writeln!(out, "  {s} [shape={shape}];").unwrap();
    }
    for (p, l, q) in a.positive_edges() {
        writeln!(out, "  {p} -> {q} [label=\"{l}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Initial states get an entry arrow, final states a double circle.
pub fn nfa_dot(a: &WordNFA) -> String {
    let mut out = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
    for s in 0..a.state_count() {
        let shape = if a.final_states().contains(&s) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  {s} [shape={shape}];").unwrap();
    }
    for (i, s) in a.initial().iter().enumerate() {
        writeln!(out, "  start{i} [shape=point];\n  start{i} -> {s};").unwrap();
    }
    for &(p, l, q) in a.edges() {
        match l {
            Some(l) => writeln!(out, "  {p} -> {q} [label=\"{l}\"];").unwrap(),
            None => writeln!(out, "  {p} -> {q} [label=\"1\", style=dotted];").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// Parse a word over the alphabet of rank `rank`.
pub fn parse_word(text: &str, rank: usize) -> Result<Word> {
    Word::parse(text, Alphabet::new(rank)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automaton_round_trip() {
        let s = Subgroup::parse(2, &["Aba", "baa"]).unwrap().stallings();
        let file = AutomatonFile::from_automaton(s.automaton());
        let back = AutomatonFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_stallings().unwrap(), s);
        assert!(file.to_json().contains("\"final\": 0"));
    }

    #[test]
    fn automaton_rejects_uppercase_and_garbage() {
        let text = r#"{"rank": 2, "states": 1, "basepoint": 0, "final": 0, "edges": [[0, "A", 0]]}"#;
        assert!(AutomatonFile::from_json(text).unwrap().to_automaton().is_err());
        assert!(AutomatonFile::from_json("{").is_err());
        let text = r#"{"rank": 1, "states": 1, "basepoint": 0, "final": 0, "edges": [[0, "b", 0]]}"#;
        assert!(AutomatonFile::from_json(text).unwrap().to_automaton().is_err());
    }

    #[test]
    fn nfa_round_trip() {
        let text = r#"{"rank": 2, "states": 2, "initial": [0], "final": [1],
                       "edges": [[0, "a", 1], [1, "e", 0], [1, "B", 1]]}"#;
        let file = NfaFile::from_json(text).unwrap();
        let nfa = file.to_nfa().unwrap();
        assert_eq!(nfa.edges().len(), 3);
        assert_eq!(NfaFile::from_nfa(&nfa), file);
        let set = file.to_set().unwrap();
        let saved = NfaFile::from_set(&set);
        assert!(saved.deterministic);
        assert!(saved.to_json().contains("\"deterministic\": true"));
        assert_eq!(NfaFile::from_json(&saved.to_json()).unwrap().to_set().unwrap(), set);
    }

    #[test]
    fn subgroup_round_trip() {
        let h = Subgroup::parse(2, &["Aba", "baa"]).unwrap();
        let file = SubgroupFile::from_subgroup(&h);
        assert_eq!(file.generators, vec!["Aba", "baa"]);
        assert_eq!(
            SubgroupFile::from_json(&file.to_json()).unwrap().to_subgroup().unwrap(),
            h
        );
    }

    #[test]
    fn dot() {
        let s = Subgroup::parse(2, &["Aba", "baa"]).unwrap().stallings();
        let d = automaton_dot(s.automaton());
        assert!(d.contains("0 [shape=doublecircle]"));
        assert_eq!(d.matches("->").count(), 4);
        let nfa = WordNFA::from_word(Alphabet::new(1).unwrap(), &Word::empty());
        assert!(nfa_dot(&nfa).contains("start0 -> 0"));
    }
}
