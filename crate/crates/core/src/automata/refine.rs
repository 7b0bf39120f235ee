use std::collections::HashMap;

/// Moore partition refinement on a partial deterministic automaton.
///
/// `initial[s]` is the starting class of state `s`; a missing transition
/// behaves as a move to an implicit sink that is distinguished from every
/// state. Returns the coarsest stable refinement, with class ids numbered by
/// first occurrence.
pub(crate) fn refine<F>(initial: &[usize], letters: usize, next: F) -> Vec<usize>
where
    F: Fn(usize, usize) -> Option<usize>,
{
    let n = initial.len();
    let mut class = renumber(initial);
    let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next_class = vec![0; n];
        for s in 0..n {
            let mut sig = Vec::with_capacity(letters + 1);
            sig.push(class[s]);
            for l in 0..letters {
                sig.push(next(s, l).map_or(usize::MAX, |t| class[t]));
            }
            let fresh = ids.len();
            next_class[s] = *ids.entry(sig).or_insert(fresh);
        }
        let new_count = ids.len();
        class = next_class;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

fn renumber(classes: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    classes
        .iter()
        .map(|c| {
            let fresh = ids.len();
            *ids.entry(*c).or_insert(fresh)
        })
        .collect()
}
