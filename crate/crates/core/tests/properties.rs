mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stallings_core::automata::transition_monoid;
use stallings_core::oracle::{brute_membership_set, brute_reduced_language};
use stallings_core::stallings::DEFAULT_TAKAHASI_LIMIT;
use stallings_core::{
    reduce_lang, EnumerationBudget, Index, Letter, RationalSet, ReducedWord, StallingsAutomaton, Subgroup, Word,
    WordNFA,
};

use common::*;

fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * rank, 0..=max_len)
        .prop_map(|v| Word::new(v.into_iter().map(Letter::from_index).collect()))
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in word_strategy(3, 20)) {
        let r = w.reduce();
        prop_assert!(r.to_word().is_reduced());
        prop_assert_eq!(r.to_word().reduce(), r);
    }

    #[test]
    fn reduction_is_confluent(u in word_strategy(2, 12), v in word_strategy(2, 12)) {
        prop_assert_eq!(u.concat(&v).reduce(), u.reduce().mult(&v.reduce()));
    }

    #[test]
    fn multiplication_is_associative(u in word_strategy(2, 8), v in word_strategy(2, 8), w in word_strategy(2, 8)) {
        let (u, v, w) = (u.reduce(), v.reduce(), w.reduce());
        prop_assert_eq!(u.mult(&v).mult(&w), u.mult(&v.mult(&w)));
        prop_assert!(u.mult(&u.invert()).is_identity());
    }

    #[test]
    fn prefix_metric_is_ultrametric(u in word_strategy(2, 8), v in word_strategy(2, 8), w in word_strategy(2, 8)) {
        let (u, v, w) = (u.reduce(), v.reduce(), w.reduce());
        let d = |x: &ReducedWord, y: &ReducedWord| x.prefix_distance(y).value();
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert_eq!(d(&u, &u), 0.0);
        prop_assert!(d(&u, &w) <= d(&u, &v).max(d(&v, &w)));
    }

    #[test]
    fn cyclic_decomposition_recomposes(w in word_strategy(2, 12)) {
        let u = w.reduce();
        let c = u.cyclic_reduce();
        prop_assert!(c.core.is_cyclically_reduced());
        prop_assert_eq!(c.prefix.mult(&c.core).mult(&c.prefix.invert()), u);
    }

    #[test]
    fn conjugates_are_detected(w in word_strategy(2, 8), x in word_strategy(2, 6)) {
        let u = w.reduce();
        let v = u.conjugate_by(&x.reduce());
        prop_assert!(u.is_conjugate_to(&v));
    }
}

#[test]
fn word_conjugacy_matches_search() {
    let words = reduced_up_to(2, 3);
    let conjugators = reduced_up_to(2, 5);
    for u in &words {
        let class: HashSet<ReducedWord> = conjugators.iter().map(|x| u.conjugate_by(x)).collect();
        for v in &words {
            assert_eq!(u.is_conjugate_to(v), class.contains(v), "{u} ~ {v}");
        }
    }
}

#[test]
fn folding_is_confluent() {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..200 {
        let a = random_involutive(&mut rng, 2, 4, 6);
        let outcomes = fold_outcomes(&a, a.clashes().len() <= 4, 20, &mut rng);
        assert_eq!(outcomes, HashSet::from([a.fold().canonicalize()]));
    }
}

#[test]
fn morphism_iff_inclusion() {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..200 {
        let h = random_subgroup(&mut rng, 2, 3, 4);
        let k = random_subgroup(&mut rng, 2, 3, 3);
        let (sh, sk) = (h.stallings(), k.stallings());
        let included = h.generators().iter().all(|g| sk.member(g));
        assert_eq!(sh.automaton().morphism_exists(sk.automaton()), included);
        assert_eq!(k.contains(&h).unwrap(), included);
    }
}

#[test]
fn completion_gives_permutations_and_monoids_are_injective() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let s = small_subgroup(&mut rng, 2, 5).stallings();
        let c = s.automaton().complete_to_permutations();
        assert!(c.is_complete());
        for l in c.alphabet().letters() {
            let image: HashSet<_> = (0..c.state_count()).map(|p| c.next(p, l).unwrap()).collect();
            assert_eq!(image.len(), c.state_count());
        }
        assert!(c.morphism_exists(&c) && s.automaton().morphism_exists(&c));
        for m in transition_monoid(s.automaton(), 100_000).unwrap() {
            assert!(m.map.is_injective());
        }
    }
}

#[test]
fn generating_set_independence() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..200 {
        let h = random_subgroup(&mut rng, 2, 3, 5);
        let gens = h.generators().to_vec();
        if gens.len() < 2 {
            continue;
        }
        // Nielsen moves plus a redundant product
        let mut moved = gens.clone();
        moved[0] = gens[0].mult(&gens[1]);
        moved[1] = gens[1].invert();
        moved.push(gens[0].mult(&gens[1]).mult(&gens[0].invert()));
        let k = Subgroup::new(h.alphabet(), moved).unwrap();
        assert_eq!(h.stallings(), k.stallings());
        assert_eq!(h.stallings().subgroup().stallings(), h.stallings());
    }
}

#[test]
fn membership_agrees_with_products() {
    let mut rng = StdRng::seed_from_u64(5);
    let words = reduced_up_to(2, 4);
    for _ in 0..50 {
        let h = random_subgroup(&mut rng, 2, 2, 3);
        let s = h.stallings();
        let products = brute_membership_set(h.generators(), EnumerationBudget::new(4, 6).unwrap()).unwrap();
        for u in &products {
            assert!(s.member(u));
        }
        let basis = s.basis();
        for u in words.iter().filter(|u| s.member(u)) {
            assert_eq!(basis.evaluate(&s.express_in_basis(u).unwrap()), *u);
        }
    }
}

#[test]
fn basis_is_free() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..100 {
        let s = small_subgroup(&mut rng, 2, 5).stallings();
        let basis = s.basis();
        assert_eq!(basis.len(), s.rank());
        if basis.is_empty() {
            continue;
        }
        for _ in 0..20 {
            let n = rng.random_range(1..=6);
            let mut seq: Vec<isize> = Vec::new();
            while seq.len() < n {
                let k = rng.random_range(1..=basis.len()) as isize * if rng.random_bool(0.5) { 1 } else { -1 };
                if seq.last() != Some(&-k) {
                    seq.push(k);
                }
            }
            let u = basis.evaluate(&seq);
            assert!(!u.is_identity());
            assert_eq!(s.express_in_basis(&u).unwrap(), seq);
        }
    }
}

#[test]
fn rank_index_law() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let h = small_subgroup(&mut rng, 2, 5);
        let k = StallingsAutomaton::from_inverse(&h.stallings().automaton().complete_to_permutations());
        let Index::Finite(n) = k.index() else {
            panic!("completion has infinite index");
        };
        // rank 2: rk(K) - 1 = n (2 - 1)
        assert_eq!(k.rank() - 1, n);
        assert!(k.subgroup().contains(&h).unwrap());
    }
}

#[test]
fn intersection_membership_and_rank_bound() {
    let mut rng = StdRng::seed_from_u64(8);
    let words = reduced_up_to(2, 5);
    for _ in 0..100 {
        let h = small_subgroup(&mut rng, 2, 4).stallings();
        let k = small_subgroup(&mut rng, 2, 4).stallings();
        let i = h.intersection(&k).unwrap();
        for u in &words {
            assert_eq!(i.member(u), h.member(u) && k.member(u));
        }
        if !h.is_trivial() && !k.is_trivial() {
            assert!(i.rank() as isize - 1 <= 2 * (h.rank() as isize - 1) * (k.rank() as isize - 1));
        }
    }
}

#[test]
fn subgroup_conjugacy_is_sound() {
    let mut rng = StdRng::seed_from_u64(9);
    let a = alphabet(2);
    for _ in 0..100 {
        let h = small_subgroup(&mut rng, 2, 4);
        if h.is_trivial() {
            continue;
        }
        let x = random_reduced(&mut rng, a, 5);
        let k = h.conjugate(&x);
        let w = h.conjugator_to(&k).unwrap().expect("conjugate");
        assert!(h.conjugate(&w).same_as(&k));
        let other = small_subgroup(&mut rng, 2, 4);
        if let Some(w) = h.conjugator_to(&other).unwrap() {
            assert!(h.conjugate(&w).same_as(&other));
        }
    }
}

#[test]
fn hall_separation_is_correct() {
    let mut rng = StdRng::seed_from_u64(10);
    let a = alphabet(2);
    for _ in 0..60 {
        let h = small_subgroup(&mut rng, 2, 4);
        let u = random_reduced(&mut rng, a, 5);
        if h.contains_word(&u) {
            assert!(h.hall_separation(&u).is_err());
            continue;
        }
        let k = h.hall_separation(&u).unwrap();
        assert!(k.index().is_finite());
        assert!(k.contains(&h).unwrap());
        let coset = RationalSet::from_subgroup(&k)
            .concat(&RationalSet::finite(a, &[u.to_word()]))
            .unwrap();
        assert!(RationalSet::from_subgroup(&h).intersection(&coset).unwrap().is_empty());
    }
}

#[test]
fn takahasi_extensions_are_complete() {
    let mut rng = StdRng::seed_from_u64(11);
    let a = alphabet(2);
    for _ in 0..40 {
        let h = small_subgroup(&mut rng, 2, 3);
        let sh = h.stallings();
        let ext: HashSet<StallingsAutomaton> = sh
            .takahasi_extensions(DEFAULT_TAKAHASI_LIMIT)
            .unwrap()
            .into_iter()
            .collect();
        assert!(ext.contains(&sh));
        // any overgroup onto which S(H) maps surjectively is a quotient
        for w in reduced_up_to(2, 3) {
            let k = Subgroup::new(a, h.generators().iter().cloned().chain([w]))
                .unwrap()
                .stallings();
            let image = sh.automaton().morphic_image(k.automaton()).unwrap();
            if image.state_count() == k.state_count() && image.edge_count() == k.edge_count() {
                assert!(ext.contains(&k), "{k} missing from extensions of {sh}");
            }
        }
    }
}

fn random_nfa(rng: &mut StdRng) -> WordNFA {
    let a = alphabet(2);
    let n = rng.random_range(1..=4);
    let mut nfa = WordNFA::new(a, n);
    nfa.add_initial(0);
    nfa.add_final(rng.random_range(0..n));
    for _ in 0..rng.random_range(1..=6) {
        let label = (!rng.random_bool(0.15)).then(|| random_letter(rng, a));
        nfa.add_edge(rng.random_range(0..n), label, rng.random_range(0..n));
    }
    nfa
}

#[test]
fn reduction_is_sound_and_lifts() {
    let mut rng = StdRng::seed_from_u64(12);
    let words = reduced_up_to(2, 5);
    for _ in 0..100 {
        let nfa = random_nfa(&mut rng);
        let x = reduce_lang(&nfa);
        let brute = brute_reduced_language(&nfa, 8, 5).unwrap();
        let saturated = nfa.saturate();
        for u in &words {
            assert_eq!(x.contains_reduced(u), saturated.accepts(&u.to_word()), "{u}");
            if brute.contains(u) {
                assert!(x.contains_reduced(u));
            }
        }
    }
}

#[test]
fn boolean_laws_and_partition() {
    let mut rng = StdRng::seed_from_u64(13);
    let words = reduced_up_to(2, 5);
    for _ in 0..60 {
        let x = random_rational(&mut rng);
        let y = random_rational(&mut rng);
        let z = random_rational(&mut rng);
        assert_eq!(x.union(&y).unwrap(), y.union(&x).unwrap());
        assert_eq!(
            x.intersection(&y.union(&z).unwrap()).unwrap(),
            x.intersection(&y).unwrap().union(&x.intersection(&z).unwrap()).unwrap()
        );
        assert_eq!(x.difference(&y).unwrap(), x.intersection(&y.complement()).unwrap());
        let cx = x.complement();
        for u in &words {
            assert_ne!(x.contains_reduced(u), cx.contains_reduced(u));
        }
        assert!(x.intersection(&cx).unwrap().is_empty());
        assert_eq!(x.union(&cx).unwrap(), RationalSet::full(alphabet(2)));
    }
}

#[test]
fn subgroup_closures_are_coherent() {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..60 {
        let h = random_subgroup(&mut rng, 2, 3, 4);
        let x = RationalSet::from_subgroup(&h);
        assert!(x.is_subgroup());
        assert_eq!(x.to_stallings().unwrap(), h.stallings());
        assert_eq!(x, RationalSet::subgroup_closure(h.alphabet(), h.generators()));
        assert_eq!(x.star(), x);
        assert_eq!(x.inverse_set(), x);
    }
}

#[test]
fn recognizable_sets_are_unions_of_cosets() {
    let mut rng = StdRng::seed_from_u64(15);
    let words = reduced_up_to(2, 3);
    for _ in 0..40 {
        let x = random_rational(&mut rng);
        let r = x.recognizability();
        assert!(r.recognizable != r.disjunctive);
        assert_eq!(r.recognizable, r.k_of_x.index().is_finite());
        if let Some(n) = &r.n_of_x {
            assert!(n.is_normal());
            let ns = n.stallings();
            let normal_words: Vec<ReducedWord> = reduced_up_to(2, 4).into_iter().filter(|w| ns.member(w)).collect();
            for u in &words {
                for m in &normal_words {
                    assert_eq!(x.contains_reduced(u), x.contains_reduced(&u.mult(m)));
                }
            }
        }
    }
}
