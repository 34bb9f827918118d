use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use origami_monoid::origami::{build_monoid, build_presentation, default_limits};
use origami_monoid::rewriting::EnumerationOptions;
use origami_monoid::{knuth_bendix, Alphabet, Letter, RewriteSystem, Status, Word};
use proptest::prelude::*;

fn completed(n: usize) -> RewriteSystem {
    static CACHE: OnceLock<Mutex<HashMap<usize, RewriteSystem>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| {
            let rs = build_presentation(n).unwrap().rewrite_system().unwrap();
            knuth_bendix(&rs, &default_limits()).unwrap().into_confluent().unwrap()
        })
        .clone()
}

fn parse(n: usize, s: &str) -> Word {
    Alphabet::origami(n).unwrap().parse(s).unwrap()
}

#[test]
fn single_steps() {
    let rs = build_presentation(2).unwrap().rewrite_system().unwrap();
    assert_eq!(rs.rewrite_step(&parse(2, "a1 a1")), Some(parse(2, "a1")));
    assert_eq!(rs.rewrite_step(&parse(2, "b1 a1 b1 a1")), Some(parse(2, "b1 a1")));
    assert_eq!(rs.rewrite_step(&parse(2, "a1 b1 a1")), None);
}

#[test]
fn interleaved_word_normal_form() {
    let rs = completed(6);
    let a = rs.alphabet();
    assert_eq!(a.format(&rs.normal_form(&parse(6, "a1 b2 a3 b4 a5")).unwrap()), "a1 a3 a5 b2 b4");
}

#[test]
fn completed_systems_are_confluent() {
    for n in 2..=4 {
        let rs = completed(n);
        assert_eq!(rs.status(), Status::Confluent);
        assert!(rs.unresolved_pairs().unwrap().is_empty(), "n={n}");
        assert!(rs.rules().iter().all(|r| r.is_decreasing(rs.order())));
    }
}

#[test]
fn completion_is_idempotent() {
    for n in 2..=4 {
        let rs = completed(n);
        let again = knuth_bendix(&rs, &default_limits()).unwrap();
        assert!(again.terminated);
        assert_eq!(again.system.rules(), rs.rules());
    }
}

/// Breadth-first closure of a word under the defining relations applied in
/// both directions; shortlex order bounds nothing here, so the length cap
/// keeps it finite.
fn relation_class(n: usize, start: &Word, max_len: usize) -> HashSet<Word> {
    let pairs = build_presentation(n).unwrap().pairs();
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = vec![start.clone()];
    while let Some(w) = frontier.pop() {
        for (u, v) in &pairs {
            for (from, to) in [(u, v), (v, u)] {
                for i in 0..=w.len().saturating_sub(from.len()) {
                    if w.len() >= from.len() && w[i..i + from.len()] == from[..] {
                        let mut next: Vec<Letter> = w[..i].to_vec();
                        next.extend_from_slice(to);
                        next.extend_from_slice(&w[i + from.len()..]);
                        let next = Word::from(next);
                        if next.len() <= max_len && seen.insert(next.clone()) {
                            frontier.push(next);
                        }
                    }
                }
            }
        }
    }
    seen
}

#[test]
fn interleaved_word_congruence_class() {
    let rs = completed(6);
    let class = relation_class(6, &parse(6, "a1 b2 a3 b4 a5"), 5);
    assert!(class.len() >= 6);
    let want = parse(6, "a1 a3 a5 b2 b4");
    for w in &class {
        assert_eq!(rs.normal_form(w).unwrap(), want);
    }
}

/// Normal forms must separate the classes found by undirected search over
/// all words of length at most 6 in 𝒪₂ with a length cap of 8.
#[test]
fn normal_forms_match_undirected_search_on_o2() {
    let rs = completed(2);
    let a = rs.alphabet();
    let letters: Vec<Letter> = a.letters().collect();
    let mut words = vec![Word::empty()];
    for len in 1..=6 {
        let prev: Vec<Word> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
        for w in prev {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                words.push(v);
            }
        }
    }
    let mut class_of: HashMap<Word, Word> = HashMap::new();
    for w in &words {
        let nf = rs.normal_form(w).unwrap();
        let class = relation_class(2, w, 8);
        assert!(class.contains(&nf), "{} does not reach {}", a.display(w), a.display(&nf));
        if let Some(prev) = class_of.insert(nf.clone(), w.clone()) {
            assert!(class.contains(&prev));
        }
    }
    assert_eq!(class_of.len(), 7);
}

#[test]
fn enumerated_elements_are_irreducible() {
    let m = build_monoid(4, &default_limits(), EnumerationOptions::default()).unwrap();
    for w in &m.monoid.elements {
        assert!(m.system().is_irreducible(w));
    }
}

fn word_strategy(n: usize, max: usize) -> impl Strategy<Value = Word> {
    let size = 2 * (n - 1) as u8;
    prop::collection::vec(0..size, 0..max).prop_map(|v| v.into_iter().map(Letter).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn applying_a_relation_keeps_the_normal_form(w in word_strategy(4, 20), pick in 0usize..1000, pos in 0usize..1000) {
        let rs = completed(4);
        let pairs = build_presentation(4).unwrap().pairs();
        let (u, v) = &pairs[pick % pairs.len()];
        let i = pos % (w.len() + 1);
        let mut a: Vec<Letter> = w[..i].to_vec();
        a.extend_from_slice(u);
        a.extend_from_slice(&w[i..]);
        let mut b: Vec<Letter> = w[..i].to_vec();
        b.extend_from_slice(v);
        b.extend_from_slice(&w[i..]);
        prop_assert_eq!(rs.normal_form(&Word::from(a)).unwrap(), rs.normal_form(&Word::from(b)).unwrap());
    }

    #[test]
    fn reduction_terminates_and_decreases(w in word_strategy(5, 40)) {
        let rs = completed(5);
        let trace = rs.trace(&w).unwrap();
        let mut prev = w.clone();
        for step in &trace {
            prop_assert_eq!(rs.order().compare(&step.result, &prev), std::cmp::Ordering::Less);
            prev = step.result.clone();
        }
        prop_assert!(rs.is_irreducible(&prev));
        prop_assert_eq!(prev, rs.normal_form(&w).unwrap());
    }

    #[test]
    fn normal_form_is_a_homomorphism(u in word_strategy(3, 15), v in word_strategy(3, 15)) {
        let rs = completed(3);
        let direct = rs.normal_form(&u.concat(&v)).unwrap();
        let via = rs.normal_form(&rs.normal_form(&u).unwrap().concat(&rs.normal_form(&v).unwrap())).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn bar_commutes_with_normal_forms_up_to_equality(w in word_strategy(4, 20)) {
        let rs = completed(4);
        let a = rs.alphabet();
        let nf_bar = rs.normal_form(&a.bar(&w).unwrap()).unwrap();
        let bar_nf = rs.normal_form(&a.bar(&rs.normal_form(&w).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(nf_bar, bar_nf);
    }
}
