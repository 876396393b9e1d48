mod common;

use std::collections::HashSet;

use common::{w, words};
use opalg::syntax::parse_word;
use opalg::terms::{enumerate_contexts, enumerate_words, occurrences};
use opalg::{Prime, Signature, Word};
use proptest::prelude::*;

/// Words of each exact weight, counted from primes and top-level splits
/// without building any word.
fn count_by_weight(letters: u64, arities: &[usize], max: usize) -> Vec<u64> {
    let mut words = vec![0u64; max + 1];
    let mut primes = vec![0u64; max + 1];
    for n in 1..=max {
        let mut a = if n == 1 { letters } else { 0 };
        for &arity in arities {
            // arguments are `arity` nonempty words of total weight n - 1
            a += tuples(&words, arity, n - 1);
        }
        primes[n] = a;
        words[n] = a + (1..n).map(|i| primes[i] * words[n - i]).sum::<u64>();
    }
    words
}

fn tuples(words: &[u64], k: usize, total: usize) -> u64 {
    if k == 0 {
        return u64::from(total == 0);
    }
    (1..=total)
        .filter(|&i| i < words.len())
        .map(|i| words[i] * tuples(words, k - 1, total - i))
        .sum()
}

fn sig(letters: &[&str], ops: &[(&str, usize)]) -> Signature {
    Signature::new(
        letters.iter().map(|s| s.to_string()),
        ops.iter().map(|(n, a)| (n.to_string(), *a)),
    )
    .unwrap()
}

#[test]
fn enumeration_matches_the_counting_oracle() {
    type Case<'a> = (&'a [&'a str], &'a [(&'a str, usize)], usize);
    let cases: [Case; 4] = [
        (&["x"], &[("P", 1)], 6),
        (&["x", "y"], &[("P", 1), ("D", 1)], 4),
        (&["x"], &[("T", 2)], 5),
        (&["a", "b", "c"], &[], 4),
    ];
    for (letters, ops, max) in cases {
        let s = sig(letters, ops);
        let arities: Vec<usize> = ops.iter().map(|(_, a)| *a).collect();
        let expected = count_by_weight(letters.len() as u64, &arities, max);
        let all = enumerate_words(&s, max);
        let mut got = vec![0u64; max + 1];
        for u in &all {
            got[u.weight()] += 1;
        }
        assert_eq!(got, expected, "{letters:?} {ops:?}");
        let distinct: HashSet<&Word> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn small_enumerations() {
    let s = sig(&["x"], &[("P", 1)]);
    let names = |n| {
        enumerate_words(&s, n)
            .iter()
            .map(|u| s.show(u))
            .collect::<Vec<_>>()
    };
    assert_eq!(names(1), ["x"]);
    let mut two = names(2);
    two.sort();
    assert_eq!(two, ["P(x)", "x", "xx"]);
    // xxx, xP(x), P(x)x, P(xx), P(P(x))
    assert_eq!(count_by_weight(1, &[1], 3)[3], 5);
}

#[test]
fn enumeration_is_closed_downward() {
    let s = sig(&["x", "y"], &[("P", 1), ("T", 2)]);
    let all: HashSet<Word> = enumerate_words(&s, 4).into_iter().collect();
    for u in &all {
        for f in u.factors() {
            assert!(all.contains(&Word::prime(f.clone())));
            if let Prime::Op(_, args) = f {
                assert!(args.iter().all(|a| all.contains(a)));
            }
        }
    }
}

#[test]
fn printing_round_trips_on_enumerated_words() {
    let s = sig(&["x", "y"], &[("P", 1), ("T", 2)]);
    for u in enumerate_words(&s, 4) {
        assert_eq!(parse_word(&s, &s.show(&u)).unwrap(), u);
    }
}

#[test]
fn contexts_substitute_back() {
    let s = sig(&["x"], &[("P", 1)]);
    let t = w(&s, "x");
    for c in enumerate_contexts(&s, 3) {
        let filled = c.substitute(&t);
        assert!(occurrences(&filled, &t).contains(&c));
    }
}

fn sig_pdt() -> Signature {
    sig(&["x", "y", "z"], &[("P", 1), ("D", 1), ("T", 2)])
}

proptest! {
    #[test]
    fn parse_print_round_trip(u in words(3, vec![1, 1, 2], 3)) {
        let s = sig_pdt();
        prop_assert_eq!(parse_word(&s, &s.show(&u)).unwrap(), u);
    }

    #[test]
    fn degrees_are_additive(u in words(3, vec![1, 1, 2], 3), v in words(3, vec![1, 1, 2], 3)) {
        let uv = u.concat(&v);
        prop_assert_eq!(uv.breadth(), u.breadth() + v.breadth());
        prop_assert_eq!(uv.deg_letter(), u.deg_letter() + v.deg_letter());
        prop_assert_eq!(uv.weight(), u.weight() + v.weight());
        let s = sig_pdt();
        for op in s.ops() {
            prop_assert_eq!(uv.deg_op(op), u.deg_op(op) + v.deg_op(op));
        }
    }

    #[test]
    fn applying_an_operator_adds_one_occurrence(u in words(3, vec![1, 1, 2], 3)) {
        let s = sig_pdt();
        let p = s.require_op("P").unwrap();
        let d = s.require_op("D").unwrap();
        let pu = Word::unary(p, u.clone());
        prop_assert_eq!(pu.deg_op(p), u.deg_op(p) + 1);
        prop_assert_eq!(pu.deg_op(d), u.deg_op(d));
        prop_assert_eq!(pu.deg_letter(), u.deg_letter());
        prop_assert_eq!(pu.breadth(), 1);
        prop_assert_eq!(pu.depth(), u.depth() + 1);
    }

    #[test]
    fn occurrences_substitute_back(u in words(2, vec![1, 2], 3), pick in any::<prop::sample::Index>()) {
        // every factor of every nested sequence is a subword with at least one occurrence
        let mut primes = Vec::new();
        fn collect(w: &Word, out: &mut Vec<Word>) {
            for f in w.factors() {
                out.push(Word::prime(f.clone()));
                if let Prime::Op(_, args) = f {
                    args.iter().for_each(|a| collect(a, out));
                }
            }
        }
        collect(&u, &mut primes);
        let t = pick.get(&primes);
        let found = occurrences(&u, t);
        prop_assert!(!found.is_empty());
        for c in found {
            prop_assert_eq!(c.substitute(t), u.clone());
            // the hole counts as one letter of the context
            prop_assert_eq!(c.substitute(t).deg_letter(), c.deg_letter() - 1 + t.deg_letter());
        }
    }
}
