#![allow(dead_code)]

use opalg::{
    syntax::{parse_poly, parse_word},
    Letter, OpId, Poly, Prime, RatFunc, Signature, System, Word,
};
use proptest::collection::vec;
use proptest::prelude::*;

/// A word before it is bound to a signature.
#[derive(Clone, Debug)]
pub enum Tree {
    Letter(u32),
    Op(u32, Vec<Vec<Tree>>),
}

pub fn to_word(seq: &[Tree]) -> Word {
    let primes = seq
        .iter()
        .map(|t| match t {
            Tree::Letter(l) => Prime::Letter(Letter(*l)),
            Tree::Op(op, args) => {
                let args: Vec<Word> = args.iter().map(|a| to_word(a)).collect();
                Prime::Op(OpId(*op), args.into())
            }
        })
        .collect();
    Word::new(primes).expect("generated words are nonempty")
}

/// Random words over `letters` letters and operators with the given arities.
pub fn words(letters: u32, arities: Vec<usize>, max_len: usize) -> impl Strategy<Value = Word> {
    let max_arity = arities.iter().copied().max().unwrap_or(0);
    let nops = arities.len() as u32;
    let leaf = (0..letters).prop_map(Tree::Letter);
    let prime = leaf.prop_recursive(3, 16, 3, move |inner| {
        let seq = vec(inner, 1..=max_len);
        let arities = arities.clone();
        prop_oneof![
            (0..letters).prop_map(Tree::Letter),
            (0..nops.max(1), vec(seq, max_arity.max(1))).prop_filter_map(
                "no operators",
                move |(op, mut args)| {
                    let arity = *arities.get(op as usize)?;
                    args.truncate(arity);
                    Some(Tree::Op(op, args))
                }
            ),
        ]
    });
    vec(prime, 1..=max_len).prop_map(|seq| to_word(&seq))
}

pub fn lam() -> RatFunc {
    RatFunc::lam()
}

pub fn w(sig: &Signature, text: &str) -> Word {
    parse_word(sig, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn p(sig: &Signature, text: &str) -> Poly {
    parse_poly(sig, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn show(sys: &System, f: &Poly) -> String {
    f.display(sys.sig(), sys.order())
}

pub fn sorted_names(sig: &Signature, ws: &[Word]) -> Vec<String> {
    let mut v: Vec<String> = ws.iter().map(|w| sig.show(w)).collect();
    v.sort();
    v
}
