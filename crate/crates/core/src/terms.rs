//! Ω-words: the free semigroup over letters and operator applications.
//!
//! A [`Word`] is a nonempty sequence of [`Prime`] factors. A prime factor is a
//! letter or an operator applied to as many words as its arity. The same tree
//! type also carries holes (for contexts) and metavariables (for rule
//! patterns); ordinary words contain neither.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter in its [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

/// Index of an operator in its [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpId(pub u32);

/// Letters and operators, each well ordered by position: earlier entries are
/// the larger ones (`x > y > z` for `letters = [x, y, z]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    letters: Vec<String>,
    ops: Vec<(String, usize)>,
}

fn valid_letter_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_digit())
}

fn valid_op_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<L, O, S>(letters: L, ops: O) -> Result<Self>
    where
        L: IntoIterator<Item = S>,
        O: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        let ops: Vec<(String, usize)> = ops.into_iter().map(|(n, a)| (n.into(), a)).collect();
        for l in &letters {
            if !valid_letter_name(l) {
                return Err(Error::Signature(format!(
                    "letter `{l}` must be a lowercase ASCII letter optionally followed by digits"
                )));
            }
        }
        for (name, arity) in &ops {
            if !valid_op_name(name) {
                return Err(Error::Signature(format!(
                    "operator `{name}` must start with an uppercase ASCII letter"
                )));
            }
            if *arity == 0 {
                return Err(Error::Signature(format!("operator `{name}` has arity 0")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for name in letters.iter().chain(ops.iter().map(|(n, _)| n)) {
            if !seen.insert(name.as_str()) {
                return Err(Error::Signature(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(Signature { letters, ops })
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len() as u32).map(Letter)
    }

    pub fn ops(&self) -> impl Iterator<Item = OpId> + '_ {
        (0..self.ops.len() as u32).map(OpId)
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.letters
            .iter()
            .position(|l| l == name)
            .map(|i| Letter(i as u32))
    }

    pub fn op(&self, name: &str) -> Option<OpId> {
        self.ops
            .iter()
            .position(|(n, _)| n == name)
            .map(|i| OpId(i as u32))
    }

    pub fn letter_name(&self, l: Letter) -> &str {
        &self.letters[l.0 as usize]
    }

    pub fn op_name(&self, op: OpId) -> &str {
        &self.ops[op.0 as usize].0
    }

    pub fn arity(&self, op: OpId) -> usize {
        self.ops[op.0 as usize].1
    }

    pub fn letter_names(&self) -> &[String] {
        &self.letters
    }

    pub fn op_decls(&self) -> &[(String, usize)] {
        &self.ops
    }

    pub fn require_op(&self, name: &str) -> Result<OpId> {
        self.op(name)
            .ok_or_else(|| Error::UnknownOperator(name.to_string()))
    }

    pub fn word(&self, letter: &str) -> Result<Word> {
        self.letter(letter)
            .map(Word::letter)
            .ok_or_else(|| Error::UnknownLetter(letter.to_string()))
    }

    /// Renders `w` in the text grammar (`P(xy)z`, `T(x,y)`).
    pub fn show(&self, w: &Word) -> String {
        let mut out = String::new();
        self.write_word(&mut out, w, &[]);
        out
    }

    /// Like [`Signature::show`], with metavariables named by `vars`.
    pub fn show_pattern(&self, w: &Word, vars: &[String]) -> String {
        let mut out = String::new();
        self.write_word(&mut out, w, vars);
        out
    }

    fn write_word(&self, out: &mut String, w: &Word, vars: &[String]) {
        for p in w.factors() {
            match p {
                Prime::Letter(l) => out.push_str(self.letter_name(*l)),
                Prime::Op(op, args) => {
                    out.push_str(self.op_name(*op));
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        self.write_word(out, a, vars);
                    }
                    out.push(')');
                }
                Prime::Hole(0) => out.push('★'),
                Prime::Hole(h) => {
                    out.push('★');
                    out.push(char::from_digit(*h as u32, 10).unwrap_or('?'));
                }
                Prime::Var(v) => match vars.get(*v as usize) {
                    Some(name) => out.push_str(name),
                    None => {
                        out.push('?');
                        out.push_str(&v.to_string());
                    }
                },
            }
        }
    }
}

/// A single factor: letter, operator application, hole or metavariable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prime {
    Letter(Letter),
    Op(OpId, Arc<[Word]>),
    /// `★` is hole 0; `★₁`, `★₂` are holes 1 and 2.
    Hole(u8),
    Var(u32),
}

impl Prime {
    pub fn is_op(&self) -> bool {
        matches!(self, Prime::Op(..))
    }

    pub fn as_op(&self) -> Option<(OpId, &[Word])> {
        match self {
            Prime::Op(op, args) => Some((*op, args)),
            _ => None,
        }
    }
}

/// An element of the free semigroup: a nonempty product of prime factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Prime>);

impl Word {
    pub fn new(factors: Vec<Prime>) -> Result<Self> {
        if factors.is_empty() {
            Err(Error::EmptyWord)
        } else {
            Ok(Word(factors))
        }
    }

    pub(crate) fn from_vec(factors: Vec<Prime>) -> Self {
        debug_assert!(!factors.is_empty());
        Word(factors)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![Prime::Letter(l)])
    }

    pub fn prime(p: Prime) -> Self {
        Word(vec![p])
    }

    pub fn hole() -> Self {
        Word(vec![Prime::Hole(0)])
    }

    pub fn var(v: u32) -> Self {
        Word(vec![Prime::Var(v)])
    }

    /// Builds `delta(args)`, checking the arity against `sig`.
    pub fn apply_op(sig: &Signature, delta: OpId, args: Vec<Word>) -> Result<Word> {
        let expected = sig.arity(delta);
        if args.len() != expected {
            return Err(Error::Arity {
                op: sig.op_name(delta).to_string(),
                expected,
                got: args.len(),
            });
        }
        Ok(Word(vec![Prime::Op(delta, args.into())]))
    }

    /// Operator application without a signature check.
    pub fn op(delta: OpId, args: Vec<Word>) -> Word {
        Word(vec![Prime::Op(delta, args.into())])
    }

    pub fn unary(delta: OpId, arg: Word) -> Word {
        Word(vec![Prime::Op(delta, Arc::from(vec![arg]))])
    }

    pub fn factors(&self) -> &[Prime] {
        &self.0
    }

    pub fn into_factors(self) -> Vec<Prime> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut f = Vec::with_capacity(self.0.len() + other.0.len());
        f.extend_from_slice(&self.0);
        f.extend_from_slice(&other.0);
        Word(f)
    }

    pub fn breadth(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0
            .iter()
            .map(|p| match p {
                Prime::Op(_, args) => 1 + args.iter().map(Word::depth).max().unwrap_or(0),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Number of letter occurrences at every depth.
    pub fn deg_letter(&self) -> usize {
        self.0
            .iter()
            .map(|p| match p {
                Prime::Letter(_) => 1,
                Prime::Op(_, args) => args.iter().map(Word::deg_letter).sum(),
                _ => 0,
            })
            .sum()
    }

    /// Number of occurrences of `delta` at every depth.
    pub fn deg_op(&self, delta: OpId) -> usize {
        self.0
            .iter()
            .map(|p| match p {
                Prime::Op(op, args) => {
                    usize::from(*op == delta) + args.iter().map(|a| a.deg_op(delta)).sum::<usize>()
                }
                _ => 0,
            })
            .sum()
    }

    /// Letters plus operator occurrences; holes count as letters.
    pub fn weight(&self) -> usize {
        self.0
            .iter()
            .map(|p| match p {
                Prime::Letter(_) | Prime::Hole(_) | Prime::Var(_) => 1,
                Prime::Op(_, args) => 1 + args.iter().map(Word::weight).sum::<usize>(),
            })
            .sum()
    }

    pub fn count_holes(&self, hole: u8) -> usize {
        self.0
            .iter()
            .map(|p| match p {
                Prime::Hole(h) if *h == hole => 1,
                Prime::Op(_, args) => args.iter().map(|a| a.count_holes(hole)).sum(),
                _ => 0,
            })
            .sum()
    }

    pub fn has_holes(&self) -> bool {
        self.0.iter().any(|p| match p {
            Prime::Hole(_) => true,
            Prime::Op(_, args) => args.iter().any(Word::has_holes),
            _ => false,
        })
    }

    pub fn has_vars(&self) -> bool {
        self.0.iter().any(|p| match p {
            Prime::Var(_) => true,
            Prime::Op(_, args) => args.iter().any(Word::has_vars),
            _ => false,
        })
    }

    /// True when the word has neither holes nor metavariables.
    pub fn is_ground(&self) -> bool {
        !self.has_holes() && !self.has_vars()
    }

    /// Checks operator arities and letter ranges against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        for p in &self.0 {
            match p {
                Prime::Letter(l) if (l.0 as usize) >= sig.num_letters() => {
                    return Err(Error::UnknownLetter(format!("#{}", l.0)))
                }
                Prime::Op(op, args) => {
                    if (op.0 as usize) >= sig.num_ops() {
                        return Err(Error::UnknownOperator(format!("#{}", op.0)));
                    }
                    if args.len() != sig.arity(*op) {
                        return Err(Error::Arity {
                            op: sig.op_name(*op).to_string(),
                            expected: sig.arity(*op),
                            got: args.len(),
                        });
                    }
                    for a in args.iter() {
                        a.check(sig)?;
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Replaces every occurrence of hole `hole` by the factors of `t`.
    pub fn fill(&self, hole: u8, t: &[Prime]) -> Word {
        self.map_leaves(&mut |p| match p {
            Prime::Hole(h) if *h == hole => Some(t.to_vec()),
            _ => None,
        })
    }

    /// Splices `vals[v]` in place of each metavariable `v`.
    pub fn instantiate(&self, vals: &[Word]) -> Word {
        self.map_leaves(&mut |p| match p {
            Prime::Var(v) => Some(vals[*v as usize].0.clone()),
            _ => None,
        })
    }

    fn map_leaves(&self, f: &mut dyn FnMut(&Prime) -> Option<Vec<Prime>>) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for p in &self.0 {
            if let Some(rep) = f(p) {
                out.extend(rep);
                continue;
            }
            match p {
                Prime::Op(op, args) => {
                    let args: Vec<Word> = args.iter().map(|a| a.map_leaves(f)).collect();
                    out.push(Prime::Op(*op, args.into()));
                }
                other => out.push(other.clone()),
            }
        }
        Word(out)
    }

    /// The factor sequence addressed by `path`.
    pub fn seq_at(&self, path: &[(usize, usize)]) -> &[Prime] {
        let mut seq: &[Prime] = &self.0;
        for &(i, j) in path {
            match &seq[i] {
                Prime::Op(_, args) => seq = args[j].factors(),
                _ => panic!("site path does not address an operator argument"),
            }
        }
        seq
    }

    /// The subword occupying `site`.
    pub fn subword(&self, site: &Site) -> Word {
        Word(self.seq_at(&site.path)[site.start..site.end].to_vec())
    }

    /// Replaces the span at `site` with `rep`.
    pub fn replace_at(&self, site: &Site, rep: &[Prime]) -> Word {
        fn go(seq: &[Prime], path: &[(usize, usize)], site: &Site, rep: &[Prime]) -> Vec<Prime> {
            match path.split_first() {
                None => {
                    let mut out =
                        Vec::with_capacity(seq.len() - (site.end - site.start) + rep.len());
                    out.extend_from_slice(&seq[..site.start]);
                    out.extend_from_slice(rep);
                    out.extend_from_slice(&seq[site.end..]);
                    out
                }
                Some((&(i, j), rest)) => {
                    let mut out = seq.to_vec();
                    if let Prime::Op(op, args) = &seq[i] {
                        let mut args: Vec<Word> = args.to_vec();
                        args[j] = Word(go(args[j].factors(), rest, site, rep));
                        out[i] = Prime::Op(*op, args.into());
                    }
                    out
                }
            }
        }
        Word(go(&self.0, &site.path, site, rep))
    }

    /// The context obtained by cutting out the span at `site`.
    pub fn context_at(&self, site: &Site) -> StarWord {
        StarWord(self.replace_at(site, &[Prime::Hole(0)]))
    }

    /// Location of hole `hole`, if present.
    pub fn hole_site(&self, hole: u8) -> Option<Site> {
        fn go(seq: &[Prime], hole: u8, path: &mut Path) -> Option<Site> {
            for (i, p) in seq.iter().enumerate() {
                match p {
                    Prime::Hole(h) if *h == hole => {
                        return Some(Site {
                            path: path.clone(),
                            start: i,
                            end: i + 1,
                        })
                    }
                    Prime::Op(_, args) => {
                        for (j, a) in args.iter().enumerate() {
                            path.push((i, j));
                            if let Some(s) = go(a.factors(), hole, path) {
                                return Some(s);
                            }
                            path.pop();
                        }
                    }
                    _ => {}
                }
            }
            None
        }
        go(&self.0, hole, &mut Vec::new())
    }

    /// Every factor sequence of the word with its path, in pre-order.
    pub fn sequences(&self) -> Vec<(Path, &[Prime])> {
        fn go<'a>(seq: &'a [Prime], path: &mut Path, out: &mut Vec<(Path, &'a [Prime])>) {
            out.push((path.clone(), seq));
            for (i, p) in seq.iter().enumerate() {
                if let Prime::Op(_, args) = p {
                    for (j, a) in args.iter().enumerate() {
                        path.push((i, j));
                        go(a.factors(), path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(&self.0, &mut Vec::new(), &mut out);
        out
    }
}

/// Route from the root to a factor sequence: (factor index, argument index) per level.
pub type Path = Vec<(usize, usize)>;

/// A span `start..end` of the factor sequence reached by following `path`
/// (pairs of factor index and argument index) from the top level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub path: Path,
    pub start: usize,
    pub end: usize,
}

impl Site {
    pub fn root(len: usize) -> Site {
        Site {
            path: Vec::new(),
            start: 0,
            end: len,
        }
    }

    /// True when `self` lies within `outer` (same sequence and a sub-span, or
    /// below one of the factors spanned by `outer`).
    pub fn is_within(&self, outer: &Site) -> bool {
        let depth = outer.path.len();
        if self.path.len() < depth || self.path[..depth] != outer.path[..] {
            return false;
        }
        if self.path.len() == depth {
            outer.start <= self.start && self.end <= outer.end
        } else {
            let i = self.path[depth].0;
            outer.start <= i && i < outer.end
        }
    }
}

/// A word with exactly one hole `★`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarWord(Word);

impl StarWord {
    pub fn new(w: Word) -> Result<Self> {
        if w.has_vars() {
            return Err(Error::Context(
                "contexts cannot contain metavariables".into(),
            ));
        }
        if w.count_holes(0) != 1 || w.count_holes(1) != 0 || w.count_holes(2) != 0 {
            return Err(Error::Context("expected exactly one hole ★".into()));
        }
        Ok(StarWord(w))
    }

    pub(crate) fn new_unchecked(w: Word) -> Self {
        debug_assert_eq!(w.count_holes(0), 1);
        StarWord(w)
    }

    pub fn identity() -> Self {
        StarWord(Word::hole())
    }

    pub fn is_identity(&self) -> bool {
        self.0.factors() == [Prime::Hole(0)]
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn substitute(&self, t: &Word) -> Word {
        self.0.fill(0, t.factors())
    }

    pub fn hole_site(&self) -> Site {
        self.0.hole_site(0).expect("star word has a hole")
    }

    /// Letters of the context, counting `★` as one letter.
    pub fn deg_letter(&self) -> usize {
        self.0.deg_letter() + 1
    }

    pub fn weight(&self) -> usize {
        self.0.weight()
    }

    /// `self|_{inner}`: plugs another context into the hole.
    pub fn compose(&self, inner: &StarWord) -> StarWord {
        StarWord(self.0.fill(0, inner.0.factors()))
    }
}

/// A word with exactly one `★₁` and one `★₂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleStarWord(Word);

impl DoubleStarWord {
    pub fn new(w: Word) -> Result<Self> {
        if w.has_vars() || w.count_holes(0) != 0 || w.count_holes(1) != 1 || w.count_holes(2) != 1 {
            return Err(Error::Context("expected exactly one ★₁ and one ★₂".into()));
        }
        Ok(DoubleStarWord(w))
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn substitute2(&self, t1: &Word, t2: &Word) -> Word {
        self.0.fill(1, t1.factors()).fill(2, t2.factors())
    }

    /// Fills `★₁`, leaving `★₂` as the hole of the result.
    pub fn fill_first(&self, t1: &Word) -> StarWord {
        StarWord(self.0.fill(1, t1.factors()).fill(2, &[Prime::Hole(0)]))
    }

    /// Fills `★₂`, leaving `★₁` as the hole of the result.
    pub fn fill_second(&self, t2: &Word) -> StarWord {
        StarWord(self.0.fill(2, t2.factors()).fill(1, &[Prime::Hole(0)]))
    }
}

/// All sites where the factors of `t` occur contiguously in `w`, in pre-order:
/// positions left to right, each position before the words nested below it.
pub fn occurrence_sites(w: &Word, t: &Word) -> Vec<Site> {
    fn go(seq: &[Prime], t: &[Prime], path: &mut Path, out: &mut Vec<Site>) {
        for i in 0..seq.len() {
            if seq.len() - i >= t.len() && seq[i..i + t.len()] == *t {
                out.push(Site {
                    path: path.clone(),
                    start: i,
                    end: i + t.len(),
                });
            }
            if let Prime::Op(_, args) = &seq[i] {
                for (j, a) in args.iter().enumerate() {
                    path.push((i, j));
                    go(a.factors(), t, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(w.factors(), t.factors(), &mut Vec::new(), &mut out);
    out
}

/// All contexts `c` with `c|_t = w`.
pub fn occurrences(w: &Word, t: &Word) -> Vec<StarWord> {
    occurrence_sites(w, t)
        .iter()
        .map(|s| w.context_at(s))
        .collect()
}

struct Enumerator<'a> {
    sig: &'a Signature,
    // [holes][weight]
    primes: [Vec<Vec<Word>>; 2],
    words: [Vec<Vec<Word>>; 2],
}

impl<'a> Enumerator<'a> {
    fn new(sig: &'a Signature, max_weight: usize, with_hole: bool) -> Self {
        let mut e = Enumerator {
            sig,
            primes: [
                vec![Vec::new(); max_weight + 1],
                vec![Vec::new(); max_weight + 1],
            ],
            words: [
                vec![Vec::new(); max_weight + 1],
                vec![Vec::new(); max_weight + 1],
            ],
        };
        let hole_levels = if with_hole { 2 } else { 1 };
        for k in 1..=max_weight {
            for h in 0..hole_levels {
                let primes = e.primes_of(k, h);
                e.primes[h][k] = primes;
            }
            for h in 0..hole_levels {
                let words = e.words_of(k, h);
                e.words[h][k] = words;
            }
        }
        e
    }

    fn primes_of(&self, k: usize, h: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if k == 1 {
            if h == 0 {
                out.extend(self.sig.letters().map(Word::letter));
            } else {
                out.push(Word::hole());
            }
            return out;
        }
        for op in self.sig.ops() {
            let arity = self.sig.arity(op);
            if k - 1 < arity {
                continue;
            }
            let mut parts = Vec::new();
            self.args_of(arity, k - 1, h, &mut parts, &mut |args| {
                out.push(Word::op(op, args.to_vec()));
            });
        }
        out
    }

    // Argument tuples of total weight `total` carrying `h` holes in all.
    fn args_of(
        &self,
        remaining: usize,
        total: usize,
        h: usize,
        acc: &mut Vec<Word>,
        emit: &mut dyn FnMut(&[Word]),
    ) {
        if remaining == 0 {
            if total == 0 && h == 0 {
                emit(acc);
            }
            return;
        }
        if total < remaining {
            return;
        }
        for w in 1..=total - (remaining - 1) {
            for hh in 0..=h {
                for word in &self.words[hh][w] {
                    acc.push(word.clone());
                    self.args_of(remaining - 1, total - w, h - hh, acc, emit);
                    acc.pop();
                }
            }
        }
    }

    fn words_of(&self, k: usize, h: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for j in 1..=k {
            for h1 in 0..=h {
                for p in &self.primes[h1][j] {
                    if j == k {
                        if h1 == h {
                            out.push(p.clone());
                        }
                    } else {
                        for rest in &self.words[h - h1][k - j] {
                            out.push(p.concat(rest));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Every word of weight (letters plus operator occurrences) at most
/// `max_weight`, ordered by weight and then by construction.
pub fn enumerate_words(sig: &Signature, max_weight: usize) -> Vec<Word> {
    let e = Enumerator::new(sig, max_weight, false);
    e.words[0].iter().flatten().cloned().collect()
}

/// Every context of weight at most `max_weight`, the hole counting as a letter.
pub fn enumerate_contexts(sig: &Signature, max_weight: usize) -> Vec<StarWord> {
    let e = Enumerator::new(sig, max_weight, true);
    e.words[1]
        .iter()
        .flatten()
        .cloned()
        .map(StarWord::new_unchecked)
        .collect()
}

/// Words grouped by weight; index `k` holds the words of weight `k`.
pub fn words_by_weight(sig: &Signature, max_weight: usize) -> BTreeMap<usize, Vec<Word>> {
    let e = Enumerator::new(sig, max_weight, false);
    e.words[0]
        .iter()
        .cloned()
        .enumerate()
        .filter(|(k, _)| *k > 0)
        .collect()
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
