//! Memoized normal forms over hash-consed words.
//!
//! `nf(u·p)` for a last prime factor `p` is assembled from `nf(u)` and
//! `nf(p)`: both are sums of irreducible words, so a redex in a product
//! `a·b` of such words must straddle the boundary. Likewise `δ(a₁,…)` with
//! irreducible arguments can only be a redex at its root. Each cached value
//! is a function of its key alone, so results do not depend on evaluation
//! order or on which entries happen to be cached.

use std::hash::{BuildHasher, Hash};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use hashbrown::HashTable;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::error::Result;
use crate::poly::OmegaPolynomial;
use crate::rewrite::RewriteSystem;
use crate::scalar::Scalar;
use crate::terms::{Letter, OpId, Prime, Word};

type Id = u32;

/// Words are identified by the ids of their parts, so hashing and equality
/// never look deeper than one level.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum NodeRef<'a> {
    Letter(Letter),
    Op(OpId, &'a [Id]),
    /// Two or more prime factors.
    Seq(&'a [Id]),
}

enum Node {
    Letter(Letter),
    Op(OpId, Box<[Id]>),
    Seq(Box<[Id]>),
}

impl Node {
    fn as_ref(&self) -> NodeRef<'_> {
        match self {
            Node::Letter(l) => NodeRef::Letter(*l),
            Node::Op(op, args) => NodeRef::Op(*op, args),
            Node::Seq(fs) => NodeRef::Seq(fs),
        }
    }
}

impl NodeRef<'_> {
    fn to_owned(self) -> Node {
        match self {
            NodeRef::Letter(l) => Node::Letter(l),
            NodeRef::Op(op, args) => Node::Op(op, args.into()),
            NodeRef::Seq(fs) => Node::Seq(fs.into()),
        }
    }
}

#[derive(Default)]
struct Interner {
    table: HashTable<Id>,
    nodes: Vec<Node>,
    /// Built on first request; most intermediate words are never looked at.
    words: Vec<OnceLock<Word>>,
}

impl Interner {
    fn find(&self, hash: u64, key: NodeRef<'_>) -> Option<Id> {
        self.table
            .find(hash, |&id| self.nodes[id as usize].as_ref() == key)
            .copied()
    }

    fn word(&self, id: Id) -> &Word {
        self.words[id as usize].get_or_init(|| match &self.nodes[id as usize] {
            Node::Letter(l) => Word::letter(*l),
            Node::Op(op, args) => {
                Word::op(*op, args.iter().map(|&a| self.word(a).clone()).collect())
            }
            Node::Seq(fs) => Word::from_vec(
                fs.iter()
                    .flat_map(|&f| self.word(f).factors().iter().cloned())
                    .collect(),
            ),
        })
    }
}

type Terms<C> = Arc<Vec<(Id, C)>>;

fn lock_err() -> ! {
    panic!("normalizer lock poisoned")
}

pub struct Normalizer<'s, C> {
    sys: &'s RewriteSystem<C>,
    /// Whether some left side can straddle a product boundary.
    joins_possible: bool,
    interner: RwLock<Interner>,
    words: RwLock<FxHashMap<Id, Terms<C>>>,
    tops: RwLock<FxHashMap<Id, Terms<C>>>,
    joins: RwLock<FxHashMap<(Id, usize), Terms<C>>>,
    /// Terms held by the three caches; nothing more is cached past `limit`.
    cached_terms: AtomicUsize,
    limit: usize,
}

impl<'s, C: Scalar> Normalizer<'s, C> {
    pub fn new(sys: &'s RewriteSystem<C>) -> Self {
        Self::with_limit(sys, 8_000_000)
    }

    /// Caches hold at most about `limit` terms, and [`Normalizer::trim`]
    /// forgets everything once that many terms or words are known.
    pub fn with_limit(sys: &'s RewriteSystem<C>, limit: usize) -> Self {
        let joins_possible = sys
            .rules()
            .iter()
            .any(|r| r.lhs().breadth() > 1 || matches!(r.lhs().factors()[0], Prime::Var(_)));
        Normalizer {
            sys,
            joins_possible,
            interner: RwLock::default(),
            words: RwLock::default(),
            tops: RwLock::default(),
            joins: RwLock::default(),
            cached_terms: AtomicUsize::new(0),
            limit,
        }
    }

    pub fn system(&self) -> &RewriteSystem<C> {
        self.sys
    }

    /// Drops all memoized data if it has grown past the limit. Call only
    /// while no other computation uses this normalizer.
    pub fn trim(&self) {
        let size = self
            .interner
            .read()
            .unwrap_or_else(|_| lock_err())
            .nodes
            .len();
        if size > self.limit || self.cached_terms.load(Ordering::Relaxed) >= self.limit {
            *self.interner.write().unwrap_or_else(|_| lock_err()) = Interner::default();
            self.words.write().unwrap_or_else(|_| lock_err()).clear();
            self.tops.write().unwrap_or_else(|_| lock_err()).clear();
            self.joins.write().unwrap_or_else(|_| lock_err()).clear();
            self.cached_terms.store(0, Ordering::Relaxed);
        }
    }

    fn intern(&self, key: NodeRef<'_>) -> Id {
        let hash = FxBuildHasher.hash_one(key);
        if let Some(id) = self
            .interner
            .read()
            .unwrap_or_else(|_| lock_err())
            .find(hash, key)
        {
            return id;
        }
        let mut g = self.interner.write().unwrap_or_else(|_| lock_err());
        if let Some(id) = g.find(hash, key) {
            return id;
        }
        let id = Id::try_from(g.nodes.len()).expect("fewer than 2^32 distinct words");
        g.nodes.push(key.to_owned());
        g.words.push(OnceLock::new());
        let Interner { table, nodes, .. } = &mut *g;
        table.insert_unique(hash, id, |&i| {
            FxBuildHasher.hash_one(nodes[i as usize].as_ref())
        });
        id
    }

    fn word(&self, id: Id) -> Word {
        self.interner
            .read()
            .unwrap_or_else(|_| lock_err())
            .word(id)
            .clone()
    }

    fn intern_prime(&self, p: &Prime) -> Id {
        match p {
            Prime::Letter(l) => self.intern(NodeRef::Letter(*l)),
            Prime::Op(op, args) => {
                let ids: Vec<Id> = args.iter().map(|a| self.intern_word(a)).collect();
                self.intern(NodeRef::Op(*op, &ids))
            }
            Prime::Hole(_) | Prime::Var(_) => {
                panic!("normal forms are defined for ground words only")
            }
        }
    }

    /// Id of the product of the given prime factors.
    fn intern_seq(&self, factors: &[Id]) -> Id {
        match factors {
            [one] => *one,
            _ => self.intern(NodeRef::Seq(factors)),
        }
    }

    fn intern_word(&self, w: &Word) -> Id {
        let fs: Vec<Id> = w.factors().iter().map(|p| self.intern_prime(p)).collect();
        self.intern_seq(&fs)
    }

    fn push_factors(&self, id: Id, out: &mut Vec<Id>) {
        let g = self.interner.read().unwrap_or_else(|_| lock_err());
        match &g.nodes[id as usize] {
            Node::Seq(fs) => out.extend_from_slice(fs),
            _ => out.push(id),
        }
    }

    fn factors_of(&self, id: Id) -> Vec<Id> {
        let mut out = Vec::new();
        self.push_factors(id, &mut out);
        out
    }

    fn cached<K: Hash + Eq>(
        &self,
        cache: &RwLock<FxHashMap<K, Terms<C>>>,
        key: K,
        compute: impl FnOnce() -> Result<Vec<(Id, C)>>,
    ) -> Result<Terms<C>> {
        if let Some(v) = cache.read().unwrap_or_else(|_| lock_err()).get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(compute()?);
        // one slot per entry so that zero normal forms count too
        let size = v.len() + 1;
        if self.cached_terms.fetch_add(size, Ordering::Relaxed) < self.limit {
            cache
                .write()
                .unwrap_or_else(|_| lock_err())
                .insert(key, v.clone());
        } else {
            self.cached_terms.fetch_sub(size, Ordering::Relaxed);
        }
        Ok(v)
    }

    fn nf_id(&self, id: Id) -> Result<Terms<C>> {
        if let Some(v) = self.words.read().unwrap_or_else(|_| lock_err()).get(&id) {
            return Ok(v.clone());
        }
        enum Shape {
            Letter,
            Op(OpId, Vec<Id>),
            Seq(Vec<Id>),
        }
        let shape = match &self.interner.read().unwrap_or_else(|_| lock_err()).nodes[id as usize] {
            Node::Letter(_) => Shape::Letter,
            Node::Op(op, args) => Shape::Op(*op, args.to_vec()),
            Node::Seq(fs) => Shape::Seq(fs.to_vec()),
        };
        self.cached(&self.words, id, || match shape {
            Shape::Letter => Ok((*self.nf_top(id)?).clone()),
            Shape::Op(op, args) => {
                let nargs = args
                    .iter()
                    .map(|&a| self.nf_id(a))
                    .collect::<Result<Vec<_>>>()?;
                if nargs.iter().any(|a| a.is_empty()) {
                    return Ok(Vec::new());
                }
                let mut acc = Acc::default();
                let mut pick = vec![0usize; nargs.len()];
                let mut ids = vec![0; nargs.len()];
                loop {
                    let mut coeff = C::one();
                    for (j, &k) in pick.iter().enumerate() {
                        let (w, c) = &nargs[j][k];
                        coeff = coeff * c.clone();
                        ids[j] = *w;
                    }
                    let t = self.intern(NodeRef::Op(op, &ids));
                    acc.add_scaled(&coeff, &self.nf_top(t)?);
                    // odometer over the argument expansions
                    let mut j = pick.len();
                    loop {
                        if j == 0 {
                            return Ok(acc.finish());
                        }
                        j -= 1;
                        pick[j] += 1;
                        if pick[j] < nargs[j].len() {
                            break;
                        }
                        pick[j] = 0;
                    }
                }
            }
            Shape::Seq(fs) => {
                let (init, last) = fs.split_at(fs.len() - 1);
                let left = self.nf_id(self.intern_seq(init))?;
                let right = self.nf_id(last[0])?;
                let mut acc = Acc::default();
                let mut buf = Vec::new();
                for (a, ca) in left.iter() {
                    buf.clear();
                    self.push_factors(*a, &mut buf);
                    let boundary = buf.len();
                    for (b, cb) in right.iter() {
                        buf.truncate(boundary);
                        self.push_factors(*b, &mut buf);
                        let ab = self.intern_seq(&buf);
                        let coeff = ca.clone() * cb.clone();
                        if self.joins_possible {
                            acc.add_scaled(&coeff, &self.nf_join(ab, boundary)?);
                        } else {
                            acc.add(ab, coeff);
                        }
                    }
                }
                Ok(acc.finish())
            }
        })
    }

    /// Normal form of a word whose prefix of length `boundary` and the rest are irreducible.
    fn nf_join(&self, id: Id, boundary: usize) -> Result<Terms<C>> {
        self.cached(&self.joins, (id, boundary), || {
            let w = self.word(id);
            let seq = w.factors();
            let mut found = None;
            for start in 0..boundary {
                let stop = self.sys.matches_at(seq, start, &mut |rule, end, vals| {
                    if end > boundary {
                        found = Some((start, end, rule, vals));
                        true
                    } else {
                        false
                    }
                });
                if stop {
                    break;
                }
            }
            self.finish(id, &w, found)
        })
    }

    /// Normal form of a word whose only possible redex is at the root.
    fn nf_top(&self, id: Id) -> Result<Terms<C>> {
        self.cached(&self.tops, id, || {
            let w = self.word(id);
            let seq = w.factors();
            let mut found = None;
            self.sys.matches_at(seq, 0, &mut |rule, end, vals| {
                if end == seq.len() {
                    found = Some((0, end, rule, vals));
                    true
                } else {
                    false
                }
            });
            self.finish(id, &w, found)
        })
    }

    /// Factor ids of `pat` with its metavariables replaced by the words `vals`.
    fn instantiate(&self, pat: &Word, vals: &[Id], out: &mut Vec<Id>) {
        for p in pat.factors() {
            match p {
                Prime::Letter(l) => out.push(self.intern(NodeRef::Letter(*l))),
                Prime::Var(v) => self.push_factors(vals[*v as usize], out),
                Prime::Op(op, args) => {
                    let ids: Vec<Id> = args
                        .iter()
                        .map(|a| {
                            let mut fs = Vec::new();
                            self.instantiate(a, vals, &mut fs);
                            self.intern_seq(&fs)
                        })
                        .collect();
                    out.push(self.intern(NodeRef::Op(*op, &ids)));
                }
                Prime::Hole(_) => unreachable!("rules contain no holes"),
            }
        }
    }

    /// Contracts the redex `seq[start..end]` of word `id`, if any, and normalizes the result.
    fn finish(
        &self,
        id: Id,
        w: &Word,
        redex: Option<(usize, usize, usize, Vec<Word>)>,
    ) -> Result<Vec<(Id, C)>> {
        let Some((start, end, rule, vals)) = redex else {
            return Ok(vec![(id, C::one())]);
        };
        let r = &self.sys.rules()[rule];
        let val_ids: Vec<Id> = vals.iter().map(|v| self.intern_word(v)).collect();
        let lhs = Word::from_vec(w.factors()[start..end].to_vec());
        let fs = self.factors_of(id);
        let mut acc = Acc::default();
        let mut inst = Vec::new();
        for (pat, c) in r.rhs().iter() {
            inst.clear();
            self.instantiate(pat, &val_ids, &mut inst);
            if !self
                .sys
                .order()
                .greater(&lhs, &self.word(self.intern_seq(&inst)))
            {
                // reported with the faithful instance
                self.sys.oriented_instance(rule, &vals)?;
            }
            let whole: Vec<Id> = fs[..start]
                .iter()
                .chain(&inst)
                .chain(&fs[end..])
                .copied()
                .collect();
            acc.add_scaled(c, &self.nf_id(self.intern_seq(&whole))?);
        }
        Ok(acc.finish())
    }

    fn reduce_all(&self, f: &OmegaPolynomial<C>) -> Result<Acc<C>> {
        let mut acc = Acc::default();
        for (w, c) in f.iter() {
            acc.add_scaled(c, &self.nf_id(self.intern_word(w))?);
        }
        Ok(acc)
    }

    pub fn nf_poly(&self, f: &OmegaPolynomial<C>) -> Result<OmegaPolynomial<C>> {
        let terms = self.reduce_all(f)?.finish();
        Ok(OmegaPolynomial::from_terms(
            terms.into_iter().map(|(id, c)| (c, self.word(id))),
        ))
    }

    pub fn nf_word(&self, w: &Word) -> Result<OmegaPolynomial<C>> {
        self.nf_poly(&OmegaPolynomial::monomial(w.clone()))
    }

    pub fn is_zero_mod(&self, f: &OmegaPolynomial<C>) -> Result<bool> {
        Ok(self.reduce_all(f)?.0.is_empty())
    }
}

/// Sparse accumulator keyed by word id.
struct Acc<C>(FxHashMap<Id, C>);

impl<C> Default for Acc<C> {
    fn default() -> Self {
        Acc(FxHashMap::default())
    }
}

impl<C: Scalar> Acc<C> {
    fn add(&mut self, id: Id, c: C) {
        use std::collections::hash_map::Entry;
        match self.0.entry(id) {
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    fn add_scaled(&mut self, c: &C, terms: &[(Id, C)]) {
        for (id, a) in terms {
            self.add(*id, c.clone() * a.clone());
        }
    }

    fn finish(self) -> Vec<(Id, C)> {
        self.0.into_iter().collect()
    }
}
