//! Monomial orders on Ω-words.
//!
//! Throughout, earlier entries of the signature are the greater ones: with
//! letters `[x, y, z]` we have `x > y > z`, and likewise for operators.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::terms::{
    enumerate_contexts, enumerate_words, Letter, OpId, Prime, Signature, StarWord, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Degree then lexicographic; words without operators only.
    DegLex,
    /// Operator count and operators first, then letter blocks. Any signature.
    Order1,
    /// Letter degree, then factor by factor. One unary operator `D`.
    Order2,
    /// Letter degree, `P`-degree, then `P`-arguments and blocks. Unary `P` and `D`.
    Order3,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::DegLex => "deglex",
            OrderKind::Order1 => "o1",
            OrderKind::Order2 => "o2",
            OrderKind::Order3 => "o3",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deglex" => Ok(OrderKind::DegLex),
            "o1" => Ok(OrderKind::Order1),
            "o2" => Ok(OrderKind::Order2),
            "o3" => Ok(OrderKind::Order3),
            other => Err(Error::OrderSignature {
                order: other.to_string(),
                reason: "expected one of deglex, o1, o2, o3".into(),
            }),
        }
    }
}

/// An order kind bound to the operators of a particular signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    p: Option<OpId>,
    d: Option<OpId>,
}

fn mismatch(kind: OrderKind, reason: &str) -> Error {
    Error::OrderSignature {
        order: kind.name().to_string(),
        reason: reason.to_string(),
    }
}

fn rank_letter(a: Letter, b: Letter) -> Ordering {
    b.0.cmp(&a.0)
}

fn rank_op(a: OpId, b: OpId) -> Ordering {
    b.0.cmp(&a.0)
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, sig: &Signature) -> Result<Self> {
        let unary = |name: &str| sig.op(name).filter(|&op| sig.arity(op) == 1);
        match kind {
            OrderKind::DegLex => {
                if sig.num_ops() > 0 {
                    return Err(mismatch(
                        kind,
                        "deg-lex orders letter words only; the signature has operators",
                    ));
                }
                Ok(MonomialOrder {
                    kind,
                    p: None,
                    d: None,
                })
            }
            OrderKind::Order1 => Ok(MonomialOrder {
                kind,
                p: None,
                d: None,
            }),
            OrderKind::Order2 => {
                if sig.num_ops() != 1 || sig.arity(OpId(0)) != 1 {
                    return Err(mismatch(kind, "requires exactly one unary operator"));
                }
                Ok(MonomialOrder {
                    kind,
                    p: None,
                    d: Some(OpId(0)),
                })
            }
            OrderKind::Order3 => {
                let (Some(p), Some(d)) = (unary("P"), unary("D")) else {
                    return Err(mismatch(kind, "requires unary operators P and D"));
                };
                if sig.num_ops() != 2 {
                    return Err(mismatch(kind, "requires exactly the operators P and D"));
                }
                Ok(MonomialOrder {
                    kind,
                    p: Some(p),
                    d: Some(d),
                })
            }
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// `Greater` means `u > v`.
    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        match self.kind {
            OrderKind::DegLex => deglex(u.factors(), v.factors()),
            OrderKind::Order1 => order1(u.factors(), v.factors()),
            OrderKind::Order2 => order2(u.factors(), v.factors()),
            OrderKind::Order3 => {
                let ctx = O3 {
                    p: self.p.expect("P"),
                    d: self.d.expect("D"),
                };
                ctx.cmp_seq(u.factors(), v.factors())
            }
        }
    }

    pub fn greater(&self, u: &Word, v: &Word) -> bool {
        self.compare(u, v) == Ordering::Greater
    }

    /// The maximum of a nonempty collection.
    pub fn leading_of_set<'a, I>(&self, ws: I) -> Option<&'a Word>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        ws.into_iter().max_by(|a, b| self.compare(a, b))
    }
}

fn letter_of(p: &Prime) -> Letter {
    match p {
        Prime::Letter(l) => *l,
        _ => panic!("deg-lex compares letter words only"),
    }
}

fn deglex(u: &[Prime], v: &[Prime]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| {
        u.iter()
            .zip(v)
            .map(|(a, b)| rank_letter(letter_of(a), letter_of(b)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

type OpFactors<'a> = Vec<(OpId, &'a [Word])>;

/// Letter blocks between the top-level operator factors, and those factors.
fn split_blocks(seq: &[Prime]) -> (Vec<&[Prime]>, OpFactors<'_>) {
    let mut blocks = Vec::new();
    let mut ops = Vec::new();
    let mut start = 0;
    for (i, p) in seq.iter().enumerate() {
        if let Prime::Op(op, args) = p {
            blocks.push(&seq[start..i]);
            ops.push((*op, &args[..]));
            start = i + 1;
        }
    }
    blocks.push(&seq[start..]);
    (blocks, ops)
}

fn order1(u: &[Prime], v: &[Prime]) -> Ordering {
    let (ub, uo) = split_blocks(u);
    let (vb, vo) = split_blocks(v);
    uo.len()
        .cmp(&vo.len())
        .then_with(|| {
            for ((op_u, args_u), (op_v, args_v)) in uo.iter().zip(&vo) {
                let o = rank_op(*op_u, *op_v);
                if o.is_ne() {
                    return o;
                }
                for (a, b) in args_u.iter().zip(args_v.iter()) {
                    let o = order1(a.factors(), b.factors());
                    if o.is_ne() {
                        return o;
                    }
                }
            }
            Ordering::Equal
        })
        .then_with(|| {
            ub.iter()
                .zip(&vb)
                .map(|(a, b)| deglex(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

fn deg_x(seq: &[Prime]) -> usize {
    seq.iter()
        .map(|p| match p {
            Prime::Letter(_) => 1,
            Prime::Op(_, args) => args.iter().map(Word::deg_letter).sum(),
            _ => 0,
        })
        .sum()
}

/// Positional comparison of two factor sequences with equal letter degree.
fn factorwise(u: &[Prime], v: &[Prime], cmp: impl Fn(&Prime, &Prime) -> Ordering) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        let o = cmp(a, b);
        if o.is_ne() {
            return o;
        }
    }
    assert!(
        u.len() == v.len(),
        "factor sequences of equal letter degree cannot be proper prefixes of each other"
    );
    Ordering::Equal
}

fn order2(u: &[Prime], v: &[Prime]) -> Ordering {
    deg_x(u)
        .cmp(&deg_x(v))
        .then_with(|| factorwise(u, v, order2_factor))
}

fn order2_factor(a: &Prime, b: &Prime) -> Ordering {
    match (a, b) {
        (Prime::Letter(x), Prime::Letter(y)) => rank_letter(*x, *y),
        (Prime::Op(..), Prime::Letter(_)) => Ordering::Greater,
        (Prime::Letter(_), Prime::Op(..)) => Ordering::Less,
        (Prime::Op(_, xa), Prime::Op(_, ya)) => order2(xa[0].factors(), ya[0].factors()),
        _ => panic!("holes and metavariables are not ordered"),
    }
}

struct O3 {
    p: OpId,
    d: OpId,
}

impl O3 {
    fn deg_p(&self, seq: &[Prime]) -> usize {
        seq.iter()
            .map(|f| match f {
                Prime::Op(op, args) => usize::from(*op == self.p) + self.deg_p(args[0].factors()),
                _ => 0,
            })
            .sum()
    }

    /// Sum over all `D`-nodes of the squared letter degree of the argument.
    fn d_mass(&self, seq: &[Prime]) -> usize {
        seq.iter()
            .map(|f| match f {
                Prime::Op(op, args) => {
                    let inner = args[0].factors();
                    let own = if *op == self.d {
                        deg_x(inner).pow(2)
                    } else {
                        0
                    };
                    own + self.d_mass(inner)
                }
                _ => 0,
            })
            .sum()
    }

    fn cmp_seq(&self, u: &[Prime], v: &[Prime]) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        let (ub, up) = self.split(u);
        let (vb, vp) = self.split(v);
        deg_x(u)
            .cmp(&deg_x(v))
            .then_with(|| self.deg_p(u).cmp(&self.deg_p(v)))
            .then_with(|| self.d_mass(u).cmp(&self.d_mass(v)))
            .then_with(|| up.len().cmp(&vp.len()))
            .then_with(|| {
                up.iter()
                    .zip(&vp)
                    .map(|(a, b)| self.cmp_seq(a, b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| {
                ub.iter()
                    .zip(&vb)
                    .map(|(a, b)| self.cmp_block(a, b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }

    fn split<'a>(&self, seq: &'a [Prime]) -> (Vec<&'a [Prime]>, Vec<&'a [Prime]>) {
        let mut blocks = Vec::new();
        let mut args = Vec::new();
        let mut start = 0;
        for (i, f) in seq.iter().enumerate() {
            if let Prime::Op(op, a) = f {
                if *op == self.p {
                    blocks.push(&seq[start..i]);
                    args.push(a[0].factors());
                    start = i + 1;
                }
            }
        }
        blocks.push(&seq[start..]);
        (blocks, args)
    }

    fn cmp_block(&self, u: &[Prime], v: &[Prime]) -> Ordering {
        deg_x(u)
            .cmp(&deg_x(v))
            .then_with(|| self.deg_p(u).cmp(&self.deg_p(v)))
            .then_with(|| factorwise(u, v, |a, b| self.cmp_factor(a, b)))
    }

    fn cmp_factor(&self, a: &Prime, b: &Prime) -> Ordering {
        match (a, b) {
            (Prime::Letter(x), Prime::Letter(y)) => rank_letter(*x, *y),
            (Prime::Op(..), Prime::Letter(_)) => Ordering::Greater,
            (Prime::Letter(_), Prime::Op(..)) => Ordering::Less,
            (Prime::Op(_, xa), Prime::Op(_, ya)) => self.cmp_seq(xa[0].factors(), ya[0].factors()),
            _ => panic!("holes and metavariables are not ordered"),
        }
    }
}

/// The literal tuple for the third order, without the `D`-mass component.
/// Kept to demonstrate that it does not orient the differential rule.
pub fn order3_unrepaired(sig: &Signature, u: &Word, v: &Word) -> Result<Ordering> {
    let order = MonomialOrder::new(OrderKind::Order3, sig)?;
    let o = O3 {
        p: order.p.expect("P"),
        d: order.d.expect("D"),
    };
    fn go(o: &O3, u: &[Prime], v: &[Prime]) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        let (ub, up) = o.split(u);
        let (vb, vp) = o.split(v);
        deg_x(u)
            .cmp(&deg_x(v))
            .then_with(|| o.deg_p(u).cmp(&o.deg_p(v)))
            .then_with(|| up.len().cmp(&vp.len()))
            .then_with(|| {
                up.iter()
                    .zip(&vp)
                    .map(|(a, b)| go(o, a, b))
                    .find(|x| x.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| {
                ub.iter()
                    .zip(&vb)
                    .map(|(a, b)| {
                        deg_x(a)
                            .cmp(&deg_x(b))
                            .then_with(|| o.deg_p(a).cmp(&o.deg_p(b)))
                            .then_with(|| {
                                factorwise(a, b, |x, y| match (x, y) {
                                    (Prime::Op(_, xa), Prime::Op(_, ya)) => {
                                        go(o, xa[0].factors(), ya[0].factors())
                                    }
                                    _ => o.cmp_factor(x, y),
                                })
                            })
                    })
                    .find(|x| x.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
    Ok(go(&o, u.factors(), v.factors()))
}

/// A detected failure of one of the monomial-order axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Totality {
        u: Word,
        v: Word,
    },
    Antisymmetry {
        u: Word,
        v: Word,
    },
    Transitivity {
        u: Word,
        v: Word,
        w: Word,
    },
    Compatibility {
        context: StarWord,
        greater: Word,
        smaller: Word,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialReport {
    pub words: usize,
    pub pairs: usize,
    pub triples: usize,
    pub context_checks: usize,
    pub violations: Vec<Violation>,
}

impl MonomialReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks the order axioms on every word of weight at most
/// `max_weight`, plus compatibility under `samples` random contexts per pair
/// drawn from the contexts of the same weight bound.
pub fn check_monomial_property(
    order: &MonomialOrder,
    sig: &Signature,
    max_weight: usize,
    samples: usize,
    seed: u64,
) -> MonomialReport {
    const MAX_REPORTED: usize = 20;
    let words = enumerate_words(sig, max_weight);
    let n = words.len();
    let mut report = MonomialReport {
        words: n,
        ..Default::default()
    };
    let mut table = vec![Ordering::Equal; n * n];
    for i in 0..n {
        for j in 0..n {
            let o = order.compare(&words[i], &words[j]);
            table[i * n + j] = o;
            report.pairs += 1;
            if (o == Ordering::Equal) != (i == j) {
                report.violations.push(Violation::Totality {
                    u: words[i].clone(),
                    v: words[j].clone(),
                });
            }
            if j < i && table[j * n + i] != o.reverse() {
                report.violations.push(Violation::Antisymmetry {
                    u: words[i].clone(),
                    v: words[j].clone(),
                });
            }
        }
    }
    'outer: for i in 0..n {
        for j in 0..n {
            if table[i * n + j] != Ordering::Greater {
                continue;
            }
            for k in 0..n {
                if table[j * n + k] != Ordering::Greater {
                    continue;
                }
                report.triples += 1;
                if table[i * n + k] != Ordering::Greater {
                    report.violations.push(Violation::Transitivity {
                        u: words[i].clone(),
                        v: words[j].clone(),
                        w: words[k].clone(),
                    });
                    if report.violations.len() >= MAX_REPORTED {
                        break 'outer;
                    }
                }
            }
        }
    }
    let contexts = enumerate_contexts(sig, max_weight);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n {
        for j in 0..n {
            if table[i * n + j] != Ordering::Greater {
                continue;
            }
            for c in contexts.choose_multiple(&mut rng, samples) {
                report.context_checks += 1;
                let (a, b) = (c.substitute(&words[i]), c.substitute(&words[j]));
                if order.compare(&a, &b) != Ordering::Greater
                    && report.violations.len() < MAX_REPORTED
                {
                    report.violations.push(Violation::Compatibility {
                        context: c.clone(),
                        greater: words[i].clone(),
                        smaller: words[j].clone(),
                    });
                }
            }
        }
    }
    report
}
