//! Elimination of the leading word: redex search, normal forms and traces.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::orders::MonomialOrder;
use crate::poly::OmegaPolynomial;
use crate::scalar::Scalar;
use crate::schema::{binding_words, match_prefix, Binding, RuleSchema};
use crate::terms::{enumerate_words, Prime, Signature, Site, StarWord, Word};

pub const DEFAULT_FUEL: usize = 10_000;

/// Where redexes are looked for first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Positions left to right, each position before the words nested in it.
    #[default]
    LeftmostOutermost,
    /// Positions right to left, nested words before their enclosing position.
    RightmostInnermost,
}

/// A rule instance located in a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub site: Site,
    pub rule: usize,
    pub assignment: Vec<Word>,
}

/// A set of monic rules over one signature and monomial order.
#[derive(Clone, Debug)]
pub struct RewriteSystem<C> {
    name: String,
    sig: Signature,
    order: MonomialOrder,
    rules: Vec<RuleSchema<C>>,
}

/// One ELW step: `coeff·word` was replaced by `coeff·replacement`.
#[derive(Clone, Debug, PartialEq)]
pub struct Step<C> {
    pub word: Word,
    pub coeff: C,
    pub context: StarWord,
    pub rule: usize,
    pub assignment: Vec<Word>,
    pub replacement: OmegaPolynomial<C>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReductionTrace<C> {
    pub steps: Vec<Step<C>>,
}

impl<C: Scalar> ReductionTrace<C> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One line per step: `<word> --[rule@assignment]--> <replacement>`.
    pub fn render(&self, sys: &RewriteSystem<C>) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let rule = &sys.rules[s.rule];
            let tag = if rule.is_concrete() {
                rule.name().to_string()
            } else {
                format!(
                    "{}@{}",
                    rule.name(),
                    rule.show_assignment(&sys.sig, &s.assignment)
                )
            };
            out.push_str(&format!(
                "{} --[{}]--> {}\n",
                sys.sig.show(&s.word),
                tag,
                s.replacement.display(&sys.sig, &sys.order)
            ));
        }
        out
    }

    /// True when the rewritten words strictly decrease.
    pub fn is_descending(&self, order: &MonomialOrder) -> bool {
        self.steps
            .windows(2)
            .all(|p| order.greater(&p[0].word, &p[1].word))
    }
}

/// Failure of a normal-form computation.
#[derive(Clone, Debug)]
pub enum ReductionError<C> {
    Rule(Error),
    /// The step budget ran out; carries the polynomial and trace so far.
    FuelExhausted {
        fuel: usize,
        partial: OmegaPolynomial<C>,
        trace: ReductionTrace<C>,
    },
}

impl<C> fmt::Display for ReductionError<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::Rule(e) => e.fmt(f),
            ReductionError::FuelExhausted { fuel, trace, .. } => {
                write!(
                    f,
                    "reduction did not terminate within {fuel} steps ({} recorded)",
                    trace.steps.len()
                )
            }
        }
    }
}

impl<C: fmt::Debug> std::error::Error for ReductionError<C> {}

impl<C> From<Error> for ReductionError<C> {
    fn from(e: Error) -> Self {
        ReductionError::Rule(e)
    }
}

impl<C> From<ReductionError<C>> for Error {
    fn from(e: ReductionError<C>) -> Self {
        match e {
            ReductionError::Rule(e) => e,
            ReductionError::FuelExhausted { fuel, trace, .. } => Error::FuelExhausted {
                fuel,
                steps: trace.steps.len(),
            },
        }
    }
}

struct ByOrder<'a> {
    w: Word,
    order: &'a MonomialOrder,
}

impl PartialEq for ByOrder<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.w == other.w
    }
}

impl Eq for ByOrder<'_> {}

impl PartialOrd for ByOrder<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByOrder<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.compare(&self.w, &other.w)
    }
}

impl<C: Scalar> RewriteSystem<C> {
    /// Concrete rules must already be oriented: every right-hand word below the left.
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        order: MonomialOrder,
        rules: Vec<RuleSchema<C>>,
    ) -> Result<Self> {
        let sys = RewriteSystem {
            name: name.into(),
            sig,
            order,
            rules,
        };
        for (i, r) in sys.rules.iter().enumerate() {
            r.lhs().check(&sys.sig)?;
            for w in r.rhs().words() {
                w.check(&sys.sig)?;
            }
            if r.is_concrete() {
                sys.oriented_instance(i, &[])?;
            }
        }
        Ok(sys)
    }

    /// A system of concrete rules, each made monic with its leading word as left side.
    pub fn from_polys(
        name: impl Into<String>,
        sig: Signature,
        order: MonomialOrder,
        polys: &[OmegaPolynomial<C>],
    ) -> Result<Self> {
        let mut rules = Vec::with_capacity(polys.len());
        for (i, f) in polys.iter().enumerate() {
            let f = f.make_monic(&order)?;
            let lhs = f.leading_word(&order)?.clone();
            rules.push(RuleSchema::from_relation(
                format!("r{}", i + 1),
                Vec::new(),
                lhs,
                &f,
            )?);
        }
        Self::new(name, sig, order, rules)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[RuleSchema<C>] {
        &self.rules
    }

    /// The same rules with some removed or added; names are kept.
    pub fn with_rules(&self, rules: Vec<RuleSchema<C>>) -> Result<Self> {
        Self::new(self.name.clone(), self.sig.clone(), self.order, rules)
    }

    /// Instantiates rule `rule` and checks that its left side leads.
    pub fn oriented_instance(
        &self,
        rule: usize,
        vals: &[Word],
    ) -> Result<(Word, OmegaPolynomial<C>)> {
        let r = &self.rules[rule];
        let (lhs, rhs) = r.instantiate(vals);
        for w in rhs.words() {
            if !self.order.greater(&lhs, w) {
                return Err(Error::NotOriented {
                    rule: r.name().to_string(),
                    assignment: r.show_assignment(&self.sig, vals),
                    detail: format!(
                        "{} is not above {} under {}",
                        self.sig.show(&lhs),
                        self.sig.show(w),
                        self.order.kind()
                    ),
                });
            }
        }
        Ok((lhs, rhs))
    }

    /// Matches of every rule starting at `seq[start]`, in rule order; `visit`
    /// returns `true` to stop.
    pub(crate) fn matches_at(
        &self,
        seq: &[Prime],
        start: usize,
        visit: &mut dyn FnMut(usize, usize, Vec<Word>) -> bool,
    ) -> bool {
        let Some(first) = seq.get(start) else {
            return false;
        };
        for (ri, r) in self.rules.iter().enumerate() {
            let pat = r.lhs().factors();
            let head_ok = match (&pat[0], first) {
                (Prime::Letter(a), Prime::Letter(b)) => a == b,
                (Prime::Op(a, _), Prime::Op(b, _)) => a == b,
                (Prime::Var(_), _) => true,
                _ => false,
            };
            if !head_ok {
                continue;
            }
            let mut bind: Binding<'_> = vec![None; r.vars().len()];
            let stop = match_prefix(pat, seq, start, &mut bind, &mut |end, bind| {
                visit(ri, end, binding_words(bind))
            });
            if stop {
                return true;
            }
        }
        false
    }

    /// The redex chosen by `strategy`, with its instance checked for orientation.
    pub fn find_redex(&self, w: &Word, strategy: Strategy) -> Result<Option<Redex>> {
        fn walk<C: Scalar>(
            sys: &RewriteSystem<C>,
            seq: &[Prime],
            path: &mut Vec<(usize, usize)>,
            strategy: Strategy,
        ) -> Option<Redex> {
            let here = |i: usize, path: &Vec<(usize, usize)>| {
                let mut found = None;
                sys.matches_at(seq, i, &mut |rule, end, assignment| {
                    found = Some(Redex {
                        site: Site {
                            path: path.clone(),
                            start: i,
                            end,
                        },
                        rule,
                        assignment,
                    });
                    true
                });
                found
            };
            let inner = |i: usize, path: &mut Vec<(usize, usize)>| -> Option<Redex> {
                if let Prime::Op(_, args) = &seq[i] {
                    let order: Vec<usize> = match strategy {
                        Strategy::LeftmostOutermost => (0..args.len()).collect(),
                        Strategy::RightmostInnermost => (0..args.len()).rev().collect(),
                    };
                    for j in order {
                        path.push((i, j));
                        let r = walk(sys, args[j].factors(), path, strategy);
                        path.pop();
                        if r.is_some() {
                            return r;
                        }
                    }
                }
                None
            };
            match strategy {
                Strategy::LeftmostOutermost => {
                    for i in 0..seq.len() {
                        if let Some(r) = here(i, path) {
                            return Some(r);
                        }
                        if let Some(r) = inner(i, path) {
                            return Some(r);
                        }
                    }
                }
                Strategy::RightmostInnermost => {
                    for i in (0..seq.len()).rev() {
                        if let Some(r) = inner(i, path) {
                            return Some(r);
                        }
                        if let Some(r) = here(i, path) {
                            return Some(r);
                        }
                    }
                }
            }
            None
        }
        let found = walk(self, w.factors(), &mut Vec::new(), strategy);
        if let Some(r) = &found {
            self.oriented_instance(r.rule, &r.assignment)?;
        }
        Ok(found)
    }

    /// Every rule instance occurring in `w`, in pre-order and rule order.
    pub fn all_redexes(&self, w: &Word) -> Vec<Redex> {
        let mut out = Vec::new();
        for (path, seq) in w.sequences() {
            for i in 0..seq.len() {
                self.matches_at(seq, i, &mut |rule, end, assignment| {
                    out.push(Redex {
                        site: Site {
                            path: path.clone(),
                            start: i,
                            end,
                        },
                        rule,
                        assignment,
                    });
                    false
                });
            }
        }
        out
    }

    /// `u|_{rhs}` for the redex `u|_{lhs}` of `w`.
    pub fn contract(&self, w: &Word, redex: &Redex) -> Result<OmegaPolynomial<C>> {
        let (_, rhs) = self.oriented_instance(redex.rule, &redex.assignment)?;
        Ok(OmegaPolynomial::from_terms(rhs.iter().map(|(r, c)| {
            (c.clone(), w.replace_at(&redex.site, r.factors()))
        })))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        let mut reducible = false;
        for (_, seq) in w.sequences() {
            for i in 0..seq.len() {
                if self.matches_at(seq, i, &mut |_, _, _| true) {
                    reducible = true;
                    break;
                }
            }
            if reducible {
                break;
            }
        }
        !reducible
    }

    /// Irreducible words of weight at most `max_weight`.
    pub fn enumerate_irr(&self, max_weight: usize) -> Vec<Word> {
        enumerate_words(&self.sig, max_weight)
            .into_iter()
            .filter(|w| self.is_irreducible(w))
            .collect()
    }

    fn step_at(
        &self,
        f: &OmegaPolynomial<C>,
        w: &Word,
        redex: Redex,
    ) -> Result<(OmegaPolynomial<C>, Step<C>)> {
        let coeff = f.coeff(w).expect("word occurs in f").clone();
        let replacement = self.contract(w, &redex)?;
        let mut g = f.clone();
        g.add_term(w.clone(), -coeff.clone());
        g.add_scaled(&coeff, &replacement);
        let step = Step {
            word: w.clone(),
            coeff,
            context: w.context_at(&redex.site),
            rule: redex.rule,
            assignment: redex.assignment,
            replacement,
        };
        Ok((g, step))
    }

    /// Rewrites the largest reducible word of `f` once.
    pub fn reduce_once(
        &self,
        f: &OmegaPolynomial<C>,
    ) -> Result<Option<(OmegaPolynomial<C>, Step<C>)>> {
        for (w, _) in f.sorted_terms(&self.order) {
            if let Some(redex) = self.find_redex(w, Strategy::LeftmostOutermost)? {
                return self.step_at(f, w, redex).map(Some);
            }
        }
        Ok(None)
    }

    pub fn normal_form(
        &self,
        f: &OmegaPolynomial<C>,
        fuel: usize,
    ) -> Result<(OmegaPolynomial<C>, ReductionTrace<C>), ReductionError<C>> {
        self.normal_form_with(f, fuel, Strategy::LeftmostOutermost)
    }

    /// Repeatedly rewrites the largest reducible word until none is left.
    pub fn normal_form_with(
        &self,
        f: &OmegaPolynomial<C>,
        fuel: usize,
        strategy: Strategy,
    ) -> Result<(OmegaPolynomial<C>, ReductionTrace<C>), ReductionError<C>> {
        let mut current = f.clone();
        let mut trace = ReductionTrace { steps: Vec::new() };
        let mut heap: BinaryHeap<ByOrder<'_>> = f
            .words()
            .map(|w| ByOrder {
                w: w.clone(),
                order: &self.order,
            })
            .collect();
        let mut done: HashSet<Word> = HashSet::new();
        while let Some(ByOrder { w, .. }) = heap.pop() {
            if current.coeff(&w).is_none() || done.contains(&w) {
                continue;
            }
            let Some(redex) = self.find_redex(&w, strategy)? else {
                done.insert(w);
                continue;
            };
            if trace.steps.len() >= fuel {
                return Err(ReductionError::FuelExhausted {
                    fuel,
                    partial: current,
                    trace,
                });
            }
            let (next, step) = self.step_at(&current, &w, redex)?;
            for r in step.replacement.words() {
                if current.coeff(r).is_none() && next.coeff(r).is_some() {
                    heap.push(ByOrder {
                        w: r.clone(),
                        order: &self.order,
                    });
                }
            }
            debug_assert!(trace
                .steps
                .last()
                .is_none_or(|s| self.order.greater(&s.word, &step.word)));
            trace.steps.push(step);
            current = next;
        }
        Ok((current, trace))
    }
}

/// Runs `f` on a thread with a stack large enough for deep normal forms.
pub fn with_large_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(s, f)
            .expect("spawn worker thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

impl<C: Scalar> OmegaPolynomial<C> {
    /// Checks `f == Σ c·u|_{relation}` for the recorded steps: replays the
    /// trace symbolically from `start`.
    pub fn replay(start: &Self, trace: &ReductionTrace<C>, sys: &RewriteSystem<C>) -> Result<Self> {
        let mut f = start.clone();
        for s in &trace.steps {
            let rel = sys.rules()[s.rule].relation(&s.assignment);
            let lifted = OmegaPolynomial::subst_linear(&s.context, &rel);
            f = f - lifted.scale(&s.coeff);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::OrderKind;
    use crate::syntax::{parse_poly, parse_word};
    use crate::{systems, Poly, RatFunc};

    fn rb3() -> RewriteSystem<RatFunc> {
        systems::rb_system(&["a", "b", "c"], RatFunc::lam()).unwrap()
    }

    #[test]
    fn one_step_on_the_rota_baxter_word() {
        let sys = rb3();
        let f: Poly = parse_poly(sys.sig(), "P(a)P(b)").unwrap();
        let (g, step) = sys.reduce_once(&f).unwrap().unwrap();
        assert_eq!(
            g,
            parse_poly(sys.sig(), "P(P(a)b) + P(aP(b)) + lam*P(ab)").unwrap()
        );
        assert!(step.context.is_identity());
        let xy: Poly = parse_poly(sys.sig(), "ab").unwrap();
        assert!(sys.reduce_once(&xy).unwrap().is_none());
    }

    #[test]
    fn traces_descend_and_replay_to_the_normal_form() {
        let sys = rb3();
        let f: Poly = parse_poly(sys.sig(), "P(a)P(b)P(c) + 2*P(P(a)P(b))").unwrap();
        let (nf, trace) = sys.normal_form(&f, DEFAULT_FUEL).unwrap();
        assert!(trace.is_descending(sys.order()));
        assert_eq!(Poly::replay(&f, &trace, &sys).unwrap(), nf);
        assert!(nf.words().all(|w| sys.is_irreducible(w)));
        let (again, t2) = sys.normal_form(&nf, DEFAULT_FUEL).unwrap();
        assert_eq!(again, nf);
        assert!(t2.is_empty());
    }

    #[test]
    fn fuel_exhaustion_keeps_partial_trace() {
        let sys = rb3();
        let f: Poly = parse_poly(sys.sig(), "P(a)P(b)P(c)").unwrap();
        match sys.normal_form(&f, 2) {
            Err(ReductionError::FuelExhausted { fuel: 2, trace, .. }) => assert_eq!(trace.len(), 2),
            other => panic!("expected fuel exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn memoized_and_faithful_normal_forms_agree() {
        let sys = rb3();
        let n = crate::normalizer::Normalizer::new(&sys);
        for text in [
            "P(a)P(b)P(c)",
            "P(P(a)P(b))P(c)",
            "P(a)P(P(b)P(c))",
            "aP(b)P(c)a",
        ] {
            let f: Poly = parse_poly(sys.sig(), text).unwrap();
            let (nf, _) = sys.normal_form(&f, DEFAULT_FUEL).unwrap();
            assert_eq!(n.nf_poly(&f).unwrap(), nf, "{text}");
        }
    }

    #[test]
    fn misoriented_rule_is_reported() {
        let sig = Signature::new(["a", "b"], [("P", 1)]).unwrap();
        let order = MonomialOrder::new(OrderKind::Order1, &sig).unwrap();
        let f: Poly = parse_poly(&sig, "P(a) - P(a)P(b)").unwrap();
        let lhs = parse_word(&sig, "P(a)").unwrap();
        let rule = RuleSchema::from_relation("bad", Vec::new(), lhs, &f).unwrap();
        assert!(matches!(
            RewriteSystem::new("bad", sig, order, vec![rule]),
            Err(Error::NotOriented { .. })
        ));
    }

    #[test]
    fn trace_rendering() {
        let sys = rb3();
        let f: Poly = parse_poly(sys.sig(), "P(a)P(b)").unwrap();
        let (_, trace) = sys.normal_form(&f, DEFAULT_FUEL).unwrap();
        assert_eq!(
            trace.render(&sys),
            "P(a)P(b) --[rb@x=a,y=b]--> P(P(a)b) + P(aP(b)) + lam*P(ab)\n"
        );
    }
}
