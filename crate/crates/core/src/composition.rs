//! Compositions of rule instances and the bounded Composition-Diamond check.
//!
//! Ambiguities come from two grids. The base grid instantiates every rule
//! with metavariable values of weight at most `B` and looks for overlaps
//! between such instances and for every rule instance occurring inside one.
//! The embedded grid puts an instance `ḡ` of weight up to `B` inside a
//! context of weight up to `C` and uses `u|ḡ` as the value of one
//! metavariable of another rule, the others staying within `B`; only values
//! heavier than `B` are generated there, so the two grids never repeat a
//! composition.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::normalizer::Normalizer;
use crate::orders::{MonomialOrder, OrderKind};
use crate::poly::OmegaPolynomial;
use crate::rewrite::{with_large_stack, ReductionError, RewriteSystem, DEFAULT_FUEL};
use crate::scalar::Scalar;
use crate::schema::instantiate_with_sites;
use crate::terms::{
    enumerate_contexts, enumerate_words, occurrence_sites, Signature, Site, StarWord, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

/// A rule together with the metavariable values of one of its instances.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleRef {
    pub rule: usize,
    pub assignment: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `w = f̄·tail = head·ḡ`.
    Intersection { head: Word, tail: Word },
    /// `w = f̄ = context|ḡ`.
    Inclusion { context: StarWord },
}

/// `poly` is `f·tail - head·g` or `f - context|g`; its leading word is
/// always strictly below the ambiguity `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct Composition<C> {
    pub w: Word,
    pub left: RuleRef,
    pub right: RuleRef,
    pub witness: Witness,
    pub poly: OmegaPolynomial<C>,
}

impl<C> Composition<C> {
    pub fn kind(&self) -> CompositionKind {
        match self.witness {
            Witness::Intersection { .. } => CompositionKind::Intersection,
            Witness::Inclusion { .. } => CompositionKind::Inclusion,
        }
    }
}

/// How the inner instance sits in the outer one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// A suffix of the left word is a prefix of the right word.
    Overlap,
    /// Inside the value of the named metavariable.
    Inside(String),
    /// Both left sides are the same word.
    Identical,
    /// Across the fixed part of the left pattern.
    Across,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Overlap => f.write_str("overlap"),
            Shape::Inside(v) => write!(f, "inside {v}"),
            Shape::Identical => f.write_str("identical"),
            Shape::Across => f.write_str("across"),
        }
    }
}

/// Ambiguities are grouped by the pair of rules involved and the shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyKey {
    pub left: String,
    pub right: String,
    pub shape: Shape,
}

impl FamilyKey {
    /// `"left∧right"`.
    pub fn pair(&self) -> String {
        format!("{}∧{}", self.left, self.right)
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.pair(), self.shape)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure<C> {
    pub composition: Composition<C>,
    pub normal_form: OmegaPolynomial<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyTally<C> {
    pub key: FamilyKey,
    /// The ambiguity written with metavariables, e.g. `P(u|P(x')P(y'))P(y)`.
    pub template: String,
    /// The first ambiguity word generated in this family.
    pub example: Word,
    pub compositions: usize,
    pub trivial: usize,
    pub failures: Vec<Failure<C>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GsbReport<C> {
    pub system: String,
    pub order: OrderKind,
    pub max_weight: usize,
    pub max_context: usize,
    pub families: Vec<FamilyTally<C>>,
}

impl<C> GsbReport<C> {
    pub fn is_gsb(&self) -> bool {
        self.families.iter().all(|f| f.failures.is_empty())
    }

    pub fn compositions(&self) -> usize {
        self.families.iter().map(|f| f.compositions).sum()
    }

    pub fn trivial(&self) -> usize {
        self.families.iter().map(|f| f.trivial).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = (&FamilyKey, &Failure<C>)> {
        self.families
            .iter()
            .flat_map(|f| f.failures.iter().map(move |x| (&f.key, x)))
    }

    pub fn family(&self, left: &str, right: &str, shape: &Shape) -> Option<&FamilyTally<C>> {
        self.families
            .iter()
            .find(|f| f.key.left == left && f.key.right == right && &f.key.shape == shape)
    }

    /// `(compositions, trivial)` per rule pair.
    pub fn pair_totals(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out = BTreeMap::new();
        for f in &self.families {
            let e = out.entry(f.key.pair()).or_insert((0, 0));
            e.0 += f.compositions;
            e.1 += f.trivial;
        }
        out
    }
}

/// An instantiated rule: leading word, monic relation and where each
/// metavariable value landed.
struct Instance<C> {
    rule: RuleRef,
    lead: Word,
    relation: OmegaPolynomial<C>,
    var_sites: Vec<Vec<Site>>,
}

impl<C: Scalar> Instance<C> {
    fn new(sys: &RewriteSystem<C>, rule: usize, assignment: Vec<Word>) -> Result<Self> {
        sys.oriented_instance(rule, &assignment)?;
        let schema = &sys.rules()[rule];
        let (lead, var_sites) = instantiate_with_sites(schema.lhs(), &assignment);
        let relation = schema.relation(&assignment);
        Ok(Instance {
            rule: RuleRef { rule, assignment },
            lead,
            relation,
            var_sites,
        })
    }

    fn concrete(poly: &OmegaPolynomial<C>, order: &MonomialOrder, id: usize) -> Result<Self> {
        let relation = poly.make_monic(order)?;
        let lead = relation.leading_word(order)?.clone();
        Ok(Instance {
            rule: RuleRef {
                rule: id,
                assignment: Vec::new(),
            },
            lead,
            relation,
            var_sites: Vec::new(),
        })
    }
}

fn checked<C: Scalar>(c: Composition<C>, order: &MonomialOrder) -> Result<Composition<C>> {
    if let Ok(top) = c.poly.leading_word(order) {
        if !order.greater(&c.w, top) {
            return Err(Error::Composition(format!(
                "composition does not descend: leading word {top:?} is not below {:?}",
                c.w
            )));
        }
    }
    Ok(c)
}

fn intersections<C: Scalar>(
    f: &Instance<C>,
    g: &Instance<C>,
    order: &MonomialOrder,
) -> Result<Vec<Composition<C>>> {
    let (ff, gf) = (f.lead.factors(), g.lead.factors());
    let (p, q) = (ff.len(), gf.len());
    let mut out = Vec::new();
    for k in 1..p.min(q) {
        if ff[p - k..] != gf[..k] {
            continue;
        }
        let head = Word::from_vec(ff[..p - k].to_vec());
        let tail = Word::from_vec(gf[k..].to_vec());
        let w = f.lead.concat(&tail);
        let left = f
            .relation
            .mul_poly(&OmegaPolynomial::monomial(tail.clone()));
        let right = OmegaPolynomial::monomial(head.clone()).mul_poly(&g.relation);
        out.push(checked(
            Composition {
                w,
                left: f.rule.clone(),
                right: g.rule.clone(),
                witness: Witness::Intersection { head, tail },
                poly: left - right,
            },
            order,
        )?);
    }
    Ok(out)
}

fn inclusion<C: Scalar>(
    f: &Instance<C>,
    site: &Site,
    g: &Instance<C>,
    order: &MonomialOrder,
) -> Result<Composition<C>> {
    let context = f.lead.context_at(site);
    debug_assert_eq!(context.substitute(&g.lead), f.lead);
    let poly = &f.relation - &OmegaPolynomial::subst_linear(&context, &g.relation);
    checked(
        Composition {
            w: f.lead.clone(),
            left: f.rule.clone(),
            right: g.rule.clone(),
            witness: Witness::Inclusion { context },
            poly,
        },
        order,
    )
}

/// All intersection compositions of two monic polynomials, by overlap length.
pub fn find_intersections<C: Scalar>(
    f: &OmegaPolynomial<C>,
    g: &OmegaPolynomial<C>,
    order: &MonomialOrder,
) -> Result<Vec<Composition<C>>> {
    intersections(
        &Instance::concrete(f, order, 0)?,
        &Instance::concrete(g, order, 1)?,
        order,
    )
}

/// All inclusion compositions of `g` in `f`; the trivial one is skipped when
/// `f == g`.
pub fn find_inclusions<C: Scalar>(
    f: &OmegaPolynomial<C>,
    g: &OmegaPolynomial<C>,
    order: &MonomialOrder,
) -> Result<Vec<Composition<C>>> {
    let fi = Instance::concrete(f, order, 0)?;
    let gi = Instance::concrete(g, order, 1)?;
    let same = fi.relation == gi.relation;
    occurrence_sites(&fi.lead, &gi.lead)
        .into_iter()
        .filter(|s| !(same && s.path.is_empty() && s.start == 0 && s.end == fi.lead.breadth()))
        .map(|s| inclusion(&fi, &s, &gi, order))
        .collect()
}

/// Reduces the composition with the faithful procedure; trivial when the
/// result is zero and every rewritten word lies below the ambiguity.
pub fn is_trivial<C: Scalar>(
    c: &Composition<C>,
    sys: &RewriteSystem<C>,
) -> Result<bool, ReductionError<C>> {
    let (nf, trace) = sys.normal_form(&c.poly, DEFAULT_FUEL)?;
    Ok(nf.is_zero()
        && trace
            .steps
            .iter()
            .all(|s| sys.order().greater(&c.w, &s.word)))
}

fn classify<C>(f: &Instance<C>, site: &Site, vars: &[String]) -> Shape {
    for (v, sites) in f.var_sites.iter().enumerate() {
        if sites.iter().any(|s| site.is_within(s)) {
            return Shape::Inside(vars[v].clone());
        }
    }
    if site.path.is_empty() && site.start == 0 && site.end == f.lead.breadth() {
        Shape::Identical
    } else {
        Shape::Across
    }
}

/// The ambiguity of a family written with metavariables; the inner rule's
/// metavariables are primed.
pub fn family_template<C: Scalar>(sys: &RewriteSystem<C>, key: &FamilyKey) -> String {
    let find = |name: &str| sys.rules().iter().find(|r| r.name() == name);
    let (Some(f), Some(g)) = (find(&key.left), find(&key.right)) else {
        return key.to_string();
    };
    let sig = sys.sig();
    let primed: Vec<String> = g.vars().iter().map(|v| format!("{v}'")).collect();
    let outer = sig.show_pattern(f.lhs(), f.vars());
    let inner = sig.show_pattern(g.lhs(), &primed);
    match &key.shape {
        Shape::Overlap => {
            let rest = &g.lhs().factors()[1..];
            if rest.is_empty() {
                return format!("{outer}·{inner}");
            }
            format!(
                "{outer}{}",
                sig.show_pattern(&Word::from_vec(rest.to_vec()), &primed)
            )
        }
        Shape::Inside(v) => {
            let names: Vec<String> = f
                .vars()
                .iter()
                .map(|n| {
                    if n == v {
                        format!("u|{inner}")
                    } else {
                        n.clone()
                    }
                })
                .collect();
            sig.show_pattern(f.lhs(), &names)
        }
        Shape::Identical => format!("{outer} = {inner}"),
        Shape::Across => format!("{outer} ⊃ {inner}"),
    }
}

/// Mixed-radix decoding of `idx` into `k` words of `words`.
fn assignment(words: &[Word], k: usize, mut idx: usize) -> Vec<Word> {
    let n = words.len();
    let mut out = vec![words[0].clone(); k];
    for slot in out.iter_mut().rev() {
        *slot = words[idx % n].clone();
        idx /= n;
    }
    out
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Base {
        rule: usize,
        idx: usize,
    },
    Embedded {
        rule: usize,
        var: usize,
        others: usize,
        ctx: usize,
    },
}

struct Grid<'s, C> {
    sys: &'s RewriteSystem<C>,
    max_weight: usize,
    words: Vec<Word>,
    contexts: Vec<StarWord>,
    instances: Vec<Vec<Instance<C>>>,
}

impl<'s, C: Scalar> Grid<'s, C> {
    fn new(sys: &'s RewriteSystem<C>, max_weight: usize, max_context: usize) -> Result<Self> {
        let words = enumerate_words(sys.sig(), max_weight);
        if words.is_empty() {
            return Err(Error::Composition(
                "no words within the weight bound".into(),
            ));
        }
        let contexts = enumerate_contexts(sys.sig(), max_context);
        let mut instances = Vec::with_capacity(sys.rules().len());
        for (ri, r) in sys.rules().iter().enumerate() {
            let k = r.vars().len();
            let count = words.len().pow(k as u32);
            let mut v = Vec::with_capacity(count);
            for idx in 0..count {
                v.push(Instance::new(sys, ri, assignment(&words, k, idx))?);
            }
            instances.push(v);
        }
        Ok(Grid {
            sys,
            max_weight,
            words,
            contexts,
            instances,
        })
    }

    fn tasks(&self) -> Vec<Task> {
        let mut out = Vec::new();
        for rule in 0..self.sys.rules().len() {
            out.extend((0..self.instances[rule].len()).map(|idx| Task::Base { rule, idx }));
        }
        for (rule, r) in self.sys.rules().iter().enumerate() {
            let k = r.vars().len();
            for var in 0..k {
                for others in 0..self.words.len().pow(k as u32 - 1) {
                    out.extend((0..self.contexts.len()).map(|ctx| Task::Embedded {
                        rule,
                        var,
                        others,
                        ctx,
                    }));
                }
            }
        }
        out
    }

    fn key(&self, f: usize, g: usize, shape: Shape) -> FamilyKey {
        let rules = self.sys.rules();
        FamilyKey {
            left: rules[f].name().to_string(),
            right: rules[g].name().to_string(),
            shape,
        }
    }

    fn run(
        &self,
        task: Task,
        emit: &mut dyn FnMut(FamilyKey, Composition<C>) -> Result<()>,
    ) -> Result<()> {
        let sys = self.sys;
        let order = sys.order();
        match task {
            Task::Base { rule, idx } => {
                let f = &self.instances[rule][idx];
                let vars = sys.rules()[rule].vars();
                for r in sys.all_redexes(&f.lead) {
                    let root = r.site.path.is_empty()
                        && r.site.start == 0
                        && r.site.end == f.lead.breadth();
                    if root && r.rule == rule && r.assignment == f.rule.assignment {
                        continue;
                    }
                    let g = Instance::new(sys, r.rule, r.assignment)?;
                    let shape = classify(f, &r.site, vars);
                    emit(
                        self.key(rule, g.rule.rule, shape),
                        inclusion(f, &r.site, &g, order)?,
                    )?;
                }
                for (gr, gs) in self.instances.iter().enumerate() {
                    for g in gs {
                        for c in intersections(f, g, order)? {
                            emit(self.key(rule, gr, Shape::Overlap), c)?;
                        }
                    }
                }
            }
            Task::Embedded {
                rule,
                var,
                others,
                ctx,
            } => {
                let schema = &sys.rules()[rule];
                let k = schema.vars().len();
                let ctx = &self.contexts[ctx];
                let rest = assignment(&self.words, k - 1, others);
                let mut vals = rest.clone();
                vals.insert(var, ctx.as_word().clone());
                let (skeleton, _) = instantiate_with_sites(schema.lhs(), &vals);
                let hole = skeleton.hole_site(0).expect("context has a hole");
                for (gr, gs) in self.instances.iter().enumerate() {
                    for g in gs {
                        if ctx.weight() - 1 + g.lead.weight() <= self.max_weight {
                            continue;
                        }
                        vals[var] = ctx.substitute(&g.lead);
                        let f = Instance::new(sys, rule, vals.clone())?;
                        let site = Site {
                            path: hole.path.clone(),
                            start: hole.start,
                            end: hole.start + g.lead.breadth(),
                        };
                        let shape = classify(&f, &site, schema.vars());
                        emit(self.key(rule, gr, shape), inclusion(&f, &site, g, order)?)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .stack_size(256 << 20)
        .build()
        .map_err(|e| Error::Composition(format!("cannot start worker threads: {e}")))
}

/// Every composition of the bounded grids, in generation order.
pub fn enumerate_compositions<C: Scalar>(
    sys: &RewriteSystem<C>,
    max_weight: usize,
    max_context: usize,
    threads: usize,
) -> Result<Vec<(FamilyKey, Composition<C>)>> {
    let grid = Grid::new(sys, max_weight, max_context)?;
    let tasks = grid.tasks();
    let parts = pool(threads)?.install(|| {
        tasks
            .par_iter()
            .map(|&t| {
                let mut out = Vec::new();
                grid.run(t, &mut |k, c| {
                    out.push((k, c));
                    Ok(())
                })?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}

struct Partial<C> {
    example: Word,
    compositions: usize,
    trivial: usize,
    failures: Vec<Failure<C>>,
}

/// Checks every composition of the bounded grids for triviality.
pub fn check_gsb<C: Scalar>(
    sys: &RewriteSystem<C>,
    max_weight: usize,
    max_context: usize,
    threads: usize,
) -> Result<GsbReport<C>> {
    let grid = Grid::new(sys, max_weight, max_context)?;
    let tasks = grid.tasks();
    let normalizer = Normalizer::new(sys);
    let pool = pool(threads)?;
    let mut parts = Vec::with_capacity(tasks.len());
    // memoized data is dropped between chunks once it outgrows its budget
    for chunk in tasks.chunks(64 * threads.max(1)) {
        normalizer.trim();
        let done = pool.install(|| {
            chunk
                .par_iter()
                .map(|&t| {
                    let mut out: Vec<(FamilyKey, Partial<C>)> = Vec::new();
                    grid.run(t, &mut |key, c| {
                        let nf = normalizer.nf_poly(&c.poly)?;
                        let slot = match out.iter().position(|(k, _)| *k == key) {
                            Some(i) => i,
                            None => {
                                let fresh = Partial {
                                    example: c.w.clone(),
                                    compositions: 0,
                                    trivial: 0,
                                    failures: Vec::new(),
                                };
                                out.push((key, fresh));
                                out.len() - 1
                            }
                        };
                        let p = &mut out[slot].1;
                        p.compositions += 1;
                        if nf.is_zero() {
                            p.trivial += 1;
                        } else {
                            p.failures.push(Failure {
                                composition: c,
                                normal_form: nf,
                            });
                        }
                        Ok(())
                    })?;
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        parts.extend(done);
    }
    let mut families: BTreeMap<FamilyKey, FamilyTally<C>> = BTreeMap::new();
    for (key, p) in parts.into_iter().flatten() {
        let tally = families.entry(key.clone()).or_insert_with(|| FamilyTally {
            template: family_template(sys, &key),
            key,
            example: p.example,
            compositions: 0,
            trivial: 0,
            failures: Vec::new(),
        });
        tally.compositions += p.compositions;
        tally.trivial += p.trivial;
        tally.failures.extend(p.failures);
    }
    Ok(GsbReport {
        system: sys.name().to_string(),
        order: sys.order().kind(),
        max_weight,
        max_context,
        families: families.into_values().collect(),
    })
}

/// [`check_gsb`] on a thread with a large stack.
pub fn check_gsb_deep<C: Scalar>(
    sys: &RewriteSystem<C>,
    max_weight: usize,
    max_context: usize,
    threads: usize,
) -> Result<GsbReport<C>> {
    with_large_stack(|| check_gsb(sys, max_weight, max_context, threads))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionStep<C> {
    pub round: usize,
    pub ambiguity: Word,
    pub added: OmegaPolynomial<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Completion<C> {
    pub rules: Vec<OmegaPolynomial<C>>,
    pub log: Vec<CompletionStep<C>>,
    pub rounds: usize,
    /// No composition within the bound produced a new rule.
    pub saturated: bool,
}

/// Reduces every rule modulo the others until nothing changes.
fn interreduce<C: Scalar>(
    sig: &Signature,
    order: &MonomialOrder,
    mut rules: Vec<OmegaPolynomial<C>>,
) -> Result<Vec<OmegaPolynomial<C>>> {
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i < rules.len() {
            let others: Vec<_> = rules
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let sys = RewriteSystem::from_polys("others", sig.clone(), *order, &others)?;
            let nf = Normalizer::new(&sys).nf_poly(&rules[i])?;
            if nf.is_zero() {
                rules.remove(i);
                changed = true;
                continue;
            }
            let nf = nf.make_monic(order)?;
            if nf != rules[i] {
                rules[i] = nf;
                changed = true;
            }
            i += 1;
        }
    }
    Ok(rules)
}

/// Bounded Buchberger-style completion of a set of concrete relations.
pub fn complete<C: Scalar>(
    sig: &Signature,
    order: &MonomialOrder,
    rules: &[OmegaPolynomial<C>],
    max_weight: usize,
    max_rounds: usize,
) -> Result<Completion<C>> {
    with_large_stack(|| {
        let mut current = Vec::new();
        for r in rules {
            if r.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let m = r.make_monic(order)?;
            if !current.contains(&m) {
                current.push(m);
            }
        }
        current = interreduce(sig, order, current)?;
        let mut log = Vec::new();
        let mut rounds = 0;
        let mut saturated = false;
        while rounds < max_rounds {
            rounds += 1;
            let sys = RewriteSystem::from_polys("completion", sig.clone(), *order, &current)?;
            let normalizer = Normalizer::new(&sys);
            let mut added: Vec<OmegaPolynomial<C>> = Vec::new();
            for f in &current {
                for g in &current {
                    let mut comps = find_intersections(f, g, order)?;
                    comps.extend(find_inclusions(f, g, order)?);
                    for c in comps.into_iter().filter(|c| c.w.weight() <= max_weight) {
                        let nf = normalizer.nf_poly(&c.poly)?;
                        if nf.is_zero() {
                            continue;
                        }
                        let m = nf.make_monic(order)?;
                        if !added.contains(&m) {
                            log.push(CompletionStep {
                                round: rounds,
                                ambiguity: c.w.clone(),
                                added: m.clone(),
                            });
                            added.push(m);
                        }
                    }
                }
            }
            if added.is_empty() {
                saturated = true;
                break;
            }
            current.extend(added);
            current = interreduce(sig, order, current)?;
        }
        Ok(Completion {
            rules: current,
            log,
            rounds,
            saturated,
        })
    })
}
