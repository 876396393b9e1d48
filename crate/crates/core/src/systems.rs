//! The Rota-Baxter, λ-differential and λ-differential Rota-Baxter systems,
//! their bases of irreducible words, and the closed-form product and
//! derivation algorithms.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::orders::{MonomialOrder, OrderKind};
use crate::poly::OmegaPolynomial;
use crate::rewrite::RewriteSystem;
use crate::scalar::Scalar;
use crate::schema::RuleSchema;
use crate::syntax::{natural_letter_order, RuleFile};
use crate::terms::{Letter, OpId, Prime, Signature, Word};

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn var(i: u32) -> Word {
    Word::var(i)
}

fn cat(ws: &[Word]) -> Word {
    ws.iter()
        .skip(1)
        .fold(ws[0].clone(), |acc, w| acc.concat(w))
}

/// `P(x)P(y) -> P(P(x)y) + P(xP(y)) + w·P(xy)`.
fn rota_baxter_rule<C: Scalar>(name: &str, p: OpId, weight: &C) -> Result<RuleSchema<C>> {
    let (x, y) = (var(0), var(1));
    let px = Word::unary(p, x.clone());
    let py = Word::unary(p, y.clone());
    let lhs = px.concat(&py);
    let rhs = OmegaPolynomial::from_terms([
        (C::one(), Word::unary(p, px.concat(&y))),
        (C::one(), Word::unary(p, x.concat(&py))),
        (weight.clone(), Word::unary(p, x.concat(&y))),
    ]);
    RuleSchema::new(name, vars(&["x", "y"]), lhs, rhs)
}

/// `D(xy) -> D(x)y + xD(y) + w·D(x)D(y)`.
fn leibniz_rule<C: Scalar>(name: &str, d: OpId, weight: &C) -> Result<RuleSchema<C>> {
    let (x, y) = (var(0), var(1));
    let dx = Word::unary(d, x.clone());
    let dy = Word::unary(d, y.clone());
    let lhs = Word::unary(d, x.concat(&y));
    let rhs = OmegaPolynomial::from_terms([
        (C::one(), dx.concat(&y)),
        (C::one(), x.concat(&dy)),
        (weight.clone(), dx.concat(&dy)),
    ]);
    RuleSchema::new(name, vars(&["x", "y"]), lhs, rhs)
}

fn letters_sig<S: AsRef<str>>(letters: &[S], ops: &[(&str, usize)]) -> Result<Signature> {
    Signature::new(
        letters.iter().map(|s| s.as_ref().to_string()),
        ops.iter().map(|(n, a)| (n.to_string(), *a)),
    )
}

/// Free Rota-Baxter algebra of the given weight, under the first order.
pub fn rb_system<C: Scalar, S: AsRef<str>>(letters: &[S], weight: C) -> Result<RewriteSystem<C>> {
    let sig = letters_sig(letters, &[("P", 1)])?;
    let p = sig.require_op("P")?;
    let order = MonomialOrder::new(OrderKind::Order1, &sig)?;
    let rule = rota_baxter_rule("rb", p, &weight)?;
    RewriteSystem::new("rb", sig, order, vec![rule])
}

/// Free λ-differential algebra presented by the Leibniz-type rule, under the second order.
pub fn diff_system<C: Scalar, S: AsRef<str>>(letters: &[S], weight: C) -> Result<RewriteSystem<C>> {
    let sig = letters_sig(letters, &[("D", 1)])?;
    let d = sig.require_op("D")?;
    let order = MonomialOrder::new(OrderKind::Order2, &sig)?;
    let rule = leibniz_rule("diff", d, &weight)?;
    RewriteSystem::new("diff", sig, order, vec![rule])
}

/// The same algebra presented by rewriting `D(x)D(y)`, under the first
/// order; needs an invertible weight.
pub fn diff_t_system<C: Scalar, S: AsRef<str>>(
    letters: &[S],
    weight: C,
) -> Result<RewriteSystem<C>> {
    let inv = weight
        .inv()
        .ok_or_else(|| Error::NotInvertible(format!("{weight:?}")))?;
    let sig = letters_sig(letters, &[("D", 1)])?;
    let d = sig.require_op("D")?;
    let order = MonomialOrder::new(OrderKind::Order1, &sig)?;
    let (x, y) = (var(0), var(1));
    let dx = Word::unary(d, x.clone());
    let dy = Word::unary(d, y.clone());
    let rhs = OmegaPolynomial::from_terms([
        (-inv.clone(), dx.concat(&y)),
        (-inv.clone(), x.concat(&dy)),
        (inv, Word::unary(d, x.concat(&y))),
    ]);
    let rule = RuleSchema::new("t", vars(&["x", "y"]), dx.concat(&dy), rhs)?;
    RewriteSystem::new("diff-t", sig, order, vec![rule])
}

/// Free λ-differential Rota-Baxter algebra: rules `1` (Rota-Baxter),
/// `2` (Leibniz) and `3` (`D(P(x)) -> x`), under the third order.
pub fn drb_system<C: Scalar, S: AsRef<str>>(letters: &[S], weight: C) -> Result<RewriteSystem<C>> {
    let sig = letters_sig(letters, &[("P", 1), ("D", 1)])?;
    let p = sig.require_op("P")?;
    let d = sig.require_op("D")?;
    let order = MonomialOrder::new(OrderKind::Order3, &sig)?;
    let section = RuleSchema::new(
        "3",
        vars(&["x"]),
        Word::unary(d, Word::unary(p, var(0))),
        OmegaPolynomial::monomial(var(0)),
    )?;
    let rules = vec![
        rota_baxter_rule("1", p, &weight)?,
        leibniz_rule("2", d, &weight)?,
        section,
    ];
    RewriteSystem::new("drb", sig, order, rules)
}

/// Signature of a rule file. `letters` overrides the file's `@letters`,
/// which overrides the letters found in the rules; operators come from
/// `@ops` or, failing that, from the rules.
pub fn rule_file_signature<C: Scalar>(
    file: &RuleFile<C>,
    letters: Option<&[String]>,
) -> Result<Signature> {
    let (found_letters, found_ops) = file.symbols();
    let letters = match (letters, &file.letters) {
        (Some(ls), _) => ls.to_vec(),
        (None, Some(ls)) => ls.clone(),
        (None, None) => natural_letter_order(found_letters),
    };
    let ops = file.ops.clone().unwrap_or(found_ops);
    Signature::new(letters, ops)
}

/// A system from a rule file. Lines without metavariables are oriented by
/// their leading word; for schema lines the first term as written is the
/// left side. The order is `order`, else the file's `@order`, else `o1`
/// (`deglex` when there are no operators).
pub fn from_rule_file<C: Scalar>(
    name: &str,
    file: &RuleFile<C>,
    letters: Option<&[String]>,
    order: Option<OrderKind>,
) -> Result<RewriteSystem<C>> {
    let sig = rule_file_signature(file, letters)?;
    let kind = order.or(file.order).unwrap_or(if sig.num_ops() == 0 {
        OrderKind::DegLex
    } else {
        OrderKind::Order1
    });
    let order = MonomialOrder::new(kind, &sig)?;
    let mut rules = Vec::with_capacity(file.rules.len());
    for (i, line) in file.rules.iter().enumerate() {
        let rel = line.poly.resolve(&sig, &line.vars)?;
        let lhs = if line.vars.is_empty() {
            rel.leading_word(&order)?.clone()
        } else {
            line.poly
                .first_word(&sig, &line.vars)?
                .ok_or(Error::ZeroPolynomial)?
        };
        rules.push(RuleSchema::from_relation(
            format!("r{}", i + 1),
            line.vars.clone(),
            lhs,
            &rel,
        )?);
    }
    RewriteSystem::new(name, sig, order, rules)
}

fn dedup_in_order(ws: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::with_capacity(ws.len());
    ws.into_iter().filter(|w| seen.insert(w.clone())).collect()
}

/// Words alternating between blocks from `ys` and factors `wrap(z)`, `z`
/// from `zs`, never two wrapped factors in a row, of weight at most
/// `max_weight`.
pub fn alternating_product(ys: &[Word], zs: &[Word], wrap: OpId, max_weight: usize) -> Vec<Word> {
    let ys: Vec<&Word> = ys.iter().filter(|w| w.weight() <= max_weight).collect();
    let wrapped: Vec<Word> = zs
        .iter()
        .filter(|z| z.weight() < max_weight)
        .map(|z| Word::unary(wrap, z.clone()))
        .collect();
    // (word, ends with a wrapped factor)
    let mut frontier: Vec<(Word, bool)> = ys
        .iter()
        .map(|y| ((*y).clone(), false))
        .chain(wrapped.iter().map(|p| (p.clone(), true)))
        .collect();
    let mut out = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, wrapped_last) in &frontier {
            let room = max_weight - w.weight();
            if *wrapped_last {
                for y in ys.iter().filter(|y| y.weight() <= room) {
                    next.push((w.concat(y), false));
                }
            } else {
                for p in wrapped.iter().filter(|p| p.weight() <= room) {
                    next.push((w.concat(p), true));
                }
            }
        }
        out.extend(frontier.into_iter().map(|(w, _)| w));
        frontier = next;
    }
    dedup_in_order(out)
}

/// Words over `base` letters only: the free semigroup on the letters, bounded.
pub fn letter_words(sig: &Signature, max_weight: usize) -> Vec<Word> {
    let letters: Vec<Word> = sig.letters().map(Word::letter).collect();
    let mut out = Vec::new();
    let mut layer = letters.clone();
    for _ in 0..max_weight {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |l| w.concat(l)))
            .collect();
        out.append(&mut layer);
        layer = next;
    }
    out
}

/// `Φ₀ = base`, `Φₙ = Λ(Φ₀, Φₙ₋₁)`, iterated to a fixpoint at the bound.
pub fn phi_over(base: &[Word], wrap: OpId, max_weight: usize) -> Vec<Word> {
    let mut current = dedup_in_order(
        base.iter()
            .filter(|w| w.weight() <= max_weight)
            .cloned()
            .collect(),
    );
    loop {
        let next = alternating_product(base, &current, wrap, max_weight);
        let grown: HashSet<&Word> = next.iter().collect();
        let stable = next.len() == current.len() && current.iter().all(|w| grown.contains(w));
        if stable {
            return next;
        }
        current = next;
    }
}

/// Rota-Baxter words on the letters of `sig` with `wrap` as the operator.
pub fn phi_words(sig: &Signature, wrap: OpId, max_weight: usize) -> Vec<Word> {
    phi_over(&letter_words(sig, max_weight), wrap, max_weight)
}

fn iterate(d: OpId, l: Letter, i: usize) -> Word {
    (0..i).fold(Word::letter(l), |w, _| Word::unary(d, w))
}

/// Products of iterated derivatives `D^i(x)`, bounded.
pub fn d_omega_monomials(sig: &Signature, d: OpId, max_weight: usize) -> Vec<Word> {
    let gens: Vec<Word> = (0..max_weight)
        .flat_map(|i| sig.letters().map(move |l| iterate(d, l, i)))
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Word> = gens.clone();
    while !layer.is_empty() {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                let room = max_weight - w.weight();
                gens.iter()
                    .filter(move |g| g.weight() <= room)
                    .map(move |g| w.concat(g))
            })
            .collect();
        out.append(&mut layer);
        layer = next;
    }
    out
}

/// Rota-Baxter words over the alphabet of iterated derivatives.
pub fn phi_d_omega(sig: &Signature, p: OpId, d: OpId, max_weight: usize) -> Vec<Word> {
    phi_over(&d_omega_monomials(sig, d, max_weight), p, max_weight)
}

/// No two `p`-factors adjacent at any depth.
pub fn is_rota_baxter_word(w: &Word, p: OpId) -> bool {
    let fs = w.factors();
    let is_p = |f: &Prime| matches!(f, Prime::Op(op, _) if *op == p);
    fs.windows(2)
        .all(|pair| !(is_p(&pair[0]) && is_p(&pair[1])))
        && fs.iter().all(|f| match f {
            Prime::Op(op, args) => *op == p && args.iter().all(|a| is_rota_baxter_word(a, p)),
            Prime::Letter(_) => true,
            _ => false,
        })
}

/// The product of two Rota-Baxter words in the free Rota-Baxter algebra,
/// by induction on the sum of their depths.
pub fn rb_product<C: Scalar>(
    u: &Word,
    v: &Word,
    p: OpId,
    weight: &C,
) -> Result<OmegaPolynomial<C>> {
    for w in [u, v] {
        if !is_rota_baxter_word(w, p) {
            return Err(Error::NotInBasis(format!(
                "{w:?} is not a Rota-Baxter word"
            )));
        }
    }
    Ok(diamond(u, v, p, weight))
}

fn diamond<C: Scalar>(u: &Word, v: &Word, p: OpId, weight: &C) -> OmegaPolynomial<C> {
    if u.depth() + v.depth() == 0 {
        return OmegaPolynomial::monomial(u.concat(v));
    }
    let (uf, vf) = (u.factors(), v.factors());
    if uf.len() == 1 && vf.len() == 1 {
        return match (&uf[0], &vf[0]) {
            (Prime::Op(_, ua), Prime::Op(_, va)) => {
                let (u1, v1) = (&ua[0], &va[0]);
                let wrap = |f: OmegaPolynomial<C>| {
                    OmegaPolynomial::from_terms(
                        f.iter()
                            .map(|(w, c)| (c.clone(), Word::unary(p, w.clone()))),
                    )
                };
                let mut out = wrap(diamond(u, v1, p, weight));
                out = out + wrap(diamond(u1, v, p, weight));
                out.add_scaled(weight, &wrap(diamond(u1, v1, p, weight)));
                out
            }
            _ => OmegaPolynomial::monomial(u.concat(v)),
        };
    }
    let head = &uf[..uf.len() - 1];
    let tail = &vf[1..];
    let mid = diamond(
        &Word::prime(uf[uf.len() - 1].clone()),
        &Word::prime(vf[0].clone()),
        p,
        weight,
    );
    OmegaPolynomial::from_terms(mid.iter().map(|(w, c)| {
        let mut f = head.to_vec();
        f.extend_from_slice(w.factors());
        f.extend_from_slice(tail);
        (c.clone(), Word::from_vec(f))
    }))
}

/// `Some((i, x))` when `p = D^i(x)`.
fn as_iterated(p: &Prime, d: OpId) -> Option<(usize, Letter)> {
    match p {
        Prime::Letter(l) => Some((0, *l)),
        Prime::Op(op, args) if *op == d && args[0].breadth() == 1 => {
            as_iterated(&args[0].factors()[0], d).map(|(i, l)| (i + 1, l))
        }
        _ => None,
    }
}

pub fn is_d_omega_monomial(w: &Word, d: OpId) -> bool {
    w.factors().iter().all(|f| as_iterated(f, d).is_some())
}

/// `D(u)` for a product `u` of iterated derivatives, by induction on the
/// number of factors.
pub fn d_extend<C: Scalar>(u: &Word, d: OpId, weight: &C) -> Result<OmegaPolynomial<C>> {
    let fs = u.factors();
    let mut gens = Vec::with_capacity(fs.len());
    for f in fs {
        let (i, l) = as_iterated(f, d).ok_or_else(|| {
            Error::NotInBasis("input is not a product of iterated derivatives".into())
        })?;
        gens.push((i, l));
    }
    Ok(derive(&gens, d, weight))
}

fn derive<C: Scalar>(gens: &[(usize, Letter)], d: OpId, weight: &C) -> OmegaPolynomial<C> {
    let (i, l) = gens[0];
    let d_first = OmegaPolynomial::monomial(iterate(d, l, i + 1));
    if gens.len() == 1 {
        return d_first;
    }
    let first = OmegaPolynomial::monomial(iterate(d, l, i));
    let rest = OmegaPolynomial::monomial(cat(&gens[1..]
        .iter()
        .map(|&(j, m)| iterate(d, m, j))
        .collect::<Vec<_>>()));
    let d_rest = derive(&gens[1..], d, weight);
    let mut out = d_first.mul_poly(&rest);
    out = out + first.mul_poly(&d_rest);
    out.add_scaled(weight, &d_first.mul_poly(&d_rest));
    out
}
