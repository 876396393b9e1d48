//! Ω-polynomials: finite linear combinations of Ω-words.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::orders::MonomialOrder;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::terms::{OpId, Signature, StarWord, Word};

/// A polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPolynomial<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> Default for OmegaPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> OmegaPolynomial<C> {
    pub fn zero() -> Self {
        OmegaPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(C::one(), w)
    }

    pub fn term(c: C, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (C, Word)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, w) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Word, C> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Adds `c·w` in place.
    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `c·f` in place.
    pub fn add_scaled(&mut self, c: &C, f: &Self) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &f.terms {
            self.add_term(w.clone(), c.clone() * a.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OmegaPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), c.clone() * a.clone()))
                .collect(),
        }
    }

    /// Bilinear extension of concatenation.
    pub fn mul_poly(&self, g: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &g.terms {
                out.add_term(u.concat(v), a.clone() * b.clone());
            }
        }
        out
    }

    /// Multilinear extension of `delta` applied to `args`.
    pub fn op_linear(sig: &Signature, delta: OpId, args: &[Self]) -> Result<Self> {
        if args.len() != sig.arity(delta) {
            return Err(Error::Arity {
                op: sig.op_name(delta).to_string(),
                expected: sig.arity(delta),
                got: args.len(),
            });
        }
        Ok(Self::op_unchecked(delta, args))
    }

    pub(crate) fn op_unchecked(delta: OpId, args: &[Self]) -> Self {
        let mut acc: Vec<(C, Vec<Word>)> = vec![(C::one(), Vec::new())];
        for a in args {
            let mut next = Vec::with_capacity(acc.len() * a.len());
            for (c, prefix) in &acc {
                for (w, b) in &a.terms {
                    let mut p = prefix.clone();
                    p.push(w.clone());
                    next.push((c.clone() * b.clone(), p));
                }
            }
            acc = next;
        }
        Self::from_terms(acc.into_iter().map(|(c, ws)| (c, Word::op(delta, ws))))
    }

    /// Linear extension of substitution into a context.
    pub fn subst_linear(c: &StarWord, f: &Self) -> Self {
        if c.is_identity() {
            return f.clone();
        }
        Self::from_terms(f.terms.iter().map(|(w, a)| (a.clone(), c.substitute(w))))
    }

    /// Terms in descending order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Word, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    pub fn leading(&self, order: &MonomialOrder) -> Result<(&Word, &C)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_word(&self, order: &MonomialOrder) -> Result<&Word> {
        self.leading(order).map(|(w, _)| w)
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Result<Self> {
        let (_, c) = self.leading(order)?;
        if c.is_one() {
            return Ok(self.clone());
        }
        let inv = c
            .inv()
            .ok_or_else(|| Error::NotInvertible(format!("{c:?}")))?;
        Ok(self.scale(&inv))
    }

    pub fn is_monic(&self, order: &MonomialOrder) -> bool {
        self.leading(order).is_ok_and(|(_, c)| c.is_one())
    }

    pub fn map_coeffs<D: Scalar>(
        &self,
        mut f: impl FnMut(&C) -> Result<D>,
    ) -> Result<OmegaPolynomial<D>> {
        let mut out = OmegaPolynomial::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Text form with terms in descending order, e.g. `P(P(x)y) + lam*P(xy)`.
    pub fn display(&self, sig: &Signature, order: &MonomialOrder) -> String {
        let terms = self.sorted_terms(order);
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            if !abs.is_one() {
                out.push_str(&abs.coeff_text());
                out.push('*');
            }
            out.push_str(&sig.show(w));
        }
        out
    }
}

impl OmegaPolynomial<RatFunc> {
    /// Evaluates every coefficient at `lam = q`.
    pub fn specialize_lambda(&self, q: &BigRational) -> Result<Self> {
        self.map_coeffs(|c| c.eval(q).map(RatFunc::rational))
    }
}

impl<C: Scalar> Add for OmegaPolynomial<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<C: Scalar> Add<&OmegaPolynomial<C>> for &OmegaPolynomial<C> {
    type Output = OmegaPolynomial<C>;

    fn add(self, rhs: &OmegaPolynomial<C>) -> OmegaPolynomial<C> {
        self.clone() + rhs.clone()
    }
}

impl<C: Scalar> Neg for OmegaPolynomial<C> {
    type Output = Self;

    fn neg(self) -> Self {
        OmegaPolynomial {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<C: Scalar> Sub for OmegaPolynomial<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Scalar> Sub<&OmegaPolynomial<C>> for &OmegaPolynomial<C> {
    type Output = OmegaPolynomial<C>;

    fn sub(self, rhs: &OmegaPolynomial<C>) -> OmegaPolynomial<C> {
        self.clone() - rhs.clone()
    }
}

impl<C: Scalar> Mul for &OmegaPolynomial<C> {
    type Output = OmegaPolynomial<C>;

    fn mul(self, rhs: &OmegaPolynomial<C>) -> OmegaPolynomial<C> {
        self.mul_poly(rhs)
    }
}

impl<C: Scalar> From<Word> for OmegaPolynomial<C> {
    fn from(w: Word) -> Self {
        Self::monomial(w)
    }
}

impl<C: Scalar> FromIterator<(C, Word)> for OmegaPolynomial<C> {
    fn from_iter<I: IntoIterator<Item = (C, Word)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}
