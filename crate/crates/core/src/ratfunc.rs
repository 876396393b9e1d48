//! Exact rational functions in the weight indeterminate `lam` over ℚ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_text, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<BigRational>);

// Integer operands skip the gcd normalization.
fn qadd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn qmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn constant(c: BigRational) -> Self {
        UPoly::new(vec![c])
    }

    /// `lam^k`.
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        UPoly(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        if c.is_zero() {
            return UPoly::default();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    fn add_ref(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        UPoly::new(
            (0..n)
                .map(|i| match (self.0.get(i), other.0.get(i)) {
                    (Some(a), Some(b)) => qadd(a, b),
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn neg_ref(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul_ref(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = qadd(&out[i + j], &qmul(a, b));
                }
            }
        }
        UPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.0[d].clone();
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return (UPoly::default(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn write(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = num_traits::Signed::is_negative(c);
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = c.abs();
            let power = match k {
                0 => String::new(),
                1 => "lam".to_string(),
                _ => format!("lam^{k}"),
            };
            if k == 0 {
                f.write_str(&rational_text(&a))?;
            } else if a.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{}*{}", rational_text(&a), power)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// Integer polynomial in `lam`. The built-in systems mostly produce
/// coefficients `±c·lam^k`, which are kept without allocating.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum IntPoly {
    /// At most one nonzero coefficient; zero is `c == 0, deg == 0`.
    Mono { c: i64, deg: u32 },
    /// At least two nonzero coefficients, ascending, no trailing zeros.
    Many(Box<[i64]>),
}

impl Default for IntPoly {
    fn default() -> Self {
        IntPoly::Mono { c: 0, deg: 0 }
    }
}

impl IntPoly {
    fn from_slice(v: &[i64]) -> IntPoly {
        let len = v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
        let v = &v[..len];
        match v.iter().filter(|&&x| x != 0).count() {
            0 => IntPoly::default(),
            1 => IntPoly::Mono {
                c: v[len - 1],
                deg: (len - 1) as u32,
            },
            _ => IntPoly::Many(v.into()),
        }
    }

    fn to_vec(&self) -> Vec<i64> {
        match self {
            IntPoly::Mono { c: 0, .. } => Vec::new(),
            IntPoly::Mono { c, deg } => {
                let mut v = vec![0; *deg as usize + 1];
                v[*deg as usize] = *c;
                v
            }
            IntPoly::Many(v) => v.to_vec(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, IntPoly::Mono { c: 0, .. })
    }

    fn constant(&self) -> Option<i64> {
        match self {
            IntPoly::Mono { c, deg: 0 } => Some(*c),
            IntPoly::Mono { c: 0, .. } => Some(0),
            _ => None,
        }
    }

    fn leading(&self) -> i64 {
        match self {
            IntPoly::Mono { c, .. } => *c,
            IntPoly::Many(v) => v[v.len() - 1],
        }
    }

    fn add(&self, other: &IntPoly) -> Option<IntPoly> {
        if let (IntPoly::Mono { c: a, deg: da }, IntPoly::Mono { c: b, deg: db }) = (self, other) {
            if da == db || *a == 0 || *b == 0 {
                let deg = if *a == 0 { *db } else { *da };
                let c = a.checked_add(*b)?;
                return Some(if c == 0 {
                    IntPoly::default()
                } else {
                    IntPoly::Mono { c, deg }
                });
            }
        }
        let (mut long, short) = (self.to_vec(), other.to_vec());
        if long.len() < short.len() {
            long.resize(short.len(), 0);
        }
        for (a, b) in long.iter_mut().zip(&short) {
            *a = a.checked_add(*b)?;
        }
        Some(IntPoly::from_slice(&long))
    }

    fn mul(&self, other: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() || other.is_zero() {
            return Some(IntPoly::default());
        }
        if let (IntPoly::Mono { c: a, deg: da }, IntPoly::Mono { c: b, deg: db }) = (self, other) {
            return Some(IntPoly::Mono {
                c: a.checked_mul(*b)?,
                deg: da.checked_add(*db)?,
            });
        }
        let (a, b) = (self.to_vec(), other.to_vec());
        let mut v = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = v[i + j].checked_add(x.checked_mul(*y)?)?;
            }
        }
        Some(IntPoly::from_slice(&v))
    }

    fn neg(&self) -> Option<IntPoly> {
        match self {
            IntPoly::Mono { c, deg } => Some(IntPoly::Mono {
                c: c.checked_neg()?,
                deg: *deg,
            }),
            IntPoly::Many(v) => v
                .iter()
                .map(|c| c.checked_neg())
                .collect::<Option<_>>()
                .map(IntPoly::Many),
        }
    }

    fn to_upoly(&self) -> UPoly {
        UPoly(
            self.to_vec()
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    fn from_upoly(p: &UPoly) -> Option<IntPoly> {
        let v: Vec<i64> =
            p.0.iter()
                .map(|c| {
                    if c.is_integer() {
                        i64::try_from(c.numer()).ok()
                    } else {
                        None
                    }
                })
                .collect::<Option<_>>()?;
        Some(IntPoly::from_slice(&v))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Int(IntPoly),
    /// Never representable as `Int`; the denominator is monic.
    Frac(Box<(UPoly, UPoly)>),
}

/// An element of ℚ(lam), kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc(Repr);

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn int(v: IntPoly) -> Self {
        RatFunc(Repr::Int(v))
    }

    /// Canonical form of `num/den` with a monic denominator.
    fn canonical(num: UPoly, den: UPoly) -> Self {
        if den.is_one() {
            if let Some(v) = IntPoly::from_upoly(&num) {
                return RatFunc::int(v);
            }
        }
        RatFunc(Repr::Frac(Box::new((num, den))))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.0[0].recip();
            return Self::canonical(num.scale(&inv), UPoly::constant(BigRational::one()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().expect("nonzero").clone();
        if lead.is_one() {
            Self::canonical(num, den)
        } else {
            let inv = lead.recip();
            Self::canonical(num.scale(&inv), den.scale(&inv))
        }
    }

    fn parts(&self) -> (UPoly, UPoly) {
        match &self.0 {
            Repr::Int(v) => (v.to_upoly(), UPoly::constant(BigRational::one())),
            Repr::Frac(f) => (f.0.clone(), f.1.clone()),
        }
    }

    /// `Some(true)` for 1, `Some(false)` for -1.
    fn unit(&self) -> Option<bool> {
        match &self.0 {
            Repr::Int(v) => match v.constant() {
                Some(1) => Some(true),
                Some(-1) => Some(false),
                _ => None,
            },
            Repr::Frac(_) => None,
        }
    }

    pub fn lam() -> Self {
        RatFunc::int(IntPoly::Mono { c: 1, deg: 1 })
    }

    pub fn rational(q: BigRational) -> Self {
        Self::canonical(UPoly::constant(q), UPoly::constant(BigRational::one()))
    }

    pub fn integer(n: i64) -> Self {
        RatFunc::int(IntPoly::from_slice(&[n]))
    }

    pub fn numer(&self) -> UPoly {
        self.parts().0
    }

    pub fn denom(&self) -> UPoly {
        self.parts().1
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(&self.0, Repr::Int(_)) || matches!(&self.0, Repr::Frac(f) if f.1.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Int(v) => v.constant().map(|c| BigRational::from_integer(c.into())),
            Repr::Frac(f) if f.1.is_one() => f.0.as_constant(),
            Repr::Frac(_) => None,
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RatFunc::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }

    /// Evaluates at `lam = at`.
    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let (num, den) = self.parts();
        let d = den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole {
                coeff: self.to_string(),
                at: rational_text(at),
            });
        }
        Ok(num.eval(at) / d)
    }

    pub fn try_recip(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::NotInvertible(self.to_string()))
        } else {
            let (num, den) = self.parts();
            Ok(Self::reduce(den, num))
        }
    }

    fn body(&self) -> String {
        let (num, den) = self.parts();
        let mut s = String::new();
        if den.is_one() {
            let _ = num.write(&mut s);
            return s;
        }
        let wrap = |p: &UPoly| {
            let mut t = String::new();
            let _ = p.write(&mut t);
            if t.chars().all(|c| c.is_ascii_alphanumeric() || c == '^') {
                t
            } else {
                format!("({t})")
            }
        };
        format!("{}/{}", wrap(&num), wrap(&den))
    }

    fn general_add(&self, rhs: &RatFunc) -> RatFunc {
        let ((an, ad), (bn, bd)) = (self.parts(), rhs.parts());
        if ad == bd {
            return RatFunc::reduce(an.add_ref(&bn), ad);
        }
        RatFunc::reduce(an.mul_ref(&bd).add_ref(&bn.mul_ref(&ad)), ad.mul_ref(&bd))
    }

    fn general_mul(&self, rhs: &RatFunc) -> RatFunc {
        let ((an, ad), (bn, bd)) = (self.parts(), rhs.parts());
        RatFunc::reduce(an.mul_ref(&bn), ad.mul_ref(&bd))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.body())
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::int(IntPoly::default())
    }

    fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Int(v) if v.is_zero())
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::integer(1)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        match self.0 {
            Repr::Int(v) => match v.neg() {
                Some(n) => RatFunc::int(n),
                None => {
                    RatFunc::canonical(v.to_upoly().neg_ref(), UPoly::constant(BigRational::one()))
                }
            },
            Repr::Frac(f) => {
                let (num, den) = *f;
                RatFunc::canonical(num.neg_ref(), den)
            }
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: RatFunc) -> RatFunc {
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.add(b) {
                return RatFunc::int(v);
            }
        }
        self.general_add(&rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: RatFunc) -> RatFunc {
        match (self.unit(), rhs.unit()) {
            (Some(true), _) => return rhs,
            (Some(false), _) => return -rhs,
            (_, Some(true)) => return self,
            (_, Some(false)) => return -self,
            _ => {}
        }
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.mul(b) {
                return RatFunc::int(v);
            }
        }
        self.general_mul(&rhs)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;

    /// Panics on division by zero; use [`RatFunc::try_recip`] to handle it.
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero in Q(lam)");
        if rhs.unit() == Some(true) {
            return self;
        }
        let ((an, ad), (bn, bd)) = (self.parts(), rhs.parts());
        RatFunc::reduce(an.mul_ref(&bd), ad.mul_ref(&bn))
    }
}

impl Scalar for RatFunc {
    fn from_rational(q: BigRational) -> Self {
        RatFunc::rational(q)
    }

    fn lambda() -> Option<Self> {
        Some(RatFunc::lam())
    }

    fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => v.leading() < 0,
            Repr::Frac(f) => f.0.leading().is_some_and(Signed::is_negative),
        }
    }

    fn coeff_text(&self) -> String {
        let a = if Scalar::is_negative(self) {
            -self.clone()
        } else {
            self.clone()
        };
        if let Some(q) = a.as_rational() {
            return rational_text(&q);
        }
        if a == RatFunc::lam() {
            return "lam".into();
        }
        format!("({})", a.body())
    }
}
