//! Text grammar for words, polynomials and rule files.
//!
//! ```text
//! word  := prime+
//! prime := LETTER | OPNAME '(' word (',' word)* ')'
//! poly  := '0' | [sign] term (sign term)*
//! term  := [coeff '*'] word
//! coeff := rational | 'lam' ['^' n] | '(' expression in lam ')'
//! ```
//!
//! Letters are one lowercase ASCII letter followed by optional digits, so
//! `x1x2` is the product of `x1` and `x2`. Operator names start with an
//! uppercase letter. Whitespace is insignificant.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::orders::OrderKind;
use crate::poly::OmegaPolynomial;
use crate::scalar::Scalar;
use crate::terms::{Prime, Signature, Word};

#[derive(Clone, Debug, PartialEq)]
enum AstPrime {
    Name(String, usize),
    Op(String, Vec<Vec<AstPrime>>, usize),
}

type AstWord = Vec<AstPrime>;

/// A parsed polynomial whose symbols have not yet been resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyAst<C> {
    terms: Vec<(C, AstWord)>,
    line: usize,
    text: String,
}

struct Parser<'a, C> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    _coeff: std::marker::PhantomData<C>,
}

fn err_at(text: &str, line: usize, pos: usize, msg: impl Into<String>) -> Error {
    let col = text[..pos.min(text.len())].chars().count() + 1;
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

impl<'a, C: Scalar> Parser<'a, C> {
    fn new(text: &'a str, line: usize) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            line,
            _coeff: std::marker::PhantomData,
        }
    }

    fn text(&self) -> &'a str {
        std::str::from_utf8(self.src).expect("utf-8 input")
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        self.err_at(self.pos, msg)
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        err_at(self.text(), self.line, pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn poly(&mut self) -> Result<Vec<(C, AstWord)>> {
        let save = self.pos;
        if self.eat(b'0') && self.at_end() {
            return Ok(Vec::new());
        }
        self.pos = save;
        let mut terms = Vec::new();
        let mut sign = C::one();
        if self.eat(b'-') {
            sign = -sign;
        } else {
            self.eat(b'+');
        }
        loop {
            let (c, w) = self.term()?;
            terms.push((sign.clone() * c, w));
            if self.eat(b'+') {
                sign = C::one();
            } else if self.eat(b'-') {
                sign = -C::one();
            } else if self.at_end() {
                return Ok(terms);
            } else {
                return Err(self.err("expected `+`, `-` or end of input"));
            }
        }
    }

    fn term(&mut self) -> Result<(C, AstWord)> {
        let save = self.pos;
        let starts_lam = self.peek() == Some(b'l');
        match self.coeff()? {
            Some(c) if self.eat(b'*') => Ok((c, self.word()?)),
            Some(_) if starts_lam => {
                // `lam` without `*` is the word l·a·m
                self.pos = save;
                Ok((C::one(), self.word()?))
            }
            Some(_) => Err(self.err_at(
                save,
                "constant terms are not allowed: the algebra has no unit",
            )),
            None => Ok((C::one(), self.word()?)),
        }
    }

    /// A coefficient, or `None` if the input does not start with one.
    fn coeff(&mut self) -> Result<Option<C>> {
        match self.peek() {
            Some(b'0'..=b'9') => Ok(Some(self.rational()?)),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(Some(v))
            }
            Some(b'l') if self.src[self.pos..].starts_with(b"lam") => {
                let after = self.src.get(self.pos + 3).copied();
                if after.is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return Ok(None);
                }
                self.pos += 3;
                let lam = self.lambda()?;
                if self.eat(b'^') {
                    let k = self.natural()?;
                    Ok(Some(pow(lam, k)))
                } else {
                    Ok(Some(lam))
                }
            }
            _ => Ok(None),
        }
    }

    fn lambda(&self) -> Result<C> {
        C::lambda().ok_or_else(|| self.err("`lam` is not available with rational coefficients"))
    }

    fn natural(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text()[start..self.pos]
            .parse()
            .map_err(|_| self.err_at(start, "expected a natural number"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text()[start..self.pos]
            .parse()
            .map_err(|_| self.err_at(start, "expected an integer"))
    }

    fn rational(&mut self) -> Result<C> {
        let n = self.integer()?;
        let save = self.pos;
        if self.eat(b'/') {
            if matches!(self.peek(), Some(b'0'..=b'9')) {
                let start = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.err_at(start, "division by zero"));
                }
                return Ok(C::from_rational(BigRational::new(n, d)));
            }
            self.pos = save;
        }
        Ok(C::from_rational(BigRational::from_integer(n)))
    }

    fn expr(&mut self) -> Result<C> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.product()?;
            } else if self.eat(b'-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<C> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(self.err_at(at, "division by zero"));
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<C> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = match self.peek() {
            Some(b'0'..=b'9') => C::from_rational(BigRational::from_integer(self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                v
            }
            Some(b'l') if self.src[self.pos..].starts_with(b"lam") => {
                self.pos += 3;
                self.lambda()?
            }
            _ => return Err(self.err("expected a number, `lam` or `(`")),
        };
        if self.eat(b'^') {
            let k = self.natural()?;
            Ok(pow(base, k))
        } else {
            Ok(base)
        }
    }

    fn word(&mut self) -> Result<AstWord> {
        let mut out = Vec::new();
        while let Some(b) = self.peek() {
            if b.is_ascii_lowercase() {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                out.push(AstPrime::Name(
                    self.text()[start..self.pos].to_string(),
                    start,
                ));
            } else if b.is_ascii_uppercase() {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = self.text()[start..self.pos].to_string();
                self.expect(b'(')?;
                let mut args = Vec::new();
                if self.peek() == Some(b')') {
                    return Err(
                        self.err_at(start, format!("operator {name} applied to no arguments"))
                    );
                }
                loop {
                    args.push(self.word()?);
                    if self.eat(b',') {
                        continue;
                    }
                    self.expect(b')')?;
                    break;
                }
                out.push(AstPrime::Op(name, args, start));
            } else {
                break;
            }
        }
        if out.is_empty() {
            return Err(self.err("expected a word"));
        }
        Ok(out)
    }
}

fn pow<C: Scalar>(base: C, k: u32) -> C {
    (0..k).fold(C::one(), |acc, _| acc * base.clone())
}

impl<C: Scalar> PolyAst<C> {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 1)
    }

    pub fn parse_at(text: &str, line: usize) -> Result<Self> {
        let mut p = Parser::<C>::new(text, line);
        let terms = p.poly()?;
        Ok(PolyAst {
            terms,
            line,
            text: text.to_string(),
        })
    }

    /// Letter names and operator declarations mentioned in the text.
    pub fn collect_symbols(&self, letters: &mut BTreeSet<String>, ops: &mut Vec<(String, usize)>) {
        fn go(w: &[AstPrime], letters: &mut BTreeSet<String>, ops: &mut Vec<(String, usize)>) {
            for p in w {
                match p {
                    AstPrime::Name(n, _) => {
                        letters.insert(n.clone());
                    }
                    AstPrime::Op(n, args, _) => {
                        if !ops.iter().any(|(m, _)| m == n) {
                            ops.push((n.clone(), args.len()));
                        }
                        args.iter().for_each(|a| go(a, letters, ops));
                    }
                }
            }
        }
        for (_, w) in &self.terms {
            go(w, letters, ops);
        }
    }

    /// Resolves names against `sig`; names listed in `vars` become metavariables.
    pub fn resolve(&self, sig: &Signature, vars: &[String]) -> Result<OmegaPolynomial<C>> {
        let mut out = OmegaPolynomial::zero();
        for (c, w) in &self.terms {
            out.add_term(self.resolve_word(sig, vars, w)?, c.clone());
        }
        Ok(out)
    }

    /// The first term's word, as written.
    pub fn first_word(&self, sig: &Signature, vars: &[String]) -> Result<Option<Word>> {
        self.terms
            .first()
            .map(|(_, w)| self.resolve_word(sig, vars, w))
            .transpose()
    }

    fn resolve_word(&self, sig: &Signature, vars: &[String], w: &[AstPrime]) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len());
        for p in w {
            match p {
                AstPrime::Name(n, pos) => {
                    if let Some(i) = vars.iter().position(|v| v == n) {
                        out.push(Prime::Var(i as u32));
                    } else if let Some(l) = sig.letter(n) {
                        out.push(Prime::Letter(l));
                    } else {
                        return Err(err_at(
                            &self.text,
                            self.line,
                            *pos,
                            format!("unknown letter `{n}`"),
                        ));
                    }
                }
                AstPrime::Op(n, args, pos) => {
                    let op = sig.op(n).ok_or_else(|| {
                        err_at(
                            &self.text,
                            self.line,
                            *pos,
                            format!("unknown operator `{n}`"),
                        )
                    })?;
                    if sig.arity(op) != args.len() {
                        return Err(err_at(
                            &self.text,
                            self.line,
                            *pos,
                            format!(
                                "operator {n} expects {} argument(s), got {}",
                                sig.arity(op),
                                args.len()
                            ),
                        ));
                    }
                    let args = args
                        .iter()
                        .map(|a| self.resolve_word(sig, vars, a))
                        .collect::<Result<Vec<_>>>()?;
                    out.push(Prime::Op(op, args.into()));
                }
            }
        }
        Word::new(out)
    }
}

/// Parses a polynomial over `sig`.
pub fn parse_poly<C: Scalar>(sig: &Signature, text: &str) -> Result<OmegaPolynomial<C>> {
    PolyAst::<C>::parse(text)?.resolve(sig, &[])
}

/// Parses a single word over `sig`.
pub fn parse_word(sig: &Signature, text: &str) -> Result<Word> {
    parse_pattern(sig, &[], text)
}

/// Parses a word in which the names in `vars` are metavariables.
pub fn parse_pattern(sig: &Signature, vars: &[String], text: &str) -> Result<Word> {
    let mut p = Parser::<BigRational>::new(text, 1);
    let w = p.word()?;
    if !p.at_end() {
        return Err(p.err("unexpected input after word"));
    }
    let ast = PolyAst::<BigRational> {
        terms: Vec::new(),
        line: 1,
        text: text.to_string(),
    };
    ast.resolve_word(sig, vars, &w)
}

/// Orders letter names by their alphabetic prefix, then numerically.
pub fn natural_letter_order(names: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = names.into_iter().collect();
    v.sort_by(|a, b| {
        let split = |s: &str| {
            let (head, digits) = s.split_at(1);
            (head.to_string(), digits.parse::<u64>().ok(), digits.len())
        };
        split(a).cmp(&split(b))
    });
    v.dedup();
    v
}

/// A parsed rule file.
///
/// One polynomial per line; `#` starts a comment. Directives:
/// `@vars x y` declares metavariables for the lines that follow,
/// `@order o1`, `@ops P/1 D/1` and `@letters x y` configure the system.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleFile<C> {
    pub order: Option<OrderKind>,
    pub ops: Option<Vec<(String, usize)>>,
    pub letters: Option<Vec<String>>,
    pub rules: Vec<RuleLine<C>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuleLine<C> {
    pub line: usize,
    pub vars: Vec<String>,
    pub poly: PolyAst<C>,
}

impl<C: Scalar> RuleFile<C> {
    pub fn parse(text: &str) -> Result<Self> {
        let mut file = RuleFile {
            order: None,
            ops: None,
            letters: None,
            rules: Vec::new(),
        };
        let mut vars: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('@') {
                let mut parts = rest.split_whitespace();
                let key = parts.next().unwrap_or("");
                let col = raw.find('@').unwrap_or(0) + 1;
                let bad = |msg: String| Error::Parse { line, col, msg };
                match key {
                    "vars" => vars = parts.map(str::to_string).collect(),
                    "order" => {
                        let o = parts
                            .next()
                            .ok_or_else(|| bad("@order needs a value".into()))?;
                        file.order = Some(o.parse().map_err(|e: Error| bad(e.to_string()))?);
                    }
                    "ops" => {
                        let mut ops = Vec::new();
                        for decl in parts {
                            let (n, a) = decl.split_once('/').ok_or_else(|| {
                                bad(format!("operator declaration `{decl}` is not NAME/ARITY"))
                            })?;
                            let a = a
                                .parse()
                                .map_err(|_| bad(format!("bad arity in `{decl}`")))?;
                            ops.push((n.to_string(), a));
                        }
                        file.ops = Some(ops);
                    }
                    "letters" => file.letters = Some(parts.map(str::to_string).collect()),
                    other => return Err(bad(format!("unknown directive @{other}"))),
                }
                continue;
            }
            let poly = PolyAst::parse_at(content, line)?;
            if poly.terms.is_empty() {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: "a rule cannot be the zero polynomial".into(),
                });
            }
            file.rules.push(RuleLine {
                line,
                vars: vars.clone(),
                poly,
            });
        }
        Ok(file)
    }

    /// Letters and operators used by the rules, metavariables excluded.
    pub fn symbols(&self) -> (BTreeSet<String>, Vec<(String, usize)>) {
        let mut letters = BTreeSet::new();
        let mut ops = Vec::new();
        for r in &self.rules {
            let mut ls = BTreeSet::new();
            r.poly.collect_symbols(&mut ls, &mut ops);
            letters.extend(ls.into_iter().filter(|l| !r.vars.contains(l)));
        }
        (letters, ops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::MonomialOrder;
    use crate::{Poly, RatFunc};
    use num_traits::One;

    fn sig() -> Signature {
        Signature::new(["x", "y", "x1", "x2"], [("P", 1), ("D", 1), ("T", 2)]).unwrap()
    }

    #[test]
    fn words_and_products() {
        let s = sig();
        let w = parse_word(&s, "P(x)P(y)").unwrap();
        assert_eq!(w.breadth(), 2);
        assert_eq!(parse_word(&s, "x1x2").unwrap().breadth(), 2);
        assert_eq!(
            parse_word(&s, "x y").unwrap(),
            parse_word(&s, "xy").unwrap()
        );
        assert_eq!(s.show(&parse_word(&s, "T( x , y x )").unwrap()), "T(x,yx)");
    }

    #[test]
    fn relation_text() {
        let s = sig();
        let f: Poly = parse_poly(&s, "D(x y) - D(x) y - x D(y) - lam * D(x) D(y)").unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(
            f.coeff(&parse_word(&s, "D(x)D(y)").unwrap()),
            Some(&-RatFunc::lam())
        );
    }

    #[test]
    fn errors_carry_positions() {
        let s = sig();
        let e = parse_poly::<RatFunc>(&s, "P()").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 1,
                    col: 1,
                    ..
                }
            ),
            "{e}"
        );
        assert!(e.to_string().contains("no arguments"));
        let e = parse_poly::<RatFunc>(&s, "x + Q(y)").unwrap_err();
        assert!(matches!(e, Error::Parse { col: 5, .. }), "{e}");
        let e = parse_poly::<RatFunc>(&s, "T(x)").unwrap_err();
        assert!(e.to_string().contains("expects 2"));
        assert!(parse_poly::<RatFunc>(&s, "x +").is_err());
        assert!(parse_poly::<RatFunc>(&s, "3").is_err());
        assert!(parse_poly::<RatFunc>(&s, "(1/0)*x").is_err());
    }

    #[test]
    fn coefficients() {
        let s = sig();
        let f: Poly = parse_poly(&s, "((lam^2 + 1)/lam)*x").unwrap();
        assert!(parse_poly::<RatFunc>(&s, "(lam^2 + 1)/(lam)*x").is_err());
        let c = f.coeff(&parse_word(&s, "x").unwrap()).unwrap().clone();
        assert_eq!(c, (RatFunc::lam().pow(2) + RatFunc::one()) / RatFunc::lam());
        let g: Poly = parse_poly(&s, "lam^3*x - 2/3*y").unwrap();
        assert_eq!(g.len(), 2);
        assert!(parse_poly::<BigRational>(&s, "lam*x").is_err());
        assert!(parse_poly::<RatFunc>(&s, "0").unwrap().is_zero());
    }

    #[test]
    fn display_round_trips() {
        let s = sig();
        let o = MonomialOrder::new(crate::OrderKind::Order1, &s).unwrap();
        for text in [
            "P(P(x)y) + P(xP(y)) + lam*P(xy)",
            "-(1/lam)*D(x)y - (1/lam)*xD(y) + (1/lam)*D(xy)",
            "x - 1/2*y + (lam^2 + 1)*T(x,y)",
            "((lam + 1)/lam^2)*x1",
        ] {
            let f: Poly = parse_poly(&s, text).unwrap();
            let shown = f.display(&s, &o);
            assert_eq!(
                parse_poly::<RatFunc>(&s, &shown).unwrap(),
                f,
                "{text} -> {shown}"
            );
        }
    }

    #[test]
    fn rule_files() {
        let text =
            "# comment\n@vars x y\nP(x)P(y) - P(P(x)y) - P(xP(y))\n\n@vars\nP(a) - a # concrete\n";
        let f = RuleFile::<RatFunc>::parse(text).unwrap();
        assert_eq!(f.rules.len(), 2);
        assert_eq!(f.rules[0].vars, ["x", "y"]);
        assert_eq!(f.rules[1].line, 6);
        let (letters, ops) = f.symbols();
        assert_eq!(letters.into_iter().collect::<Vec<_>>(), ["a"]);
        assert_eq!(ops, [("P".to_string(), 1)]);
        let e = RuleFile::<RatFunc>::parse("@vars x\nP(x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn natural_order_of_letters() {
        let v = natural_letter_order(["x10", "y", "x2", "x", "a"].map(String::from));
        assert_eq!(v, ["a", "x", "x2", "x10", "y"]);
    }
}
