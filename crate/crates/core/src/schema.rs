//! Rule schemas: rewrite rules whose metavariables range over nonempty words.

use crate::error::{Error, Result};
use crate::poly::OmegaPolynomial;
use crate::scalar::Scalar;
use crate::terms::{Prime, Signature, Site, Word};

/// `lhs -> rhs`, where both sides may mention the metavariables `vars`.
/// A schema without metavariables is a single concrete rule.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleSchema<C> {
    name: String,
    vars: Vec<String>,
    lhs: Word,
    rhs: OmegaPolynomial<C>,
}

fn var_set(w: &Word, out: &mut Vec<u32>) {
    for p in w.factors() {
        match p {
            Prime::Var(v) => out.push(*v),
            Prime::Op(_, args) => args.iter().for_each(|a| var_set(a, out)),
            _ => {}
        }
    }
}

impl<C: Scalar> RuleSchema<C> {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<String>,
        lhs: Word,
        rhs: OmegaPolynomial<C>,
    ) -> Result<Self> {
        let name = name.into();
        let bad = |reason: String| Error::Schema {
            rule: name.clone(),
            reason,
        };
        if lhs.has_holes() || rhs.words().any(Word::has_holes) {
            return Err(bad("rules cannot contain holes".into()));
        }
        if lhs.factors().iter().all(|p| matches!(p, Prime::Var(_))) {
            return Err(bad(
                "the left-hand side must contain a letter or an operator".into(),
            ));
        }
        let mut in_lhs = Vec::new();
        var_set(&lhs, &mut in_lhs);
        let mut in_rhs = Vec::new();
        rhs.words().for_each(|w| var_set(w, &mut in_rhs));
        for v in in_lhs.iter().chain(&in_rhs) {
            if *v as usize >= vars.len() {
                return Err(bad(format!("undeclared metavariable #{v}")));
            }
        }
        for (i, name) in vars.iter().enumerate() {
            if !in_lhs.contains(&(i as u32)) {
                return Err(bad(format!(
                    "metavariable `{name}` does not occur in the left-hand side"
                )));
            }
        }
        Ok(RuleSchema {
            name,
            vars,
            lhs,
            rhs,
        })
    }

    /// Builds `lhs -> rhs` from a relation `c·lhs + rest`, i.e. `rhs = -rest / c`.
    pub fn from_relation(
        name: impl Into<String>,
        vars: Vec<String>,
        lhs: Word,
        relation: &OmegaPolynomial<C>,
    ) -> Result<Self> {
        let name = name.into();
        let c = relation.coeff(&lhs).cloned().ok_or_else(|| Error::Schema {
            rule: name.clone(),
            reason: "designated leading word does not occur in the relation".into(),
        })?;
        let inv = c.inv().expect("stored coefficients are nonzero");
        let mut rest = relation.clone();
        rest.add_term(lhs.clone(), -c);
        Self::new(name, vars, lhs, rest.scale(&-inv))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &OmegaPolynomial<C> {
        &self.rhs
    }

    pub fn is_concrete(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn instantiate(&self, vals: &[Word]) -> (Word, OmegaPolynomial<C>) {
        debug_assert_eq!(vals.len(), self.vars.len());
        if self.vars.is_empty() {
            return (self.lhs.clone(), self.rhs.clone());
        }
        let lhs = self.lhs.instantiate(vals);
        let rhs = OmegaPolynomial::from_terms(
            self.rhs
                .iter()
                .map(|(w, c)| (c.clone(), w.instantiate(vals))),
        );
        (lhs, rhs)
    }

    /// The monic relation `lhs - rhs` at an assignment.
    pub fn relation(&self, vals: &[Word]) -> OmegaPolynomial<C> {
        let (lhs, rhs) = self.instantiate(vals);
        let mut f = -rhs;
        f.add_term(lhs, C::one());
        f
    }

    pub fn show(&self, sig: &Signature) -> String {
        let rhs = if self.rhs.is_zero() {
            "0".to_string()
        } else {
            let mut out = String::new();
            for (i, (w, c)) in self.rhs.iter().enumerate() {
                let neg = c.is_negative();
                out.push_str(match (i, neg) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                });
                let abs = if neg { -c.clone() } else { c.clone() };
                if !abs.is_one() {
                    out.push_str(&abs.coeff_text());
                    out.push('*');
                }
                out.push_str(&sig.show_pattern(w, &self.vars));
            }
            out
        };
        format!("{} -> {}", sig.show_pattern(&self.lhs, &self.vars), rhs)
    }

    pub fn show_assignment(&self, sig: &Signature, vals: &[Word]) -> String {
        self.vars
            .iter()
            .zip(vals)
            .map(|(n, w)| format!("{n}={}", sig.show(w)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Instantiates `pat` and records, per metavariable, the sites its value
/// occupies in the result.
pub(crate) fn instantiate_with_sites(pat: &Word, vals: &[Word]) -> (Word, Vec<Vec<Site>>) {
    fn go(
        seq: &[Prime],
        vals: &[Word],
        path: &mut Vec<(usize, usize)>,
        sites: &mut [Vec<Site>],
    ) -> Vec<Prime> {
        let mut out = Vec::with_capacity(seq.len());
        for p in seq {
            match p {
                Prime::Var(v) => {
                    let val = vals[*v as usize].factors();
                    sites[*v as usize].push(Site {
                        path: path.clone(),
                        start: out.len(),
                        end: out.len() + val.len(),
                    });
                    out.extend_from_slice(val);
                }
                Prime::Op(op, args) => {
                    let at = out.len();
                    let args: Vec<Word> = args
                        .iter()
                        .enumerate()
                        .map(|(j, a)| {
                            path.push((at, j));
                            let w = Word::from_vec(go(a.factors(), vals, path, sites));
                            path.pop();
                            w
                        })
                        .collect();
                    out.push(Prime::Op(*op, args.into()));
                }
                other => out.push(other.clone()),
            }
        }
        out
    }
    let mut sites = vec![Vec::new(); vals.len()];
    let w = Word::from_vec(go(pat.factors(), vals, &mut Vec::new(), &mut sites));
    (w, sites)
}

pub(crate) type Binding<'w> = Vec<Option<&'w [Prime]>>;

/// Calls `k(end, binding)` for every way `pat` matches `seq[pos..end]`; stops
/// early and returns `true` as soon as `k` does.
pub(crate) fn match_prefix<'w>(
    pat: &[Prime],
    seq: &'w [Prime],
    pos: usize,
    bind: &mut Binding<'w>,
    k: &mut dyn FnMut(usize, &mut Binding<'w>) -> bool,
) -> bool {
    let Some((head, rest)) = pat.split_first() else {
        return k(pos, bind);
    };
    match head {
        Prime::Letter(_) => seq.get(pos) == Some(head) && match_prefix(rest, seq, pos + 1, bind, k),
        Prime::Op(op, pargs) => match seq.get(pos) {
            Some(Prime::Op(sop, sargs)) if sop == op && sargs.len() == pargs.len() => {
                match_args(pargs, sargs, bind, &mut |bind| {
                    match_prefix(rest, seq, pos + 1, bind, k)
                })
            }
            _ => false,
        },
        Prime::Var(v) => {
            let v = *v as usize;
            if let Some(bound) = bind[v] {
                let end = pos + bound.len();
                end <= seq.len() && &seq[pos..end] == bound && match_prefix(rest, seq, end, bind, k)
            } else {
                // each remaining pattern factor consumes at least one factor
                let reserve = rest.len();
                if seq.len() < pos + 1 + reserve {
                    return false;
                }
                for end in pos + 1..=seq.len() - reserve {
                    bind[v] = Some(&seq[pos..end]);
                    if match_prefix(rest, seq, end, bind, k) {
                        bind[v] = None;
                        return true;
                    }
                }
                bind[v] = None;
                false
            }
        }
        Prime::Hole(_) => false,
    }
}

fn match_args<'w>(
    pargs: &[Word],
    args: &'w [Word],
    bind: &mut Binding<'w>,
    k: &mut dyn FnMut(&mut Binding<'w>) -> bool,
) -> bool {
    let Some((p, prest)) = pargs.split_first() else {
        return k(bind);
    };
    let target = args[0].factors();
    match_prefix(p.factors(), target, 0, bind, &mut |end, bind| {
        end == target.len() && match_args(prest, &args[1..], bind, k)
    })
}

pub(crate) fn binding_words(bind: &Binding<'_>) -> Vec<Word> {
    bind.iter()
        .map(|s| {
            Word::from_vec(
                s.expect("every metavariable occurs in the left-hand side")
                    .to_vec(),
            )
        })
        .collect()
}

/// Every assignment under which `pat` equals `w` exactly.
pub fn match_word(pat: &Word, nvars: usize, w: &Word) -> Vec<Vec<Word>> {
    let mut out = Vec::new();
    let mut bind: Binding<'_> = vec![None; nvars];
    let seq = w.factors();
    match_prefix(pat.factors(), seq, 0, &mut bind, &mut |end, bind| {
        if end == seq.len() {
            out.push(binding_words(bind));
        }
        false
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_pattern, parse_word};
    use crate::RatFunc;

    fn sig() -> Signature {
        Signature::new(["a", "b", "c"], [("P", 1), ("D", 1)]).unwrap()
    }

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn variables_match_multi_factor_words() {
        let s = sig();
        let pat = parse_pattern(&s, &vars(), "P(x)P(y)").unwrap();
        let w = parse_word(&s, "P(ab)P(P(c))").unwrap();
        let m = match_word(&pat, 2, &w);
        assert_eq!(m.len(), 1);
        assert_eq!(s.show(&m[0][0]), "ab");
        assert_eq!(s.show(&m[0][1]), "P(c)");
    }

    #[test]
    fn splits_enumerated_in_order() {
        let s = sig();
        let pat = parse_pattern(&s, &vars(), "D(xy)").unwrap();
        let w = parse_word(&s, "D(abc)").unwrap();
        let m: Vec<String> = match_word(&pat, 2, &w)
            .iter()
            .map(|a| format!("{}|{}", s.show(&a[0]), s.show(&a[1])))
            .collect();
        assert_eq!(m, ["a|bc", "ab|c"]);
        assert!(match_word(&pat, 2, &parse_word(&s, "D(a)").unwrap()).is_empty());
    }

    #[test]
    fn nonlinear_patterns_require_equal_bindings() {
        let s = sig();
        let pat = parse_pattern(&s, &["x".to_string()], "P(x)x").unwrap();
        assert_eq!(
            match_word(&pat, 1, &parse_word(&s, "P(ab)ab").unwrap()).len(),
            1
        );
        assert!(match_word(&pat, 1, &parse_word(&s, "P(ab)ba").unwrap()).is_empty());
    }

    #[test]
    fn schema_validation() {
        let s = sig();
        let lhs = parse_pattern(&s, &vars(), "P(x)").unwrap();
        let r = RuleSchema::<RatFunc>::new("r", vars(), lhs, OmegaPolynomial::zero());
        assert!(matches!(r, Err(Error::Schema { .. })));
        let lone = parse_pattern(&s, &vars(), "xy").unwrap();
        assert!(RuleSchema::<RatFunc>::new("r", vars(), lone, OmegaPolynomial::zero()).is_err());
    }
}
