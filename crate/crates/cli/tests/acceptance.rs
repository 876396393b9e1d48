//! One line per acceptance criterion. Runs without the libtest harness so
//! that the pass/fail lines always reach the terminal.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use opalg::normalizer::Normalizer;
use opalg::orders::check_monomial_property;
use opalg::syntax::{parse_poly, parse_word};
use opalg::systems::{
    d_extend, d_omega_monomials, is_rota_baxter_word, phi_d_omega, phi_words, rb_product,
};
use opalg::terms::enumerate_words;
use opalg::{
    enumerate_compositions, systems, MonomialOrder, OrderKind, Poly, RatFunc, Shape, Signature,
    Strategy, System, Word, DEFAULT_FUEL,
};
use serde_json::Value;

/// Every comparison below is exact: coefficients live in ℚ(lam) and counts
/// are integers, so no numeric tolerance is involved anywhere.
const EXACT: &str = "exact";

const RB_BOUNDS: (usize, usize) = (2, 2);
/// Context bound for the weight-3 differential grid; see the README.
const DIFF_BOUNDS: (usize, usize) = (3, 1);
const DIFF_WIDE_CONTEXT: (usize, usize) = (2, 2);
const DRB_BOUNDS: (usize, usize) = (2, 2);
const BASIS_BOUND: usize = 4;
const PRODUCT_BOUND: usize = 4;
const IDEAL_VALUE_BOUND: usize = 4;
const ORDER_BOUND: usize = 3;
const ORDER_CONTEXT_SAMPLES: usize = 8;

/// Counts stated in the criteria that the oracles contradict.
const STATED_INCLUSION_TERMS: usize = 15;
const STATED_TRIPLE_PRODUCT_WORDS: usize = 9;

enum Verdict {
    Pass(String),
    /// Everything measurable holds except a stated number or example that
    /// the computation contradicts; the detail names both sides.
    Unattainable(String),
}

type Outcome = Result<Verdict, String>;

fn pass(detail: String) -> Outcome {
    Ok(Verdict::Pass(detail))
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
}

/// Every CLI invocation runs twice, single-threaded and with two workers;
/// the byte comparison feeds the determinism criterion.
#[derive(Default)]
struct Runs {
    compared: usize,
    mismatched: Vec<String>,
}

impl Runs {
    fn opalg(&mut self, args: &[&str]) -> Run {
        let once = |threads: &str| {
            let out = Command::new(env!("CARGO_BIN_EXE_opalg"))
                .args(args)
                .env("OPALG_THREADS", threads)
                .output()
                .expect("the opalg binary runs");
            (
                out.status.code().unwrap_or(-1),
                String::from_utf8(out.stdout).expect("utf-8 output"),
            )
        };
        let (code, stdout) = once("1");
        let (code2, stdout2) = once("2");
        self.compared += 1;
        if code != code2 || stdout != stdout2 {
            self.mismatched.push(args.join(" "));
        }
        Run { code, stdout }
    }
}

struct Report {
    families: Vec<Value>,
    summary: Value,
}

fn parse_report(stdout: &str) -> Report {
    let mut families = Vec::new();
    let mut summary = Value::Null;
    for (i, line) in stdout.lines().enumerate() {
        let v: Value = serde_json::from_str(line).expect("structured output is JSON lines");
        if i == 0 {
            assert_eq!(v["format"], "opalg");
            assert_eq!(v["version"], 1);
            continue;
        }
        match v["record"].as_str() {
            Some("family") => families.push(v),
            Some("summary") => summary = v,
            _ => {}
        }
    }
    Report { families, summary }
}

fn count(v: &Value, key: &str) -> u64 {
    v[key]
        .as_u64()
        .unwrap_or_else(|| panic!("missing {key} in {v}"))
}

fn family<'r>(r: &'r Report, left: &str, right: &str, shape: &str) -> Option<&'r Value> {
    r.families
        .iter()
        .find(|f| f["left"] == left && f["right"] == right && f["shape"] == shape)
}

fn check_gsb_args<'a>(system: &'a str, letters: &'a str, b: &'a str, c: &'a str) -> Vec<&'a str> {
    vec![
        "check-gsb",
        "--system",
        system,
        "--letters",
        letters,
        "--max-weight",
        b,
        "--max-context",
        c,
        "--format",
        "structured",
    ]
}

fn lam() -> RatFunc {
    RatFunc::lam()
}

/// Rewrites each term of `f` once at its leftmost-outermost redex and keeps
/// the results apart, one group per term, without collecting like terms.
fn expand_termwise(sys: &System, f: &Poly) -> Vec<Poly> {
    f.sorted_terms(sys.order())
        .into_iter()
        .map(|(w, c)| {
            let redex = sys
                .find_redex(w, Strategy::LeftmostOutermost)
                .unwrap()
                .expect("every displayed term is reducible");
            sys.contract(w, &redex).unwrap().scale(c)
        })
        .collect()
}

fn same_groups(got: &[Poly], printed: &[Poly]) -> bool {
    // the printed groups may come in any order
    let mut left: Vec<&Poly> = printed.iter().collect();
    got.iter().all(|g| match left.iter().position(|p| *p == g) {
        Some(i) => {
            left.remove(i);
            true
        }
        None => false,
    }) && left.is_empty()
}

fn gsb_families(
    runs: &mut Runs,
    system: &str,
    letters: &str,
    (b, c): (usize, usize),
) -> Result<(Report, i32), String> {
    let (b, c) = (b.to_string(), c.to_string());
    let run = runs.opalg(&check_gsb_args(system, letters, &b, &c));
    ensure!(
        run.code == 0 || run.code == 2,
        "check-gsb {system} exited {}",
        run.code
    );
    Ok((parse_report(&run.stdout), run.code))
}

fn criterion_1(runs: &mut Runs) -> Outcome {
    let (report, code) = gsb_families(runs, "rb", "x,y,z", RB_BOUNDS)?;
    ensure!(code == 0, "exit code {code}");
    let mut sizes = Vec::new();
    for shape in ["overlap", "inside x", "inside y"] {
        let f = family(&report, "rb", "rb", shape).ok_or(format!("family {shape} missing"))?;
        ensure!(count(f, "compositions") >= 1, "family {shape} is empty");
        ensure!(count(f, "failures") == 0, "family {shape} has failures");
        sizes.push(count(f, "compositions"));
    }
    ensure!(count(&report.summary, "failures") == 0, "failures reported");

    // the inclusion ambiguity P(P(x)P(y))P(z), hole context
    let sys = systems::rb_system(&["x", "y", "z"], lam()).unwrap();
    let sig = sys.sig();
    let poly = |s: &str| parse_poly::<RatFunc>(sig, s).unwrap();
    let w = parse_word(sig, "P(P(x)P(y))P(z)").unwrap();
    let composition = enumerate_compositions(&sys, 1, 1, 1)
        .unwrap()
        .into_iter()
        .find(|(k, c)| k.shape == Shape::Inside("x".into()) && c.w == w)
        .map(|(_, c)| c)
        .ok_or("the ambiguity P(P(x)P(y))P(z) is not generated")?;
    let displayed = poly(
        "-P(P(P(x)P(y))z) - P(P(x)P(y)P(z)) - lam*P(P(x)P(y)z) \
         + P(P(P(x)y))P(z) + P(P(xP(y)))P(z) + lam*P(P(xy))P(z)",
    );
    ensure!(
        composition.poly == displayed || composition.poly == -displayed.clone(),
        "composition differs from the displayed one"
    );
    let printed: Vec<Poly> = [
        "-P(P(P(P(x)y))z) - P(P(P(xP(y)))z) - lam*P(P(P(xy))z)",
        "-P(P(P(x)y)P(z)) - P(P(xP(y))P(z)) - lam*P(P(xy)P(z))",
        "-lam*P(P(P(x)y)z) - lam*P(P(xP(y))z) - (lam^2)*P(P(xy)z)",
        "P(P(P(P(x)y))z) + P(P(P(x)y)P(z)) + lam*P(P(P(x)y)z)",
        "P(P(P(xP(y)))z) + P(P(xP(y))P(z)) + lam*P(P(xP(y))z)",
        "lam*P(P(P(xy))z) + lam*P(P(xy)P(z)) + (lam^2)*P(P(xy)z)",
    ]
    .iter()
    .map(|s| poly(s))
    .collect();
    let groups = expand_termwise(&sys, &displayed);
    let terms: usize = groups.iter().map(Poly::len).sum();
    ensure!(
        same_groups(&groups, &printed),
        "expansion groups differ from the display"
    );
    let total = groups.into_iter().fold(Poly::zero(), |a, g| a + g);
    ensure!(total.is_zero(), "intermediate terms do not cancel");
    let detail = format!(
        "families overlap/inside x/inside y = {sizes:?} compositions, 0 failures; \
         displayed cancellation replayed exactly: 6 groups x 3 = {terms} terms summing to 0"
    );
    Ok(if terms == STATED_INCLUSION_TERMS {
        Verdict::Pass(detail)
    } else {
        Verdict::Unattainable(format!(
            "{detail}; stated term count {STATED_INCLUSION_TERMS} contradicts the displayed {terms}"
        ))
    })
}

fn criterion_2(runs: &mut Runs) -> Outcome {
    let mut parts = Vec::new();
    for bounds in [DIFF_BOUNDS, DIFF_WIDE_CONTEXT] {
        let (report, code) = gsb_families(runs, "diff", "x,y", bounds)?;
        ensure!(code == 0, "exit code {code} at {bounds:?}");
        let mut sizes = Vec::new();
        for shape in ["inside x", "inside y"] {
            let f = family(&report, "diff", "diff", shape)
                .ok_or(format!("family {shape} missing at {bounds:?}"))?;
            ensure!(count(f, "compositions") >= 1, "family {shape} empty");
            ensure!(count(f, "failures") == 0, "family {shape} has failures");
            sizes.push(count(f, "compositions"));
        }
        ensure!(
            count(&report.summary, "failures") == 0,
            "failures at {bounds:?}"
        );
        parts.push(format!(
            "B={} C={}: inside y/inside x = {sizes:?}, {} compositions, 0 failures",
            bounds.0,
            bounds.1,
            count(&report.summary, "compositions")
        ));
    }
    pass(parts.join("; "))
}

fn criterion_3(runs: &mut Runs) -> Outcome {
    let (report, code) = gsb_families(runs, "drb", "x,y", DRB_BOUNDS)?;
    ensure!(code == 0, "exit code {code}");
    let mut pairs: BTreeMap<String, u64> = BTreeMap::new();
    for f in &report.families {
        ensure!(count(f, "failures") == 0, "failures in {}", f["family"]);
        let pair = format!(
            "{}∧{}",
            f["left"].as_str().unwrap(),
            f["right"].as_str().unwrap()
        );
        *pairs.entry(pair).or_default() += count(f, "compositions");
    }
    let expected: BTreeSet<String> = ["3", "2", "1"]
        .iter()
        .flat_map(|a| ["3", "2", "1"].iter().map(move |b| format!("{a}∧{b}")))
        .collect();
    let got: BTreeSet<String> = pairs.keys().cloned().collect();
    ensure!(got == expected, "rule pairs {got:?}");
    ensure!(pairs.values().all(|&n| n > 0), "an empty rule pair");

    // 3∧2 in the hole context: the ambiguity D(P(D(xy)))
    let sys = systems::drb_system(&["x", "y"], lam()).unwrap();
    let sig = sys.sig();
    let poly = |s: &str| parse_poly::<RatFunc>(sig, s).unwrap();
    let w = parse_word(sig, "D(P(D(xy)))").unwrap();
    let composition = enumerate_compositions(&sys, 1, 1, 1)
        .unwrap()
        .into_iter()
        .find(|(k, c)| k.left == "3" && k.right == "2" && c.w == w)
        .map(|(_, c)| c)
        .ok_or("the ambiguity D(P(D(xy))) is not generated")?;
    let first_line = poly("-D(xy) + D(P(D(x)y)) + D(P(xD(y))) + lam*D(P(D(x)D(y)))");
    ensure!(
        composition.poly == first_line || composition.poly == -first_line.clone(),
        "composition differs from the first displayed line"
    );
    let second_line: Vec<Poly> = [
        "-D(x)y - xD(y) - lam*D(x)D(y)",
        "D(x)y",
        "xD(y)",
        "lam*D(x)D(y)",
    ]
    .iter()
    .map(|s| poly(s))
    .collect();
    let groups = expand_termwise(&sys, &first_line);
    ensure!(same_groups(&groups, &second_line), "second line differs");
    let total = groups.into_iter().fold(Poly::zero(), |a, g| a + g);
    ensure!(total.is_zero(), "second line does not cancel");
    pass(format!(
        "nine rule pairs populated {:?}, 0 failures; 3∧2 two-line cancellation replayed",
        pairs.values().collect::<Vec<_>>()
    ))
}

fn names(sig: &Signature, ws: &[Word]) -> BTreeSet<String> {
    ws.iter().map(|u| sig.show(u)).collect()
}

fn criterion_4() -> Outcome {
    let mut sizes = Vec::new();
    for letters in [&["x"][..], &["x", "y"][..]] {
        let rb = systems::rb_system(letters, lam()).unwrap();
        let p = rb.sig().require_op("P").unwrap();
        let diff = systems::diff_system(letters, lam()).unwrap();
        let d = diff.sig().require_op("D").unwrap();
        let t = systems::diff_t_system(letters, lam()).unwrap();
        let td = t.sig().require_op("D").unwrap();
        let drb = systems::drb_system(letters, lam()).unwrap();
        let (dp, dd) = (
            drb.sig().require_op("P").unwrap(),
            drb.sig().require_op("D").unwrap(),
        );
        let cases = [
            ("rb", &rb, phi_words(rb.sig(), p, BASIS_BOUND)),
            ("diff", &diff, d_omega_monomials(diff.sig(), d, BASIS_BOUND)),
            ("diff-t", &t, phi_words(t.sig(), td, BASIS_BOUND)),
            ("drb", &drb, phi_d_omega(drb.sig(), dp, dd, BASIS_BOUND)),
        ];
        for (name, sys, family) in cases {
            let irr = names(sys.sig(), &sys.enumerate_irr(BASIS_BOUND));
            let built = names(sys.sig(), &family);
            ensure!(irr == built, "{name} over {letters:?}: sets differ");
            sizes.push(format!("{name}/{}={}", letters.len(), irr.len()));
        }
    }
    pass(format!(
        "Irr = constructed basis up to weight {BASIS_BOUND}: {}",
        sizes.join(" ")
    ))
}

fn criterion_5() -> Outcome {
    let rb = systems::rb_system(&["x", "y"], lam()).unwrap();
    let p = rb.sig().require_op("P").unwrap();
    let nrb = Normalizer::new(&rb);
    let words: Vec<Word> = enumerate_words(rb.sig(), PRODUCT_BOUND - 1)
        .into_iter()
        .filter(|u| is_rota_baxter_word(u, p))
        .collect();
    let mut pairs = 0;
    for u in &words {
        for v in &words {
            if u.weight() + v.weight() > PRODUCT_BOUND {
                continue;
            }
            pairs += 1;
            let fast = rb_product(u, v, p, &lam()).unwrap();
            let nf = nrb.nf_word(&u.concat(v)).unwrap();
            ensure!(fast == nf, "{} ◇ {}", rb.sig().show(u), rb.sig().show(v));
        }
    }
    let diff = systems::diff_system(&["x", "y"], lam()).unwrap();
    let d = diff.sig().require_op("D").unwrap();
    let ndiff = Normalizer::new(&diff);
    let monomials = d_omega_monomials(diff.sig(), d, PRODUCT_BOUND);
    for u in &monomials {
        let fast = d_extend(u, d, &lam()).unwrap();
        let nf = ndiff.nf_word(&Word::unary(d, u.clone())).unwrap();
        ensure!(fast == nf, "D({})", diff.sig().show(u));
    }
    pass(format!(
        "{pairs} Rota-Baxter word pairs and {} D-monomials agree with normal forms",
        monomials.len()
    ))
}

fn criterion_6() -> Outcome {
    let s = systems::diff_system(&["x", "y"], lam()).unwrap();
    let t = systems::diff_t_system(&["x", "y"], lam()).unwrap();
    let (ns, nt) = (Normalizer::new(&s), Normalizer::new(&t));
    let values = enumerate_words(s.sig(), IDEAL_VALUE_BOUND);
    let mut instances = 0;
    for a in &values {
        for b in &values {
            let vals = [a.clone(), b.clone()];
            instances += 1;
            ensure!(
                nt.is_zero_mod(&s.rules()[0].relation(&vals)).unwrap(),
                "S-instance at {} , {} survives modulo T",
                s.sig().show(a),
                s.sig().show(b)
            );
            ensure!(
                ns.is_zero_mod(&t.rules()[0].relation(&vals)).unwrap(),
                "T-instance at {} , {} survives modulo S",
                s.sig().show(a),
                s.sig().show(b)
            );
        }
    }
    pass(format!(
        "{instances} instances of each schema (values of weight <= {IDEAL_VALUE_BOUND}) reduce to 0 modulo the other"
    ))
}

fn criterion_7() -> Outcome {
    let cases: [(OrderKind, &[(&str, usize)]); 3] = [
        (OrderKind::Order1, &[("P", 1), ("T", 2)]),
        (OrderKind::Order2, &[("D", 1)]),
        (OrderKind::Order3, &[("P", 1), ("D", 1)]),
    ];
    let mut parts = Vec::new();
    for (kind, ops) in cases {
        let sig = Signature::new(["x", "y"], ops.iter().copied()).unwrap();
        let order = MonomialOrder::new(kind, &sig).unwrap();
        let r = check_monomial_property(&order, &sig, ORDER_BOUND, ORDER_CONTEXT_SAMPLES, 11);
        ensure!(r.is_clean(), "{kind}: {:?}", r.violations);
        parts.push(format!(
            "{kind}: {} words, {} triples, {} context checks",
            r.words, r.triples, r.context_checks
        ));
    }
    pass(format!("no violations; {}", parts.join("; ")))
}

fn overlap_failures(runs: &mut Runs, file: &str) -> Result<(i32, u64), String> {
    let (b, c) = (RB_BOUNDS.0.to_string(), RB_BOUNDS.1.to_string());
    let system = format!("file:{}", data(file));
    let run = runs.opalg(&check_gsb_args(&system, "x,y,z", &b, &c));
    ensure!(
        run.code == 0 || run.code == 2,
        "{file}: exit code {}",
        run.code
    );
    let report = parse_report(&run.stdout);
    let overlap =
        family(&report, "r1", "r1", "overlap").ok_or(format!("{file}: no overlap family"))?;
    Ok((run.code, count(overlap, "failures")))
}

fn criterion_8(runs: &mut Runs) -> Outcome {
    let (code, failures) = overlap_failures(runs, "rb_without_weight_term.rules")?;
    if code == 2 && failures >= 1 {
        return Ok(Verdict::Pass(format!(
            "exit 2, {failures} non-trivial overlap compositions"
        )));
    }
    // deleting the weight term leaves the weight-0 Rota-Baxter relation, itself a
    // Gröbner-Shirshov basis; deleting P(P(x)y) shows the check does detect failures
    let (sub_code, sub_failures) = overlap_failures(runs, "rb_without_left_term.rules")?;
    ensure!(
        sub_code == 2 && sub_failures >= 1,
        "neither control produces failures (substitute exit {sub_code})"
    );
    Ok(Verdict::Unattainable(format!(
        "without the weight term: exit {code}, {failures} failures, since the weight-0 \
         relation is itself a basis; without P(P(x)y) instead: exit 2, \
         {sub_failures} non-trivial overlap compositions"
    )))
}

/// Independent expansion on strings: `P(u)P(v) -> P(P(u)v) + P(uP(v)) + lam P(uv)`.
mod string_oracle {
    use std::collections::BTreeMap;

    pub type Lin = BTreeMap<String, BTreeMap<u32, i64>>;

    fn factors(s: &str) -> Vec<&str> {
        let mut out = Vec::new();
        let (mut depth, mut start) = (0usize, 0usize);
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        out.push(&s[start..=i]);
                        start = i + 1;
                    }
                }
                'P' => {}
                _ if depth == 0 => {
                    out.push(&s[i..i + ch.len_utf8()]);
                    start = i + ch.len_utf8();
                }
                _ => {}
            }
        }
        out
    }

    fn inner(f: &str) -> Option<&str> {
        f.strip_prefix("P(").and_then(|r| r.strip_suffix(')'))
    }

    fn step(s: &str, rightmost: bool) -> Option<Vec<(u32, String)>> {
        let fs = factors(s);
        let at_pair = |i: usize| -> Option<Vec<(u32, String)>> {
            let (u, v) = (inner(fs[i])?, inner(fs[i + 1])?);
            let (pre, post) = (fs[..i].concat(), fs[i + 2..].concat());
            Some(vec![
                (0, format!("{pre}P(P({u}){v}){post}")),
                (0, format!("{pre}P({u}P({v})){post}")),
                (1, format!("{pre}P({u}{v}){post}")),
            ])
        };
        let nested = |i: usize| -> Option<Vec<(u32, String)>> {
            let reps = step(inner(fs[i])?, rightmost)?;
            let (pre, post) = (fs[..i].concat(), fs[i + 1..].concat());
            Some(
                reps.into_iter()
                    .map(|(k, r)| (k, format!("{pre}P({r}){post}")))
                    .collect(),
            )
        };
        let n = fs.len();
        if rightmost {
            (0..n)
                .rev()
                .find_map(nested)
                .or_else(|| (0..n.saturating_sub(1)).rev().find_map(at_pair))
        } else {
            (0..n.saturating_sub(1))
                .find_map(at_pair)
                .or_else(|| (0..n).find_map(nested))
        }
    }

    pub fn expand(start: &str, rightmost: bool) -> Lin {
        let mut todo: Lin = BTreeMap::from([(start.to_string(), BTreeMap::from([(0, 1)]))]);
        let mut done: Lin = BTreeMap::new();
        while let Some((s, coeff)) = todo.pop_first() {
            match step(&s, rightmost) {
                None => add(&mut done, s, &coeff, 0),
                Some(reps) => reps
                    .into_iter()
                    .for_each(|(k, r)| add(&mut todo, r, &coeff, k)),
            }
        }
        done
    }

    fn add(acc: &mut Lin, s: String, coeff: &BTreeMap<u32, i64>, shift: u32) {
        let slot = acc.entry(s.clone()).or_default();
        for (&k, &c) in coeff {
            *slot.entry(k + shift).or_default() += c;
        }
        slot.retain(|_, c| *c != 0);
        if slot.is_empty() {
            acc.remove(&s);
        }
    }
}

fn criterion_9() -> Outcome {
    let sys = systems::rb_system(&["a", "b", "c"], lam()).unwrap();
    let f = parse_poly::<RatFunc>(sys.sig(), "P(a)P(b)P(c)").unwrap();
    let (lo, _) = sys
        .normal_form_with(&f, DEFAULT_FUEL, Strategy::LeftmostOutermost)
        .unwrap();
    let (ri, _) = sys
        .normal_form_with(&f, DEFAULT_FUEL, Strategy::RightmostInnermost)
        .unwrap();
    ensure!(lo == ri, "strategies disagree");
    let left = string_oracle::expand("P(a)P(b)P(c)", false);
    let right = string_oracle::expand("P(a)P(b)P(c)", true);
    ensure!(left == right, "oracle reduction orders disagree");
    let ours: string_oracle::Lin = lo
        .iter()
        .map(|(w, c)| {
            let coeffs = c
                .numer()
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, q)| **q != opalg::BigRational::from_integer(0.into()))
                .map(|(k, q)| (k as u32, i64::try_from(q.to_integer()).unwrap()))
                .collect();
            (sys.sig().show(w), coeffs)
        })
        .collect();
    ensure!(
        ours == left,
        "normal form differs from the brute-force expansion"
    );
    let detail = format!(
        "both strategies give the same {} words, equal to the brute-force expansion of \
         both reduction orders",
        lo.len()
    );
    Ok(if lo.len() == STATED_TRIPLE_PRODUCT_WORDS {
        Verdict::Pass(detail)
    } else {
        Verdict::Unattainable(format!(
            "{detail}; stated count {STATED_TRIPLE_PRODUCT_WORDS} contradicts the oracle's {}",
            left.len()
        ))
    })
}

fn criterion_10(runs: &mut Runs) -> Outcome {
    // a few light commands on top of the reports already produced
    for args in [
        &["nf", "P(a)P(b)P(c)", "--trace"][..],
        &["enum-basis", "--family", "phidomega", "--max-weight", "3"][..],
        &[
            "compose",
            "--system",
            "drb",
            "--max-weight",
            "1",
            "--max-context",
            "1",
        ][..],
        &[
            "complete",
            "--rules",
            &data("braid.rules"),
            "--max-weight",
            "8",
        ][..],
    ] {
        runs.opalg(args);
    }
    ensure!(
        runs.mismatched.is_empty(),
        "outputs differ: {:?}",
        runs.mismatched
    );
    pass(format!(
        "{} commands byte-identical across consecutive runs with 1 and 2 worker threads",
        runs.compared
    ))
}

fn main() {
    let mut runs = Runs::default();
    let (mut failed, mut unattainable) = (0, 0);
    let mut report = |id: u32, outcome: std::thread::Result<Outcome>| {
        let (status, detail) = match outcome {
            Ok(Ok(Verdict::Pass(d))) => ("PASS", d),
            Ok(Ok(Verdict::Unattainable(d))) => ("UNATTAINABLE", d),
            Ok(Err(d)) => ("FAIL", d),
            Err(p) => (
                "FAIL",
                p.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        match status {
            "FAIL" => failed += 1,
            "UNATTAINABLE" => unattainable += 1,
            _ => {}
        }
        println!("criterion {id:>2}: {status} [{EXACT}] {detail}");
    };
    report(1, catch_unwind(AssertUnwindSafe(|| criterion_1(&mut runs))));
    report(2, catch_unwind(AssertUnwindSafe(|| criterion_2(&mut runs))));
    report(3, catch_unwind(AssertUnwindSafe(|| criterion_3(&mut runs))));
    report(4, catch_unwind(criterion_4));
    report(5, catch_unwind(criterion_5));
    report(6, catch_unwind(criterion_6));
    report(7, catch_unwind(criterion_7));
    report(8, catch_unwind(AssertUnwindSafe(|| criterion_8(&mut runs))));
    report(9, catch_unwind(criterion_9));
    report(
        10,
        catch_unwind(AssertUnwindSafe(|| criterion_10(&mut runs))),
    );
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    // an unattainable line still had every measurable part checked
    println!("no failures; {unattainable} criteria unattainable as stated, the rest passed");
}
