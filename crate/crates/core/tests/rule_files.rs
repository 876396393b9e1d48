mod common;

use common::{lam, p, show};
use opalg::composition::{complete, find_inclusions, find_intersections};
use opalg::normalizer::Normalizer;
use opalg::syntax::RuleFile;
use opalg::systems::{from_rule_file, rule_file_signature};
use opalg::{check_gsb, MonomialOrder, OrderKind, Poly, RatFunc, RewriteSystem, DEFAULT_FUEL};

const ROTA_BAXTER: &str = "\
# weight lam
@ops P/1
@vars x y
P(x)P(y) - P(xP(y)) - P(P(x)y) - lam*P(xy)
";

#[test]
fn schema_file_reproduces_the_builtin_system() {
    let file = RuleFile::<RatFunc>::parse(ROTA_BAXTER).unwrap();
    let letters = vec!["a".to_string(), "b".to_string()];
    let sys = from_rule_file("rb", &file, Some(&letters), None).unwrap();
    assert_eq!(sys.order().kind(), OrderKind::Order1);
    assert_eq!(sys.rules().len(), 1);
    assert_eq!(
        sys.rules()[0].show(sys.sig()),
        "P(x)P(y) -> P(P(x)y) + P(xP(y)) + lam*P(xy)"
    );
    let builtin = opalg::systems::rb_system(&["a", "b"], lam()).unwrap();
    let f = p(sys.sig(), "P(a)P(b)P(a)");
    let (ours, _) = sys.normal_form(&f, DEFAULT_FUEL).unwrap();
    let (theirs, _) = builtin.normal_form(&f, DEFAULT_FUEL).unwrap();
    assert_eq!(show(&sys, &ours), show(&builtin, &theirs));
    assert!(check_gsb(&sys, 2, 1, 1).unwrap().is_gsb());
}

#[test]
fn concrete_lines_are_oriented_by_their_leading_word() {
    let file = RuleFile::<RatFunc>::parse("@letters x y\nyx - xy\n").unwrap();
    let sys = from_rule_file("comm", &file, None, None).unwrap();
    assert_eq!(sys.order().kind(), OrderKind::DegLex);
    assert_eq!(sys.rules()[0].show(sys.sig()), "xy -> yx");
}

#[test]
fn letters_come_from_flags_then_directives_then_rules() {
    let file = RuleFile::<RatFunc>::parse("b a - c\n").unwrap();
    let sig = rule_file_signature(&file, None).unwrap();
    assert_eq!(sig.letter_names(), ["a", "b", "c"]);
    let file = RuleFile::<RatFunc>::parse("@letters c b a\nb a - c\n").unwrap();
    assert_eq!(
        rule_file_signature(&file, None).unwrap().letter_names(),
        ["c", "b", "a"]
    );
    let flags = vec!["b".into(), "c".into(), "a".into()];
    assert_eq!(
        rule_file_signature(&file, Some(&flags))
            .unwrap()
            .letter_names(),
        ["b", "c", "a"]
    );
}

#[test]
fn bad_rule_files_are_rejected() {
    assert!(RuleFile::<RatFunc>::parse("@order o9\nx\n").is_err());
    assert!(RuleFile::<RatFunc>::parse("@ops P\nx\n").is_err());
    assert!(RuleFile::<RatFunc>::parse("@colour red\n").is_err());
    let file = RuleFile::<RatFunc>::parse("@vars x\nx - y\n").unwrap();
    // a lone metavariable cannot be a left-hand side
    assert!(from_rule_file("bad", &file, None, None).is_err());
}

fn concrete(text: &str) -> (opalg::Signature, MonomialOrder, Vec<Poly>) {
    let file = RuleFile::<RatFunc>::parse(text).unwrap();
    let sig = rule_file_signature(&file, None).unwrap();
    let kind = file.order.unwrap_or(OrderKind::DegLex);
    let order = MonomialOrder::new(kind, &sig).unwrap();
    let polys = file
        .rules
        .iter()
        .map(|r| r.poly.resolve(&sig, &[]).unwrap())
        .collect();
    (sig, order, polys)
}

/// Every composition among `rules` with ambiguity of weight at most `bound` is trivial.
fn closed_under_compositions(
    sig: &opalg::Signature,
    order: &MonomialOrder,
    rules: &[Poly],
    bound: usize,
) -> bool {
    let sys = RewriteSystem::from_polys("done", sig.clone(), *order, rules).unwrap();
    let normalizer = Normalizer::new(&sys);
    rules.iter().all(|f| {
        rules.iter().all(|g| {
            let mut comps = find_intersections(f, g, order).unwrap();
            comps.extend(find_inclusions(f, g, order).unwrap());
            comps
                .iter()
                .filter(|c| c.w.weight() <= bound)
                .all(|c| normalizer.is_zero_mod(&c.poly).unwrap())
        })
    })
}

#[test]
fn completion_of_a_letter_presentation() {
    let (sig, order, rules) = concrete("@letters x y\nxxx - y\nyy - x\n");
    let done = complete(&sig, &order, &rules, 8, 10).unwrap();
    assert!(done.saturated);
    assert!(closed_under_compositions(&sig, &order, &done.rules, 8));
    // the input stays in the ideal of the output
    let sys = RewriteSystem::from_polys("done", sig.clone(), order, &done.rules).unwrap();
    let normalizer = Normalizer::new(&sys);
    for r in &rules {
        assert!(normalizer.is_zero_mod(r).unwrap());
    }
}

#[test]
fn braid_relation_keeps_growing() {
    let (sig, order, rules) = concrete("@letters a b\naba - bab\n");
    let done = complete(&sig, &order, &rules, 8, 5).unwrap();
    let shown: Vec<String> = done.rules.iter().map(|r| r.display(&sig, &order)).collect();
    assert_eq!(
        shown,
        [
            "aba - bab",
            "abbab - babba",
            "abbbab - babbaa",
            "abbbbab - babbaaa",
            "abbbbbab - babbaaaa"
        ]
    );
    assert_eq!(done.log[0].round, 1);
    assert_eq!(sig.show(&done.log[0].ambiguity), "ababa");
}

#[test]
fn completion_with_an_operator() {
    // an idempotent operator that also absorbs products
    let (sig, order, rules) =
        concrete("@order o1\n@ops P/1\n@letters x\nP(P(x)) - P(x)\nP(x)P(x) - P(xx)\n");
    let done = complete(&sig, &order, &rules, 6, 6).unwrap();
    assert!(closed_under_compositions(&sig, &order, &done.rules, 6));
}
