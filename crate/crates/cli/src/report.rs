//! Text and line-delimited JSON output.

use std::io::Write;

use clap::ValueEnum;
use opalg::{
    composition::{Completion, RuleRef, Witness},
    Composition, FamilyKey, GsbReport, MonomialOrder, ReductionTrace, RewriteSystem, Scalar,
    Signature, Word,
};
use serde_json::{json, Map, Value};

/// Bumped whenever a structured record changes shape.
pub const FORMAT_VERSION: u32 = 1;

/// Failures printed per family in text reports.
const TEXT_FAILURES: usize = 20;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    /// One JSON object per line after a versioned header.
    Structured,
}

pub struct Out {
    format: Format,
    buf: String,
}

fn rule_tag<C: Scalar>(sys: &RewriteSystem<C>, r: &RuleRef) -> String {
    let rule = &sys.rules()[r.rule];
    if rule.is_concrete() {
        rule.name().to_string()
    } else {
        format!(
            "{}@{}",
            rule.name(),
            rule.show_assignment(sys.sig(), &r.assignment)
        )
    }
}

fn witness_fields(sig: &Signature, w: &Witness) -> (String, Value) {
    match w {
        Witness::Intersection { head, tail } => (
            format!("head {} tail {}", sig.show(head), sig.show(tail)),
            json!({"kind": "intersection", "head": sig.show(head), "tail": sig.show(tail)}),
        ),
        Witness::Inclusion { context } => (
            format!("context {}", sig.show(context.as_word())),
            json!({"kind": "inclusion", "context": sig.show(context.as_word())}),
        ),
    }
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out {
            format,
            buf: String::new(),
        }
    }

    fn line(&mut self, s: &str) {
        self.buf.push_str(s);
        self.buf.push('\n');
    }

    fn record(&mut self, kind: &str, v: Value) {
        let mut obj = Map::new();
        obj.insert("record".into(), kind.into());
        if let Value::Object(fields) = v {
            obj.extend(fields);
        }
        let s = Value::Object(obj).to_string();
        self.line(&s);
    }

    /// Text output only carries a header for the report commands.
    pub fn header(&mut self, command: &str, fields: &[(&str, String)]) {
        match self.format {
            Format::Structured => {
                let mut obj = Map::new();
                obj.insert("format".into(), "opalg".into());
                obj.insert("version".into(), FORMAT_VERSION.into());
                obj.insert("command".into(), command.into());
                for (k, v) in fields {
                    obj.insert((*k).into(), v.clone().into());
                }
                let s = Value::Object(obj).to_string();
                self.line(&s);
            }
            Format::Text => {
                if matches!(command, "compose" | "check-gsb" | "complete") {
                    let mut s = format!("# {command}");
                    for (k, v) in fields {
                        s.push_str(&format!(" {k}={v}"));
                    }
                    self.line(&s);
                }
            }
        }
    }

    pub fn poly(&mut self, kind: &str, text: &str) {
        match self.format {
            Format::Text => self.line(text),
            Format::Structured => self.record(kind, json!({ "poly": text })),
        }
    }

    pub fn verdict(&mut self, v: &str) {
        match self.format {
            Format::Text => self.line(v),
            Format::Structured => self.record("comparison", json!({ "result": v })),
        }
    }

    pub fn words(&mut self, sig: &Signature, words: &[Word]) {
        for w in words {
            match self.format {
                Format::Text => self.line(&sig.show(w)),
                Format::Structured => {
                    self.record("word", json!({"word": sig.show(w), "weight": w.weight()}))
                }
            }
        }
        if self.format == Format::Structured {
            self.record("summary", json!({ "words": words.len() }));
        }
    }

    pub fn trace<C: Scalar>(&mut self, sys: &RewriteSystem<C>, trace: &ReductionTrace<C>) {
        match self.format {
            Format::Text => {
                self.line(&format!("trace: {} steps", trace.len()));
                self.buf.push_str(&trace.render(sys));
            }
            Format::Structured => {
                for s in &trace.steps {
                    let tag = rule_tag(
                        sys,
                        &RuleRef {
                            rule: s.rule,
                            assignment: s.assignment.clone(),
                        },
                    );
                    self.record(
                        "step",
                        json!({
                            "word": sys.sig().show(&s.word),
                            "rule": tag,
                            "context": sys.sig().show(s.context.as_word()),
                            "replacement": s.replacement.display(sys.sig(), sys.order()),
                        }),
                    );
                }
            }
        }
    }

    pub fn compositions<C: Scalar>(
        &mut self,
        sys: &RewriteSystem<C>,
        comps: &[(FamilyKey, Composition<C>)],
    ) {
        let sig = sys.sig();
        for (key, c) in comps {
            let (left, right) = (rule_tag(sys, &c.left), rule_tag(sys, &c.right));
            let (wtext, wjson) = witness_fields(sig, &c.witness);
            let poly = c.poly.display(sig, sys.order());
            match self.format {
                Format::Text => self.line(&format!(
                    "{key} | w {} | {left} / {right} | {wtext} | {poly}",
                    sig.show(&c.w)
                )),
                Format::Structured => self.record(
                    "composition",
                    json!({
                        "family": key.to_string(),
                        "w": sig.show(&c.w),
                        "left": left,
                        "right": right,
                        "witness": wjson,
                        "poly": poly,
                    }),
                ),
            }
        }
        match self.format {
            Format::Text => self.line(&format!("total compositions {}", comps.len())),
            Format::Structured => self.record("summary", json!({ "compositions": comps.len() })),
        }
    }

    pub fn gsb_report<C: Scalar>(&mut self, sys: &RewriteSystem<C>, r: &GsbReport<C>) {
        let sig = sys.sig();
        let scope = format!(
            "verified up to metavariable weight {} and context weight {}; larger ambiguities are not examined",
            r.max_weight, r.max_context
        );
        match self.format {
            Format::Text => self.line(&format!("# {scope}")),
            Format::Structured => self.record("scope", json!({ "note": scope })),
        }
        for fam in &r.families {
            let failures = fam.failures.len();
            match self.format {
                Format::Text => self.line(&format!(
                    "family {} | template {} | compositions {} | trivial {} | failures {failures}",
                    fam.key, fam.template, fam.compositions, fam.trivial
                )),
                Format::Structured => self.record(
                    "family",
                    json!({
                        "family": fam.key.to_string(),
                        "left": fam.key.left,
                        "right": fam.key.right,
                        "shape": fam.key.shape.to_string(),
                        "template": fam.template,
                        "example": sig.show(&fam.example),
                        "compositions": fam.compositions,
                        "trivial": fam.trivial,
                        "failures": failures,
                    }),
                ),
            }
            let shown = match self.format {
                Format::Text => TEXT_FAILURES.min(failures),
                Format::Structured => failures,
            };
            for f in &fam.failures[..shown] {
                let c = &f.composition;
                let (left, right) = (rule_tag(sys, &c.left), rule_tag(sys, &c.right));
                let nf = f.normal_form.display(sig, sys.order());
                match self.format {
                    Format::Text => self.line(&format!(
                        "  failure w {} | {left} / {right} | normal form {nf}",
                        sig.show(&c.w)
                    )),
                    Format::Structured => self.record(
                        "failure",
                        json!({
                            "family": fam.key.to_string(),
                            "w": sig.show(&c.w),
                            "left": left,
                            "right": right,
                            "witness": witness_fields(sig, &c.witness).1,
                            "composition": c.poly.display(sig, sys.order()),
                            "normal_form": nf,
                        }),
                    ),
                }
            }
            if shown < failures {
                self.line(&format!(
                    "  ... {} more failures (use --format structured for all)",
                    failures - shown
                ));
            }
        }
        let failures = r.compositions() - r.trivial();
        match self.format {
            Format::Text => {
                self.line(&format!(
                    "total compositions {} | trivial {} | failures {failures}",
                    r.compositions(),
                    r.trivial()
                ));
                self.line(if r.is_gsb() {
                    "result: every composition is trivial within the bounds"
                } else {
                    "result: non-trivial compositions found"
                });
            }
            Format::Structured => self.record(
                "summary",
                json!({
                    "compositions": r.compositions(),
                    "trivial": r.trivial(),
                    "failures": failures,
                    "gsb_within_bounds": r.is_gsb(),
                }),
            ),
        }
    }

    pub fn completion<C: Scalar>(
        &mut self,
        sig: &Signature,
        order: &MonomialOrder,
        c: &Completion<C>,
    ) {
        for step in &c.log {
            let rule = step.added.display(sig, order);
            let w = sig.show(&step.ambiguity);
            match self.format {
                Format::Text => self.line(&format!(
                    "adjoined round {} | ambiguity {w} | {rule}",
                    step.round
                )),
                Format::Structured => self.record(
                    "adjoined",
                    json!({"round": step.round, "ambiguity": w, "rule": rule}),
                ),
            }
        }
        for r in &c.rules {
            let rule = r.display(sig, order);
            match self.format {
                Format::Text => self.line(&format!("rule {rule}")),
                Format::Structured => self.record("rule", json!({ "rule": rule })),
            }
        }
        match self.format {
            Format::Text => self.line(&format!(
                "rounds {} | saturated {}",
                c.rounds,
                if c.saturated { "yes" } else { "no" }
            )),
            Format::Structured => self.record(
                "summary",
                json!({"rounds": c.rounds, "saturated": c.saturated, "rules": c.rules.len()}),
            ),
        }
    }

    pub fn finish(self) {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(self.buf.as_bytes());
        let _ = stdout.flush();
    }
}
