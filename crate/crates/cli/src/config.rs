//! Turning command-line flags into a signature and a rewrite system.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use opalg::{
    syntax::{natural_letter_order, PolyAst, RuleFile},
    systems, RewriteSystem, Scalar, Signature,
};

use crate::Global;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSpec {
    Rb,
    Diff,
    DiffT,
    Drb,
    File(PathBuf),
}

impl FromStr for SystemSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rb" => Ok(SystemSpec::Rb),
            "diff" => Ok(SystemSpec::Diff),
            "diff-t" => Ok(SystemSpec::DiffT),
            "drb" => Ok(SystemSpec::Drb),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(SystemSpec::File(PathBuf::from(p))),
                _ => Err(format!(
                    "unknown system `{s}`; expected rb, diff, diff-t, drb or file:<path>"
                )),
            },
        }
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemSpec::Rb => f.write_str("rb"),
            SystemSpec::Diff => f.write_str("diff"),
            SystemSpec::DiffT => f.write_str("diff-t"),
            SystemSpec::Drb => f.write_str("drb"),
            SystemSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Letters and operators mentioned by the command's text arguments.
#[derive(Default, Debug)]
pub struct Inputs {
    letters: BTreeSet<String>,
    ops: Vec<(String, usize)>,
}

impl Inputs {
    pub fn texts<C: Scalar, S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        let mut inputs = Inputs::default();
        for t in texts {
            PolyAst::<C>::parse(t.as_ref())?.collect_symbols(&mut inputs.letters, &mut inputs.ops);
        }
        Ok(inputs)
    }

    /// `--letters`/`--ops` if given, otherwise what the inputs use plus `extra` operators.
    pub fn signature(&self, g: &Global, extra: &[(&str, usize)]) -> Result<Signature> {
        let letters = match &g.letters {
            Some(ls) => ls.clone(),
            None => natural_letter_order(self.letters.iter().cloned()),
        };
        let ops = match parse_ops(g.ops.as_deref())? {
            Some(ops) => ops,
            None => {
                let mut ops = self.ops.clone();
                for (name, arity) in extra {
                    if !ops.iter().any(|(n, _)| n == name) {
                        ops.push((name.to_string(), *arity));
                    }
                }
                ops
            }
        };
        Ok(Signature::new(letters, ops)?)
    }
}

pub fn parse_ops(decls: Option<&[String]>) -> Result<Option<Vec<(String, usize)>>> {
    let Some(decls) = decls else {
        return Ok(None);
    };
    decls
        .iter()
        .map(|d| {
            let (name, arity) = d
                .split_once('/')
                .with_context(|| format!("operator `{d}` is not NAME/ARITY"))?;
            let arity = arity
                .parse()
                .with_context(|| format!("bad arity in `{d}`"))?;
            Ok((name.to_string(), arity))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Letters for commands without text input.
pub fn grid_letters(g: &Global) -> Vec<String> {
    g.letters
        .clone()
        .unwrap_or_else(|| vec!["x".into(), "y".into()])
}

pub fn build_system<C: Scalar>(g: &Global, inputs: Inputs, weight: C) -> Result<RewriteSystem<C>> {
    let letters = match (&g.letters, inputs.letters.is_empty()) {
        (Some(ls), _) => Some(ls.clone()),
        (None, false) => Some(natural_letter_order(inputs.letters.iter().cloned())),
        (None, true) => None,
    };
    let path = match &g.system {
        SystemSpec::File(p) => p,
        builtin => {
            if g.ops.is_some() {
                bail!("--ops applies to rule files; system {builtin} has fixed operators");
            }
            let letters = letters.unwrap_or_else(|| grid_letters(g));
            let sys = match builtin {
                SystemSpec::Rb => systems::rb_system(&letters, weight)?,
                SystemSpec::Diff => systems::diff_system(&letters, weight)?,
                SystemSpec::DiffT => systems::diff_t_system(&letters, weight)?,
                _ => systems::drb_system(&letters, weight)?,
            };
            if let Some(kind) = g.order {
                if kind != sys.order().kind() {
                    bail!(
                        "system {builtin} is oriented by {}; --order {kind} needs a rule file",
                        sys.order().kind()
                    );
                }
            }
            return Ok(sys);
        }
    };
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut file = RuleFile::<C>::parse(&text).with_context(|| format!("in {}", path.display()))?;
    if let Some(ops) = parse_ops(g.ops.as_deref())? {
        file.ops = Some(ops);
    }
    // letters of the input that the file does not know about extend its alphabet
    let letters = match (g.letters.is_some(), letters) {
        (true, ls) => ls,
        (false, Some(_)) => {
            let declared: BTreeSet<String> = match &file.letters {
                Some(ls) => ls.iter().cloned().collect(),
                None => file.symbols().0,
            };
            if inputs.letters.is_subset(&declared) {
                None
            } else {
                let mut all = declared;
                all.extend(inputs.letters.iter().cloned());
                Some(natural_letter_order(all))
            }
        }
        // rules made of metavariables alone still need an alphabet for the grids
        (false, None) if file.letters.is_none() && file.symbols().0.is_empty() => {
            Some(grid_letters(g))
        }
        (false, None) => None,
    };
    let name = path
        .file_stem()
        .map_or("file".into(), |s| s.to_string_lossy().into_owned());
    Ok(systems::from_rule_file(
        &name,
        &file,
        letters.as_deref(),
        g.order,
    )?)
}

fn sig_fields(sig: &Signature) -> Vec<(&'static str, String)> {
    let ops = sig
        .op_decls()
        .iter()
        .map(|(n, a)| format!("{n}/{a}"))
        .collect::<Vec<_>>()
        .join(",");
    vec![("letters", sig.letter_names().join(",")), ("ops", ops)]
}

pub fn describe<C: Scalar>(g: &Global, sys: &RewriteSystem<C>) -> Vec<(&'static str, String)> {
    let mut fields = vec![("system", g.system.to_string())];
    fields.push(("order", sys.order().kind().to_string()));
    fields.extend(sig_fields(sys.sig()));
    fields.push((
        "lambda",
        g.lambda
            .as_ref()
            .map_or("lam".to_string(), |q| q.to_string()),
    ));
    fields
}

pub fn describe_bounds<C: Scalar>(
    g: &Global,
    sys: &RewriteSystem<C>,
    max_weight: usize,
    max_context: usize,
) -> Vec<(&'static str, String)> {
    let mut fields = describe(g, sys);
    fields.push(("max-weight", max_weight.to_string()));
    fields.push(("max-context", max_context.to_string()));
    fields
}
