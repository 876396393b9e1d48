mod config;
mod report;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use opalg::{
    composition::{check_gsb, complete, enumerate_compositions},
    default_threads,
    rewrite::with_large_stack,
    syntax::{parse_poly, parse_word, RuleFile},
    systems, BigRational, MonomialOrder, OrderKind, RatFunc, Scalar, Strategy, DEFAULT_FUEL,
};

use config::{Inputs, SystemSpec};
use report::{Format, Out};

#[derive(Parser, Debug)]
#[command(
    name = "opalg",
    version,
    about = "Rewriting and Gröbner-Shirshov checks for algebras with operators"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Letters from greatest to smallest, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    letters: Option<Vec<String>>,
    /// Operators as NAME/ARITY, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    ops: Option<Vec<String>>,
    /// Monomial order: deglex, o1, o2 or o3.
    #[arg(long, global = true)]
    order: Option<OrderKind>,
    /// rb, diff, diff-t, drb or file:<path>.
    #[arg(long, global = true, default_value = "rb")]
    system: SystemSpec,
    /// Maximum number of rewriting steps for `nf`.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    /// Fix the weight to a rational number instead of the symbol `lam`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<BigRational>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Normal form of a polynomial.
    Nf {
        poly: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Lo)]
        strategy: StrategyArg,
    },
    /// List the compositions of the bounded grids.
    Compose(Bounds),
    /// Check every composition of the bounded grids for triviality.
    CheckGsb(Bounds),
    /// List basis words, ascending in the active order.
    EnumBasis {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        max_weight: usize,
    },
    /// Product of two Rota-Baxter words.
    MulRb { left: String, right: String },
    /// `D` applied to a product of iterated derivatives.
    DApply { word: String },
    /// Compare two words: LT, EQ or GT.
    OrderCmp { left: String, right: String },
    /// Bounded completion of a file of relations.
    Complete {
        #[arg(long)]
        rules: std::path::PathBuf,
        #[arg(long)]
        max_weight: usize,
        #[arg(long, default_value_t = 8)]
        max_rounds: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct Bounds {
    /// Weight bound for metavariable values.
    #[arg(long)]
    max_weight: usize,
    /// Weight bound for embedding contexts.
    #[arg(long, default_value_t = 0)]
    max_context: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum StrategyArg {
    /// Leftmost-outermost.
    Lo,
    /// Rightmost-innermost.
    Ri,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Phi,
    Domega,
    Phidomega,
    Irr,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = with_large_stack(move || match cli.global.lambda.clone() {
        Some(q) => run::<BigRational>(&cli, q),
        None => run::<RatFunc>(&cli, RatFunc::lam()),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Runs one command; the result is the process exit code.
fn run<C: Scalar>(cli: &Cli, weight: C) -> Result<u8> {
    let g = &cli.global;
    let mut out = Out::new(g.format);
    let code = match &cli.command {
        Command::Nf {
            poly,
            trace,
            strategy,
        } => {
            let sys = config::build_system(g, Inputs::texts::<C, _>(&[poly])?, weight)?;
            let f = parse_poly::<C>(sys.sig(), poly)?;
            let strategy = match strategy {
                StrategyArg::Lo => Strategy::LeftmostOutermost,
                StrategyArg::Ri => Strategy::RightmostInnermost,
            };
            let (nf, steps) = sys.normal_form_with(&f, g.fuel, strategy)?;
            out.header("nf", &config::describe(g, &sys));
            out.poly("normal-form", &nf.display(sys.sig(), sys.order()));
            if *trace {
                out.trace(&sys, &steps);
            }
            0
        }
        Command::Compose(b) => {
            let sys = config::build_system(g, Inputs::default(), weight)?;
            let comps =
                enumerate_compositions(&sys, b.max_weight, b.max_context, default_threads())?;
            out.header(
                "compose",
                &config::describe_bounds(g, &sys, b.max_weight, b.max_context),
            );
            out.compositions(&sys, &comps);
            0
        }
        Command::CheckGsb(b) => {
            let sys = config::build_system(g, Inputs::default(), weight)?;
            let r = check_gsb(&sys, b.max_weight, b.max_context, default_threads())?;
            out.header(
                "check-gsb",
                &config::describe_bounds(g, &sys, b.max_weight, b.max_context),
            );
            out.gsb_report(&sys, &r);
            if r.is_gsb() {
                0
            } else {
                2
            }
        }
        Command::EnumBasis { family, max_weight } => {
            let (sig, order, words) = enum_basis::<C>(g, *family, *max_weight, weight)?;
            out.header(
                "enum-basis",
                &[
                    ("family", format!("{family:?}").to_lowercase()),
                    ("letters", sig.letter_names().join(",")),
                    ("order", order.kind().to_string()),
                    ("max-weight", max_weight.to_string()),
                ],
            );
            out.words(&sig, &words);
            0
        }
        Command::MulRb { left, right } => {
            let inputs = Inputs::texts::<C, _>(&[left, right])?;
            let sig = inputs.signature(g, &[("P", 1)])?;
            let p = sig.require_op("P")?;
            let order = MonomialOrder::new(OrderKind::Order1, &sig)?;
            let (u, v) = (parse_word(&sig, left)?, parse_word(&sig, right)?);
            let prod = systems::rb_product(&u, &v, p, &weight)?;
            out.header("mul-rb", &[("letters", sig.letter_names().join(","))]);
            out.poly("product", &prod.display(&sig, &order));
            0
        }
        Command::DApply { word } => {
            let inputs = Inputs::texts::<C, _>(&[word])?;
            let sig = inputs.signature(g, &[("D", 1)])?;
            let d = sig.require_op("D")?;
            let order = MonomialOrder::new(OrderKind::Order2, &sig)?;
            let u = parse_word(&sig, word)?;
            let image = systems::d_extend(&u, d, &weight)?;
            out.header("d-apply", &[("letters", sig.letter_names().join(","))]);
            out.poly("image", &image.display(&sig, &order));
            0
        }
        Command::OrderCmp { left, right } => {
            let Some(kind) = g.order else {
                bail!("order-cmp needs --order");
            };
            let extra: &[(&str, usize)] = match kind {
                OrderKind::Order2 => &[("D", 1)],
                OrderKind::Order3 => &[("P", 1), ("D", 1)],
                _ => &[],
            };
            let inputs = Inputs::texts::<C, _>(&[left, right])?;
            let sig = inputs.signature(g, extra)?;
            let order = MonomialOrder::new(kind, &sig)?;
            let (u, v) = (parse_word(&sig, left)?, parse_word(&sig, right)?);
            let verdict = match order.compare(&u, &v) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            out.header("order-cmp", &[("order", kind.to_string())]);
            out.verdict(verdict);
            0
        }
        Command::Complete {
            rules,
            max_weight,
            max_rounds,
        } => {
            let text = std::fs::read_to_string(rules)
                .with_context(|| format!("cannot read {}", rules.display()))?;
            let mut file = RuleFile::<C>::parse(&text)?;
            if let Some(ops) = config::parse_ops(g.ops.as_deref())? {
                file.ops = Some(ops);
            }
            if let Some(line) = file.rules.iter().find(|r| !r.vars.is_empty()) {
                bail!(
                    "line {}: completion works on concrete relations, not schemas",
                    line.line
                );
            }
            let sig = systems::rule_file_signature(&file, g.letters.as_deref())?;
            let kind = g.order.or(file.order).unwrap_or(if sig.num_ops() == 0 {
                OrderKind::DegLex
            } else {
                OrderKind::Order1
            });
            let order = MonomialOrder::new(kind, &sig)?;
            let polys = file
                .rules
                .iter()
                .map(|r| r.poly.resolve(&sig, &[]))
                .collect::<opalg::Result<Vec<_>>>()?;
            let c = complete(&sig, &order, &polys, *max_weight, *max_rounds)?;
            out.header(
                "complete",
                &[
                    ("letters", sig.letter_names().join(",")),
                    ("order", kind.to_string()),
                    ("max-weight", max_weight.to_string()),
                    ("max-rounds", max_rounds.to_string()),
                ],
            );
            out.completion(&sig, &order, &c);
            0
        }
    };
    out.finish();
    Ok(code)
}

fn enum_basis<C: Scalar>(
    g: &Global,
    family: Family,
    max_weight: usize,
    weight: C,
) -> Result<(opalg::Signature, MonomialOrder, Vec<opalg::Word>)> {
    let letters = config::grid_letters(g);
    let (sig, default_kind, words) = match family {
        Family::Irr => {
            let sys = config::build_system(g, Inputs::default(), weight)?;
            let words = sys.enumerate_irr(max_weight);
            (sys.sig().clone(), sys.order().kind(), words)
        }
        Family::Phi => {
            let sig = opalg::Signature::new(letters, [("P".to_string(), 1)])?;
            let p = sig.require_op("P")?;
            let words = systems::phi_words(&sig, p, max_weight);
            (sig, OrderKind::Order1, words)
        }
        Family::Domega => {
            let sig = opalg::Signature::new(letters, [("D".to_string(), 1)])?;
            let d = sig.require_op("D")?;
            let words = systems::d_omega_monomials(&sig, d, max_weight);
            (sig, OrderKind::Order2, words)
        }
        Family::Phidomega => {
            let sig = opalg::Signature::new(letters, [("P".to_string(), 1), ("D".to_string(), 1)])?;
            let p = sig.require_op("P")?;
            let d = sig.require_op("D")?;
            let words = systems::phi_d_omega(&sig, p, d, max_weight);
            (sig, OrderKind::Order3, words)
        }
    };
    let order = MonomialOrder::new(g.order.unwrap_or(default_kind), &sig)?;
    let mut words = words;
    words.sort_by(|u, v| order.compare(u, v));
    words.dedup();
    Ok((sig, order, words))
}
