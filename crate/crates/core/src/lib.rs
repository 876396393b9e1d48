//! Free associative algebras with linear operators.
//!
//! Words are built from letters and operator applications; polynomials are
//! finite combinations of words over a scalar field. Rewrite systems are
//! given by rule schemas whose metavariables range over nonempty words, and
//! a bounded Composition-Diamond check decides triviality of all ambiguities
//! up to a weight bound. Three presentations come ready made: Rota-Baxter
//! (`rb`), λ-differential (`diff`, `diff-t`) and λ-differential Rota-Baxter
//! (`drb`), together with their bases of irreducible words.
//!
//! Everything is generic over the scalar type; [`RatFunc`] (rational
//! functions in the weight `lam`) is the default and [`BigRational`] is used
//! once the weight is fixed to a number.
//!
//! ```
//! use opalg::{systems, syntax::parse_poly, Poly, RatFunc, DEFAULT_FUEL};
//!
//! let sys = systems::rb_system(&["a", "b"], RatFunc::lam()).unwrap();
//! let f: Poly = parse_poly(sys.sig(), "P(a)P(b)").unwrap();
//! let (nf, _) = sys.normal_form(&f, DEFAULT_FUEL).unwrap();
//! assert_eq!(nf.display(sys.sig(), sys.order()), "P(P(a)b) + P(aP(b)) + lam*P(ab)");
//! ```

pub mod composition;
pub mod error;
pub mod normalizer;
pub mod orders;
pub mod poly;
pub mod ratfunc;
pub mod rewrite;
pub mod scalar;
pub mod schema;
pub mod syntax;
pub mod systems;
pub mod terms;

pub use num_rational::BigRational;

pub use composition::{
    check_gsb, complete, enumerate_compositions, find_inclusions, find_intersections, is_trivial,
    Composition, FamilyKey, GsbReport, Shape,
};
pub use error::{Error, Result};
pub use orders::{check_monomial_property, MonomialOrder, OrderKind};
pub use poly::OmegaPolynomial;
pub use ratfunc::{RatFunc, UPoly};
pub use rewrite::{ReductionError, ReductionTrace, RewriteSystem, Strategy, DEFAULT_FUEL};
pub use scalar::Scalar;
pub use schema::RuleSchema;
pub use terms::{DoubleStarWord, Letter, OpId, Prime, Signature, Site, StarWord, Word};

/// Polynomials with coefficients in `ℚ(lam)`.
pub type Poly = OmegaPolynomial<RatFunc>;
/// Polynomials once the weight is a fixed rational.
pub type RationalPoly = OmegaPolynomial<BigRational>;
pub type System = RewriteSystem<RatFunc>;
pub type Report = GsbReport<RatFunc>;

/// Worker threads for the composition check: `OPALG_THREADS` if set to a
/// positive integer, otherwise the available parallelism.
pub fn default_threads() -> usize {
    std::env::var("OPALG_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
