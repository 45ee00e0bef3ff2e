//! Exact characters of finite-dimensional simple `gl(m|n)`-modules.
//!
//! Everything here is exact: coefficients are arbitrary-precision integers,
//! half-integer weights are stored doubled, and every identity between the
//! different character formulas is checked as an identity of rational
//! characters (numerator, denominator multiset, unit monomial), never
//! numerically.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactring`]: Laurent polynomials in `x_1..x_m, y_1..y_n` with
//!   half-integer exponents, oriented binomial denominator factors,
//!   rational characters, the Weyl group `S_m x S_n` and skew
//!   symmetrization, exact division, truncated geometric expansion.
//! - [`roots`]: simple root orders of `gl(m|n)` as shuffles of
//!   `eps_1..eps_m` and `del_1..del_n`, positive roots, the Weyl vector,
//!   odd reflections and how `lambda + rho` transforms under them,
//!   dominance and integrality tests.
//! - [`arcdiag`]: arc diagrams (an order, one integer entry per node, arcs
//!   pairing equal-entry nodes of opposite kinds), their validity
//!   invariants, the local moves, standardization, the shortening walk to a
//!   special diagram, and the direct construction of the special diagram.
//! - [`weightdiag`]: weight diagrams on the integer line, right moves,
//!   path enumeration and Kazhdan-Lusztig polynomials, trivial paths,
//!   source enumeration, and the maximal orbit element used by the
//!   truncated character.
//! - [`charformulas`]: the Weyl denominator, Kac numerator, the
//!   Kac-Wakimoto, Su-Zhang, nested, and stepwise formulas, the
//!   determinantal formula with its Bareiss evaluation and sign audit, the
//!   truncated Kazhdan-Lusztig character, and extraction of the honest
//!   character from a formula value.
//! - [`oracles`]: independent cross-checks (hook Schur functions via
//!   Berele-Regev tableaux, covariant highest weights).

#![forbid(unsafe_code)]

pub mod arcdiag;
pub mod charformulas;
pub mod exactring;
pub mod oracles;
pub mod roots;
pub mod weightdiag;



pub use arcdiag::{ArcDiagram, DiagramError, Move, SpecialShape};
pub use charformulas::{
    determinantal, expand_to_valuation, extract_character, kac_formula, kac_numerator, kw_formula,
    nested_formula, sign_audit, stepwise_formula, su_zhang, symmetrized_leibniz, truncated_kl_char,
    weyl_denominator, FormulaError, FormulaKind, FormulaMeta, FormulaResult, SignAudit,
};
pub use oracles::{covariant_weight, super_schur, OracleError, Partition};
pub use exactring::{
    rc_equal, skew_symmetrize, DenFactor, ExponentVector, LaurentPoly, RationalChar, WeylElement,
};
pub use roots::{NodeKind, RhoWeight, Root, SimpleRootSystem};
pub use weightdiag::{KLPoly, RightPath, Symbol, WeightDiagram, WeightError};

