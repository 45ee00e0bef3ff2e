//! Character formula evaluators and the extraction layer.
//!
//! Every evaluator here computes the same invariant of a finite dimensional
//! simple module: the product of the Weyl denominator with the character,
//! held exactly as a [`RationalChar`]. The closed formulas are alternating
//! Weyl-group sums of a monomial over binomial factors, differing in which
//! diagram they read the data from; the determinantal route evaluates a
//! block matrix by fraction-free elimination instead. Agreement between
//! routes is decided exactly with [`rc_equal`], and [`extract_character`]
//! divides the Weyl denominator back out to recover the character itself.

use crate::arcdiag::{ArcDiagram, DiagramError, SpecialShape};
use crate::exactring::{
    expand_truncated, has_reflection_stabilizer, multiset_intersect, multiset_sub, rc_equal,
    skew_symmetrize, skew_symmetrize_poly, Coeff, DenFactor, ExponentVector, LaurentPoly,
    RationalChar, RingError, WeylElement,
};
use crate::roots::{
    positive_roots, rho, NodeKind, RhoWeight, Root, RootError, SimpleRootSystem,
};
use crate::weightdiag::{
    enumerate_sources, is_totally_connected, kl_polynomial, to_weight_diagram, WeightError,
};
use itertools::Itertools;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("diagram is not admissible")]
    NotAdmissible,
    #[error("weight is not totally connected")]
    NotTotallyConnected,
    #[error("malformed special shape: {0}")]
    BadShape(String),
    #[error("malformed matrix: {0}")]
    BadMatrix(String),
    #[error("extracted character failed validation: {0}")]
    BadCharacter(String),
}

/// Which evaluation route produced a [`FormulaResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaKind {
    Kac,
    KacWakimoto,
    SuZhang,
    Nested,
    Stepwise,
    Determinantal,
    Leibniz,
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FormulaKind::Kac => "kac",
            FormulaKind::KacWakimoto => "kw",
            FormulaKind::SuZhang => "su-zhang",
            FormulaKind::Nested => "nested",
            FormulaKind::Stepwise => "stepwise",
            FormulaKind::Determinantal => "determinantal",
            FormulaKind::Leibniz => "leibniz",
        };
        write!(f, "{name}")
    }
}

/// Evaluation context recorded alongside a formula value: the simple root
/// order the data was read in, the shifted highest weight, the odd roots in
/// the denominator, the global sign applied, and the symmetric-group order
/// divided out.
#[derive(Clone, Debug)]
pub struct FormulaMeta {
    pub kind: FormulaKind,
    pub pi: SimpleRootSystem,
    pub lambda_rho: RhoWeight,
    pub s_set: Vec<Root>,
    pub sign: i8,
    pub r_factorial: Coeff,
}

/// A formula value together with the context it was evaluated in. The value
/// is the Weyl denominator times the character of the module.
#[derive(Clone, Debug)]
pub struct FormulaResult {
    pub value: RationalChar,
    pub meta: FormulaMeta,
}

/// Bookkeeping for the determinant's global sign. `length_u` and `length_v`
/// are the inversion counts of the block rotations that carry the matrix
/// diagonal to the formula monomial; `derived_sign` is the parity of their
/// sum. `printed_exponent` is the product `r * (t + q)` quoted alongside the
/// determinant in the source material for this layout, and `matches` records
/// whether its parity agrees with the derived one (and whether the rotated
/// diagonal really is the formula monomial).
#[derive(Clone, Debug)]
pub struct SignAudit {
    pub length_u: usize,
    pub length_v: usize,
    pub printed_exponent: usize,
    pub derived_sign: i8,
    pub matches: bool,
}

fn factorial(r: usize) -> Coeff {
    (1..=r).fold(Coeff::one(), |acc, k| acc * Coeff::from(k as u64))
}

fn inversions(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv
}

fn odd_raw_den(s: &[Root], m: usize, n: usize) -> Vec<(i8, ExponentVector)> {
    s.iter().map(|beta| (-1, beta.as_exponent(m, n))).collect()
}

/// `e^rho * prod_{even alpha > 0} (1 - e^{-alpha}) / prod_{odd beta > 0}
/// (1 + e^{-beta})` for the given order. The even factors expand into the
/// numerator; the odd ones stay as denominator factors. As a rational
/// character this is independent of the order.
pub fn weyl_denominator(pi: &SimpleRootSystem) -> RationalChar {
    let (m, n) = (pi.m(), pi.n());
    let pr = positive_roots(pi);
    let mut num = LaurentPoly::monomial(rho(pi).as_exponent(), Coeff::one());
    for alpha in &pr.even {
        let factor = LaurentPoly::one(m, n).sub(&LaurentPoly::monomial(
            alpha.as_exponent(m, n).neg(),
            Coeff::one(),
        ));
        num = num.mul(&factor);
    }
    RationalChar::new(num, odd_raw_den(&pr.odd, m, n), ExponentVector::zero(m, n))
        .expect("odd positive roots orient")
}

/// Alternating Weyl-group sum of the monomial `e^{lambda_rho}`. Zero when a
/// reflection stabilizes the weight.
pub fn kac_numerator(lr: &RhoWeight) -> LaurentPoly {
    let e = lr.as_exponent();
    let (m, n) = e.dims();
    if has_reflection_stabilizer(&e) {
        return LaurentPoly::zero(m, n);
    }
    LaurentPoly::from_terms(
        m,
        n,
        WeylElement::all(m, n)
            .into_iter()
            .map(|w| (e.apply_weyl(&w), Coeff::from(i64::from(w.sign())))),
    )
}

/// Typical-weight evaluator: the value is the bare alternating sum, with no
/// denominator factors. Used as the degenerate case other routes must match
/// when the atypical set is empty.
pub fn kac_formula(lr: &RhoWeight) -> FormulaResult {
    let (m, n) = lr.dims();
    FormulaResult {
        value: RationalChar::from_poly(kac_numerator(lr)),
        meta: FormulaMeta {
            kind: FormulaKind::Kac,
            pi: SimpleRootSystem::standard(m.max(1), n.max(1)),
            lambda_rho: lr.clone(),
            s_set: Vec::new(),
            sign: 1,
            r_factorial: Coeff::one(),
        },
    }
}

fn alternating_over_arcs(
    lr: &RhoWeight,
    s: &[Root],
    r: usize,
) -> Result<RationalChar, RingError> {
    let (m, n) = lr.dims();
    if s.is_empty() {
        let num = skew_symmetrize_poly(&LaurentPoly::monomial(lr.as_exponent(), Coeff::one()));
        return Ok(RationalChar::from_poly(num));
    }
    // The group permutes the full set of odd roots, so over the common
    // denominator (all of them, oriented eps - del) the w-summand's
    // complement factors are the w-image of one fixed complement product:
    // symmetrize a single polynomial instead of recombining per-coset
    // denominators. A factor given as del - eps reorients through
    // 1/(1 + e^{del - eps}) = e^{del - eps} / (1 + e^{eps - del}), adding
    // its own exponent to the numerator monomial.
    let mut top = lr.as_exponent();
    let mut in_s = std::collections::BTreeSet::new();
    for beta in s {
        match beta.plus.0 {
            NodeKind::Eps => {
                in_s.insert((beta.plus.1, beta.minus.1));
            }
            NodeKind::Del => {
                in_s.insert((beta.minus.1, beta.plus.1));
                top = top.add(&beta.as_exponent(m, n));
            }
        }
    }
    let mut base = LaurentPoly::monomial(top, Coeff::one());
    let mut den = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let beta = Root { plus: (NodeKind::Eps, i), minus: (NodeKind::Del, j) };
            let factor = DenFactor::new(-1, beta.as_exponent(m, n))?;
            if !in_s.contains(&(i, j)) {
                base = base.mul(&factor.as_poly());
            }
            den.push(factor);
        }
    }
    den.sort();
    let num = skew_symmetrize_poly(&base).divide_scalar_exact(&factorial(r))?;
    Ok(RationalChar { num, den, unit: ExponentVector::zero(m, n) })
}

/// Evaluate on an admissible diagram: `(1/r!) F_W(e^{lambda_rho} /
/// prod_{beta in S} (1 + e^{-beta}))`, read directly off the diagram with no
/// raising and no sign.
pub fn kw_formula(d: &ArcDiagram) -> Result<FormulaResult, FormulaError> {
    if !d.is_admissible() {
        return Err(FormulaError::NotAdmissible);
    }
    let lr = d.rho_weight();
    let s = d.atypical_roots();
    let value = alternating_over_arcs(&lr, &s, d.r())?;
    Ok(FormulaResult {
        value,
        meta: FormulaMeta {
            kind: FormulaKind::KacWakimoto,
            pi: d.order().clone(),
            lambda_rho: lr,
            s_set: s,
            sign: 1,
            r_factorial: factorial(d.r()),
        },
    })
}

/// Evaluate on any valid diagram, long arcs included, by first raising all
/// arc entries to the maximal one: the weight in the numerator becomes the
/// raised weight and the value picks up the parity of the total raise
/// valuation as a global sign.
pub fn stepwise_formula(d: &ArcDiagram) -> Result<FormulaResult, FormulaError> {
    d.validate()?;
    let lr = d.rho_weight();
    let s = d.atypical_roots();
    let (up, val) = d.lambda_up_and_val();
    let mut value = alternating_over_arcs(&up, &s, d.r())?;
    let sign: i8 = if val.rem_euclid(2) == 1 { -1 } else { 1 };
    if sign < 0 {
        value.num = value.num.neg();
    }
    Ok(FormulaResult {
        value,
        meta: FormulaMeta {
            kind: FormulaKind::Stepwise,
            pi: d.order().clone(),
            lambda_rho: lr,
            s_set: s,
            sign,
            r_factorial: factorial(d.r()),
        },
    })
}

/// The raised formula read on the standard-order diagram of a totally
/// connected weight.
pub fn su_zhang(lr_st: &RhoWeight, s_set: &[Root]) -> Result<FormulaResult, FormulaError> {
    if !is_totally_connected(lr_st)? {
        return Err(FormulaError::NotTotallyConnected);
    }
    let (m, n) = lr_st.dims();
    let d = ArcDiagram::build(&SimpleRootSystem::standard(m, n), lr_st, s_set)?;
    let mut out = stepwise_formula(&d)?;
    out.meta.kind = FormulaKind::SuZhang;
    Ok(out)
}

/// Nested-denominator form for a totally connected weight: a single
/// alternating sum of the raised monomial over the factors
/// `1 - (-1)^k e^{-(beta_1 + ... + beta_k)}`, with no division by `r!`.
/// The arcs are taken in increasing order of their entries.
///
/// Expanding the nested factors geometrically enumerates strictly
/// decreasing multiplicity tuples (ties die to a reflection stabilizer)
/// with coefficient `(-1)^{sum of multiplicities}`, which shifts the count
/// base by the raise valuation; the valuation's parity therefore multiplies
/// the whole sum, exactly as in the stepwise form.
pub fn nested_formula(lr_st: &RhoWeight, s_set: &[Root]) -> Result<FormulaResult, FormulaError> {
    if !is_totally_connected(lr_st)? {
        return Err(FormulaError::NotTotallyConnected);
    }
    let (m, n) = lr_st.dims();
    let d = ArcDiagram::build(&SimpleRootSystem::standard(m, n), lr_st, s_set)?;
    let s = d.atypical_roots();
    let (up, val) = d.lambda_up_and_val();
    let mut raw = Vec::with_capacity(s.len());
    let mut gamma = ExponentVector::zero(m, n);
    for (k, beta) in s.iter().enumerate() {
        gamma = gamma.add(&beta.as_exponent(m, n));
        let factor_sign: i8 = if (k + 1) % 2 == 1 { -1 } else { 1 };
        raw.push((factor_sign, gamma.clone()));
    }
    let rc = RationalChar::new(
        LaurentPoly::monomial(up.as_exponent(), Coeff::one()),
        raw,
        ExponentVector::zero(m, n),
    )?;
    let mut value = skew_symmetrize(&rc);
    let sign: i8 = if val.rem_euclid(2) == 1 { -1 } else { 1 };
    if sign < 0 {
        value.num = value.num.neg();
    }
    Ok(FormulaResult {
        value,
        meta: FormulaMeta {
            kind: FormulaKind::Nested,
            pi: d.order().clone(),
            lambda_rho: lr_st.clone(),
            s_set: s,
            sign,
            r_factorial: Coeff::one(),
        },
    })
}

fn shape_check(shape: &SpecialShape) -> Result<(), FormulaError> {
    let zones_ok = shape.r == 0
        || (shape.a[..shape.p].iter().all(|&v| v > shape.z)
            && shape.a[shape.p..].iter().all(|&v| v < shape.z)
            && shape.b[..shape.q].iter().all(|&v| v < shape.z)
            && shape.b[shape.q..].iter().all(|&v| v > shape.z));
    let ok = shape.a.len() == shape.p + shape.t
        && shape.b.len() == shape.q + shape.s
        && shape.m() >= 1
        && shape.n() >= 1
        && shape.a.windows(2).all(|w| w[0] > w[1])
        && shape.b.windows(2).all(|w| w[0] < w[1])
        && zones_ok;
    if ok {
        Ok(())
    } else {
        Err(FormulaError::BadShape(format!(
            "p={} q={} r={} t={} s={} z={} a={:?} b={:?}",
            shape.p, shape.q, shape.r, shape.t, shape.s, shape.z, shape.a, shape.b
        )))
    }
}

fn special_order(shape: &SpecialShape) -> Result<SimpleRootSystem, RootError> {
    let mut order = String::with_capacity(shape.m() + shape.n());
    order.extend(std::iter::repeat('e').take(shape.p));
    order.extend(std::iter::repeat('d').take(shape.q));
    for _ in 0..shape.r {
        order.push_str("ed");
    }
    order.extend(std::iter::repeat('e').take(shape.t));
    order.extend(std::iter::repeat('d').take(shape.s));
    SimpleRootSystem::from_shuffle(&order)
}

fn shape_weight(shape: &SpecialShape) -> RhoWeight {
    let mut a = Vec::with_capacity(shape.m());
    a.extend_from_slice(&shape.a[..shape.p]);
    a.extend(std::iter::repeat(shape.z).take(shape.r));
    a.extend_from_slice(&shape.a[shape.p..]);
    let mut b = Vec::with_capacity(shape.n());
    b.extend_from_slice(&shape.b[..shape.q]);
    b.extend(std::iter::repeat(shape.z).take(shape.r));
    b.extend_from_slice(&shape.b[shape.q..]);
    RhoWeight::from_integers(&a, &b)
}

fn shape_roots(shape: &SpecialShape) -> Vec<Root> {
    (0..shape.r)
        .map(|k| Root {
            plus: (NodeKind::Eps, shape.p + k),
            minus: (NodeKind::Del, shape.q + k),
        })
        .collect()
}

fn odd_pair_exponent(m: usize, n: usize, i: usize, j: usize) -> ExponentVector {
    Root { plus: (NodeKind::Eps, i), minus: (NodeKind::Del, j) }.as_exponent(m, n)
}

/// The block matrix whose determinant carries the character: for `i <= m`,
/// row `i` holds `x_i^{a_j}` in the first `m - r` columns and
/// `(x_i y_j)^z / (1 + (x_i y_j)^{-1})` in the last `n`; the remaining
/// `n - r` rows are zero there and hold `y_j^{b_i}` in the last `n` columns.
pub fn determinantal_matrix(
    shape: &SpecialShape,
) -> Result<Vec<Vec<RationalChar>>, FormulaError> {
    shape_check(shape)?;
    let (m, n, r) = (shape.m(), shape.n(), shape.r);
    let size = m + n - r;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = Vec::with_capacity(size);
        for &aj in &shape.a {
            let mut e = ExponentVector::zero(m, n);
            e.eps2[i] = 2 * aj;
            row.push(RationalChar::from_poly(LaurentPoly::monomial(e, Coeff::one())));
        }
        for j in 0..n {
            let mut e = ExponentVector::zero(m, n);
            e.eps2[i] = 2 * shape.z;
            e.del2[j] = 2 * shape.z;
            row.push(RationalChar::new(
                LaurentPoly::monomial(e, Coeff::one()),
                vec![(-1, odd_pair_exponent(m, n, i, j))],
                ExponentVector::zero(m, n),
            )?);
        }
        rows.push(row);
    }
    for i2 in 0..n - r {
        let mut row = Vec::with_capacity(size);
        for _ in 0..m - r {
            row.push(RationalChar::from_poly(LaurentPoly::zero(m, n)));
        }
        for j in 0..n {
            let mut e = ExponentVector::zero(m, n);
            e.del2[j] = 2 * shape.b[i2];
            row.push(RationalChar::from_poly(LaurentPoly::monomial(e, Coeff::one())));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Same matrix with row `i <= m` multiplied by `prod_j (1 + (x_i y_j)^{-1})`,
/// which clears every fraction. The determinant of the original matrix is
/// recovered by dividing the cleared determinant by those `m * n` factors.
fn assemble_cleared(shape: &SpecialShape) -> Vec<Vec<LaurentPoly>> {
    let (m, n, r) = (shape.m(), shape.n(), shape.r);
    let size = m + n - r;
    let odd_factor = |i: usize, j: usize| {
        DenFactor::new(-1, odd_pair_exponent(m, n, i, j))
            .expect("odd pair orients")
            .as_poly()
    };
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let full =
            (0..n).fold(LaurentPoly::one(m, n), |acc, j| acc.mul(&odd_factor(i, j)));
        let mut row = Vec::with_capacity(size);
        for &aj in &shape.a {
            let mut e = ExponentVector::zero(m, n);
            e.eps2[i] = 2 * aj;
            row.push(full.mul_monomial(&e));
        }
        for j in 0..n {
            let partial = (0..n)
                .filter(|&j2| j2 != j)
                .fold(LaurentPoly::one(m, n), |acc, j2| acc.mul(&odd_factor(i, j2)));
            let mut e = ExponentVector::zero(m, n);
            e.eps2[i] = 2 * shape.z;
            e.del2[j] = 2 * shape.z;
            row.push(partial.mul_monomial(&e));
        }
        rows.push(row);
    }
    for i2 in 0..n - r {
        let mut row = Vec::with_capacity(size);
        for _ in 0..m - r {
            row.push(LaurentPoly::zero(m, n));
        }
        for j in 0..n {
            let mut e = ExponentVector::zero(m, n);
            e.del2[j] = 2 * shape.b[i2];
            row.push(LaurentPoly::monomial(e, Coeff::one()));
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free determinant with row pivoting. Every intermediate entry is
/// a minor of the (row-permuted) input, so each division is exact.
fn det_bareiss(mut mat: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly, RingError> {
    let size = mat.len();
    assert!(size > 0, "empty matrix");
    let (m, n) = mat[0][0].dims();
    let mut flip = false;
    let mut prev = LaurentPoly::one(m, n);
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(l) = (k + 1..size).find(|&l| !mat[l][k].is_zero()) else {
                return Ok(LaurentPoly::zero(m, n));
            };
            mat.swap(k, l);
            flip = !flip;
        }
        if k + 1 == size {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = t.divide_exact(&prev)?;
            }
            mat[i][k] = LaurentPoly::zero(m, n);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if flip { det.neg() } else { det })
}

/// First-row cofactor expansion; exponential, only for small cross-checks.
#[cfg(test)]
fn det_cofactor(mat: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let size = mat.len();
    let (m, n) = mat[0][0].dims();
    if size == 1 {
        return mat[0][0].clone();
    }
    let mut acc = LaurentPoly::zero(m, n);
    for j in 0..size {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = mat[0][j].mul(&det_cofactor(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Symmetrized Leibniz sum for an `(m + n - r)`-square matrix whose last
/// `n - r` rows vanish in the first `m - r` columns: sum over
/// `(u, v) in S_m x S_n` of the signed product that reads row `u(i)` in
/// column `i` for `i <= m - r`, row `u(i)` in column `v`-image for the
/// middle band, and row `i` in column `v`-image for the tail, divided by
/// `r!`. Equals the determinant whenever the corner block vanishes.
pub fn symmetrized_leibniz_matrix(
    mat: &[Vec<LaurentPoly>],
    m: usize,
    n: usize,
    r: usize,
) -> Result<LaurentPoly, FormulaError> {
    let size = m + n - r;
    if r > m.min(n) || m == 0 || n == 0 {
        return Err(FormulaError::BadMatrix(format!("bad block sizes m={m} n={n} r={r}")));
    }
    if mat.len() != size || mat.iter().any(|row| row.len() != size) {
        return Err(FormulaError::BadMatrix(format!("matrix is not {size}x{size}")));
    }
    let (dm, dn) = mat[0][0].dims();
    let mut acc = LaurentPoly::zero(dm, dn);
    for u in (0..m).permutations(m) {
        for v in (0..n).permutations(n) {
            let neg = (inversions(&u) + inversions(&v)) % 2 == 1;
            let mut prod = LaurentPoly::one(dm, dn);
            let mut vanished = false;
            for i in 0..size {
                let row = if i < m { u[i] } else { i };
                let col = if i < m - r { i } else { m - r + v[i - (m - r)] };
                let entry = &mat[row][col];
                if entry.is_zero() {
                    vanished = true;
                    break;
                }
                prod = prod.mul(entry);
            }
            if vanished {
                continue;
            }
            acc = if neg { acc.sub(&prod) } else { acc.add(&prod) };
        }
    }
    Ok(acc.divide_scalar_exact(&factorial(r))?)
}

fn diag_rc(shape: &SpecialShape) -> Result<RationalChar, RingError> {
    let (m, n, r) = (shape.m(), shape.n(), shape.r);
    let mut e = ExponentVector::zero(m, n);
    for (i, &ai) in shape.a.iter().enumerate() {
        e.eps2[i] = 2 * ai;
    }
    for k in 0..r {
        e.eps2[m - r + k] = 2 * shape.z;
        e.del2[k] = 2 * shape.z;
    }
    for (j, &bj) in shape.b.iter().enumerate() {
        e.del2[r + j] = 2 * bj;
    }
    let raw: Vec<(i8, ExponentVector)> =
        (0..r).map(|k| (-1, odd_pair_exponent(m, n, m - r + k, k))).collect();
    RationalChar::new(LaurentPoly::monomial(e, Coeff::one()), raw, ExponentVector::zero(m, n))
}

fn t_lambda_rc(shape: &SpecialShape) -> Result<RationalChar, RingError> {
    let (m, n) = (shape.m(), shape.n());
    let raw: Vec<(i8, ExponentVector)> = shape_roots(shape)
        .iter()
        .map(|beta| (-1, beta.as_exponent(m, n)))
        .collect();
    RationalChar::new(
        LaurentPoly::monomial(shape_weight(shape).as_exponent(), Coeff::one()),
        raw,
        ExponentVector::zero(m, n),
    )
}

/// Derive the determinant's global sign from first principles: the matrix
/// diagonal is carried to the formula monomial by the pair of block
/// rotations `u` (cycling the `r` arc columns past the `t` small bullets)
/// and `v` (cycling the `r` arc rows past the `q` small crosses), so the
/// sign is the parity of `l(u) + l(v) = r*t + r*q`. The audit also verifies
/// the transport as an identity of rational characters and compares against
/// the quoted exponent `r*(t + q)`.
pub fn sign_audit(shape: &SpecialShape) -> Result<SignAudit, FormulaError> {
    shape_check(shape)?;
    let (m, n, r) = (shape.m(), shape.n(), shape.r);
    let (p, q, t) = (shape.p, shape.q, shape.t);
    let sigma: Vec<usize> = (0..p).chain(p + r..m).chain(p..p + r).collect();
    let tau: Vec<usize> = (q..q + r).chain(0..q).chain(q + r..n).collect();
    let length_u = inversions(&sigma);
    let length_v = inversions(&tau);
    let w0 = WeylElement::new(sigma, tau)?;
    let transported = rc_equal(&diag_rc(shape)?.apply_weyl(&w0), &t_lambda_rc(shape)?);
    let printed_exponent = r * (t + q);
    let derived_sign: i8 = if (length_u + length_v) % 2 == 0 { 1 } else { -1 };
    let printed_agrees = (length_u + length_v) % 2 == printed_exponent % 2;
    Ok(SignAudit {
        length_u,
        length_v,
        printed_exponent,
        derived_sign,
        matches: transported && printed_agrees,
    })
}

/// Evaluate the block determinant for a special shape. The cleared matrix is
/// eliminated fraction-free, the clearing factors become the denominator,
/// and the audited block-rotation sign is applied.
pub fn determinantal(shape: &SpecialShape) -> Result<FormulaResult, FormulaError> {
    shape_check(shape)?;
    let (m, n) = (shape.m(), shape.n());
    let det = det_bareiss(assemble_cleared(shape))?;
    let audit = sign_audit(shape)?;
    let raw: Vec<(i8, ExponentVector)> = (0..m)
        .cartesian_product(0..n)
        .map(|(i, j)| (-1, odd_pair_exponent(m, n, i, j)))
        .collect();
    let mut value = RationalChar::new(det, raw, ExponentVector::zero(m, n))?;
    if audit.derived_sign < 0 {
        value.num = value.num.neg();
    }
    Ok(FormulaResult {
        value,
        meta: FormulaMeta {
            kind: FormulaKind::Determinantal,
            pi: special_order(shape)?,
            lambda_rho: shape_weight(shape),
            s_set: shape_roots(shape),
            sign: audit.derived_sign,
            r_factorial: Coeff::one(),
        },
    })
}

/// The symmetrized Leibniz sum of the special-shape matrix, evaluated
/// without assembling it: the sum telescopes to `(1/r!) F_W` applied to the
/// diagonal product, which is computed directly as a rational character.
/// The value equals the raw determinant, before the global sign.
pub fn symmetrized_leibniz(shape: &SpecialShape) -> Result<FormulaResult, FormulaError> {
    shape_check(shape)?;
    let r = shape.r;
    let mut value = skew_symmetrize(&diag_rc(shape)?);
    value.num = value.num.divide_scalar_exact(&factorial(r))?;
    Ok(FormulaResult {
        value,
        meta: FormulaMeta {
            kind: FormulaKind::Leibniz,
            pi: special_order(shape)?,
            lambda_rho: shape_weight(shape),
            s_set: shape_roots(shape),
            sign: 1,
            r_factorial: factorial(r),
        },
    })
}

/// Alternating sum of source weights weighted by their polynomial values at
/// `-1`, over all sources within displacement `v` of the target.
pub fn truncated_kl_char(lr_st: &RhoWeight, v: u32) -> Result<LaurentPoly, FormulaError> {
    let (m, n) = lr_st.dims();
    let dl = to_weight_diagram(lr_st)?;
    let mut acc = LaurentPoly::zero(m, n);
    for dmu in enumerate_sources(&dl, v) {
        let k = kl_polynomial(&dl, &dmu).eval_minus_one();
        if k.is_zero() {
            continue;
        }
        acc = acc.add(&kac_numerator(&dmu.to_rho_weight()).scalar_mul(&k));
    }
    Ok(acc)
}

/// Laurent expansion of a formula value through all terms of weight at least
/// `weight(lambda_rho) - 4v`. Raised numerators anchor the generic expansion
/// above `lambda_rho`, so the budget is widened by the (weight-graded) gap
/// before truncating.
pub fn expand_to_valuation(fr: &FormulaResult, v: u32) -> LaurentPoly {
    let base = fr.value.num.mul_monomial(&fr.value.unit);
    if base.is_zero() {
        return base;
    }
    let anchor2 = base.terms().map(|(e, _)| e.weight2()).max().unwrap();
    let top2 = fr.meta.lambda_rho.as_exponent().weight2();
    let gap = anchor2 - top2;
    debug_assert!(gap >= 0 && gap % 4 == 0, "anchor below the weight or off-grade");
    expand_truncated(&fr.value, v + (gap / 4) as u32)
}

/// Divide the Weyl denominator (in the requested order) back out of a
/// formula value, returning the character as a Laurent polynomial. Fails
/// with [`FormulaError::BadCharacter`] when the quotient is not symmetric,
/// lacks a unit leading coefficient at the highest weight, or has support
/// outside the expected cone; those conditions failing indicates a bug in
/// the producing formula, not in the input.
pub fn extract_character(
    fr: &FormulaResult,
    pi: &SimpleRootSystem,
) -> Result<LaurentPoly, FormulaError> {
    let wd = weyl_denominator(pi);
    let common = multiset_intersect(&fr.value.den, &wd.den);
    let fr_extra = multiset_sub(&fr.value.den, &common);
    let wd_extra = multiset_sub(&wd.den, &common);
    let mut num = fr.value.num.clone();
    for f in &wd_extra {
        num = num.mul(&f.as_poly());
    }
    for f in &fr_extra {
        num = num.divide_by_binomial(f)?;
    }
    let ch = num
        .divide_exact(&wd.num)?
        .mul_monomial(&fr.value.unit.sub(&wd.unit));
    if ch.is_zero() {
        return Err(FormulaError::BadCharacter("character is zero".into()));
    }
    let (m, n) = ch.dims();
    for g in WeylElement::generators(m, n) {
        if ch.apply_weyl(&g) != ch {
            return Err(FormulaError::BadCharacter("not symmetric".into()));
        }
    }
    let lam = fr.meta.lambda_rho.sub(&rho(&fr.meta.pi)).as_exponent();
    if !ch.coeff(&lam).is_one() {
        return Err(FormulaError::BadCharacter(
            "highest weight coefficient is not 1".into(),
        ));
    }
    let order = &fr.meta.pi;
    for (e, _) in ch.terms() {
        let nu = lam.sub(e);
        let mut acc = 0i64;
        for pos in 0..order.len() {
            acc += match order.node_at(pos) {
                (NodeKind::Eps, i) => nu.eps2[i],
                (NodeKind::Del, j) => -nu.del2[j],
            };
            if acc < 0 {
                return Err(FormulaError::BadCharacter(
                    "support outside the highest-weight cone".into(),
                ));
            }
        }
        if acc != 0 {
            return Err(FormulaError::BadCharacter(
                "support outside the root lattice span".into(),
            ));
        }
    }
    Ok(ch)
}
