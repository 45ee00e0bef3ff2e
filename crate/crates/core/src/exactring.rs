//! Exact Laurent-polynomial arithmetic for `gl(m|n)` characters.
//!
//! Monomials live in the variables `x_1..x_m` (for `e^{eps_i}`) and
//! `y_1..y_n` (for `e^{-del_j}`). Half-integer exponents occur (the Weyl
//! vector is half-integral when `m+n` is even), so every exponent is stored
//! doubled; an [`ExponentVector`] holds `2*exponent` per variable.
//!
//! A [`RationalChar`] is a rational character in the normal form
//! `num * e^{unit} / prod_k (1 - sign_k e^{-gamma_k})`: an integer Laurent
//! polynomial numerator, a unit monomial, and a multiset of oriented
//! binomial factors whose exponents point into the negative cone. All
//! identities between character formulas are decided by exact
//! cross-multiplication ([`rc_equal`]), never numerically.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Coefficient type. Character multiplicities stay small, but Bareiss
/// elimination intermediates and cleared numerators overflow machine words
/// at modest matrix sizes, so everything is arbitrary precision.
pub type Coeff = BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("dimension mismatch: ({0}|{1}) vs ({2}|{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("denominator factor exponent {0} has mixed signs and cannot be oriented")]
    NonOrientable(String),
    #[error("denominator factor exponent is zero")]
    ZeroGamma,
    #[error("inexact division by binomial factor {factor}")]
    InexactDivision { factor: String },
    #[error("polynomial division has no exact quotient")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact scalar division by {0}")]
    InexactScalarDivision(String),
    #[error("invalid permutation data")]
    BadPermutation,
}

/// Doubled exponent vector: `eps2[i]` is twice the exponent of `x_{i+1}`,
/// `del2[j]` twice the exponent of `y_{j+1}`.
///
/// The same encoding doubles as a weight in the `eps/del` basis: a weight
/// `sum a_i eps_i - sum b_j del_j` exponentiates to the monomial with
/// `eps2 = 2a` and `del2 = 2b`, because `y_j = e^{-del_j}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector {
    pub eps2: Vec<i64>,
    pub del2: Vec<i64>,
}

pub(crate) fn fmt_half(e2: i64) -> String {
    if e2 % 2 == 0 {
        format!("{}", e2 / 2)
    } else {
        format!("({}/2)", e2)
    }
}

impl ExponentVector {
    pub fn zero(m: usize, n: usize) -> Self {
        ExponentVector { eps2: vec![0; m], del2: vec![0; n] }
    }

    pub fn new(eps2: Vec<i64>, del2: Vec<i64>) -> Self {
        ExponentVector { eps2, del2 }
    }

    pub fn m(&self) -> usize {
        self.eps2.len()
    }

    pub fn n(&self) -> usize {
        self.del2.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m(), self.n())
    }

    pub fn is_zero(&self) -> bool {
        self.eps2.iter().all(|&e| e == 0) && self.del2.iter().all(|&e| e == 0)
    }

    /// All coordinates nonnegative (the canonical cone for denominator
    /// factor exponents).
    pub fn is_nonneg(&self) -> bool {
        self.eps2.iter().all(|&e| e >= 0) && self.del2.iter().all(|&e| e >= 0)
    }

    fn assert_dims(&self, other: &Self) {
        assert_eq!(self.dims(), other.dims(), "exponent vector dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_dims(other);
        ExponentVector {
            eps2: self.eps2.iter().zip(&other.eps2).map(|(a, b)| a + b).collect(),
            del2: self.del2.iter().zip(&other.del2).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_dims(other);
        ExponentVector {
            eps2: self.eps2.iter().zip(&other.eps2).map(|(a, b)| a - b).collect(),
            del2: self.del2.iter().zip(&other.del2).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExponentVector {
            eps2: self.eps2.iter().map(|&a| -a).collect(),
            del2: self.del2.iter().map(|&a| -a).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        ExponentVector {
            eps2: self.eps2.iter().map(|&a| k * a).collect(),
            del2: self.del2.iter().map(|&a| k * a).collect(),
        }
    }

    /// Sum of all doubled coordinates. Strictly positive on canonical
    /// denominator exponents, which grades the geometric expansion in
    /// [`expand_truncated`].
    pub fn weight2(&self) -> i64 {
        self.eps2.iter().sum::<i64>() + self.del2.iter().sum::<i64>()
    }

    fn coord(&self, idx: usize) -> i64 {
        if idx < self.eps2.len() {
            self.eps2[idx]
        } else {
            self.del2[idx - self.eps2.len()]
        }
    }

    fn len(&self) -> usize {
        self.eps2.len() + self.del2.len()
    }

    pub fn apply_weyl(&self, w: &WeylElement) -> Self {
        assert_eq!(self.dims(), w.dims(), "weyl element dimension mismatch");
        let mut eps2 = vec![0; self.m()];
        let mut del2 = vec![0; self.n()];
        for (i, &e) in self.eps2.iter().enumerate() {
            eps2[w.sigma[i]] = e;
        }
        for (j, &e) in self.del2.iter().enumerate() {
            del2[w.tau[j]] = e;
        }
        ExponentVector { eps2, del2 }
    }

    /// Canonical monomial string, e.g. `x1^2*x2^(-1/2)*y1`.
    pub fn monomial_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.eps2.iter().enumerate() {
            if e != 0 {
                if e == 2 {
                    parts.push(format!("x{}", i + 1));
                } else {
                    parts.push(format!("x{}^{}", i + 1, fmt_half(e)));
                }
            }
        }
        for (j, &e) in self.del2.iter().enumerate() {
            if e != 0 {
                if e == 2 {
                    parts.push(format!("y{}", j + 1));
                } else {
                    parts.push(format!("y{}^{}", j + 1, fmt_half(e)));
                }
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.monomial_string())
    }
}

/// Sparse Laurent polynomial with exact integer coefficients.
///
/// Invariants: no stored zero coefficients; terms keyed (and therefore
/// canonically ordered) by the lexicographic order on exponent vectors;
/// all exponent vectors share the polynomial's dimensions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    m: usize,
    n: usize,
    terms: BTreeMap<ExponentVector, Coeff>,
}

/// Binary operation selector for [`lp_combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

impl LaurentPoly {
    pub fn zero(m: usize, n: usize) -> Self {
        LaurentPoly { m, n, terms: BTreeMap::new() }
    }

    pub fn one(m: usize, n: usize) -> Self {
        Self::monomial(ExponentVector::zero(m, n), Coeff::one())
    }

    pub fn constant(m: usize, n: usize, c: i64) -> Self {
        Self::monomial(ExponentVector::zero(m, n), Coeff::from(c))
    }

    pub fn monomial(exp: ExponentVector, coeff: Coeff) -> Self {
        let (m, n) = exp.dims();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { m, n, terms }
    }

    pub fn from_terms<I>(m: usize, n: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Coeff)>,
    {
        let mut p = LaurentPoly::zero(m, n);
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> Coeff {
        self.terms.get(exp).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, exp: ExponentVector, coeff: Coeff) {
        assert_eq!((self.m, self.n), exp.dims(), "laurent term dimension mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_dims(&self, other: &Self) {
        assert_eq!((self.m, self.n), (other.m, other.n), "laurent dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_dims(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_dims(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            m: self.m,
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_dims(other);
        let mut out = LaurentPoly::zero(self.m, self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.m, self.n);
        }
        LaurentPoly {
            m: self.m,
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the monomial `e^{shift}` (shift every exponent).
    pub fn mul_monomial(&self, shift: &ExponentVector) -> Self {
        if shift.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            m: self.m,
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.add(shift), c.clone())).collect(),
        }
    }

    pub fn apply_weyl(&self, w: &WeylElement) -> Self {
        LaurentPoly {
            m: self.m,
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.apply_weyl(w), c.clone())).collect(),
        }
    }

    pub fn lex_max_term(&self) -> Option<(&ExponentVector, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Sum of all coefficients, i.e. the evaluation at `x_i = y_j = 1`.
    /// For an extracted character this is the module's dimension.
    pub fn eval_at_one(&self) -> Coeff {
        let mut s = Coeff::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    fn support_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let len = first.len();
        let mut lo: Vec<i64> = (0..len).map(|i| first.coord(i)).collect();
        let mut hi = lo.clone();
        for e in it {
            for i in 0..len {
                let c = e.coord(i);
                if c < lo[i] {
                    lo[i] = c;
                }
                if c > hi[i] {
                    hi[i] = c;
                }
            }
        }
        Some((lo, hi))
    }

    /// Exact division by an oriented binomial `1 - sign*e^{-gamma}`.
    ///
    /// Terms are grouped into cosets of `Z*gamma`; within each coset the
    /// quotient is a synthetic division from the top exponent downward, and
    /// the division is exact precisely when the recursion closes at the
    /// bottom of every coset.
    pub fn divide_by_binomial(&self, factor: &DenFactor) -> Result<LaurentPoly, RingError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let gamma = &factor.gamma;
        let len = gamma.len();
        let pivot = (0..len)
            .find(|&i| gamma.coord(i) != 0)
            .expect("canonical factor has a nonzero coordinate");
        let g = gamma.coord(pivot);
        let sigma = Coeff::from(factor.sign as i64);

        let mut groups: BTreeMap<ExponentVector, BTreeMap<i64, Coeff>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.coord(pivot).div_euclid(g);
            let rep = e.sub(&gamma.scaled(k));
            groups.entry(rep).or_default().insert(k, c.clone());
        }

        let mut out = LaurentPoly::zero(self.m, self.n);
        for (rep, ks) in groups {
            let hi = *ks.keys().next_back().unwrap();
            let lo = *ks.keys().next().unwrap();
            let mut carry = Coeff::zero();
            for k in (lo..=hi).rev() {
                let c_k = ks.get(&k).cloned().unwrap_or_else(Coeff::zero);
                let q_k = c_k + &sigma * &carry;
                if k == lo {
                    if !q_k.is_zero() {
                        return Err(RingError::InexactDivision { factor: factor.to_string() });
                    }
                } else if !q_k.is_zero() {
                    out.add_term(rep.add(&gamma.scaled(k)), q_k.clone());
                }
                carry = q_k;
            }
        }
        Ok(out)
    }

    /// Exact division by an arbitrary nonzero Laurent polynomial, used by the
    /// fraction-free determinant. Works by lexicographic leading-term
    /// elimination; the quotient's exponents are confined to the Minkowski
    /// box `min(P)-min(D) .. max(P)-max(D)`, which both proves termination
    /// and detects inexactness.
    pub fn divide_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.assert_dims(d);
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (pmin, pmax) = self.support_box().unwrap();
        let (dmin, dmax) = d.support_box().unwrap();
        let len = pmin.len();
        let qmin: Vec<i64> = (0..len).map(|i| pmin[i] - dmin[i]).collect();
        let qmax: Vec<i64> = (0..len).map(|i| pmax[i] - dmax[i]).collect();
        if (0..len).any(|i| qmin[i] > qmax[i]) {
            return Err(RingError::NotDivisible);
        }
        let (dle, dlc) = d.lex_max_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();

        let mut rem = self.clone();
        let mut q = LaurentPoly::zero(self.m, self.n);
        while let Some((re, rc)) = rem.lex_max_term().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = re.sub(&dle);
            if (0..len).any(|i| qe.coord(i) < qmin[i] || qe.coord(i) > qmax[i]) {
                return Err(RingError::NotDivisible);
            }
            let (qc, r) = num_integer_div_rem(&rc, &dlc);
            if !r.is_zero() {
                return Err(RingError::NotDivisible);
            }
            for (e, c) in &d.terms {
                rem.add_term(e.add(&qe), -(c * &qc));
            }
            q.add_term(qe, qc);
        }
        Ok(q)
    }

    pub fn divide_scalar_exact(&self, k: &Coeff) -> Result<LaurentPoly, RingError> {
        if k.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let mut out = LaurentPoly::zero(self.m, self.n);
        for (e, c) in &self.terms {
            let (q, r) = num_integer_div_rem(c, k);
            if !r.is_zero() {
                return Err(RingError::InexactScalarDivision(k.to_string()));
            }
            out.add_term(e.clone(), q);
        }
        Ok(out)
    }
}

fn num_integer_div_rem(a: &Coeff, b: &Coeff) -> (Coeff, Coeff) {
    (a / b, a % b)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = e.monomial_string();
            let abs = c.abs();
            let body = if mono == "1" {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", abs, mono)
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

/// Combine two Laurent polynomials with the selected ring operation.
pub fn lp_combine(a: &LaurentPoly, b: &LaurentPoly, op: BinOp) -> LaurentPoly {
    match op {
        BinOp::Add => a.add(b),
        BinOp::Sub => a.sub(b),
        BinOp::Mul => a.mul(b),
    }
}

/// An oriented denominator factor `1 - sign * e^{-gamma}` with `gamma` in
/// the canonical cone (all coordinates of the doubled exponent nonnegative,
/// at least one positive). `sign = -1` renders as `1 + e^{-gamma}`, the
/// shape of the odd factors; `sign = +1` as `1 - e^{-gamma}`, the shape of
/// even Weyl denominator factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DenFactor {
    pub sign: i8,
    pub gamma: ExponentVector,
}

impl DenFactor {
    pub fn new(sign: i8, gamma: ExponentVector) -> Result<Self, RingError> {
        assert!(sign == 1 || sign == -1, "factor sign must be +-1");
        if gamma.is_zero() {
            return Err(RingError::ZeroGamma);
        }
        if !gamma.is_nonneg() {
            return Err(RingError::NonOrientable(gamma.monomial_string()));
        }
        Ok(DenFactor { sign, gamma })
    }

    /// Expand to the two-term Laurent polynomial `1 - sign*e^{-gamma}`.
    pub fn as_poly(&self) -> LaurentPoly {
        let (m, n) = self.gamma.dims();
        let mut p = LaurentPoly::one(m, n);
        p.add_term(self.gamma.neg(), Coeff::from(-(self.sign as i64)));
        p
    }

    pub fn apply_weyl(&self, w: &WeylElement) -> Self {
        DenFactor { sign: self.sign, gamma: self.gamma.apply_weyl(w) }
    }
}

impl fmt::Display for DenFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = self.gamma.neg().monomial_string();
        if self.sign == 1 {
            write!(f, "1 - {}", mono)
        } else {
            write!(f, "1 + {}", mono)
        }
    }
}

/// Rational character in normal form `num * e^{unit} / prod(den)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalChar {
    pub num: LaurentPoly,
    /// Sorted multiset of oriented binomial factors.
    pub den: Vec<DenFactor>,
    pub unit: ExponentVector,
}

impl RationalChar {
    pub fn from_poly(num: LaurentPoly) -> Self {
        let (m, n) = num.dims();
        RationalChar { num, den: Vec::new(), unit: ExponentVector::zero(m, n) }
    }

    /// Build from raw factors `1 - sign*e^{-gamma_raw}` where `gamma_raw`
    /// may point out of the canonical cone; such factors are reoriented via
    /// `1 - s e^{g} = -s e^{g} (1 - s e^{-g})`, which flips the numerator
    /// sign by `-s` and shifts the unit by `-g`.
    pub fn new(
        num: LaurentPoly,
        raw_den: Vec<(i8, ExponentVector)>,
        unit: ExponentVector,
    ) -> Result<Self, RingError> {
        let mut n = num;
        let mut u = unit;
        let mut den = Vec::with_capacity(raw_den.len());
        for (sign, gamma) in raw_den {
            if gamma.is_zero() {
                return Err(RingError::ZeroGamma);
            }
            if gamma.is_nonneg() {
                den.push(DenFactor::new(sign, gamma)?);
            } else if gamma.neg().is_nonneg() {
                let gc = gamma.neg();
                u = u.sub(&gc);
                if sign == 1 {
                    n = n.neg();
                }
                den.push(DenFactor::new(sign, gc)?);
            } else {
                return Err(RingError::NonOrientable(gamma.monomial_string()));
            }
        }
        den.sort();
        Ok(RationalChar { num: n, den, unit: u })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.num.dims()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalChar { num: self.num.mul(p), den: self.den.clone(), unit: self.unit.clone() }
    }

    pub fn mul_monomial(&self, shift: &ExponentVector) -> Self {
        RationalChar {
            num: self.num.clone(),
            den: self.den.clone(),
            unit: self.unit.add(shift),
        }
    }

    pub fn apply_weyl(&self, w: &WeylElement) -> Self {
        let mut den: Vec<DenFactor> = self.den.iter().map(|f| f.apply_weyl(w)).collect();
        den.sort();
        RationalChar {
            num: self.num.apply_weyl(w),
            den,
            unit: self.unit.apply_weyl(w),
        }
    }
}

impl fmt::Display for RationalChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if !self.unit.is_zero() {
            write!(f, " * {}", self.unit.monomial_string())?;
        }
        for factor in &self.den {
            write!(f, " / ({})", factor)?;
        }
        Ok(())
    }
}

/// Element of the Weyl group `S_m x S_n`, acting on variables by
/// `x_i -> x_{sigma(i)}`, `y_j -> y_{tau(j)}` (images, 0-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
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

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

impl WeylElement {
    pub fn identity(m: usize, n: usize) -> Self {
        WeylElement { sigma: (0..m).collect(), tau: (0..n).collect() }
    }

    pub fn new(sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self, RingError> {
        if !is_permutation(&sigma) || !is_permutation(&tau) {
            return Err(RingError::BadPermutation);
        }
        Ok(WeylElement { sigma, tau })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.sigma.len(), self.tau.len())
    }

    /// Coxeter length: inversion count of both components.
    pub fn length(&self) -> usize {
        inversions(&self.sigma) + inversions(&self.tau)
    }

    pub fn sign(&self) -> i8 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self` after `other`: `(self.compose(other))(v) = self(other(v))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dims(), other.dims());
        WeylElement {
            sigma: other.sigma.iter().map(|&i| self.sigma[i]).collect(),
            tau: other.tau.iter().map(|&j| self.tau[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut sigma = vec![0; self.sigma.len()];
        let mut tau = vec![0; self.tau.len()];
        for (i, &v) in self.sigma.iter().enumerate() {
            sigma[v] = i;
        }
        for (j, &v) in self.tau.iter().enumerate() {
            tau[v] = j;
        }
        WeylElement { sigma, tau }
    }

    /// The whole group, in a deterministic order.
    pub fn all(m: usize, n: usize) -> Vec<WeylElement> {
        use itertools::Itertools;
        let sigmas: Vec<Vec<usize>> = (0..m).permutations(m).collect();
        let taus: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut out = Vec::with_capacity(sigmas.len() * taus.len());
        for s in &sigmas {
            for t in &taus {
                out.push(WeylElement { sigma: s.clone(), tau: t.clone() });
            }
        }
        out
    }

    /// Adjacent transpositions; they generate the group, so invariance under
    /// these suffices to certify full invariance.
    pub fn generators(m: usize, n: usize) -> Vec<WeylElement> {
        let mut out = Vec::new();
        for i in 0..m.saturating_sub(1) {
            let mut w = WeylElement::identity(m, n);
            w.sigma.swap(i, i + 1);
            out.push(w);
        }
        for j in 0..n.saturating_sub(1) {
            let mut w = WeylElement::identity(m, n);
            w.tau.swap(j, j + 1);
            out.push(w);
        }
        out
    }
}

/// Apply a Weyl group element to a rational character.
pub fn weyl_act(w: &WeylElement, x: &RationalChar) -> RationalChar {
    x.apply_weyl(w)
}

/// True when some reflection fixes the exponent vector, i.e. two `eps`
/// coordinates coincide or two `del` coordinates coincide. The
/// skew-symmetrization of such a monomial vanishes.
pub fn has_reflection_stabilizer(nu: &ExponentVector) -> bool {
    fn has_dup(v: &[i64]) -> bool {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.windows(2).any(|w| w[0] == w[1])
    }
    has_dup(&nu.eps2) || has_dup(&nu.del2)
}

pub(crate) fn multiset_sub(a: &[DenFactor], b: &[DenFactor]) -> Vec<DenFactor> {
    // Both inputs sorted; returns a \ b as a multiset.
    let mut out = Vec::new();
    let mut j = 0;
    for f in a {
        if j < b.len() && b[j] == *f {
            j += 1;
        } else {
            out.push(f.clone());
        }
    }
    out
}

pub(crate) fn multiset_intersect(a: &[DenFactor], b: &[DenFactor]) -> Vec<DenFactor> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn multiset_max(a: &[DenFactor], b: &[DenFactor]) -> Vec<DenFactor> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if i == a.len() {
            out.push(b[j].clone());
            j += 1;
        } else if j == b.len() {
            out.push(a[i].clone());
            i += 1;
        } else {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out
}

/// Alternating sum over the Weyl group:
/// `F_W(X) = sum_w sign(w) w(X)`, returned over the smallest common
/// denominator (the multiset maximum of the images of `X.den`).
///
/// Group elements are grouped by the image of the denominator multiset, so
/// numerators that are stabilized (special diagrams, raised weights)
/// collapse before the expensive clearing multiplication.
pub fn skew_symmetrize(x: &RationalChar) -> RationalChar {
    let (m, n) = x.dims();
    let base = x.num.mul_monomial(&x.unit);
    let mut groups: BTreeMap<Vec<DenFactor>, LaurentPoly> = BTreeMap::new();
    for w in WeylElement::all(m, n) {
        let mut img_den: Vec<DenFactor> = x.den.iter().map(|f| f.apply_weyl(&w)).collect();
        img_den.sort();
        let mut img_num = base.apply_weyl(&w);
        if w.sign() < 0 {
            img_num = img_num.neg();
        }
        groups
            .entry(img_den)
            .and_modify(|p| *p = p.add(&img_num))
            .or_insert(img_num);
    }

    let mut common: Vec<DenFactor> = Vec::new();
    for key in groups.keys() {
        common = multiset_max(&common, key);
    }

    let mut num = LaurentPoly::zero(m, n);
    for (key, inner) in &groups {
        if inner.is_zero() {
            continue;
        }
        let mut t = inner.clone();
        for f in multiset_sub(&common, key) {
            t = t.mul(&f.as_poly());
        }
        num = num.add(&t);
    }
    RationalChar { num, den: common, unit: ExponentVector::zero(m, n) }
}

/// Sort descending in place, returning the parity of the permutation used,
/// or `None` if two entries coincide.
fn sort_strict_signed(v: &mut [i64]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

/// `sum_w sign(w) w(p)` computed orbit by orbit instead of term by term:
/// each exponent is sorted to the strictly decreasing representative of its
/// orbit carrying the parity of the sort, exponents fixed by a transposition
/// (a repeated entry on either side) drop out, and only the collected
/// representatives are fanned back out over the group. Equal to the naive
/// double loop, at a fraction of the inserts when `p` is large.
pub fn skew_symmetrize_poly(p: &LaurentPoly) -> LaurentPoly {
    let (m, n) = p.dims();
    let mut reps = LaurentPoly::zero(m, n);
    for (e, c) in p.terms() {
        let mut a = e.eps2.clone();
        let mut b = e.del2.clone();
        let (Some(sa), Some(sb)) = (sort_strict_signed(&mut a), sort_strict_signed(&mut b))
        else {
            continue;
        };
        let coeff = if sa * sb < 0 { -c.clone() } else { c.clone() };
        reps.add_term(ExponentVector::new(a, b), coeff);
    }
    let mut out = LaurentPoly::zero(m, n);
    for w in WeylElement::all(m, n) {
        let negate = w.sign() < 0;
        for (e, c) in reps.terms() {
            let coeff = if negate { -c.clone() } else { c.clone() };
            out.add_term(e.apply_weyl(&w), coeff);
        }
    }
    out
}

/// Divide `p` exactly by `prod(den) * e^{unit}`; the first factor that does
/// not divide exactly is reported in the error.
pub fn exact_divide(
    p: &LaurentPoly,
    den: &[DenFactor],
    unit: &ExponentVector,
) -> Result<LaurentPoly, RingError> {
    let mut q = p.clone();
    for f in den {
        q = q.divide_by_binomial(f)?;
    }
    Ok(q.mul_monomial(&unit.neg()))
}

/// Exact equality of rational characters by cross-multiplication after
/// clearing the common denominator factors.
pub fn rc_equal(a: &RationalChar, b: &RationalChar) -> bool {
    assert_eq!(a.dims(), b.dims(), "rational character dimension mismatch");
    let common = multiset_intersect(&a.den, &b.den);
    let a_extra = multiset_sub(&a.den, &common);
    let b_extra = multiset_sub(&b.den, &common);
    let mut lhs = a.num.mul_monomial(&a.unit);
    for f in &b_extra {
        lhs = lhs.mul(&f.as_poly());
    }
    let mut rhs = b.num.mul_monomial(&b.unit);
    for f in &a_extra {
        rhs = rhs.mul(&f.as_poly());
    }
    lhs == rhs
}

/// Truncated geometric expansion of a rational character.
///
/// Each factor expands as `1/(1 - s e^{-g}) = sum_k s^k e^{-kg}`. A
/// contribution is kept while its drop below the numerator's top grading
/// stays within `v` expansion orders, where one order is the drop of a
/// single odd root (`weight2 = 4`). Grading by the intrinsic weight makes
/// the truncation independent of how the denominator is factored.
pub fn expand_truncated(x: &RationalChar, v: u32) -> LaurentPoly {
    let (m, n) = x.dims();
    let base = x.num.mul_monomial(&x.unit);
    if base.is_zero() {
        return base;
    }
    let anchor2 = base.terms().map(|(e, _)| e.weight2()).max().unwrap();
    let budget = 4 * (v as i64);

    let mut cur: Vec<(ExponentVector, Coeff)> = base
        .terms()
        .filter(|(e, _)| anchor2 - e.weight2() <= budget)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();

    for f in &x.den {
        let sigma = Coeff::from(f.sign as i64);
        let mut next = LaurentPoly::zero(m, n);
        for (e, c) in &cur {
            let mut ke = e.clone();
            let mut kc = c.clone();
            while anchor2 - ke.weight2() <= budget {
                next.add_term(ke.clone(), kc.clone());
                ke = ke.sub(&f.gamma);
                kc *= &sigma;
            }
        }
        cur = next.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    }
    LaurentPoly::from_terms(m, n, cur)
}
