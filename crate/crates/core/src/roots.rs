//! Simple root orders of `gl(m|n)`, the Weyl vector, and odd reflections.
//!
//! A choice of simple roots corresponds to a shuffle of the basis
//! `eps_1..eps_m, del_1..del_n` in which the `eps` and the `del` each stay
//! in increasing order; the simple roots are the consecutive differences.
//! The bilinear form is `(eps_i, eps_j) = delta_ij`,
//! `(del_i, del_j) = -delta_ij`, `(eps_i, del_j) = 0`, so roots mixing the
//! two kinds are isotropic (odd).
//!
//! Reflecting in an odd simple root swaps the two adjacent nodes; the
//! shifted weight `lambda + rho` either stays put (when the pairing with
//! the root is nonzero) or gains the root (when it vanishes). Weights and
//! the Weyl vector are stored doubled, like exponents.

use crate::exactring::{fmt_half, ExponentVector};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid shuffle character {0:?} (expected 'e' or 'd')")]
    BadShuffle(char),
    #[error("a simple root order needs at least one eps and one del node")]
    EmptySide,
    #[error("position {0} is not an adjacent mixed pair")]
    NotMixedPair(usize),
    #[error("position {0} out of range")]
    PositionOutOfRange(usize),
    #[error("weight dimension mismatch")]
    DimensionMismatch,
    #[error("entries of lambda+rho are not all integers")]
    NonIntegralEntries,
    #[error("lambda+rho is not strictly dominant")]
    NotStrictlyDominant,
    #[error("entries of lambda+rho mix integer and half-integer values")]
    MixedParityEntries,
}

/// The two node kinds of a shuffle order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NodeKind {
    Eps,
    Del,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// A root `gamma_plus - gamma_minus` of `gl(m|n)`, with each node given as
/// (kind, 0-based index within its kind).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Root {
    pub plus: (NodeKind, usize),
    pub minus: (NodeKind, usize),
}

impl Root {
    pub fn parity(&self) -> Parity {
        if self.plus.0 == self.minus.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The root as a doubled weight vector.
    pub fn as_exponent(&self, m: usize, n: usize) -> ExponentVector {
        let mut v = ExponentVector::zero(m, n);
        match self.plus {
            (NodeKind::Eps, i) => v.eps2[i] += 2,
            (NodeKind::Del, j) => v.del2[j] -= 2,
        }
        match self.minus {
            (NodeKind::Eps, i) => v.eps2[i] -= 2,
            (NodeKind::Del, j) => v.del2[j] += 2,
        }
        v
    }

    /// `(root, root)`, doubled is unnecessary: it is always an even integer
    /// (2, -2, or 0 for isotropic roots).
    pub fn self_pairing(&self) -> i64 {
        match (self.plus.0, self.minus.0) {
            (NodeKind::Eps, NodeKind::Eps) => 2,
            (NodeKind::Del, NodeKind::Del) => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let node = |p: (NodeKind, usize)| match p.0 {
            NodeKind::Eps => format!("eps{}", p.1 + 1),
            NodeKind::Del => format!("del{}", p.1 + 1),
        };
        write!(f, "{}-{}", node(self.plus), node(self.minus))
    }
}

/// Positive roots split by parity.
#[derive(Clone, Debug)]
pub struct PositiveRoots {
    pub even: Vec<Root>,
    pub odd: Vec<Root>,
}

/// A simple root order: a shuffle of `m` eps nodes and `n` del nodes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleRootSystem {
    order: Vec<NodeKind>,
}

impl SimpleRootSystem {
    pub fn from_shuffle(s: &str) -> Result<Self, RootError> {
        let mut order = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'e' => order.push(NodeKind::Eps),
                'd' => order.push(NodeKind::Del),
                other => return Err(RootError::BadShuffle(other)),
            }
        }
        let sys = SimpleRootSystem { order };
        if sys.m() == 0 || sys.n() == 0 {
            return Err(RootError::EmptySide);
        }
        Ok(sys)
    }

    /// The standard order: all eps nodes before all del nodes.
    pub fn standard(m: usize, n: usize) -> Self {
        assert!(m >= 1 && n >= 1);
        let mut order = vec![NodeKind::Eps; m];
        order.extend(vec![NodeKind::Del; n]);
        SimpleRootSystem { order }
    }

    pub fn shuffle_string(&self) -> String {
        self.order
            .iter()
            .map(|k| match k {
                NodeKind::Eps => 'e',
                NodeKind::Del => 'd',
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn m(&self) -> usize {
        self.order.iter().filter(|&&k| k == NodeKind::Eps).count()
    }

    pub fn n(&self) -> usize {
        self.order.iter().filter(|&&k| k == NodeKind::Del).count()
    }

    pub fn kind_at(&self, pos: usize) -> NodeKind {
        self.order[pos]
    }

    /// Node at a position as (kind, index within kind).
    pub fn node_at(&self, pos: usize) -> (NodeKind, usize) {
        let kind = self.order[pos];
        let idx = self.order[..pos].iter().filter(|&&k| k == kind).count();
        (kind, idx)
    }

    pub fn position_of(&self, kind: NodeKind, idx: usize) -> usize {
        let mut seen = 0;
        for (pos, &k) in self.order.iter().enumerate() {
            if k == kind {
                if seen == idx {
                    return pos;
                }
                seen += 1;
            }
        }
        panic!("node index out of range");
    }

    pub fn is_standard(&self) -> bool {
        let m = self.m();
        self.order[..m].iter().all(|&k| k == NodeKind::Eps)
    }

    /// The simple roots, in position order.
    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.len() - 1)
            .map(|k| Root { plus: self.node_at(k), minus: self.node_at(k + 1) })
            .collect()
    }

    /// Swap the mixed adjacent pair at positions `(k, k+1)`.
    pub fn odd_reflection(&self, k: usize) -> Result<SimpleRootSystem, RootError> {
        if k + 1 >= self.len() {
            return Err(RootError::PositionOutOfRange(k));
        }
        if self.order[k] == self.order[k + 1] {
            return Err(RootError::NotMixedPair(k));
        }
        let mut order = self.order.clone();
        order.swap(k, k + 1);
        Ok(SimpleRootSystem { order })
    }
}

impl fmt::Display for SimpleRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shuffle_string())
    }
}

/// All positive roots `gamma_a - gamma_b` for positions `a < b`, split by
/// parity.
pub fn positive_roots(pi: &SimpleRootSystem) -> PositiveRoots {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for a in 0..pi.len() {
        for b in (a + 1)..pi.len() {
            let r = Root { plus: pi.node_at(a), minus: pi.node_at(b) };
            match r.parity() {
                Parity::Even => even.push(r),
                Parity::Odd => odd.push(r),
            }
        }
    }
    PositiveRoots { even, odd }
}

/// A weight written as `sum a_i eps_i - sum b_j del_j`, with both
/// coefficient vectors stored doubled. The exponent encoding coincides:
/// `e^{weight}` has `eps2 = a2` and `del2 = b2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RhoWeight {
    pub a2: Vec<i64>,
    pub b2: Vec<i64>,
}

impl RhoWeight {
    pub fn new(a2: Vec<i64>, b2: Vec<i64>) -> Self {
        RhoWeight { a2, b2 }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        RhoWeight { a2: vec![0; m], b2: vec![0; n] }
    }

    /// Convenience constructor from plain integer coefficients.
    pub fn from_integers(a: &[i64], b: &[i64]) -> Self {
        RhoWeight {
            a2: a.iter().map(|&v| 2 * v).collect(),
            b2: b.iter().map(|&v| 2 * v).collect(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a2.len(), self.b2.len())
    }

    pub fn as_exponent(&self) -> ExponentVector {
        ExponentVector::new(self.a2.clone(), self.b2.clone())
    }

    pub fn from_exponent(e: &ExponentVector) -> Self {
        RhoWeight { a2: e.eps2.clone(), b2: e.del2.clone() }
    }

    pub fn add(&self, other: &RhoWeight) -> RhoWeight {
        RhoWeight {
            a2: self.a2.iter().zip(&other.a2).map(|(x, y)| x + y).collect(),
            b2: self.b2.iter().zip(&other.b2).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &RhoWeight) -> RhoWeight {
        RhoWeight {
            a2: self.a2.iter().zip(&other.a2).map(|(x, y)| x - y).collect(),
            b2: self.b2.iter().zip(&other.b2).map(|(x, y)| x - y).collect(),
        }
    }

    /// Add `k * root`.
    pub fn add_root_multiple(&self, root: &Root, k: i64) -> RhoWeight {
        let (m, n) = self.dims();
        let delta = root.as_exponent(m, n).scaled(k);
        RhoWeight {
            a2: self.a2.iter().zip(&delta.eps2).map(|(x, y)| x + y).collect(),
            b2: self.b2.iter().zip(&delta.del2).map(|(x, y)| x + y).collect(),
        }
    }

    /// Doubled pairing `2 * (self, root)`.
    pub fn pairing2(&self, root: &Root) -> i64 {
        let val = |node: (NodeKind, usize)| match node {
            (NodeKind::Eps, i) => self.a2[i],
            (NodeKind::Del, j) => self.b2[j],
        };
        val(root.plus) - val(root.minus)
    }

    /// The doubled coefficient at a node of the given order position.
    pub fn entry2_at(&self, pi: &SimpleRootSystem, pos: usize) -> i64 {
        match pi.node_at(pos) {
            (NodeKind::Eps, i) => self.a2[i],
            (NodeKind::Del, j) => self.b2[j],
        }
    }

    pub fn entries_integral(&self) -> bool {
        self.a2.iter().all(|&v| v % 2 == 0) && self.b2.iter().all(|&v| v % 2 == 0)
    }

    /// Plain integer coefficient vectors, when all entries are integers.
    pub fn integer_entries(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        if !self.entries_integral() {
            return None;
        }
        Some((
            self.a2.iter().map(|&v| v / 2).collect(),
            self.b2.iter().map(|&v| v / 2).collect(),
        ))
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.a2.windows(2).all(|w| w[0] > w[1]) && self.b2.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for RhoWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a2.iter().map(|&v| fmt_half(v)).collect();
        let b: Vec<String> = self.b2.iter().map(|&v| fmt_half(v)).collect();
        write!(f, "({} | {})", a.join(","), b.join(","))
    }
}

/// The Weyl vector of the order: half the sum of even positive roots minus
/// half the sum of odd positive roots. Computed in closed form from the
/// shuffle: for `eps_i`, twice the coefficient is `(m-2i+1) - (R_i - L_i)`
/// where `R_i`/`L_i` count del nodes after/before it; dually for `del_j`
/// with eps counts, negated into the `b` convention.
pub fn rho(pi: &SimpleRootSystem) -> RhoWeight {
    let m = pi.m() as i64;
    let n = pi.n() as i64;
    let mut a2 = Vec::with_capacity(pi.m());
    let mut b2 = Vec::with_capacity(pi.n());
    for pos in 0..pi.len() {
        let before_del = pi.order[..pos].iter().filter(|&&k| k == NodeKind::Del).count() as i64;
        let before_eps = pos as i64 - before_del;
        match pi.node_at(pos) {
            (NodeKind::Eps, i) => {
                let after_del = n - before_del;
                a2.push((m - 2 * (i as i64 + 1) + 1) - (after_del - before_del));
            }
            (NodeKind::Del, j) => {
                let after_eps = m - before_eps;
                let coeff2 = (n - 2 * (j as i64 + 1) + 1) - (after_eps - before_eps);
                b2.push(-coeff2);
            }
        }
    }
    RhoWeight { a2, b2 }
}

/// Transform `lambda + rho` through the odd reflection at the adjacent
/// mixed pair `(k, k+1)`: unchanged when its pairing with the root is
/// nonzero, shifted by the root when the pairing vanishes (equivalently,
/// when the two node entries agree).
pub fn reflect_rho_weight(
    pi: &SimpleRootSystem,
    lr: &RhoWeight,
    k: usize,
) -> Result<RhoWeight, RootError> {
    if k + 1 >= pi.len() {
        return Err(RootError::PositionOutOfRange(k));
    }
    if pi.kind_at(k) == pi.kind_at(k + 1) {
        return Err(RootError::NotMixedPair(k));
    }
    if (lr.a2.len(), lr.b2.len()) != (pi.m(), pi.n()) {
        return Err(RootError::DimensionMismatch);
    }
    let beta = Root { plus: pi.node_at(k), minus: pi.node_at(k + 1) };
    if lr.pairing2(&beta) != 0 {
        Ok(lr.clone())
    } else {
        Ok(lr.add_root_multiple(&beta, 1))
    }
}

/// Walk the order to the standard one by odd reflections, transporting
/// `lambda + rho` along. Returns the transported weight.
pub fn to_standard(pi: &SimpleRootSystem, lr: &RhoWeight) -> (SimpleRootSystem, RhoWeight) {
    let mut pi = pi.clone();
    let mut lr = lr.clone();
    loop {
        let mut swapped = false;
        for k in 0..pi.len() - 1 {
            if pi.kind_at(k) == NodeKind::Del && pi.kind_at(k + 1) == NodeKind::Eps {
                lr = reflect_rho_weight(&pi, &lr, k).expect("mixed pair");
                pi = pi.odd_reflection(k).expect("mixed pair");
                swapped = true;
                break;
            }
        }
        if !swapped {
            return (pi, lr);
        }
    }
}

/// Classification flags for a weight (not rho-shifted) with respect to an
/// order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeightFlags {
    /// Pairing with every even simple coroot is nonnegative: `a` weakly
    /// decreasing and `b` weakly increasing.
    pub dominant: bool,
    /// Pairing with even roots is integral: uniform parity within each of
    /// `a2` and `b2`.
    pub integral: bool,
    /// Dominant, integral, and `lambda + rho` has integer entries.
    pub in_p_plus: bool,
    /// `lambda + rho` strictly dominant (finite-dimensional simple module
    /// with typicality structure readable from the entries).
    pub rho_strictly_dominant: bool,
}

pub fn check_weight(lambda: &RhoWeight, pi: &SimpleRootSystem) -> WeightFlags {
    let dominant = lambda.a2.windows(2).all(|w| w[0] >= w[1])
        && lambda.b2.windows(2).all(|w| w[0] <= w[1]);
    let parity_ok = |v: &[i64]| v.windows(2).all(|w| (w[0] - w[1]) % 2 == 0);
    let integral = parity_ok(&lambda.a2) && parity_ok(&lambda.b2);
    let lr = lambda.add(&rho(pi));
    let in_p_plus = dominant && integral && lr.entries_integral();
    WeightFlags {
        dominant,
        integral,
        in_p_plus,
        rho_strictly_dominant: lr.is_strictly_dominant(),
    }
}

/// Shift a weight by the smallest multiple `c` of `sum eps - sum del` that
/// makes `lambda + rho` integral; `c` is 0 or 1/2, returned doubled.
/// Characters transform by the unit monomial `(x_1..x_m y_1..y_n)^c`.
pub fn normalize_to_integral(
    lambda: &RhoWeight,
    pi: &SimpleRootSystem,
) -> Result<(RhoWeight, i64), RootError> {
    let lr = lambda.add(&rho(pi));
    let parities: Vec<i64> = lr
        .a2
        .iter()
        .chain(lr.b2.iter())
        .map(|v| v.rem_euclid(2))
        .collect();
    let c2 = parities[0];
    if parities.iter().any(|&p| p != c2) {
        return Err(RootError::MixedParityEntries);
    }
    let shifted = RhoWeight {
        a2: lambda.a2.iter().map(|&v| v + c2).collect(),
        b2: lambda.b2.iter().map(|&v| v + c2).collect(),
    };
    Ok((shifted, c2))
}

/// The atypical roots of a strictly dominant integral `lambda + rho` for
/// the standard order: pairs `eps_i - del_j` with `a_i = b_j`, listed by
/// increasing entry. Strict monotonicity makes the pairing unique.
pub fn standard_atypical_set(lr: &RhoWeight) -> Result<Vec<Root>, RootError> {
    if !lr.entries_integral() {
        return Err(RootError::NonIntegralEntries);
    }
    if !lr.is_strictly_dominant() {
        return Err(RootError::NotStrictlyDominant);
    }
    let mut out = Vec::new();
    for (i, &a) in lr.a2.iter().enumerate() {
        for (j, &b) in lr.b2.iter().enumerate() {
            if a == b {
                out.push((a, Root { plus: (NodeKind::Eps, i), minus: (NodeKind::Del, j) }));
            }
        }
    }
    out.sort_by_key(|&(entry, _)| entry);
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

/// Number of atypical roots of a strictly dominant integral weight.
pub fn atypicality(lr: &RhoWeight) -> Result<usize, RootError> {
    Ok(standard_atypical_set(lr)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> SimpleRootSystem {
        SimpleRootSystem::from_shuffle(s).unwrap()
    }

    #[test]
    fn shuffle_round_trip() {
        let pi = sys("eededde");
        assert_eq!(pi.shuffle_string(), "eededde");
        assert_eq!((pi.m(), pi.n()), (4, 3));
        assert!(!pi.is_standard());
        assert!(SimpleRootSystem::standard(2, 2).is_standard());
        assert!(SimpleRootSystem::from_shuffle("eexd").is_err());
        assert!(SimpleRootSystem::from_shuffle("ee").is_err());
        assert_eq!(pi.node_at(3), (NodeKind::Eps, 2));
        assert_eq!(pi.position_of(NodeKind::Del, 2), 5);
    }

    #[test]
    fn positive_root_counts() {
        let pi = sys("eededde");
        let pr = positive_roots(&pi);
        assert_eq!(pr.even.len(), 6 + 3);
        assert_eq!(pr.odd.len(), 12);
        // del1 - eps4 is positive for this order (position 2 before 6).
        assert!(pr
            .odd
            .contains(&Root { plus: (NodeKind::Del, 0), minus: (NodeKind::Eps, 3) }));
        // eps1 - del3 as well.
        assert!(pr
            .odd
            .contains(&Root { plus: (NodeKind::Eps, 0), minus: (NodeKind::Del, 2) }));
    }

    #[test]
    fn rho_standard_orders() {
        assert_eq!(rho(&sys("ed")), RhoWeight::new(vec![-1], vec![-1]));
        assert_eq!(rho(&sys("eed")), RhoWeight::new(vec![0, -2], vec![-2]));
        assert_eq!(rho(&sys("eedd")), RhoWeight::new(vec![-1, -3], vec![-3, -1]));
        assert_eq!(rho(&sys("eeedd")), RhoWeight::new(vec![0, -2, -4], vec![-4, -2]));
    }

    #[test]
    fn rho_mixed_order() {
        // 4|3 order with eps,eps,del,eps,del,del,eps.
        assert_eq!(
            rho(&sys("eededde")),
            RhoWeight::new(vec![0, -2, -2, 0], vec![-2, -2, 0])
        );
    }

    #[test]
    fn rho_pairing_property_all_small_orders() {
        // 2*(rho, alpha) == (alpha, alpha) for every simple root alpha,
        // over every shuffle with m+n <= 6.
        for m in 1..=3usize {
            for n in 1..=3usize {
                let total = m + n;
                for mask in 0..(1u32 << total) {
                    if (mask.count_ones() as usize) != n {
                        continue;
                    }
                    let s: String = (0..total)
                        .map(|i| if mask & (1 << i) != 0 { 'd' } else { 'e' })
                        .collect();
                    let pi = sys(&s);
                    let r = rho(&pi);
                    for alpha in pi.simple_roots() {
                        assert_eq!(
                            r.pairing2(&alpha),
                            alpha.self_pairing(),
                            "order {} root {}",
                            s,
                            alpha
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn odd_reflection_shifts_rho_by_root() {
        // rho of the reflected order equals rho + beta, for every odd
        // simple root of every (2,2) shuffle.
        for s in ["eedd", "eded", "edde", "deed", "dede", "ddee"] {
            let pi = sys(s);
            let r = rho(&pi);
            for k in 0..pi.len() - 1 {
                if pi.kind_at(k) != pi.kind_at(k + 1) {
                    let beta = Root { plus: pi.node_at(k), minus: pi.node_at(k + 1) };
                    let refl = pi.odd_reflection(k).unwrap();
                    assert_eq!(rho(&refl), r.add_root_multiple(&beta, 1), "{} at {}", s, k);
                }
            }
        }
    }

    #[test]
    fn reflect_rho_weight_cases() {
        let pi = sys("ed");
        // Unequal entries: unchanged.
        let lr = RhoWeight::from_integers(&[3], &[5]);
        assert_eq!(reflect_rho_weight(&pi, &lr, 0).unwrap(), lr);
        // Equal entries: gains the root, both entries move to 5.
        let lr = RhoWeight::from_integers(&[4], &[4]);
        assert_eq!(
            reflect_rho_weight(&pi, &lr, 0).unwrap(),
            RhoWeight::from_integers(&[5], &[5])
        );
        // And back down through the reversed order.
        let pi_rev = sys("de");
        let lr = RhoWeight::from_integers(&[4], &[4]);
        assert_eq!(
            reflect_rho_weight(&pi_rev, &lr, 0).unwrap(),
            RhoWeight::from_integers(&[3], &[3])
        );
        assert!(reflect_rho_weight(&pi, &lr, 3).is_err());
        assert!(reflect_rho_weight(&sys("eed"), &lr, 0).is_err());
    }

    #[test]
    fn to_standard_reaches_standard_and_preserves_structure() {
        let pi = sys("eededde");
        // The Weyl vector itself transports to the standard Weyl vector:
        // every intermediate pairing is the self-pairing, zero exactly for
        // the odd swaps.
        let (pi_st, r_st) = to_standard(&pi, &rho(&pi));
        assert!(pi_st.is_standard());
        assert_eq!(r_st, rho(&SimpleRootSystem::standard(4, 3)));
    }

    #[test]
    fn check_weight_flags() {
        let pi = SimpleRootSystem::standard(2, 2);
        let zero = RhoWeight::zero(2, 2);
        let flags = check_weight(&zero, &pi);
        assert!(flags.dominant && flags.integral);
        // rho is half-integral for gl(2|2): not in P+ without a twist.
        assert!(!flags.in_p_plus);
        let (shifted, c2) = normalize_to_integral(&zero, &pi).unwrap();
        assert_eq!(c2, 1);
        let lr = shifted.add(&rho(&pi));
        assert_eq!(lr, RhoWeight::from_integers(&[0, -1], &[-1, 0]));
        assert!(check_weight(&shifted, &pi).rho_strictly_dominant);

        // gl(2|1): already integral.
        let pi21 = SimpleRootSystem::standard(2, 1);
        let (shifted, c2) = normalize_to_integral(&RhoWeight::zero(2, 1), &pi21).unwrap();
        assert_eq!(c2, 0);
        assert_eq!(shifted, RhoWeight::zero(2, 1));

        // Mixed parity cannot be normalized.
        let bad = RhoWeight { a2: vec![1, 0], b2: vec![0, 0] };
        assert!(normalize_to_integral(&bad, &pi).is_err());
    }

    #[test]
    fn atypical_set_of_twisted_trivial_gl22() {
        let lr = RhoWeight::from_integers(&[0, -1], &[-1, 0]);
        let s = standard_atypical_set(&lr).unwrap();
        assert_eq!(
            s,
            vec![
                Root { plus: (NodeKind::Eps, 1), minus: (NodeKind::Del, 0) },
                Root { plus: (NodeKind::Eps, 0), minus: (NodeKind::Del, 1) },
            ]
        );
        assert_eq!(atypicality(&lr).unwrap(), 2);
        // Typical example.
        let lr = RhoWeight::from_integers(&[5, 3], &[1, 2]);
        assert_eq!(atypicality(&lr).unwrap(), 0);
        // Non-strict input is rejected.
        assert!(standard_atypical_set(&RhoWeight::zero(2, 2)).is_err());
    }

    #[test]
    fn weight_display() {
        let lr = RhoWeight { a2: vec![-1, -3], b2: vec![-3, -1] };
        assert_eq!(lr.to_string(), "((-1/2),(-3/2) | (-3/2),(-1/2))");
        let lr = RhoWeight::from_integers(&[2, 1], &[0]);
        assert_eq!(lr.to_string(), "(2,1 | 0)");
    }
}
