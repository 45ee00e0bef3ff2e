//! Weight diagrams on the integer line: a cross where an `a`-entry meets a
//! `b`-entry, a greater sign for the remaining `a`-entries, a less sign for
//! the remaining `b`-entries. Right moves slide crosses into marked empty
//! spots; weakly increasing label sequences that carry one diagram onto
//! another are the paths whose length generating function is the
//! Kazhdan-Lusztig polynomial.
//!
//! Marking is simultaneous: starting from the rightmost cross, every cross
//! marks the first still-unmarked empty spot to its right, and the move
//! `R_i` sends cross `i` to its own mark. A cross whose nearby spots were
//! claimed by crosses further right can therefore jump a long way.

use crate::exactring::WeylElement;
use crate::roots::{NodeKind, RhoWeight, Root};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("weight has non-integer entries")]
    NonIntegral,
    #[error("weight is not strictly dominant")]
    NotStrictlyDominant,
    #[error("symbols overlap on the number line")]
    OverlappingSymbols,
    #[error("cross label {0} out of range")]
    LabelOutOfRange(usize),
    #[error("no right path between the diagrams")]
    NoPath,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symbol {
    Empty,
    Cross,
    Greater,
    Less,
}

/// Finitely many marked spots on the integer line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WeightDiagram {
    crosses: BTreeSet<i64>,
    greaters: BTreeSet<i64>,
    lessers: BTreeSet<i64>,
}

/// A weakly increasing sequence of cross labels; the composition applies
/// the rightmost label first. Labels are one-based and refer to the
/// left-to-right order of crosses on the source diagram, tracked by
/// identity as the crosses move.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RightPath {
    pub moves: Vec<usize>,
}

impl RightPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Polynomial in `q` with nonnegative integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KLPoly {
    coeffs: BTreeMap<usize, BigUint>,
}

impl KLPoly {
    pub fn zero() -> Self {
        KLPoly::default()
    }

    pub fn one() -> Self {
        KLPoly::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, BigUint::one());
        KLPoly { coeffs }
    }

    pub fn add_monomial(&mut self, k: usize) {
        let c = self.coeffs.entry(k).or_insert_with(BigUint::zero);
        *c += 1u32;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some(k)` when the polynomial is exactly `q^k`.
    pub fn as_monomial(&self) -> Option<usize> {
        if self.coeffs.len() == 1 {
            let (&k, c) = self.coeffs.iter().next().unwrap();
            if c.is_one() {
                return Some(k);
            }
        }
        None
    }

    /// Evaluate at `q = -1`.
    pub fn eval_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (&k, c) in &self.coeffs {
            let signed = BigInt::from(c.clone());
            if k % 2 == 0 {
                acc += signed;
            } else {
                acc -= signed;
            }
        }
        acc
    }
}

impl fmt::Display for KLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c.is_one(), k) {
                (true, 0) => write!(f, "1")?,
                (true, 1) => write!(f, "q")?,
                (true, _) => write!(f, "q^{k}")?,
                (false, 0) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{c}*q")?,
                (false, _) => write!(f, "{c}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl WeightDiagram {
    pub fn from_symbols(
        crosses: BTreeSet<i64>,
        greaters: BTreeSet<i64>,
        lessers: BTreeSet<i64>,
    ) -> Result<Self, WeightError> {
        let total = crosses.len() + greaters.len() + lessers.len();
        let mut all = crosses.clone();
        all.extend(&greaters);
        all.extend(&lessers);
        if all.len() != total {
            return Err(WeightError::OverlappingSymbols);
        }
        Ok(WeightDiagram { crosses, greaters, lessers })
    }

    pub fn crosses(&self) -> &BTreeSet<i64> {
        &self.crosses
    }

    pub fn greaters(&self) -> &BTreeSet<i64> {
        &self.greaters
    }

    pub fn lessers(&self) -> &BTreeSet<i64> {
        &self.lessers
    }

    pub fn m(&self) -> usize {
        self.crosses.len() + self.greaters.len()
    }

    pub fn n(&self) -> usize {
        self.crosses.len() + self.lessers.len()
    }

    /// Atypicality degree.
    pub fn r(&self) -> usize {
        self.crosses.len()
    }

    pub fn symbol_at(&self, pos: i64) -> Symbol {
        if self.crosses.contains(&pos) {
            Symbol::Cross
        } else if self.greaters.contains(&pos) {
            Symbol::Greater
        } else if self.lessers.contains(&pos) {
            Symbol::Less
        } else {
            Symbol::Empty
        }
    }

    /// Invert the diagram back to a shifted weight: `a`-entries are crosses
    /// and greater signs in decreasing order, `b`-entries crosses and less
    /// signs in increasing order.
    pub fn to_rho_weight(&self) -> RhoWeight {
        let mut a: Vec<i64> = self.crosses.union(&self.greaters).copied().collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        let b: Vec<i64> = self.crosses.union(&self.lessers).copied().collect();
        RhoWeight::from_integers(&a, &b)
    }

    /// No empty spot strictly between the leftmost and rightmost cross.
    pub fn is_totally_connected(&self) -> bool {
        let Some(&lo) = self.crosses.iter().next() else { return true };
        let &hi = self.crosses.iter().next_back().unwrap();
        (lo + 1..hi).all(|p| self.symbol_at(p) != Symbol::Empty)
    }

    fn occupied(&self) -> BTreeSet<i64> {
        let mut occ = self.crosses.clone();
        occ.extend(&self.greaters);
        occ.extend(&self.lessers);
        occ
    }

    /// The simultaneous marking: each cross, rightmost first, marks the
    /// first unmarked empty spot to its right. Returned as
    /// cross position -> marked position.
    pub fn marks(&self) -> BTreeMap<i64, i64> {
        let background: BTreeSet<i64> = self.greaters.union(&self.lessers).copied().collect();
        let positions: Vec<i64> = self.crosses.iter().copied().collect();
        marks_of_state(&background, &positions)
    }

    /// Move the `label`-th cross from the left (one-based) to its mark.
    pub fn right_move(&self, label: usize) -> Result<WeightDiagram, WeightError> {
        if label == 0 || label > self.crosses.len() {
            return Err(WeightError::LabelOutOfRange(label));
        }
        let pos = *self.crosses.iter().nth(label - 1).unwrap();
        let target = self.marks()[&pos];
        let mut next = self.clone();
        next.crosses.remove(&pos);
        next.crosses.insert(target);
        Ok(next)
    }

    /// Number line rendering with the symbols above the positions.
    pub fn render_ascii(&self) -> String {
        let occ = self.occupied();
        let (lo, hi) = match (occ.iter().next(), occ.iter().next_back()) {
            (Some(&lo), Some(&hi)) => (lo - 1, hi + 1),
            _ => (0, 0),
        };
        let mut symbol_row = String::new();
        let mut number_row = String::new();
        for p in lo..=hi {
            let num = p.to_string();
            let width = num.len() + 1;
            let glyph = match self.symbol_at(p) {
                Symbol::Cross => "x",
                Symbol::Greater => ">",
                Symbol::Less => "<",
                Symbol::Empty => "",
            };
            symbol_row.push_str(&format!("{glyph:>width$}"));
            number_row.push_str(&format!("{num:>width$}"));
        }
        format!("{}\n{}\n", symbol_row.trim_end(), number_row.trim_end())
    }
}

/// Cross at shared entries, greater at the remaining `a`-entries, less at
/// the remaining `b`-entries.
pub fn to_weight_diagram(lr: &RhoWeight) -> Result<WeightDiagram, WeightError> {
    let (a, b) = lr.integer_entries().ok_or(WeightError::NonIntegral)?;
    if !lr.is_strictly_dominant() {
        return Err(WeightError::NotStrictlyDominant);
    }
    let aset: BTreeSet<i64> = a.iter().copied().collect();
    let bset: BTreeSet<i64> = b.iter().copied().collect();
    let crosses: BTreeSet<i64> = aset.intersection(&bset).copied().collect();
    let greaters: BTreeSet<i64> = aset.difference(&bset).copied().collect();
    let lessers: BTreeSet<i64> = bset.difference(&aset).copied().collect();
    Ok(WeightDiagram { crosses, greaters, lessers })
}

pub fn is_totally_connected(lr: &RhoWeight) -> Result<bool, WeightError> {
    Ok(to_weight_diagram(lr)?.is_totally_connected())
}

fn marks_of_state(background: &BTreeSet<i64>, positions: &[i64]) -> BTreeMap<i64, i64> {
    let mut occupied = background.clone();
    occupied.extend(positions.iter().copied());
    let mut order: Vec<i64> = positions.to_vec();
    order.sort_unstable_by(|x, y| y.cmp(x));
    let mut marked = BTreeSet::new();
    let mut marks = BTreeMap::new();
    for p in order {
        let mut t = p + 1;
        while occupied.contains(&t) || marked.contains(&t) {
            t += 1;
        }
        marked.insert(t);
        marks.insert(p, t);
    }
    marks
}

fn backgrounds_match(dmu: &WeightDiagram, dlambda: &WeightDiagram) -> bool {
    dmu.greaters == dlambda.greaters
        && dmu.lessers == dlambda.lessers
        && dmu.crosses.len() == dlambda.crosses.len()
}

/// All right paths carrying `dmu` onto `dlambda`, canonically ordered.
pub fn enumerate_paths(dmu: &WeightDiagram, dlambda: &WeightDiagram) -> Vec<RightPath> {
    if !backgrounds_match(dmu, dlambda) {
        return Vec::new();
    }
    let r = dmu.crosses.len();
    let boxes: Vec<i64> = dlambda.crosses.iter().copied().collect();
    if r == 0 {
        return vec![RightPath { moves: Vec::new() }];
    }
    let background: BTreeSet<i64> = dmu.greaters.union(&dmu.lessers).copied().collect();
    let mut positions: Vec<i64> = dmu.crosses.iter().copied().collect();
    let mut memo: HashMap<(usize, Vec<i64>), Vec<Vec<usize>>> = HashMap::new();
    let suffixes = path_dfs(r, &mut positions, &boxes, &background, &mut memo);
    let mut out: Vec<RightPath> = suffixes
        .into_iter()
        .map(|mut applied| {
            applied.reverse();
            RightPath { moves: applied }
        })
        .collect();
    out.sort();
    out
}

/// Move lists in application order (labels weakly decreasing): all moves of
/// cross `stage` first, then the lower stages.
fn path_dfs(
    stage: usize,
    positions: &mut Vec<i64>,
    boxes: &[i64],
    background: &BTreeSet<i64>,
    memo: &mut HashMap<(usize, Vec<i64>), Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if stage == 0 {
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        return if sorted == boxes { vec![Vec::new()] } else { Vec::new() };
    }
    let key = (stage, positions.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out = path_dfs(stage - 1, positions, boxes, background, memo);

    let from = positions[stage - 1];
    let mark = marks_of_state(background, positions)[&from];
    let max_box = *boxes.last().unwrap();
    if mark <= max_box {
        positions[stage - 1] = mark;
        for suffix in path_dfs(stage, positions, boxes, background, memo) {
            let mut applied = vec![stage];
            applied.extend(suffix);
            out.push(applied);
        }
        positions[stage - 1] = from;
    }

    memo.insert(key, out.clone());
    out
}

/// The path length generating polynomial.
pub fn kl_polynomial(dlambda: &WeightDiagram, dmu: &WeightDiagram) -> KLPoly {
    let mut k = KLPoly::zero();
    for path in enumerate_paths(dmu, dlambda) {
        k.add_monomial(path.len());
    }
    k
}

/// One move of the trivial path: (label, from, to).
pub type TrivialMove = (usize, i64, i64);

/// The moves of the trivial path in application order: cross `r` first,
/// each cross driven exactly onto the same-index cross position of the
/// target diagram.
pub fn trivial_path_moves(
    dlambda: &WeightDiagram,
    dmu: &WeightDiagram,
) -> Result<Vec<TrivialMove>, WeightError> {
    if !backgrounds_match(dmu, dlambda) {
        return Err(WeightError::NoPath);
    }
    let boxes: Vec<i64> = dlambda.crosses.iter().copied().collect();
    let background: BTreeSet<i64> = dmu.greaters.union(&dmu.lessers).copied().collect();
    let mut positions: Vec<i64> = dmu.crosses.iter().copied().collect();
    let mut applied = Vec::new();
    for label in (1..=positions.len()).rev() {
        loop {
            let at = positions[label - 1];
            if at == boxes[label - 1] {
                break;
            }
            if at > boxes[label - 1] {
                return Err(WeightError::NoPath);
            }
            let mark = marks_of_state(&background, &positions)[&at];
            if mark > boxes[label - 1] {
                return Err(WeightError::NoPath);
            }
            positions[label - 1] = mark;
            applied.push((label, at, mark));
        }
    }
    Ok(applied)
}

/// The unique path sending the i-th cross of the source onto the i-th
/// cross position of the target, and its length. A path between the
/// diagrams exists precisely when this one does.
pub fn trivial_path(
    dlambda: &WeightDiagram,
    dmu: &WeightDiagram,
) -> Result<(RightPath, usize), WeightError> {
    let applied = trivial_path_moves(dlambda, dmu)?;
    let mut moves: Vec<usize> = applied.iter().map(|&(l, _, _)| l).collect();
    moves.reverse();
    let len = moves.len();
    Ok((RightPath { moves }, len))
}

/// The maximal orbit representative: the target's typical entries stay in
/// their slots while the source's atypical entries fill the target's
/// atypical slots, decreasing on the `a`-side and increasing on the
/// `b`-side. The returned element carries the source weight onto it.
pub fn mu_bar(
    dmu: &WeightDiagram,
    dlambda: &WeightDiagram,
    lr_lambda: &RhoWeight,
) -> Result<(RhoWeight, WeylElement), WeightError> {
    trivial_path_moves(dlambda, dmu)?;
    let (la, lb) = lr_lambda.integer_entries().ok_or(WeightError::NonIntegral)?;
    debug_assert_eq!(*dlambda, to_weight_diagram(lr_lambda).unwrap());
    let mut desc: Vec<i64> = dmu.crosses.iter().rev().copied().collect();
    let mut asc: Vec<i64> = dmu.crosses.iter().copied().collect();
    let mut desc_it = desc.drain(..);
    let mut asc_it = asc.drain(..);
    let bar_a: Vec<i64> = la
        .iter()
        .map(|v| if dlambda.crosses.contains(v) { desc_it.next().unwrap() } else { *v })
        .collect();
    let bar_b: Vec<i64> = lb
        .iter()
        .map(|v| if dlambda.crosses.contains(v) { asc_it.next().unwrap() } else { *v })
        .collect();
    let bar = RhoWeight::from_integers(&bar_a, &bar_b);

    let mu_rho = dmu.to_rho_weight();
    let (ma, mb) = mu_rho.integer_entries().unwrap();
    let sigma: Vec<usize> = ma
        .iter()
        .map(|v| bar_a.iter().position(|w| w == v).unwrap())
        .collect();
    let tau: Vec<usize> = mb
        .iter()
        .map(|v| bar_b.iter().position(|w| w == v).unwrap())
        .collect();
    let w = WeylElement::new(sigma, tau).expect("entry matching is a permutation");
    debug_assert_eq!(mu_rho.as_exponent().apply_weyl(&w), bar.as_exponent());
    Ok((bar, w))
}

/// All sources with a path to the target and total cross displacement at
/// most `v`. Candidate cross sets keep the typical background, respect the
/// sorted domination bound, and are filtered by trivial path existence.
pub fn enumerate_sources(dlambda: &WeightDiagram, v: u32) -> Vec<WeightDiagram> {
    let boxes: Vec<i64> = dlambda.crosses.iter().copied().collect();
    let forbidden: BTreeSet<i64> =
        dlambda.greaters.union(&dlambda.lessers).copied().collect();
    let mut picked: Vec<i64> = Vec::new();
    let mut out = Vec::new();
    sources_rec(&boxes, &forbidden, v as i64, 0, &mut picked, &mut out, dlambda);
    out.sort();
    out
}

fn sources_rec(
    boxes: &[i64],
    forbidden: &BTreeSet<i64>,
    budget: i64,
    k: usize,
    picked: &mut Vec<i64>,
    out: &mut Vec<WeightDiagram>,
    dlambda: &WeightDiagram,
) {
    if k == boxes.len() {
        let candidate = WeightDiagram {
            crosses: picked.iter().copied().collect(),
            greaters: dlambda.greaters.clone(),
            lessers: dlambda.lessers.clone(),
        };
        if trivial_path_moves(dlambda, &candidate).is_ok() {
            out.push(candidate);
        }
        return;
    }
    let floor = picked.last().map_or(i64::MIN, |&p| p + 1);
    for c in (boxes[k] - budget).max(floor)..=boxes[k] {
        if forbidden.contains(&c) {
            continue;
        }
        picked.push(c);
        sources_rec(boxes, forbidden, budget - (boxes[k] - c), k + 1, picked, out, dlambda);
        picked.pop();
    }
}

/// The lexicographic cone: `lr - sum n_i beta_i` over all `n_i >= 0` with
/// `sum n_i <= v` and the lowered atypical entries still strictly
/// increasing. Roots are taken in increasing order of atypical entry.
pub fn c_lexi(lr: &RhoWeight, atypical: &[Root], v: u32) -> Vec<RhoWeight> {
    let entry_of = |root: &Root| -> i64 {
        let i = match (root.plus, root.minus) {
            ((NodeKind::Eps, i), _) | (_, (NodeKind::Eps, i)) => i,
            _ => unreachable!("atypical roots are odd"),
        };
        lr.a2[i] / 2
    };
    let mut roots: Vec<(i64, Root)> = atypical
        .iter()
        .map(|root| (entry_of(root), *root))
        .collect();
    roots.sort_by_key(|&(e, _)| e);
    let mut out = Vec::new();
    let mut ns = vec![0i64; roots.len()];
    c_lexi_rec(lr, &roots, v as i64, 0, i64::MIN, &mut ns, &mut out);
    out.sort_by(|x, y| x.as_exponent().cmp(&y.as_exponent()));
    out
}

fn c_lexi_rec(
    lr: &RhoWeight,
    roots: &[(i64, Root)],
    budget: i64,
    k: usize,
    prev: i64,
    ns: &mut Vec<i64>,
    out: &mut Vec<RhoWeight>,
) {
    if k == roots.len() {
        let mut w = lr.clone();
        for (idx, &(_, root)) in roots.iter().enumerate() {
            w = w.add_root_multiple(&root, -ns[idx]);
        }
        out.push(w);
        return;
    }
    let (entry, _) = roots[k];
    for n in 0..=budget.min(if prev == i64::MIN { budget } else { entry - prev - 1 }) {
        ns[k] = n;
        c_lexi_rec(lr, roots, budget - n, k + 1, entry - n, ns, out);
    }
    ns[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::standard_atypical_set;

    fn diagram(crosses: &[i64], greaters: &[i64], lessers: &[i64]) -> WeightDiagram {
        WeightDiagram::from_symbols(
            crosses.iter().copied().collect(),
            greaters.iter().copied().collect(),
            lessers.iter().copied().collect(),
        )
        .unwrap()
    }

    fn d_lambda() -> WeightDiagram {
        // Crosses 4, 6, 8 with less at 2 and greater at 5, 9, 10.
        diagram(&[4, 6, 8], &[5, 9, 10], &[2])
    }

    fn d_mu() -> WeightDiagram {
        diagram(&[1, 4, 6], &[5, 9, 10], &[2])
    }

    #[test]
    fn weight_diagram_round_trip() {
        let lr = RhoWeight::from_integers(&[10, 9, 7, 5, 4], &[1, 4, 6, 7]);
        let d = to_weight_diagram(&lr).unwrap();
        assert_eq!(d, diagram(&[4, 7], &[5, 9, 10], &[1, 6]));
        assert_eq!(d.to_rho_weight(), lr);
        assert_eq!((d.m(), d.n()), (5, 4));

        let lr = RhoWeight::from_integers(&[10, 9, 8, 6, 5, 4], &[2, 4, 6, 8]);
        assert_eq!(to_weight_diagram(&lr).unwrap(), d_lambda());

        let empty = to_weight_diagram(&RhoWeight::from_integers(&[], &[])).unwrap();
        assert_eq!(empty.r(), 0);
        assert_eq!(empty.to_rho_weight(), RhoWeight::from_integers(&[], &[]));
    }

    #[test]
    fn to_weight_diagram_rejects_bad_weights() {
        let lr = RhoWeight::from_integers(&[3, 3], &[1]);
        assert_eq!(to_weight_diagram(&lr).unwrap_err(), WeightError::NotStrictlyDominant);
        let lr = RhoWeight::new(vec![1], vec![1]);
        assert_eq!(to_weight_diagram(&lr).unwrap_err(), WeightError::NonIntegral);
    }

    #[test]
    fn marks_and_right_moves() {
        let d = d_lambda();
        let marks = d.marks();
        assert_eq!(marks[&8], 11);
        assert_eq!(marks[&6], 7);
        assert_eq!(marks[&4], 12);
        assert_eq!(d.right_move(1).unwrap(), diagram(&[6, 8, 12], &[5, 9, 10], &[2]));
        assert_eq!(d.right_move(2).unwrap(), diagram(&[4, 7, 8], &[5, 9, 10], &[2]));
        assert_eq!(d.right_move(3).unwrap(), diagram(&[4, 6, 11], &[5, 9, 10], &[2]));
        assert_eq!(d.right_move(4).unwrap_err(), WeightError::LabelOutOfRange(4));

        let lone = diagram(&[3], &[], &[]);
        assert_eq!(lone.right_move(1).unwrap(), diagram(&[4], &[], &[]));
    }

    #[test]
    fn two_paths_between_the_example_diagrams() {
        let paths = enumerate_paths(&d_mu(), &d_lambda());
        assert_eq!(paths.len(), 2);
        assert_eq!(paths[0].moves, vec![1, 1, 2]);
        assert_eq!(paths[1].moves, vec![1, 1, 2, 3, 3]);

        let k = kl_polynomial(&d_lambda(), &d_mu());
        assert_eq!(k.to_string(), "q^5 + q^3");
        assert_eq!(k.eval_minus_one(), BigInt::from(-2));
    }

    #[test]
    fn paths_trivial_cases() {
        let d = d_lambda();
        let same = enumerate_paths(&d, &d);
        assert_eq!(same.len(), 1);
        assert!(same[0].is_empty());
        assert_eq!(kl_polynomial(&d, &d), KLPoly::one());
        // A target cross strictly left of every source cross is unreachable.
        let left = diagram(&[0, 6, 8], &[5, 9, 10], &[2]);
        assert!(enumerate_paths(&d_mu(), &left).is_empty());
        // Mismatched backgrounds give no paths.
        let other = diagram(&[4, 6, 8], &[5, 9, 11], &[2]);
        assert!(enumerate_paths(&d_mu(), &other).is_empty());
    }

    #[test]
    fn trivial_path_drives_crosses_in_order() {
        let (path, len) = trivial_path(&d_lambda(), &d_mu()).unwrap();
        assert_eq!(len, 5);
        assert_eq!(path.moves, vec![1, 1, 2, 3, 3]);
        let moves = trivial_path_moves(&d_lambda(), &d_mu()).unwrap();
        assert_eq!(
            moves,
            vec![(3, 6, 7), (3, 7, 8), (2, 4, 6), (1, 1, 3), (1, 3, 4)]
        );
        // Identical diagrams: the empty path.
        let (path, len) = trivial_path(&d_lambda(), &d_lambda()).unwrap();
        assert!(path.is_empty());
        assert_eq!(len, 0);
        // The trivial path is the longest one.
        let (_, len) = trivial_path(&d_lambda(), &d_mu()).unwrap();
        for p in enumerate_paths(&d_mu(), &d_lambda()) {
            assert!(p.len() <= len);
        }
    }

    #[test]
    fn total_connectedness() {
        let lr = RhoWeight::from_integers(&[10, 9, 7, 5, 4], &[1, 4, 6, 7]);
        assert!(is_totally_connected(&lr).unwrap());
        let lr = RhoWeight::from_integers(&[10, 9, 8, 6, 5, 4], &[2, 4, 6, 8]);
        assert!(!is_totally_connected(&lr).unwrap());
        // Zero or one cross.
        assert!(is_totally_connected(&RhoWeight::from_integers(&[5, 1], &[0])).unwrap());
        assert!(is_totally_connected(&RhoWeight::from_integers(&[5, 1], &[1])).unwrap());
    }

    #[test]
    fn mu_bar_example() {
        let lr_lambda = RhoWeight::from_integers(&[10, 9, 8, 6, 5, 4], &[2, 4, 6, 8]);
        let (bar, w) = mu_bar(&d_mu(), &d_lambda(), &lr_lambda).unwrap();
        assert_eq!(
            bar,
            RhoWeight::from_integers(&[10, 9, 6, 4, 5, 1], &[2, 1, 4, 6])
        );
        assert_eq!(w.length(), 2);
        // Total valuation: trivial length plus skipped spots.
        let (_, len) = trivial_path(&d_lambda(), &d_mu()).unwrap();
        let skipped: i64 = trivial_path_moves(&d_lambda(), &d_mu())
            .unwrap()
            .iter()
            .map(|&(_, from, to)| to - from - 1)
            .sum();
        assert_eq!(w.length() as i64, skipped);
        let drop: i64 = 7;
        assert_eq!(len as i64 + skipped, drop);
    }

    #[test]
    fn mu_bar_of_target_is_identity() {
        let lr = RhoWeight::from_integers(&[10, 9, 8, 6, 5, 4], &[2, 4, 6, 8]);
        let d = d_lambda();
        let (bar, w) = mu_bar(&d, &d, &lr).unwrap();
        assert_eq!(bar, lr);
        assert_eq!(w.length(), 0);
    }

    #[test]
    fn sources_within_budget() {
        // Single cross: three sources within displacement two.
        let lr = RhoWeight::from_integers(&[0], &[0]);
        let d = to_weight_diagram(&lr).unwrap();
        let sources = enumerate_sources(&d, 2);
        assert_eq!(sources.len(), 3);
        let cross_sets: Vec<Vec<i64>> = sources
            .iter()
            .map(|s| s.crosses().iter().copied().collect())
            .collect();
        assert_eq!(cross_sets, vec![vec![-2], vec![-1], vec![0]]);
        // Budget zero returns the diagram itself.
        assert_eq!(enumerate_sources(&d_lambda(), 0), vec![d_lambda()]);
    }

    #[test]
    fn c_lexi_matches_sources_for_connected_targets() {
        // The inequality description of the cone can lower an atypical
        // entry onto a typical one; such weights pick up a Weyl stabilizer
        // and die under skew-symmetrization, so the faithful comparison is
        // against the stabilizer-free part.
        let lr = RhoWeight::from_integers(&[10, 9, 7, 5, 4], &[1, 4, 6, 7]);
        let d = to_weight_diagram(&lr).unwrap();
        assert!(d.is_totally_connected());
        let atypical = standard_atypical_set(&lr).unwrap();
        for v in 0..=3u32 {
            let mut bars: Vec<RhoWeight> = enumerate_sources(&d, v)
                .iter()
                .map(|s| mu_bar(s, &d, &lr).unwrap().0)
                .collect();
            bars.sort_by(|x, y| x.as_exponent().cmp(&y.as_exponent()));
            let free: Vec<RhoWeight> = c_lexi(&lr, &atypical, v)
                .into_iter()
                .filter(|w| !crate::exactring::has_reflection_stabilizer(&w.as_exponent()))
                .collect();
            assert_eq!(bars, free);
        }
        // Witness for the filtering: lowering the atypical entry 7 by one
        // collides with the typical entry 6 and gains a stabilizer.
        let cone = c_lexi(&lr, &atypical, 1);
        assert_eq!(cone.len(), 3);
        let collided = RhoWeight::from_integers(&[10, 9, 6, 5, 4], &[1, 4, 6, 6]);
        assert!(cone.contains(&collided));
        assert!(crate::exactring::has_reflection_stabilizer(&collided.as_exponent()));
        // Single-cross cone is a line segment.
        let lr = RhoWeight::from_integers(&[0], &[0]);
        let atypical = standard_atypical_set(&lr).unwrap();
        assert_eq!(c_lexi(&lr, &atypical, 3).len(), 4);
        assert_eq!(c_lexi(&lr, &atypical, 0), vec![lr]);
    }

    #[test]
    fn connectedness_forces_unique_paths() {
        // The totally connected target has exactly one path from each of
        // its sources; the disconnected example target admits two.
        let lr = RhoWeight::from_integers(&[10, 9, 7, 5, 4], &[1, 4, 6, 7]);
        let d = to_weight_diagram(&lr).unwrap();
        for source in enumerate_sources(&d, 4) {
            let paths = enumerate_paths(&source, &d);
            assert_eq!(paths.len(), 1);
            let (_, len) = trivial_path(&d, &source).unwrap();
            assert_eq!(paths[0].len(), len);
        }
        assert!(!d_lambda().is_totally_connected());
        assert_eq!(enumerate_paths(&d_mu(), &d_lambda()).len(), 2);
    }

    #[test]
    fn kl_monomial_for_connected_targets() {
        let lr = RhoWeight::from_integers(&[10, 9, 7, 5, 4], &[1, 4, 6, 7]);
        let d = to_weight_diagram(&lr).unwrap();
        for source in enumerate_sources(&d, 4) {
            let k = kl_polynomial(&d, &source);
            let (_, len) = trivial_path(&d, &source).unwrap();
            assert_eq!(k.as_monomial(), Some(len));
        }
    }

    #[test]
    fn render_shows_symbols_over_numbers() {
        let d = diagram(&[4], &[5], &[2]);
        let art = d.render_ascii();
        let lines: Vec<&str> = art.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].contains('4'));
        let x_col = lines[0].find('x').unwrap();
        assert_eq!(lines[1].as_bytes()[x_col], b'4');
    }

    #[test]
    fn render_empty_is_axis_only() {
        let d = WeightDiagram::from_symbols(BTreeSet::new(), BTreeSet::new(), BTreeSet::new())
            .unwrap();
        let art = d.render_ascii();
        let lines: Vec<&str> = art.lines().collect();
        assert_eq!(lines[0].trim(), "");
        assert_eq!(lines[1].trim(), "0");
    }

    #[test]
    fn klpoly_display_and_eval() {
        let mut k = KLPoly::zero();
        assert_eq!(k.to_string(), "0");
        k.add_monomial(3);
        k.add_monomial(5);
        assert_eq!(k.to_string(), "q^5 + q^3");
        k.add_monomial(3);
        assert_eq!(k.to_string(), "q^5 + 2*q^3");
        assert_eq!(k.eval_minus_one(), BigInt::from(-3));
        assert_eq!(KLPoly::one().to_string(), "1");
        assert_eq!(KLPoly::monomial(5).degree(), Some(5));
        assert_eq!(KLPoly::monomial(1).to_string(), "q");
    }
}
