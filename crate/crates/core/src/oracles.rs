//! Independent ground truth for the covariant module checks: hook
//! partitions, the covariant highest weight, and super-Schur functions
//! enumerated by brute force over hook semistandard tableaux. Nothing here
//! touches the formula machinery, so agreement between the two routes is
//! meaningful evidence.

use crate::exactring::{Coeff, ExponentVector, LaurentPoly};
use crate::roots::RhoWeight;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("partition parts must be positive and weakly decreasing")]
    MalformedPartition,
    #[error("partition does not fit the ({0}|{1})-hook")]
    HookViolation(usize, usize),
    #[error("partition size {0} exceeds the brute-force cap {1}")]
    TooLarge(usize, usize),
}

/// Weakly decreasing positive integer parts; the empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, OracleError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(OracleError::MalformedPartition);
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Vec<usize> {
        let cols = self.parts.first().copied().unwrap_or(0);
        (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect()
    }

    /// The `(m|n)`-hook condition: the `(m+1)`-th part is at most `n`.
    pub fn fits_hook(&self, m: usize, n: usize) -> bool {
        self.parts.get(m).is_none_or(|&p| p <= n)
    }
}

/// Highest weight of the covariant module for a hook partition: the first
/// `m` parts load the `eps` side and each column overshoot `max(0, mu'_j - m)`
/// loads the `del` side. The hook condition guarantees the overshoots fit in
/// `n` coordinates.
pub fn covariant_weight(mu: &Partition, m: usize, n: usize) -> Result<RhoWeight, OracleError> {
    if !mu.fits_hook(m, n) {
        return Err(OracleError::HookViolation(m, n));
    }
    let mut a = vec![0i64; m];
    for (i, &p) in mu.parts.iter().take(m).enumerate() {
        a[i] = p as i64;
    }
    let conj = mu.conjugate();
    let mut b = vec![0i64; n];
    for (j, slot) in b.iter_mut().enumerate() {
        let tau = conj.get(j).map_or(0, |&col| col.saturating_sub(m));
        *slot = -(tau as i64);
    }
    Ok(RhoWeight::from_integers(&a, &b))
}

const TABLEAU_CAP: usize = 8;

/// Character of the covariant module, summed cell by cell over hook
/// semistandard fillings: letters are `1 < .. < m < 1' < .. < n'`; rows and
/// columns weakly increase, unprimed letters are strict down columns and
/// primed letters strict along rows. Each filling contributes
/// `prod x_i^{count(i)} * prod e^{count(j') del_j}`.
pub fn super_schur(mu: &Partition, m: usize, n: usize) -> Result<LaurentPoly, OracleError> {
    if !mu.fits_hook(m, n) {
        return Err(OracleError::HookViolation(m, n));
    }
    if mu.size() > TABLEAU_CAP {
        return Err(OracleError::TooLarge(mu.size(), TABLEAU_CAP));
    }
    let rows = mu.parts.clone();
    let mut grid: Vec<Vec<usize>> = rows.iter().map(|&len| vec![usize::MAX; len]).collect();
    let mut acc = LaurentPoly::zero(m, n);
    fill_cell(&mut grid, &rows, m, n, 0, 0, &mut acc);
    Ok(acc)
}

fn fill_cell(
    grid: &mut Vec<Vec<usize>>,
    rows: &[usize],
    m: usize,
    n: usize,
    r: usize,
    c: usize,
    acc: &mut LaurentPoly,
) {
    if r == rows.len() {
        let mut e = ExponentVector::zero(m, n);
        for row in grid.iter() {
            for &v in row {
                if v < m {
                    e.eps2[v] += 2;
                } else {
                    e.del2[v - m] -= 2;
                }
            }
        }
        *acc = acc.add(&LaurentPoly::monomial(e, Coeff::one()));
        return;
    }
    let (nr, nc) = if c + 1 < rows[r] { (r, c + 1) } else { (r + 1, 0) };
    for v in 0..m + n {
        let primed = v >= m;
        if c > 0 {
            let left = grid[r][c - 1];
            if v < left || (v == left && primed) {
                continue;
            }
        }
        if r > 0 {
            let up = grid[r - 1][c];
            if v < up || (v == up && !primed) {
                continue;
            }
        }
        grid[r][c] = v;
        fill_cell(grid, rows, m, n, nr, nc, acc);
    }
    grid[r][c] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcdiag::ArcDiagram;
    use crate::charformulas::{extract_character, kw_formula};
    use crate::exactring::WeylElement;
    use crate::roots::{
        normalize_to_integral, rho, standard_atypical_set, SimpleRootSystem,
    };
    use crate::weightdiag::is_totally_connected;
    use num_traits::Zero;

    fn mu(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_ok());
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(mu(&[3, 2]).conjugate(), vec![2, 2, 1]);
        assert_eq!(mu(&[3, 2]).size(), 5);
    }

    #[test]
    fn hook_condition_reads_the_row_after_m() {
        // Tall column: the third part is 1 <= n, so the shape is accepted
        // even though its first column overshoots m by more than n.
        assert!(mu(&[1, 1, 1, 1]).fits_hook(2, 1));
        assert!(!mu(&[2, 2, 2]).fits_hook(2, 1));
        assert!(mu(&[2, 2, 2]).fits_hook(2, 2));
        assert!(mu(&[]).fits_hook(1, 1));
    }

    #[test]
    fn covariant_weight_loads_column_overshoots() {
        let w = covariant_weight(&mu(&[2, 2, 2]), 2, 2).unwrap();
        assert_eq!(w, RhoWeight::from_integers(&[2, 2], &[-1, -1]));

        let w = covariant_weight(&mu(&[1, 1, 1, 1]), 2, 1).unwrap();
        assert_eq!(w, RhoWeight::from_integers(&[1, 1], &[-2]));

        let w = covariant_weight(&mu(&[1]), 2, 2).unwrap();
        assert_eq!(w, RhoWeight::from_integers(&[1, 0], &[0, 0]));

        assert!(covariant_weight(&mu(&[2, 2, 2]), 2, 1).is_err());
    }

    #[test]
    fn single_box_is_the_natural_character() {
        for (m, n) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
            let s = super_schur(&mu(&[1]), m, n).unwrap();
            assert_eq!(s.num_terms(), m + n);
            assert_eq!(s.eval_at_one(), Coeff::from((m + n) as u64));
        }
        let s = super_schur(&mu(&[1]), 1, 1).unwrap();
        assert_eq!(s.to_string(), "x1 + y1^-1");
    }

    #[test]
    fn row_and_column_degenerations() {
        // One row: a block of 1's then at most one primed letter per value,
        // weakly increasing, so for gl(1|1) exactly two fillings per length.
        for k in 2..=4usize {
            let row = super_schur(&mu(&[k]), 1, 1).unwrap();
            assert_eq!(row.num_terms(), 2);
            let col = super_schur(&mu(&vec![1; k]), 1, 1).unwrap();
            assert_eq!(col.num_terms(), 2);
        }
    }

    #[test]
    fn super_schur_is_symmetric_and_positive() {
        for (parts, m, n) in [
            (vec![2usize, 1], 2usize, 2usize),
            (vec![3, 1], 2, 1),
            (vec![2, 2, 1], 3, 2),
        ] {
            let s = super_schur(&mu(&parts), m, n).unwrap();
            assert!(!s.is_zero());
            for g in WeylElement::generators(m, n) {
                assert_eq!(s.apply_weyl(&g), s);
            }
            for (_, c) in s.terms() {
                assert!(c > &Coeff::zero());
            }
        }
    }

    fn partitions_up_to(total: usize) -> Vec<Vec<usize>> {
        fn rec(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(acc.clone());
            for p in (1..=remaining.min(max_part)).rev() {
                acc.push(p);
                rec(remaining - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, total, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn covariant_weights_are_totally_connected() {
        for m in 1..=3usize {
            for n in 1..=3usize {
                let pi = SimpleRootSystem::standard(m, n);
                for parts in partitions_up_to(6) {
                    let p = mu(&parts);
                    if !p.fits_hook(m, n) {
                        continue;
                    }
                    let w = covariant_weight(&p, m, n).unwrap();
                    let (norm, _c2) = normalize_to_integral(&w, &pi).unwrap();
                    let lr = norm.add(&rho(&pi));
                    assert_eq!(
                        is_totally_connected(&lr),
                        Ok(true),
                        "mu={parts:?} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn tableaux_agree_with_the_formula_route() {
        // gl(1|1), shape (2,1): two fillings; the formula route runs through
        // normalization, the special diagram, and denominator extraction.
        let m = 1;
        let n = 1;
        let p = mu(&[2, 1]);
        let pi = SimpleRootSystem::standard(m, n);
        let w = covariant_weight(&p, m, n).unwrap();
        let (norm, c2) = normalize_to_integral(&w, &pi).unwrap();
        assert_eq!(c2, 1);
        let lr = norm.add(&rho(&pi));
        let atypical = standard_atypical_set(&lr).unwrap();
        let d = ArcDiagram::special_direct(&lr, &atypical).unwrap();
        let ch = extract_character(&kw_formula(&d).unwrap(), &pi).unwrap();
        let shift = ExponentVector::new(vec![c2; m], vec![c2; n]);
        let expected = super_schur(&p, m, n).unwrap().mul_monomial(&shift);
        assert_eq!(ch, expected);
    }
}
