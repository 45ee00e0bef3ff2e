//! Arc diagrams: a simple root order drawn as a row of nodes (bullets for
//! eps, crosses for del), one integer entry per node (the coefficients of
//! `lambda + rho`), and arcs pairing bullets with crosses of equal entry.
//!
//! Validity asks for: equal entries at arc endpoints, disjoint arcs,
//! maximality (no plain bullet and plain cross share an entry anywhere),
//! and strict monotonicity along position-adjacent nodes of the same kind
//! (bullet entries decrease, cross entries increase).
//!
//! The local moves preserve both validity and the value of the
//! Kac-Wakimoto expression:
//!
//! 1. swap two adjacent plain nodes of opposite kinds and distinct entries;
//! 2. reflect an arc in place (entries move by one);
//! 3. transfer a plain bullet across an adjacent arc;
//! 4. transfer a plain cross across an adjacent arc.
//!
//! On top of the moves sit three global procedures: [`ArcDiagram::standardize`]
//! (bubble every cross to the right, re-pairing arcs at equal-entry
//! collisions), [`ArcDiagram::shorten`] (walk a standard totally connected
//! diagram to its special diagram by growing a block of adjacent arcs), and
//! [`ArcDiagram::specialize`] (reach the same special diagram from any
//! admissible diagram using moves 1-4 only).

use crate::roots::{NodeKind, RhoWeight, Root, RootError, SimpleRootSystem};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("weight has non-integer entries")]
    NonIntegralWeight,
    #[error("arc ({0},{1}) is not an eps/del pair")]
    ArcNotOdd(usize, usize),
    #[error("arc ({0},{1}) joins entries {2} and {3}")]
    ArcEntriesDiffer(usize, usize, i64, i64),
    #[error("node used by two arcs")]
    ArcsOverlap,
    #[error("plain bullet and plain cross share entry {0}")]
    NotMaximal(i64),
    #[error("adjacent same-kind entries out of order at position {0}")]
    MonotonicityViolated(usize),
    #[error("arc index out of range")]
    ArcOutOfRange,
    #[error("move does not apply at position {0}: {1}")]
    BadMove(usize, String),
    #[error("diagram is not admissible (an arc is not short)")]
    NotAdmissible,
    #[error("diagram order is not standard")]
    NotStandardOrder,
    #[error("diagram is not totally connected")]
    NotTotallyConnected,
    #[error("diagram is not special: {0}")]
    NotSpecial(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

/// The four value-preserving local moves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    /// Swap adjacent plain nodes of opposite kinds (distinct entries).
    PlainSwap,
    /// Reflect a short arc in place.
    ArcReflect,
    /// Transfer a plain bullet across an adjacent arc.
    BulletTransfer,
    /// Transfer a plain cross across an adjacent arc.
    CrossTransfer,
}

/// Shape data of a special diagram: `p` bullets then `q` crosses, the `r`
/// adjacent arcs all with entry `z`, then `t` bullets and `s` crosses.
/// `a` concatenates the typical bullet entries (strictly decreasing),
/// `b` the typical cross entries (strictly increasing).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecialShape {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub t: usize,
    pub s: usize,
    pub z: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl SpecialShape {
    pub fn m(&self) -> usize {
        self.p + self.r + self.t
    }

    pub fn n(&self) -> usize {
        self.q + self.r + self.s
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcDiagram {
    order: SimpleRootSystem,
    entries: Vec<i64>,
    arcs: BTreeSet<(usize, usize)>,
}

impl ArcDiagram {
    /// Assemble a diagram from an order, a shifted weight with integer
    /// entries, and a set of atypical roots, then validate it.
    pub fn build(
        pi: &SimpleRootSystem,
        lr: &RhoWeight,
        atypical: &[Root],
    ) -> Result<Self, DiagramError> {
        let (a, b) = lr.integer_entries().ok_or(DiagramError::NonIntegralWeight)?;
        let mut entries = Vec::with_capacity(pi.len());
        for pos in 0..pi.len() {
            entries.push(match pi.node_at(pos) {
                (NodeKind::Eps, i) => a[i],
                (NodeKind::Del, j) => b[j],
            });
        }
        let mut arcs = BTreeSet::new();
        for root in atypical {
            let (i, j) = match (root.plus, root.minus) {
                ((NodeKind::Eps, i), (NodeKind::Del, j)) => (i, j),
                ((NodeKind::Del, j), (NodeKind::Eps, i)) => (i, j),
                _ => return Err(DiagramError::ArcNotOdd(root.plus.1, root.minus.1)),
            };
            arcs.insert((i, j));
        }
        let d = ArcDiagram { order: pi.clone(), entries, arcs };
        d.validate()?;
        Ok(d)
    }

    pub fn from_parts(
        order: SimpleRootSystem,
        entries: Vec<i64>,
        arcs: BTreeSet<(usize, usize)>,
    ) -> Result<Self, DiagramError> {
        let d = ArcDiagram { order, entries, arcs };
        d.validate()?;
        Ok(d)
    }

    pub fn order(&self) -> &SimpleRootSystem {
        &self.order
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn m(&self) -> usize {
        self.order.m()
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Atypicality degree.
    pub fn r(&self) -> usize {
        self.arcs.len()
    }

    pub fn entry_of(&self, kind: NodeKind, idx: usize) -> i64 {
        self.entries[self.order.position_of(kind, idx)]
    }

    /// The shifted weight read back off the entries.
    pub fn rho_weight(&self) -> RhoWeight {
        let mut a = vec![0i64; self.m()];
        let mut b = vec![0i64; self.n()];
        for pos in 0..self.len() {
            match self.order.node_at(pos) {
                (NodeKind::Eps, i) => a[i] = self.entries[pos],
                (NodeKind::Del, j) => b[j] = self.entries[pos],
            }
        }
        RhoWeight::from_integers(&a, &b)
    }

    /// Arc endpoint positions (bullet position, cross position).
    pub fn arc_positions(&self, arc: (usize, usize)) -> (usize, usize) {
        (
            self.order.position_of(NodeKind::Eps, arc.0),
            self.order.position_of(NodeKind::Del, arc.1),
        )
    }

    fn arc_entry(&self, arc: (usize, usize)) -> i64 {
        self.entries[self.arc_positions(arc).0]
    }

    /// The atypical roots, oriented by position (earlier node minus later
    /// node), sorted by increasing entry.
    pub fn atypical_roots(&self) -> Vec<Root> {
        let mut with_entries: Vec<(i64, Root)> = self
            .arcs
            .iter()
            .map(|&(i, j)| {
                let (pe, pd) = self.arc_positions((i, j));
                let root = if pe < pd {
                    Root { plus: (NodeKind::Eps, i), minus: (NodeKind::Del, j) }
                } else {
                    Root { plus: (NodeKind::Del, j), minus: (NodeKind::Eps, i) }
                };
                (self.arc_entry((i, j)), root)
            })
            .collect();
        with_entries.sort_by_key(|&(e, _)| e);
        with_entries.into_iter().map(|(_, r)| r).collect()
    }

    pub fn is_plain(&self, pos: usize) -> bool {
        match self.order.node_at(pos) {
            (NodeKind::Eps, i) => !self.arcs.iter().any(|&(ai, _)| ai == i),
            (NodeKind::Del, j) => !self.arcs.iter().any(|&(_, aj)| aj == j),
        }
    }

    fn arc_of_eps(&self, i: usize) -> Option<(usize, usize)> {
        self.arcs.iter().copied().find(|&(ai, _)| ai == i)
    }

    fn arc_of_del(&self, j: usize) -> Option<(usize, usize)> {
        self.arcs.iter().copied().find(|&(_, aj)| aj == j)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let (m, n) = (self.m(), self.n());
        assert_eq!(self.entries.len(), self.order.len());

        let mut eps_used = vec![false; m];
        let mut del_used = vec![false; n];
        for &(i, j) in &self.arcs {
            if i >= m || j >= n {
                return Err(DiagramError::ArcOutOfRange);
            }
            if eps_used[i] || del_used[j] {
                return Err(DiagramError::ArcsOverlap);
            }
            eps_used[i] = true;
            del_used[j] = true;
            let (pe, pd) = self.arc_positions((i, j));
            if self.entries[pe] != self.entries[pd] {
                return Err(DiagramError::ArcEntriesDiffer(
                    i,
                    j,
                    self.entries[pe],
                    self.entries[pd],
                ));
            }
        }

        // Maximality: a plain bullet may never share its entry with a plain
        // cross, anywhere in the diagram.
        let plain_eps: BTreeSet<i64> = (0..m)
            .filter(|&i| !eps_used[i])
            .map(|i| self.entry_of(NodeKind::Eps, i))
            .collect();
        for j in 0..n {
            if !del_used[j] {
                let e = self.entry_of(NodeKind::Del, j);
                if plain_eps.contains(&e) {
                    return Err(DiagramError::NotMaximal(e));
                }
            }
        }

        // Monotonicity along position-adjacent same-kind nodes.
        for pos in 0..self.len().saturating_sub(1) {
            let (ka, kb) = (self.order.kind_at(pos), self.order.kind_at(pos + 1));
            if ka == kb {
                let (ea, eb) = (self.entries[pos], self.entries[pos + 1]);
                let ok = match ka {
                    NodeKind::Eps => ea > eb,
                    NodeKind::Del => ea < eb,
                };
                if !ok {
                    return Err(DiagramError::MonotonicityViolated(pos));
                }
            }
        }
        Ok(())
    }

    /// Swap the mixed pair at `(k, k+1)`; entries travel with their nodes,
    /// and when they coincide both shift by the odd root (up when the
    /// bullet is on the left, down when the cross is). Arcs are keyed by
    /// occurrence and follow automatically. No validity check is done: the
    /// global procedures pass through transient states.
    pub fn odd_move(&self, k: usize) -> Result<ArcDiagram, DiagramError> {
        if k + 1 >= self.len() {
            return Err(DiagramError::BadMove(k, "position out of range".into()));
        }
        if self.order.kind_at(k) == self.order.kind_at(k + 1) {
            return Err(DiagramError::BadMove(k, "pair is not mixed".into()));
        }
        let mut d = self.clone();
        d.swap_mixed(k);
        Ok(d)
    }

    fn swap_mixed(&mut self, k: usize) {
        debug_assert!(self.order.kind_at(k) != self.order.kind_at(k + 1));
        let delta = if self.entries[k] == self.entries[k + 1] {
            match self.order.kind_at(k) {
                NodeKind::Eps => 1,
                NodeKind::Del => -1,
            }
        } else {
            0
        };
        self.order = self.order.odd_reflection(k).expect("mixed pair");
        self.entries.swap(k, k + 1);
        self.entries[k] += delta;
        self.entries[k + 1] += delta;
    }

    /// Apply one of the four moves with the pattern anchored at position
    /// `k` (its leftmost node). Both orientations of moves 3 and 4 are
    /// recognized. The result is validated.
    pub fn apply_move(&self, mv: Move, k: usize) -> Result<ArcDiagram, DiagramError> {
        let bad = |msg: &str| DiagramError::BadMove(k, msg.into());
        let d = match mv {
            Move::PlainSwap => {
                if k + 1 >= self.len() {
                    return Err(bad("position out of range"));
                }
                if self.order.kind_at(k) == self.order.kind_at(k + 1) {
                    return Err(bad("pair is not mixed"));
                }
                if !self.is_plain(k) || !self.is_plain(k + 1) {
                    return Err(bad("both nodes must be plain"));
                }
                if self.entries[k] == self.entries[k + 1] {
                    return Err(bad("entries must differ"));
                }
                self.odd_move(k)?
            }
            Move::ArcReflect => {
                if k + 1 >= self.len() {
                    return Err(bad("position out of range"));
                }
                let pair = self.short_arc_at(k).ok_or_else(|| bad("no short arc here"))?;
                debug_assert_eq!(self.entries[k], self.entries[k + 1]);
                let _ = pair;
                self.odd_move(k)?
            }
            Move::BulletTransfer => {
                if k + 2 >= self.len() {
                    return Err(bad("pattern needs three positions"));
                }
                if let Some((i, j)) = self.short_arc_at(k) {
                    // [bullet(i) a, cross(j) a] bullet(i+1) a  ->
                    // bullet(i) a [bullet(i+1) a-1, cross(j) a-1]
                    if self.order.kind_at(k) != NodeKind::Eps {
                        return Err(bad("arc must be bullet-cross"));
                    }
                    let (kind, i2) = self.order.node_at(k + 2);
                    if kind != NodeKind::Eps || !self.is_plain(k + 2) {
                        return Err(bad("third node must be a plain bullet"));
                    }
                    debug_assert_eq!(i2, i + 1);
                    if self.entries[k + 2] != self.entries[k] {
                        return Err(bad("bullet entry must match the arc"));
                    }
                    let mut d = self.clone();
                    d.swap_mixed(k + 1);
                    d.rearc((i, j), (i2, j));
                    d.validate()?;
                    d
                } else if let Some((i2, j)) = self.short_arc_at(k + 1) {
                    // bullet(i) a [bullet(i+1) a-1, cross(j) a-1]  ->
                    // [bullet(i) a, cross(j) a] bullet(i+1) a
                    if self.order.kind_at(k + 1) != NodeKind::Eps {
                        return Err(bad("arc must be bullet-cross"));
                    }
                    let (kind, i) = self.order.node_at(k);
                    if kind != NodeKind::Eps || !self.is_plain(k) {
                        return Err(bad("first node must be a plain bullet"));
                    }
                    debug_assert_eq!(i2, i + 1);
                    if self.entries[k] != self.entries[k + 1] + 1 {
                        return Err(bad("bullet entry must exceed the arc by one"));
                    }
                    let mut d = self.clone();
                    d.swap_mixed(k + 1);
                    d.rearc((i2, j), (i, j));
                    d.validate()?;
                    d
                } else {
                    return Err(bad("no adjacent arc"));
                }
            }
            Move::CrossTransfer => {
                if k + 2 >= self.len() {
                    return Err(bad("pattern needs three positions"));
                }
                if let Some((i, j)) = self.short_arc_at(k + 1) {
                    // cross(j-1) a [bullet(i) a, cross(j) a]  ->
                    // [bullet(i) a-1, cross(j-1) a-1] cross(j) a
                    if self.order.kind_at(k + 1) != NodeKind::Eps {
                        return Err(bad("arc must be bullet-cross"));
                    }
                    let (kind, j0) = self.order.node_at(k);
                    if kind != NodeKind::Del || !self.is_plain(k) {
                        return Err(bad("first node must be a plain cross"));
                    }
                    debug_assert_eq!(j0, j - 1);
                    if self.entries[k] != self.entries[k + 1] {
                        return Err(bad("cross entry must match the arc"));
                    }
                    let mut d = self.clone();
                    d.swap_mixed(k);
                    d.rearc((i, j), (i, j0));
                    d.validate()?;
                    d
                } else if let Some((i, j0)) = self.short_arc_at(k) {
                    // [bullet(i) a-1, cross(j-1) a-1] cross(j) a  ->
                    // cross(j-1) a [bullet(i) a, cross(j) a]
                    if self.order.kind_at(k) != NodeKind::Eps {
                        return Err(bad("arc must be bullet-cross"));
                    }
                    let (kind, j) = self.order.node_at(k + 2);
                    if kind != NodeKind::Del || !self.is_plain(k + 2) {
                        return Err(bad("third node must be a plain cross"));
                    }
                    debug_assert_eq!(j, j0 + 1);
                    if self.entries[k + 2] != self.entries[k] + 1 {
                        return Err(bad("cross entry must exceed the arc by one"));
                    }
                    let mut d = self.clone();
                    d.swap_mixed(k);
                    d.rearc((i, j0), (i, j));
                    d.validate()?;
                    d
                } else {
                    return Err(bad("no adjacent arc"));
                }
            }
        };
        d.validate()?;
        Ok(d)
    }

    /// The arc occupying exactly positions `(k, k+1)`, if any.
    fn short_arc_at(&self, k: usize) -> Option<(usize, usize)> {
        for &arc in &self.arcs {
            let (pe, pd) = self.arc_positions(arc);
            if (pe.min(pd), pe.max(pd)) == (k, k + 1) {
                return Some(arc);
            }
        }
        None
    }

    fn rearc(&mut self, old: (usize, usize), new: (usize, usize)) {
        let removed = self.arcs.remove(&old);
        debug_assert!(removed);
        self.arcs.insert(new);
    }

    /// Every integer strictly between the smallest and largest atypical
    /// entry occurs among the entries. Vacuously true without arcs.
    pub fn interval_property(&self) -> bool {
        if self.arcs.is_empty() {
            return true;
        }
        let arc_entries: Vec<i64> = self.arcs.iter().map(|&a| self.arc_entry(a)).collect();
        let lo = *arc_entries.iter().min().unwrap();
        let hi = *arc_entries.iter().max().unwrap();
        let present: BTreeSet<i64> = self.entries.iter().copied().collect();
        (lo + 1..hi).all(|v| present.contains(&v))
    }

    /// All arcs short (endpoints adjacent).
    pub fn is_admissible(&self) -> bool {
        self.validate().is_ok()
            && self.arcs.iter().all(|&a| {
                let (pe, pd) = self.arc_positions(a);
                pe.abs_diff(pd) == 1
            })
    }

    /// Largest atypical entry, the raising target.
    pub fn max_atypical_entry(&self) -> Option<i64> {
        self.arcs.iter().map(|&a| self.arc_entry(a)).max()
    }

    /// The raised weight (every arc lifted to the maximal atypical entry)
    /// and the signed valuation of the raise along the atypical roots.
    pub fn lambda_up_and_val(&self) -> (RhoWeight, i64) {
        let lr = self.rho_weight();
        let Some(big) = self.max_atypical_entry() else {
            return (lr, 0);
        };
        let mut up = lr;
        let mut val = 0i64;
        for &(i, j) in &self.arcs {
            let a = self.arc_entry((i, j));
            let k = big - a;
            let root = Root { plus: (NodeKind::Eps, i), minus: (NodeKind::Del, j) };
            up = up.add_root_multiple(&root, k);
            let (pe, pd) = self.arc_positions((i, j));
            val += if pe < pd { k } else { -k };
        }
        (up, val)
    }

    /// Bubble every cross to the right end. Equal-entry collisions reflect
    /// the pair downward and re-pair arcs: the met bullet and the moving
    /// cross always join, and their former partners (when both exist) join
    /// as the enclosing arc. Requires an admissible diagram; produces the
    /// standard diagram of the transported weight.
    pub fn standardize(&self) -> Result<ArcDiagram, DiagramError> {
        if !self.is_admissible() {
            return Err(DiagramError::NotAdmissible);
        }
        let mut d = self.clone();

        // Orient every arc bullet-first.
        for arc in d.arcs.clone() {
            let (pe, pd) = d.arc_positions(arc);
            if pd < pe {
                d.swap_mixed(pd);
            }
        }

        loop {
            // The rightmost cross that still has a bullet to its right.
            let Some(mut p) = (0..d.len())
                .rev()
                .find(|&p| {
                    d.order.kind_at(p) == NodeKind::Del
                        && (p + 1..d.len()).any(|q| d.order.kind_at(q) == NodeKind::Eps)
                })
            else {
                break;
            };
            while p + 1 < d.len() && d.order.kind_at(p + 1) == NodeKind::Eps {
                if d.entries[p] == d.entries[p + 1] {
                    let (_, x) = d.order.node_at(p);
                    let (_, b) = d.order.node_at(p + 1);
                    let partner_of_x = d.arc_of_del(x);
                    let partner_of_b = d.arc_of_eps(b);
                    d.swap_mixed(p);
                    if let Some(old) = partner_of_x {
                        d.arcs.remove(&old);
                    }
                    if let Some(old) = partner_of_b {
                        d.arcs.remove(&old);
                    }
                    d.arcs.insert((b, x));
                    if let (Some((pe, _)), Some((_, pd))) = (partner_of_x, partner_of_b) {
                        d.arcs.insert((pe, pd));
                    }
                } else {
                    d.swap_mixed(p);
                }
                p += 1;
            }
        }

        if !d.order.is_standard() {
            return Err(DiagramError::Internal("standardize did not sort the order".into()));
        }
        d.validate()?;
        Ok(d)
    }

    fn arc_position_span(&self) -> Option<(usize, usize)> {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &arc in &self.arcs {
            let (pe, pd) = self.arc_positions(arc);
            lo = lo.min(pe.min(pd));
            hi = hi.max(pe.max(pd));
        }
        if self.arcs.is_empty() {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// Push the plain bullet at `pos` rightward with unequal-entry swaps
    /// until it passes every arc endpoint.
    fn push_bullet_out_right(&mut self, mut pos: usize) -> Result<(), DiagramError> {
        debug_assert_eq!(self.order.kind_at(pos), NodeKind::Eps);
        loop {
            let Some((_, hi)) = self.arc_position_span() else { return Ok(()) };
            if pos > hi {
                return Ok(());
            }
            if pos + 1 >= self.len() || self.order.kind_at(pos + 1) != NodeKind::Del {
                return Err(DiagramError::Internal("bullet push blocked".into()));
            }
            if self.entries[pos] == self.entries[pos + 1] {
                return Err(DiagramError::Internal("bullet push hit an equal entry".into()));
            }
            self.swap_mixed(pos);
            pos += 1;
        }
    }

    /// Mirror image: push the plain cross at `pos` leftward past every arc.
    fn push_cross_out_left(&mut self, mut pos: usize) -> Result<(), DiagramError> {
        debug_assert_eq!(self.order.kind_at(pos), NodeKind::Del);
        loop {
            let Some((lo, _)) = self.arc_position_span() else { return Ok(()) };
            if pos < lo {
                return Ok(());
            }
            if pos == 0 || self.order.kind_at(pos - 1) != NodeKind::Eps {
                return Err(DiagramError::Internal("cross push blocked".into()));
            }
            if self.entries[pos] == self.entries[pos - 1] {
                return Err(DiagramError::Internal("cross push hit an equal entry".into()));
            }
            self.swap_mixed(pos - 1);
            pos -= 1;
        }
    }

    /// Walk a standard totally connected diagram to its special diagram.
    ///
    /// Returns the visited states: the input, the state after clearing the
    /// innermost arc's interior (when that does anything), and the state
    /// after each induction step. The block of adjacent equal-entry arcs is
    /// reflected; the freed entry either absorbs the enclosing arc (both
    /// neighbors match), or trades an adjacent typical node into the block
    /// and expels an orphan, which is pushed outside all arcs.
    pub fn shorten(&self) -> Result<Vec<ArcDiagram>, DiagramError> {
        if !self.order.is_standard() {
            return Err(DiagramError::NotStandardOrder);
        }
        self.validate()?;
        if !self.interval_property() {
            return Err(DiagramError::NotTotallyConnected);
        }
        let mut seq = vec![self.clone()];
        if self.arcs.is_empty() {
            return Ok(seq);
        }
        let mut d = self.clone();

        // Innermost arc: the bullet of largest index pairs with the cross
        // of smallest index in a standard diagram.
        let s_max = d.arcs.iter().map(|&(i, _)| i).max().unwrap();
        let inner = d
            .arc_of_eps(s_max)
            .ok_or_else(|| DiagramError::Internal("innermost arc missing".into()))?;
        if d.arcs.iter().map(|&(_, j)| j).min().unwrap() != inner.1 {
            return Err(DiagramError::Internal("arcs of a standard diagram must nest".into()));
        }

        // Clear the innermost arc's interior: plain bullets exit right,
        // plain crosses exit left, past all arcs.
        let mut changed = false;
        loop {
            let (pe, pd) = d.arc_positions(inner);
            let plain_bullet = (pe + 1..pd)
                .rev()
                .find(|&p| d.order.kind_at(p) == NodeKind::Eps && d.is_plain(p));
            if let Some(p) = plain_bullet {
                d.push_bullet_out_right(p)?;
                changed = true;
                continue;
            }
            let plain_cross =
                (pe + 1..pd).find(|&p| d.order.kind_at(p) == NodeKind::Del && d.is_plain(p));
            if let Some(p) = plain_cross {
                d.push_cross_out_left(p)?;
                changed = true;
                continue;
            }
            break;
        }
        if changed {
            d.validate()?;
            seq.push(d.clone());
        }

        let mut block: Vec<(usize, usize)> = vec![inner];
        let mut b = d.arc_entry(inner);

        while block.len() < d.arcs.len() {
            // Reflect every block arc in place (entries rise to b+1).
            let mut pairs: Vec<(usize, (usize, usize))> = block
                .iter()
                .map(|&arc| (self_min_pos(&d, arc), arc))
                .collect();
            pairs.sort();
            let left = pairs[0].0;
            let right = pairs.last().unwrap().0 + 1;
            for &(pos, _) in &pairs {
                d.swap_mixed(pos);
            }
            b += 1;

            let lmatch = left > 0
                && d.order.kind_at(left - 1) == NodeKind::Eps
                && d.entries[left - 1] == b;
            let rmatch = right + 1 < d.len()
                && d.order.kind_at(right + 1) == NodeKind::Del
                && d.entries[right + 1] == b;

            // After reflection the k-th block pair holds (cross j_k, bullet i_k).
            let ordered: Vec<(usize, usize)> = pairs.iter().map(|&(_, arc)| arc).collect();
            let s = ordered.len();
            for &arc in &ordered {
                d.arcs.remove(&arc);
            }

            match (lmatch, rmatch) {
                (true, true) => {
                    let (_, i_left) = d.order.node_at(left - 1);
                    let (_, j_right) = d.order.node_at(right + 1);
                    if !d.arcs.remove(&(i_left, j_right)) {
                        return Err(DiagramError::Internal(
                            "matching neighbors are not an arc".into(),
                        ));
                    }
                    let mut new_block = vec![(i_left, ordered[0].1)];
                    for k in 0..s - 1 {
                        new_block.push((ordered[k].0, ordered[k + 1].1));
                    }
                    new_block.push((ordered[s - 1].0, j_right));
                    for &arc in &new_block {
                        d.arcs.insert(arc);
                    }
                    block = new_block;
                }
                (true, false) => {
                    let (_, i_left) = d.order.node_at(left - 1);
                    let mut new_block = vec![(i_left, ordered[0].1)];
                    for k in 0..s - 1 {
                        new_block.push((ordered[k].0, ordered[k + 1].1));
                    }
                    for &arc in &new_block {
                        d.arcs.insert(arc);
                    }
                    block = new_block;
                    // Orphan bullet sits at the right end of the old block.
                    d.push_bullet_out_right(right)?;
                }
                (false, true) => {
                    let (_, j_right) = d.order.node_at(right + 1);
                    let mut new_block = Vec::with_capacity(s);
                    for k in 0..s - 1 {
                        new_block.push((ordered[k].0, ordered[k + 1].1));
                    }
                    new_block.push((ordered[s - 1].0, j_right));
                    for &arc in &new_block {
                        d.arcs.insert(arc);
                    }
                    block = new_block;
                    d.push_cross_out_left(left)?;
                }
                (false, false) => {
                    return Err(DiagramError::Internal(
                        "shorten found no continuation".into(),
                    ));
                }
            }
            d.validate()?;
            seq.push(d.clone());
        }

        if let Err(e) = d.check_special() {
            return Err(DiagramError::Internal(format!("shorten did not end special: {e}")));
        }
        Ok(seq)
    }

    /// Construct the special diagram directly from a strictly dominant
    /// integral shifted weight and its atypical set:
    /// `p` big bullets, `q` small crosses, `r` adjacent arcs at the maximal
    /// atypical entry, `t` small bullets, `s` big crosses.
    pub fn special_direct(lr: &RhoWeight, atypical: &[Root]) -> Result<ArcDiagram, DiagramError> {
        let computed = crate::roots::standard_atypical_set(lr)?;
        let given: BTreeSet<Root> = atypical.iter().copied().collect();
        let expect: BTreeSet<Root> = computed.iter().copied().collect();
        if given != expect {
            return Err(DiagramError::Internal(
                "atypical set does not match the weight".into(),
            ));
        }
        let (m, n) = lr.dims();
        let standard = ArcDiagram::build(&SimpleRootSystem::standard(m, n), lr, &computed)?;
        if !standard.interval_property() {
            return Err(DiagramError::NotTotallyConnected);
        }
        let shape = special_shape_of_weight(lr, &computed)?;
        Ok(diagram_of_shape(&shape))
    }

    fn check_special(&self) -> Result<SpecialShape, DiagramError> {
        self.validate()?;
        let r = self.arcs.len();
        if r == 0 {
            if !self.order.is_standard() {
                return Err(DiagramError::NotSpecial("no arcs and order not standard".into()));
            }
            let (a, b) = self.rho_weight().integer_entries().unwrap();
            return Ok(SpecialShape {
                p: self.m(),
                q: self.n(),
                r: 0,
                t: 0,
                s: 0,
                z: 0,
                a,
                b,
            });
        }
        let mut spans: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&arc| self.arc_positions(arc))
            .collect();
        spans.sort();
        let z = self.arc_entry(*self.arcs.iter().next().unwrap());
        for &arc in &self.arcs {
            if self.arc_entry(arc) != z {
                return Err(DiagramError::NotSpecial("arc entries differ".into()));
            }
        }
        let first = spans[0].0;
        for (k, &(pe, pd)) in spans.iter().enumerate() {
            if pd != pe + 1 || pe != first + 2 * k {
                return Err(DiagramError::NotSpecial(
                    "arcs must be adjacent bullet-cross pairs in a block".into(),
                ));
            }
        }
        let last = first + 2 * r - 1;
        let zone = |range: std::ops::Range<usize>| -> Result<(Vec<i64>, Vec<i64>), DiagramError> {
            let mut bullets = Vec::new();
            let mut crosses = Vec::new();
            for p in range {
                match self.order.kind_at(p) {
                    NodeKind::Eps => {
                        if !crosses.is_empty() {
                            return Err(DiagramError::NotSpecial(
                                "bullets must precede crosses in each zone".into(),
                            ));
                        }
                        bullets.push(self.entries[p]);
                    }
                    NodeKind::Del => crosses.push(self.entries[p]),
                }
            }
            Ok((bullets, crosses))
        };
        let (pz, qz) = zone(0..first)?;
        let (tz, sz) = zone(last + 1..self.len())?;
        if !pz.iter().all(|&v| v > z) || !tz.iter().all(|&v| v < z) {
            return Err(DiagramError::NotSpecial("bullet zone entries out of range".into()));
        }
        if !qz.iter().all(|&v| v < z) || !sz.iter().all(|&v| v > z) {
            return Err(DiagramError::NotSpecial("cross zone entries out of range".into()));
        }
        let mut a = pz.clone();
        a.extend(&tz);
        let mut b = qz.clone();
        b.extend(&sz);
        Ok(SpecialShape { p: pz.len(), q: qz.len(), r, t: tz.len(), s: sz.len(), z, a, b })
    }

    pub fn is_special(&self) -> bool {
        self.check_special().is_ok()
    }

    /// Shape data of a special diagram.
    pub fn special_shape(&self) -> Result<SpecialShape, DiagramError> {
        self.check_special()
    }

    /// Reach the special diagram from any admissible diagram using the four
    /// moves only: orient arcs, walk arcs together across the equal-entry
    /// gaps, sort the typical zones, then ferry mismatched typicals across
    /// the block while its entry decrements.
    pub fn specialize(&self) -> Result<ArcDiagram, DiagramError> {
        if !self.is_admissible() {
            return Err(DiagramError::NotAdmissible);
        }
        let mut d = self.clone();

        // Orient every arc bullet-cross.
        for arc in d.arcs.clone() {
            let (pe, pd) = d.arc_positions(arc);
            if pd < pe {
                d = d.apply_move(Move::ArcReflect, pd)?;
            }
        }

        if !d.arcs.is_empty() {
            // Consume the gaps between arcs.
            loop {
                let (lo, hi) = d.arc_position_span().unwrap();
                let has_inner_plain = (lo..=hi).any(|p| d.is_plain(p));
                if !has_inner_plain {
                    break;
                }
                let mut applied = false;
                for k in 0..d.len().saturating_sub(2) {
                    if let Ok(next) = d.apply_move(Move::BulletTransfer, k) {
                        // Only the arc-walking orientation shrinks gaps:
                        // require the arc on the left of the pattern.
                        if d.short_arc_at(k).is_some() {
                            d = next;
                            applied = true;
                            break;
                        }
                    }
                    if let Ok(next) = d.apply_move(Move::CrossTransfer, k) {
                        if d.short_arc_at(k + 1).is_some() {
                            d = next;
                            applied = true;
                            break;
                        }
                    }
                }
                if !applied {
                    return Err(DiagramError::Internal(
                        "specialize stalled with plain nodes between arcs".into(),
                    ));
                }
            }
        }

        // Sort the plain zones: bullets before crosses on each side.
        loop {
            let mut applied = false;
            for k in 0..d.len().saturating_sub(1) {
                if d.order.kind_at(k) == NodeKind::Del
                    && d.order.kind_at(k + 1) == NodeKind::Eps
                    && d.is_plain(k)
                    && d.is_plain(k + 1)
                {
                    d = d.apply_move(Move::PlainSwap, k)?;
                    applied = true;
                    break;
                }
            }
            if !applied {
                break;
            }
        }

        // Ferry typicals that match the block entry across the block.
        if !d.arcs.is_empty() {
            loop {
                let (lo, hi) = d.arc_position_span().unwrap();
                let z = d.entries[lo];
                if lo > 0
                    && d.order.kind_at(lo - 1) == NodeKind::Del
                    && d.entries[lo - 1] == z
                {
                    // Cross enters from the left, crosses every arc, then
                    // bubbles right through the small bullets.
                    let mut pos = lo - 1;
                    while d.short_arc_at(pos + 1).is_some() {
                        d = d.apply_move(Move::CrossTransfer, pos)?;
                        pos += 2;
                    }
                    while pos + 1 < d.len()
                        && d.order.kind_at(pos + 1) == NodeKind::Eps
                        && d.is_plain(pos + 1)
                    {
                        d = d.apply_move(Move::PlainSwap, pos)?;
                        pos += 1;
                    }
                } else if hi + 1 < d.len()
                    && d.order.kind_at(hi + 1) == NodeKind::Eps
                    && d.entries[hi + 1] == z
                {
                    let mut pos = hi + 1;
                    while pos >= 2 && d.short_arc_at(pos - 2).is_some() {
                        d = d.apply_move(Move::BulletTransfer, pos - 2)?;
                        pos -= 2;
                    }
                    while pos > 0
                        && d.order.kind_at(pos - 1) == NodeKind::Del
                        && d.is_plain(pos - 1)
                    {
                        d = d.apply_move(Move::PlainSwap, pos - 1)?;
                        pos -= 1;
                    }
                } else {
                    break;
                }
            }
        }

        d.check_special()?;
        Ok(d)
    }

    /// Plain-text rendering: arc rows (outer arcs above), a glyph row
    /// (`o` bullet, `x` cross), and the entry row.
    pub fn render_ascii(&self) -> String {
        let cols = self.len();
        let widths: Vec<usize> = self
            .entries
            .iter()
            .map(|e| e.to_string().len().max(1) + 2)
            .collect();
        let centers: Vec<usize> = {
            let mut cs = Vec::with_capacity(cols);
            let mut acc = 0;
            for w in &widths {
                cs.push(acc + (w - 1) / 2);
                acc += w;
            }
            cs
        };
        let total: usize = widths.iter().sum();

        // Depth = number of arcs strictly containing this one.
        let spans: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&arc| {
                let (pe, pd) = self.arc_positions(arc);
                (pe.min(pd), pe.max(pd))
            })
            .collect();
        let depth = |k: usize| -> usize {
            spans
                .iter()
                .enumerate()
                .filter(|&(l, &(lo, hi))| l != k && lo <= spans[k].0 && spans[k].1 <= hi)
                .count()
        };
        let max_depth = (0..spans.len()).map(depth).max().map_or(0, |d| d + 1);

        let mut rows: Vec<Vec<u8>> = vec![vec![b' '; total]; max_depth];
        for (k, &(lo, hi)) in spans.iter().enumerate() {
            let row = &mut rows[depth(k)];
            row[centers[lo]] = b'.';
            row[centers[hi]] = b'.';
            for c in centers[lo] + 1..centers[hi] {
                row[c] = b'_';
            }
        }

        let mut out = String::new();
        for row in rows {
            out.push_str(String::from_utf8(row).unwrap().trim_end());
            out.push('\n');
        }
        let mut glyphs = vec![b' '; total];
        for (p, &c) in centers.iter().enumerate() {
            glyphs[c] = match self.order.kind_at(p) {
                NodeKind::Eps => b'o',
                NodeKind::Del => b'x',
            };
        }
        out.push_str(String::from_utf8(glyphs).unwrap().trim_end());
        out.push('\n');
        let mut entry_row = String::new();
        for p in 0..widths.len() {
            let s = self.entries[p].to_string();
            let pad = centers[p] - entry_row.len() - (s.len() - 1) / 2;
            entry_row.push_str(&" ".repeat(pad));
            entry_row.push_str(&s);
        }
        out.push_str(entry_row.trim_end());
        out.push('\n');
        out
    }
}

fn self_min_pos(d: &ArcDiagram, arc: (usize, usize)) -> usize {
    let (pe, pd) = d.arc_positions(arc);
    pe.min(pd)
}

fn special_shape_of_weight(
    lr: &RhoWeight,
    atypical: &[Root],
) -> Result<SpecialShape, DiagramError> {
    let (a, b) = lr.integer_entries().ok_or(DiagramError::NonIntegralWeight)?;
    let mut arc_eps = vec![false; a.len()];
    let mut arc_del = vec![false; b.len()];
    let mut zs = Vec::new();
    for root in atypical {
        let (i, j) = match (root.plus, root.minus) {
            ((NodeKind::Eps, i), (NodeKind::Del, j)) => (i, j),
            ((NodeKind::Del, j), (NodeKind::Eps, i)) => (i, j),
            _ => return Err(DiagramError::ArcNotOdd(root.plus.1, root.minus.1)),
        };
        arc_eps[i] = true;
        arc_del[j] = true;
        zs.push(a[i]);
    }
    let r = zs.len();
    if r == 0 {
        return Ok(SpecialShape {
            p: a.len(),
            q: b.len(),
            r: 0,
            t: 0,
            s: 0,
            z: 0,
            a,
            b,
        });
    }
    let z = *zs.iter().max().unwrap();
    let mut big_a: Vec<i64> = Vec::new();
    let mut small_a: Vec<i64> = Vec::new();
    for (i, &v) in a.iter().enumerate() {
        if !arc_eps[i] {
            if v > z {
                big_a.push(v);
            } else {
                small_a.push(v);
            }
        }
    }
    let mut small_b: Vec<i64> = Vec::new();
    let mut big_b: Vec<i64> = Vec::new();
    for (j, &v) in b.iter().enumerate() {
        if !arc_del[j] {
            if v < z {
                small_b.push(v);
            } else {
                big_b.push(v);
            }
        }
    }
    big_a.sort_unstable_by(|x, y| y.cmp(x));
    small_a.sort_unstable_by(|x, y| y.cmp(x));
    small_b.sort_unstable();
    big_b.sort_unstable();
    let mut av = big_a.clone();
    av.extend(&small_a);
    let mut bv = small_b.clone();
    bv.extend(&big_b);
    Ok(SpecialShape {
        p: big_a.len(),
        q: small_b.len(),
        r,
        t: small_a.len(),
        s: big_b.len(),
        z,
        a: av,
        b: bv,
    })
}

fn diagram_of_shape(shape: &SpecialShape) -> ArcDiagram {
    let mut order = String::new();
    let mut entries = Vec::new();
    for k in 0..shape.p {
        order.push('e');
        entries.push(shape.a[k]);
    }
    for k in 0..shape.q {
        order.push('d');
        entries.push(shape.b[k]);
    }
    for _ in 0..shape.r {
        order.push_str("ed");
        entries.push(shape.z);
        entries.push(shape.z);
    }
    for k in 0..shape.t {
        order.push('e');
        entries.push(shape.a[shape.p + k]);
    }
    for k in 0..shape.s {
        order.push('d');
        entries.push(shape.b[shape.q + k]);
    }
    let arcs: BTreeSet<(usize, usize)> =
        (0..shape.r).map(|k| (shape.p + k, shape.q + k)).collect();
    let d = ArcDiagram {
        order: SimpleRootSystem::from_shuffle(&order).expect("valid shuffle"),
        entries,
        arcs,
    };
    debug_assert!(d.validate().is_ok());
    d
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs
            .iter()
            .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
            .collect();
        write!(
            f,
            "order={} entries={:?} arcs=[{}]",
            self.order.shuffle_string(),
            self.entries,
            arcs.join(",")
        )
    }
}
