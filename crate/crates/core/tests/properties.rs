//! Randomized invariants that tie the modules together. Entries are drawn
//! from a bounded window so every case stays desk-sized.

use proptest::prelude::*;

use glchar::arcdiag::ArcDiagram;
use glchar::charformulas::weyl_denominator;
use glchar::exactring::{
    has_reflection_stabilizer, rc_equal, Coeff, ExponentVector, RationalChar, WeylElement,
};
use glchar::roots::{standard_atypical_set, SimpleRootSystem};
use glchar::weightdiag::{
    c_lexi, enumerate_paths, enumerate_sources, is_totally_connected, kl_polynomial,
    mu_bar, to_weight_diagram, trivial_path,
};
use glchar::{Move, RhoWeight};

/// Strictly dominant integral weights with entries in `[-2, 10]`.
fn dominant_weight(m: usize, n: usize) -> impl Strategy<Value = RhoWeight> {
    let a = proptest::collection::btree_set(-2i64..=10, m);
    let b = proptest::collection::btree_set(-2i64..=10, n);
    (a, b).prop_map(|(a, b)| {
        let a: Vec<i64> = a.into_iter().rev().collect();
        let b: Vec<i64> = b.into_iter().collect();
        RhoWeight::from_integers(&a, &b)
    })
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=3)
}

fn all_moves() -> [Move; 4] {
    [
        Move::PlainSwap,
        Move::ArcReflect,
        Move::BulletTransfer,
        Move::CrossTransfer,
    ]
}

fn applicable_moves(d: &ArcDiagram) -> Vec<(Move, usize)> {
    let mut out = Vec::new();
    for k in 0..d.len() {
        for mv in all_moves() {
            if d.apply_move(mv, k).is_ok() {
                out.push((mv, k));
            }
        }
    }
    out
}

/// A random admissible diagram of a totally connected module: the special
/// diagram scrambled by a bounded walk of moves.
fn admissible_diagram() -> impl Strategy<Value = ArcDiagram> {
    (dims(), proptest::collection::vec(any::<u32>(), 0..6))
        .prop_flat_map(|((m, n), walk)| {
            dominant_weight(m, n).prop_map(move |lr| {
                let atypical = standard_atypical_set(&lr).unwrap();
                if !is_totally_connected(&lr).unwrap() {
                    return None;
                }
                let mut d = ArcDiagram::special_direct(&lr, &atypical).unwrap();
                for pick in &walk {
                    let options = applicable_moves(&d);
                    if options.is_empty() {
                        break;
                    }
                    let (mv, k) = options[*pick as usize % options.len()];
                    d = d.apply_move(mv, k).unwrap();
                }
                Some(d)
            })
        })
        .prop_filter_map("weight must be totally connected", |d| d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagram_round_trip_and_atypicality((lr,) in dims().prop_flat_map(|(m, n)| (dominant_weight(m, n),))) {
        let d = to_weight_diagram(&lr).unwrap();
        prop_assert_eq!(d.to_rho_weight(), lr.clone());
        let atypical = standard_atypical_set(&lr).unwrap();
        prop_assert_eq!(atypical.len(), d.r());
    }

    #[test]
    fn moves_preserve_validity_and_module(d in admissible_diagram()) {
        let home = d.standardize().unwrap().rho_weight();
        prop_assert!(is_totally_connected(&home).unwrap());
        prop_assert!(d.interval_property());
        for (mv, k) in applicable_moves(&d) {
            let moved = d.apply_move(mv, k).unwrap();
            moved.validate().unwrap();
            prop_assert!(moved.is_admissible());
            prop_assert_eq!(moved.standardize().unwrap().rho_weight(), home.clone());
        }
    }

    #[test]
    fn specialize_is_move_order_independent(d in admissible_diagram(), picks in proptest::collection::vec(any::<u32>(), 0..4)) {
        let mut scrambled = d.clone();
        for pick in picks {
            let options = applicable_moves(&scrambled);
            if options.is_empty() {
                break;
            }
            let (mv, k) = options[pick as usize % options.len()];
            scrambled = scrambled.apply_move(mv, k).unwrap();
        }
        prop_assert_eq!(d.specialize().unwrap(), scrambled.specialize().unwrap());
    }

    #[test]
    fn shorten_succeeds_exactly_on_totally_connected((lr,) in dims().prop_flat_map(|(m, n)| (dominant_weight(m, n),))) {
        let atypical = standard_atypical_set(&lr).unwrap();
        let pi = {
            let (m, n) = lr.dims();
            SimpleRootSystem::standard(m, n)
        };
        let standard = ArcDiagram::build(&pi, &lr, &atypical).unwrap();
        let tc = is_totally_connected(&lr).unwrap();
        let walk = standard.shorten();
        prop_assert_eq!(walk.is_ok(), tc);
        if let Ok(seq) = walk {
            prop_assert_eq!(seq.first().unwrap(), &standard);
            prop_assert!(seq.last().unwrap().is_special());
            for step in &seq {
                step.validate().unwrap();
            }
        }
    }

    #[test]
    fn weyl_denominator_is_skew((m, n) in (1usize..=2, 1usize..=2)) {
        let pi = SimpleRootSystem::standard(m, n);
        let wd = weyl_denominator(&pi);
        for w in WeylElement::all(m, n) {
            let raw: Vec<(i8, ExponentVector)> =
                wd.den.iter().map(|f| (f.sign, f.gamma.apply_weyl(&w))).collect();
            let mut num = wd.num.apply_weyl(&w);
            if w.sign() < 0 {
                num = num.scalar_mul(&Coeff::from(-1));
            }
            let moved = RationalChar::new(num, raw, wd.unit.apply_weyl(&w)).unwrap();
            prop_assert!(rc_equal(&moved, &wd));
        }
    }

    #[test]
    fn paths_have_weakly_increasing_labels_and_trivial_is_longest((lr,) in dims().prop_flat_map(|(m, n)| (dominant_weight(m, n),))) {
        let d = to_weight_diagram(&lr).unwrap();
        for source in enumerate_sources(&d, 4) {
            let paths = enumerate_paths(&source, &d);
            prop_assert!(!paths.is_empty());
            let (_, longest) = trivial_path(&d, &source).unwrap();
            for p in &paths {
                prop_assert!(p.moves.windows(2).all(|w| w[0] <= w[1]));
                prop_assert!(p.len() <= longest);
            }
            let k = kl_polynomial(&d, &source);
            prop_assert_eq!(k.degree(), Some(longest));
        }
    }

    #[test]
    fn sources_match_the_stabilizer_free_cone((lr,) in dims().prop_flat_map(|(m, n)| (dominant_weight(m, n),)), v in 0u32..=3) {
        prop_assume!(is_totally_connected(&lr).unwrap());
        let d = to_weight_diagram(&lr).unwrap();
        let atypical = standard_atypical_set(&lr).unwrap();
        let mut bars: Vec<_> = enumerate_sources(&d, v)
            .iter()
            .map(|s| mu_bar(s, &d, &lr).unwrap().0.as_exponent())
            .collect();
        bars.sort();
        let mut cone: Vec<_> = c_lexi(&lr, &atypical, v)
            .iter()
            .map(|nu| nu.as_exponent())
            .filter(|nu| !has_reflection_stabilizer(nu))
            .collect();
        cone.sort();
        prop_assert_eq!(bars, cone);
    }
}
