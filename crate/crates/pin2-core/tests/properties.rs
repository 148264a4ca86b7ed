//! Property-based invariants: shift is a group action, restriction
//! preserves dimensions, canonical forms are order-independent, the
//! decomposition round-trips, wire forms round-trip, and the q-arrow
//! graph is nilpotent.

use pin2_core::grading::Grading;
use pin2_core::pipeline::{
    compute_invariants, compute_swfhg, connected_homology, extract_parameters, forward_s1,
    is_projective_dec, HfDecomposition,
};
use pin2_core::sampler::{random_decomposition, SplitMix64};
use pin2_core::seifert::{brieskorn_pipeline, BrieskornSpec};
use pin2_core::tower::{GradedModule, Step, Tower};
use proptest::prelude::*;

fn arb_grading() -> impl Strategy<Value = Grading> {
    (-40i64..40, 1i64..6).prop_map(|(p, q)| Grading::new(p, q))
}

fn arb_module(step: Step) -> impl Strategy<Value = GradedModule> {
    let tower = (-20i64..20, 0u32..5, prop::bool::ANY);
    (prop::collection::vec(tower, 0..8), -20i64..20).prop_map(move |(ts, inf)| {
        let mut m = GradedModule::zero(step);
        for (b, l, infinite) in ts {
            if infinite {
                m.push(Tower::infinite(Grading::from(b)));
            } else {
                m.push(Tower::finite(Grading::from(b), l));
            }
        }
        m.push(Tower::infinite(Grading::from(inf)));
        m
    })
}

proptest! {
    #[test]
    fn shift_is_a_group_action(m in arb_module(Step::U), k in arb_grading(), l in arb_grading()) {
        prop_assert_eq!(m.shift(Grading::ZERO), m.clone());
        prop_assert_eq!(m.shift(k).shift(l), m.shift(k + l));
        prop_assert_eq!(m.shift(k).shift(-k), m);
    }

    #[test]
    fn restriction_preserves_every_rank(m in arb_module(Step::U)) {
        let r = m.restrict_to_v().unwrap();
        for d in -30..50 {
            let d = Grading::from(d);
            prop_assert_eq!(m.rank_at(d), r.rank_at(d));
        }
        // Also at half-integer points, where both vanish.
        prop_assert_eq!(r.rank_at(Grading::new(1, 2)), 0);
    }

    #[test]
    fn direct_sum_is_commutative(a in arb_module(Step::V), b in arb_module(Step::V)) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
    }

    #[test]
    fn module_wire_form_round_trips(m in arb_module(Step::U)) {
        let s = serde_json::to_string(&m).unwrap();
        let back: GradedModule = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>()) {
        let mut rng = SplitMix64(seed);
        let dec = random_decomposition(&mut rng);
        let m = forward_s1(&dec).unwrap();
        prop_assert_eq!(extract_parameters(&m).unwrap(), dec);
    }

    #[test]
    fn decomposition_wire_form_round_trips(seed in any::<u64>()) {
        let mut rng = SplitMix64(seed);
        let dec = random_decomposition(&mut rng);
        let s = serde_json::to_string(&dec).unwrap();
        let back: HfDecomposition = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, dec);
    }

    #[test]
    fn connected_homology_vanishes_iff_delta_is_minus_mu_bar(seed in any::<u64>()) {
        let mut rng = SplitMix64(seed);
        let dec = random_decomposition(&mut rng);
        let inv = compute_invariants(&dec).unwrap();
        let conn = connected_homology(&dec).unwrap();
        prop_assert_eq!(conn.is_zero(), inv.delta == -inv.mu_bar);
    }

    #[test]
    fn q_arrows_are_nilpotent_and_well_formed(seed in any::<u64>()) {
        let mut rng = SplitMix64(seed);
        let dec = random_decomposition(&mut rng);
        let q = compute_swfhg(&dec).unwrap();
        for t in &q.towers {
            prop_assert_ne!(t.len, Some(0));
        }
        for a in &q.arrows {
            prop_assert!(a.source < q.towers.len());
            if let Some(t) = a.target {
                prop_assert!(t < q.towers.len());
            }
        }
        // q^3 = 0 on every element of every tower (finite probe for the
        // infinite ones).
        for (i, t) in q.towers.iter().enumerate() {
            let top = t
                .top(Step::V)
                .unwrap_or(t.bottom + Grading::from(40));
            let mut e = t.bottom;
            while e <= top {
                let mut cur = Some((i, e));
                for _ in 0..3 {
                    cur = cur.and_then(|(tw, deg)| q.q_image(tw, deg));
                }
                prop_assert!(cur.is_none());
                e += Grading::from(4);
            }
        }
    }
}

/// Root-level and module-level projective-type criteria agree across a
/// sweep of Brieskorn spheres.
#[test]
fn projective_criteria_agree_on_brieskorn_sweep() {
    let cases: &[&[u64]] = &[
        &[2, 3, 5],
        &[2, 3, 7],
        &[2, 3, 11],
        &[2, 3, 13],
        &[2, 3, 17],
        &[2, 3, 19],
        &[2, 3, 23],
        &[2, 3, 25],
        &[2, 5, 7],
        &[2, 5, 9],
        &[2, 5, 11],
        &[2, 5, 13],
        &[2, 5, 19],
        &[2, 5, 31],
        &[2, 7, 9],
        &[2, 7, 13],
        &[2, 7, 15],
        &[2, 7, 27],
        &[3, 4, 5],
        &[3, 4, 7],
        &[3, 5, 7],
        &[3, 5, 8],
        &[5, 7, 13],
        &[5, 8, 13],
        &[7, 10, 17],
        &[2, 3, 5, 7],
        &[2, 3, 5, 11],
    ];
    for a in cases {
        let (dec, _, root) = brieskorn_pipeline(&BrieskornSpec { a: a.to_vec() }).unwrap();
        let (flag, gap) = root.is_projective_type();
        assert_eq!(
            flag,
            is_projective_dec(&dec),
            "criteria disagree on {a:?}"
        );
        let inv = compute_invariants(&dec).unwrap();
        assert_eq!(gap, inv.delta - inv.beta, "root gap vs delta - beta on {a:?}");
    }
}

/// The involution of a Seifert graded root squares to the identity and
/// preserves the level.
#[test]
fn root_involution_properties() {
    for a in [[2u64, 3, 7], [2, 5, 9], [5, 8, 13], [3, 5, 7]] {
        let (_, _, root) = brieskorn_pipeline(&BrieskornSpec { a: a.to_vec() }).unwrap();
        for vtx in 0..root.vertex_count() {
            assert_eq!(root.iota(root.iota(vtx)), vtx);
            assert_eq!(root.chi(root.iota(vtx)), root.chi(vtx));
        }
    }
}
