use std::collections::BTreeSet;

use proptest::prelude::*;

use partlie::chain::idealizer_chain;
use partlie::liering::{
    bracket, bracket_basis, enumerate_basis, homogeneous_membership, idealizer,
};
use partlie::partitions::{
    excludant_profile, is_unrefinable, refinability_steps, refinements, MultiplicityBound,
};
use partlie::properties::idealizes;
use partlie::rigid::{rigid_bracket, to_rigid, RigidCommutator};
use partlie::{BasisElement, LieElement, Partition};

fn partition_in(m: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..m, 0..=max_part).prop_map(Partition::from_mults)
}

fn bounded() -> impl Strategy<Value = (usize, Partition)> {
    (2usize..=4).prop_flat_map(|m| (Just(m), partition_in(m, 9)))
}

fn element(basis: Vec<BasisElement>, m: usize) -> impl Strategy<Value = LieElement> {
    let len = basis.len();
    prop::collection::vec((1..m, 0..len), 0..5).prop_map(move |terms| {
        LieElement::from_terms(terms.into_iter().map(|(c, i)| (c, basis[i].clone())), m)
    })
}

proptest! {
    #[test]
    fn partition_text_and_json_round_trip((_, p) in bounded()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p.clone());
        let parts: Vec<usize> = serde_json::from_str(&json).unwrap();
        prop_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn refinements_keep_weight_and_add_parts((m, p) in bounded()) {
        for theta in refinements(&p, m, None) {
            prop_assert_eq!(theta.weight(), p.weight());
            prop_assert!(theta.len() > p.len());
            prop_assert!(theta.max_multiplicity() < m);
        }
    }

    #[test]
    fn zero_steps_iff_unrefinable((m, p) in bounded()) {
        prop_assert_eq!(refinability_steps(&p, m) == 0, is_unrefinable(&p, m));
    }

    #[test]
    fn excludants_complete_the_full_monomial((m, p) in bounded(), extra in 1usize..4) {
        let n = p.max_part() + extra;
        let bound = MultiplicityBound::new(m, n).unwrap();
        let profile = excludant_profile(&p, &bound).unwrap();
        let filled = profile.excludants.iter().fold(p.clone(), |acc, &(e, mu)| acc.with_added(e, mu));
        prop_assert_eq!(filled, Partition::from_mults(vec![m - 1; n - 1]));
        prop_assert!(profile.excludants.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn basis_element_round_trips(m in 2usize..=4, k in 1usize..=7, seed in any::<u64>()) {
        let bound = MultiplicityBound::new(m, 7).unwrap();
        let layer: Vec<_> = enumerate_basis(&bound).into_iter().filter(|b| b.k == k).collect();
        let b = layer[(seed % layer.len() as u64) as usize].clone();
        prop_assert_eq!(b.to_string().parse::<BasisElement>().unwrap(), b.clone());
        let json = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<BasisElement>(&json).unwrap(), b);
    }
}

fn ring_case() -> impl Strategy<Value = (MultiplicityBound, LieElement, LieElement, LieElement)> {
    prop_oneof![
        Just((2usize, 5usize)),
        Just((3, 4)),
        Just((4, 4)),
        Just((6, 3))
    ]
    .prop_flat_map(|(m, n)| {
        let bound = MultiplicityBound::new(m, n).unwrap();
        let basis = enumerate_basis(&bound);
        (
            Just(bound),
            element(basis.clone(), m),
            element(basis.clone(), m),
            element(basis, m),
        )
    })
}

proptest! {
    #[test]
    fn bracket_is_alternating_and_bilinear((bound, a, b, c) in ring_case()) {
        let m = bound.m();
        prop_assert!(bracket(&a, &a, &bound).is_zero());
        prop_assert_eq!(bracket(&a, &b, &bound), bracket(&b, &a, &bound).neg(m));
        let lhs = bracket(&a.add(&b, m), &c, &bound);
        let rhs = bracket(&a, &c, &bound).add(&bracket(&b, &c, &bound), m);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(bracket(&a.scale(2, m), &c, &bound), bracket(&a, &c, &bound).scale(2, m));
    }

    #[test]
    fn lie_element_json_round_trip((bound, a, _b, _c) in ring_case()) {
        let back = LieElement::from_json(&a.to_json(), bound.m()).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn chain_sets_case() -> impl Strategy<Value = (usize, usize)> {
    (4usize..=7).prop_flat_map(|n| (Just(n), 0..=n + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idealizer_support_test_matches_brute_force(
        (m, n, depth) in prop_oneof![Just((2usize, 5usize, 2usize)), Just((3, 4, 2)), Just((5, 3, 1))],
        picks in prop::collection::vec((1usize..5, any::<prop::sample::Index>()), 1..5),
        outside in prop::option::of((1usize..5, any::<prop::sample::Index>())),
    ) {
        let bound = MultiplicityBound::new(m, n).unwrap();
        let report = idealizer_chain(&bound, depth);
        let basis = enumerate_basis(&bound);
        for step in &report.steps {
            let h = &step.basis_set;
            let normal: Vec<_> = idealizer(h).iter().cloned().collect();
            let mut terms: Vec<(usize, BasisElement)> =
                picks.iter().map(|(c, i)| (c % m, i.get(&normal).clone())).collect();
            if let Some((c, i)) = &outside {
                terms.push((c % m, i.get(&basis).clone()));
            }
            let z = LieElement::from_terms(terms, m);
            prop_assert_eq!(idealizes(&z, h), homogeneous_membership(&z, &idealizer(h)));
        }
    }

    #[test]
    fn f_preserves_brackets_under_its_hypothesis(
        n in 3usize..=9,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let bound = MultiplicityBound::new(2, n).unwrap();
        let basis = enumerate_basis(&bound);
        let (u, v) = (i.get(&basis), j.get(&basis));
        let (fu, fv) = (to_rigid(u, &bound).unwrap(), to_rigid(v, &bound).unwrap());
        let lie = bracket_basis(u, v, &bound);
        if lie.is_some() || fu.puncture_mask() & fv.puncture_mask() == 0 {
            let lhs = match lie {
                Some((_, w)) => to_rigid(&w, &bound).unwrap(),
                None => RigidCommutator::Trivial,
            };
            prop_assert_eq!(lhs, rigid_bracket(fu, fv));
        }
    }

    #[test]
    fn stripping_shared_punctures_keeps_membership_and_brackets(
        (n, step) in chain_sets_case(),
        pick in any::<prop::sample::Index>(),
        a in 1usize..=7,
        x_mask in any::<u64>(),
    ) {
        let bound = MultiplicityBound::new(2, n).unwrap();
        let report = idealizer_chain(&bound, step);
        let set: BTreeSet<RigidCommutator> = report.steps.last().unwrap().basis_set.iter()
            .map(|b| to_rigid(b, &bound).unwrap())
            .collect();
        let a = a.min(n);
        let x = RigidCommutator::new(a, &(1..a).filter(|i| x_mask >> i & 1 == 1).collect::<Vec<_>>()).unwrap();
        let members: Vec<_> = set.iter().copied().collect();
        let y = *pick.get(&members);
        let mut z = y;
        for i in x.punctures() {
            if y.punctures().contains(&i) {
                z = rigid_bracket(z, RigidCommutator::t(i));
            }
        }
        prop_assert!(set.contains(&z), "{} not in the set", z);
        prop_assert_eq!(z.base(), y.base());
        prop_assert_eq!(z.puncture_mask() & x.puncture_mask(), 0);
        prop_assert_eq!(rigid_bracket(x, z), rigid_bracket(x, y));
    }

    #[test]
    fn rigid_text_and_json_round_trip(base in 1usize..=20, mask in any::<u64>()) {
        let punctures: Vec<usize> = (1..base).filter(|i| mask >> i & 1 == 1).collect();
        let r = RigidCommutator::new(base, &punctures).unwrap();
        prop_assert_eq!(r.to_string().parse::<RigidCommutator>().unwrap(), r);
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<RigidCommutator>(&json).unwrap(), r);
    }
}
