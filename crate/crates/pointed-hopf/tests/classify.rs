use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::classify::{
    build_p3_list, compare, distinguish, enumerate_liftings, theta_search, tilde_datum, CensusEntry, Shape,
    Verdict,
};
use pointed_hopf::hopfcore::IsoSearchConfig;
use pointed_hopf::lifting::build_lifting;

#[test]
fn census_coradicals_match_the_group_list() {
    for e in build_p3_list(3).unwrap() {
        let spec = e.spec.as_ref().unwrap();
        assert_eq!(e.invariants.dimension, 27);
        assert!(e.invariants.pointed);
        assert_eq!(e.invariants.group_invariants, spec.kind.grouplike_invariants(3), "{}", e.label);
        assert!(e.hopf.verify_axioms().all_passed());
    }
}

#[test]
fn only_expected_coincidences_at_three() {
    let census = build_p3_list(3).unwrap();
    let m = distinguish(&census, &IsoSearchConfig::default());
    assert_eq!(m.undecided(), 0);
    let mut pairs: Vec<(String, String)> = m
        .isomorphic_pairs()
        .into_iter()
        .map(|(i, j)| (census[i].label.clone(), census[j].label.clone()))
        .collect();
    pairs.sort();
    let expected = [
        ("(e) u(z3)", "(e) u(z3^2)"),
        ("(f) h(z3,1)", "(f) h(z3^2,1)"),
        ("(f) h(z3,2)", "(f) h(z3^2,2)"),
    ];
    let expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(pairs, expected);
}

#[test]
fn tilde_and_hat_types_are_told_apart() {
    let census = build_p3_list(3).unwrap();
    let find = |l: &str| census.iter().find(|e| e.label == l).unwrap();
    let v = compare(find("(b) T~(z3)"), find("(c) T^(z3)"), &IsoSearchConfig::default());
    match v {
        Verdict::Distinct { witness, .. } => assert!(!witness.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn tilde_type_does_not_depend_on_the_root() {
    let a = build_lifting(&tilde_datum(3, 1, 0)).unwrap();
    for j in 1..3 {
        let b = build_lifting(&tilde_datum(3, 1, j)).unwrap();
        assert!(a.hopf.find_isomorphism(&b.hopf, &IsoSearchConfig::default()).is_found(), "j = {j}");
    }
}

#[test]
fn theta_values_and_additivity() {
    let theta = |s: &str| theta_search(&AbelianGroup::parse(s).unwrap(), 6);
    let two = theta_search(&AbelianGroup::cyclic(2), 3);
    assert!(two.theta >= 3);
    for (k, h, kh) in [("3", "3", "3,3"), ("3", "5", "15"), ("3", "9", "3,9"), ("5", "5", "5,5"), ("3", "7", "21")] {
        let (a, b, c) = (theta(k), theta(h), theta(kh));
        assert!(a.exact && b.exact);
        assert!(c.theta >= a.theta + b.theta, "{kh}: {} < {} + {}", c.theta, a.theta, b.theta);
    }
    assert_eq!(theta("7").theta, 2);
}

#[test]
fn enumeration_over_z3() {
    let gr = AbelianGroup::cyclic(3);
    let cfg = IsoSearchConfig::default();
    let taft = enumerate_liftings(&gr, 3, &cfg).unwrap();
    assert_eq!(taft.len(), 2);
    assert!(taft.iter().all(|c| c.shape == Shape::A));
    let classes = enumerate_liftings(&gr, 9, &cfg).unwrap();
    assert!(classes.iter().all(|c| c.shape == Shape::B2));
    let reps: Vec<&CensusEntry> = classes.iter().map(|c| &c.representative).collect();
    assert!(reps.iter().any(|e| e.invariants.one_dim_reps == 1));
    assert!(reps.iter().all(|e| e.hopf.dim() == 27));
}

#[test]
fn enumeration_over_z9_reaches_both_index_p_squared_shapes() {
    let gr = AbelianGroup::cyclic(9);
    let classes = enumerate_liftings(&gr, 9, &IsoSearchConfig::default()).unwrap();
    for s in [Shape::B1, Shape::B2] {
        assert!(classes.iter().any(|c| c.shape == s), "{s}");
    }
    assert!(classes.iter().all(|c| c.representative.hopf.dim() == 81));
}
