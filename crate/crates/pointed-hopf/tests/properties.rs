use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::cyclotomic::{gcd, qbinomial_recurrence, Cyclotomic};
use pointed_hopf::exactla::{densify, sparsify, SparseVec};
use pointed_hopf::hopfcore::{verify_isomorphism, IsoOutcome, IsoSearchConfig, StructureHopf};
use pointed_hopf::lifting::{
    build_family_b, build_lifting, is_confluent, predicted_filtration, validate_compatible, CompatibleDatum,
    FamilyParams, Lifting,
};
use pointed_hopf::qls::{bosonize, build_qls, validate_datum, verify_braided, QlsDatum};
use pointed_hopf::rewrite::{Presentation, Rewriter, Strategy as Reduction};
use proptest::prelude::*;
use std::collections::BTreeMap;

/// `Σ c_k ζ_L^k`.
fn cyc(level: u32, coeffs: &[i64]) -> Cyclotomic {
    coeffs.iter().enumerate().fold(Cyclotomic::zero(), |acc, (k, &c)| {
        &acc + &(&Cyclotomic::from_int(c) * &Cyclotomic::root_of_unity(level, k as i64))
    })
}

fn arb_cyc(level: u32) -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec(-5i64..=5, level as usize).prop_map(move |c| cyc(level, &c))
}

fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(vec![3u32, 4, 5, 8, 9, 12]).prop_flat_map(|l| (arb_cyc(l), arb_cyc(l), arb_cyc(l)))
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn q_binomials_vanish_at_the_order(n in 2u32..=20, k in 1u32..20, i in 1u32..20) {
        prop_assume!(k < n && i < n && gcd(k as u64, n as u64) == 1);
        let q = Cyclotomic::root_of_unity(n, k as i64);
        prop_assert!(qbinomial_recurrence(n, i, &q).is_zero());
    }
}

#[test]
fn root_orders() {
    for n in 1..=24u32 {
        for k in 1..=n {
            let z = Cyclotomic::root_of_unity(n, k as i64);
            assert_eq!(z.order().unwrap() as u64, n as u64 / gcd(n as u64, k as u64));
        }
    }
}

/// Invariant factor lists `d_1 | d_2 | …` with product at most `bound`.
fn groups_up_to(bound: u32) -> Vec<AbelianGroup> {
    fn extend(prefix: Vec<u32>, prod: u32, bound: u32, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        let start = prefix.last().copied().unwrap_or(2);
        let mut d = start;
        while prod * d <= bound {
            if prefix.last().is_none_or(|&l| d % l == 0) {
                let mut p = prefix.clone();
                p.push(d);
                extend(p, prod * d, bound, out);
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(Vec::new(), 1, bound, &mut out);
    out.into_iter().filter(|f| !f.is_empty()).map(|f| AbelianGroup::new(f).unwrap()).collect()
}

#[test]
fn characters_separate_points_and_respect_orders() {
    let groups = groups_up_to(60);
    assert!(groups.iter().any(|g| g.factors() == [2, 2, 2]));
    for gr in groups {
        let chars = gr.characters();
        for g in gr.elements() {
            let ord = gr.elem_order(&g) as i64;
            for c in &chars {
                assert!(gr.evaluate(c, &g).unwrap().pow(ord).is_one());
            }
            if g != gr.identity() {
                assert!(chars.iter().any(|c| !gr.evaluate(c, &g).unwrap().is_one()), "{gr:?} {g:?}");
            }
        }
    }
}

fn lifting(factors: Vec<u32>, g: &[&[i64]], chi: &[&[i64]], mu: &[bool], lambda: Option<Cyclotomic>) -> Lifting {
    let gr = AbelianGroup::new(factors).unwrap();
    let qls = validate_datum(
        &gr,
        &g.iter().map(|e| gr.element(e)).collect::<Vec<_>>(),
        &chi.iter().map(|e| gr.character(e)).collect::<Vec<_>>(),
    )
    .unwrap();
    let lambda: BTreeMap<_, _> = lambda.into_iter().map(|l| ((0, 1), l)).collect();
    build_lifting(&validate_compatible(&qls, mu, &lambda).unwrap()).unwrap()
}

fn samples() -> Vec<Lifting> {
    let z3 = Cyclotomic::root_of_unity(3, 1);
    vec![
        lifting(vec![3], &[&[1]], &[&[1]], &[false], None),
        lifting(vec![3], &[&[2], &[2]], &[&[2], &[1]], &[false, false], Some(Cyclotomic::one())),
        lifting(vec![3], &[&[2], &[1]], &[&[1], &[1]], &[false, false], None),
        lifting(vec![9], &[&[8]], &[&[3]], &[true], None),
        lifting(vec![4, 2], &[&[1, 0]], &[&[2, 1]], &[true], None),
        build_family_b(&FamilyParams::new(2, 3, z3, Cyclotomic::one()).unwrap()).unwrap(),
    ]
}

fn arb_word(letters: u8) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0..letters, 0..9)
}

fn presentations() -> Vec<Presentation<Cyclotomic>> {
    samples().into_iter().map(|l| l.presentation).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn strategies_agree_and_terminate(k in 0usize..6, w in arb_word(4)) {
        let ps = presentations();
        let p = &ps[k];
        let letters = (p.sigma() + p.theta()) as u8;
        let w: Vec<u8> = w.into_iter().map(|x| x % letters).collect();
        let (left, depth) = Rewriter::new(p, Reduction::Leftmost).word_nf(&w);
        let (right, _) = Rewriter::new(p, Reduction::Rightmost).word_nf(&w);
        prop_assert_eq!(left, right);
        prop_assert!((depth as u128) <= p.chain_bound(&w));
    }
}

fn basis_product_closed(h: &StructureHopf, a: &pointed_hopf::exactla::Subspace, b: &pointed_hopf::exactla::Subspace) -> pointed_hopf::exactla::Subspace {
    let d = h.dim();
    let mut prods = Vec::new();
    for u in a.basis() {
        for v in b.basis() {
            prods.push(h.mul(&sparsify(u), &sparsify(v)));
        }
    }
    pointed_hopf::exactla::Subspace::span_sparse(d, &prods)
}

#[test]
fn radical_is_a_nilpotent_ideal_and_coradical_counts_grouplikes() {
    for l in samples() {
        let h = &l.hopf;
        let j = h.radical();
        let jj = basis_product_closed(h, &j, &j);
        assert!(jj.is_subspace_of(&j));
        let mut power = j.clone();
        let mut steps = 1;
        while !power.is_zero() {
            power = basis_product_closed(h, &power, &j);
            steps += 1;
            assert!(steps <= h.dim() + 1);
        }
        assert_eq!(h.coradical().dim(), h.grouplikes().count());
    }
}

#[test]
fn associated_graded_is_coradically_graded_of_same_dimension() {
    for l in samples() {
        let (g, deg) = l.hopf.associated_graded().unwrap();
        assert_eq!(g.dim(), l.hopf.dim());
        assert!(g.is_coradically_graded(&deg));
        assert!(g.verify_axioms().all_passed());
    }
}

#[test]
fn skew_primitives_meet_coradical_in_difference() {
    for l in samples() {
        let h = &l.hopf;
        let a0 = h.coradical();
        let one = h.unit_vec();
        for g in l.datum.qls.group.elements() {
            if g == l.datum.qls.group.identity() {
                continue;
            }
            let gv = l.group_element(&g);
            let p = h.skew_primitives(&gv, &one);
            let meet = p.intersect(&a0).unwrap();
            assert_eq!(meet.dim(), 1);
            let mut diff: SparseVec = gv.clone();
            pointed_hopf::exactla::sparse_axpy(&mut diff, &Cyclotomic::one(), &one);
            assert!(meet.contains(&densify(&diff, h.dim())));
        }
    }
}

#[test]
fn one_dim_reps_match_dual_grouplikes() {
    for l in samples().into_iter().take(5) {
        assert_eq!(l.hopf.one_dim_reps().unwrap(), l.hopf.abelianization_dim());
    }
}

#[test]
fn found_isomorphisms_verify_independently() {
    let samples = samples();
    let z = |k| Cyclotomic::root_of_unity(3, k);
    let pairs = [
        (samples[1].hopf.clone(), lifting(vec![3], &[&[2], &[2]], &[&[1], &[2]], &[false, false], Some(Cyclotomic::one())).hopf),
        (
            samples[5].hopf.clone(),
            build_family_b(&FamilyParams::new(2, 3, z(1), z(2)).unwrap()).unwrap().hopf,
        ),
    ];
    for (a, b) in pairs {
        match a.find_isomorphism(&b, &IsoSearchConfig::default()) {
            IsoOutcome::Found(iso) => assert!(verify_isomorphism(&a, &b, &iso.images).is_ok()),
            other => panic!("{other:?}"),
        }
    }
}

/// Valid rank-one and rank-two data over a few small groups.
fn data_pool() -> Vec<QlsDatum> {
    let mut out = Vec::new();
    for f in [vec![3], vec![4], vec![5], vec![9], vec![3, 3], vec![2, 4]] {
        let gr = AbelianGroup::new(f).unwrap();
        let els = gr.elements();
        let chars = gr.characters();
        for g in &els {
            for c in &chars {
                if let Ok(d) = validate_datum(&gr, std::slice::from_ref(g), std::slice::from_ref(c)) {
                    out.push(d);
                }
            }
        }
        if gr.order() > 9 {
            continue;
        }
        for g1 in &els {
            for g2 in &els {
                for c1 in &chars {
                    for c2 in &chars {
                        if let Ok(d) = validate_datum(&gr, &[g1.clone(), g2.clone()], &[c1.clone(), c2.clone()]) {
                            if gr.order() as usize * d.dim() <= 81 {
                                out.push(d);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Sets every scalar the datum allows to the requested value.
fn compatible(d: &QlsDatum, mu_on: bool, lambda: &Cyclotomic) -> CompatibleDatum {
    let t = d.theta();
    let mut mu: Vec<bool> = vec![false; t];
    for i in 0..t {
        mu[i] = mu_on;
        if validate_compatible(d, &mu, &BTreeMap::new()).is_err() {
            mu[i] = false;
        }
    }
    let mut l = BTreeMap::new();
    if t == 2 && !lambda.is_zero() {
        l.insert((0, 1), lambda.clone());
        if validate_compatible(d, &mu, &l).is_err() {
            l.clear();
        }
    }
    validate_compatible(d, &mu, &l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn liftings_have_predicted_shape(k in any::<prop::sample::Index>(), mu_on in any::<bool>(), lam in 0i64..3) {
        let pool = data_pool();
        let d = &pool[k.index(pool.len())];
        let lambda = if lam == 0 { Cyclotomic::zero() } else { Cyclotomic::from_int(lam) };
        let cd = compatible(d, mu_on, &lambda);
        prop_assert!(is_confluent(&cd));
        let l = build_lifting(&cd).unwrap();
        prop_assert_eq!(l.hopf.dim(), d.group.order() as usize * d.dim());
        prop_assert!(l.hopf.verify_axioms().all_passed());
        prop_assert!(l.antipode_powers_hold());
        let filt: Vec<usize> = l.hopf.coradical_filtration().unwrap().iter().map(|s| s.dim()).collect();
        prop_assert_eq!(filt, predicted_filtration(d).dims);
    }

    #[test]
    fn quantum_linear_spaces_and_bosonizations(k in any::<prop::sample::Index>()) {
        let pool = data_pool();
        let d = &pool[k.index(pool.len())];
        let r = build_qls(d);
        prop_assert_eq!(r.dim(), d.dim());
        prop_assert!(verify_braided(&r).all_passed());
        let b = bosonize(&r).unwrap();
        prop_assert!(b.verify_axioms().all_passed());
        let filt: Vec<usize> = b.coradical_filtration().unwrap().iter().map(|s| s.dim()).collect();
        prop_assert_eq!(&filt, &predicted_filtration(d).dims);
        if filt.len() > 1 {
            prop_assert_eq!(filt[1], d.group.order() as usize * (1 + d.theta()));
        }
    }
}
