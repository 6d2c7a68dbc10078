//! Builds a quantum linear space as a braided Hopf algebra, bosonizes it
//! and checks that a lifting with nonzero scalars has it as its diagram.
//!
//! Run with `cargo run --example quantum_linear_space`.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::cyclotomic::Cyclotomic;
use pointed_hopf::hopfcore::IsoSearchConfig;
use pointed_hopf::lifting::{build_lifting, validate_compatible};
use pointed_hopf::qls::{bosonize, build_qls, validate_datum, verify_braided};
use std::collections::BTreeMap;

fn main() {
    let gr = AbelianGroup::cyclic(3);
    let g = gr.element(&[2]);
    let qls = validate_datum(&gr, &[g.clone(), g], &[gr.character(&[2]), gr.character(&[1])]).expect("datum");
    println!("q = {:?}, N = {:?}", qls.q.iter().map(|q| q.to_string()).collect::<Vec<_>>(), qls.n);

    let r = build_qls(&qls);
    println!("R has dimension {}, braided checks pass: {}", r.dim(), verify_braided(&r).all_passed());
    let b = bosonize(&r).expect("bosonization");
    let filt: Vec<usize> = b.coradical_filtration().expect("filtration").iter().map(|s| s.dim()).collect();
    println!("R # kG: dimension {}, axioms {}, filtration {filt:?}", b.dim(), b.verify_axioms().all_passed());

    let mut lambda = BTreeMap::new();
    lambda.insert((0, 1), Cyclotomic::one());
    let u = build_lifting(&validate_compatible(&qls, &[false, false], &lambda).expect("compatible")).expect("lifting");
    let (gr_u, _) = u.hopf.associated_graded().expect("graded");
    let iso = gr_u.find_isomorphism(&b, &IsoSearchConfig::default());
    println!("lifting with lambda = 1 is a basic algebra: {}", u.hopf.is_basic());
    println!("gr of the lifting is isomorphic to R # kG: {}", iso.is_found());
}
