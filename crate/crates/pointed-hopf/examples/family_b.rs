//! The family B(M, N, q, lambda): isomorphism classes in lambda and
//! automorphisms of one member.
//!
//! Run with `cargo run --example family_b -- 2 3`.

use pointed_hopf::cyclotomic::Cyclotomic;
use pointed_hopf::hopfcore::IsoSearchConfig;
use pointed_hopf::lifting::{build_family_b, diagonal_automorphisms, family_iso, FamilyParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let m: u32 = args.next().map_or(2, |s| s.parse().expect("M"));
    let n: u32 = args.next().map_or(3, |s| s.parse().expect("N"));
    let q = Cyclotomic::root_of_unity(n, 1);
    let lambdas = [Cyclotomic::one(), Cyclotomic::root_of_unity(n, 1), Cyclotomic::from_int(2)];
    let algebras: Vec<_> = lambdas
        .iter()
        .map(|l| build_family_b(&FamilyParams::new(m, n, q.clone(), l.clone()).expect("parameters")).expect("build"))
        .collect();
    println!("B({m}, {n}, {q}, lambda) has dimension {}", algebras[0].hopf.dim());
    for i in 0..lambdas.len() {
        for j in i + 1..lambdas.len() {
            let search = algebras[i].hopf.find_isomorphism(&algebras[j].hopf, &IsoSearchConfig::default());
            println!(
                "lambda = {} vs {}: criterion {}, search {}",
                lambdas[i],
                lambdas[j],
                family_iso(n, &lambdas[i], &lambdas[j]),
                search.is_found()
            );
        }
    }
    for l in [Cyclotomic::zero(), Cyclotomic::one()] {
        let b = build_family_b(&FamilyParams::new(m, n, q.clone(), l.clone()).expect("parameters")).expect("build");
        println!("|Aut B({m}, {n}, {q}, {l})| = {}", diagonal_automorphisms(&b).len());
    }
}
