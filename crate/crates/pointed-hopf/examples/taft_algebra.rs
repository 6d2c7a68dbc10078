//! Builds the Taft algebra over `Z/N` from its lifting datum, verifies the
//! Hopf axioms and compares the coradical filtration with the prediction.
//!
//! Run with `cargo run --example taft_algebra -- 5`.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::lifting::{build_lifting, predicted_filtration, validate_compatible};
use pointed_hopf::qls::validate_datum;
use std::collections::BTreeMap;

fn main() {
    let n: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("N"));
    let gr = AbelianGroup::cyclic(n);
    let qls = validate_datum(&gr, &[gr.generator(0)], &[gr.character(&[1])]).expect("datum");
    let cd = validate_compatible(&qls, &[false], &BTreeMap::new()).expect("compatible");
    let t = build_lifting(&cd).expect("lifting");
    println!("T(z{n}) has dimension {}", t.hopf.dim());
    println!("basis: {}", t.words.iter().map(|w| t.presentation.render_word(w)).collect::<Vec<_>>().join(", "));
    let report = t.hopf.verify_axioms();
    for c in &report.checks {
        println!("  {:<34} {}", c.axiom, if c.passed { "ok" } else { "FAILED" });
    }
    println!("antipode power identity: {}", t.antipode_powers_hold());
    let computed: Vec<usize> = t.hopf.coradical_filtration().expect("filtration").iter().map(|s| s.dim()).collect();
    println!("coradical filtration {computed:?}, predicted {:?}", predicted_filtration(&qls).dims);
    let dual = t.hopf.dual().expect("dual");
    println!("dual: axioms {}, {} group-likes", dual.verify_axioms().all_passed(), dual.grouplikes().count());
}
