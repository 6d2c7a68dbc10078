//! Exact arithmetic in cyclotomic fields, q-binomials and characters of a
//! finite abelian group.
//!
//! Run with `cargo run --example cyclotomic_arithmetic`.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::cyclotomic::{qbinomial, qbinomial_recurrence, Cyclotomic};

fn main() {
    let z = Cyclotomic::root_of_unity(5, 1);
    let w = Cyclotomic::parse("1/2 + z5^2").expect("flag grammar");
    println!("z5 = {z}, w = {w}");
    println!("z5 * w = {}", &z * &w);
    println!("1 / w = {}", w.inv().expect("nonzero"));
    println!("order of z12^8 = {}", Cyclotomic::root_of_unity(12, 8).order().expect("root"));

    let q = Cyclotomic::root_of_unity(5, 2);
    for i in 0..=4 {
        println!("[4 choose {i}]_q at q = z5^2: {}", qbinomial(4, i, &q).expect("in range"));
    }
    let vanish = (1..5).all(|i| qbinomial_recurrence(5, i, &q).is_zero());
    println!("[5 choose i]_q vanishes for 0 < i < 5: {vanish}");

    let gr = AbelianGroup::parse("3,9").expect("group");
    let g = gr.element(&[1, 2]);
    let chi = gr.character(&[2, 5]);
    println!(
        "in {gr}: ord {g} = {}, chi = {chi}, chi({g}) = {}",
        gr.elem_order(&g),
        gr.evaluate(&chi, &g).expect("same group")
    );
    println!("{} automorphisms of {gr}", gr.automorphisms().expect("small group").len());
}
