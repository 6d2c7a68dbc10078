//! Enumerates the liftings of index `p` or `p²` over a small abelian group
//! and groups them into isomorphism classes.
//!
//! Run with `cargo run --example enumerate_liftings -- 3 9`.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::classify::enumerate_liftings;
use pointed_hopf::hopfcore::IsoSearchConfig;
use std::time::Instant;

fn main() {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "3".into());
    let index: u32 = args.next().map_or(9, |s| s.parse().expect("index"));
    let gr = AbelianGroup::parse(&group).expect("group spec");
    let t = Instant::now();
    let classes = enumerate_liftings(&gr, index, &IsoSearchConfig::default()).expect("enumeration");
    println!("{} classes over {} of index {index} ({:.1?})", classes.len(), gr.spec_string(), t.elapsed());
    for c in &classes {
        let inv = &c.representative.invariants;
        println!(
            "{} {}  [{} data]  one-dim reps {}  filtration {:?}",
            c.shape,
            c.representative.label,
            c.members.len(),
            inv.one_dim_reps,
            inv.filtration_dims
        );
    }
}
