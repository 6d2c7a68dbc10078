//! Builds the list of pointed Hopf algebras of dimension p³ and prints
//! their invariants and the pairwise distinction matrix.
//!
//! Run with `cargo run --example census_p3 -- 3`.

use pointed_hopf::classify::{build_p3_list, distinguish};
use pointed_hopf::hopfcore::IsoSearchConfig;
use std::time::Instant;

fn main() {
    let p: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("odd prime"));
    let t = Instant::now();
    let entries = build_p3_list(p).expect("census");
    println!("built {} entries in {:.1?}", entries.len(), t.elapsed());
    for e in &entries {
        let inv = &e.invariants;
        println!(
            "{:<22} dim {:>3}  group-likes {:?}  filtration {:?}  one-dim reps {}  dual pointed {}",
            e.label, inv.dimension, inv.group_invariants, inv.filtration_dims, inv.one_dim_reps, inv.dual_pointed
        );
    }
    let t = Instant::now();
    let m = distinguish(&entries, &IsoSearchConfig::default());
    println!("distinguished {} pairs in {:.1?}", m.pairs.len(), t.elapsed());
    for v in &m.pairs {
        println!("{:<22} {:<22} {}", m.labels[v.left], m.labels[v.right], v.verdict);
    }
    println!("undecided: {}", m.undecided());
}
