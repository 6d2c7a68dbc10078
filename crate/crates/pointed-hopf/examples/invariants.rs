//! Invariant records of a few liftings, including the dual of a
//! non-basic one.
//!
//! Run with `cargo run --example invariants -- 3`.

use pointed_hopf::classify::{CensusEntry, CensusSpec, CensusType};

fn main() {
    let p: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("odd prime"));
    for (kind, m) in [(CensusType::D, None), (CensusType::E, None), (CensusType::F, Some(1))] {
        let spec = CensusSpec::new(kind, p, 1, m).expect("parameters");
        let e = CensusEntry::from_spec(&spec).expect("build");
        let inv = &e.invariants;
        println!("{}", e.label);
        println!("  group-likes {:?}, filtration {:?}", inv.group_invariants, inv.filtration_dims);
        println!("  one-dim reps {}, dual pointed {}", inv.one_dim_reps, inv.dual_pointed);
        for row in &inv.skew_primitive_table {
            if row.dim > 0 {
                println!("  {row}");
            }
        }
        if !inv.dual_pointed {
            let dual = e.hopf.dual().expect("dual");
            println!("  dual: {} group-likes, pointed {}", dual.grouplikes().count(), dual.is_pointed());
        }
    }
}
