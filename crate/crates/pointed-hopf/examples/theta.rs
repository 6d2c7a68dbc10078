//! Largest rank of a quantum linear space datum over small abelian groups.
//!
//! Run with `cargo run --example theta -- 3,5 6`.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::classify::theta_search;
use std::time::Instant;

fn main() {
    let mut args = std::env::args().skip(1);
    let groups: Vec<String> = match args.next() {
        Some(g) => vec![g],
        None => ["3", "5", "9", "3,3", "3,5", "2"].iter().map(|s| s.to_string()).collect(),
    };
    let max_rank: usize = args.next().map_or(6, |s| s.parse().expect("rank"));
    for spec in groups {
        let gr = AbelianGroup::parse(&spec).expect("group spec");
        let t = Instant::now();
        let r = theta_search(&gr, max_rank);
        let bound = if r.theta == max_rank {
            "search capped at the requested rank"
        } else if r.exact {
            "exact"
        } else {
            "lower bound"
        };
        println!("theta({}) = {} ({bound}, {} nodes, {:.1?})", gr.spec_string(), r.theta, r.nodes, t.elapsed());
        if let Some(w) = &r.witness {
            for i in 0..w.theta() {
                println!("  g{} = {}  chi{} = {:?}  q = {}", i + 1, w.g[i], i + 1, w.chi[i].0, w.q[i]);
            }
        }
    }
}
