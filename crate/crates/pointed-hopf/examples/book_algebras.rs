//! Isomorphisms between book algebras `h(q, m)`: each is matched with
//! `h(q^{-m²}, m^{-1})` by the isomorphism search, and a non-matching pair
//! is rejected.
//!
//! Run with `cargo run --example book_algebras -- 5`.

use pointed_hopf::classify::{CensusEntry, CensusSpec, CensusType};
use pointed_hopf::hopfcore::{IsoOutcome, IsoSearchConfig};
use std::time::Instant;

fn main() {
    let p: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("odd prime"));
    let cfg = IsoSearchConfig::default();
    for (s, m) in [(1, 1), (1, 2)] {
        let t = Instant::now();
        let spec = CensusSpec::new(CensusType::F, p, s, Some(m)).expect("parameters");
        let partner = spec.book_partner().expect("book algebra");
        let a = CensusEntry::from_spec(&spec).expect("build");
        let b = CensusEntry::from_spec(&partner).expect("build");
        let verdict = match a.hopf.find_isomorphism(&b.hopf, &cfg) {
            IsoOutcome::Found(iso) => format!("isomorphic: {}", iso.describe()),
            IsoOutcome::NoneFound(r) => format!("not isomorphic: {r}"),
            IsoOutcome::BoundExceeded(r) => format!("undecided: {r}"),
        };
        println!("{} vs {}: {verdict} ({:.1?})", spec.label(), partner.label(), t.elapsed());
    }
    let a = CensusEntry::from_spec(&CensusSpec::new(CensusType::F, p, 1, Some(1)).unwrap()).unwrap();
    let b = CensusEntry::from_spec(&CensusSpec::new(CensusType::F, p, 1, Some(p - 1)).unwrap()).unwrap();
    match a.hopf.find_isomorphism(&b.hopf, &cfg) {
        IsoOutcome::NoneFound(r) => println!("{} vs {}: not isomorphic ({r})", a.label, b.label),
        other => println!("{} vs {}: {:?}", a.label, b.label, other.is_found()),
    }
}
