//! Resolves the overlap ambiguities of a lifting presentation with the
//! scalars left as indeterminates and prints the constraints they impose.
//!
//! Run with `cargo run --example overlaps -- 9 "1;2" "3;3"`.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::qls::validate_datum;
use pointed_hopf::rewrite::{check_overlaps, reference_constraints, Presentation, Scalars};

fn parse_list(gr: &AbelianGroup, s: &str) -> Vec<Vec<i64>> {
    s.split(';')
        .map(|e| e.split(',').map(|x| x.trim().parse().expect("exponent")).collect::<Vec<i64>>())
        .inspect(|v| assert_eq!(v.len(), gr.rank(), "one exponent per factor"))
        .collect()
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (group, g, chi) = match args.as_slice() {
        [a, b, c] => (a.as_str(), b.as_str(), c.as_str()),
        _ => ("4,4", "1,0;0,1", "2,1;3,2"),
    };
    let gr = AbelianGroup::parse(group).expect("group");
    let g: Vec<_> = parse_list(&gr, g).iter().map(|e| gr.element(e)).collect();
    let chi: Vec<_> = parse_list(&gr, chi).iter().map(|e| gr.character(e)).collect();
    let qls = validate_datum(&gr, &g, &chi).expect("quantum linear space datum");
    let shape = qls.shape();
    let p = Presentation::lifting(shape.clone(), Scalars::zero(qls.theta())).expect("presentation");
    let report = check_overlaps(&p, true);
    for o in &report.overlaps {
        let status = if o.resolved { "resolved".to_string() } else { o.constraints.join(", ") };
        println!("{:<20} {:<14} {status}", o.family.to_string(), o.word);
    }
    let names = shape.scalar_names();
    let reference: Vec<&str> = reference_constraints(&shape).iter().map(|&k| names[k].as_str()).collect();
    println!("forced to vanish by the compatibility conditions: {reference:?}");
    println!("emitted constraints equivalent: {}", report.equivalent_to(&reference_constraints(&shape)));
}
