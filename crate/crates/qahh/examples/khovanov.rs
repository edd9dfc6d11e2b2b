//! Unified Khovanov homology of a PD code, at every specialization.

use qahh::link::{build_link_cube, parse_pd};
use qahh::ring::Spec;

fn main() {
    let pd = std::env::args().nth(1).unwrap_or_else(|| "trefoil: PD[X(4,2,5,1),X(6,4,1,3),X(2,6,3,5)]".into());
    let d = parse_pd(&pd).unwrap_or_else(|e| panic!("{e}"));
    let (cube, c) = build_link_cube(&d).unwrap();
    println!("{d}: {} crossings, n+ = {}, n- = {}", cube.crossings(), cube.n_plus, cube.n_minus);
    let units: Vec<String> = cube.edge_coef.iter().filter(|(_, u)| !u.is_one()).map(|((s, i), u)| format!("{s:#b}/{i}: {u}")).collect();
    println!("edges with a nontrivial coefficient: {}", units.join(", "));
    for s in Spec::all() {
        let t = c.specialize(s.x, s.y, s.z).homology();
        println!("--- {} (Euler characteristic {})", s.name(), qahh::homology::laurent_to_string(&t.euler_characteristic()));
        print!("{}", t.nonzero().to_tsv());
    }
}
