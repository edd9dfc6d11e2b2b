//! Topographies on a partitioned loop and the path-independence of Θ.

use qahh::arc::ArcAlgebra;
use qahh::category::loops;
use qahh::topography::{theta, TopographyComplex};

fn main() {
    for n in 2..=5 {
        let t = TopographyComplex::new(n).unwrap();
        println!("T({n}): {} vertices, {} edges, {} faces", t.vertices.len(), t.edges.len(), t.faces.len());
    }
    let t4 = TopographyComplex::new(4).unwrap();
    for f in &t4.faces {
        let names: Vec<String> = f.cycle.iter().map(|&v| t4.vertices[v].to_string()).collect();
        println!("{:?}: {}", f.kind, names.join(" -> "));
    }
    let h = ArcAlgebra::new(2);
    let c = h.category();
    let ls = loops(c, &h.degree_support(), 4);
    let independent = ls.iter().filter(|l| t4.path_independent(c, l)).count();
    println!("path-independent 4-loops in the support of H^2: {independent}/{}", ls.len());
    let l = &ls[0];
    println!("Theta on the first loop: {}", theta(c, &t4, &l[1], &l[2], &l[0], &l[3]).unwrap());
}
