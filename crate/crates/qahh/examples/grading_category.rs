//! Coherence of the grading category on crossingless matchings, and what
//! breaks when a factor of α or ε is dropped.

use qahh::arc::{ArcAlgebra, ArcCategory};
use qahh::category::{coherence_sweep, GroupCategory};
use qahh::ring::Unit;

fn main() {
    for n in 1..=2 {
        let h = ArcAlgebra::new(n);
        let r = coherence_sweep(h.category(), &h.degree_support());
        println!("G on {} matchings of {} points: {:?}", h.matchings.len(), 2 * n, r);
    }

    let support = ArcAlgebra::new(2).degree_support();
    let mut c = ArcCategory::new();
    c.without_alpha2 = true;
    println!("without the second factor of alpha: {:?}", coherence_sweep(&c, &support));
    let mut c = ArcCategory::new();
    c.without_eps2 = true;
    println!("without the second factor of epsilon: {:?}", coherence_sweep(&c, &support));

    let mut z2 = GroupCategory::cyclic(2);
    z2.alpha_table.insert((1, 1, 1), Unit::MINUS_ONE);
    println!("Z/2 with a nontrivial 3-cocycle: {:?}", coherence_sweep(&z2, &z2.elements()));
}
