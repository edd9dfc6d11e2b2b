//! Arithmetic in R = Z[X, Y, Z^±1]/(X² = Y² = 1) and its eight specializations.

use qahh::ring::{lambda, BiDegree, RingElem, Spec};

fn main() {
    let x = RingElem::x();
    let y = RingElem::y();
    let z = RingElem::z(1);
    let xy = &x * &y;
    let a = &RingElem::one() - &xy;
    let b = &RingElem::one() + &xy;
    println!("(1 - XY)(1 + XY) = {}", &a * &b);
    println!("(X + YZ)^2 = {}", &(&x + &(&y * &z)) * &(&x + &(&y * &z)));

    let merge = BiDegree::new(-1, 0);
    let split = BiDegree::new(0, -1);
    println!("lambda(merge, split) = {}", lambda(merge, split));

    let p = &(&x * &z) + &(&y * &z);
    for s in Spec::all() {
        println!("{:>8}: XZ + YZ -> {}", s.name(), p.specialize(s.x, s.y, s.z));
    }
}
