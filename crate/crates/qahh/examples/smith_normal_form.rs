//! Integer Smith normal form with transformation matrices.

use qahh::homology::{smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64(3, 3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&m, true);
    println!("invariant factors: {:?}", s.invariants.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    let (u, v) = (s.u.unwrap(), s.v.unwrap());
    let d = u.mul(&m).mul(&v);
    for row in &d.data {
        println!("{:?}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
}
