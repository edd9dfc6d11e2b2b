//! The bar construction of H^1 and its DG bimodule checks.

use qahh::arc::ArcAlgebra;
use qahh::bar::BarComplex;
use std::sync::Arc;

fn main() {
    let bar = BarComplex::new(Arc::new(ArcAlgebra::new(1).alg), 3);
    let c = bar.complex();
    for n in 0..=3 {
        println!("B_{n}: {} words", c.dim(n));
    }
    println!("nonzero entries of the square of the differential: {}", c.d_squared_defects());
    for n in 1..=3 {
        let r = bar.check_dg(n, None);
        println!("level {n}: {:?}, violations {}", r.checked, r.violations.len());
    }
}
