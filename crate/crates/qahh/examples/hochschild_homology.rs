//! Hochschild homology of H^1 and H^2 at the even and odd specializations.

use qahh::arc::ArcAlgebra;
use qahh::graded::GradedBimodule;
use qahh::hochschild::HochschildComplex;
use qahh::ring::Spec;
use std::sync::Arc;

fn main() {
    for (n, nmax) in [(1, 4), (2, 3)] {
        let bim = Arc::new(GradedBimodule::regular(Arc::new(ArcAlgebra::new(n).alg)));
        let c = HochschildComplex::new(bim, nmax).complex();
        println!("H^{n}: chain ranks {:?}", (0..=nmax as i64).map(|k| c.dim(k)).collect::<Vec<_>>());
        for s in [Spec::EVEN, Spec::ODD] {
            println!("{}:\n{}", s.name(), c.specialize(s.x, s.y, s.z).homology().nonzero().to_tsv());
        }
    }
}
