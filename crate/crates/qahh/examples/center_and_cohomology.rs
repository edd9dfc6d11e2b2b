//! Graded center, derivations and grading-preserving cohomology.

use qahh::arc::ArcAlgebra;
use qahh::cohomology::{center, CochainComplex, Route};
use qahh::graded::GradedBimodule;
use std::sync::Arc;

fn main() {
    for n in 1..=2 {
        let h = ArcAlgebra::new(n);
        let z = center(&h.alg);
        println!("Z(H^{n}): rank {}, free {}, contains the unit {}", z.kernel.rank(), z.kernel.is_free(), z.contains(&h.unit_sum()));
        let cc = CochainComplex::new(Arc::new(GradedBimodule::regular(Arc::new(h.alg))), 2);
        let d = cc.derivations();
        println!("  derivations: rank {}, free {}", d.kernel.rank(), d.kernel.is_free());
        let c = cc.complex(Route::Definition).specialize(1, 1, 1);
        println!("{}", c.homology().nonzero().to_tsv());
    }
}
