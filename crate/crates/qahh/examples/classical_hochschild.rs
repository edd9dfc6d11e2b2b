//! With trivial associator and commutator, the pipeline is ordinary
//! Hochschild theory. The dual numbers Z[x]/(x²) as a test case.

use qahh::cohomology::{CochainComplex, Route};
use qahh::graded::{GradedAlgebra, GradedBimodule};
use qahh::hochschild::HochschildComplex;
use std::sync::Arc;

fn main() {
    let a = Arc::new(GradedAlgebra::dual_numbers());
    let bim = Arc::new(GradedBimodule::regular(a));
    let hc = HochschildComplex::new(bim.clone(), 5).complex().specialize(1, 1, 1);
    println!("HH_*:\n{}", hc.homology().to_tsv());
    let cc = CochainComplex::new(bim, 5).complex(Route::Definition).specialize(1, 1, 1);
    println!("HH^*:\n{}", cc.homology().to_tsv());
}
