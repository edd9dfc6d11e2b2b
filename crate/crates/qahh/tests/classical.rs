mod common;
mod support;

use common::Algebra;
use qahh::cohomology::{CochainComplex, Route};
use qahh::graded::{GradedAlgebra, GradedBimodule};
use qahh::hochschild::HochschildComplex;
use qahh::ring::Spec;
use std::sync::Arc;

fn check_homology(ours: GradedAlgebra<qahh::category::GroupCategory>, oracle: &Algebra) {
    let bim = Arc::new(GradedBimodule::regular(Arc::new(ours)));
    let hc = HochschildComplex::new(bim, 4).complex();
    assert_eq!(hc.d_squared_defects(), 0);
    for n in 1..=4 {
        assert_eq!(support::labeled_matrix(&hc, n), common::hochschild_boundary(oracle, n as usize), "b_{n}");
    }
    let expect = common::hochschild_homology(oracle, 4);
    for s in Spec::all() {
        let got = support::table(&hc.specialize(s.x, s.y, s.z).homology(), |&g| g as i64);
        assert_eq!(got, expect, "{}", s.name());
    }
}

fn check_cohomology(ours: GradedAlgebra<qahh::category::GroupCategory>, oracle: &Algebra) {
    let bim = Arc::new(GradedBimodule::regular(Arc::new(ours)));
    let cc = CochainComplex::new(bim, 4);
    let expect = common::hochschild_cohomology(oracle, 4);
    for route in [Route::Definition, Route::Explicit(qahh::cohomology::EmptyPrefix::One), Route::Explicit(qahh::cohomology::EmptyPrefix::Identity)] {
        let c = cc.complex(route);
        assert_eq!(c.d_squared_defects(), 0);
        for n in 0..4 {
            assert_eq!(support::labeled_matrix(&c, n), common::hochschild_coboundary(oracle, n as usize), "δ^{n} {route:?}");
        }
        for s in Spec::all() {
            let got = support::table(&c.specialize(s.x, s.y, s.z).homology(), |_| 0);
            assert_eq!(got, expect, "{} {route:?}", s.name());
        }
    }
}

#[test]
fn dual_numbers_homology() {
    check_homology(GradedAlgebra::dual_numbers(), &Algebra::dual_numbers());
}

#[test]
fn dual_numbers_cohomology() {
    check_cohomology(GradedAlgebra::dual_numbers(), &Algebra::dual_numbers());
}

#[test]
fn upper_triangular_homology() {
    check_homology(GradedAlgebra::upper_triangular(), &Algebra::upper_triangular());
}

#[test]
fn upper_triangular_cohomology() {
    check_cohomology(GradedAlgebra::upper_triangular(), &Algebra::upper_triangular());
}

#[test]
fn dual_numbers_known_groups() {
    // Periodic resolution: A <-0- A <-2x- A <-0- A ...
    let t = common::hochschild_homology(&Algebra::dual_numbers(), 4);
    assert_eq!(t[&(0, 0)], (2, vec![]));
    assert_eq!(t[&(1, 0)], (1, vec![2]));
    assert_eq!(t[&(2, 0)], (1, vec![]));
    assert_eq!(t[&(3, 0)], (1, vec![2]));
}

#[test]
fn upper_triangular_is_noncommutative_and_separable() {
    let a = GradedAlgebra::upper_triangular();
    assert_ne!(a.mul_basis(1, 2), a.mul_basis(2, 1));
    assert!(a.check().ok());
    let t = common::hochschild_homology(&Algebra::upper_triangular(), 4);
    // T2 has the Hochschild homology of its semisimple quotient Z × Z.
    assert_eq!(t.get(&(0, 0)), Some(&(2, vec![])));
    assert!(t.keys().all(|k| k.0 == 0));
}
