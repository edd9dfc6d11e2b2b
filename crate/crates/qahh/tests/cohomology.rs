use qahh::arc::ArcAlgebra;
use qahh::cohomology::*;
use qahh::graded::{GradedAlgebra, GradedBimodule};
use qahh::ring::Spec;
use std::sync::Arc;

fn cochains(n: usize, nmax: usize) -> CochainComplex<Arc<qahh::arc::ArcCategory>> {
    CochainComplex::new(Arc::new(GradedBimodule::regular(Arc::new(ArcAlgebra::new(n).alg))), nmax)
}

#[test]
fn center_is_spanned_by_the_unit() {
    for n in 1..=2 {
        let h = ArcAlgebra::new(n);
        let z = center(&h.alg);
        assert!(z.validated() && z.kernel.is_free());
        assert_eq!(z.kernel.rank(), 1);
        assert!(z.contains(&h.unit_sum()));
    }
}

#[test]
fn center_of_a_commutative_algebra_is_everything() {
    let z = center(&GradedAlgebra::dual_numbers());
    assert_eq!(z.kernel.rank(), 2);
    let t = center(&GradedAlgebra::upper_triangular());
    assert_eq!(t.kernel.rank(), 1);
}

#[test]
fn invariants_of_the_regular_bimodule_are_the_center() {
    for n in 1..=2 {
        let h = Arc::new(ArcAlgebra::new(n).alg);
        let z = center(&h);
        let inv = invariants(&GradedBimodule::regular(h));
        assert_eq!(inv.kernel.rank(), z.kernel.rank());
        for g in z.generators() {
            assert!(inv.contains(&g));
        }
        for g in inv.generators() {
            assert!(z.contains(&g));
        }
    }
}

#[test]
fn zeroth_cocycles_are_the_center() {
    for n in 1..=2 {
        let h = ArcAlgebra::new(n);
        let z = center(&h.alg);
        let cc = cochains(n, 1);
        let c0 = cc.cocycles0();
        assert_eq!(c0.len(), z.kernel.rank());
        for v in &c0 {
            assert!(z.contains(v), "H{n}");
        }
    }
}

#[test]
fn differential_routes_agree() {
    for (n, nmax) in [(1, 3), (2, 2)] {
        let cc = cochains(n, nmax);
        for k in 1..=nmax {
            let d = cc.differential(k, Route::Definition);
            assert_eq!(d.entries, cc.differential(k, Route::Explicit(EmptyPrefix::One)).entries, "H{n} k={k}");
            assert_eq!(d.entries, cc.differential(k, Route::Explicit(EmptyPrefix::Identity)).entries, "H{n} k={k}");
        }
        let c = cc.complex(Route::Definition);
        assert_eq!(c.d_squared_defects(), 0);
        assert_eq!(c.step, 1);
    }
}

#[test]
fn psi_and_phi_are_inverse() {
    let cc = cochains(2, 1);
    for k in 0..=1 {
        let (bad, span) = cc.psi_phi_check(k);
        assert_eq!(bad, 0, "k={k}");
        assert!(span > 0);
    }
}

#[test]
fn derivations() {
    let d1 = cochains(1, 2).derivations();
    assert!(d1.validated());
    assert!(d1.kernel.is_free());
    assert_eq!(d1.kernel.rank(), 1);
    let cc2 = cochains(2, 2);
    let d2 = cc2.derivations();
    assert!(d2.validated());
    assert!(!d2.kernel.is_free());
    assert_eq!(d2.kernel.rank(), 2);
}

#[test]
fn derivations_of_dual_numbers_obey_the_leibniz_rule() {
    let cc = CochainComplex::new(Arc::new(GradedBimodule::regular(Arc::new(GradedAlgebra::dual_numbers()))), 2);
    let d = cc.derivations();
    assert!(d.kernel.rank() > 0);
    for f in d.generators() {
        assert!(cc.derivation_law_failures(&f).is_empty());
    }
}

#[test]
fn specialized_cohomology_is_spec_independent_in_degree_zero() {
    let c = cochains(1, 2).complex(Route::Definition);
    for s in Spec::all() {
        let t = c.specialize(s.x, s.y, s.z).homology().nonzero();
        let h0: usize = t.table.iter().filter(|((k, _), _)| *k == 0).map(|(_, e)| e.betti).sum();
        assert_eq!(h0, 1, "{}", s.name());
    }
}
