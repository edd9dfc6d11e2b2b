use qahh::arc::ArcAlgebra;
use qahh::bar::BarComplex;
use qahh::category::{GradingCategory, TrivializedAlpha};
use qahh::graded::{GradedAlgebra, GradedBimodule};
use qahh::hochschild::*;
use qahh::ring::Spec;
use std::sync::Arc;

fn regular(n: usize) -> Arc<GradedBimodule<Arc<qahh::arc::ArcCategory>>> {
    Arc::new(GradedBimodule::regular(Arc::new(ArcAlgebra::new(n).alg)))
}

#[test]
fn bar_complex_is_a_dg_bimodule() {
    let bar = BarComplex::new(Arc::new(ArcAlgebra::new(1).alg), 3);
    assert_eq!(bar.complex().d_squared_defects(), 0);
    for n in 0..=3 {
        let r = bar.check_dg(n, None);
        assert!(r.ok(), "n={n}: {:?}", r.violations.first());
    }
    let bar2 = BarComplex::new(Arc::new(ArcAlgebra::new(2).alg), 2);
    for n in 1..=2 {
        let r = bar2.check_dg(n, Some((300, n as u64)));
        assert!(r.ok() && r.checked["DG.II"] == 300, "H2 n={n}");
    }
}

#[test]
fn bar_levels_are_composable_words() {
    let h = Arc::new(ArcAlgebra::new(2).alg);
    let bar = BarComplex::new(h.clone(), 1);
    let c = h.cat();
    for w in &bar.levels[1].words {
        assert_eq!(w.len(), 3);
        assert!(c.composable(h.deg(w[0]), h.deg(w[1])) && c.composable(h.deg(w[1]), h.deg(w[2])));
    }
}

#[test]
fn bar_differential_needs_the_associator() {
    let h = ArcAlgebra::new(2);
    let flat = Arc::new(h.alg.regrade(TrivializedAlpha(h.category().clone())));
    assert!(BarComplex::new(flat, 2).complex().d_squared_defects() > 0);
}

#[test]
fn hochschild_boundary_squares_to_zero() {
    for (n, nmax) in [(1, 4), (2, 3)] {
        let hc = HochschildComplex::new(regular(n), nmax).complex();
        assert_eq!(hc.d_squared_defects(), 0, "H{n}");
        assert!(hc.is_homogeneous());
    }
}

#[test]
fn hochschild_chains_close_into_loops() {
    let hc = HochschildComplex::new(regular(2), 2);
    let c = hc.bim.cat();
    for w in &hc.levels[2].words {
        let d = c.compose_path(&w.iter().map(|&i| hc.bim.deg(i).clone()).collect::<Vec<_>>()).unwrap();
        assert!(c.is_loop(&d));
    }
}

#[test]
fn central_action_is_a_chain_map() {
    for n in 1..=2 {
        let h = ArcAlgebra::new(n);
        let z = h.unit_sum();
        let hc = HochschildComplex::new(regular(n), 2);
        for k in 1..=2 {
            for w in 0..hc.levels[k].len() {
                let lhs = hc.apply(&hc.central_action(&z, k, w), |x| hc.boundary(k, x));
                let rhs = hc.apply(&hc.boundary(k, w), |x| hc.central_action(&z, k - 1, x));
                assert_eq!(lhs, rhs, "H{n} level {k} word {}", hc.label(k, w));
            }
        }
    }
}

#[test]
fn unit_acts_as_identity_on_chains() {
    let h = ArcAlgebra::new(2);
    let hc = HochschildComplex::new(regular(2), 1);
    let z = h.unit_sum();
    for w in 0..hc.levels[1].len() {
        assert_eq!(hc.central_action(&z, 1, w), qahh::graded::basis_vec(w));
    }
}

#[test]
fn coinvariants_are_hh0() {
    for n in 1..=2 {
        let bim = regular(n);
        let hc = HochschildComplex::new(bim.clone(), 1).complex();
        let q = coinvariants(&bim);
        assert_eq!(q.inhomogeneous(), 0);
        for s in Spec::all() {
            let hh = hc.specialize(s.x, s.y, s.z).homology().nonzero();
            let hh0: Vec<_> = hh.table.iter().filter(|((k, _), _)| *k == 0).map(|((_, g), e)| (*g, e.clone())).collect();
            let coker: Vec<_> = q.cokernel(s.x, s.y, s.z).into_iter().filter(|(_, e)| e.betti > 0 || !e.torsion.is_empty()).collect();
            assert_eq!(hh0, coker, "H{n} at {}", s.name());
        }
    }
}

#[test]
fn commutator_quotient_of_dual_numbers() {
    let a = Arc::new(GradedAlgebra::dual_numbers());
    let q = commutator_quotient(a);
    let coker = q.cokernel(1, 1, 1);
    assert_eq!(coker.values().map(|e| e.betti).sum::<usize>(), 2);
}

#[test]
fn tensor_over_the_algebra_is_the_algebra() {
    for n in 1..=2 {
        let bim = regular(n);
        let t = tensor_over_b(&bim, &bim);
        assert_eq!(t.pres.inhomogeneous(), 0);
        for s in Spec::all() {
            let coker = t.pres.cokernel(s.x, s.y, s.z);
            assert_eq!(coker.values().map(|e| e.betti).sum::<usize>(), bim.dim(), "H{n} at {}", s.name());
            assert!(coker.values().all(|e| e.torsion.is_empty()));
        }
    }
}

#[test]
fn tensor_over_enveloping_algebra() {
    for n in 1..=2 {
        let bim = regular(n);
        let t = tensor_over_ae(&bim, &bim);
        assert_eq!(t.pres.inhomogeneous(), 0, "H{n}");
        let swap = swap_tensor_ae(&bim, &bim, &t, &t);
        for s in Spec::all() {
            for r in &t.pres.relations {
                assert!(t.pres.in_span(&map_vector(&swap, r), s.x, s.y, s.z), "H{n} at {}", s.name());
            }
        }
    }
}
