use qahh::arc::{ArcAlgebra, ArcCategory};
use qahh::category::*;
use qahh::ring::Unit;
use std::collections::BTreeSet;
use std::sync::Arc;

#[test]
fn h1_support_is_coherent() {
    let h = ArcAlgebra::new(1);
    let r = coherence_sweep(h.category(), &h.degree_support());
    assert!(r.ok(), "{r:?}");
    assert!(r.cocycle_paths > 0 && r.looper_loops > 0 && r.two_loops > 0);
}

#[test]
fn dropping_a_lambda_factor_breaks_coherence() {
    let support = ArcAlgebra::new(2).degree_support();
    let mut without_alpha = ArcCategory::new();
    without_alpha.without_alpha2 = true;
    let r = coherence_sweep(&without_alpha, &support);
    assert!(r.cocycle_failures > 0, "{r:?}");
    let mut without_eps = ArcCategory::new();
    without_eps.without_eps2 = true;
    let r = coherence_sweep(&without_eps, &support);
    assert_eq!(r.cocycle_failures, 0);
    assert!(r.looper_failures > 0, "{r:?}");
}

#[test]
fn cocycle_consequences_on_h2_support() {
    let h = ArcAlgebra::new(2);
    let c = h.category();
    let support = h.degree_support();
    for p in paths(c, &support, 2) {
        assert!(check_assoc_identities(c, &p[0], &p[1]).is_empty(), "{:?}", p);
    }
    for f in &support {
        let (l, r) = typical_unitors(c, f);
        assert_eq!(zeta(c, f), l.inv() * r);
        let x = c.source(f);
        assert!(c.alpha(&c.identity(&x), &c.identity(&x), &c.identity(&x)).is_one());
    }
}

#[test]
fn trace_is_invariant_under_rotation() {
    let h = ArcAlgebra::new(2);
    let c = h.category();
    for l in loops(c, &h.degree_support(), 2) {
        let gf = c.compose(&l[1], &l[0]).unwrap();
        let fg = c.compose(&l[0], &l[1]).unwrap();
        assert_eq!(c.trace(&gf), c.trace(&fg));
    }
    for l in loops(c, &h.degree_support(), 3) {
        let a = c.compose_path(&[l[0].clone(), l[1].clone(), l[2].clone()]).unwrap();
        let b = c.compose_path(&[l[1].clone(), l[2].clone(), l[0].clone()]).unwrap();
        assert_eq!(c.trace(&a), c.trace(&b));
    }
}

#[test]
fn trace_classes_of_h2_loops() {
    let h = ArcAlgebra::new(2);
    let c = h.category();
    let classes: BTreeSet<_> = h.degree_support().iter().filter(|f| c.is_loop(f)).map(|f| c.trace(f)).collect();
    assert!(classes.len() > 1);
}

#[test]
fn perturbed_alpha_is_detected() {
    let h = ArcAlgebra::new(2);
    let support = h.degree_support();
    let p = paths(h.category(), &support, 3).into_iter().next().unwrap();
    let bad = PerturbedAlpha { inner: h.category().clone(), at: (p[0].clone(), p[1].clone(), p[2].clone()), by: Unit::MINUS_ONE };
    assert!(coherence_sweep(&bad, &support).cocycle_failures > 0);
}

fn z2_with_cocycle() -> GroupCategory {
    let mut c = GroupCategory::cyclic(2);
    c.alpha_table.insert((1, 1, 1), Unit::MINUS_ONE);
    c
}

#[test]
fn nontrivial_group_cocycle() {
    let c = z2_with_cocycle();
    let r = coherence_sweep(&c, &c.elements());
    assert_eq!(r.cocycle_failures, 0);
    assert_eq!(r.cocycle_paths, 16);
    // A 3-cocycle alone does not make a looper: the hexagon needs ε.
    assert!(r.looper_failures > 0);
    let mut bad = z2_with_cocycle();
    bad.alpha_table.insert((1, 1, 0), Unit::X);
    assert!(coherence_sweep(&bad, &bad.elements()).cocycle_failures > 0);
}

#[test]
fn product_and_opposite_stay_coherent() {
    let h = ArcAlgebra::new(1);
    let c = h.category().clone();
    let support = h.degree_support();
    assert!(coherence_sweep(&Opposite(c.clone()), &support).ok());
    let g = GroupCategory::cyclic(3);
    let prod = Product(c, g.clone());
    let ps: Vec<_> = support.iter().flat_map(|f| g.elements().into_iter().map(move |x| (f.clone(), x))).collect();
    assert!(coherence_sweep(&prod, &ps).ok());
}

#[test]
fn errors_on_bad_shapes() {
    let h = ArcAlgebra::new(2);
    let c: &Arc<ArcCategory> = h.category();
    let support = h.degree_support();
    let (f, g) = support
        .iter()
        .flat_map(|f| support.iter().map(move |g| (f, g)))
        .find(|(f, g)| !c.composable(f, g))
        .unwrap();
    assert_eq!(check_antisymmetry(c, f, g), Err(CoherenceError::NotLoop));
    assert_eq!(d_alpha(c, &[f.clone(), g.clone(), f.clone(), g.clone()]), Err(CoherenceError::NotComposable));
}
