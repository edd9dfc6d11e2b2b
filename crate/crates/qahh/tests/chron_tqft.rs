use proptest::prelude::*;
use qahh::arc::{canonical_cobordism, s_degree, saddle_counts};
use qahh::chron::*;
use qahh::link::{build_cube, parse_pd};
use qahh::ring::{lambda, BiDegree, RingElem, Unit};
use qahh::tangle::{enumerate_matchings, FlatTangle};
use rand::SeedableRng;

fn tv(pairs: &[(u64, RingElem)]) -> TVec {
    pairs.iter().cloned().collect()
}

fn xz() -> RingElem {
    RingElem::monomial(1, 0, 1, 1)
}

fn yz() -> RingElem {
    RingElem::monomial(0, 1, 1, 1)
}

/// Two separate circles, each on two nodes; returns an edge of each.
fn two_circles() -> (Curves, usize, usize) {
    let mut c = Curves::new();
    let n: Vec<usize> = (0..4).map(|i| c.add_node(i)).collect();
    let e1 = c.add_edge(n[0], n[1]);
    c.add_edge(n[1], n[0]);
    let e2 = c.add_edge(n[2], n[3]);
    c.add_edge(n[3], n[2]);
    (c, e1, e2)
}

/// One circle on four nodes with two opposite edges.
fn square() -> (Curves, usize, usize) {
    let mut c = Curves::new();
    let n: Vec<usize> = (0..4).map(|i| c.add_node(i)).collect();
    let e0 = c.add_edge(n[0], n[1]);
    let e1 = c.add_edge(n[3], n[2]);
    c.add_edge(n[1], n[2]);
    c.add_edge(n[3], n[0]);
    (c, e0, e1)
}

fn saddle(lower: usize, upper: usize, flip: bool) -> Handle {
    Handle::Saddle { lower, upper, seam: false, flip }
}

/// Applies a matrix given by its columns to a vector.
fn apply(m: &[TVec], v: &TVec) -> TVec {
    let mut out = TVec::new();
    for (&k, c) in v {
        for (&j, x) in &m[k as usize] {
            tvec_add(&mut out, j, &(c * x));
        }
    }
    out
}

#[test]
fn local_rules() {
    // Labels: false is v₊, true is v₋.
    assert_eq!(merge_local(&[true, false]), vec![(vec![true], xz())]);
    assert_eq!(merge_local(&[false, true]), vec![(vec![true], RingElem::one())]);
    assert_eq!(merge_local(&[false, false]), vec![(vec![false], RingElem::one())]);
    assert!(merge_local(&[true, true]).is_empty());
    assert_eq!(split_local(&[false]), vec![(vec![true, false], RingElem::one()), (vec![false, true], yz())]);
    assert_eq!(split_local(&[true]), vec![(vec![true, true], RingElem::one())]);
}

#[test]
fn split_then_merge_on_plus() {
    let (c, e0, e1) = square();
    let w = ChronCob::new(c, vec![saddle(e0, e1, false), saddle(e0, e1, false)]);
    assert_eq!(w.matrix()[0], tv(&[(1, &xz() + &yz())]));
}

#[test]
fn framing_relations() {
    let ratio = |a: ChronCob, b: ChronCob| iota(&a, &b).unwrap().unique().unwrap();
    let (c, e1, e2) = two_circles();
    let m = |f| ChronCob::new(c.clone(), vec![saddle(e1, e2, f)]);
    assert_eq!(ratio(m(false), m(true)), Unit::X);
    let (c, e0, e1) = square();
    let s = |f| ChronCob::new(c.clone(), vec![saddle(e0, e1, f)]);
    assert_eq!(ratio(s(false), s(true)), Unit::Y);
    let d = |flip| ChronCob::new(c.clone(), vec![Handle::Death { edge: e0, flip }]);
    assert_eq!(ratio(d(false), d(true)), Unit::Y);
}

#[test]
fn handle_cancellation() {
    let mut c = Curves::new();
    let a = c.add_node(0);
    let b = c.add_node(1);
    let e = c.add_edge(a, b);
    c.add_edge(b, a);
    let identity = vec![tv(&[(0, RingElem::one())]), tv(&[(1, RingElem::one())])];
    // A birth merged into a circle; the born circle is a second edge.
    let born = c.edges.len();
    let mut hits = 0;
    for flip in [false, true] {
        let w = ChronCob::new(c.clone(), vec![Handle::Birth { rank: 9 }, saddle(e, born, flip)]);
        assert_eq!(w.degree(), BiDegree::new(0, 0));
        let m = w.matrix();
        hits += (m == identity) as usize;
        if m != identity {
            let x_identity: Vec<TVec> = identity.iter().map(|v| v.iter().map(|(&k, c)| (k, c * &RingElem::x())).collect()).collect();
            assert_eq!(m, x_identity);
        }
    }
    assert_eq!(hits, 1);
    // A split followed by the death of one of its outputs.
    let (c, e0, e1) = square();
    let mut hits = 0;
    for dead in [e0, e1] {
        let w = ChronCob::new(c.clone(), vec![saddle(e0, e1, false), Handle::Death { edge: dead, flip: false }]);
        assert_eq!(w.degree(), BiDegree::new(0, 0));
        hits += (w.matrix() == identity) as usize;
    }
    assert_eq!(hits, 1);
}

#[test]
fn disjoint_exchange_is_lambda() {
    let (mut c, e1, e2) = two_circles();
    let n: Vec<usize> = (0..4).map(|i| c.add_node(10 + i)).collect();
    let f0 = c.add_edge(n[0], n[1]);
    let f1 = c.add_edge(n[3], n[2]);
    c.add_edge(n[1], n[2]);
    c.add_edge(n[3], n[0]);
    let (m, s) = (saddle(e1, e2, false), saddle(f0, f1, false));
    let w = ChronCob::new(c.clone(), vec![m, s]);
    let w2 = ChronCob::new(c.clone(), vec![s, m]);
    assert_eq!(iota(&w, &w2).unwrap().unique().unwrap(), lambda(DEG_MERGE, DEG_SPLIT));
    assert_eq!(elementary_exchange(&c, &m, &s).unwrap(), lambda(DEG_MERGE, DEG_SPLIT));
    assert_eq!(chart_exchange(&c, &m, &s), Some(lambda(DEG_MERGE, DEG_SPLIT)));
}

/// Resolutions of a trefoil diagram give a supply of curve configurations
/// and saddles.
fn trefoil_saddles() -> Vec<(Curves, Vec<Handle>)> {
    let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap();
    let cube = build_cube(&d).unwrap();
    let n = d.crossings.len();
    (0..1u64 << n)
        .map(|s| {
            let hs = (0..n).filter(|&i| s >> i & 1 == 0).map(|i| saddle(2 * n + 2 * i, 2 * n + 2 * i + 1, false)).collect();
            (cube.states[s as usize].curves.clone(), hs)
        })
        .collect()
}

#[test]
fn functoriality_and_grading() {
    for (c, hs) in trefoil_saddles() {
        for &h1 in &hs {
            for &h2 in hs.iter().filter(|&&h| h != h1) {
                for flips in 0..4u8 {
                    let f = |h: Handle, b: bool| match h {
                        Handle::Saddle { lower, upper, seam, .. } => Handle::Saddle { lower, upper, seam, flip: b },
                        x => x,
                    };
                    let (a, b) = (f(h1, flips & 1 == 1), f(h2, flips & 2 == 2));
                    let w1 = ChronCob::new(c.clone(), vec![a]);
                    let w2 = ChronCob::new(w1.target(), vec![b]);
                    let w = ChronCob::new(c.clone(), vec![a, b]);
                    let (m1, m2, m) = (w1.matrix(), w2.matrix(), w.matrix());
                    let k = c.num_circles();
                    let k2 = w.target().num_circles();
                    for (mask, col) in m.iter().enumerate() {
                        assert_eq!(*col, apply(&m2, &m1[mask]));
                        for (&out, x) in col {
                            assert!(x.as_unit().is_some(), "non-monomial entry {x}");
                            assert_eq!(basis_degree(out, k2), basis_degree(mask as u64, k) + w.degree());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn chart_and_ratio_agree_on_saddle_exchanges() {
    let mut compared = 0;
    for (c, hs) in trefoil_saddles() {
        for (i, &h1) in hs.iter().enumerate() {
            for &h2 in &hs[i + 1..] {
                let (from, to) = (vec![h1, h2], vec![h2, h1]);
                let local = iota_local(&c, &from, &to);
                let chart = iota_chart(&c, &from, &to);
                let global = iota(&ChronCob::new(c.clone(), from.clone()), &ChronCob::new(c.clone(), to.clone()));
                match (local, global) {
                    (Ok(u), Ok(r)) => {
                        assert!(r.admits(u));
                        assert_eq!(chart, Some(u));
                        compared += 1;
                    }
                    (_, Err(IotaError::NoEntry)) => {}
                    (l, g) => panic!("unexpected {l:?} {g:?}"),
                }
            }
        }
    }
    assert!(compared > 0);
}

#[test]
fn canonical_cobordism_counts() {
    for n in 1..=3 {
        for a in enumerate_matchings(n) {
            let id = FlatTangle::identity(n);
            let w = canonical_cobordism(&a, &a, &a, &id, &id);
            assert_eq!(w.handles.len(), n);
            let d = s_degree(&a, &a, &a, &id, &id);
            assert_eq!(w.degree(), d);
            let (m, s) = saddle_counts(&w);
            assert_eq!(d, BiDegree::new(-(m as i64), -(s as i64)));
            // Symmetric arcs of ā∘a close up into n circles that merge away.
            assert_eq!((m, s), (n, 0));
        }
    }
}

#[test]
fn chron_cob_json() {
    let (c, e0, e1) = square();
    let w = ChronCob::new(c, vec![saddle(e0, e1, true), Handle::Death { edge: e0, flip: false }]);
    let s = serde_json::to_string(&w).unwrap();
    let back: ChronCob = serde_json::from_str(&s).unwrap();
    assert_eq!(back.handles, w.handles);
    assert_eq!(back.matrix(), w.matrix());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_degree_cocycle(seed in any::<u64>(), sizes in (1usize..4, 1usize..4, 1usize..4, 1usize..4)) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (na, nb, nc, nd) = sizes;
        let pick = |n: usize, rng: &mut rand_chacha::ChaCha8Rng| {
            let ms = enumerate_matchings(n);
            ms[rand::Rng::gen_range(rng, 0..ms.len())].clone()
        };
        let (a, b, c, d) = (pick(na, &mut rng), pick(nb, &mut rng), pick(nc, &mut rng), pick(nd, &mut rng));
        let t = FlatTangle::random(na, nb, &mut rng);
        let s = FlatTangle::random(nb, nc, &mut rng);
        let r = FlatTangle::random(nc, nd, &mut rng);
        let st = s.compose(&t).unwrap();
        let rs = r.compose(&s).unwrap();
        prop_assert_eq!(
            s_degree(&a, &b, &c, &t, &s) + s_degree(&a, &c, &d, &st, &r),
            s_degree(&b, &c, &d, &s, &r) + s_degree(&a, &b, &d, &t, &rs)
        );
    }
}
