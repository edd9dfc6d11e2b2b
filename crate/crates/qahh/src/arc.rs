//! The grading category `(G, α, ε)` and the unified arc algebras `Hⁿ`.

use crate::category::GradingCategory;
use crate::chron::{basis_degree, iota, iota_chart, iota_local, stack, ChronCob, Curves, Handle, IotaError, Stacked, Step, TVec};
use crate::graded::{vadd, BasisElem, GradedAlgebra, GradedModule, Vector};
use crate::ring::{lambda, BiDegree, RingElem, Unit};
use crate::tangle::{enumerate_matchings, FlatTangle, Matching};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

const MIDDLE: u64 = 1 << 40;
const FREE: u64 = 1 << 50;

/// A morphism `(t, p): a → b` of G.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GMor {
    pub src: Matching,
    pub tgt: Matching,
    pub t: FlatTangle,
    pub p: BiDegree,
}

impl fmt::Debug for GMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?} {:?} {}", self.src.arcs, self.tgt.arcs, self.t, self.p)
    }
}

/// Class of an endomorphism in `Tr(G)`: the annular closure, recorded by
/// its numbers of essential and inessential circles, and the adjusted
/// Z²-degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct TraceClass {
    pub essential: usize,
    pub inessential: usize,
    pub deg: BiDegree,
}

impl fmt::Display for TraceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}e{}i{}]", self.essential, self.inessential, self.deg)
    }
}

/// One change-of-chronology coefficient computed while evaluating α or ε.
/// The value is assembled from local exchanges; the global matrices of the
/// two chronologies must then differ by exactly that unit.
#[derive(Clone, Debug, Serialize)]
pub struct IotaCheck {
    pub kind: &'static str,
    pub local: Option<String>,
    /// Units relating the global matrices.
    pub global: Vec<String>,
    pub entries: usize,
    pub chart: Option<String>,
    pub error: Option<String>,
}

impl IotaCheck {
    /// The local value relates the global matrices.
    pub fn consistent(&self) -> bool {
        self.error.is_none() && self.local.as_ref().is_some_and(|l| self.global.contains(l))
    }

    /// The global matrices alone do not pin the unit down.
    pub fn ambiguous(&self) -> bool {
        self.global.len() > 1
    }

    /// `None` when the chart does not cover the exchange.
    pub fn chart_agrees(&self) -> Option<bool> {
        self.chart.as_ref().map(|c| Some(c) == self.local.as_ref())
    }
}

type AlphaKey = (FlatTangle, FlatTangle, FlatTangle, Matching, Matching, Matching, Matching);
type EpsKey = (FlatTangle, FlatTangle, Matching, Matching);

/// The grading category G on crossingless matchings.
#[derive(Debug, Default)]
pub struct ArcCategory {
    alpha1: Mutex<HashMap<AlphaKey, Result<Unit, IotaError>>>,
    eps1: Mutex<HashMap<EpsKey, Result<Unit, IotaError>>>,
    log: Mutex<Vec<IotaCheck>>,
    /// Drop the `λ(s_bcd, p₁)` factor of α.
    pub without_alpha2: bool,
    /// Drop the `λ(p, q)` factor of ε.
    pub without_eps2: bool,
}

/// A closed diagram stacked from pieces `b̄ ∘ t ∘ a`.
struct Pieces {
    st: Stacked,
    tops: Vec<Matching>,
}

fn pieces(ps: &[(&Matching, &FlatTangle, &Matching)], outer: bool) -> Pieces {
    let mut layers: Vec<FlatTangle> = Vec::new();
    for (a, t, b) in ps {
        layers.push((*a).clone());
        layers.push((*t).clone());
        layers.push(b.mirror());
    }
    let k = ps.len();
    let bottom = 2 * ps[0].1.m;
    let top = 2 * ps[k - 1].1.n;
    let refs: Vec<&FlatTangle> = layers.iter().collect();
    // Outer points are ranked right to left.
    let st = stack(
        &refs,
        |i, j| {
            let (piece, lev) = (i / 3, i % 3);
            if outer && piece == 0 && lev == 0 {
                (bottom - 1 - j) as u64
            } else if outer && piece == k - 1 && lev == 1 {
                (bottom + top - 1 - j) as u64
            } else {
                MIDDLE + ((i as u64) << 20) + j as u64
            }
        },
        FREE,
    );
    Pieces { st, tops: ps.iter().map(|p| p.2.clone()).collect() }
}

/// Arc indices of a matching, right to left by right endpoint.
fn right_to_left(b: &Matching) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..b.arcs.len()).collect();
    idx.sort_by_key(|&e| Reverse(b.arcs[e].1));
    idx
}

impl Pieces {
    /// Saddles contracting the gap above piece `k` with the bottom of the
    /// next piece (or of piece 0 through the seam when `k` is last).
    fn gap(&self, k: usize, seam: bool) -> Vec<Handle> {
        let next = if seam { 0 } else { k + 1 };
        right_to_left(&self.tops[k])
            .into_iter()
            .map(|e| Handle::Saddle {
                lower: self.st.layer_edges[3 * k + 2][e],
                upper: self.st.layer_edges[3 * next][e],
                seam,
                flip: false,
            })
            .collect()
    }
}

/// The stacked diagram of a path of morphisms and the saddles
/// contracting each gap between consecutive pieces. With `closed`, a
/// final list of seam saddles joins the last piece to the first.
pub fn stacked_gaps(path: &[GMor], closed: bool) -> (Curves, Vec<Vec<Handle>>) {
    let ps: Vec<(&Matching, &FlatTangle, &Matching)> = path.iter().map(|f| (&f.src, &f.t, &f.tgt)).collect();
    let p = pieces(&ps, true);
    let mut gaps: Vec<Vec<Handle>> = (0..path.len() - 1).map(|k| p.gap(k, false)).collect();
    if closed {
        gaps.push(p.gap(path.len() - 1, true));
    }
    (p.st.curves, gaps)
}

/// Circles of the closed diagram `b̄ ∘ t ∘ a`.
pub fn closed_circles(a: &Matching, t: &FlatTangle, b: &Matching) -> usize {
    b.mirror().compose(&t.compose(a).expect("boundary mismatch")).expect("boundary mismatch").free
}

/// The Z²-degree `s_abc(t, s)` of the canonical cobordism `W_abc(t, s)`.
pub fn s_degree(a: &Matching, b: &Matching, c: &Matching, t: &FlatTangle, s: &FlatTangle) -> BiDegree {
    let before = closed_circles(a, t, b) + closed_circles(b, s, c);
    let st = s.compose(t).expect("boundary mismatch");
    let after = closed_circles(a, &st, c);
    let nb = b.n as i64;
    let delta = before as i64 - after as i64;
    let merges = (nb + delta) / 2;
    BiDegree::new(-merges, -(nb - merges))
}

/// The canonical cobordism `W_abc(t, s)` on the stacked diagram.
pub fn canonical_cobordism(a: &Matching, b: &Matching, c: &Matching, t: &FlatTangle, s: &FlatTangle) -> ChronCob {
    let p = pieces(&[(a, t, b), (b, s, c)], true);
    ChronCob::new(p.st.curves.clone(), p.gap(0, false))
}

/// `W_a(t)`: contracts the symmetric arcs of `ā ∘ a` through the seam.
pub fn trace_cobordism(a: &Matching, t: &FlatTangle) -> ChronCob {
    let p = pieces(&[(a, t, a)], true);
    ChronCob::new(p.st.curves.clone(), p.gap(0, true))
}

impl ArcCategory {
    pub fn new() -> Self {
        ArcCategory::default()
    }

    pub fn shared() -> Arc<Self> {
        Arc::new(ArcCategory::new())
    }

    pub fn iota_log(&self) -> Vec<IotaCheck> {
        self.log.lock().unwrap().clone()
    }

    fn record(&self, kind: &'static str, from: &ChronCob, to: &ChronCob) -> Result<Unit, IotaError> {
        let local = iota_local(&from.source, &from.handles, &to.handles);
        let global = iota(from, to);
        let chart = iota_chart(&from.source, &from.handles, &to.handles);
        let check = IotaCheck {
            kind,
            local: local.as_ref().ok().map(|u| u.to_string()),
            global: global.as_ref().map(|r| r.units.iter().map(|u| u.to_string()).collect()).unwrap_or_default(),
            entries: global.as_ref().map(|r| r.entries).unwrap_or(0),
            chart: chart.map(|u| u.to_string()),
            error: local.as_ref().err().or(global.as_ref().err()).map(|e| e.to_string()),
        };
        self.log.lock().unwrap().push(check);
        let u = local?;
        if !global?.admits(u) {
            return Err(IotaError::NoUnit);
        }
        Ok(u)
    }

    /// `α₁`, the change of chronology between the two ways of contracting
    /// a triple composite.
    pub fn try_alpha1(&self, f1: &GMor, f2: &GMor, f3: &GMor) -> Result<Unit, IotaError> {
        let key = (f1.t.clone(), f2.t.clone(), f3.t.clone(), f1.src.clone(), f2.src.clone(), f3.src.clone(), f3.tgt.clone());
        if let Some(v) = self.alpha1.lock().unwrap().get(&key) {
            return v.clone();
        }
        let p = pieces(&[(&f1.src, &f1.t, &f1.tgt), (&f2.src, &f2.t, &f2.tgt), (&f3.src, &f3.t, &f3.tgt)], true);
        let (g01, g12) = (p.gap(0, false), p.gap(1, false));
        let lhs = ChronCob::new(p.st.curves.clone(), [g01.clone(), g12.clone()].concat());
        let rhs = ChronCob::new(p.st.curves.clone(), [g12, g01].concat());
        let r = self.record("alpha", &rhs, &lhs);
        self.alpha1.lock().unwrap().insert(key, r.clone());
        r
    }

    /// `ε₁`, the change of chronology between the two ways of closing a
    /// 2-loop into the annulus.
    pub fn try_epsilon1(&self, f: &GMor, g: &GMor) -> Result<Unit, IotaError> {
        let key = (f.t.clone(), g.t.clone(), f.src.clone(), f.tgt.clone());
        if let Some(v) = self.eps1.lock().unwrap().get(&key) {
            return v.clone();
        }
        let p = pieces(&[(&f.src, &f.t, &f.tgt), (&g.src, &g.t, &g.tgt)], true);
        let (mid, seam) = (p.gap(0, false), p.gap(1, true));
        let l = ChronCob::new(p.st.curves.clone(), [mid.clone(), seam.clone()].concat());
        let r = ChronCob::new(p.st.curves.clone(), [seam, mid].concat());
        let res = self.record("epsilon", &r, &l);
        self.eps1.lock().unwrap().insert(key, res.clone());
        res
    }

    pub fn try_alpha(&self, f1: &GMor, f2: &GMor, f3: &GMor) -> Result<Unit, IotaError> {
        let a1 = self.try_alpha1(f1, f2, f3)?;
        if self.without_alpha2 {
            return Ok(a1);
        }
        Ok(a1 * lambda(s_degree(&f2.src, &f3.src, &f3.tgt, &f2.t, &f3.t), f1.p))
    }

    pub fn try_epsilon(&self, f: &GMor, g: &GMor) -> Result<Unit, IotaError> {
        let e1 = self.try_epsilon1(f, g)?;
        if self.without_eps2 {
            return Ok(e1);
        }
        Ok(e1 * lambda(f.p, g.p))
    }

    pub fn morphism(&self, src: Matching, tgt: Matching, t: FlatTangle, p: BiDegree) -> GMor {
        assert_eq!((t.m, t.n), (src.n, tgt.n), "tangle does not fit its objects");
        GMor { src, tgt, t, p }
    }
}

impl GradingCategory for ArcCategory {
    type Obj = Matching;
    type Mor = GMor;
    type Trace = TraceClass;

    fn source(&self, f: &GMor) -> Matching {
        f.src.clone()
    }
    fn target(&self, f: &GMor) -> Matching {
        f.tgt.clone()
    }
    fn compose(&self, g: &GMor, f: &GMor) -> Option<GMor> {
        if f.tgt != g.src {
            return None;
        }
        let t = g.t.compose(&f.t).ok()?;
        let p = f.p + g.p + s_degree(&f.src, &f.tgt, &g.tgt, &f.t, &g.t);
        Some(GMor { src: f.src.clone(), tgt: g.tgt.clone(), t, p })
    }
    fn identity(&self, x: &Matching) -> GMor {
        GMor { src: x.clone(), tgt: x.clone(), t: FlatTangle::identity(x.n), p: BiDegree::new(x.n as i64, 0) }
    }
    fn alpha(&self, f1: &GMor, f2: &GMor, f3: &GMor) -> Unit {
        self.try_alpha(f1, f2, f3).unwrap_or_else(|e| panic!("alpha undefined: {}", e))
    }
    fn epsilon(&self, f: &GMor, g: &GMor) -> Unit {
        self.try_epsilon(f, g).unwrap_or_else(|e| panic!("epsilon undefined: {}", e))
    }
    fn trace(&self, f: &GMor) -> TraceClass {
        assert_eq!(f.src, f.tgt, "trace of a non-loop");
        let w = trace_cobordism(&f.src, &f.t);
        let tr = w.trace();
        let deg = tr.steps.iter().fold(BiDegree::ZERO, |d, s| d + s.degree());
        let circles = tr.target.circles();
        let essential = circles.iter().filter(|c| c.essential).count();
        TraceClass { essential, inessential: circles.len() - essential, deg: f.p + deg }
    }
}

/// One summand `F(b̄ ∘ 1_n ∘ a)` of `Hⁿ`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub bottom: usize,
    pub top: usize,
    pub circles: usize,
    pub start: usize,
}

/// The unified arc algebra `Hⁿ` as a G-graded algebra.
#[derive(Clone, Debug)]
pub struct ArcAlgebra {
    pub n: usize,
    pub matchings: Vec<Matching>,
    pub blocks: Vec<Block>,
    pub alg: GradedAlgebra<Arc<ArcCategory>>,
}

fn labels(mask: u64, k: usize) -> String {
    (0..k).map(|i| if mask >> i & 1 == 1 { '-' } else { '+' }).collect()
}

impl ArcAlgebra {
    pub fn new(n: usize) -> Self {
        ArcAlgebra::with_category(n, ArcCategory::shared())
    }

    pub fn with_category(n: usize, cat: Arc<ArcCategory>) -> Self {
        assert!(n >= 1, "arc algebras need n >= 1");
        let ms = enumerate_matchings(n);
        let id = FlatTangle::identity(n);
        let mut blocks = Vec::new();
        let mut basis = Vec::new();
        for (ai, a) in ms.iter().enumerate() {
            for (bi, b) in ms.iter().enumerate() {
                let k = closed_circles(a, &id, b);
                blocks.push(Block { bottom: ai, top: bi, circles: k, start: basis.len() });
                for mask in 0..1u64 << k {
                    let label = if n == 1 { format!("v{}", labels(mask, k)) } else { format!("{}{}:{}", ai, bi, labels(mask, k)) };
                    let deg = GMor { src: a.clone(), tgt: b.clone(), t: id.clone(), p: basis_degree(mask, k) };
                    basis.push(BasisElem { label, deg, hdeg: 0 });
                }
            }
        }
        let nm = ms.len();
        let block = |a: usize, b: usize| &blocks[a * nm + b];
        let mut mu = HashMap::new();
        for a in 0..nm {
            for b in 0..nm {
                for c in 0..nm {
                    let (x, y, z) = (block(a, b), block(b, c), block(a, c));
                    let w = canonical_cobordism(&ms[a], &ms[b], &ms[c], &id, &id);
                    let m = w.matrix();
                    for mx in 0..1u64 << x.circles {
                        for my in 0..1u64 << y.circles {
                            let out: &TVec = &m[(mx | my << x.circles) as usize];
                            let mut v = Vector::new();
                            for (&mask, coef) in out {
                                vadd(&mut v, z.start + mask as usize, coef);
                            }
                            if !v.is_empty() {
                                mu.insert((x.start + mx as usize, y.start + my as usize), v);
                            }
                        }
                    }
                }
            }
        }
        let units: BTreeMap<Matching, Vector> = ms
            .iter()
            .enumerate()
            .map(|(a, m)| (m.clone(), [(block(a, a).start, RingElem::one())].into_iter().collect()))
            .collect();
        let alg = GradedAlgebra { module: GradedModule { cat, basis }, mu, units };
        ArcAlgebra { n, matchings: ms, blocks, alg }
    }

    pub fn category(&self) -> &Arc<ArcCategory> {
        &self.alg.module.cat
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Index of the basis element with the given block and labeling.
    pub fn index(&self, bottom: usize, top: usize, mask: u64) -> usize {
        self.blocks[bottom * self.matchings.len() + top].start + mask as usize
    }

    /// Distinct degrees of basis elements.
    pub fn degree_support(&self) -> Vec<GMor> {
        let mut v: Vec<GMor> = self.alg.module.basis.iter().map(|b| b.deg.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `Σ_a e_a`.
    pub fn unit_sum(&self) -> Vector {
        let mut v = Vector::new();
        for u in self.alg.units.values() {
            for (&i, c) in u {
                vadd(&mut v, i, c);
            }
        }
        v
    }
}

/// Merges and splits of a cobordism.
pub fn saddle_counts(w: &ChronCob) -> (usize, usize) {
    let tr = w.trace();
    let m = tr.steps.iter().filter(|s| matches!(s, Step::Merge { .. })).count();
    let s = tr.steps.iter().filter(|s| matches!(s, Step::Split { .. })).count();
    (m, s)
}
