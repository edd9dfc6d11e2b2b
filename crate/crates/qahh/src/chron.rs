//! Closed curve configurations, chronological cobordisms and the
//! chronological TQFT.

use crate::ring::{lambda, BiDegree, RingElem, Unit};
use crate::tangle::FlatTangle;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Degree of `v₊`.
pub const DEG_PLUS: BiDegree = BiDegree::new(1, 0);
/// Degree of `v₋`.
pub const DEG_MINUS: BiDegree = BiDegree::new(0, -1);

pub const DEG_BIRTH: BiDegree = BiDegree::new(1, 0);
pub const DEG_DEATH: BiDegree = BiDegree::new(0, 1);
pub const DEG_MERGE: BiDegree = BiDegree::new(-1, 0);
pub const DEG_SPLIT: BiDegree = BiDegree::new(0, -1);

/// Which output of a split is the first tensor factor: the circle
/// through the left new arc of the saddle.
pub const SPLIT_LEFT_FIRST: bool = true;

fn label_deg(minus: bool) -> BiDegree {
    if minus {
        DEG_MINUS
    } else {
        DEG_PLUS
    }
}

/// A closed planar 1-manifold as a 2-regular multigraph. Nodes carry a
/// sort rank used to order circles canonically; edges carry a parity bit
/// recording crossings of an annular seam.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curves {
    pub rank: Vec<u64>,
    pub edges: Vec<(usize, usize)>,
    pub wind: Vec<bool>,
    pub alive: Vec<bool>,
}

/// One circle of a [`Curves`] value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub edges: Vec<usize>,
    pub key: u64,
    pub essential: bool,
}

impl Curves {
    pub fn new() -> Self {
        Curves { rank: Vec::new(), edges: Vec::new(), wind: Vec::new(), alive: Vec::new() }
    }

    pub fn add_node(&mut self, rank: u64) -> usize {
        self.rank.push(rank);
        self.rank.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push((a, b));
        self.wind.push(false);
        self.alive.push(true);
        self.edges.len() - 1
    }

    /// Adds a free circle and returns its edge.
    pub fn add_free_circle(&mut self, rank: u64) -> usize {
        let v = self.add_node(rank);
        self.add_edge(v, v)
    }

    /// Disjoint union; returns the node and edge offsets of `other`.
    pub fn append(&mut self, other: &Curves) -> (usize, usize) {
        let no = self.rank.len();
        let eo = self.edges.len();
        self.rank.extend_from_slice(&other.rank);
        self.edges.extend(other.edges.iter().map(|&(a, b)| (a + no, b + no)));
        self.wind.extend_from_slice(&other.wind);
        self.alive.extend_from_slice(&other.alive);
        (no, eo)
    }

    /// Component index of every alive edge.
    pub fn components(&self) -> Vec<usize> {
        let n = self.rank.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if self.alive[e] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        (0..self.edges.len())
            .map(|e| if self.alive[e] { find(&mut parent, self.edges[e].0) } else { usize::MAX })
            .collect()
    }

    /// Circles sorted by their minimal node rank.
    pub fn circles(&self) -> Vec<Circle> {
        let comp = self.components();
        let mut by: BTreeMap<usize, Circle> = BTreeMap::new();
        for (e, &c) in comp.iter().enumerate() {
            if c == usize::MAX {
                continue;
            }
            let (a, b) = self.edges[e];
            let key = self.rank[a].min(self.rank[b]);
            let ent = by.entry(c).or_insert(Circle { edges: Vec::new(), key: u64::MAX, essential: false });
            ent.edges.push(e);
            ent.key = ent.key.min(key);
            ent.essential ^= self.wind[e];
        }
        let mut v: Vec<Circle> = by.into_values().collect();
        v.sort_by_key(|c| (c.key, c.edges[0]));
        v
    }

    pub fn num_circles(&self) -> usize {
        self.circles().len()
    }

    fn circle_of(&self, comp: &[usize], order: &[usize], e: usize) -> usize {
        order.iter().position(|&r| comp[r] == comp[e]).expect("edge not on a listed circle")
    }
}

impl Default for Curves {
    fn default() -> Self {
        Curves::new()
    }
}

/// Builder output for a closed diagram made of stacked flat tangles.
#[derive(Clone, Debug)]
pub struct Stacked {
    pub curves: Curves,
    /// Edge index of every arc of every layer, in the layer's arc order.
    pub layer_edges: Vec<Vec<usize>>,
    /// Node indices of every interface between consecutive layers.
    pub levels: Vec<Vec<usize>>,
}

/// Stacks closed-off layers `layers[0]` (bottom, in `B_0^k`) through the
/// last (in `B_k^0`). Interface `i` lies between `layers[i]` and
/// `layers[i + 1]`; `rank(i, j)` gives the rank of its point `j`.
pub fn stack(layers: &[&FlatTangle], rank: impl Fn(usize, usize) -> u64, free_rank: u64) -> Stacked {
    let mut c = Curves::new();
    let mut levels = Vec::new();
    for (i, w) in layers.windows(2).enumerate() {
        assert_eq!(w[0].n, w[1].m, "layer boundary mismatch");
        levels.push((0..2 * w[0].n).map(|j| c.add_node(rank(i, j))).collect::<Vec<_>>());
    }
    assert_eq!(layers[0].m, 0);
    assert_eq!(layers[layers.len() - 1].n, 0);
    let mut layer_edges = Vec::new();
    let mut fr = free_rank;
    for (k, t) in layers.iter().enumerate() {
        let node = |p: usize| if p < 2 * t.m { levels[k - 1][p] } else { levels[k][p - 2 * t.m] };
        let mut es = Vec::new();
        for &(p, q) in &t.arcs {
            es.push(c.add_edge(node(p), node(q)));
        }
        for _ in 0..t.free {
            c.add_free_circle(fr);
            fr += 1;
        }
        layer_edges.push(es);
    }
    Stacked { curves: c, layer_edges, levels }
}

/// An elementary piece of a chronological cobordism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Handle {
    /// Saddle between edges `lower = (p, q)` and `upper = (r, s)`, which
    /// become `(p, r)` and `(q, s)`. `seam` marks saddles through the
    /// annular seam; `flip` reverses the framing.
    Saddle { lower: usize, upper: usize, seam: bool, flip: bool },
    Birth { rank: u64 },
    Death { edge: usize, flip: bool },
}

/// The kind of a saddle once it is placed in a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaddleKind {
    Merge,
    Split,
}

/// Local operation in terms of circle positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Merge { first: usize, second: usize, out: usize },
    Split { input: usize, first: usize, second: usize },
    Birth { out: usize },
    Death { input: usize, flip: bool },
}

impl Step {
    pub fn degree(&self) -> BiDegree {
        match self {
            Step::Merge { .. } => DEG_MERGE,
            Step::Split { .. } => DEG_SPLIT,
            Step::Birth { .. } => DEG_BIRTH,
            Step::Death { .. } => DEG_DEATH,
        }
    }
}

/// Applies a handle to `curves`, returning the abstract step. `order`
/// holds one representative edge per circle, in tensor order, and is
/// updated in place.
pub fn apply_handle(curves: &mut Curves, order: &mut Vec<usize>, h: &Handle) -> Step {
    match *h {
        Handle::Saddle { lower, upper, seam, flip } => {
            let comp = curves.components();
            let pl = curves.circle_of(&comp, order, lower);
            let pu = curves.circle_of(&comp, order, upper);
            let (p, q) = curves.edges[lower];
            let (r, s) = curves.edges[upper];
            curves.edges[lower] = (p, r);
            curves.edges[upper] = (q, s);
            curves.wind[lower] = seam;
            curves.wind[upper] = seam;
            if pl != pu {
                let out = pl.min(pu);
                let (first, second) = if flip { (pu, pl) } else { (pl, pu) };
                let rep = lower;
                let hi = pl.max(pu);
                order.remove(hi);
                order[out] = rep;
                Step::Merge { first, second, out }
            } else {
                order.remove(pl);
                order.insert(pl, upper);
                order.insert(pl, lower);
                let (left, right) = (pl, pl + 1);
                let (first, second) = if SPLIT_LEFT_FIRST ^ flip { (left, right) } else { (right, left) };
                Step::Split { input: pl, first, second }
            }
        }
        Handle::Birth { rank } => {
            let e = curves.add_free_circle(rank);
            order.push(e);
            Step::Birth { out: order.len() - 1 }
        }
        Handle::Death { edge, flip } => {
            let comp = curves.components();
            let pos = curves.circle_of(&comp, order, edge);
            let c = comp[edge];
            for (e, &ce) in comp.iter().enumerate() {
                if ce == c {
                    curves.alive[e] = false;
                }
            }
            order.remove(pos);
            Step::Death { input: pos, flip }
        }
    }
}

/// A vector in `V^{⊗k}`: bit `i` of the key set means `v₋` on factor `i`.
pub type TVec = BTreeMap<u64, RingElem>;

pub fn tvec_add(v: &mut TVec, key: u64, c: &RingElem) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(key).or_default();
    *e += c;
    if e.is_zero() {
        v.remove(&key);
    }
}

/// Degree of a basis tensor with `k` factors.
pub fn basis_degree(mask: u64, k: usize) -> BiDegree {
    let minus = (mask & ((1u64 << k) - 1)).count_ones() as i64;
    BiDegree::new(k as i64 - minus, -minus)
}

/// Braiding coefficient for reordering factors so that new position `i`
/// holds old position `perm[i]`.
pub fn permutation_unit(labels: &[bool], perm: &[usize]) -> Unit {
    let mut u = Unit::ONE;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            // perm[i] now precedes perm[j]; an inversion swaps them.
            if perm[i] > perm[j] {
                u = u * lambda(label_deg(labels[perm[j]]), label_deg(labels[perm[i]]));
            }
        }
    }
    u
}

/// Reorders the factors of `v` by `perm`, with braiding coefficients.
pub fn permute(v: &TVec, k: usize, perm: &[usize]) -> TVec {
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return v.clone();
    }
    let mut out = TVec::new();
    for (&mask, c) in v {
        let lab = bits(mask, k);
        let u = permutation_unit(&lab, perm);
        let fin: Vec<bool> = perm.iter().map(|&i| lab[i]).collect();
        tvec_add(&mut out, mask_of(&fin), &c.mul_unit(u));
    }
    out
}

fn bits(mask: u64, k: usize) -> Vec<bool> {
    (0..k).map(|i| mask >> i & 1 == 1).collect()
}

fn mask_of(labels: &[bool]) -> u64 {
    labels.iter().enumerate().fold(0, |m, (i, &b)| if b { m | 1 << i } else { m })
}

/// Applies a local map on the listed input positions, then places the
/// outputs at `out_pos` in the new ordering of length `k - ins + outs`.
fn apply_local(
    v: &TVec,
    k: usize,
    inputs: &[usize],
    out_pos: &[usize],
    local: impl Fn(&[bool]) -> Vec<(Vec<bool>, RingElem)>,
) -> TVec {
    let rest: Vec<usize> = (0..k).filter(|i| !inputs.contains(i)).collect();
    let k2 = rest.len() + out_pos.len();
    // New ordering: positions not in out_pos are filled by rest in order.
    let mut slot_src: Vec<Option<usize>> = vec![None; k2];
    for (o, &p) in out_pos.iter().enumerate() {
        slot_src[p] = Some(o);
    }
    let mut perm2 = Vec::with_capacity(k2);
    let mut ri = 0;
    for s in &slot_src {
        match s {
            Some(o) => perm2.push(*o),
            None => {
                perm2.push(out_pos.len() + ri);
                ri += 1;
            }
        }
    }
    let mut perm1: Vec<usize> = inputs.to_vec();
    perm1.extend(&rest);
    let mut out = TVec::new();
    for (&mask, c) in v {
        let lab = bits(mask, k);
        let u1 = permutation_unit(&lab, &perm1);
        let ins: Vec<bool> = inputs.iter().map(|&i| lab[i]).collect();
        let rest_lab: Vec<bool> = rest.iter().map(|&i| lab[i]).collect();
        for (outs, lc) in local(&ins) {
            let mut mid = outs.clone();
            mid.extend(&rest_lab);
            let u2 = permutation_unit(&mid, &perm2);
            let fin: Vec<bool> = perm2.iter().map(|&i| mid[i]).collect();
            let coef = (c * &lc).mul_unit(u1 * u2);
            tvec_add(&mut out, mask_of(&fin), &coef);
        }
    }
    out
}

fn xz() -> RingElem {
    RingElem::monomial(1, 0, 1, 1)
}

fn yz() -> RingElem {
    RingElem::monomial(0, 1, 1, 1)
}

/// Local merge `V ⊗ V → V`.
pub fn merge_local(l: &[bool]) -> Vec<(Vec<bool>, RingElem)> {
    match (l[0], l[1]) {
        (false, false) => vec![(vec![false], RingElem::one())],
        (false, true) => vec![(vec![true], RingElem::one())],
        (true, false) => vec![(vec![true], xz())],
        (true, true) => vec![],
    }
}

/// Local split `V → V ⊗ V`.
pub fn split_local(l: &[bool]) -> Vec<(Vec<bool>, RingElem)> {
    if l[0] {
        vec![(vec![true, true], RingElem::one())]
    } else {
        vec![(vec![true, false], RingElem::one()), (vec![false, true], yz())]
    }
}

/// Applies one abstract step to a tensor with `k` factors.
pub fn apply_step(v: &TVec, k: usize, step: &Step) -> TVec {
    match *step {
        Step::Merge { first, second, out } => apply_local(v, k, &[first, second], &[out], merge_local),
        Step::Split { input, first, second } => {
            // Positions refer to the new ordering.
            apply_local(v, k, &[input], &[first, second], split_local)
        }
        Step::Birth { out } => apply_local(v, k, &[], &[out], |_| vec![(vec![false], RingElem::one())]),
        Step::Death { input, flip } => apply_local(v, k, &[input], &[], move |l| {
            if l[0] {
                vec![(vec![], if flip { RingElem::y() } else { RingElem::one() })]
            } else {
                vec![]
            }
        }),
    }
}

/// A chronological cobordism: a source configuration and an ordered list
/// of handles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChronCob {
    pub source: Curves,
    pub handles: Vec<Handle>,
}

/// Evaluation trace of a cobordism.
#[derive(Clone, Debug)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub target: Curves,
    /// After each step, the reordering into canonical circle order:
    /// new position `i` holds old position `perms[s][i]`.
    pub perms: Vec<Vec<usize>>,
}

impl ChronCob {
    pub fn new(source: Curves, handles: Vec<Handle>) -> Self {
        ChronCob { source, handles }
    }

    pub fn trace(&self) -> Trace {
        let mut c = self.source.clone();
        let mut order: Vec<usize> = c.circles().iter().map(|ci| ci.edges[0]).collect();
        let mut steps = Vec::with_capacity(self.handles.len());
        let mut perms = Vec::with_capacity(self.handles.len());
        for h in &self.handles {
            steps.push(apply_handle(&mut c, &mut order, h));
            let comp = c.components();
            let canon = c.circles();
            perms.push(canon.iter().map(|ci| order.iter().position(|&r| comp[r] == comp[ci.edges[0]]).unwrap()).collect());
            order = canon.iter().map(|ci| ci.edges[0]).collect();
        }
        Trace { steps, target: c, perms }
    }

    pub fn target(&self) -> Curves {
        self.trace().target
    }

    pub fn saddle_kinds(&self) -> Vec<Option<SaddleKind>> {
        self.trace()
            .steps
            .iter()
            .map(|s| match s {
                Step::Merge { .. } => Some(SaddleKind::Merge),
                Step::Split { .. } => Some(SaddleKind::Split),
                _ => None,
            })
            .collect()
    }

    /// `(# births − # merges, # deaths − # splits)`.
    pub fn degree(&self) -> BiDegree {
        self.trace().steps.iter().fold(BiDegree::ZERO, |d, s| d + s.degree())
    }

    /// Evaluates the TQFT on a vector over the canonically ordered source
    /// circles; the result is over the canonically ordered target circles.
    pub fn apply(&self, v: &TVec) -> TVec {
        let tr = self.trace();
        self.apply_with(&tr, v)
    }

    fn apply_with(&self, tr: &Trace, v: &TVec) -> TVec {
        let mut k = self.source.num_circles();
        let mut cur = v.clone();
        for (s, perm) in tr.steps.iter().zip(&tr.perms) {
            cur = apply_step(&cur, k, s);
            k = perm.len();
            cur = permute(&cur, k, perm);
        }
        cur
    }

    /// The full matrix: image of every source basis vector.
    pub fn matrix(&self) -> Vec<TVec> {
        let tr = self.trace();
        let k = self.source.num_circles();
        (0..1u64 << k).map(|m| self.apply_with(&tr, &[(m, RingElem::one())].into_iter().collect())).collect()
    }

    /// Composite: `self` followed by the handles of `then`.
    pub fn then(&self, then: &[Handle]) -> ChronCob {
        let mut h = self.handles.clone();
        h.extend_from_slice(then);
        ChronCob { source: self.source.clone(), handles: h }
    }
}

/// Failure to extract a change-of-chronology coefficient.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IotaError {
    #[error("target configurations differ")]
    DifferentTargets,
    #[error("no unit relates the two maps")]
    NoUnit,
    #[error("all entries vanish")]
    NoEntry,
    #[error("{0} units relate the two maps")]
    Ambiguous(usize),
    #[error("handle lists are not permutations of each other")]
    NotPermutation,
}

/// Every unit `u` with `F(w2) = u · F(w1)`, checked on every matrix
/// entry, and the number of nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub units: Vec<Unit>,
    pub entries: usize,
}

impl Ratio {
    pub fn unique(&self) -> Result<Unit, IotaError> {
        match self.units.len() {
            1 => Ok(self.units[0]),
            0 => Err(IotaError::NoUnit),
            k => Err(IotaError::Ambiguous(k)),
        }
    }

    pub fn admits(&self, u: Unit) -> bool {
        self.units.contains(&u)
    }
}

/// The units relating `F(w1)` and `F(w2)`.
pub fn iota(w1: &ChronCob, w2: &ChronCob) -> Result<Ratio, IotaError> {
    let (t1, t2) = (w1.trace(), w2.trace());
    if t1.target.edges != t2.target.edges || t1.target.alive != t2.target.alive {
        return Err(IotaError::DifferentTargets);
    }
    let k = w1.source.num_circles();
    let mut found: Option<Vec<Unit>> = None;
    let mut entries = 0;
    for m in 0..1u64 << k {
        let v: TVec = [(m, RingElem::one())].into_iter().collect();
        let a = w1.apply_with(&t1, &v);
        let b = w2.apply_with(&t2, &v);
        let keys: std::collections::BTreeSet<u64> = a.keys().chain(b.keys()).copied().collect();
        for key in keys {
            let z = RingElem::zero();
            let (x, y) = (a.get(&key).unwrap_or(&z), b.get(&key).unwrap_or(&z));
            let us = RingElem::unit_ratios(y, x);
            found = Some(match found {
                None => us,
                Some(f) => f.into_iter().filter(|u| us.contains(u)).collect(),
            });
            if found.as_ref().is_some_and(|f| f.is_empty()) {
                return Err(IotaError::NoUnit);
            }
            entries += 1;
        }
    }
    found.map(|units| Ratio { units, entries }).ok_or(IotaError::NoEntry)
}

/// Change-of-chronology coefficient assembled from adjacent exchanges,
/// each evaluated on the circles its two handles touch.
pub fn iota_local(source: &Curves, from: &[Handle], to: &[Handle]) -> Result<Unit, IotaError> {
    if from.len() != to.len() || from.iter().any(|h| !to.contains(h)) {
        return Err(IotaError::NotPermutation);
    }
    let mut cur: Vec<Handle> = from.to_vec();
    let mut total = Unit::ONE;
    let pos = |h: &Handle| to.iter().position(|x| x == h).unwrap();
    loop {
        let mut swapped = false;
        for i in 0..cur.len().saturating_sub(1) {
            if pos(&cur[i]) > pos(&cur[i + 1]) {
                let c = ChronCob::new(source.clone(), cur[..i].to_vec()).target();
                total = total * elementary_exchange(&c, &cur[i], &cur[i + 1])?;
                cur.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            return Ok(total);
        }
    }
}

fn touched(c: &Curves, comp: &[usize], h: &Handle) -> Vec<usize> {
    match *h {
        Handle::Saddle { lower, upper, .. } => vec![comp[lower], comp[upper]],
        Handle::Death { edge, .. } => vec![comp[edge]],
        Handle::Birth { .. } => {
            let _ = c;
            vec![]
        }
    }
}

/// The unit `u` with `F(W') = u · F(W)` on `c`, where `W` does `h1`
/// first and `W'` does `h2` first, computed on
/// the circles touched by either handle. Disjoint handles give
/// `λ(deg h1, deg h2)`.
pub fn elementary_exchange(c: &Curves, h1: &Handle, h2: &Handle) -> Result<Unit, IotaError> {
    let comp = c.components();
    let mut keep = touched(c, &comp, h1);
    keep.extend(touched(c, &comp, h2));
    let mut local = c.clone();
    for (e, &ce) in comp.iter().enumerate() {
        if !keep.contains(&ce) {
            local.alive[e] = false;
        }
    }
    let w = ChronCob::new(local.clone(), vec![*h1, *h2]);
    let w2 = ChronCob::new(local, vec![*h2, *h1]);
    let r = iota(&w, &w2)?;
    if r.units.len() > 1 {
        if let Some(u) = ladybug(c, h1, h2) {
            return if r.admits(u) { Ok(u) } else { Err(IotaError::NoUnit) };
        }
    }
    r.unique()
}

/// Two saddles on one circle whose endpoints interleave: the first
/// splits it and the second joins the halves again. The value is `1`
/// when the second arrow starts on the circle right of the first arrow,
/// `XY` otherwise. `None` for any other configuration.
pub fn ladybug(c: &Curves, h1: &Handle, h2: &Handle) -> Option<Unit> {
    let (
        Handle::Saddle { lower: l1, upper: u1, flip: f1, .. },
        Handle::Saddle { lower: l2, upper: u2, flip: f2, .. },
    ) = (*h1, *h2)
    else {
        return None;
    };
    let comp = c.components();
    if [u1, l2, u2].iter().any(|&e| comp[e] != comp[l1]) {
        return None;
    }
    let after = ChronCob::new(c.clone(), vec![*h1]).target();
    let comp2 = after.components();
    if comp2[l2] == comp2[u2] {
        return None;
    }
    let right = if f1 { l1 } else { u1 };
    let tail = if f2 { u2 } else { l2 };
    Some(if comp2[tail] == comp2[right] { Unit::ONE } else { Unit::X * Unit::Y })
}

/// Hand-tabulated exchange values for pairs of saddles, following the
/// chart of elementary changes of chronology. `None` outside the chart.
pub fn chart_exchange(c: &Curves, h1: &Handle, h2: &Handle) -> Option<Unit> {
    let (
        Handle::Saddle { lower: l1, upper: u1, flip: f1, .. },
        Handle::Saddle { lower: l2, upper: u2, flip: f2, .. },
    ) = (*h1, *h2)
    else {
        return None;
    };
    let comp = c.components();
    let (a1, b1, a2, b2) = (comp[l1], comp[u1], comp[l2], comp[u2]);
    let s1: Vec<usize> = if a1 == b1 { vec![a1] } else { vec![a1, b1] };
    let s2: Vec<usize> = if a2 == b2 { vec![a2] } else { vec![a2, b2] };
    let kind = |s: &Vec<usize>| if s.len() == 2 { DEG_MERGE } else { DEG_SPLIT };
    let shared: Vec<usize> = s1.iter().filter(|x| s2.contains(x)).copied().collect();
    if shared.is_empty() {
        return Some(lambda(kind(&s1), kind(&s2)));
    }
    match (s1.len(), s2.len(), shared.len()) {
        (2, 2, 1) => Some(Unit::X),
        (2, 2, 2) => {
            let same_dir = (a1 == a2) ^ f1 ^ f2;
            Some(if same_dir { Unit::Y } else { Unit::X })
        }
        (2, 1, 1) => Some(Unit::Z),
        (1, 2, 1) => Some(Unit::Z.inv()),
        (1, 1, 1) => ladybug(c, h1, h2).or(Some(Unit::Y)),
        _ => None,
    }
}

/// [`iota_local`] with every exchange taken from [`chart_exchange`].
pub fn iota_chart(source: &Curves, from: &[Handle], to: &[Handle]) -> Option<Unit> {
    let mut cur: Vec<Handle> = from.to_vec();
    let mut total = Unit::ONE;
    let pos = |h: &Handle| to.iter().position(|x| x == h);
    loop {
        let mut swapped = false;
        for i in 0..cur.len().saturating_sub(1) {
            if pos(&cur[i])? > pos(&cur[i + 1])? {
                let c = ChronCob::new(source.clone(), cur[..i].to_vec()).target();
                total = total * chart_exchange(&c, &cur[i], &cur[i + 1])?;
                cur.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            return Some(total);
        }
    }
}

/// Matrix of a single saddle on `c` in canonical bases.
pub fn saddle_matrix(c: &Curves, h: Handle) -> Vec<TVec> {
    ChronCob::new(c.clone(), vec![h]).matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_circles() -> (Curves, usize, usize) {
        let mut c = Curves::new();
        let a0 = c.add_node(0);
        let a1 = c.add_node(1);
        let b0 = c.add_node(2);
        let b1 = c.add_node(3);
        let e1 = c.add_edge(a0, a1);
        c.add_edge(a1, a0);
        let e2 = c.add_edge(b0, b1);
        c.add_edge(b1, b0);
        (c, e1, e2)
    }

    #[test]
    fn merge_rules() {
        let (c, e1, e2) = two_circles();
        let w = ChronCob::new(c, vec![Handle::Saddle { lower: e1, upper: e2, seam: false, flip: false }]);
        let m = w.matrix();
        assert_eq!(m[0b01], [(1u64, xz())].into_iter().collect());
        assert!(m[0b11].is_empty());
        assert_eq!(w.degree(), DEG_MERGE);
    }

    #[test]
    fn split_then_merge() {
        let mut c = Curves::new();
        let n: Vec<usize> = (0..4).map(|i| c.add_node(i)).collect();
        let e0 = c.add_edge(n[0], n[1]);
        let e1 = c.add_edge(n[3], n[2]);
        c.add_edge(n[1], n[2]);
        c.add_edge(n[3], n[0]);
        let w = ChronCob::new(
            c,
            vec![
                Handle::Saddle { lower: e0, upper: e1, seam: false, flip: false },
                Handle::Saddle { lower: e0, upper: e1, seam: false, flip: false },
            ],
        );
        let m = w.matrix();
        assert_eq!(w.degree(), DEG_MERGE + DEG_SPLIT);
        let expected = &xz() + &yz();
        assert_eq!(m[0], [(1u64, expected)].into_iter().collect());
    }
}
