//! Grading categories: composition data with an associator 3-cocycle and
//! an optional looper, plus coherence checkers and generic constructions.

use crate::ring::Unit;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

/// A small category with an associator `α` valued in units of R and a
/// looper `ε` on 2-loops.
pub trait GradingCategory: Send + Sync {
    type Obj: Clone + Ord + Hash + Debug + Send + Sync;
    type Mor: Clone + Ord + Hash + Debug + Send + Sync;
    type Trace: Clone + Ord + Hash + Debug + Send + Sync;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    /// `g ∘ f`, defined when `target(f) = source(g)`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `α(f1, f2, f3)` for a path `f1` then `f2` then `f3`.
    fn alpha(&self, f1: &Self::Mor, f2: &Self::Mor, f3: &Self::Mor) -> Unit;
    /// `ε(f, g)` for a 2-loop.
    fn epsilon(&self, f: &Self::Mor, g: &Self::Mor) -> Unit;
    /// Class of an endomorphism in the trace of the category.
    fn trace(&self, f: &Self::Mor) -> Self::Trace;

    fn composable(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.target(f) == self.source(g)
    }

    fn is_loop(&self, f: &Self::Mor) -> bool {
        self.source(f) == self.target(f)
    }

    /// Composite of a path `fs[0]` then `fs[1]` then ...
    fn compose_path(&self, fs: &[Self::Mor]) -> Option<Self::Mor> {
        let mut it = fs.iter();
        let mut acc = it.next()?.clone();
        for f in it {
            acc = self.compose(f, &acc)?;
        }
        Some(acc)
    }
}

impl<C: GradingCategory + ?Sized> GradingCategory for Arc<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type Trace = C::Trace;
    fn source(&self, f: &Self::Mor) -> Self::Obj {
        (**self).source(f)
    }
    fn target(&self, f: &Self::Mor) -> Self::Obj {
        (**self).target(f)
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        (**self).compose(g, f)
    }
    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        (**self).identity(x)
    }
    fn alpha(&self, f1: &Self::Mor, f2: &Self::Mor, f3: &Self::Mor) -> Unit {
        (**self).alpha(f1, f2, f3)
    }
    fn epsilon(&self, f: &Self::Mor, g: &Self::Mor) -> Unit {
        (**self).epsilon(f, g)
    }
    fn trace(&self, f: &Self::Mor) -> Self::Trace {
        (**self).trace(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoherenceError {
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("morphisms do not form a loop")]
    NotLoop,
}

fn comp<C: GradingCategory>(c: &C, g: &C::Mor, f: &C::Mor) -> Result<C::Mor, CoherenceError> {
    c.compose(g, f).ok_or(CoherenceError::NotComposable)
}

/// The five-term coboundary `dα(f1, f2, f3, f4)`.
pub fn d_alpha<C: GradingCategory>(c: &C, p: &[C::Mor; 4]) -> Result<Unit, CoherenceError> {
    let [f1, f2, f3, f4] = p;
    let f43 = comp(c, f4, f3)?;
    let f32 = comp(c, f3, f2)?;
    let f21 = comp(c, f2, f1)?;
    Ok(c.alpha(f1, f2, f3)
        * c.alpha(f1, f2, &f43).inv()
        * c.alpha(f1, &f32, f4)
        * c.alpha(&f21, f3, f4).inv()
        * c.alpha(f2, f3, f4))
}

pub fn check_cocycle<C: GradingCategory>(c: &C, p: &[C::Mor; 4]) -> Result<bool, CoherenceError> {
    Ok(d_alpha(c, p)?.is_one())
}

/// The looper hexagon product for a 3-loop `h ∘ g ∘ f`.
pub fn looper_product<C: GradingCategory>(c: &C, l: &[C::Mor; 3]) -> Result<Unit, CoherenceError> {
    let [f, g, h] = l;
    let hg = comp(c, h, g)?;
    let fh = comp(c, f, h)?;
    let gf = comp(c, g, f)?;
    if !c.composable(h, f) {
        return Err(CoherenceError::NotLoop);
    }
    Ok(c.alpha(f, g, h)
        * c.epsilon(f, &hg)
        * c.alpha(g, h, f)
        * c.epsilon(g, &fh)
        * c.alpha(h, f, g)
        * c.epsilon(h, &gf))
}

/// `ε(f, g) ε(g, f) = 1` on a 2-loop.
pub fn check_antisymmetry<C: GradingCategory>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<bool, CoherenceError> {
    if !c.composable(f, g) || !c.composable(g, f) {
        return Err(CoherenceError::NotLoop);
    }
    Ok((c.epsilon(f, g) * c.epsilon(g, f)).is_one())
}

pub fn check_looper<C: GradingCategory>(c: &C, l: &[C::Mor; 3]) -> Result<bool, CoherenceError> {
    let hex = looper_product(c, l)?.is_one();
    let [f, g, h] = l;
    let hg = comp(c, h, g)?;
    let fh = comp(c, f, h)?;
    let gf = comp(c, g, f)?;
    Ok(hex
        && check_antisymmetry(c, f, &hg)?
        && check_antisymmetry(c, g, &fh)?
        && check_antisymmetry(c, h, &gf)?)
}

/// Typical unitors `L(Id_X, f) = α(Id_X, Id_X, f)^{-1}` and
/// `R(f, Id_Y) = α(f, Id_Y, Id_Y)`.
pub fn typical_unitors<C: GradingCategory>(c: &C, f: &C::Mor) -> (Unit, Unit) {
    let ix = c.identity(&c.source(f));
    let iy = c.identity(&c.target(f));
    (c.alpha(&ix, &ix, f).inv(), c.alpha(f, &iy, &iy))
}

pub fn left_unitor<C: GradingCategory>(c: &C, f: &C::Mor) -> Unit {
    typical_unitors(c, f).0
}

pub fn right_unitor<C: GradingCategory>(c: &C, f: &C::Mor) -> Unit {
    typical_unitors(c, f).1
}

/// `ζ(f) = α(Id_X, Id_X, f) α(f, Id_Y, Id_Y) = L^{-1} R`.
pub fn zeta<C: GradingCategory>(c: &C, f: &C::Mor) -> Unit {
    let (l, r) = typical_unitors(c, f);
    l.inv() * r
}

/// Checks the elementary consequences of the cocycle condition on a
/// composable pair `g: X → Y`, `h: Y → Z`. Returns the names of the
/// identities that fail.
pub fn check_assoc_identities<C: GradingCategory>(c: &C, g: &C::Mor, h: &C::Mor) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let (x, y, z) = (c.source(g), c.target(g), c.target(h));
    let (ix, iy, iz) = (c.identity(&x), c.identity(&y), c.identity(&z));
    let hg = c.compose(h, g).expect("composable pair");
    if !c.alpha(&ix, g, &iy).is_one() {
        bad.push("alpha(Id, g, Id) = 1");
    }
    if c.alpha(&ix, &ix, &hg) != c.alpha(&ix, g, h) * c.alpha(&ix, &ix, g) {
        bad.push("alpha(Id, Id, hg) = alpha(Id, g, h) alpha(Id, Id, g)");
    }
    if c.alpha(&hg, &iz, &iz) != c.alpha(g, h, &iz) * c.alpha(h, &iz, &iz) {
        bad.push("alpha(hg, Id, Id) = alpha(g, h, Id) alpha(h, Id, Id)");
    }
    if c.alpha(g, &iy, h) != c.alpha(g, &iy, &iy) * c.alpha(&iy, &iy, h) {
        bad.push("alpha(g, Id, h) = alpha(g, Id, Id) alpha(Id, Id, h)");
    }
    if !c.alpha(&ix, &ix, &ix).is_one() {
        bad.push("alpha(Id, Id, Id) = 1");
    }
    bad
}

/// All composable paths of length `k` drawn from `support`.
pub fn paths<C: GradingCategory>(c: &C, support: &[C::Mor], k: usize) -> Vec<Vec<C::Mor>> {
    let mut out: Vec<Vec<C::Mor>> = support.iter().map(|f| vec![f.clone()]).collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for p in &out {
            for f in support {
                if c.composable(p.last().unwrap(), f) {
                    let mut q = p.clone();
                    q.push(f.clone());
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Paths of length `k` that close into a loop.
pub fn loops<C: GradingCategory>(c: &C, support: &[C::Mor], k: usize) -> Vec<Vec<C::Mor>> {
    paths(c, support, k).into_iter().filter(|p| c.composable(p.last().unwrap(), &p[0])).collect()
}

/// Summary of a coherence sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct CoherenceReport {
    pub cocycle_paths: usize,
    pub cocycle_failures: usize,
    pub looper_loops: usize,
    pub looper_failures: usize,
    pub two_loops: usize,
    pub antisymmetry_failures: usize,
}

impl CoherenceReport {
    pub fn ok(&self) -> bool {
        self.cocycle_failures == 0 && self.looper_failures == 0 && self.antisymmetry_failures == 0
    }
}

/// Exhaustive cocycle, hexagon and antisymmetry sweep over a support.
pub fn coherence_sweep<C: GradingCategory>(c: &C, support: &[C::Mor]) -> CoherenceReport {
    use rayon::prelude::*;
    let mut r = CoherenceReport::default();
    let p4 = paths(c, support, 4);
    r.cocycle_paths = p4.len();
    r.cocycle_failures = p4
        .par_iter()
        .filter(|p| !check_cocycle(c, &[p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()]).unwrap())
        .count();
    let l3 = loops(c, support, 3);
    r.looper_loops = l3.len();
    r.looper_failures =
        l3.par_iter().filter(|l| !check_looper(c, &[l[0].clone(), l[1].clone(), l[2].clone()]).unwrap()).count();
    let l2 = loops(c, support, 2);
    r.two_loops = l2.len();
    r.antisymmetry_failures = l2.iter().filter(|l| !check_antisymmetry(c, &l[0], &l[1]).unwrap()).count();
    r
}

/// The opposite grading category: arrows reversed,
/// `α^op(f3, f2, f1) = α(f1, f2, f3)^{-1}`.
#[derive(Clone, Debug)]
pub struct Opposite<C>(pub C);

impl<C: GradingCategory> GradingCategory for Opposite<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type Trace = C::Trace;
    fn source(&self, f: &C::Mor) -> C::Obj {
        self.0.target(f)
    }
    fn target(&self, f: &C::Mor) -> C::Obj {
        self.0.source(f)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> Option<C::Mor> {
        self.0.compose(f, g)
    }
    fn identity(&self, x: &C::Obj) -> C::Mor {
        self.0.identity(x)
    }
    fn alpha(&self, f1: &C::Mor, f2: &C::Mor, f3: &C::Mor) -> Unit {
        self.0.alpha(f3, f2, f1).inv()
    }
    fn epsilon(&self, f: &C::Mor, g: &C::Mor) -> Unit {
        self.0.epsilon(f, g).inv()
    }
    fn trace(&self, f: &C::Mor) -> C::Trace {
        self.0.trace(f)
    }
}

/// Product of two grading categories with `α × β` and `ε × ε'`.
#[derive(Clone, Debug)]
pub struct Product<A, B>(pub A, pub B);

impl<A: GradingCategory, B: GradingCategory> GradingCategory for Product<A, B> {
    type Obj = (A::Obj, B::Obj);
    type Mor = (A::Mor, B::Mor);
    type Trace = (A::Trace, B::Trace);
    fn source(&self, f: &Self::Mor) -> Self::Obj {
        (self.0.source(&f.0), self.1.source(&f.1))
    }
    fn target(&self, f: &Self::Mor) -> Self::Obj {
        (self.0.target(&f.0), self.1.target(&f.1))
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        Some((self.0.compose(&g.0, &f.0)?, self.1.compose(&g.1, &f.1)?))
    }
    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        (self.0.identity(&x.0), self.1.identity(&x.1))
    }
    fn alpha(&self, f1: &Self::Mor, f2: &Self::Mor, f3: &Self::Mor) -> Unit {
        self.0.alpha(&f1.0, &f2.0, &f3.0) * self.1.alpha(&f1.1, &f2.1, &f3.1)
    }
    fn epsilon(&self, f: &Self::Mor, g: &Self::Mor) -> Unit {
        self.0.epsilon(&f.0, &g.0) * self.1.epsilon(&f.1, &g.1)
    }
    fn trace(&self, f: &Self::Mor) -> Self::Trace {
        (self.0.trace(&f.0), self.1.trace(&f.1))
    }
}

/// A one-object category `BG` for a finite group given by its
/// multiplication table, with optional tabulated `α` and `ε`.
#[derive(Clone, Debug)]
pub struct GroupCategory {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub alpha_table: BTreeMap<(usize, usize, usize), Unit>,
    pub epsilon_table: BTreeMap<(usize, usize), Unit>,
}

impl GroupCategory {
    /// `BG` with `α ≡ 1` and `ε ≡ 1`.
    pub fn trivial(table: Vec<Vec<usize>>) -> Self {
        let identity = (0..table.len()).find(|&e| (0..table.len()).all(|g| table[e][g] == g)).expect("no identity");
        GroupCategory { table, identity, alpha_table: BTreeMap::new(), epsilon_table: BTreeMap::new() }
    }

    /// The cyclic group `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        GroupCategory::trivial((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }

    fn conj_class(&self, g: usize) -> usize {
        let n = self.order();
        let inv = |x: usize| (0..n).find(|&y| self.table[x][y] == self.identity).unwrap();
        (0..n).map(|h| self.table[self.table[h][g]][inv(h)]).min().unwrap()
    }
}

impl GradingCategory for GroupCategory {
    type Obj = ();
    type Mor = usize;
    type Trace = usize;
    fn source(&self, _: &usize) {}
    fn target(&self, _: &usize) {}
    fn compose(&self, g: &usize, f: &usize) -> Option<usize> {
        Some(self.table[*f][*g])
    }
    fn identity(&self, _: &()) -> usize {
        self.identity
    }
    fn alpha(&self, f1: &usize, f2: &usize, f3: &usize) -> Unit {
        self.alpha_table.get(&(*f1, *f2, *f3)).copied().unwrap_or(Unit::ONE)
    }
    fn epsilon(&self, f: &usize, g: &usize) -> Unit {
        self.epsilon_table.get(&(*f, *g)).copied().unwrap_or(Unit::ONE)
    }
    fn trace(&self, f: &usize) -> usize {
        self.conj_class(*f)
    }
}

/// Wraps a category and multiplies `α` at one triple by a unit.
#[derive(Clone, Debug)]
pub struct PerturbedAlpha<C: GradingCategory> {
    pub inner: C,
    pub at: (C::Mor, C::Mor, C::Mor),
    pub by: Unit,
}

impl<C: GradingCategory> GradingCategory for PerturbedAlpha<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type Trace = C::Trace;
    fn source(&self, f: &C::Mor) -> C::Obj {
        self.inner.source(f)
    }
    fn target(&self, f: &C::Mor) -> C::Obj {
        self.inner.target(f)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> Option<C::Mor> {
        self.inner.compose(g, f)
    }
    fn identity(&self, x: &C::Obj) -> C::Mor {
        self.inner.identity(x)
    }
    fn alpha(&self, f1: &C::Mor, f2: &C::Mor, f3: &C::Mor) -> Unit {
        let a = self.inner.alpha(f1, f2, f3);
        if (f1, f2, f3) == (&self.at.0, &self.at.1, &self.at.2) {
            a * self.by
        } else {
            a
        }
    }
    fn epsilon(&self, f: &C::Mor, g: &C::Mor) -> Unit {
        self.inner.epsilon(f, g)
    }
    fn trace(&self, f: &C::Mor) -> C::Trace {
        self.inner.trace(f)
    }
}

/// Replaces `α` by the constant 1, keeping composition.
#[derive(Clone, Debug)]
pub struct TrivializedAlpha<C>(pub C);

impl<C: GradingCategory> GradingCategory for TrivializedAlpha<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type Trace = C::Trace;
    fn source(&self, f: &C::Mor) -> C::Obj {
        self.0.source(f)
    }
    fn target(&self, f: &C::Mor) -> C::Obj {
        self.0.target(f)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> Option<C::Mor> {
        self.0.compose(g, f)
    }
    fn identity(&self, x: &C::Obj) -> C::Mor {
        self.0.identity(x)
    }
    fn alpha(&self, _: &C::Mor, _: &C::Mor, _: &C::Mor) -> Unit {
        Unit::ONE
    }
    fn epsilon(&self, f: &C::Mor, g: &C::Mor) -> Unit {
        self.0.epsilon(f, g)
    }
    fn trace(&self, f: &C::Mor) -> C::Trace {
        self.0.trace(f)
    }
}

/// Replaces both `α` and `ε` by 1.
#[derive(Clone, Debug)]
pub struct Trivialized<C>(pub C);

impl<C: GradingCategory> GradingCategory for Trivialized<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type Trace = C::Trace;
    fn source(&self, f: &C::Mor) -> C::Obj {
        self.0.source(f)
    }
    fn target(&self, f: &C::Mor) -> C::Obj {
        self.0.target(f)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> Option<C::Mor> {
        self.0.compose(g, f)
    }
    fn identity(&self, x: &C::Obj) -> C::Mor {
        self.0.identity(x)
    }
    fn alpha(&self, _: &C::Mor, _: &C::Mor, _: &C::Mor) -> Unit {
        Unit::ONE
    }
    fn epsilon(&self, _: &C::Mor, _: &C::Mor) -> Unit {
        Unit::ONE
    }
    fn trace(&self, f: &C::Mor) -> C::Trace {
        self.0.trace(f)
    }
}
