//! The C-graded center, invariants, and the reduced Hochschild cochain
//! complex `C^n(A, M)` of grading-preserving cochains.

use crate::bar::{prefixes, words, BarComplex, WordBasis};
use crate::category::{left_unitor, right_unitor, zeta, GradingCategory};
use crate::complex::{ComplexR, Generator};
use crate::graded::{basis_vec, vadd, vaxpy, GradedAlgebra, GradedBimodule, Vector};
use crate::ring::{RingElem, Unit};
use crate::solve::{r_kernel, residual, RKernel, RSystem};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

fn to_vector(v: &[RingElem]) -> Vector {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn to_dense(v: &Vector, n: usize) -> Vec<RingElem> {
    let mut out = vec![RingElem::zero(); n];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

/// Adds `coef · (image of unknown j)` to the rows of a system, one row per
/// output coordinate `(block, k)`.
fn push_rows(rows: &mut BTreeMap<(usize, usize), BTreeMap<usize, RingElem>>, block: usize, j: usize, image: &Vector, coef: &RingElem) {
    for (&k, x) in image {
        let e = rows.entry((block, k)).or_default().entry(j).or_default();
        *e += &(coef * x);
    }
}

fn finish(unknowns: usize, rows: BTreeMap<(usize, usize), BTreeMap<usize, RingElem>>) -> RSystem {
    let rows = rows
        .into_values()
        .map(|mut r| {
            r.retain(|_, x| !x.is_zero());
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    RSystem { unknowns, rows }
}

/// A solved submodule of a free module with its defining system.
#[derive(Clone, Debug)]
pub struct Solved {
    pub system: RSystem,
    pub kernel: RKernel,
}

impl Solved {
    fn new(system: RSystem) -> Self {
        let kernel = r_kernel(&system);
        Solved { system, kernel }
    }

    pub fn generators(&self) -> Vec<Vector> {
        self.kernel.gens.iter().map(|g| to_vector(g)).collect()
    }

    /// Every generator satisfies the system exactly over R.
    pub fn validated(&self) -> bool {
        self.kernel.gens.iter().chain(&self.kernel.extra).all(|g| residual(&self.system, g) == 0)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.kernel.contains(&to_dense(v, self.system.unknowns))
    }
}

/// `Z^C(A) = {z : μ(a, z) = ζ(|a|) μ(z, a)}`.
pub fn center<C: GradingCategory>(a: &GradedAlgebra<C>) -> Solved {
    let c = a.cat();
    let mut rows = BTreeMap::new();
    for x in 0..a.dim() {
        let zt = zeta(c, a.deg(x));
        for j in 0..a.dim() {
            push_rows(&mut rows, x, j, &a.mul_basis(x, j), &RingElem::one());
            push_rows(&mut rows, x, j, &a.mul_basis(j, x), &-zt.to_elem());
        }
    }
    Solved::new(finish(a.dim(), rows))
}

/// `M^A_C = {m : ρ_L(a, m) = ζ(|a|) ρ_R(m, a)}`.
pub fn invariants<C: GradingCategory>(m: &GradedBimodule<C>) -> Solved {
    let c = m.cat();
    let a = &m.left;
    let mut rows = BTreeMap::new();
    for x in 0..a.dim() {
        let zt = zeta(c, a.deg(x));
        for j in 0..m.dim() {
            let l = m.rho_l.get(&(x, j)).cloned().unwrap_or_default();
            let r = m.rho_r.get(&(j, x)).cloned().unwrap_or_default();
            push_rows(&mut rows, x, j, &l, &RingElem::one());
            push_rows(&mut rows, x, j, &r, &-zt.to_elem());
        }
    }
    Solved::new(finish(m.dim(), rows))
}

/// The single grading class of grading-preserving cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IdShift;

impl fmt::Display for IdShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Id")
    }
}

/// How the explicit differential reads the empty composite in its first
/// contraction term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmptyPrefix {
    One,
    Identity,
}

/// Which formula builds `𝖽`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `φ_{n+1} ∘ (− ∘ ∂) ∘ ψ_n`.
    Definition,
    Explicit(EmptyPrefix),
}

/// `coef · ρ_R(ρ_L(left, f(inner)), right)`, with absent actions skipped.
#[derive(Clone, Debug)]
struct Face {
    inner: Vec<usize>,
    left: Option<usize>,
    right: Option<usize>,
    coef: RingElem,
}

/// `C^n(A, M)`: basis `(a₁ ⊗ ⋯ ⊗ a_n, m)` with `|m| = |a_n| ∘ ⋯ ∘ |a₁|`,
/// and for `n = 0` the elements `m` of identity degree.
#[derive(Clone, Debug)]
pub struct CochainComplex<C: GradingCategory> {
    pub bim: Arc<GradedBimodule<C>>,
    pub words: Vec<WordBasis>,
    pub levels: Vec<Vec<(usize, usize)>>,
    pub index: Vec<HashMap<(usize, usize), usize>>,
    by_word: Vec<HashMap<usize, Vec<usize>>>,
    units: HashMap<C::Obj, usize>,
}

impl<C: GradingCategory> CochainComplex<C> {
    pub fn new(bim: Arc<GradedBimodule<C>>, nmax: usize) -> Self {
        let c = bim.cat();
        let a = bim.left.clone();
        let units = a
            .units
            .iter()
            .map(|(o, v)| {
                let (&i, x) = v.iter().next().expect("empty unit");
                assert!(v.len() == 1 && x.is_one(), "units must be basis elements");
                (o.clone(), i)
            })
            .collect();
        let mut by_deg: HashMap<C::Mor, Vec<usize>> = HashMap::new();
        for i in 0..bim.dim() {
            by_deg.entry(bim.deg(i).clone()).or_default().push(i);
        }
        let mut ws = Vec::new();
        let mut levels = Vec::new();
        let mut index = Vec::new();
        let mut by_word = Vec::new();
        for n in 0..=nmax {
            let wb = if n == 0 { WordBasis::new(vec![vec![]]) } else { WordBasis::new(words(&a.module, &a.module, n)) };
            let mut lv = Vec::new();
            for (wi, w) in wb.words.iter().enumerate() {
                let ms: Vec<usize> = if n == 0 {
                    (0..bim.dim()).filter(|&i| *bim.deg(i) == c.identity(&c.source(bim.deg(i)))).collect()
                } else {
                    let degs: Vec<&C::Mor> = w.iter().map(|&i| a.deg(i)).collect();
                    by_deg.get(prefixes(c, &degs).last().unwrap()).cloned().unwrap_or_default()
                };
                lv.extend(ms.into_iter().map(|m| (wi, m)));
            }
            let idx: HashMap<(usize, usize), usize> = lv.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            let mut bw: HashMap<usize, Vec<usize>> = HashMap::new();
            for (k, &(wi, _)) in lv.iter().enumerate() {
                bw.entry(wi).or_default().push(k);
            }
            ws.push(wb);
            levels.push(lv);
            index.push(idx);
            by_word.push(bw);
        }
        CochainComplex { bim, words: ws, levels, index, by_word, units }
    }

    fn alg(&self) -> &GradedAlgebra<C> {
        &self.bim.left
    }

    fn unit(&self, o: &C::Obj) -> usize {
        self.units[o]
    }

    fn degs(&self, w: &[usize]) -> Vec<&C::Mor> {
        w.iter().map(|&i| self.alg().deg(i)).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    /// `f(w)` for a cochain in `C^n`.
    pub fn eval(&self, n: usize, f: &Vector, w: &[usize]) -> Vector {
        let mut out = Vector::new();
        let Some(wi) = self.words[n].get(w) else { return out };
        for &k in self.by_word[n].get(&wi).into_iter().flatten() {
            if let Some(x) = f.get(&k) {
                vadd(&mut out, self.levels[n][k].1, x);
            }
        }
        out
    }

    /// Collects `(w, m) ↦ x` into a cochain in `C^n`.
    fn cochain(&self, n: usize, w: &[usize], v: &Vector) -> Vector {
        let wi = self.words[n].get(w).expect("word outside the cochain basis");
        v.iter()
            .map(|(&m, x)| (*self.index[n].get(&(wi, m)).expect("value has the wrong degree"), x.clone()))
            .collect()
    }

    fn apply_face(&self, face: &Face, value: &Vector) -> Vector {
        let bv = basis_vec;
        let mut v = value.clone();
        if let Some(a) = face.left {
            v = self.bim.act_l(&bv(a), &v);
        }
        if let Some(a) = face.right {
            v = self.bim.act_r(&v, &bv(a));
        }
        v.into_iter().map(|(k, x)| (k, &face.coef * &x)).filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `ψ_k(f)(b₀ ⊗ ⋯ ⊗ b_{k+1})` as a face on `f`.
    fn psi_face(&self, k: usize, b: &[usize]) -> Face {
        let c = self.bim.cat();
        let degs = self.degs(b);
        let coef = if k == 0 {
            right_unitor(c, degs[0]).inv()
        } else {
            let pre = prefixes(c, &degs[1..]);
            (1..k).fold(Unit::ONE, |u, i| u * c.alpha(degs[0], &pre[i - 1], degs[i + 1]))
        };
        Face { inner: b[1..=k].to_vec(), left: Some(b[0]), right: Some(b[k + 1]), coef: coef.to_elem() }
    }

    /// `ψ_k(f)` evaluated on a word of length `k + 2`.
    pub fn psi(&self, k: usize, f: &Vector, b: &[usize]) -> Vector {
        let face = self.psi_face(k, b);
        let inner = if k == 0 { self.eval_unit(f, &self.bim.cat().target(self.alg().deg(b[0]))) } else { self.eval(k, f, &face.inner) };
        self.apply_face(&face, &inner)
    }

    /// `ξ(1_X)` for `ξ ∈ C^0`.
    fn eval_unit(&self, f: &Vector, x: &C::Obj) -> Vector {
        let c = self.bim.cat();
        let id = c.identity(x);
        let mut out = Vector::new();
        for (&k, v) in f {
            let m = self.levels[0][k].1;
            if *self.bim.deg(m) == id {
                vadd(&mut out, m, v);
            }
        }
        out
    }

    /// `1_X ⊗ a₁ ⊗ ⋯ ⊗ a_n ⊗ 1_Y` and the scalar `φ_n` puts in front of `g` on it.
    fn phi_frame(&self, w: &[usize], obj: Option<&C::Obj>) -> (Vec<usize>, Unit) {
        let c = self.bim.cat();
        if w.is_empty() {
            let o = obj.expect("object for an empty word");
            return (vec![self.unit(o), self.unit(o)], Unit::ONE);
        }
        let degs = self.degs(w);
        let pre = prefixes(c, &degs);
        let comp = pre.last().unwrap();
        let x = c.source(degs[0]);
        let y = c.target(comp);
        let idx = c.identity(&x);
        let mut u = left_unitor(c, comp).inv() * right_unitor(c, comp).inv();
        for i in 1..w.len() {
            u = u * c.alpha(&idx, &pre[i - 1], degs[i]).inv();
        }
        let mut full = vec![self.unit(&x)];
        full.extend_from_slice(w);
        full.push(self.unit(&y));
        (full, u)
    }

    /// `φ_n(g)` for a grading-preserving map `g` on words of length `n + 2`.
    pub fn phi(&self, n: usize, g: impl Fn(&[usize]) -> Vector) -> Vector {
        let mut out = Vector::new();
        if n == 0 {
            for o in self.alg().units.keys() {
                let (full, _) = self.phi_frame(&[], Some(o));
                for (&m, x) in &g(&full) {
                    let k = *self.index[0].get(&(0, m)).expect("value has the wrong degree");
                    vadd(&mut out, k, x);
                }
            }
            return out;
        }
        for w in &self.words[n].words {
            let (full, u) = self.phi_frame(w, None);
            let v = crate::graded::vscale(&g(&full), u);
            for (k, x) in self.cochain(n, w, &v) {
                vadd(&mut out, k, &x);
            }
        }
        out
    }

    /// Faces of `(𝖽^{n-1} f)(w)` for a word `w` of length `n`.
    fn faces(&self, n: usize, w: &[usize], route: Route) -> Vec<Face> {
        let c = self.bim.cat();
        let a = self.alg();
        let degs = self.degs(w);
        let pre = prefixes(c, &degs);
        let mut out = Vec::new();
        match route {
            Route::Definition => {
                let (full, u) = self.phi_frame(w, None);
                let fd = self.degs(&full);
                let fpre = prefixes(c, &fd);
                for i in 0..=n {
                    let s = if i == 0 { Unit::ONE } else { c.alpha(&fpre[i - 1], fd[i], fd[i + 1]) };
                    let s = if i % 2 == 1 { s * Unit::MINUS_ONE } else { s };
                    for (&k, x) in &a.mul_basis(full[i], full[i + 1]) {
                        let mut b = full[..i].to_vec();
                        b.push(k);
                        b.extend_from_slice(&full[i + 2..]);
                        let mut face = self.psi_face(n - 1, &b);
                        face.coef = x.mul_unit(u * s) * face.coef;
                        out.push(face);
                    }
                }
            }
            Route::Explicit(_) if n == 1 => {
                out.push(Face { inner: vec![], left: Some(w[0]), right: None, coef: right_unitor(c, degs[0]).inv().to_elem() });
                out.push(Face { inner: vec![], left: None, right: Some(w[0]), coef: -left_unitor(c, degs[0]).inv().to_elem() });
            }
            Route::Explicit(empty) => {
                let tail = prefixes(c, &degs[1..]);
                let u = (2..n).fold(Unit::ONE, |u, i| u * c.alpha(degs[0], &tail[i - 2], degs[i]));
                out.push(Face { inner: w[1..].to_vec(), left: Some(w[0]), right: None, coef: u.to_elem() });
                for i in 1..n {
                    let al = if i >= 2 {
                        c.alpha(&pre[i - 2], degs[i - 1], degs[i])
                    } else {
                        match empty {
                            EmptyPrefix::One => Unit::ONE,
                            EmptyPrefix::Identity => c.alpha(&c.identity(&c.source(degs[0])), degs[0], degs[1]),
                        }
                    };
                    let s = if i % 2 == 1 { al * Unit::MINUS_ONE } else { al };
                    for (&k, x) in &a.mul_basis(w[i - 1], w[i]) {
                        let mut inner = w[..i - 1].to_vec();
                        inner.push(k);
                        inner.extend_from_slice(&w[i + 1..]);
                        out.push(Face { inner, left: None, right: None, coef: x.mul_unit(s) });
                    }
                }
                let s = if n % 2 == 1 { Unit::MINUS_ONE } else { Unit::ONE };
                out.push(Face { inner: w[..n - 1].to_vec(), left: None, right: Some(w[n - 1]), coef: s.to_elem() });
            }
        }
        out
    }

    /// The matrix of `𝖽^{n-1}: C^{n-1} → C^n`.
    pub fn differential(&self, n: usize, route: Route) -> crate::homology::SparseMat<RingElem> {
        let rows: Vec<Vec<((usize, usize), RingElem)>> = (0..self.words[n].len())
            .into_par_iter()
            .map(|wi| {
                let w = &self.words[n].words[wi];
                let mut acc: BTreeMap<(usize, usize), RingElem> = BTreeMap::new();
                for face in self.faces(n, w, route) {
                    let Some(iw) = self.words[n - 1].get(&face.inner) else { continue };
                    for &col in self.by_word[n - 1].get(&iw).into_iter().flatten() {
                        let m = self.levels[n - 1][col].1;
                        let v = self.apply_face(&face, &basis_vec(m));
                        for (row, x) in self.cochain(n, w, &v) {
                            *acc.entry((row, col)).or_default() += &x;
                        }
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        let mut mat = crate::homology::SparseMat::new(self.dim(n), self.dim(n - 1));
        mat.entries = rows.into_iter().flatten().collect();
        mat
    }

    pub fn label(&self, n: usize, k: usize) -> String {
        let (wi, m) = self.levels[n][k];
        let a = &self.alg().module.basis;
        let w: Vec<&str> = self.words[n].words[wi].iter().map(|&i| a[i].label.as_str()).collect();
        format!("{}->{}", w.join("|"), self.bim.module.basis[m].label)
    }

    /// `C^0 → ⋯ → C^nmax`; cohomology is reported below `nmax`.
    pub fn complex(&self, route: Route) -> ComplexR<IdShift> {
        let nmax = self.levels.len() - 1;
        let mut gens = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for n in 0..=nmax {
            gens.insert(n as i64, (0..self.dim(n)).map(|k| Generator { label: self.label(n, k), grade: IdShift }).collect());
            if n > 0 {
                maps.insert(n as i64 - 1, self.differential(n, route));
            }
        }
        ComplexR { step: 1, gens, maps, reported: (0..nmax as i64).collect() }
    }

    /// Kernel of `𝖽^1` over R.
    pub fn derivations(&self) -> Solved {
        let d = self.differential(2, Route::Definition);
        let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, RingElem>> = BTreeMap::new();
        for (&(i, j), x) in &d.entries {
            rows.entry((0, i)).or_default().insert(j, x.clone());
        }
        Solved::new(finish(self.dim(1), rows))
    }

    /// Kernel of `𝖽^0` over R, as elements of `M`.
    pub fn cocycles0(&self) -> Vec<Vector> {
        let d = self.differential(1, Route::Definition);
        let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, RingElem>> = BTreeMap::new();
        for (&(i, j), x) in &d.entries {
            rows.entry((0, i)).or_default().insert(j, x.clone());
        }
        let s = Solved::new(finish(self.dim(0), rows));
        s.generators().iter().map(|g| g.iter().map(|(&k, x)| (self.levels[0][k].1, x.clone())).collect()).collect()
    }

    /// Pairs `(a₁, a₂)` where a cochain in `C^1` violates
    /// `f(μ(a₁, a₂)) = ρ_L(a₁, f(a₂)) + ρ_R(f(a₁), a₂)`.
    pub fn derivation_law_failures(&self, f: &Vector) -> Vec<(usize, usize)> {
        let a = self.alg();
        let c = self.bim.cat();
        let mut bad = Vec::new();
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                if !c.composable(a.deg(x), a.deg(y)) {
                    continue;
                }
                let mut lhs = Vector::new();
                for (&k, r) in &a.mul_basis(x, y) {
                    vaxpy(&mut lhs, r, &self.eval(1, f, &[k]));
                }
                let mut rhs = self.bim.act_l(&basis_vec(x), &self.eval(1, f, &[y]));
                for (k, r) in self.bim.act_r(&self.eval(1, f, &[x]), &basis_vec(y)) {
                    vadd(&mut rhs, k, &r);
                }
                if lhs != rhs {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    /// Checks `φ_k ∘ ψ_k = id` on the basis of `C^k` and `ψ_k ∘ φ_k = id` on
    /// an R-spanning set of bimodule maps `A^{⊗k+2} → M`. Returns the number
    /// of failures and the size of the spanning set.
    pub fn psi_phi_check(&self, k: usize) -> (usize, usize) {
        let mut bad = 0;
        for j in 0..self.dim(k) {
            let f = basis_vec(j);
            if self.phi(k, |b| self.psi(k, &f, b)) != f {
                bad += 1;
            }
        }
        let maps = self.bimodule_maps(k);
        let bar = BarComplex::new(self.bim.left.clone(), k);
        for g in &maps {
            let eval = |b: &[usize]| -> Vector {
                let wi = bar.levels[k].get(b).unwrap();
                g.iter().filter(|((w, _), _)| *w == wi).map(|((_, m), x)| (*m, x.clone())).collect()
            };
            let f = self.phi(k, eval);
            for b in &bar.levels[k].words {
                if self.psi(k, &f, b) != eval(b) {
                    bad += 1;
                    break;
                }
            }
        }
        (bad, maps.len())
    }

    /// An R-spanning set of grading-preserving bimodule maps `B_k → M`,
    /// keyed by `(bar word index, m)`.
    pub fn bimodule_maps(&self, k: usize) -> Vec<BTreeMap<(usize, usize), RingElem>> {
        let c = self.bim.cat();
        let a = self.alg();
        let bar = BarComplex::new(self.bim.left.clone(), k);
        let lv = &bar.levels[k];
        let mut by_deg: HashMap<C::Mor, Vec<usize>> = HashMap::new();
        for i in 0..self.bim.dim() {
            by_deg.entry(self.bim.deg(i).clone()).or_default().push(i);
        }
        let mut unknowns: Vec<(usize, usize)> = Vec::new();
        for wi in 0..lv.len() {
            for &m in by_deg.get(&bar.degree(k, wi)).into_iter().flatten() {
                unknowns.push((wi, m));
            }
        }
        let by_w: HashMap<usize, Vec<(usize, usize)>> = unknowns.iter().enumerate().fold(HashMap::new(), |mut h, (i, &(w, m))| {
            h.entry(w).or_default().push((i, m));
            h
        });
        let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, RingElem>> = BTreeMap::new();
        let mut block = 0;
        for x in 0..a.dim() {
            for wi in 0..lv.len() {
                if c.composable(a.deg(x), &bar.degree(k, wi)) {
                    // g(ρ_L(a, w)) − ρ_L(a, g(w))
                    for (&w2, r) in &bar.act_l(x, k, wi) {
                        for &(j, m) in by_w.get(&w2).into_iter().flatten() {
                            push_rows(&mut rows, block, j, &basis_vec(m), r);
                        }
                    }
                    for &(j, m) in by_w.get(&wi).into_iter().flatten() {
                        push_rows(&mut rows, block, j, &self.bim.act_l(&basis_vec(x), &basis_vec(m)), &-RingElem::one());
                    }
                    block += 1;
                }
                if c.composable(&bar.degree(k, wi), a.deg(x)) {
                    for (&w2, r) in &bar.act_r(k, wi, x) {
                        for &(j, m) in by_w.get(&w2).into_iter().flatten() {
                            push_rows(&mut rows, block, j, &basis_vec(m), r);
                        }
                    }
                    for &(j, m) in by_w.get(&wi).into_iter().flatten() {
                        push_rows(&mut rows, block, j, &self.bim.act_r(&basis_vec(m), &basis_vec(x)), &-RingElem::one());
                    }
                    block += 1;
                }
            }
        }
        let s = Solved::new(finish(unknowns.len(), rows));
        assert!(s.validated(), "bimodule-map solutions fail substitution");
        s.kernel
            .gens
            .iter()
            .chain(&s.kernel.extra)
            .map(|g| g.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (unknowns[i], x.clone())).collect())
            .collect()
    }
}
