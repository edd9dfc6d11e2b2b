//! C-graded modules, algebras and bimodules over R with axiom checkers.

use crate::category::{left_unitor, right_unitor, GradingCategory, Opposite, Product};
use crate::ring::{RingElem, Unit};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// A sparse vector over a labeled basis.
pub type Vector = BTreeMap<usize, RingElem>;

pub fn vadd(v: &mut Vector, i: usize, c: &RingElem) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_default();
    *e += c;
    if e.is_zero() {
        v.remove(&i);
    }
}

/// `v += c · w`.
pub fn vaxpy(v: &mut Vector, c: &RingElem, w: &Vector) {
    for (&i, x) in w {
        vadd(v, i, &(c * x));
    }
}

pub fn vscale(v: &Vector, u: Unit) -> Vector {
    v.iter().map(|(&i, c)| (i, c.mul_unit(u))).collect()
}

pub fn vneg(v: &Vector) -> Vector {
    v.iter().map(|(&i, c)| (i, -c)).collect()
}

pub fn vsub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    vaxpy(&mut out, &RingElem::from(-1), b);
    out
}

pub fn basis_vec(i: usize) -> Vector {
    [(i, RingElem::one())].into_iter().collect()
}

/// A homogeneous basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElem<M> {
    pub label: String,
    pub deg: M,
    pub hdeg: i64,
}

/// One failed instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub indices: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Result of an axiom check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub checked: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failures(&self, axiom: &str) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }

    fn merge(&mut self, axiom: &str, checked: usize, v: Vec<Violation>) {
        *self.checked.entry(axiom.to_string()).or_default() += checked;
        self.violations.extend(v);
    }
}

fn compare(axiom: &str, idx: Vec<usize>, lhs: Vector, rhs: Vector) -> Option<Violation> {
    if lhs == rhs {
        None
    } else {
        Some(Violation { axiom: axiom.to_string(), indices: idx, lhs, rhs })
    }
}

/// A finite free graded R-module.
#[derive(Clone, Debug)]
pub struct GradedModule<C: GradingCategory> {
    pub cat: C,
    pub basis: Vec<BasisElem<C::Mor>>,
}

impl<C: GradingCategory> GradedModule<C> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn deg(&self, i: usize) -> &C::Mor {
        &self.basis[i].deg
    }

    /// The common degree of a nonzero vector, if it is homogeneous.
    pub fn degree_of(&self, v: &Vector) -> Option<C::Mor> {
        let mut it = v.keys().map(|&i| &self.basis[i].deg);
        let d = it.next()?.clone();
        it.all(|e| *e == d).then_some(d)
    }

    /// Indices of basis elements grouped by degree.
    pub fn by_degree(&self) -> BTreeMap<C::Mor, Vec<usize>> {
        let mut m: BTreeMap<C::Mor, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            m.entry(b.deg.clone()).or_default().push(i);
        }
        m
    }
}

/// A C-graded algebra given by a sparse multiplication table.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<C: GradingCategory> {
    pub module: GradedModule<C>,
    pub mu: HashMap<(usize, usize), Vector>,
    pub units: BTreeMap<C::Obj, Vector>,
}

impl<C: GradingCategory> GradedAlgebra<C> {
    pub fn cat(&self) -> &C {
        &self.module.cat
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn deg(&self, i: usize) -> &C::Mor {
        self.module.deg(i)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.mu.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if let Some(p) = self.mu.get(&(i, j)) {
                    vaxpy(&mut out, &(a * b), p);
                }
            }
        }
        out
    }

    /// Basis triples whose degrees form a composable path.
    pub fn composable_triples(&self) -> Vec<(usize, usize, usize)> {
        let c = self.cat();
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !c.composable(self.deg(i), self.deg(j)) {
                    continue;
                }
                for k in 0..n {
                    if c.composable(self.deg(j), self.deg(k)) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Checks (A.I) grading, (A.II) quasi-associativity and (A.III) units.
    pub fn check(&self) -> AxiomReport {
        let c = self.cat();
        let mut rep = AxiomReport::default();
        // (A.I)
        let mut v = Vec::new();
        let mut keys: Vec<&(usize, usize)> = self.mu.keys().collect();
        keys.sort();
        for &(i, j) in keys {
            let p = &self.mu[&(i, j)];
            let expect = c.compose(self.deg(j), self.deg(i));
            let ok = match &expect {
                None => p.is_empty(),
                Some(d) => p.keys().all(|&k| self.deg(k) == d),
            };
            if !ok {
                v.push(Violation { axiom: "A.I".into(), indices: vec![i, j], lhs: p.clone(), rhs: Vector::new() });
            }
        }
        rep.merge("A.I", self.mu.len(), v);
        // (A.II)
        let triples = self.composable_triples();
        let v: Vec<Violation> = triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let (x, y, z) = (basis_vec(i), basis_vec(j), basis_vec(k));
                let lhs = self.mul(&self.mul(&x, &y), &z);
                let a = c.alpha(self.deg(i), self.deg(j), self.deg(k));
                let rhs = vscale(&self.mul(&x, &self.mul(&y, &z)), a);
                compare("A.II", vec![i, j, k], lhs, rhs)
            })
            .collect();
        rep.merge("A.II", triples.len(), v);
        // (A.III)
        let mut v = Vec::new();
        let mut n = 0;
        for (obj, u) in &self.units {
            for i in 0..self.dim() {
                let d = self.deg(i);
                let x = basis_vec(i);
                if c.source(d) == *obj {
                    n += 1;
                    let lhs = self.mul(u, &x);
                    v.extend(compare("A.III", vec![i], lhs, vscale(&x, left_unitor(c, d))));
                }
                if c.target(d) == *obj {
                    n += 1;
                    let lhs = self.mul(&x, u);
                    v.extend(compare("A.III", vec![i], lhs, vscale(&x, right_unitor(c, d))));
                }
            }
        }
        rep.merge("A.III", n, v);
        rep
    }

    /// Triples on which plain associativity fails.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = self
            .composable_triples()
            .into_par_iter()
            .filter(|&(i, j, k)| {
                let (x, y, z) = (basis_vec(i), basis_vec(j), basis_vec(k));
                self.mul(&self.mul(&x, &y), &z) != self.mul(&x, &self.mul(&y, &z))
            })
            .collect();
        out.sort();
        out
    }

    /// The same algebra graded by `cat` (used to swap in a modified
    /// associator).
    pub fn regrade<D>(&self, cat: D) -> GradedAlgebra<D>
    where
        D: GradingCategory<Obj = C::Obj, Mor = C::Mor>,
    {
        GradedAlgebra {
            module: GradedModule { cat, basis: self.module.basis.clone() },
            mu: self.mu.clone(),
            units: self.units.clone(),
        }
    }

    /// The opposite algebra, graded by the opposite category.
    pub fn opposite(&self) -> GradedAlgebra<Opposite<C>>
    where
        C: Clone,
    {
        GradedAlgebra {
            module: GradedModule { cat: Opposite(self.cat().clone()), basis: self.module.basis.clone() },
            mu: self.mu.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
            units: self.units.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut keys: Vec<&(usize, usize)> = self.mu.keys().collect();
        keys.sort();
        serde_json::json!({
            "basis": self.module.basis.iter().map(|b| serde_json::json!({
                "label": b.label, "degree": format!("{:?}", b.deg), "hdeg": b.hdeg
            })).collect::<Vec<_>>(),
            "mu": keys.iter().map(|&&(i, j)| serde_json::json!([i, j, self.mu[&(i, j)]])).collect::<Vec<_>>(),
        })
    }
}

impl GradedAlgebra<crate::category::GroupCategory> {
    /// An ordinary algebra over R, concentrated in the identity of the
    /// trivial group. `table` lists the nonzero products `e_i e_j` as
    /// integer combinations; `unit` is the index of the unit.
    pub fn ungraded(labels: &[&str], table: &[((usize, usize), &[(usize, i64)])], unit: usize) -> Self {
        let cat = crate::category::GroupCategory::trivial(vec![vec![0]]);
        let basis = labels.iter().map(|l| BasisElem { label: l.to_string(), deg: 0, hdeg: 0 }).collect();
        let mu = table
            .iter()
            .map(|&(ij, terms)| (ij, terms.iter().map(|&(k, c)| (k, RingElem::constant(c))).collect()))
            .collect();
        let units = [((), basis_vec(unit))].into_iter().collect();
        GradedAlgebra { module: GradedModule { cat, basis }, mu, units }
    }

    /// `Z[x]/(x²)` on the basis `1, x`.
    pub fn dual_numbers() -> Self {
        Self::ungraded(&["1", "x"], &[((0, 0), &[(0, 1)]), ((0, 1), &[(1, 1)]), ((1, 0), &[(1, 1)])], 0)
    }

    /// Upper triangular 2×2 matrices on the basis `1, e12, e22`.
    pub fn upper_triangular() -> Self {
        Self::ungraded(
            &["1", "e12", "e22"],
            &[
                ((0, 0), &[(0, 1)]),
                ((0, 1), &[(1, 1)]),
                ((0, 2), &[(2, 1)]),
                ((1, 0), &[(1, 1)]),
                ((2, 0), &[(2, 1)]),
                ((1, 2), &[(1, 1)]),
                ((2, 2), &[(2, 1)]),
            ],
            0,
        )
    }
}

/// A C-graded `(A, B)`-bimodule.
#[derive(Clone, Debug)]
pub struct GradedBimodule<C: GradingCategory> {
    pub module: GradedModule<C>,
    pub left: Arc<GradedAlgebra<C>>,
    pub right: Arc<GradedAlgebra<C>>,
    pub rho_l: HashMap<(usize, usize), Vector>,
    pub rho_r: HashMap<(usize, usize), Vector>,
}

impl<C: GradingCategory + Clone> GradedBimodule<C> {
    /// `A` as a bimodule over itself.
    pub fn regular(a: Arc<GradedAlgebra<C>>) -> Self {
        GradedBimodule {
            module: a.module.clone(),
            left: a.clone(),
            right: a.clone(),
            rho_l: a.mu.clone(),
            rho_r: a.mu.clone(),
        }
    }
}

impl<C: GradingCategory> GradedBimodule<C> {
    pub fn cat(&self) -> &C {
        &self.module.cat
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn deg(&self, i: usize) -> &C::Mor {
        self.module.deg(i)
    }

    /// `ρ_L(a, m)`.
    pub fn act_l(&self, a: &Vector, m: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in m {
                if let Some(p) = self.rho_l.get(&(i, j)) {
                    vaxpy(&mut out, &(x * y), p);
                }
            }
        }
        out
    }

    /// `ρ_R(m, b)`.
    pub fn act_r(&self, m: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&j, y) in m {
            for (&i, x) in b {
                if let Some(p) = self.rho_r.get(&(j, i)) {
                    vaxpy(&mut out, &(x * y), p);
                }
            }
        }
        out
    }

    /// Checks (B.I) through (B.IV) and homogeneity of both actions.
    pub fn check(&self) -> AxiomReport {
        let c = self.cat();
        let (a, b) = (&*self.left, &*self.right);
        let (na, nb, nm) = (a.dim(), b.dim(), self.dim());
        let mut rep = AxiomReport::default();
        let mut v = Vec::new();
        let mut n = 0;
        for (&(i, j), p) in &self.rho_l {
            n += 1;
            let ok = match c.compose(self.deg(j), a.deg(i)) {
                None => p.is_empty(),
                Some(d) => p.keys().all(|&k| *self.deg(k) == d),
            };
            if !ok {
                v.push(Violation { axiom: "grading".into(), indices: vec![i, j], lhs: p.clone(), rhs: Vector::new() });
            }
        }
        for (&(j, i), p) in &self.rho_r {
            n += 1;
            let ok = match c.compose(b.deg(i), self.deg(j)) {
                None => p.is_empty(),
                Some(d) => p.keys().all(|&k| *self.deg(k) == d),
            };
            if !ok {
                v.push(Violation { axiom: "grading".into(), indices: vec![j, i], lhs: p.clone(), rhs: Vector::new() });
            }
        }
        rep.merge("grading", n, v);

        let run = |axiom: &str, idx: Vec<[usize; 3]>, f: &(dyn Fn(usize, usize, usize) -> Option<(Vector, Vector)> + Sync)| {
            let v: Vec<Violation> = idx
                .par_iter()
                .filter_map(|&[x, y, z]| {
                    let (l, r) = f(x, y, z)?;
                    compare(axiom, vec![x, y, z], l, r)
                })
                .collect();
            (idx.len(), v)
        };
        let triples = |n1: usize, d1: &dyn Fn(usize) -> C::Mor, n2: usize, d2: &dyn Fn(usize) -> C::Mor, n3: usize, d3: &dyn Fn(usize) -> C::Mor| {
            let mut out = Vec::new();
            for x in 0..n1 {
                for y in 0..n2 {
                    if !c.composable(&d1(x), &d2(y)) {
                        continue;
                    }
                    for z in 0..n3 {
                        if c.composable(&d2(y), &d3(z)) {
                            out.push([x, y, z]);
                        }
                    }
                }
            }
            out
        };
        let da = |i: usize| a.deg(i).clone();
        let db = |i: usize| b.deg(i).clone();
        let dm = |i: usize| self.deg(i).clone();

        let (k, v) = run("B.I", triples(na, &da, na, &da, nm, &dm), &|i, j, m| {
            let (x, y, z) = (basis_vec(i), basis_vec(j), basis_vec(m));
            let lhs = self.act_l(&a.mul(&x, &y), &z);
            let al = c.alpha(a.deg(i), a.deg(j), self.deg(m));
            Some((lhs, vscale(&self.act_l(&x, &self.act_l(&y, &z)), al)))
        });
        rep.merge("B.I", k, v);
        let (k, v) = run("B.II", triples(nm, &dm, nb, &db, nb, &db), &|m, i, j| {
            let (z, x, y) = (basis_vec(m), basis_vec(i), basis_vec(j));
            let lhs = self.act_r(&self.act_r(&z, &x), &y);
            let al = c.alpha(self.deg(m), b.deg(i), b.deg(j));
            Some((lhs, vscale(&self.act_r(&z, &b.mul(&x, &y)), al)))
        });
        rep.merge("B.II", k, v);
        let (k, v) = run("B.III", triples(na, &da, nm, &dm, nb, &db), &|i, m, j| {
            let (x, z, y) = (basis_vec(i), basis_vec(m), basis_vec(j));
            let lhs = self.act_r(&self.act_l(&x, &z), &y);
            let al = c.alpha(a.deg(i), self.deg(m), b.deg(j));
            Some((lhs, vscale(&self.act_l(&x, &self.act_r(&z, &y)), al)))
        });
        rep.merge("B.III", k, v);

        let mut v = Vec::new();
        let mut n = 0;
        for m in 0..nm {
            let d = self.deg(m);
            let z = basis_vec(m);
            if let Some(u) = a.units.get(&c.source(d)) {
                n += 1;
                v.extend(compare("B.IV", vec![m], self.act_l(u, &z), vscale(&z, left_unitor(c, d))));
            }
            if let Some(u) = b.units.get(&c.target(d)) {
                n += 1;
                v.extend(compare("B.IV", vec![m], self.act_r(&z, u), vscale(&z, right_unitor(c, d))));
            }
        }
        rep.merge("B.IV", n, v);
        rep
    }
}

/// `Δ` for the left `A ⊗ B^op` action, with `b`-degrees taken in C.
pub fn delta<C: GradingCategory>(
    c: &C,
    a1: &C::Mor,
    b1: &C::Mor,
    a2: &C::Mor,
    b2: &C::Mor,
    m: &C::Mor,
) -> Option<Unit> {
    let ma2 = c.compose(m, a2)?;
    let ma2a1 = c.compose(&ma2, a1)?;
    Some(c.alpha(a1, a2, m) * c.alpha(&ma2a1, b2, b1).inv() * c.alpha(a1, &ma2, b2))
}

/// A left module over `A ⊗ B^op`, as an action table keyed by
/// `(a, b, m)` basis indices.
#[derive(Clone, Debug)]
pub struct LeftAeModule<C: GradingCategory> {
    pub module: GradedModule<C>,
    pub left: Arc<GradedAlgebra<C>>,
    pub right: Arc<GradedAlgebra<C>>,
    pub action: HashMap<(usize, usize, usize), Vector>,
}

impl<C: GradingCategory> LeftAeModule<C> {
    pub fn act(&self, a: &Vector, b: &Vector, m: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                for (&k, z) in m {
                    if let Some(p) = self.action.get(&(i, j, k)) {
                        vaxpy(&mut out, &(&(x * y) * z), p);
                    }
                }
            }
        }
        out
    }

    /// Checks (E.I) and (E.II).
    pub fn check(&self) -> AxiomReport {
        let c = &self.module.cat;
        let (a, b) = (&*self.left, &*self.right);
        let mut rep = AxiomReport::default();
        let nm = self.module.dim();
        let mut idx = Vec::new();
        for a1 in 0..a.dim() {
            for a2 in 0..a.dim() {
                if !c.composable(a.deg(a1), a.deg(a2)) {
                    continue;
                }
                for m in 0..nm {
                    if !c.composable(self.module.deg(m), a.deg(a1)) {
                        continue;
                    }
                    for b1 in 0..b.dim() {
                        for b2 in 0..b.dim() {
                            if c.composable(b.deg(b2), b.deg(b1)) && c.composable(self.module.deg(m), b.deg(b2)) {
                                idx.push((a1, b1, a2, b2, m));
                            }
                        }
                    }
                }
            }
        }
        let v: Vec<Violation> = idx
            .par_iter()
            .filter_map(|&(a1, b1, a2, b2, m)| {
                // Source of a2 must match the source of m for a nonzero action.
                let d = delta(c, a.deg(a1), b.deg(b1), a.deg(a2), b.deg(b2), self.module.deg(m))?;
                let (x1, y1, x2, y2, z) = (basis_vec(a1), basis_vec(b1), basis_vec(a2), basis_vec(b2), basis_vec(m));
                let lhs = self.act(&a.mul(&x1, &x2), &b.mul(&y2, &y1), &z);
                let rhs = vscale(&self.act(&x1, &y1, &self.act(&x2, &y2, &z)), d);
                compare("E.I", vec![a1, b1, a2, b2, m], lhs, rhs)
            })
            .collect();
        rep.merge("E.I", idx.len(), v);
        let mut v = Vec::new();
        let mut n = 0;
        for m in 0..nm {
            let d = self.module.deg(m);
            let (Some(ux), Some(uy)) = (a.units.get(&c.source(d)), b.units.get(&c.target(d))) else {
                continue;
            };
            n += 1;
            let z = basis_vec(m);
            let rhs = vscale(&z, left_unitor(c, d) * right_unitor(c, d));
            v.extend(compare("E.II", vec![m], self.act(ux, uy, &z), rhs));
        }
        rep.merge("E.II", n, v);
        rep
    }
}

/// `ρ^e(a ⊗ b, m) = ρ_R(ρ_L(a, m), b)`.
pub fn to_left_ae<C: GradingCategory + Clone>(m: &GradedBimodule<C>) -> LeftAeModule<C> {
    let mut action = HashMap::new();
    for i in 0..m.left.dim() {
        for k in 0..m.dim() {
            let l = m.act_l(&basis_vec(i), &basis_vec(k));
            if l.is_empty() {
                continue;
            }
            for j in 0..m.right.dim() {
                let v = m.act_r(&l, &basis_vec(j));
                if !v.is_empty() {
                    action.insert((i, j, k), v);
                }
            }
        }
    }
    LeftAeModule { module: m.module.clone(), left: m.left.clone(), right: m.right.clone(), action }
}

/// Recovers the bimodule: `ρ_L(a, m) = R(|m|∘|a|, Id)^{-1} ρ^e(a ⊗ 1, m)`
/// and `ρ_R(m, b) = L(Id, |m|)^{-1} ρ^e(1 ⊗ b, m)`.
pub fn from_left_ae<C: GradingCategory + Clone>(e: &LeftAeModule<C>) -> GradedBimodule<C> {
    let c = &e.module.cat;
    let (a, b) = (&e.left, &e.right);
    let mut rho_l = HashMap::new();
    let mut rho_r = HashMap::new();
    for k in 0..e.module.dim() {
        let d = e.module.deg(k);
        for i in 0..a.dim() {
            let Some(dm) = c.compose(d, a.deg(i)) else { continue };
            let Some(u) = b.units.get(&c.target(d)) else { continue };
            let v = vscale(&e.act(&basis_vec(i), u, &basis_vec(k)), right_unitor(c, &dm).inv());
            if !v.is_empty() {
                rho_l.insert((i, k), v);
            }
        }
        for j in 0..b.dim() {
            if !c.composable(d, b.deg(j)) {
                continue;
            }
            let Some(u) = a.units.get(&c.source(d)) else { continue };
            let v = vscale(&e.act(u, &basis_vec(j), &basis_vec(k)), left_unitor(c, d).inv());
            if !v.is_empty() {
                rho_r.insert((k, j), v);
            }
        }
    }
    GradedBimodule { module: e.module.clone(), left: a.clone(), right: b.clone(), rho_l, rho_r }
}

/// The algebra `A ⊗ B^op`, graded by `C × C^op`, with basis index
/// `i * dim(B) + j` for `a_i ⊗ b_j`.
pub fn enveloping<C: GradingCategory + Clone>(
    a: &GradedAlgebra<C>,
    b: &GradedAlgebra<C>,
) -> GradedAlgebra<Product<C, Opposite<C>>> {
    let nb = b.dim();
    let cat = Product(a.cat().clone(), Opposite(b.cat().clone()));
    let mut basis = Vec::new();
    for x in &a.module.basis {
        for y in &b.module.basis {
            basis.push(BasisElem {
                label: format!("{}|{}", x.label, y.label),
                deg: (x.deg.clone(), y.deg.clone()),
                hdeg: x.hdeg + y.hdeg,
            });
        }
    }
    let mut mu = HashMap::new();
    for (&(i1, i2), p) in &a.mu {
        for (&(j2, j1), q) in &b.mu {
            let mut v = Vector::new();
            for (&k, x) in p {
                for (&l, y) in q {
                    vadd(&mut v, k * nb + l, &(x * y));
                }
            }
            if !v.is_empty() {
                mu.insert((i1 * nb + j1, i2 * nb + j2), v);
            }
        }
    }
    let mut units = BTreeMap::new();
    for (x, ux) in &a.units {
        for (y, uy) in &b.units {
            let mut v = Vector::new();
            for (&k, p) in ux {
                for (&l, q) in uy {
                    vadd(&mut v, k * nb + l, &(p * q));
                }
            }
            units.insert((x.clone(), y.clone()), v);
        }
    }
    GradedAlgebra { module: GradedModule { cat, basis }, mu, units }
}
