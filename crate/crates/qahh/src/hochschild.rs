//! The Hochschild complex `HC_•(A, M)`, coinvariants, and presented
//! tensor products over `B` and over `Aᵉ`.

use crate::bar::{contract_into, prefixes, sign, words, WordBasis};
use crate::category::GradingCategory;
use crate::complex::{from_columns, ComplexR, Generator};
use crate::graded::{vadd, vaxpy, GradedBimodule, Vector};
use crate::homology::{smith_normal_form, HomologyEntry, IntMatrix};
use crate::ring::{RingElem, Unit};
use crate::topography::{theta, TopographyComplex};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Traces of a list of loops, evaluated once per distinct loop.
fn traces<C: GradingCategory>(c: &C, loops: &[C::Mor]) -> Vec<C::Trace> {
    let mut uniq: Vec<C::Mor> = loops.to_vec();
    uniq.sort();
    uniq.dedup();
    let table: HashMap<C::Mor, C::Trace> = uniq.into_par_iter().map(|l| (l.clone(), c.trace(&l))).collect();
    loops.iter().map(|l| table[l].clone()).collect()
}

/// `C_n(A, M) = M ⊗ A^{⊗n}` restricted to words whose degrees close into a
/// loop, for `n ≤ nmax`.
#[derive(Clone, Debug)]
pub struct HochschildComplex<C: GradingCategory> {
    pub bim: Arc<GradedBimodule<C>>,
    pub levels: Vec<WordBasis>,
    pub grades: Vec<Vec<C::Trace>>,
}

impl<C: GradingCategory> HochschildComplex<C> {
    pub fn new(bim: Arc<GradedBimodule<C>>, nmax: usize) -> Self {
        let c = bim.cat();
        let mut levels = Vec::new();
        let mut grades = Vec::new();
        for n in 0..=nmax {
            let all = words(&bim.module, &bim.left.module, n + 1);
            let tagged: Vec<(Vec<usize>, C::Mor)> = all
                .into_par_iter()
                .filter_map(|w| {
                    let d = Self::composite(&bim, &w);
                    c.is_loop(&d).then_some((w, d))
                })
                .collect();
            let (ws, ds): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
            grades.push(traces(c, &ds));
            levels.push(WordBasis::new(ws));
        }
        HochschildComplex { bim, levels, grades }
    }

    fn degs<'a>(bim: &'a GradedBimodule<C>, w: &[usize]) -> Vec<&'a C::Mor> {
        std::iter::once(bim.deg(w[0])).chain(w[1..].iter().map(|&i| bim.left.deg(i))).collect()
    }

    fn composite(bim: &GradedBimodule<C>, w: &[usize]) -> C::Mor {
        prefixes(bim.cat(), &Self::degs(bim, w)).pop().unwrap()
    }

    /// `Ω(|m|, |a₁|, …, |a_n|)`.
    pub fn omega(&self, degs: &[&C::Mor]) -> Unit {
        let c = self.bim.cat();
        let n = degs.len() - 1;
        let pre = prefixes(c, degs);
        let an = degs[n];
        let mut u = c.epsilon(&pre[n - 1], an);
        for i in 0..n - 1 {
            u = u * c.alpha(an, &pre[i], degs[i + 1]).inv();
        }
        u
    }

    /// `b_n` of a basis word of `C_n`, for `n ≥ 1`.
    pub fn boundary(&self, n: usize, w: usize) -> Vector {
        let c = self.bim.cat();
        let a = &self.bim.left;
        let word = &self.levels[n].words[w];
        let target = &self.levels[n - 1];
        let degs = Self::degs(&self.bim, word);
        let pre = prefixes(c, &degs);
        let mut out = Vector::new();
        let put = |head: &Vector, rest: &[usize], coef: &RingElem, out: &mut Vector| {
            for (&k, x) in head {
                let mut v = Vec::with_capacity(rest.len() + 1);
                v.push(k);
                v.extend_from_slice(rest);
                vadd(out, target.get(&v).expect("face left the loop basis"), &(coef * x));
            }
        };
        if let Some(r) = self.bim.rho_r.get(&(word[0], word[1])) {
            put(r, &word[2..], &RingElem::one(), &mut out);
        }
        for i in 1..n {
            let u = c.alpha(&pre[i - 1], degs[i], degs[i + 1]);
            contract_into(&mut out, target, word, i, &a.mul_basis(word[i], word[i + 1]), &sign(i).mul_unit(u));
        }
        if let Some(l) = self.bim.rho_l.get(&(word[n], word[0])) {
            put(l, &word[1..n], &sign(n).mul_unit(self.omega(&degs)), &mut out);
        }
        out
    }

    pub fn label(&self, n: usize, w: usize) -> String {
        let word = &self.levels[n].words[w];
        let mut s = self.bim.module.basis[word[0]].label.clone();
        for &i in &word[1..] {
            s.push('|');
            s.push_str(&self.bim.left.module.basis[i].label);
        }
        s
    }

    pub fn complex(&self) -> ComplexR<C::Trace> {
        let nmax = self.levels.len() - 1;
        let mut gens = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for n in 0..=nmax {
            let g = (0..self.levels[n].len())
                .map(|w| Generator { label: self.label(n, w), grade: self.grades[n][w].clone() })
                .collect();
            gens.insert(n as i64, g);
            if n > 0 {
                let cols: Vec<Vector> = (0..self.levels[n].len()).into_par_iter().map(|w| self.boundary(n, w)).collect();
                maps.insert(n as i64, from_columns(self.levels[n - 1].len(), &cols));
            }
        }
        ComplexR { step: -1, gens, maps, reported: (0..nmax as i64).collect() }
    }

    /// `z · (m ⊗ a₁ ⊗ ⋯) = α(Id_X, Id_X, |m|) ρ_L(z, m) ⊗ a₁ ⊗ ⋯`.
    pub fn central_action(&self, z: &Vector, n: usize, w: usize) -> Vector {
        let c = self.bim.cat();
        let word = &self.levels[n].words[w];
        let dm = self.bim.deg(word[0]);
        let id = c.identity(&c.source(dm));
        let u = c.alpha(&id, &id, dm);
        let mut out = Vector::new();
        let head = self.bim.act_l(z, &crate::graded::basis_vec(word[0]));
        for (&k, x) in &head {
            let mut v = word.clone();
            v[0] = k;
            vadd(&mut out, self.levels[n].get(&v).expect("action left the loop basis"), &x.mul_unit(u));
        }
        out
    }

    /// Extends a basis map linearly.
    pub fn apply(&self, v: &Vector, f: impl Fn(usize) -> Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, x) in v {
            vaxpy(&mut out, x, &f(i));
        }
        out
    }
}

/// A module presented by graded generators and R-linear relations.
#[derive(Clone, Debug)]
pub struct Presentation<G: Ord + Clone> {
    pub gens: Vec<Generator<G>>,
    pub relations: Vec<Vector>,
}

impl<G: Ord + Clone> Presentation<G> {
    /// Relations that mix grading classes.
    pub fn inhomogeneous(&self) -> usize {
        self.relations
            .iter()
            .filter(|r| {
                let mut g = r.keys().map(|&i| &self.gens[i].grade);
                let first = g.next();
                g.any(|x| Some(x) != first)
            })
            .count()
    }

    fn blocks(&self) -> BTreeMap<G, Vec<usize>> {
        let mut b: BTreeMap<G, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            b.entry(g.grade.clone()).or_default().push(i);
        }
        b
    }

    fn block_matrix(&self, members: &[usize], extra: &[&Vector], spec: (i64, i64, i64)) -> IntMatrix {
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let cols: Vec<&Vector> = self
            .relations
            .iter()
            .filter(|r| r.keys().next().is_some_and(|i| local.contains_key(i)))
            .chain(extra.iter().copied())
            .collect();
        let mut m = IntMatrix::zeros(members.len(), cols.len());
        for (j, r) in cols.iter().enumerate() {
            for (i, c) in r.iter() {
                if let Some(&k) = local.get(i) {
                    m.data[k][j] += BigInt::from(c.specialize(spec.0, spec.1, spec.2));
                }
            }
        }
        m
    }

    /// The specialized quotient, one entry per grading class.
    pub fn cokernel(&self, x: i64, y: i64, z: i64) -> BTreeMap<G, HomologyEntry> {
        self.blocks()
            .into_iter()
            .map(|(g, members)| {
                let s = smith_normal_form(&self.block_matrix(&members, &[], (x, y, z)), false);
                let torsion = s.invariants.iter().filter(|d| !d.is_one()).cloned().collect();
                (g, HomologyEntry { betti: members.len() - s.rank(), torsion })
            })
            .collect()
    }

    /// Whether `v` lies in the Z-span of the specialized relations.
    pub fn in_span(&self, v: &Vector, x: i64, y: i64, z: i64) -> bool {
        if v.values().all(|c| c.specialize(x, y, z) == 0) {
            return true;
        }
        let Some(g) = v.keys().next().map(|&i| self.gens[i].grade.clone()) else { return true };
        if v.keys().any(|&i| self.gens[i].grade != g) {
            return false;
        }
        let members = &self.blocks()[&g];
        let base = smith_normal_form(&self.block_matrix(members, &[], (x, y, z)), false);
        let ext = smith_normal_form(&self.block_matrix(members, &[v], (x, y, z)), false);
        let prod = |s: &crate::homology::Smith| s.invariants.iter().fold(BigInt::one(), |a, d| a * d);
        base.rank() == ext.rank() && prod(&base) == prod(&ext)
    }
}

/// Coinvariants `M / (ρ_R(m, a) − ε(|m|, |a|) ρ_L(a, m))` on the loop part of `M`.
pub fn coinvariants<C: GradingCategory>(m: &GradedBimodule<C>) -> Presentation<C::Trace> {
    let c = m.cat();
    let a = &m.left;
    let idx: Vec<usize> = (0..m.dim()).filter(|&i| c.is_loop(m.deg(i))).collect();
    let ds: Vec<C::Mor> = idx.iter().map(|&i| m.deg(i).clone()).collect();
    let tr = traces(c, &ds);
    let local: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let gens = idx.iter().zip(tr).map(|(&i, t)| Generator { label: m.module.basis[i].label.clone(), grade: t }).collect();
    let mut relations = Vec::new();
    for i in 0..m.dim() {
        for j in 0..a.dim() {
            let (dm, da) = (m.deg(i), a.deg(j));
            if !(c.composable(dm, da) && c.composable(da, dm)) {
                continue;
            }
            let e = c.epsilon(dm, da);
            let mut r = Vector::new();
            for (k, x) in m.rho_r.get(&(i, j)).into_iter().flatten() {
                vadd(&mut r, local[k], x);
            }
            for (k, x) in m.rho_l.get(&(j, i)).into_iter().flatten() {
                vadd(&mut r, local[k], &-x.mul_unit(e));
            }
            if !r.is_empty() {
                relations.push(r);
            }
        }
    }
    Presentation { gens, relations }
}

/// `A / [A, A]_ε` with `[a₁, a₂]_ε = μ(a₁, a₂) − ε(|a₁|, |a₂|) μ(a₂, a₁)`.
pub fn commutator_quotient<C: GradingCategory + Clone>(alg: Arc<crate::graded::GradedAlgebra<C>>) -> Presentation<C::Trace> {
    coinvariants(&GradedBimodule::regular(alg))
}

/// A presented tensor product together with its pure-tensor generators.
#[derive(Clone, Debug)]
pub struct TensorPresentation<G: Ord + Clone> {
    pub pres: Presentation<G>,
    pub pairs: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
}

impl<G: Ord + Clone> TensorPresentation<G> {
    fn new(gens: Vec<Generator<G>>, pairs: Vec<(usize, usize)>) -> Self {
        let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        TensorPresentation { pres: Presentation { gens, relations: Vec::new() }, pairs, index }
    }

    fn tensor(&self, l: &Vector, r: &Vector, coef: &RingElem, out: &mut Vector) {
        for (&i, x) in l {
            for (&j, y) in r {
                let k = *self.index.get(&(i, j)).expect("pure tensor outside the presentation");
                vadd(out, k, &(&(coef * x) * y));
            }
        }
    }
}

/// `M ⊗_B N` presented by `ρ_R(m, b) ⊗ n − α(|m|, |b|, |n|) m ⊗ ρ_L(b, n)`.
pub fn tensor_over_b<C: GradingCategory>(m: &GradedBimodule<C>, n: &GradedBimodule<C>) -> TensorPresentation<C::Mor> {
    let c = m.cat();
    let b = &m.right;
    let mut pairs = Vec::new();
    let mut gens = Vec::new();
    for i in 0..m.dim() {
        for j in 0..n.dim() {
            if let Some(d) = c.compose(n.deg(j), m.deg(i)) {
                pairs.push((i, j));
                gens.push(Generator { label: format!("{}*{}", m.module.basis[i].label, n.module.basis[j].label), grade: d });
            }
        }
    }
    let mut t = TensorPresentation::new(gens, pairs);
    for i in 0..m.dim() {
        for k in 0..b.dim() {
            if !c.composable(m.deg(i), b.deg(k)) {
                continue;
            }
            for j in 0..n.dim() {
                if !c.composable(b.deg(k), n.deg(j)) {
                    continue;
                }
                let u = c.alpha(m.deg(i), b.deg(k), n.deg(j));
                let (ei, ej) = (crate::graded::basis_vec(i), crate::graded::basis_vec(j));
                let mut r = Vector::new();
                t.tensor(&m.act_r(&ei, &crate::graded::basis_vec(k)), &ej, &RingElem::one(), &mut r);
                t.tensor(&ei, &n.act_l(&crate::graded::basis_vec(k), &ej), &-u.to_elem(), &mut r);
                if !r.is_empty() {
                    t.pres.relations.push(r);
                }
            }
        }
    }
    t
}

/// `M ⊗_{Aᵉ} N` presented by
/// `ρᵉ_R(m, a ⊗ a') ⊗ n − Θ(|m|, |a ⊗ a'|, |n|) m ⊗ ρᵉ_L(a ⊗ a', n)`,
/// with `ρᵉ_R(m, a ⊗ a') = ρ_L(a', ρ_R(m, a))` and
/// `ρᵉ_L(a ⊗ a', n) = ρ_R(ρ_L(a, n), a')`. Only pure tensors whose degrees
/// close into a loop are generators.
pub fn tensor_over_ae<C: GradingCategory>(m: &GradedBimodule<C>, n: &GradedBimodule<C>) -> TensorPresentation<C::Trace> {
    let c = m.cat();
    let a = &m.right;
    let tc = TopographyComplex::new(4).expect("T(4)");
    let mut pairs = Vec::new();
    let mut loops = Vec::new();
    for i in 0..m.dim() {
        for j in 0..n.dim() {
            let (dm, dn) = (m.deg(i), n.deg(j));
            if c.composable(dm, dn) && c.composable(dn, dm) {
                pairs.push((i, j));
                loops.push(c.compose(dn, dm).unwrap());
            }
        }
    }
    let gens = pairs
        .iter()
        .zip(traces(c, &loops))
        .map(|(&(i, j), g)| Generator { label: format!("{}*{}", m.module.basis[i].label, n.module.basis[j].label), grade: g })
        .collect();
    let mut t = TensorPresentation::new(gens, pairs);
    let bv = crate::graded::basis_vec;
    let quads: Vec<(usize, usize, usize, usize)> = (0..m.dim())
        .flat_map(|i| (0..a.dim()).flat_map(move |k| (0..a.dim()).flat_map(move |l| (0..n.dim()).map(move |j| (i, k, l, j)))))
        .filter(|&(i, k, l, j)| {
            let (dm, da, dap, dn) = (m.deg(i), a.deg(k), a.deg(l), n.deg(j));
            c.composable(dap, dm) && c.composable(dm, da) && c.composable(da, dn) && c.composable(dn, dap)
        })
        .collect();
    let rels: Vec<Vector> = quads
        .par_iter()
        .filter_map(|&(i, k, l, j)| {
            let th = theta(c, &tc, m.deg(i), a.deg(k), a.deg(l), n.deg(j)).expect("loop");
            let lhs = m.act_l(&bv(l), &m.act_r(&bv(i), &bv(k)));
            let rhs = n.act_r(&n.act_l(&bv(k), &bv(j)), &bv(l));
            let mut r = Vector::new();
            t.tensor(&lhs, &bv(j), &RingElem::one(), &mut r);
            t.tensor(&bv(i), &rhs, &-th.to_elem(), &mut r);
            (!r.is_empty()).then_some(r)
        })
        .collect();
    t.pres.relations = rels;
    t
}

/// The images of the generators of `M ⊗_{Aᵉ} N` under
/// `m ⊗ n ↦ ε(|m|, |n|) n ⊗ m`, in the generators of `N ⊗_{Aᵉ} M`.
pub fn swap_tensor_ae<C: GradingCategory>(
    m: &GradedBimodule<C>,
    n: &GradedBimodule<C>,
    from: &TensorPresentation<C::Trace>,
    to: &TensorPresentation<C::Trace>,
) -> Vec<Vector> {
    let c = m.cat();
    from.pairs
        .iter()
        .map(|&(i, j)| {
            let e = c.epsilon(m.deg(i), n.deg(j));
            [(to.index[&(j, i)], e.to_elem())].into_iter().collect()
        })
        .collect()
}

/// Applies a generator map to a vector.
pub fn map_vector(images: &[Vector], v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (&i, x) in v {
        vaxpy(&mut out, x, &images[i]);
    }
    out
}
