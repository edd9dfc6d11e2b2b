//! Composable tensor words and the bar construction `B(A)`.

use crate::category::GradingCategory;
use crate::complex::{from_columns, ComplexR, Generator};
use crate::graded::{vadd, AxiomReport, GradedAlgebra, GradedModule, Vector, Violation};
use crate::ring::{RingElem, Unit};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Composable words `x₀ ⊗ x₁ ⊗ ⋯` of total length `len`, with `x₀` from
/// `first` and the remaining letters from `rest`.
pub fn words<C: GradingCategory>(first: &GradedModule<C>, rest: &GradedModule<C>, len: usize) -> Vec<Vec<usize>> {
    let c = &first.cat;
    let mut by_src: BTreeMap<C::Obj, Vec<usize>> = BTreeMap::new();
    for i in 0..rest.dim() {
        by_src.entry(c.source(rest.deg(i))).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = if len == 0 { vec![vec![]] } else { (0..first.dim()).map(|i| vec![i]).collect() };
    for k in 1..len {
        let mut next = Vec::new();
        for w in out {
            let last = if k == 1 { first.deg(w[0]) } else { rest.deg(w[k - 1]) };
            if let Some(cands) = by_src.get(&c.target(last)) {
                for &j in cands {
                    let mut v = w.clone();
                    v.push(j);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// `pre[i] = |x_i| ∘ ⋯ ∘ |x_0|`.
pub fn prefixes<C: GradingCategory>(c: &C, degs: &[&C::Mor]) -> Vec<C::Mor> {
    let mut out: Vec<C::Mor> = Vec::with_capacity(degs.len());
    for (i, d) in degs.iter().enumerate() {
        let p = if i == 0 { (*d).clone() } else { c.compose(d, &out[i - 1]).expect("word is not composable") };
        out.push(p);
    }
    out
}

/// Words of one length with a lookup table.
#[derive(Clone, Debug, Default)]
pub struct WordBasis {
    pub words: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
}

impl WordBasis {
    pub fn new(words: Vec<Vec<usize>>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordBasis { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Replaces letters `i, i+1` of `w` by each term of `prod`, scaled by `u`,
/// and adds the result to `out`.
pub(crate) fn contract_into(out: &mut Vector, target: &WordBasis, w: &[usize], i: usize, prod: &Vector, coef: &RingElem) {
    for (&k, c) in prod {
        let mut v = Vec::with_capacity(w.len() - 1);
        v.extend_from_slice(&w[..i]);
        v.push(k);
        v.extend_from_slice(&w[i + 2..]);
        let idx = target.get(&v).expect("contracted word missing from basis");
        vadd(out, idx, &(coef * c));
    }
}

pub(crate) fn sign(i: usize) -> RingElem {
    RingElem::constant(if i.is_multiple_of(2) { 1 } else { -1 })
}

/// The bar construction truncated at `nmax`: `B_n = A^{⊗ n+2}`.
#[derive(Clone, Debug)]
pub struct BarComplex<C: GradingCategory> {
    pub alg: Arc<GradedAlgebra<C>>,
    /// `levels[n]` holds the words of length `n + 2`.
    pub levels: Vec<WordBasis>,
}

impl<C: GradingCategory> BarComplex<C> {
    pub fn new(alg: Arc<GradedAlgebra<C>>, nmax: usize) -> Self {
        let levels = (0..=nmax).map(|n| WordBasis::new(words(&alg.module, &alg.module, n + 2))).collect();
        BarComplex { alg, levels }
    }

    fn degs<'a>(&'a self, w: &[usize]) -> Vec<&'a C::Mor> {
        w.iter().map(|&i| self.alg.deg(i)).collect()
    }

    /// `|a_{n+1}| ∘ ⋯ ∘ |a_0|`.
    pub fn degree(&self, n: usize, w: usize) -> C::Mor {
        prefixes(self.alg.cat(), &self.degs(&self.levels[n].words[w])).pop().unwrap()
    }

    /// `∂` of a basis word of `B_n`, for `n ≥ 1`.
    pub fn boundary(&self, n: usize, w: usize) -> Vector {
        let c = self.alg.cat();
        let word = &self.levels[n].words[w];
        let degs = self.degs(word);
        let pre = prefixes(c, &degs);
        let mut out = Vector::new();
        for i in 0..=n {
            let u = if i == 0 { Unit::ONE } else { c.alpha(&pre[i - 1], degs[i], degs[i + 1]) };
            let prod = self.alg.mul_basis(word[i], word[i + 1]);
            contract_into(&mut out, &self.levels[n - 1], word, i, &prod, &sign(i).mul_unit(u));
        }
        out
    }

    /// `ρ_L(a, w) = Φ μ(a, a₀) ⊗ a₁ ⊗ ⋯`.
    pub fn act_l(&self, a: usize, n: usize, w: usize) -> Vector {
        let c = self.alg.cat();
        let word = &self.levels[n].words[w];
        let da = self.alg.deg(a);
        if !c.composable(da, self.alg.deg(word[0])) {
            return Vector::new();
        }
        let degs = self.degs(word);
        let pre = prefixes(c, &degs);
        let phi = (1..word.len()).fold(Unit::ONE, |u, i| u * c.alpha(da, &pre[i - 1], degs[i]).inv());
        let mut out = Vector::new();
        for (&k, x) in &self.alg.mul_basis(a, word[0]) {
            let mut v = word.clone();
            v[0] = k;
            vadd(&mut out, self.levels[n].get(&v).unwrap(), &x.mul_unit(phi));
        }
        out
    }

    /// `ρ_R(w, a) = Ψ a₀ ⊗ ⋯ ⊗ μ(a_{n+1}, a)`.
    pub fn act_r(&self, n: usize, w: usize, a: usize) -> Vector {
        let c = self.alg.cat();
        let word = &self.levels[n].words[w];
        let last = word.len() - 1;
        let da = self.alg.deg(a);
        if !c.composable(self.alg.deg(word[last]), da) {
            return Vector::new();
        }
        let degs = self.degs(word);
        let pre = prefixes(c, &degs);
        let psi = c.alpha(&pre[last - 1], degs[last], da);
        let mut out = Vector::new();
        for (&k, x) in &self.alg.mul_basis(word[last], a) {
            let mut v = word.clone();
            v[last] = k;
            vadd(&mut out, self.levels[n].get(&v).unwrap(), &x.mul_unit(psi));
        }
        out
    }

    fn lift(&self, v: &Vector, f: impl Fn(usize) -> Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, x) in v {
            for (&j, y) in &f(i) {
                vadd(&mut out, j, &(x * y));
            }
        }
        out
    }

    /// The complex `B_nmax → ⋯ → B_0`, graded by total C-degree.
    pub fn complex(&self) -> ComplexR<C::Mor>
    where
        C::Mor: Ord,
    {
        let nmax = self.levels.len() - 1;
        let mut gens = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for n in 0..=nmax {
            let g: Vec<Generator<C::Mor>> = (0..self.levels[n].len())
                .into_par_iter()
                .map(|w| Generator { label: self.label(n, w), grade: self.degree(n, w) })
                .collect();
            gens.insert(n as i64, g);
            if n > 0 {
                let cols: Vec<Vector> = (0..self.levels[n].len()).into_par_iter().map(|w| self.boundary(n, w)).collect();
                maps.insert(n as i64, from_columns(self.levels[n - 1].len(), &cols));
            }
        }
        ComplexR { step: -1, gens, maps, reported: (0..nmax as i64).collect() }
    }

    pub fn label(&self, n: usize, w: usize) -> String {
        let b = &self.alg.module.basis;
        self.levels[n].words[w].iter().map(|&i| b[i].label.as_str()).collect::<Vec<_>>().join("|")
    }

    /// Checks the two DG compatibilities and the bimodule associativity
    /// of `B_n` on all (or `sample` random) basis pairs and triples.
    pub fn check_dg(&self, n: usize, sample: Option<(usize, u64)>) -> AxiomReport {
        let c = self.alg.cat();
        let na = self.alg.dim();
        let mut pairs: Vec<(usize, usize)> = (0..na).flat_map(|a| (0..self.levels[n].len()).map(move |w| (a, w))).collect();
        if let Some((k, seed)) = sample {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            pairs.shuffle(&mut rng);
            pairs.truncate(k);
        }
        let mut rep = AxiomReport::default();
        let viol = |axiom: &str, idx: Vec<usize>, lhs: Vector, rhs: Vector| {
            (lhs != rhs).then(|| Violation { axiom: axiom.to_string(), indices: idx, lhs, rhs })
        };
        if n > 0 {
            let v: Vec<Violation> = pairs
                .par_iter()
                .flat_map_iter(|&(a, w)| {
                    let l = viol(
                        "DG.II",
                        vec![a, w],
                        self.lift(&self.act_l(a, n, w), |x| self.boundary(n, x)),
                        self.lift(&self.boundary(n, w), |x| self.act_l(a, n - 1, x)),
                    );
                    let r = viol(
                        "DG.III",
                        vec![w, a],
                        self.lift(&self.act_r(n, w, a), |x| self.boundary(n, x)),
                        self.lift(&self.boundary(n, w), |x| self.act_r(n - 1, x, a)),
                    );
                    l.into_iter().chain(r)
                })
                .collect();
            rep.checked.insert("DG.II".into(), pairs.len());
            rep.checked.insert("DG.III".into(), pairs.len());
            rep.violations.extend(v);
        }
        // (B.I) and (B.III) on B_n itself.
        let v: Vec<Violation> = pairs
            .par_iter()
            .flat_map_iter(|&(a2, w)| {
                let dw = self.degree(n, w);
                let mut out = Vec::new();
                for a1 in 0..na {
                    if !c.composable(self.alg.deg(a1), self.alg.deg(a2)) || !c.composable(self.alg.deg(a2), &dw) {
                        continue;
                    }
                    let u = c.alpha(self.alg.deg(a1), self.alg.deg(a2), &dw);
                    let lhs = self.lift(&self.alg.mul_basis(a1, a2), |x| self.act_l(x, n, w));
                    let rhs = self.lift(&self.act_l(a2, n, w), |x| self.act_l(a1, n, x));
                    out.extend(viol("B.I", vec![a1, a2, w], lhs, crate::graded::vscale(&rhs, u)));
                }
                for b in 0..na {
                    if !c.composable(&dw, self.alg.deg(b)) || !c.composable(self.alg.deg(a2), &dw) {
                        continue;
                    }
                    let u = c.alpha(self.alg.deg(a2), &dw, self.alg.deg(b));
                    let lhs = self.lift(&self.act_l(a2, n, w), |x| self.act_r(n, x, b));
                    let rhs = self.lift(&self.act_r(n, w, b), |x| self.act_l(a2, n, x));
                    out.extend(viol("B.III", vec![a2, w, b], lhs, crate::graded::vscale(&rhs, u)));
                }
                out
            })
            .collect();
        rep.checked.insert("B.I".into(), pairs.len());
        rep.checked.insert("B.III".into(), pairs.len());
        rep.violations.extend(v);
        rep
    }
}
