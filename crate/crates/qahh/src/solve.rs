//! Kernels of R-linear systems via a Z-exponent window and Smith normal form.

use crate::homology::{smith_normal_form, IntMatrix};
use crate::ring::{MonoKey, RingElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// Rows of `Σ_j c_{ij} r_j = 0` over R.
#[derive(Clone, Debug, Default)]
pub struct RSystem {
    pub unknowns: usize,
    pub rows: Vec<BTreeMap<usize, RingElem>>,
}

/// An R-basis of a solution module, found inside a Z-exponent window.
#[derive(Clone, Debug)]
pub struct RKernel {
    pub unknowns: usize,
    /// Generators in reduced echelon form; `pivots[i]` has coefficient 1 in `gens[i]`
    /// and 0 in every other generator.
    pub gens: Vec<Vec<RingElem>>,
    pub pivots: Vec<usize>,
    /// Solutions that could not be reduced to a unit pivot.
    pub extra: Vec<Vec<RingElem>>,
    pub window: (i64, i64),
    /// Rank of the integer solution lattice inside the window.
    pub lattice_rank: usize,
}

impl RKernel {
    /// Free with the listed generators.
    pub fn is_free(&self) -> bool {
        self.extra.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    fn reduce(&self, v: &[RingElem]) -> Vec<RingElem> {
        let mut v = v.to_vec();
        for (g, &p) in self.gens.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(g) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        v
    }

    /// Whether `v` is an R-combination of the generators.
    pub fn contains(&self, v: &[RingElem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    fn insert(&mut self, v: &[RingElem]) -> Option<bool> {
        let r = self.reduce(v);
        if r.iter().all(|x| x.is_zero()) {
            return Some(false);
        }
        let (p, u) = r.iter().enumerate().find_map(|(i, x)| x.as_unit().map(|u| (i, u)))?;
        let g: Vec<RingElem> = r.iter().map(|x| x.mul_unit(u.inv())).collect();
        for h in &mut self.gens {
            let c = h[p].clone();
            if !c.is_zero() {
                for (x, y) in h.iter_mut().zip(&g) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        self.gens.push(g);
        self.pivots.push(p);
        Some(true)
    }
}

/// Evaluates the system on a candidate solution, exactly over R.
pub fn residual(sys: &RSystem, v: &[RingElem]) -> usize {
    sys.rows
        .iter()
        .filter(|row| {
            let mut s = RingElem::zero();
            for (&j, c) in row.iter() {
                s += &(c * &v[j]);
            }
            !s.is_zero()
        })
        .count()
}

fn components(sys: &RSystem) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..sys.unknowns).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for row in &sys.rows {
        let mut it = row.keys();
        if let Some(&a) = it.next() {
            for &b in it {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut vars: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..sys.unknowns {
        let r = find(&mut parent, j);
        vars.entry(r).or_default().push(j);
    }
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, row) in sys.rows.iter().enumerate() {
        if let Some(&a) = row.keys().next() {
            rows.entry(find(&mut parent, a)).or_default().push(i);
        }
    }
    vars.into_iter().map(|(r, v)| (v, rows.remove(&r).unwrap_or_default())).collect()
}

/// Row-style Hermite reduction of a lattice basis.
fn hermite(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = rows[i][c].div_floor(&rows[p][c]);
                    let src = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&src) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.swap_remove(i);
            if r[c].is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
            }
            for prev in out.iter_mut() {
                let q = prev[c].div_floor(&r[c]);
                if !q.is_zero() {
                    for (x, y) in prev.iter_mut().zip(&r) {
                        *x -= &q * y;
                    }
                }
            }
            out.push(r);
        }
    }
    out
}

/// Gaussian elimination with unit pivots. Returns the substitutions
/// `x_j = Σ c_k x_k` in pivot order and the rows left without a unit entry.
fn unit_eliminate(sys: &RSystem) -> (Vec<(usize, BTreeMap<usize, RingElem>)>, Vec<BTreeMap<usize, RingElem>>) {
    let mut rows: Vec<BTreeMap<usize, RingElem>> = sys.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut subs = Vec::new();
    loop {
        let pick = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.iter().find_map(|(&j, c)| c.as_unit().map(|u| (r.len(), i, j, u))))
            .min_by_key(|&(len, i, j, _)| (len, i, j));
        let Some((_, i, j, u)) = pick else { break };
        let row = rows.swap_remove(i);
        let sub: BTreeMap<usize, RingElem> = row.iter().filter(|(&k, _)| k != j).map(|(&k, c)| (k, -c.mul_unit(u.inv()))).collect();
        for r in rows.iter_mut() {
            if let Some(c) = r.remove(&j) {
                for (&k, d) in &sub {
                    let e = r.entry(k).or_default();
                    *e += &(&c * d);
                    if e.is_zero() {
                        r.remove(&k);
                    }
                }
            }
        }
        rows.retain(|r| !r.is_empty());
        subs.push((j, sub));
    }
    (subs, rows)
}

/// Kernel of an R-linear system. Unit pivots are eliminated exactly over
/// R; the remaining rows are solved with unknowns expanded over
/// `X^a Y^b Z^k`, `k` in a window covering the exponent spread of the
/// coefficients plus a padding of 2 on each side.
pub fn r_kernel(sys: &RSystem) -> RKernel {
    let (subs, rest) = unit_eliminate(sys);
    let (mut lo, mut hi) = (0i64, 0i64);
    for row in &rest {
        for c in row.values() {
            if let Some((a, b)) = c.z_range() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
    }
    let span = hi - lo;
    let window = (-span - 2, span + 2);
    let mut kernel = RKernel { unknowns: sys.unknowns, gens: Vec::new(), pivots: Vec::new(), extra: Vec::new(), window, lattice_rank: 0 };
    let pivoted: std::collections::BTreeSet<usize> = subs.iter().map(|s| s.0).collect();
    let free = RSystem { unknowns: sys.unknowns, rows: rest };
    let mut candidates = Vec::new();
    for (vars, rows) in components(&free) {
        if vars.iter().all(|v| pivoted.contains(v)) {
            continue;
        }
        if rows.is_empty() {
            let mut v = vec![RingElem::zero(); sys.unknowns];
            v[vars[0]] = RingElem::one();
            kernel.lattice_rank += 4 * (window.1 - window.0 + 1) as usize;
            candidates.push(v);
            continue;
        }
        let (lattice, rank) = component_kernel(&free, &vars, &rows, window);
        kernel.lattice_rank += rank;
        candidates.extend(lattice);
    }
    for v in candidates.iter_mut() {
        for (j, sub) in subs.iter().rev() {
            let mut x = RingElem::zero();
            for (&k, c) in sub {
                x += &(c * &v[k]);
            }
            v[*j] = x;
        }
    }
    loop {
        let mut progress = false;
        let mut rest = Vec::new();
        for v in candidates {
            match kernel.insert(&v) {
                Some(true) => progress = true,
                Some(false) => {}
                None => rest.push(v),
            }
        }
        candidates = rest;
        if !progress || candidates.is_empty() {
            break;
        }
    }
    kernel.extra = candidates.into_iter().map(|v| kernel.reduce(&v)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    kernel
}

fn component_kernel(sys: &RSystem, vars: &[usize], rows: &[usize], window: (i64, i64)) -> (Vec<Vec<RingElem>>, usize) {
    let w = (window.1 - window.0 + 1) as usize;
    let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let nvars = vars.len() * 4 * w;
    let var = |j: usize, x: u8, y: u8, k: i64| ((local[&j] * 4 + (x * 2 + y) as usize) * w) + (k - window.0) as usize;
    let mut eq: BTreeMap<(usize, MonoKey), usize> = BTreeMap::new();
    let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &i in rows {
        for (&j, c) in &sys.rows[i] {
            for q in c.quads() {
                for x in 0..2u8 {
                    for y in 0..2u8 {
                        for k in window.0..=window.1 {
                            let key = (((q[0] as u8) + x) % 2, ((q[1] as u8) + y) % 2, q[2] + k);
                            let n = eq.len();
                            let r = *eq.entry((i, key)).or_insert(n);
                            *entries.entry((r, var(j, x, y, k))).or_default() += q[3];
                        }
                    }
                }
            }
        }
    }
    let mut m = IntMatrix::zeros(eq.len(), nvars);
    for ((r, c), x) in entries {
        m.data[r][c] = BigInt::from(x);
    }
    let basis: Vec<Vec<BigInt>> = if eq.is_empty() {
        (0..nvars).map(|c| (0..nvars).map(|r| BigInt::from((r == c) as i64)).collect()).collect()
    } else {
        let s = smith_normal_form(&m, true);
        let rank = s.rank();
        let v = s.v.expect("tracked");
        (rank..nvars).map(|c| (0..nvars).map(|r| v.data[r][c].clone()).collect()).collect()
    };
    let rank = basis.len();
    let out = hermite(basis)
        .into_iter()
        .map(|row| {
            let mut v = vec![RingElem::zero(); sys.unknowns];
            for (&j, slot) in vars.iter().zip(0..) {
                let mut terms = Vec::new();
                for xy in 0..4u8 {
                    for k in window.0..=window.1 {
                        let c = &row[(slot * 4 + xy as usize) * w + (k - window.0) as usize];
                        if !c.is_zero() {
                            terms.push(((xy / 2, xy % 2, k), c.to_i64().expect("coefficient overflow")));
                        }
                    }
                }
                v[j] = RingElem::from_terms(terms);
            }
            v
        })
        .collect();
    (out, rank)
}
