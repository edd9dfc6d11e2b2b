//! Integer chain complexes, Smith normal form and bigraded homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;

/// Dense integer matrix with arbitrary precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, v: &[Vec<i64>]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, r) in v.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.data[i][j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut r = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        r.data[i][j] += &self.data[i][k] * &o.data[k][j];
                    }
                }
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// Result of a Smith normal form computation: `U · M · V = D`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    /// Nonzero diagonal entries, nonnegative, each dividing the next.
    pub invariants: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

fn row_op(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_op(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in m.iter_mut() {
        if !r[src].is_zero() {
            let t = q * &r[src];
            r[target] -= t;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix, track: bool) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut u = if track { Some(IntMatrix::identity(rows).data) } else { None };
    // V is tracked transposed so column operations become row operations.
    let mut vt = if track { Some(IntMatrix::identity(cols).data) } else { None };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                        if a[i][j].abs().is_one() {
                            break;
                        }
                    }
                }
            }
            if let Some((bi, bj)) = best {
                if a[bi][bj].abs().is_one() {
                    break;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap(t, pi);
        }
        swap_cols(&mut a, t, pj);
        if let Some(vt) = vt.as_mut() {
            vt.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_op(&mut a, i, t, &q);
                if let Some(u) = u.as_mut() {
                    row_op(u, i, t, &q);
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_op(&mut a, j, t, &q);
                if let Some(vt) = vt.as_mut() {
                    row_op(vt, j, t, &q);
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility against the remaining block.
                let mut bad = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !a[i][j].is_zero() && !a[i][j].is_multiple_of(&a[t][t]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        let m1 = BigInt::from(-1);
                        row_op(&mut a, t, i, &m1);
                        if let Some(u) = u.as_mut() {
                            row_op(u, t, i, &m1);
                        }
                        continue;
                    }
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut bi = t;
            let mut bj = t;
            for i in t..rows {
                if !a[i][t].is_zero() && (a[bi][bj].is_zero() || a[i][t].abs() < a[bi][bj].abs()) {
                    bi = i;
                    bj = t;
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && (a[bi][bj].is_zero() || a[t][j].abs() < a[bi][bj].abs()) {
                    bi = t;
                    bj = j;
                }
            }
            a.swap(t, bi);
            if let Some(u) = u.as_mut() {
                u.swap(t, bi);
            }
            swap_cols(&mut a, t, bj);
            if let Some(vt) = vt.as_mut() {
                vt.swap(t, bj);
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if let Some(u) = u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        t += 1;
    }
    let invariants: Vec<BigInt> = (0..rows.min(cols)).map(|i| a[i][i].clone()).filter(|x| !x.is_zero()).collect();
    let v = vt.map(|vt| {
        let mut v = IntMatrix::zeros(cols, cols);
        for i in 0..cols {
            for j in 0..cols {
                v.data[j][i] = vt[i][j].clone();
            }
        }
        v
    });
    Smith {
        d: IntMatrix { rows, cols, data: a },
        u: u.map(|d| IntMatrix { rows, cols: rows, data: d }),
        v,
        invariants,
    }
}

/// Rank of an integer matrix over Z/2.
pub fn rank_mod2(m: &IntMatrix) -> usize {
    let words = m.cols.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = m
        .data
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, x) in r.iter().enumerate() {
                if x.is_odd() {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let (wi, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][wi] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && r[wi] & bit != 0 {
                for (x, y) in r.iter_mut().zip(pivot.iter()) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Sparse matrix with generic entries, keyed by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<T> {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), T>,
}

impl<T> SparseMat<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: BTreeMap::new() }
    }
}

impl SparseMat<i64> {
    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (&(i, j), &x) in &self.entries {
            m.data[i][j] = BigInt::from(x);
        }
        m
    }

    pub fn add(&mut self, i: usize, j: usize, x: i64) {
        if x == 0 {
            return;
        }
        let e = self.entries.entry((i, j)).or_insert(0);
        *e += x;
        if *e == 0 {
            self.entries.remove(&(i, j));
        }
    }

    pub fn mul(&self, o: &SparseMat<i64>) -> SparseMat<i64> {
        assert_eq!(self.cols, o.rows);
        let mut by_row: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for (&(k, j), &x) in &o.entries {
            by_row.entry(k).or_default().push((j, x));
        }
        let mut r = SparseMat::new(self.rows, o.cols);
        for (&(i, k), &x) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, y) in row {
                    r.add(i, j, x * y);
                }
            }
        }
        r
    }
}

/// One homology group: free rank plus torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Integer chain complex graded by `(h, g)`; every differential maps
/// `(h, g)` to `(h + step, g)`.
#[derive(Clone, Debug)]
pub struct ComplexZ<G: Ord + Clone> {
    pub step: i64,
    pub dims: BTreeMap<(i64, G), usize>,
    pub maps: BTreeMap<(i64, G), SparseMat<i64>>,
    /// Homological degrees for which both adjacent differentials are known.
    pub reported: Vec<i64>,
}

/// Bigraded homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable<G: Ord + Clone> {
    pub table: BTreeMap<(i64, G), HomologyEntry>,
}

impl<G: Ord + Clone + Display> HomologyTable<G> {
    pub fn to_json(&self, spec: &str) -> serde_json::Value {
        let mut t = serde_json::Map::new();
        for ((h, g), e) in &self.table {
            t.insert(
                format!("({},{})", h, g),
                serde_json::json!({
                    "betti": e.betti,
                    "torsion": e.torsion.iter().map(|d| serde_json::Value::String(d.to_string())).collect::<Vec<_>>(),
                }),
            );
        }
        serde_json::json!({ "spec": spec, "table": t })
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("h\tgrading\tbetti\ttorsion\n");
        for ((h, g), e) in &self.table {
            let tor: Vec<String> = e.torsion.iter().map(|d| d.to_string()).collect();
            s.push_str(&format!("{}\t{}\t{}\t{}\n", h, g, e.betti, tor.join(",")));
        }
        s
    }

    /// Drops groups that are zero.
    pub fn nonzero(&self) -> HomologyTable<G> {
        HomologyTable {
            table: self
                .table
                .iter()
                .filter(|(_, e)| e.betti > 0 || !e.torsion.is_empty())
                .map(|(k, e)| (k.clone(), e.clone()))
                .collect(),
        }
    }
}

impl<G: Ord + Clone + Send + Sync> ComplexZ<G> {
    pub fn dim(&self, h: i64, g: &G) -> usize {
        self.dims.get(&(h, g.clone())).copied().unwrap_or(0)
    }

    fn map_or_zero(&self, h: i64, g: &G) -> SparseMat<i64> {
        match self.maps.get(&(h, g.clone())) {
            Some(m) => m.clone(),
            None => SparseMat::new(self.dim(h + self.step, g), self.dim(h, g)),
        }
    }

    /// Checks `d ∘ d = 0`.
    pub fn check_d_squared(&self) -> bool {
        self.maps.iter().all(|((h, g), m)| {
            let next = self.map_or_zero(h + self.step, g);
            next.mul(m).entries.is_empty()
        })
    }

    fn grades(&self) -> Vec<G> {
        let mut gs: Vec<G> = self.dims.keys().map(|(_, g)| g.clone()).collect();
        gs.sort();
        gs.dedup();
        gs
    }

    /// Homology via Smith normal form, computed in parallel over blocks.
    pub fn homology(&self) -> HomologyTable<G> {
        use rayon::prelude::*;
        let mut jobs = Vec::new();
        for g in self.grades() {
            for &h in &self.reported {
                if self.dim(h, &g) > 0 {
                    jobs.push((h, g.clone()));
                }
            }
        }
        let table = jobs
            .into_par_iter()
            .map(|(h, g)| {
                let n = self.dim(h, &g);
                let out = self.map_or_zero(h, &g);
                let inc = self.map_or_zero(h - self.step, &g);
                let r_out = smith_normal_form(&out.to_dense(), false).rank();
                let s_in = smith_normal_form(&inc.to_dense(), false);
                let torsion: Vec<BigInt> = s_in.invariants.iter().filter(|d| !d.is_one()).cloned().collect();
                ((h, g), HomologyEntry { betti: n - r_out - s_in.rank(), torsion })
            })
            .collect();
        HomologyTable { table }
    }

    /// Dimensions of homology with Z/2 coefficients.
    pub fn homology_mod2(&self) -> BTreeMap<(i64, G), usize> {
        let mut r = BTreeMap::new();
        for g in self.grades() {
            for &h in &self.reported {
                let n = self.dim(h, &g);
                if n == 0 {
                    continue;
                }
                let a = rank_mod2(&self.map_or_zero(h, &g).to_dense());
                let b = rank_mod2(&self.map_or_zero(h - self.step, &g).to_dense());
                r.insert((h, g.clone()), n - a - b);
            }
        }
        r
    }
}

/// Z/2 dimensions obtained from integer homology by the universal coefficient theorem.
pub fn mod2_from_integral<G: Ord + Clone>(t: &HomologyTable<G>, step: i64) -> BTreeMap<(i64, G), usize> {
    let mut r: BTreeMap<(i64, G), usize> = BTreeMap::new();
    for ((h, g), e) in &t.table {
        let even = e.torsion.iter().filter(|d| d.is_even()).count();
        *r.entry((*h, g.clone())).or_default() += e.betti + even;
        if even > 0 {
            *r.entry((h - step, g.clone())).or_default() += even;
        }
    }
    r.retain(|_, v| *v > 0);
    r
}

/// Laurent polynomial in q with integer coefficients.
pub type Laurent = BTreeMap<i64, i64>;

pub fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut r = Laurent::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *r.entry(i + j).or_default() += x * y;
        }
    }
    r.retain(|_, v| *v != 0);
    r
}

pub fn laurent_to_string(p: &Laurent) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (&e, &c)) in p.iter().enumerate() {
        let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
        if i > 0 {
            s.push(' ');
        }
        s.push_str(sign);
        if i > 0 {
            s.push(' ');
        }
        let mag = c.abs();
        let mono = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{}", e),
        };
        if mono.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag == 1 {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{}{}", mag, mono));
        }
    }
    s
}

impl ComplexZ<i64> {
    /// Σ (−1)^h q^j dim C_{h,j}.
    pub fn graded_euler_characteristic(&self) -> Laurent {
        let mut p = Laurent::new();
        for (&(h, q), &d) in &self.dims {
            *p.entry(q).or_default() += if h.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) };
        }
        p.retain(|_, v| *v != 0);
        p
    }
}

impl HomologyTable<i64> {
    pub fn euler_characteristic(&self) -> Laurent {
        let mut p = Laurent::new();
        for (&(h, q), e) in &self.table {
            let b = e.betti as i64;
            *p.entry(q).or_default() += if h.rem_euclid(2) == 0 { b } else { -b };
        }
        p.retain(|_, v| *v != 0);
        p
    }
}
