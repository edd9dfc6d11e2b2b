//! Reference computations written from scratch: textbook Hochschild
//! (co)homology of ungraded algebras, the classical Khovanov cube and the
//! Kauffman bracket. Nothing here calls into the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Homology keyed by `(h, grading)`: free rank and nontrivial invariant factors.
pub type Table = BTreeMap<(i64, i64), (usize, Vec<i64>)>;

/// Nonzero diagonal of the Smith form, by repeated pivoting on the
/// smallest entry. Entries are absolute values.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(p, q)| a[i][j].abs() < a[p][q].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((p, q)) = best else { break };
        a.swap(t, p);
        for r in a.iter_mut() {
            r.swap(t, q);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            let f = a[i][t] / a[t][t];
            if f != 0 {
                for j in t..cols {
                    a[i][j] -= f * a[t][j];
                }
            }
            dirty |= a[i][t] != 0;
        }
        for j in t + 1..cols {
            let f = a[t][j] / a[t][t];
            if f != 0 {
                for i in t..rows {
                    a[i][j] -= f * a[i][t];
                }
            }
            dirty |= a[t][j] != 0;
        }
        if dirty {
            continue;
        }
        let piv = a[t][t];
        let mut bad = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if a[i][j] % piv != 0 {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(piv.abs() as i64);
        t += 1;
    }
    out
}

/// Homology of a complex split into blocks `(h, g)`; `maps[(h, g)]` is a
/// dense `dim(h + step, g) × dim(h, g)` matrix. Zero groups are omitted.
pub fn block_homology(
    dims: &BTreeMap<(i64, i64), usize>,
    maps: &BTreeMap<(i64, i64), Vec<Vec<i64>>>,
    step: i64,
    reported: &[i64],
) -> Table {
    let mut out = Table::new();
    for (&(h, g), &n) in dims {
        if n == 0 || !reported.contains(&h) {
            continue;
        }
        let r_out = maps.get(&(h, g)).map_or(0, |m| invariant_factors(m).len());
        let inc = maps.get(&(h - step, g)).map(|m| invariant_factors(m)).unwrap_or_default();
        let betti = n - r_out - inc.len();
        let torsion: Vec<i64> = inc.into_iter().filter(|&d| d != 1).collect();
        if betti > 0 || !torsion.is_empty() {
            out.insert((h, g), (betti, torsion));
        }
    }
    out
}

/// An ordinary algebra with structure constants `mul[i][j][k]`.
pub struct Algebra {
    pub labels: Vec<&'static str>,
    pub mul: Vec<Vec<Vec<i64>>>,
}

impl Algebra {
    fn new(labels: Vec<&'static str>, products: &[(usize, usize, usize)]) -> Self {
        let d = labels.len();
        let mut mul = vec![vec![vec![0; d]; d]; d];
        for &(i, j, k) in products {
            mul[i][j][k] += 1;
        }
        Algebra { labels, mul }
    }

    pub fn dual_numbers() -> Self {
        Algebra::new(vec!["1", "x"], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)])
    }

    /// Upper triangular matrices on `1 = e11 + e22, e12, e22`.
    pub fn upper_triangular() -> Self {
        Algebra::new(
            vec!["1", "e12", "e22"],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2), (1, 2, 1), (2, 2, 2)],
        )
    }

    fn dim(&self) -> usize {
        self.labels.len()
    }

    fn word_label(&self, w: &[usize]) -> String {
        w.iter().map(|&i| self.labels[i]).collect::<Vec<_>>().join("|")
    }
}

/// All words of length `len` over `0..d`, lexicographic.
pub fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..d).map(move |i| [w.clone(), vec![i]].concat())).collect();
    }
    out
}

fn add(m: &mut BTreeMap<(String, String), i64>, k: (String, String), x: i64) {
    if x != 0 {
        *m.entry(k).or_default() += x;
    }
}

fn prune(m: BTreeMap<(String, String), i64>) -> BTreeMap<(String, String), i64> {
    m.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// `b: C_n → C_{n-1}` on `m ⊗ a_1 ⊗ ⋯ ⊗ a_n`, keyed by (row, column) labels.
pub fn hochschild_boundary(a: &Algebra, n: usize) -> BTreeMap<(String, String), i64> {
    let d = a.dim();
    let mut out = BTreeMap::new();
    for w in tuples(d, n + 1) {
        let col = a.word_label(&w);
        for i in 0..n {
            let s = if i % 2 == 0 { 1 } else { -1 };
            for k in 0..d {
                let c = a.mul[w[i]][w[i + 1]][k];
                let mut v = w[..i].to_vec();
                v.push(k);
                v.extend_from_slice(&w[i + 2..]);
                add(&mut out, (a.word_label(&v), col.clone()), s * c);
            }
        }
        let s = if n.is_multiple_of(2) { 1 } else { -1 };
        for k in 0..d {
            let c = a.mul[w[n]][w[0]][k];
            let mut v = vec![k];
            v.extend_from_slice(&w[1..n]);
            add(&mut out, (a.word_label(&v), col.clone()), s * c);
        }
    }
    prune(out)
}

fn cochain_label(a: &Algebra, w: &[usize], m: usize) -> String {
    format!("{}->{}", a.word_label(w), a.labels[m])
}

/// `δ: C^n → C^{n+1}` with `C^n = Hom(A^{⊗n}, A)` on the dual basis
/// `(w ↦ m)`, keyed by (row, column) labels.
pub fn hochschild_coboundary(a: &Algebra, n: usize) -> BTreeMap<(String, String), i64> {
    let d = a.dim();
    let mut out = BTreeMap::new();
    for w in tuples(d, n) {
        for m in 0..d {
            let col = cochain_label(a, &w, m);
            for v in tuples(d, n + 1) {
                for t in 0..d {
                    let row = cochain_label(a, &v, t);
                    let mut x = 0;
                    if v[1..] == w[..] {
                        x += a.mul[v[0]][m][t];
                    }
                    for i in 1..=n {
                        let s = if i % 2 == 0 { 1 } else { -1 };
                        for k in 0..d {
                            let mut u = v[..i - 1].to_vec();
                            u.push(k);
                            u.extend_from_slice(&v[i + 1..]);
                            if u == w && t == m {
                                x += s * a.mul[v[i - 1]][v[i]][k];
                            }
                        }
                    }
                    if v[..n] == w[..] {
                        let s = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
                        x += s * a.mul[m][v[n]][t];
                    }
                    add(&mut out, (row, col.clone()), x);
                }
            }
        }
    }
    prune(out)
}

fn dense(entries: &BTreeMap<(String, String), i64>, rows: &[String], cols: &[String]) -> Vec<Vec<i64>> {
    let ri: BTreeMap<&String, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let ci: BTreeMap<&String, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = vec![vec![0; cols.len()]; rows.len()];
    for ((r, c), &x) in entries {
        m[ri[r]][ci[c]] = x;
    }
    m
}

/// `HH_0 … HH_{nmax-1}`, keyed by `(k, 0)`.
pub fn hochschild_homology(a: &Algebra, nmax: usize) -> Table {
    let d = a.dim();
    let labels: Vec<Vec<String>> = (0..=nmax).map(|n| tuples(d, n + 1).iter().map(|w| a.word_label(w)).collect()).collect();
    let dims = (0..=nmax).map(|n| ((n as i64, 0), labels[n].len())).collect();
    let maps = (1..=nmax).map(|n| ((n as i64, 0), dense(&hochschild_boundary(a, n), &labels[n - 1], &labels[n]))).collect();
    block_homology(&dims, &maps, -1, &(0..nmax as i64).collect::<Vec<_>>())
}

/// `HH^0 … HH^{nmax-1}`, keyed by `(k, 0)`.
pub fn hochschild_cohomology(a: &Algebra, nmax: usize) -> Table {
    let d = a.dim();
    let labels: Vec<Vec<String>> = (0..=nmax)
        .map(|n| tuples(d, n).iter().flat_map(|w| (0..d).map(move |m| cochain_label(a, w, m))).collect())
        .collect();
    let dims = (0..=nmax).map(|n| ((n as i64, 0), labels[n].len())).collect();
    let maps = (0..nmax).map(|n| ((n as i64, 0), dense(&hochschild_coboundary(a, n), &labels[n + 1], &labels[n]))).collect();
    block_homology(&dims, &maps, 1, &(0..nmax as i64).collect::<Vec<_>>())
}

/// A planar diagram given by its crossings, unknotted components and
/// crossing counts by sign.
pub struct Diagram {
    pub name: &'static str,
    pub pd: &'static str,
    pub crossings: Vec<[u64; 4]>,
    pub free_loops: usize,
    pub n_plus: usize,
    pub n_minus: usize,
}

/// The test corpus of small links.
pub fn diagrams() -> Vec<Diagram> {
    let d = |name, pd, crossings: Vec<[u64; 4]>, free_loops, n_plus, n_minus| Diagram { name, pd, crossings, free_loops, n_plus, n_minus };
    vec![
        d("unknot", "PD[]", vec![], 1, 0, 0),
        d("hopf-", "PD[X(4,1,3,2),X(2,3,1,4)]", vec![[4, 1, 3, 2], [2, 3, 1, 4]], 0, 0, 2),
        d("hopf+", "PD[X(4,1,3,2),X(1,4,2,3)]", vec![[4, 1, 3, 2], [1, 4, 2, 3]], 0, 2, 0),
        d("trefoil-left", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0, 0, 3),
        d("trefoil-right", "PD[X(4,2,5,1),X(6,4,1,3),X(2,6,3,5)]", vec![[4, 2, 5, 1], [6, 4, 1, 3], [2, 6, 3, 5]], 0, 3, 0),
    ]
}

/// Unknot diagrams with 0, 1 and 2 kinks.
pub fn kinked_unknots() -> Vec<Diagram> {
    let d = |name, pd, crossings: Vec<[u64; 4]>, free_loops, n_plus, n_minus| Diagram { name, pd, crossings, free_loops, n_plus, n_minus };
    vec![
        d("unknot", "PD[]", vec![], 1, 0, 0),
        d("kink+", "PD[X(1,1,2,2)]", vec![[1, 1, 2, 2]], 0, 1, 0),
        d("kink-", "PD[X(1,2,2,1)]", vec![[1, 2, 2, 1]], 0, 0, 1),
        d("kink++", "PD[X(1,1,2,4),X(3,3,4,2)]", vec![[1, 1, 2, 4], [3, 3, 4, 2]], 0, 2, 0),
        d("kink+-", "PD[X(1,1,2,4),X(2,3,3,4)]", vec![[1, 1, 2, 4], [2, 3, 3, 4]], 0, 1, 1),
    ]
}

/// Circle index of every edge label in the resolution `state`, and the
/// number of circles (free loops excluded).
fn circles(pd: &[[u64; 4]], state: u64) -> (BTreeMap<u64, usize>, usize) {
    let labels: BTreeSet<u64> = pd.iter().flatten().copied().collect();
    let mut parent: BTreeMap<u64, u64> = labels.iter().map(|&l| (l, l)).collect();
    fn find(p: &mut BTreeMap<u64, u64>, x: u64) -> u64 {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    for (i, x) in pd.iter().enumerate() {
        let pairs = if state >> i & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent.insert(ra, rb);
        }
    }
    let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for &l in &labels {
        let r = find(&mut parent, l);
        let n = ids.len();
        out.insert(l, *ids.entry(r).or_insert(n));
    }
    let n = ids.len();
    (out, n)
}

/// Classical Khovanov homology over Z, keyed by `(h, q)`.
pub fn khovanov(d: &Diagram) -> Table {
    let n = d.crossings.len();
    let (np, nm) = (d.n_plus as i64, d.n_minus as i64);
    let res: Vec<(BTreeMap<u64, usize>, usize)> = (0..1u64 << n).map(|s| circles(&d.crossings, s)).collect();
    let k = |s: u64| res[s as usize].1 + d.free_loops;
    let grade = |s: u64, minus: u64| {
        let r = s.count_ones() as i64;
        let kk = k(s) as i64;
        let m = minus.count_ones() as i64;
        (r - nm, kk - 2 * m + r + np - 2 * nm)
    };
    let mut index: BTreeMap<(u64, u64), (i64, i64, usize)> = BTreeMap::new();
    let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for s in 0..1u64 << n {
        for minus in 0..1u64 << k(s) {
            let g = grade(s, minus);
            let e = dims.entry(g).or_default();
            index.insert((s, minus), (g.0, g.1, *e));
            *e += 1;
        }
    }
    let mut maps: BTreeMap<(i64, i64), Vec<Vec<i64>>> = BTreeMap::new();
    for s in 0..1u64 << n {
        for i in 0..n {
            if s >> i & 1 == 1 {
                continue;
            }
            let t = s | 1 << i;
            let sign = if (s & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let (ls, lt) = (&res[s as usize].0, &res[t as usize].0);
            let mut img: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            let mut pre: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for (l, &a) in ls {
                img.entry(a).or_default().insert(lt[l]);
                pre.entry(lt[l]).or_default().insert(a);
            }
            let (cs, ct) = (res[s as usize].1, res[t as usize].1);
            for minus in 0..1u64 << k(s) {
                let bit = |c: usize| minus >> c & 1 == 1;
                let mut base = 0u64;
                let mut outs: Vec<u64> = vec![];
                for b in 0..ct {
                    let p: Vec<usize> = pre[&b].iter().copied().collect();
                    if p.len() == 1 && img[&p[0]].len() == 1 && bit(p[0]) {
                        base |= 1 << b;
                    }
                }
                for f in 0..d.free_loops {
                    if bit(cs + f) {
                        base |= 1 << (ct + f);
                    }
                }
                if let Some(b) = (0..ct).find(|b| pre[b].len() == 2) {
                    let p: Vec<usize> = pre[&b].iter().copied().collect();
                    match (bit(p[0]), bit(p[1])) {
                        (false, false) => outs.push(base),
                        (true, true) => {}
                        _ => outs.push(base | 1 << b),
                    }
                } else {
                    let a = (0..cs).find(|a| img[a].len() == 2).expect("saddle neither merges nor splits");
                    let q: Vec<usize> = img[&a].iter().copied().collect();
                    if bit(a) {
                        outs.push(base | 1 << q[0] | 1 << q[1]);
                    } else {
                        outs.push(base | 1 << q[0]);
                        outs.push(base | 1 << q[1]);
                    }
                }
                let (h, q, j) = index[&(s, minus)];
                for o in outs {
                    let (h2, q2, i2) = index[&(t, o)];
                    assert_eq!((h2, q2), (h + 1, q), "oracle differential is not homogeneous");
                    let rows = dims[&(h + 1, q)];
                    let cols = dims[&(h, q)];
                    let m = maps.entry((h, q)).or_insert_with(|| vec![vec![0; cols]; rows]);
                    m[i2][j] += sign;
                }
            }
        }
    }
    let hs: Vec<i64> = dims.keys().map(|k| k.0).collect();
    block_homology(&dims, &maps, 1, &hs)
}

/// Unnormalized Jones polynomial from the Kauffman bracket state sum:
/// `(-1)^{n₋} q^{n₊-2n₋} Σ_s (-q)^{|s|} (q + q⁻¹)^{k(s)}`.
pub fn kauffman_bracket(d: &Diagram) -> BTreeMap<i64, i64> {
    let n = d.crossings.len();
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for s in 0..1u64 << n {
        let r = s.count_ones() as i64;
        let k = circles(&d.crossings, s).1 + d.free_loops;
        let shift = r + d.n_plus as i64 - 2 * d.n_minus as i64;
        let sign = if (r - d.n_minus as i64) % 2 == 0 { 1 } else { -1 };
        let mut poly: BTreeMap<i64, i64> = [(0, 1)].into_iter().collect();
        for _ in 0..k {
            let mut next = BTreeMap::new();
            for (&e, &c) in &poly {
                *next.entry(e + 1).or_default() += c;
                *next.entry(e - 1).or_default() += c;
            }
            poly = next;
        }
        for (e, c) in poly {
            *out.entry(e + shift).or_default() += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}
