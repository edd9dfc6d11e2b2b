//! Flat tangles and crossingless matchings.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A flat tangle in `B_m^n`: a planar matching of `2m` bottom points
/// (indices `0..2m`, left to right) and `2n` top points (indices
/// `2m..2m+2n`, left to right), plus a count of closed components.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlatTangle {
    pub m: usize,
    pub n: usize,
    /// Sorted list of arcs `(p, q)` with `p < q`.
    pub arcs: Vec<(usize, usize)>,
    pub free: usize,
}

impl fmt::Debug for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{}->{}]{:?}", self.m, self.n, self.arcs)?;
        if self.free > 0 {
            write!(f, "+{}o", self.free)?;
        }
        Ok(())
    }
}

/// A crossingless matching `a ∈ B^n`, stored as a tangle in `B_0^n`.
pub type Matching = FlatTangle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("point {0} is not matched exactly once")]
    BadPoint(usize),
    #[error("arcs cross")]
    NotPlanar,
    #[error("boundary mismatch: {0} top points vs {1} bottom points")]
    Mismatch(usize, usize),
}

impl FlatTangle {
    pub fn new(m: usize, n: usize, arcs: Vec<(usize, usize)>, free: usize) -> Result<Self, TangleError> {
        let total = 2 * m + 2 * n;
        let mut seen = vec![false; total];
        let mut norm = Vec::with_capacity(arcs.len());
        for (p, q) in arcs {
            for x in [p, q] {
                if x >= total || seen[x] {
                    return Err(TangleError::BadPoint(x));
                }
                seen[x] = true;
            }
            norm.push((p.min(q), p.max(q)));
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(TangleError::BadPoint(x));
        }
        norm.sort();
        let t = FlatTangle { m, n, arcs: norm, free };
        if !t.is_planar() {
            return Err(TangleError::NotPlanar);
        }
        Ok(t)
    }

    /// The identity tangle `1_n` of vertical strands.
    pub fn identity(n: usize) -> Self {
        FlatTangle { m: n, n, arcs: (0..2 * n).map(|i| (i, 2 * n + i)).collect(), free: 0 }
    }

    /// Position of a boundary point along the boundary circle.
    fn cyclic(&self, p: usize) -> usize {
        if p < 2 * self.m {
            p
        } else {
            2 * self.m + (2 * self.n - 1 - (p - 2 * self.m))
        }
    }

    pub fn is_planar(&self) -> bool {
        let c: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&(p, q)| {
                let (a, b) = (self.cyclic(p), self.cyclic(q));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in c.iter().enumerate() {
            for &(x, y) in &c[i + 1..] {
                if (a < x && x < b && b < y) || (x < a && a < y && y < b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn partner(&self, p: usize) -> usize {
        for &(a, b) in &self.arcs {
            if a == p {
                return b;
            }
            if b == p {
                return a;
            }
        }
        panic!("point {} not in tangle", p)
    }

    /// Stacks `self` on top of `t`, giving `self ∘ t`.
    pub fn compose(&self, t: &FlatTangle) -> Result<FlatTangle, TangleError> {
        if t.n != self.m {
            return Err(TangleError::Mismatch(t.n, self.m));
        }
        let (m, k, p) = (t.m, t.n, self.n);
        // Global points: t bottom 0..2m, middle 2m..2m+2k, s top 2m+2k..
        let nt = 2 * m;
        let mid = 2 * k;
        let total = nt + mid + 2 * p;
        let mut adj_t = vec![usize::MAX; total];
        let mut adj_s = vec![usize::MAX; total];
        for &(a, b) in &t.arcs {
            adj_t[a] = b;
            adj_t[b] = a;
        }
        let s_map = |x: usize| if x < 2 * k { nt + x } else { nt + mid + (x - 2 * k) };
        for &(a, b) in &self.arcs {
            let (a, b) = (s_map(a), s_map(b));
            adj_s[a] = b;
            adj_s[b] = a;
        }
        let is_outer = |x: usize| x < nt || x >= nt + mid;
        let mut used = vec![false; total];
        let mut arcs = Vec::new();
        for start in (0..total).filter(|&x| is_outer(x)) {
            if used[start] {
                continue;
            }
            used[start] = true;
            let mut cur = start;
            let mut in_t = start < nt;
            loop {
                let nxt = if in_t { adj_t[cur] } else { adj_s[cur] };
                used[nxt] = true;
                if is_outer(nxt) {
                    let out = |x: usize| if x < nt { x } else { nt + (x - nt - mid) };
                    arcs.push((out(start), out(nxt)));
                    break;
                }
                cur = nxt;
                in_t = !in_t;
            }
        }
        let mut free = self.free + t.free;
        for start in nt..nt + mid {
            if used[start] {
                continue;
            }
            free += 1;
            let mut cur = start;
            let mut in_t = true;
            loop {
                used[cur] = true;
                let nxt = if in_t { adj_t[cur] } else { adj_s[cur] };
                used[nxt] = true;
                cur = nxt;
                in_t = !in_t;
                if cur == start {
                    break;
                }
            }
        }
        FlatTangle::new(m, p, arcs, free)
    }

    /// Reflection in a horizontal line: `B_m^n → B_n^m`.
    pub fn mirror(&self) -> FlatTangle {
        let (m, n) = (self.m, self.n);
        let f = |x: usize| if x < 2 * m { 2 * n + x } else { x - 2 * m };
        FlatTangle::new(n, m, self.arcs.iter().map(|&(a, b)| (f(a), f(b))).collect(), self.free).unwrap()
    }

    /// Juxtaposition with `other` placed on the right.
    pub fn juxtapose(&self, other: &FlatTangle) -> FlatTangle {
        let (m1, n1, m2, n2) = (self.m, self.n, other.m, other.n);
        let f1 = |x: usize| if x < 2 * m1 { x } else { 2 * (m1 + m2) + (x - 2 * m1) };
        let f2 = |x: usize| if x < 2 * m2 { 2 * m1 + x } else { 2 * (m1 + m2) + 2 * n1 + (x - 2 * m2) };
        let mut arcs: Vec<(usize, usize)> = self.arcs.iter().map(|&(a, b)| (f1(a), f1(b))).collect();
        arcs.extend(other.arcs.iter().map(|&(a, b)| (f2(a), f2(b))));
        FlatTangle::new(m1 + m2, n1 + n2, arcs, self.free + other.free).unwrap()
    }

    pub fn is_identity(&self) -> bool {
        *self == FlatTangle::identity(self.m) && self.m == self.n
    }

    /// Uniformly random planar matching on the `2m + 2n` boundary points.
    pub fn random<R: Rng>(m: usize, n: usize, rng: &mut R) -> FlatTangle {
        let total = 2 * (m + n);
        let cyc = random_noncrossing(total, rng);
        // Invert the cyclic relabeling.
        let inv = |c: usize| if c < 2 * m { c } else { 2 * m + (2 * n - 1 - (c - 2 * m)) };
        FlatTangle::new(m, n, cyc.into_iter().map(|(a, b)| (inv(a), inv(b))).collect(), 0).unwrap()
    }

    /// Number of boundary points on the bottom that are matched to the top.
    pub fn through_strands(&self) -> usize {
        self.arcs.iter().filter(|&&(a, b)| a < 2 * self.m && b >= 2 * self.m).count()
    }
}

/// A non-crossing perfect matching of `0..2k` chosen uniformly at random.
fn random_noncrossing<R: Rng>(total: usize, rng: &mut R) -> Vec<(usize, usize)> {
    // Uniform Dyck path by the cycle lemma, then match parentheses.
    let k = total / 2;
    if k == 0 {
        return Vec::new();
    }
    let mut steps: Vec<i32> = vec![1; k];
    steps.extend(vec![-1; k + 1]);
    for i in (1..steps.len()).rev() {
        let j = rng.gen_range(0..=i);
        steps.swap(i, j);
    }
    let mut sum = 0;
    let mut min = 0;
    let mut at = 0;
    for (i, s) in steps.iter().enumerate() {
        sum += s;
        if sum < min {
            min = sum;
            at = i + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(at % len);
    steps.pop();
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        if *s == 1 {
            stack.push(i);
        } else {
            arcs.push((stack.pop().unwrap(), i));
        }
    }
    arcs
}

/// All crossingless matchings of `2n` points (Catalan many).
pub fn enumerate_matchings(n: usize) -> Vec<Matching> {
    fn rec(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>, cur: &mut Vec<(usize, usize)>) {
        if points.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            cur.push((first, points[k]));
            let inner: Vec<usize> = points[1..k].to_vec();
            let outer: Vec<usize> = points[k + 1..].to_vec();
            let mut inner_out = Vec::new();
            rec(&inner, &mut inner_out, &mut Vec::new());
            for i in inner_out {
                let mut c2 = cur.clone();
                c2.extend(i);
                rec(&outer, out, &mut c2);
            }
            cur.pop();
        }
    }
    let pts: Vec<usize> = (0..2 * n).collect();
    let mut out = Vec::new();
    rec(&pts, &mut out, &mut Vec::new());
    let mut ms: Vec<Matching> = out.into_iter().map(|arcs| FlatTangle::new(0, n, arcs, 0).unwrap()).collect();
    ms.sort();
    ms
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
