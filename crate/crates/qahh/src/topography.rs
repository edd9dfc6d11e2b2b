//! Topographies on a partitioned loop and the 2-complex they span.
//!
//! A loop `f_0, …, f_{n-1}` is fixed up to rotation; a topography is a
//! basepoint together with a full bracketing of the morphisms read from
//! that basepoint. Edges are single reassociations (valued by `α`) and the
//! root swap that moves the basepoint (valued by `ε`).

use crate::category::GradingCategory;
use crate::ring::Unit;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

/// A contiguous run of the loop: `len` morphisms starting at `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    fn first(&self) -> usize {
        match self {
            Tree::Leaf(i) => *i,
            Tree::Node(l, _) => l.first(),
        }
    }

    fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.size() + r.size(),
        }
    }

    fn span(&self) -> Span {
        Span { start: self.first(), len: self.size() }
    }

    /// All full bracketings of the leaves in order.
    pub fn all(leaves: &[usize]) -> Vec<Tree> {
        if leaves.len() == 1 {
            return vec![Tree::Leaf(leaves[0])];
        }
        let mut out = Vec::new();
        for k in 1..leaves.len() {
            for l in Tree::all(&leaves[..k]) {
                for r in Tree::all(&leaves[k..]) {
                    out.push(Tree::node(l.clone(), r));
                }
            }
        }
        out
    }

    /// Reassociations available anywhere in the tree, as `(X, Y, Z)` with
    /// the tree currently holding `(X Y) Z` (`true`) or `X (Y Z)` (`false`).
    fn rotations(&self, out: &mut Vec<(Span, Span, Span, bool)>) {
        if let Tree::Node(l, r) = self {
            if let Tree::Node(x, y) = &**l {
                out.push((x.span(), y.span(), r.span(), true));
            }
            if let Tree::Node(y, z) = &**r {
                out.push((l.span(), y.span(), z.span(), false));
            }
            l.rotations(out);
            r.rotations(out);
        }
    }

    fn rotate(&self, x: Span, y: Span, z: Span) -> Option<Tree> {
        let Tree::Node(l, r) = self else { return None };
        if let Tree::Node(a, b) = &**l {
            if a.span() == x && b.span() == y && r.span() == z {
                return Some(Tree::node((**a).clone(), Tree::node((**b).clone(), (**r).clone())));
            }
        }
        if let Tree::Node(b, c) = &**r {
            if l.span() == x && b.span() == y && c.span() == z {
                return Some(Tree::node(Tree::node((**l).clone(), (**b).clone()), (**c).clone()));
            }
        }
        if let Some(t) = l.rotate(x, y, z) {
            return Some(Tree::node(t, (**r).clone()));
        }
        r.rotate(x, y, z).map(|t| Tree::node((**l).clone(), t))
    }

    /// Splits the tree into `k` blocks following a pattern tree on `k`
    /// leaves, or `None` if the top of the tree has a different shape.
    fn match_pattern(&self, pat: &Tree, blocks: &mut BTreeMap<usize, Tree>) -> bool {
        match (pat, self) {
            (Tree::Leaf(i), t) => {
                blocks.insert(*i, t.clone());
                true
            }
            (Tree::Node(pl, pr), Tree::Node(l, r)) => l.match_pattern(pl, blocks) && r.match_pattern(pr, blocks),
            _ => false,
        }
    }

    fn fill(pat: &Tree, blocks: &BTreeMap<usize, Tree>) -> Tree {
        match pat {
            Tree::Leaf(i) => blocks[i].clone(),
            Tree::Node(l, r) => Tree::node(Tree::fill(l, blocks), Tree::fill(r, blocks)),
        }
    }

    /// Replaces the subtree with span `at` by `with`.
    fn replace(&self, at: Span, with: &Tree) -> Tree {
        if self.span() == at {
            return with.clone();
        }
        match self {
            Tree::Leaf(_) => self.clone(),
            Tree::Node(l, r) => Tree::node(l.replace(at, with), r.replace(at, with)),
        }
    }

    fn subtrees(&self, out: &mut Vec<Tree>) {
        out.push(self.clone());
        if let Tree::Node(l, r) = self {
            l.subtrees(out);
            r.subtrees(out);
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(i) => write!(f, "{}", i),
            Tree::Node(l, r) => write!(f, "({} {})", l, r),
        }
    }
}

/// A basepoint and a bracketing of the loop read from it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Topography {
    pub base: usize,
    pub tree: Tree,
}

impl fmt::Display for Topography {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.tree, self.base)
    }
}

impl Serialize for Topography {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An edge move. `Alpha` goes from `(X Y) Z` to `X (Y Z)`; `Epsilon` goes
/// from root `(A B)` to root `(B A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Move {
    Alpha(Span, Span, Span),
    Epsilon(Span, Span),
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub mv: Move,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FaceKind {
    /// The cocycle condition on `α`.
    Pentagon,
    /// The hexagon relating `α` and `ε`.
    Hexagon,
    /// Distant commutativity.
    Square,
}

/// A 2-cell: its kind and its boundary as a closed vertex cycle.
#[derive(Clone, Debug, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopographyError {
    #[error("topographies are supported for 2 <= n <= 5, got {0}")]
    Range(usize),
    #[error("the morphisms do not form a loop")]
    NotLoop,
}

/// The 2-complex of topographies on an `n`-partitioned loop.
#[derive(Clone, Debug, Serialize)]
pub struct TopographyComplex {
    pub n: usize,
    pub vertices: Vec<Topography>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    #[serde(skip)]
    index: HashMap<Topography, usize>,
    #[serde(skip)]
    adj: Vec<Vec<(usize, usize)>>,
}

/// Every topography on an `n`-partitioned loop.
pub fn enumerate_topographies(n: usize) -> Result<Vec<Topography>, TopographyError> {
    if !(2..=5).contains(&n) {
        return Err(TopographyError::Range(n));
    }
    let mut out = Vec::new();
    for base in 0..n {
        let leaves: Vec<usize> = (0..n).map(|i| (base + i) % n).collect();
        for tree in Tree::all(&leaves) {
            out.push(Topography { base, tree });
        }
    }
    Ok(out)
}

impl TopographyComplex {
    pub fn new(n: usize) -> Result<Self, TopographyError> {
        let vertices = enumerate_topographies(n)?;
        let index: HashMap<Topography, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, v) in vertices.iter().enumerate() {
            let mut rots = Vec::new();
            v.tree.rotations(&mut rots);
            for (x, y, z, left) in rots {
                if !left {
                    continue;
                }
                let t = v.tree.rotate(x, y, z).unwrap();
                let j = index[&Topography { base: v.base, tree: t }];
                edges.push(Edge { from: i, to: j, mv: Move::Alpha(x, y, z) });
            }
            if let Tree::Node(a, b) = &v.tree {
                let w = Topography { base: b.first(), tree: Tree::node((**b).clone(), (**a).clone()) };
                let j = index[&w];
                if seen.insert((i.min(j), i.max(j))) {
                    edges.push(Edge { from: i, to: j, mv: Move::Epsilon(a.span(), b.span()) });
                }
            }
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            adj[e.from].push((e.to, k));
            adj[e.to].push((e.from, k));
        }
        let mut c = TopographyComplex { n, vertices, edges, faces: Vec::new(), index, adj };
        c.faces = c.build_faces();
        Ok(c)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn vertex(&self, t: &Topography) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adj[a].iter().find(|(x, _)| *x == b).map(|(_, k)| *k)
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().map(|(x, _)| *x).collect()
    }

    fn build_faces(&self) -> Vec<Face> {
        let mut faces = Vec::new();
        let mut seen: BTreeSet<(FaceKind, Vec<usize>)> = BTreeSet::new();
        let mut push = |kind: FaceKind, cycle: Vec<usize>, faces: &mut Vec<Face>| {
            let mut key = cycle.clone();
            key.sort();
            if seen.insert((kind, key)) {
                faces.push(Face { kind, cycle });
            }
        };
        let four: Vec<Tree> = Tree::all(&[0, 1, 2, 3]);
        let pent_order = pentagon_order(&four);
        let three: Vec<Tree> = Tree::all(&[0, 1, 2]);
        for (i, v) in self.vertices.iter().enumerate() {
            // Pentagons: a subtree with four blocks, re-bracketed.
            let mut subs = Vec::new();
            v.tree.subtrees(&mut subs);
            for s in &subs {
                for pat in &four {
                    let mut blocks = BTreeMap::new();
                    if s.match_pattern(pat, &mut blocks) {
                        let cycle: Vec<usize> = pent_order
                            .iter()
                            .map(|p| {
                                let t = v.tree.replace(s.span(), &Tree::fill(&four[*p], &blocks));
                                self.index[&Topography { base: v.base, tree: t }]
                            })
                            .collect();
                        push(FaceKind::Pentagon, cycle, &mut faces);
                    }
                }
            }
            // Hexagons: three blocks at the root, every basepoint.
            for pat in &three {
                let mut blocks = BTreeMap::new();
                if v.tree.match_pattern(pat, &mut blocks) {
                    let b = |k: usize| blocks[&(k % 3)].clone();
                    let mut cycle = Vec::new();
                    for r in 0..3 {
                        let (x, y, z) = (b(r), b(r + 1), b(r + 2));
                        let base = x.first();
                        cycle.push(Topography { base, tree: Tree::node(Tree::node(x.clone(), y.clone()), z.clone()) });
                        cycle.push(Topography { base, tree: Tree::node(x, Tree::node(y, z)) });
                    }
                    push(FaceKind::Hexagon, cycle.iter().map(|t| self.index[t]).collect(), &mut faces);
                }
            }
            // Squares: two moves at `i` that commute.
            let nb = self.neighbours(i);
            for (a, &p) in nb.iter().enumerate() {
                for &q in &nb[a + 1..] {
                    let (mp, mq) = (self.edges[self.edge_between(i, p).unwrap()].mv, self.edges[self.edge_between(i, q).unwrap()].mv);
                    let Some(pq) = self.apply(p, mq) else { continue };
                    let Some(qp) = self.apply(q, mp) else { continue };
                    if pq == qp && pq != i {
                        push(FaceKind::Square, vec![i, p, pq, q], &mut faces);
                    }
                }
            }
        }
        faces
    }

    /// Applies the move (in whichever direction fits) at vertex `v`.
    fn apply(&self, v: usize, mv: Move) -> Option<usize> {
        let t = &self.vertices[v];
        match mv {
            Move::Alpha(x, y, z) => {
                let r = t.tree.rotate(x, y, z)?;
                self.vertex(&Topography { base: t.base, tree: r })
            }
            Move::Epsilon(a, b) => {
                let Tree::Node(l, r) = &t.tree else { return None };
                let (sl, sr) = (l.span(), r.span());
                if (sl, sr) != (a, b) && (sl, sr) != (b, a) {
                    return None;
                }
                self.vertex(&Topography { base: r.first(), tree: Tree::node((**r).clone(), (**l).clone()) })
            }
        }
    }

    /// Value of traversing edge `k` from `from`.
    pub fn edge_value<C: GradingCategory>(&self, c: &C, lp: &[C::Mor], k: usize, from: usize) -> Unit {
        let e = &self.edges[k];
        let comp = |s: Span| -> C::Mor {
            let fs: Vec<C::Mor> = (0..s.len).map(|i| lp[(s.start + i) % self.n].clone()).collect();
            c.compose_path(&fs).expect("span is not composable")
        };
        let u = match e.mv {
            Move::Alpha(x, y, z) => c.alpha(&comp(x), &comp(y), &comp(z)),
            Move::Epsilon(a, b) => c.epsilon(&comp(a), &comp(b)),
        };
        if from == e.from {
            u
        } else {
            u.inv()
        }
    }

    /// Product of edge values along a vertex path.
    pub fn path_value<C: GradingCategory>(&self, c: &C, lp: &[C::Mor], path: &[usize]) -> Unit {
        path.windows(2).fold(Unit::ONE, |u, w| {
            let k = self.edge_between(w[0], w[1]).expect("path uses a non-edge");
            u * self.edge_value(c, lp, k, w[0])
        })
    }

    /// Boundary values of all faces; each should be 1.
    pub fn face_values<C: GradingCategory>(&self, c: &C, lp: &[C::Mor]) -> Vec<(FaceKind, Unit)> {
        self.faces
            .iter()
            .map(|f| {
                let mut cyc = f.cycle.clone();
                cyc.push(f.cycle[0]);
                (f.kind, self.path_value(c, lp, &cyc))
            })
            .collect()
    }

    /// A shortest vertex path by breadth-first search.
    pub fn shortest_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.vertices.len()];
        let mut q = VecDeque::from([from]);
        prev[from] = from;
        while let Some(v) = q.pop_front() {
            if v == to {
                break;
            }
            let mut nb = self.neighbours(v);
            nb.sort();
            for w in nb {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    q.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        path
    }

    /// Whether the edge values are path-independent: a potential built
    /// along a spanning tree is consistent with every edge.
    pub fn path_independent<C: GradingCategory>(&self, c: &C, lp: &[C::Mor]) -> bool {
        let mut pot: Vec<Option<Unit>> = vec![None; self.vertices.len()];
        pot[0] = Some(Unit::ONE);
        let mut q = VecDeque::from([0]);
        while let Some(v) = q.pop_front() {
            for &(w, k) in &self.adj[v] {
                if pot[w].is_none() {
                    pot[w] = Some(pot[v].unwrap() * self.edge_value(c, lp, k, v));
                    q.push_back(w);
                }
            }
        }
        self.edges
            .iter()
            .enumerate()
            .all(|(k, e)| pot[e.from].unwrap() * self.edge_value(c, lp, k, e.from) == pot[e.to].unwrap())
    }

    /// Values of every simple path between two vertices.
    pub fn all_simple_path_values<C: GradingCategory>(&self, c: &C, lp: &[C::Mor], from: usize, to: usize) -> BTreeSet<Unit> {
        let mut out = BTreeSet::new();
        let mut on = vec![false; self.vertices.len()];
        let mut stack = vec![from];
        on[from] = true;
        self.dfs(c, lp, to, &mut on, &mut stack, Unit::ONE, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs<C: GradingCategory>(
        &self,
        c: &C,
        lp: &[C::Mor],
        to: usize,
        on: &mut [bool],
        stack: &mut Vec<usize>,
        acc: Unit,
        out: &mut BTreeSet<Unit>,
    ) {
        let v = *stack.last().unwrap();
        if v == to {
            out.insert(acc);
            return;
        }
        for &(w, k) in &self.adj[v] {
            if !on[w] {
                on[w] = true;
                stack.push(w);
                let u = acc * self.edge_value(c, lp, k, v);
                self.dfs(c, lp, to, on, stack, u, out);
                stack.pop();
                on[w] = false;
            }
        }
    }
}

/// Orders the five bracketings of four leaves around the pentagon.
fn pentagon_order(four: &[Tree]) -> Vec<usize> {
    let mut order = vec![0];
    while order.len() < 5 {
        let cur = &four[*order.last().unwrap()];
        let next = (0..5)
            .find(|&j| {
                !order.contains(&j) && {
                    let mut r = Vec::new();
                    cur.rotations(&mut r);
                    r.iter().any(|&(x, y, z, _)| cur.rotate(x, y, z).as_ref() == Some(&four[j]))
                }
            })
            .unwrap();
        order.push(next);
    }
    order
}

/// The canonical path for `Θ` on the loop `a', m, a, n` stored in that
/// order, from `((a' (m a)) n)` to `(m ((a n) a'))`: an `α`, the `ε`, and
/// two more `α`s.
pub fn theta_path() -> Vec<Topography> {
    let l = Tree::Leaf;
    let nd = Tree::node;
    let ma = nd(l(1), l(2));
    vec![
        Topography { base: 0, tree: nd(nd(l(0), ma.clone()), l(3)) },
        Topography { base: 0, tree: nd(l(0), nd(ma.clone(), l(3))) },
        Topography { base: 1, tree: nd(nd(ma, l(3)), l(0)) },
        Topography { base: 1, tree: nd(nd(l(1), nd(l(2), l(3))), l(0)) },
        Topography { base: 1, tree: nd(l(1), nd(nd(l(2), l(3)), l(0))) },
    ]
}

/// `Θ(|m|, |a ⊗ a'|, |n|)` along [`theta_path`], which reads
/// `α(a', a∘m, n) ε(a', n∘a∘m) α(m, a, n) α(m, n∘a, a')`.
pub fn theta<C: GradingCategory>(
    c: &C,
    tc: &TopographyComplex,
    m: &C::Mor,
    a: &C::Mor,
    a_op: &C::Mor,
    n: &C::Mor,
) -> Result<Unit, TopographyError> {
    let lp = theta_loop(c, m, a, a_op, n)?;
    let path: Vec<usize> = theta_path().iter().map(|t| tc.vertex(t).unwrap()).collect();
    Ok(tc.path_value(c, &lp, &path))
}

/// The loop `a', m, a, n` in storage order, checked to close up.
pub fn theta_loop<C: GradingCategory>(
    c: &C,
    m: &C::Mor,
    a: &C::Mor,
    a_op: &C::Mor,
    n: &C::Mor,
) -> Result<Vec<C::Mor>, TopographyError> {
    let lp = vec![a_op.clone(), m.clone(), a.clone(), n.clone()];
    if !(0..4).all(|i| c.composable(&lp[i], &lp[(i + 1) % 4])) {
        return Err(TopographyError::NotLoop);
    }
    Ok(lp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let t4 = TopographyComplex::new(4).unwrap();
        assert_eq!((t4.vertices.len(), t4.edges.len(), t4.faces.len()), (20, 30, 12));
        assert!(TopographyComplex::new(6).is_err());
    }

    #[test]
    fn theta_path_is_shortest() {
        let t4 = TopographyComplex::new(4).unwrap();
        let p: Vec<usize> = theta_path().iter().map(|t| t4.vertex(t).unwrap()).collect();
        for w in p.windows(2) {
            assert!(t4.edge_between(w[0], w[1]).is_some());
        }
        assert_eq!(t4.shortest_path(p[0], p[4]).len(), 5);
    }

    #[test]
    fn face_kinds() {
        let t4 = TopographyComplex::new(4).unwrap();
        let count = |k: FaceKind| t4.faces.iter().filter(|f| f.kind == k).count();
        assert_eq!((count(FaceKind::Square), count(FaceKind::Pentagon), count(FaceKind::Hexagon)), (4, 4, 4));
        assert_eq!(t4.euler_characteristic(), 2);
    }
}
