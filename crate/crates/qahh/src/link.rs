//! Closed link diagrams from PD codes and their unified Khovanov cube.

use crate::chron::{iota, ChronCob, Curves, Handle, IotaError, TVec};
use crate::complex::{ComplexR, Generator};
use crate::homology::SparseMat;
use crate::ring::{RingElem, Unit};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("edge label {0} occurs {1} times")]
    LabelCount(u64, usize),
    #[error("orientation of crossing {0} is inconsistent")]
    Orientation(usize),
    #[error("crossing {0} is annotated {1} but the orientation gives {2}")]
    SignMismatch(usize, i8, i8),
    #[error("face at state {state:#b} for crossings {i}, {j}: {err}")]
    Defect { state: u64, i: usize, j: usize, err: IotaError },
    #[error("face at state {state:#b} for crossings {i}, {j} is not solved by the edge assignment")]
    Unsolved { state: u64, i: usize, j: usize },
    #[error("{0} crossings is more than this cube supports")]
    TooLarge(usize),
}

/// A closed diagram: crossings `X(i, j, k, l)` listed counterclockwise from
/// the incoming under-strand, with signs, plus unknotted free loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    pub name: Option<String>,
    pub crossings: Vec<[u64; 4]>,
    pub signs: Vec<i8>,
    pub free_loops: usize,
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{}: ", n)?;
        }
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(x, s)| format!("X({},{},{},{}){}", x[0], x[1], x[2], x[3], if *s > 0 { '+' } else { '-' }))
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        write!(f, "PD[{}]", parts.join(", "))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LinkError> {
        Err(LinkError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), LinkError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Result<u64, LinkError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an edge label");
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().or_else(|_| self.err("edge label too large"))
    }
}

/// Parses one diagram: `[name:] PD[item, ...]` where an item is
/// `X(i,j,k,l)` (or with square brackets), optionally followed by `+` or
/// `-`, or `O` for a free loop. `PD[]` is the crossingless unknot.
pub fn parse_pd(line: &str) -> Result<LinkDiagram, LinkError> {
    let (name, body, offset) = match line.find("PD") {
        Some(i) => {
            let head = line[..i].trim();
            let name = head.strip_suffix(':').map(|n| n.trim().to_string());
            if !head.is_empty() && name.is_none() {
                return Err(LinkError::Parse { pos: 0, msg: "expected 'name:' before PD".into() });
            }
            (name, &line[i + 2..], i + 2)
        }
        None => return Err(LinkError::Parse { pos: 0, msg: "expected 'PD['".into() }),
    };
    let mut p = Parser { s: body.as_bytes(), pos: 0 };
    let fix = |e: LinkError| match e {
        LinkError::Parse { pos, msg } => LinkError::Parse { pos: pos + offset, msg },
        e => e,
    };
    let mut crossings = Vec::new();
    let mut annotated = Vec::new();
    let mut free_loops = 0;
    p.expect(b'[').map_err(fix)?;
    if !p.eat(b']') {
        loop {
            match p.peek() {
                Some(b'O') => {
                    p.pos += 1;
                    free_loops += 1;
                }
                Some(b'X') => {
                    p.pos += 1;
                    let close = match p.peek() {
                        Some(b'(') => b')',
                        Some(b'[') => b']',
                        _ => return p.err("expected '(' after X").map_err(fix),
                    };
                    p.pos += 1;
                    let mut x = [0u64; 4];
                    for (k, slot) in x.iter_mut().enumerate() {
                        if k > 0 {
                            p.expect(b',').map_err(fix)?;
                        }
                        *slot = p.number().map_err(fix)?;
                    }
                    p.expect(close).map_err(fix)?;
                    let s = if p.eat(b'+') {
                        Some(1)
                    } else if p.eat(b'-') {
                        Some(-1)
                    } else {
                        None
                    };
                    crossings.push(x);
                    annotated.push(s);
                }
                _ => return p.err("expected X(...) or O").map_err(fix),
            }
            if p.eat(b']') {
                break;
            }
            p.expect(b',').map_err(fix)?;
        }
    }
    if p.peek().is_some() {
        return p.err("trailing input").map_err(fix);
    }
    if crossings.is_empty() && free_loops == 0 {
        free_loops = 1;
    }
    let signs = orient(&crossings, &annotated)?;
    Ok(LinkDiagram { name, crossings, signs, free_loops })
}

/// Parses a file with one diagram per line; blank lines and lines starting
/// with `#` are skipped.
pub fn parse_pd_file(text: &str) -> Result<Vec<LinkDiagram>, LinkError> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(parse_pd).collect()
}

/// Crossing signs from the orientation forced by the under-strands
/// (`i → k`). Components passing only over other strands follow an
/// annotation if present, otherwise they are entered through slot `l`.
fn orient(xs: &[[u64; 4]], annotated: &[Option<i8>]) -> Result<Vec<i8>, LinkError> {
    let mut at: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in xs.iter().enumerate() {
        for (p, &l) in x.iter().enumerate() {
            at.entry(l).or_default().push((c, p));
        }
    }
    let mut labels: Vec<&u64> = at.keys().collect();
    labels.sort();
    for l in labels {
        let n = at[l].len();
        if n != 2 {
            return Err(LinkError::LabelCount(*l, n));
        }
    }
    let other = |c: usize, p: usize| -> (usize, usize) {
        let v = &at[&xs[c][p]];
        if v[0] == (c, p) {
            v[1]
        } else {
            v[0]
        }
    };
    let mut seen = vec![[false; 4]; xs.len()];
    let mut comps: Vec<Vec<(usize, usize)>> = Vec::new();
    let starts = (0..xs.len()).map(|c| (c, 0)).chain((0..xs.len()).map(|c| (c, 3)));
    for (c0, p0) in starts {
        if seen[c0][p0] {
            continue;
        }
        let mut comp = Vec::new();
        let (mut c, mut p) = (c0, p0);
        while !seen[c][p] {
            let q = (p + 2) % 4;
            seen[c][p] = true;
            seen[c][q] = true;
            comp.push((c, p));
            (c, p) = other(c, q);
        }
        comps.push(comp);
    }
    let mut over_entry = vec![3usize; xs.len()];
    for comp in comps {
        let unders: Vec<(usize, usize)> = comp.iter().copied().filter(|&(_, p)| p % 2 == 0).collect();
        let reversed = if let Some(&(c, _)) = unders.iter().find(|&&(_, p)| p != unders[0].1) {
            return Err(LinkError::Orientation(c));
        } else if let Some(&(_, p)) = unders.first() {
            p == 2
        } else {
            comp.iter().find_map(|&(c, p)| annotated[c].map(|s| (p == 3) != (s > 0))).unwrap_or(false)
        };
        for &(c, p) in &comp {
            let p = if reversed { (p + 2) % 4 } else { p };
            if p % 2 == 1 {
                over_entry[c] = p;
            }
        }
    }
    let signs: Vec<i8> = over_entry.iter().map(|&p| if p == 3 { 1 } else { -1 }).collect();
    for (c, a) in annotated.iter().enumerate() {
        if let Some(s) = *a {
            if s != signs[c] {
                return Err(LinkError::SignMismatch(c, s, signs[c]));
            }
        }
    }
    Ok(signs)
}

/// One vertex of the cube of resolutions.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub curves: Curves,
    pub circles: usize,
}

/// Outcome of comparing the two chronologies around one square face.
#[derive(Clone, Debug, Serialize)]
pub struct FaceDefect {
    pub state: u64,
    pub i: usize,
    pub j: usize,
    /// Units `u` with `F(s_j ∘ s_i) = u · F(s_i ∘ s_j)`; `None` when both
    /// composites vanish.
    pub units: Option<Vec<Unit>>,
}

/// The cube of resolutions with solved edge coefficients.
#[derive(Clone, Debug)]
pub struct LinkCube {
    pub diagram: LinkDiagram,
    pub n_plus: i64,
    pub n_minus: i64,
    pub states: Vec<Resolution>,
    pub faces: Vec<FaceDefect>,
    /// Coefficient of the edge leaving `state` through crossing `i`.
    pub edge_coef: BTreeMap<(u64, usize), Unit>,
}

const MAX_CROSSINGS: usize = 16;

impl LinkCube {
    fn pd_edges(&self) -> usize {
        2 * self.diagram.crossings.len()
    }

    fn saddle(&self, i: usize) -> Handle {
        let b = self.pd_edges();
        Handle::Saddle { lower: b + 2 * i, upper: b + 2 * i + 1, seam: false, flip: false }
    }

    /// `F` of the saddle at crossing `i` leaving `state`, in canonical bases.
    pub fn edge_matrix(&self, state: u64, i: usize) -> Vec<TVec> {
        ChronCob::new(self.states[state as usize].curves.clone(), vec![self.saddle(i)]).matrix()
    }

    pub fn crossings(&self) -> usize {
        self.diagram.crossings.len()
    }

    /// `h = r − n₋`.
    pub fn h(&self, state: u64) -> i64 {
        state.count_ones() as i64 - self.n_minus
    }

    /// `q = #v₊ − #v₋ + r + n₊ − 2n₋`.
    pub fn q(&self, state: u64, mask: u64) -> i64 {
        let k = self.states[state as usize].circles as i64;
        let r = state.count_ones() as i64;
        k - 2 * mask.count_ones() as i64 + r + self.n_plus - 2 * self.n_minus
    }
}

fn resolution(d: &LinkDiagram, state: u64) -> Curves {
    let n = d.crossings.len();
    let mut c = Curves::new();
    for k in 0..4 * n {
        c.add_node(k as u64);
    }
    let mut first: BTreeMap<u64, usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for (ci, x) in d.crossings.iter().enumerate() {
        for (p, &l) in x.iter().enumerate() {
            let node = 4 * ci + p;
            match first.remove(&l) {
                Some(o) => pairs.push((o, node)),
                None => {
                    first.insert(l, node);
                }
            }
        }
    }
    pairs.sort();
    for (a, b) in pairs {
        c.add_edge(a, b);
    }
    for ci in 0..n {
        let v = |p: usize| 4 * ci + p;
        if state >> ci & 1 == 0 {
            c.add_edge(v(0), v(1));
            c.add_edge(v(3), v(2));
        } else {
            c.add_edge(v(0), v(3));
            c.add_edge(v(1), v(2));
        }
    }
    for f in 0..d.free_loops {
        c.add_free_circle((4 * n + f) as u64);
    }
    c
}

/// Builds the resolutions and face defects, then solves the edge
/// coefficients.
pub fn build_cube(d: &LinkDiagram) -> Result<LinkCube, LinkError> {
    let n = d.crossings.len();
    if n > MAX_CROSSINGS {
        return Err(LinkError::TooLarge(n));
    }
    let states: Vec<Resolution> = (0..1u64 << n)
        .into_par_iter()
        .map(|s| {
            let curves = resolution(d, s);
            let circles = curves.num_circles();
            Resolution { curves, circles }
        })
        .collect();
    let n_plus = d.signs.iter().filter(|&&s| s > 0).count() as i64;
    let mut cube = LinkCube { diagram: d.clone(), n_plus, n_minus: n as i64 - n_plus, states, faces: Vec::new(), edge_coef: BTreeMap::new() };
    let jobs: Vec<(u64, usize, usize)> = (0..1u64 << n)
        .flat_map(|s| {
            (0..n).filter(move |&i| s >> i & 1 == 0).flat_map(move |i| (i + 1..n).filter(move |&j| s >> j & 1 == 0).map(move |j| (s, i, j)))
        })
        .collect();
    let faces: Result<Vec<FaceDefect>, LinkError> = jobs
        .into_par_iter()
        .map(|(s, i, j)| {
            let src = cube.states[s as usize].curves.clone();
            let w1 = ChronCob::new(src.clone(), vec![cube.saddle(i), cube.saddle(j)]);
            let w2 = ChronCob::new(src, vec![cube.saddle(j), cube.saddle(i)]);
            let units = match iota(&w1, &w2) {
                Ok(r) => Some(r.units),
                Err(IotaError::NoEntry) => None,
                Err(err) => return Err(LinkError::Defect { state: s, i, j, err }),
            };
            Ok(FaceDefect { state: s, i, j, units })
        })
        .collect();
    cube.faces = faces?;
    solve_edge_coefficients(&mut cube)?;
    Ok(cube)
}

/// Tree edges (into each state, through its lowest 1-bit) get coefficient
/// 1; every other edge is solved from the face it closes. All faces are
/// verified afterwards.
pub fn solve_edge_coefficients(cube: &mut LinkCube) -> Result<(), LinkError> {
    let n = cube.crossings();
    let face_at: HashMap<(u64, usize, usize), &FaceDefect> = cube.faces.iter().map(|f| ((f.state, f.i, f.j), f)).collect();
    let ratio = |f: &FaceDefect| f.units.as_ref().map_or(Unit::ONE, |u| u[0]);
    let mut coef: BTreeMap<(u64, usize), Unit> = BTreeMap::new();
    let mut order: Vec<u64> = (1..1u64 << n).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    for v in order {
        let ones: Vec<usize> = (0..n).filter(|&i| v >> i & 1 == 1).collect();
        let i0 = ones[0];
        coef.insert((v ^ 1 << i0, i0), Unit::ONE);
        for &j in &ones[1..] {
            let w = v ^ 1 << i0 ^ 1 << j;
            let f = face_at[&(w, i0, j)];
            let ca = coef[&(w, i0)];
            let cc = coef[&(w, j)];
            let cd = coef[&(w | 1 << j, i0)];
            coef.insert((w | 1 << i0, j), Unit::MINUS_ONE * cd * cc * ratio(f) * ca.inv());
        }
    }
    for f in &cube.faces {
        let (w, i, j) = (f.state, f.i, f.j);
        let path_ij = coef[&(w, i)] * coef[&(w | 1 << i, j)];
        let path_ji = coef[&(w, j)] * coef[&(w | 1 << j, i)];
        let ok = match &f.units {
            None => true,
            Some(us) => us.iter().any(|&u| u * path_ji == Unit::MINUS_ONE * path_ij),
        };
        if !ok {
            return Err(LinkError::Unsolved { state: w, i, j });
        }
    }
    cube.edge_coef = coef;
    Ok(())
}

impl LinkCube {
    /// The total complex, graded by `(h, q)`, differential of degree `+1`.
    pub fn complex(&self) -> ComplexR<i64> {
        let n = self.crossings();
        let mut by_h: BTreeMap<i64, Vec<(u64, u64)>> = BTreeMap::new();
        for s in 0..1u64 << n {
            for mask in 0..1u64 << self.states[s as usize].circles {
                by_h.entry(self.h(s)).or_default().push((s, mask));
            }
        }
        for h in -self.n_minus..=n as i64 - self.n_minus {
            by_h.entry(h).or_default();
        }
        let index: HashMap<(u64, u64), usize> =
            by_h.values().flat_map(|v| v.iter().enumerate().map(|(k, &p)| (p, k))).collect();
        let mut gens = BTreeMap::new();
        for (&h, v) in &by_h {
            let g = v
                .iter()
                .map(|&(s, mask)| {
                    let k = self.states[s as usize].circles;
                    let st: String = (0..n).map(|i| if s >> i & 1 == 1 { '1' } else { '0' }).collect();
                    let lab: String = (0..k).map(|i| if mask >> i & 1 == 1 { '-' } else { '+' }).collect();
                    Generator { label: format!("{}|{}", st, lab), grade: self.q(s, mask) }
                })
                .collect();
            gens.insert(h, g);
        }
        let mut maps = BTreeMap::new();
        for (&h, v) in &by_h {
            let Some(tgt) = by_h.get(&(h + 1)) else { continue };
            let mut m = SparseMat::<RingElem>::new(tgt.len(), v.len());
            let states: Vec<u64> = {
                let mut s: Vec<u64> = v.iter().map(|p| p.0).collect();
                s.dedup();
                s
            };
            for s in states {
                for i in (0..n).filter(|&i| s >> i & 1 == 0) {
                    let c = self.edge_coef[&(s, i)];
                    let t = s | 1 << i;
                    for (mask, img) in self.edge_matrix(s, i).iter().enumerate() {
                        let col = index[&(s, mask as u64)];
                        for (&tm, x) in img {
                            let row = index[&(t, tm)];
                            let e = m.entries.entry((row, col)).or_default();
                            *e += &x.mul_unit(c);
                        }
                    }
                }
            }
            m.entries.retain(|_, x| !x.is_zero());
            maps.insert(h, m);
        }
        let reported = by_h.keys().copied().collect();
        ComplexR { step: 1, gens, maps, reported }
    }

    /// Edge coefficients for the JSON report.
    pub fn edges_json(&self) -> serde_json::Value {
        let n = self.crossings();
        let v: Vec<serde_json::Value> = self
            .edge_coef
            .iter()
            .map(|(&(s, i), u)| {
                let st: String = (0..n).map(|k| if s >> k & 1 == 1 { '1' } else { '0' }).collect();
                serde_json::json!({"state": st, "crossing": i, "coefficient": u.to_string()})
            })
            .collect();
        v.into()
    }
}

/// Parses, builds and solves in one step.
pub fn build_link_cube(d: &LinkDiagram) -> Result<(LinkCube, ComplexR<i64>), LinkError> {
    let cube = build_cube(d)?;
    let c = cube.complex();
    Ok((cube, c))
}
