//! Chain complexes of free R-modules and their integer specializations.

use crate::graded::Vector;
use crate::homology::{ComplexZ, SparseMat};
use crate::ring::RingElem;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;

/// A labeled generator in a fixed grading class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator<G> {
    pub label: String,
    pub grade: G,
}

/// Free R-modules `C_h` with differentials `d_h: C_h → C_{h+step}`.
/// Column `j` of `maps[h]` is the image of generator `j` of `C_h`.
#[derive(Clone, Debug)]
pub struct ComplexR<G: Ord + Clone> {
    pub step: i64,
    pub gens: BTreeMap<i64, Vec<Generator<G>>>,
    pub maps: BTreeMap<i64, SparseMat<RingElem>>,
    /// Degrees whose homology is determined by the maps that were built.
    pub reported: Vec<i64>,
}

pub fn ring_mat_mul(a: &SparseMat<RingElem>, b: &SparseMat<RingElem>) -> SparseMat<RingElem> {
    assert_eq!(a.cols, b.rows);
    let mut by_row: HashMap<usize, Vec<(usize, &RingElem)>> = HashMap::new();
    for ((k, j), x) in &b.entries {
        by_row.entry(*k).or_default().push((*j, x));
    }
    let mut acc: HashMap<(usize, usize), RingElem> = HashMap::new();
    for ((i, k), x) in &a.entries {
        if let Some(row) = by_row.get(k) {
            for &(j, y) in row {
                *acc.entry((*i, j)).or_default() += &(x * y);
            }
        }
    }
    let mut r = SparseMat::new(a.rows, b.cols);
    r.entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    r
}

/// Builds a matrix from column images.
pub fn from_columns(rows: usize, cols: &[Vector]) -> SparseMat<RingElem> {
    let mut m = SparseMat::new(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        for (&i, c) in v {
            if !c.is_zero() {
                m.entries.insert((i, j), c.clone());
            }
        }
    }
    m
}

impl<G: Ord + Clone + Send + Sync> ComplexR<G> {
    pub fn dim(&self, h: i64) -> usize {
        self.gens.get(&h).map_or(0, |g| g.len())
    }

    /// Number of nonzero entries of `d ∘ d`, computed over R.
    pub fn d_squared_defects(&self) -> usize {
        self.maps
            .iter()
            .filter_map(|(h, m)| self.maps.get(&(h + self.step)).map(|n| ring_mat_mul(n, m).entries.len()))
            .sum()
    }

    /// Every nonzero entry joins generators of the same grading class.
    pub fn is_homogeneous(&self) -> bool {
        self.maps.iter().all(|(h, m)| {
            let (src, tgt) = (&self.gens[h], &self.gens[&(h + self.step)]);
            m.entries.keys().all(|&(i, j)| tgt[i].grade == src[j].grade)
        })
    }

    /// Applies `X ↦ x, Y ↦ y, Z ↦ z` entrywise and splits by grading class.
    pub fn specialize(&self, x: i64, y: i64, z: i64) -> ComplexZ<G> {
        let mut local: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut dims: BTreeMap<(i64, G), usize> = BTreeMap::new();
        for (&h, gs) in &self.gens {
            let idx = gs
                .iter()
                .map(|g| {
                    let d = dims.entry((h, g.grade.clone())).or_default();
                    *d += 1;
                    *d - 1
                })
                .collect();
            local.insert(h, idx);
        }
        let mut maps: BTreeMap<(i64, G), SparseMat<i64>> = BTreeMap::new();
        for (&h, m) in &self.maps {
            let t = h + self.step;
            for ((i, j), c) in &m.entries {
                let g = &self.gens[&h][*j].grade;
                let e = maps
                    .entry((h, g.clone()))
                    .or_insert_with(|| SparseMat::new(dims.get(&(t, g.clone())).copied().unwrap_or(0), dims[&(h, g.clone())]));
                e.add(local[&t][*i], local[&h][*j], c.specialize(x, y, z));
            }
        }
        ComplexZ { step: self.step, dims, maps, reported: self.reported.clone() }
    }
}

impl<G: Ord + Clone + Display> ComplexR<G> {
    /// Sparse matrices with generator annotations.
    pub fn to_json(&self) -> serde_json::Value {
        let gens: serde_json::Map<String, serde_json::Value> = self
            .gens
            .iter()
            .map(|(h, gs)| {
                let v: Vec<serde_json::Value> =
                    gs.iter().map(|g| serde_json::json!({"label": g.label, "grade": g.grade.to_string()})).collect();
                (h.to_string(), v.into())
            })
            .collect();
        let maps: serde_json::Map<String, serde_json::Value> = self
            .maps
            .iter()
            .map(|(h, m)| {
                let e: Vec<serde_json::Value> = m
                    .entries
                    .iter()
                    .map(|((i, j), c)| serde_json::json!([i, j, serde_json::to_value(c).unwrap()]))
                    .collect();
                (h.to_string(), serde_json::json!({"rows": m.rows, "cols": m.cols, "entries": e}))
            })
            .collect();
        serde_json::json!({"step": self.step, "generators": gens, "differentials": maps})
    }
}
