//! Conversions from library types into the shapes used by the reference
//! computations.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use qahh::complex::ComplexR;
use qahh::homology::HomologyTable;
use qahh::ring::{RingElem, Spec};
use std::collections::BTreeMap;

pub type Table = BTreeMap<(i64, i64), (usize, Vec<i64>)>;

/// Nonzero groups of a homology table, with the grading mapped to `i64`.
pub fn table<G: Ord + Clone>(t: &HomologyTable<G>, grade: impl Fn(&G) -> i64) -> Table {
    t.table
        .iter()
        .filter(|(_, e)| e.betti > 0 || !e.torsion.is_empty())
        .map(|((h, g), e)| ((*h, grade(g)), (e.betti, e.torsion.iter().map(|d| d.to_i64().unwrap()).collect())))
        .collect()
}

/// Integer value of an element with no `X`, `Y`, `Z` dependence.
pub fn integer(c: &RingElem) -> Option<i64> {
    let v = c.specialize(1, 1, 1);
    Spec::all().iter().all(|s| s.apply(c) == v).then_some(v).filter(|_| *c == RingElem::constant(v))
}

/// Entries of the differential leaving degree `h`, keyed by (row, column)
/// labels. Panics on a coefficient that is not an integer.
pub fn labeled_matrix<G: Ord + Clone + Send + Sync>(c: &ComplexR<G>, h: i64) -> BTreeMap<(String, String), i64> {
    let src = &c.gens[&h];
    let tgt = &c.gens[&(h + c.step)];
    c.maps[&h]
        .entries
        .iter()
        .map(|(&(i, j), x)| ((tgt[i].label.clone(), src[j].label.clone()), integer(x).expect("non-integer coefficient")))
        .collect()
}

pub fn spec_names() -> Vec<String> {
    Spec::all().iter().map(|s| s.name()).collect()
}
