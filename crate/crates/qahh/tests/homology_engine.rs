mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use qahh::homology::{mod2_from_integral, smith_normal_form, ComplexZ, IntMatrix, SparseMat};
use std::collections::BTreeMap;

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_int(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64(m.len(), m[0].len(), m)
}


fn invariants(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m, false).invariants
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_is_a_factorization(m in matrix(40)) {
        let a = to_int(&m);
        let s = smith_normal_form(&a, true);
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        prop_assert_eq!(u.mul(&a).mul(&v), s.d.clone());
        prop_assert!(u.determinant().abs().is_one());
        prop_assert!(v.determinant().abs().is_one());
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    prop_assert!(s.d.data[i][j].is_zero());
                }
            }
        }
        for w in s.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.invariants.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn invariants_under_unimodular_change(m in matrix(12), ops1 in prop::collection::vec((0usize..12, 0usize..12, -2i64..3), 0..20), ops2 in prop::collection::vec((0usize..12, 0usize..12, -2i64..3), 0..20)) {
        let a = to_int(&m);
        let p = unimodular_pair(a.rows, &ops1).0;
        let q = unimodular_pair(a.cols, &ops2).0;
        prop_assert_eq!(invariants(&p.mul(&a).mul(&q)), invariants(&a));
    }

    #[test]
    fn matches_reference_factors(m in matrix(10)) {
        let ours: Vec<i64> = invariants(&to_int(&m)).iter().map(|d| d.to_i64().unwrap()).collect();
        let mut theirs = common::invariant_factors(&m);
        theirs.sort();
        let mut sorted = ours.clone();
        sorted.sort();
        // The reference does not normalise divisibility, so compare products and ranks.
        prop_assert_eq!(sorted.len(), theirs.len());
        prop_assert_eq!(ours.iter().product::<i64>(), theirs.iter().product::<i64>());
    }

    #[test]
    fn euler_characteristic_is_alternating_betti_sum(seed in any::<u64>(), sizes in prop::collection::vec(1usize..6, 3..6)) {
        let c = random_complex(seed, &sizes);
        prop_assert!(c.check_d_squared());
        let t = c.homology();
        let betti: i64 = t.table.iter().map(|((h, _), e)| if h % 2 == 0 { e.betti as i64 } else { -(e.betti as i64) }).sum();
        let chain: i64 = c.dims.iter().map(|((h, _), &n)| if h % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        prop_assert_eq!(betti, chain);
        let mut direct = c.homology_mod2();
        direct.retain(|_, v| *v > 0);
        prop_assert_eq!(direct, mod2_from_integral(&t, c.step));
    }
}

/// Elementary row operations `row_i += q row_j` applied to the identity,
/// with the inverse product.
fn unimodular_pair(n: usize, ops: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let apply = |m: &mut IntMatrix, i: usize, j: usize, q: i64| {
        let src = m.data[j].clone();
        for (x, y) in m.data[i].iter_mut().zip(src) {
            *x += y * q;
        }
    };
    let ops: Vec<(usize, usize, i64)> = ops.iter().map(|&(i, j, q)| (i % n, j % n, q)).filter(|(i, j, _)| i != j).collect();
    let (mut m, mut inv) = (IntMatrix::identity(n), IntMatrix::identity(n));
    for &(i, j, q) in &ops {
        apply(&mut m, i, j, q);
    }
    for &(i, j, q) in ops.iter().rev() {
        apply(&mut inv, i, j, -q);
    }
    (m, inv)
}

/// A split complex `K_h ⊕ I_h` with `d` scaling part of `K_h` onto `I_{h+1}`,
/// conjugated degreewise by random unimodular matrices.
fn random_complex(seed: u64, sizes: &[usize]) -> ComplexZ<i64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = sizes.len();
    let mut image = vec![0; n];
    for h in 1..n {
        image[h] = rng.gen_range(0..=sizes[h - 1]);
    }
    let total: Vec<usize> = (0..n).map(|h| sizes[h] + image[h]).collect();
    let bases: Vec<(IntMatrix, IntMatrix)> = total
        .iter()
        .map(|&t| {
            let ops: Vec<(usize, usize, i64)> = (0..3 * t).map(|_| (rng.gen_range(0..t), rng.gen_range(0..t), rng.gen_range(-2..3))).collect();
            unimodular_pair(t, &ops)
        })
        .collect();
    let mut dims = BTreeMap::new();
    let mut maps = BTreeMap::new();
    for h in 0..n {
        dims.insert((h as i64, 0i64), total[h]);
    }
    for h in 0..n - 1 {
        let mut d = IntMatrix::zeros(total[h + 1], total[h]);
        for k in 0..image[h + 1] {
            d.data[sizes[h + 1] + k][k] = BigInt::from(rng.gen_range(1..4));
        }
        let d = bases[h + 1].0.mul(&d).mul(&bases[h].1);
        let mut m = SparseMat::new(total[h + 1], total[h]);
        for (i, row) in d.data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.add(i, j, x.to_i64().unwrap());
            }
        }
        maps.insert((h as i64, 0i64), m);
    }
    ComplexZ { step: 1, dims, maps, reported: (0..n as i64).collect() }
}

#[test]
fn known_smith_forms() {
    let s = smith_normal_form(&IntMatrix::from_i64(2, 2, &[vec![2, 4], vec![6, 8]]), false);
    assert_eq!(s.invariants, vec![BigInt::from(2), BigInt::from(4)]);
    let s = smith_normal_form(&IntMatrix::from_i64(3, 3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]), false);
    assert_eq!(s.invariants, vec![BigInt::from(1), BigInt::from(6)]);
}

#[test]
fn empty_and_zero_matrices() {
    assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 3), true).rank(), 0);
    assert_eq!(smith_normal_form(&IntMatrix::zeros(4, 2), true).rank(), 0);
}

#[test]
fn torsion_is_reported() {
    // Z --2--> Z: H^0 = 0, H^1 = Z/2.
    let mut m = SparseMat::new(1, 1);
    m.add(0, 0, 2);
    let c = ComplexZ {
        step: 1,
        dims: [((0, 0), 1), ((1, 0), 1)].into_iter().collect(),
        maps: [((0, 0), m)].into_iter().collect(),
        reported: vec![0, 1],
    };
    let t = c.homology().nonzero();
    assert_eq!(t.table.len(), 1);
    assert_eq!(t.table[&(1, 0)].torsion, vec![BigInt::from(2)]);
    assert_eq!(t.to_tsv(), "h\tgrading\tbetti\ttorsion\n1\t0\t0\t2\n");
}
