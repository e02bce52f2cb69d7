use num_traits::Zero;

use salmon_core::algebra::{rational, Dims, Factor, Rational, Tensor3};
use salmon_core::determinantal::{
    build_psi, flattening_ranks, psi_rank, strassen_commutator, strassen_det, strassen_poly, subspace_test,
};
use salmon_core::geometry::{sample_secant, sample_subspace};
use salmon_core::membership::friedland_point;
use salmon_core::random::{int_tensor, rng_for};

/// Fraction-free elimination over i128; exact as long as the entries stay small.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn small_tensor(seed: u64, bound: i64) -> (Tensor3, Vec<i64>) {
    let t = int_tensor(&mut rng_for(seed, 0), Dims::new(3, 3, 3), bound);
    let ints = t.entries().iter().map(|x| x.to_integer().try_into().unwrap()).collect();
    (t, ints)
}

#[test]
fn strassen_polynomial_has_9216_terms() {
    let p = strassen_poly();
    assert_eq!(p.len(), 9216);
    assert_eq!(p.degree(), 9);
    assert!(p.is_canonical());
}

#[test]
fn polynomial_determinant_and_written_out_psi_agree() {
    for seed in 0..50 {
        let (t, x) = small_tensor(seed, 6);
        let e = |i: usize, j: usize, k: usize| i128::from(x[(i * 3 + j) * 3 + k]);
        // blocks [[0, T3, -T2], [-T3, 0, T1], [T2, -T1, 0]] of A-slices T_i
        let mut psi = vec![vec![0i128; 9]; 9];
        for j in 0..3 {
            for k in 0..3 {
                psi[j][3 + k] = e(2, j, k);
                psi[j][6 + k] = -e(1, j, k);
                psi[3 + j][k] = -e(2, j, k);
                psi[3 + j][6 + k] = e(0, j, k);
                psi[6 + j][k] = e(1, j, k);
                psi[6 + j][3 + k] = -e(0, j, k);
            }
        }
        let oracle = Rational::from_integer(bareiss_det(psi).into());
        assert_eq!(strassen_det(&t).unwrap(), oracle);
        assert_eq!(strassen_poly().evaluate_exact(&t).unwrap(), oracle);
    }
}

#[test]
fn commutator_form_on_rational_tensors() {
    let mut checked = 0;
    for seed in 0..40 {
        let (t, _) = small_tensor(seed + 100, 20);
        let t = t.map(|x| x / rational(7) + Rational::new(1.into(), 3.into()));
        if let Some(c) = strassen_commutator(&t).unwrap() {
            assert_eq!(c, strassen_poly().evaluate_exact(&t).unwrap());
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn psi_rank_is_at_most_twice_the_rank() {
    for c in [3, 4] {
        for k in 1..=6 {
            let t = sample_secant(k, Dims::new(3, 3, c), 7 + k as u64).unwrap().tensor;
            let r = psi_rank(&t).unwrap();
            assert!(r <= 2 * k, "rank {k} at c = {c} gave psi rank {r}");
        }
        let generic = int_tensor(&mut rng_for(3, 0), Dims::new(3, 3, c), 50);
        assert_eq!(psi_rank(&generic).unwrap(), 9);
    }
    assert!(build_psi(&Tensor3::<Rational>::zeros(Dims::new(4, 3, 3))).is_err());
}

#[test]
fn strassen_vanishes_on_rank_four_and_its_relabelings() {
    let p = strassen_poly();
    let swapped = p.substitute_indices(Factor::B, &[2, 1, 3]).unwrap().canonicalize();
    let moved = p.permute_factors([Factor::B, Factor::C, Factor::A]).canonicalize();
    for seed in 0..10 {
        let t = sample_secant(4, Dims::new(3, 3, 3), seed).unwrap().tensor;
        for q in [&p, &swapped, &moved] {
            assert!(q.evaluate_exact(&t).unwrap().is_zero());
        }
    }
    let generic = int_tensor(&mut rng_for(9, 0), Dims::new(3, 3, 3), 50);
    assert!(!p.evaluate_exact(&generic).unwrap().is_zero());
}

#[test]
fn subspace_membership_by_flattenings() {
    let dims = Dims::new(3, 3, 4);
    for seed in 0..5 {
        let t = sample_subspace(Dims::new(3, 3, 3), dims, seed).unwrap().tensor;
        assert!(subspace_test(&t, Dims::new(3, 3, 3)));
        let t = sample_subspace(Dims::new(2, 3, 4), dims, seed).unwrap().tensor;
        assert!(subspace_test(&t, Dims::new(2, 3, 4)));
        assert!(!subspace_test(&t, Dims::new(2, 3, 3)));
    }
    let generic = int_tensor(&mut rng_for(1, 0), dims, 50);
    assert_eq!(flattening_ranks(&generic), [3, 3, 4]);
    assert!(!subspace_test(&generic, Dims::new(3, 3, 3)));
}

#[test]
fn friedland_point_invariants() {
    let t = friedland_point();
    assert_eq!(t.dims(), Dims::new(3, 3, 4));
    assert_eq!(flattening_ranks(&t), [3, 3, 4]);
    assert_eq!(psi_rank(&t).unwrap(), 8);
}
