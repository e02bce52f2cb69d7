use salmon_core::algebra::Dims;
use salmon_core::determinantal::flattening_ranks;
use salmon_core::geometry::{
    ideal_scan, sample_secant, sample_subspace, subspace_dim, subspace_jacobian_dim, terracini_dim, ScanOptions,
};
use salmon_core::rep::Partition;

fn expected_secant_dim(r: usize, d: Dims) -> usize {
    (r * (d.a + d.b + d.c - 2) - 1).min(d.volume() - 1)
}

#[test]
fn terracini_is_seed_independent() {
    for seed in 0..10 {
        assert_eq!(terracini_dim(4, Dims::new(3, 3, 4), seed).unwrap(), 31);
    }
    assert_eq!(terracini_dim(4, Dims::new(3, 3, 3), 0).unwrap(), 25);
}

#[test]
fn terracini_matches_the_expected_dimension_off_the_defective_cases() {
    for (r, d) in [
        (1, Dims::new(3, 3, 4)),
        (2, Dims::new(3, 3, 4)),
        (3, Dims::new(3, 3, 4)),
        (2, Dims::new(2, 2, 2)),
        (4, Dims::new(4, 4, 4)),
        (5, Dims::new(4, 4, 4)),
    ] {
        assert_eq!(terracini_dim(r, d, 1).unwrap(), expected_secant_dim(r, d), "r = {r} at {d}");
    }
}

#[test]
fn subspace_closed_form_matches_the_jacobian() {
    let dims = Dims::new(4, 4, 4);
    let mut checked = 0;
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                // otherwise a flattening bound is stricter than the target
                if a > b * c || b > a * c || c > a * b {
                    continue;
                }
                let t = Dims::new(a, b, c);
                assert_eq!(subspace_dim(t, dims).unwrap(), subspace_jacobian_dim(t, dims, 3).unwrap(), "{t}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 37);
    assert_eq!(subspace_dim(Dims::new(3, 3, 3), Dims::new(3, 3, 4)).unwrap(), 29);
    assert_eq!(subspace_dim(Dims::new(2, 3, 4), Dims::new(3, 3, 4)).unwrap(), 25);
    assert!(subspace_dim(Dims::new(5, 1, 1), dims).is_err());
}

#[test]
fn samples_have_the_requested_shape() {
    let d = Dims::new(4, 4, 5);
    for r in 1..=4 {
        let t = sample_secant(r, d, r as u64).unwrap().tensor;
        assert_eq!(flattening_ranks(&t), [r, r, r]);
    }
    let s = sample_subspace(Dims::new(2, 3, 4), d, 0).unwrap().tensor;
    assert_eq!(flattening_ranks(&s), [2, 3, 4]);
    assert_eq!(sample_secant(4, d, 8).unwrap().tensor, sample_secant(4, d, 8).unwrap().tensor);
}

#[test]
fn degree_two_scan_finds_the_minors_only_on_rank_one() {
    let dims = Dims::new(3, 3, 4);
    let quad = |rank| {
        let opts = ScanOptions {
            samples: 30,
            secant_rank: rank,
            ..ScanOptions::default()
        };
        ideal_scan(2, dims, opts, 4).unwrap()
    };
    let one = quad(1);
    let found: Vec<_> = one.vanishing().map(|c| c.triple.clone()).collect();
    let (s2, l2) = (Partition::of(&[2]), Partition::of(&[1, 1]));
    assert_eq!(found.len(), 3);
    for t in [[s2.clone(), l2.clone(), l2.clone()], [l2.clone(), s2.clone(), l2.clone()], [l2.clone(), l2, s2]] {
        assert!(found.contains(&t));
    }
    assert_eq!(quad(4).vanishing().count(), 0);
}

#[test]
fn nothing_vanishes_in_degree_five() {
    let r = ideal_scan(5, Dims::new(3, 3, 4), ScanOptions::default(), 1).unwrap();
    assert!(!r.components.is_empty());
    assert_eq!(r.vanishing().count(), 0);
}

#[test]
fn scan_guards() {
    let few = ScanOptions {
        samples: 1,
        ..ScanOptions::default()
    };
    assert!(ideal_scan(3, Dims::new(3, 3, 4), few, 0).is_err());
    assert!(ideal_scan(7, Dims::new(3, 3, 4), ScanOptions::default(), 0).is_err());
}
