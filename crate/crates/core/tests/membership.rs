use salmon_core::algebra::{Dims, Matrix, Rational, Tensor3};
use salmon_core::geometry::{sample_secant, sample_subspace};
use salmon_core::membership::{
    border_rank_le4_test, compress, friedland_point, test_family, CompressionMaps, Conclusion, Family, Mode,
    TestOptions, Verdict,
};
use salmon_core::random::{int_matrix, int_tensor, rng_for};
use salmon_core::Error;

fn opts(trials: usize, seed: u64) -> TestOptions {
    TestOptions {
        trials,
        seed,
        mode: Mode::Exact,
    }
}

fn invertible(seed: u64, n: usize) -> Matrix<Rational> {
    let mut rng = rng_for(seed, 0);
    loop {
        let m = int_matrix(&mut rng, n, n, 9);
        if m.rank() == n {
            return m;
        }
    }
}

#[test]
fn friedland_point_fails_only_m6() {
    let r = border_rank_le4_test(&friedland_point(), &opts(20, 5)).unwrap();
    assert_eq!(r.conclusion, Conclusion::NotInZeroSet);
    assert!(r.sub444_pass);
    assert_eq!(r.families.m6.verdict, Verdict::DoesNotVanish);
    assert!(r.families.m6.certain);
    let w = r.families.m6.witness.as_ref().unwrap();
    assert_ne!(w.value, "0");
    assert_eq!(r.families.m9.verdict, Verdict::Vanishes);
    assert_eq!(r.families.m5.verdict, Verdict::Vanishes);
    assert_eq!(r.families.m5.targets, vec![[4, 4, 4]]);
}

#[test]
fn rank_four_tensors_pass_in_several_shapes() {
    for (n, dims) in [Dims::new(3, 3, 3), Dims::new(3, 4, 3), Dims::new(4, 4, 4), Dims::new(4, 4, 5)]
        .into_iter()
        .enumerate()
    {
        let t = sample_secant(4, dims, 30 + n as u64).unwrap().tensor;
        let r = border_rank_le4_test(&t, &opts(4, 1)).unwrap();
        assert_eq!(r.conclusion, Conclusion::InZeroSet, "{dims}");
    }
}

#[test]
fn generic_tensors_fail() {
    for seed in 0..3 {
        let t = int_tensor(&mut rng_for(seed, 9), Dims::new(3, 3, 4), 100);
        let m6 = test_family(&t, Family::M6, &opts(2, seed)).unwrap();
        assert_eq!(m6.verdict, Verdict::DoesNotVanish);
        let t = int_tensor(&mut rng_for(seed, 10), Dims::new(4, 4, 4), 100);
        assert_eq!(border_rank_le4_test(&t, &opts(2, seed)).unwrap().conclusion, Conclusion::NotInZeroSet);
    }
}

#[test]
fn thin_subspace_tensors_pass() {
    // Sub_{2,3,4}: a 2 x 3 x 4 pencil has border rank at most 4.
    let t = sample_subspace(Dims::new(2, 3, 4), Dims::new(3, 3, 4), 4).unwrap().tensor;
    assert_eq!(border_rank_le4_test(&t, &opts(4, 2)).unwrap().conclusion, Conclusion::InZeroSet);
}

#[test]
fn verdicts_are_invariant_under_change_of_basis() {
    let dims = Dims::new(3, 3, 4);
    let inside = sample_secant(4, dims, 11).unwrap().tensor;
    let outside = friedland_point();
    for s in 0..20 {
        let g = [invertible(3 * s, 3), invertible(3 * s + 1, 3), invertible(3 * s + 2, 4)];
        let maps = [&g[0], &g[1], &g[2]];
        let a = border_rank_le4_test(&inside.transform(maps).unwrap(), &opts(2, s)).unwrap();
        assert_eq!(a.conclusion, Conclusion::InZeroSet);
        let b = border_rank_le4_test(&outside.transform(maps).unwrap(), &opts(2, s)).unwrap();
        assert_eq!(b.conclusion, Conclusion::NotInZeroSet);
    }
}

#[test]
fn embedding_keeps_the_verdict() {
    let inside = sample_secant(4, Dims::new(3, 3, 4), 12).unwrap().tensor;
    let big = inside.embed(Dims::new(4, 4, 5)).unwrap();
    assert_eq!(border_rank_le4_test(&big, &opts(3, 0)).unwrap().conclusion, Conclusion::InZeroSet);
    let out = friedland_point().embed(Dims::new(4, 4, 4)).unwrap();
    assert_eq!(border_rank_le4_test(&out, &opts(3, 0)).unwrap().conclusion, Conclusion::NotInZeroSet);
}

#[test]
fn reports_are_deterministic() {
    let t = friedland_point();
    let a = border_rank_le4_test(&t, &opts(6, 77)).unwrap().to_json();
    let b = border_rank_le4_test(&t, &opts(6, 77)).unwrap().to_json();
    assert_eq!(a, b);
    let maps = CompressionMaps::random(Dims::new(3, 3, 4), Dims::new(3, 3, 3), 1, 2);
    assert_eq!(maps, CompressionMaps::random(Dims::new(3, 3, 4), Dims::new(3, 3, 3), 1, 2));
    assert_eq!(compress(&t, &maps).unwrap().dims(), Dims::new(3, 3, 3));
}

#[test]
fn numeric_mode_agrees_with_exact_mode() {
    let numeric = |seed| TestOptions {
        trials: 3,
        seed,
        mode: Mode::Numeric,
    };
    let inside = sample_secant(4, Dims::new(3, 3, 4), 13).unwrap().tensor;
    let r = border_rank_le4_test(&inside, &numeric(1)).unwrap();
    assert_eq!(r.conclusion, Conclusion::InZeroSet);
    let r = border_rank_le4_test(&friedland_point(), &numeric(1)).unwrap();
    assert_eq!(r.conclusion, Conclusion::NotInZeroSet);
    assert!(!r.families.m6.certain);
}

#[test]
fn small_factors_are_rejected() {
    let t = Tensor3::<Rational>::zeros(Dims::new(2, 3, 4));
    assert!(matches!(border_rank_le4_test(&t, &opts(1, 0)), Err(Error::DimensionMismatch(_))));
}
