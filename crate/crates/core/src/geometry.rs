//! Sampling of secant and subspace varieties, dimension counts, and the degree-`d`
//! evaluation scan over isotypic components.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{modp, rational, Dims, ExactSpan, Factor, Matrix, Rational, SparsePolynomial, Tensor3};
use crate::error::{Error, Result};
use crate::random::{int_matrix, int_tensor, int_vector, rng_for};
use crate::rep::{isotypic_decomposition_unbounded, Partition, SemistandardFilling};
use crate::schur::modules::{hwv_for_fillings, Convention};
use crate::schur::{SlotOrder, SymmetrizerOrder};

/// Entries of sampled vectors, cores and inclusions are integers in `[-100, 100]`.
pub const SAMPLE_BOUND: i64 = 100;

/// Degrees above this need `allow_high_degree` in [`ScanOptions`].
pub const SCAN_MAX_DEGREE: u32 = 6;

const STREAM_SCAN_SAMPLES: u64 = 1 << 32;
const HWV_SEARCH_SEED: u64 = 0x5ca1ab1e;
const HWV_SEARCH_ATTEMPTS: usize = 400;

#[derive(Debug, Clone)]
pub struct SecantSample {
    pub dims: Dims,
    pub r: usize,
    pub factors: Vec<[Vec<Rational>; 3]>,
    pub tensor: Tensor3,
}

#[derive(Debug, Clone)]
pub struct SubspaceSample {
    pub dims: Dims,
    pub target: Dims,
    /// `target_f × dim_f` matrices carrying the core into the ambient space.
    pub inclusions: [Matrix<Rational>; 3],
    pub core: Tensor3,
    pub tensor: Tensor3,
}

/// A sum of `r` rank-one tensors with random integer factors.
pub fn sample_secant(r: usize, dims: Dims, seed: u64) -> Result<SecantSample> {
    secant_from_stream(r, dims, seed, 0)
}

fn secant_from_stream(r: usize, dims: Dims, seed: u64, stream: u64) -> Result<SecantSample> {
    if r == 0 {
        return Err(Error::Invalid("a secant sample needs r >= 1".into()));
    }
    let mut rng = rng_for(seed, stream);
    let ns = dims.as_array();
    let factors: Vec<[Vec<Rational>; 3]> = (0..r)
        .map(|_| ns.map(|n| int_vector(&mut rng, n, SAMPLE_BOUND)))
        .collect();
    let mut tensor = Tensor3::zeros(dims);
    for [u, v, w] in &factors {
        tensor = tensor.add(&Tensor3::rank_one(u, v, w));
    }
    Ok(SecantSample {
        dims,
        r,
        factors,
        tensor,
    })
}

fn check_target(target: Dims, dims: Dims) -> Result<()> {
    if !dims.contains(&target) || target.as_array().contains(&0) {
        return Err(Error::Invalid(format!(
            "subspace target {target} must be positive and fit inside {dims}"
        )));
    }
    Ok(())
}

/// A random point of `Sub_{target}` inside `dims`: a random core pushed through
/// random inclusions.
pub fn sample_subspace(target: Dims, dims: Dims, seed: u64) -> Result<SubspaceSample> {
    check_target(target, dims)?;
    let mut rng = rng_for(seed, 0);
    let core = int_tensor(&mut rng, target, SAMPLE_BOUND);
    let [ta, tb, tc] = target.as_array();
    let [a, b, c] = dims.as_array();
    let inclusions = [
        int_matrix(&mut rng, ta, a, SAMPLE_BOUND),
        int_matrix(&mut rng, tb, b, SAMPLE_BOUND),
        int_matrix(&mut rng, tc, c, SAMPLE_BOUND),
    ];
    let tensor = core.transform([&inclusions[0], &inclusions[1], &inclusions[2]])?;
    Ok(SubspaceSample {
        dims,
        target,
        inclusions,
        core,
        tensor,
    })
}

fn flatten(t: &Tensor3) -> Vec<Rational> {
    t.entries().to_vec()
}

/// Projective dimension of `σ_r` from the rank of the Jacobian of
/// `(a_i, b_i, c_i) ↦ Σ a_i ⊗ b_i ⊗ c_i` at a random point, minus one.
pub fn terracini_dim(r: usize, dims: Dims, seed: u64) -> Result<usize> {
    let sample = sample_secant(r, dims, seed)?;
    let ns = dims.as_array();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for [u, v, w] in &sample.factors {
        for f in Factor::ALL {
            for p in 0..ns[f.position()] {
                let mut vecs = [u.clone(), v.clone(), w.clone()];
                let unit = (0..ns[f.position()]).map(|q| rational(i64::from(q == p))).collect();
                vecs[f.position()] = unit;
                rows.push(flatten(&Tensor3::rank_one(&vecs[0], &vecs[1], &vecs[2])));
            }
        }
    }
    Ok(Matrix::from_rows(rows).rank().saturating_sub(1))
}

/// Projective dimension of `Sub_{target}` inside `P(C^a ⊗ C^b ⊗ C^c)`:
/// `a'b'c' − 1 + Σ_f (dim_f − target_f) · target_f`.
pub fn subspace_dim(target: Dims, dims: Dims) -> Result<usize> {
    check_target(target, dims)?;
    let t = target.as_array();
    let d = dims.as_array();
    Ok(target.volume() - 1 + (0..3).map(|f| (d[f] - t[f]) * t[f]).sum::<usize>())
}

/// Jacobian rank of `(core, inclusions) ↦ core pushed through the inclusions` at a
/// random point, minus one.
pub fn subspace_jacobian_dim(target: Dims, dims: Dims, seed: u64) -> Result<usize> {
    let s = sample_subspace(target, dims, seed)?;
    let [ia, ib, ic] = &s.inclusions;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for v in target.variables() {
        let unit = Tensor3::unit(target, v);
        rows.push(flatten(&unit.transform([ia, ib, ic])?));
    }
    let d = dims.as_array();
    let t = target.as_array();
    for f in 0..3 {
        for p in 0..t[f] {
            for i in 0..d[f] {
                let mut e = Matrix::zeros(t[f], d[f]);
                e.set(p, i, rational(1));
                let mut maps = [ia, ib, ic];
                maps[f] = &e;
                rows.push(flatten(&s.core.transform(maps)?));
            }
        }
    }
    Ok(Matrix::from_rows(rows).rank().saturating_sub(1))
}

/// Indices and exact values of the polynomials that do not vanish at `t`.
pub fn nonzero_values(polys: &[SparsePolynomial], t: &Tensor3) -> Result<Vec<(usize, Rational)>> {
    let values: Vec<Rational> = polys
        .par_iter()
        .map(|p| p.evaluate_exact(t))
        .collect::<Result<_>>()?;
    Ok(values
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !num_traits::Zero::is_zero(v))
        .collect())
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub samples: usize,
    /// Rank of the secant samples the components are evaluated on.
    pub secant_rank: usize,
    pub allow_high_degree: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            samples: 40,
            secant_rank: 4,
            allow_high_degree: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanVerdict {
    Vanishing,
    NonVanishing,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentScan {
    pub triple: [Partition; 3],
    pub multiplicity: u64,
    /// Slot orders on `B` and `C` (row-major on `A`) of the highest weight vectors
    /// spanning the multiplicity space.
    pub hwv_slot_orders: Vec<String>,
    pub kernel_dim: usize,
    pub verdict: ScanVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub degree: u32,
    pub dims: Dims,
    pub samples: usize,
    pub secant_rank: usize,
    pub seed: u64,
    pub components: Vec<ComponentScan>,
}

impl ScanResult {
    pub fn vanishing(&self) -> impl Iterator<Item = &ComponentScan> {
        self.components
            .iter()
            .filter(|c| c.verdict == ScanVerdict::Vanishing)
    }
}

/// Highest weight vectors spanning the multiplicity space of `triple`, found by
/// symmetrizing the highest fillings under varying slot orders on `B` and `C`.
pub fn hwv_space(triple: &[Partition; 3], multiplicity: u64, dims: Dims) -> Result<Vec<(String, SparsePolynomial)>> {
    let fills: [SemistandardFilling; 3] = [0, 1, 2].map(|f| SemistandardFilling::highest(&triple[f]));
    let d = triple[0].size() as usize;
    let mut rng = rng_for(HWV_SEARCH_SEED, 0);
    let natural = [SlotOrder::RowMajor, SlotOrder::ColumnMajor];
    let mut candidates: Vec<(SlotOrder, SlotOrder)> = natural
        .iter()
        .flat_map(|b| natural.iter().map(move |c| (b.clone(), c.clone())))
        .collect();
    let mut perm: Vec<usize> = (1..=d).collect();
    while candidates.len() < HWV_SEARCH_ATTEMPTS {
        perm.shuffle(&mut rng);
        let b = SlotOrder::Explicit(perm.clone());
        perm.shuffle(&mut rng);
        candidates.push((b, SlotOrder::Explicit(perm.clone())));
    }
    let mut span = ExactSpan::new();
    let mut out = Vec::new();
    for (b, c) in candidates {
        if out.len() as u64 == multiplicity {
            break;
        }
        let conv = Convention::new([SlotOrder::RowMajor, b.clone(), c.clone()], SymmetrizerOrder::ColumnsFirst);
        let p = hwv_for_fillings(&fills, &conv, dims)?;
        if span.insert(&p) {
            out.push((format!("B={b},C={c}"), p));
        }
    }
    if out.len() as u64 != multiplicity {
        return Err(Error::Contract(format!(
            "found {} of {multiplicity} independent highest weight vectors for {}|{}|{}",
            out.len(),
            triple[0],
            triple[1],
            triple[2]
        )));
    }
    Ok(out)
}

/// Rank of an integer-valued rational matrix; a full rank modulo `2^61 − 1` settles
/// it without exact elimination.
fn evaluation_rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    let reduced: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|q| modp::from_bigint(q.numer())).collect())
        .collect();
    if modp::rank(reduced) == cols.min(rows.len()) {
        return cols.min(rows.len());
    }
    Matrix::from_rows(rows.to_vec()).rank()
}

/// Evaluates a spanning set of the highest weight vectors of every isotypic
/// component of degree `d` at random secant samples and reports the components whose
/// evaluation matrix has a nonzero kernel.
pub fn ideal_scan(d: u32, dims: Dims, opts: ScanOptions, seed: u64) -> Result<ScanResult> {
    if d > SCAN_MAX_DEGREE && !opts.allow_high_degree {
        return Err(Error::Invalid(format!(
            "scan degree {d} exceeds {SCAN_MAX_DEGREE}; pass the high-degree override to run it"
        )));
    }
    if d == 0 {
        return Err(Error::Invalid("scan degree must be positive".into()));
    }
    let samples: Vec<Tensor3> = (0..opts.samples as u64)
        .map(|s| secant_from_stream(opts.secant_rank, dims, seed, STREAM_SCAN_SAMPLES + s).map(|x| x.tensor))
        .collect::<Result<_>>()?;
    let comps = isotypic_decomposition_unbounded(d, dims);
    let components = comps
        .par_iter()
        .map(|comp| {
            let m = comp.multiplicity as usize;
            if opts.samples <= m {
                return Err(Error::Invalid(format!(
                    "{} samples cannot detect a kernel in a {m}-dimensional space",
                    opts.samples
                )));
            }
            let space = hwv_space(&comp.triple, comp.multiplicity, dims)?;
            let rows: Vec<Vec<Rational>> = samples
                .iter()
                .map(|t| space.iter().map(|(_, p)| p.evaluate_exact(t)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let kernel_dim = m - evaluation_rank(&rows, m);
            Ok(ComponentScan {
                triple: comp.triple.clone(),
                multiplicity: comp.multiplicity,
                hwv_slot_orders: space.into_iter().map(|(s, _)| s).collect(),
                kernel_dim,
                verdict: if kernel_dim > 0 {
                    ScanVerdict::Vanishing
                } else {
                    ScanVerdict::NonVanishing
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        degree: d,
        dims,
        samples: opts.samples,
        secant_rank: opts.secant_rank,
        seed,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinantal::{flattening_ranks, psi_rank};

    #[test]
    fn secant_samples_respect_flattening_bounds() {
        for r in 1..=4 {
            let s = sample_secant(r, Dims::new(3, 4, 5), 11 + r as u64).unwrap();
            assert!(flattening_ranks(&s.tensor).iter().all(|&x| x <= r));
        }
        let one = sample_secant(1, Dims::new(3, 3, 4), 2).unwrap();
        assert_eq!(flattening_ranks(&one.tensor), [1, 1, 1]);
        assert_eq!(psi_rank(&one.tensor).unwrap(), 2);
        assert!(sample_secant(0, Dims::new(3, 3, 3), 0).is_err());
    }

    #[test]
    fn secant_sample_is_sum_of_its_factors() {
        let s = sample_secant(3, Dims::new(2, 3, 2), 5).unwrap();
        let mut t = Tensor3::zeros(s.dims);
        for [u, v, w] in &s.factors {
            t = t.add(&Tensor3::rank_one(u, v, w));
        }
        assert_eq!(t, s.tensor);
    }

    #[test]
    fn subspace_samples() {
        let s = sample_subspace(Dims::new(2, 3, 3), Dims::new(3, 3, 4), 9).unwrap();
        assert_eq!(flattening_ranks(&s.tensor), [2, 3, 3]);
        assert!(sample_subspace(Dims::new(4, 3, 3), Dims::new(3, 3, 4), 9).is_err());
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(terracini_dim(1, Dims::new(3, 3, 4), 1).unwrap(), 7);
        assert_eq!(subspace_dim(Dims::new(3, 3, 4), Dims::new(3, 3, 4)).unwrap(), 35);
        assert_eq!(subspace_dim(Dims::new(2, 3, 4), Dims::new(3, 3, 4)).unwrap(), 25);
        assert_eq!(subspace_jacobian_dim(Dims::new(2, 3, 4), Dims::new(3, 3, 4), 3).unwrap(), 25);
        assert_eq!(subspace_jacobian_dim(Dims::new(2, 2, 3), Dims::new(3, 4, 4), 3).unwrap(), 11 + 2 + 4 + 3);
    }

    #[test]
    fn evaluation_rank_matches_exact_rank() {
        let q = rational;
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(3), q(6)]];
        assert_eq!(evaluation_rank(&rows, 2), 1);
        let rows = vec![vec![q(1), q(2)], vec![q(0), q(-5)]];
        assert_eq!(evaluation_rank(&rows, 2), 2);
    }

    #[test]
    fn hwv_space_reaches_the_multiplicity() {
        // (2,1) ⊗ (2,1) ⊗ (2,1) occurs once in degree 3.
        let t = [Partition::of(&[2, 1]), Partition::of(&[2, 1]), Partition::of(&[2, 1])];
        let space = hwv_space(&t, 1, Dims::new(2, 2, 2)).unwrap();
        assert_eq!(space.len(), 1);
        assert!(crate::schur::is_highest_weight(&space[0].1));
    }
}
