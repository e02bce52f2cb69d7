use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::lowering::{first_nonzero_raise, lowering_operator};
use crate::algebra::textfmt::{PolyRecord, PolynomialFile};
use crate::algebra::{Dims, ExactSpan, Factor, MultiDegree, SparsePolynomial};
use crate::error::{Error, Result};
use crate::rep::{enumerate_ssyt, weyl_dimension, Partition, SemistandardFilling};

/// Where a basis polynomial came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// The filling triple `A|B|C` the polynomial belongs to. Fillings that are not
    /// determined by the weight are written as `shape:w=[...]`.
    pub fillings: String,
    /// How it was produced: `symmetrizer`, `hwv`, `det`, `lower:<word>` or
    /// `swap:<representative>:<index maps>`.
    pub via: String,
}

/// A basis of one irreducible module `S_λA ⊗ S_μB ⊗ S_νC` inside a symmetric power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    pub triple: [Partition; 3],
    pub dims: Dims,
    pub polys: Vec<SparsePolynomial>,
    pub provenance: Vec<Provenance>,
}

pub type FillingTriple = [SemistandardFilling; 3];

pub fn encode_fillings(f: &FillingTriple) -> String {
    format!("{}|{}|{}", f[0], f[1], f[2])
}

/// Product of the Weyl dimensions of the three Schur modules.
pub fn module_dimension(triple: &[Partition; 3], dims: Dims) -> u64 {
    triple
        .iter()
        .zip(Factor::ALL)
        .map(|(p, f)| weyl_dimension(p, dims.get(f)))
        .product()
}

impl ModuleBasis {
    pub fn empty(triple: [Partition; 3], dims: Dims) -> Self {
        ModuleBasis {
            triple,
            dims,
            polys: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.triple[0].size()
    }

    pub fn expected_dim(&self) -> u64 {
        module_dimension(&self.triple, self.dims)
    }

    pub fn monomial_counts(&self) -> Vec<usize> {
        self.polys.iter().map(SparsePolynomial::len).collect()
    }

    /// Exact linear independence of the polynomials.
    pub fn is_independent(&self) -> bool {
        let mut span = ExactSpan::new();
        self.polys.iter().all(|p| span.insert(p))
    }

    fn records(&self, first_id: usize) -> impl Iterator<Item = PolyRecord> + '_ {
        self.polys
            .iter()
            .zip(&self.provenance)
            .enumerate()
            .map(move |(n, (p, prov))| PolyRecord {
                id: first_id + n,
                filling: prov.fillings.clone(),
                via: Some(prov.via.clone()),
                poly: p.clone(),
            })
    }
}

/// Writes several module bases into one polynomial file, numbering polynomials
/// consecutively.
pub fn bases_to_file(
    module: &str,
    dims: Dims,
    degree: u32,
    bases: &[ModuleBasis],
    notes: Vec<String>,
) -> PolynomialFile {
    let mut polys = Vec::new();
    for b in bases {
        let start = polys.len();
        polys.extend(b.records(start));
    }
    PolynomialFile {
        module: module.to_string(),
        dims,
        degree,
        notes,
        polys,
    }
}

fn triple_of_label(label: &str, line_id: usize) -> Result<[Partition; 3]> {
    let shapes: Vec<Partition> = label
        .split('|')
        .map(|f| {
            f.split_once(':')
                .map(|(shape, _)| shape)
                .unwrap_or(f)
                .parse::<Partition>()
        })
        .collect::<Result<_>>()?;
    shapes.try_into().map_err(|_| {
        Error::Invalid(format!("polynomial {line_id}: filling label '{label}' is not a triple"))
    })
}

/// Regroups the polynomials of a file into module bases: consecutive polynomials
/// with the same partition triple form one basis.
pub fn bases_from_file(file: &PolynomialFile) -> Result<Vec<ModuleBasis>> {
    let mut out: Vec<ModuleBasis> = Vec::new();
    for rec in &file.polys {
        let triple = triple_of_label(&rec.filling, rec.id)?;
        let prov = Provenance {
            fillings: rec.filling.clone(),
            via: rec.via.clone().unwrap_or_default(),
        };
        match out.last_mut() {
            Some(b) if b.triple == triple => {
                b.polys.push(rec.poly.clone());
                b.provenance.push(prov);
            }
            _ => out.push(ModuleBasis {
                triple,
                dims: file.dims,
                polys: vec![rec.poly.clone()],
                provenance: vec![prov],
            }),
        }
    }
    Ok(out)
}

/// Label for the filling of `shape` with the given weight: the filling itself when
/// it is the only one, otherwise the weight.
fn weight_label(shape: &Partition, weight: &[u32]) -> String {
    let matches: Vec<SemistandardFilling> = enumerate_ssyt(shape, weight.len())
        .into_iter()
        .filter(|f| f.weight(weight.len()) == weight)
        .collect();
    if matches.len() == 1 {
        matches[0].to_string()
    } else {
        format!("{shape}:w=[{}]", weight.iter().join(","))
    }
}

fn label_for(triple: &[Partition; 3], md: &MultiDegree) -> String {
    Factor::ALL
        .iter()
        .zip(triple)
        .map(|(&f, shape)| weight_label(shape, md.factor(f)))
        .join("|")
}

fn triple_of_weight(md: &MultiDegree) -> Result<[Partition; 3]> {
    let parts: Vec<Partition> = Factor::ALL
        .iter()
        .map(|&f| Partition::new(md.factor(f).to_vec()))
        .collect::<Result<_>>()
        .map_err(|_| Error::Contract(format!("weight {md} is not dominant")))?;
    Ok(parts.try_into().expect("three factors"))
}

/// Sweeps out the module generated by a highest weight vector with elementary
/// lowering operators, breadth first, keeping only polynomials that enlarge the
/// exact span. Stops once the span reaches the Weyl dimension of the module.
pub fn module_basis_from_hwv(hwv: &SparsePolynomial, dims: Dims) -> Result<ModuleBasis> {
    if hwv.is_zero() {
        return Err(Error::Contract("highest weight vector is zero".into()));
    }
    let hw = hwv.with_dims(dims)?.canonicalize();
    if let Some((f, from, to)) = first_nonzero_raise(&hw) {
        return Err(Error::Contract(format!(
            "not a highest weight vector: raising {from}->{to} on factor {f} is nonzero"
        )));
    }
    let md = hw
        .multidegree()
        .cloned()
        .ok_or_else(|| Error::Contract("highest weight vector is not multihomogeneous".into()))?;
    let triple = triple_of_weight(&md)?;
    let expected = module_dimension(&triple, dims) as usize;

    let ops: Vec<(Factor, u8, u8)> = Factor::ALL
        .iter()
        .flat_map(|&f| {
            let n = dims.get(f) as u8;
            (1..=n).flat_map(move |from| (from + 1..=n).map(move |to| (f, from, to)))
        })
        .collect();

    let mut span = ExactSpan::new();
    span.insert(&hw);
    let mut words: Vec<Vec<(Factor, u8, u8)>> = vec![Vec::new()];
    let mut polys = vec![hw];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() && polys.len() < expected {
        let jobs: Vec<(usize, (Factor, u8, u8))> = frontier
            .iter()
            .flat_map(|&idx| ops.iter().map(move |&op| (idx, op)))
            .collect();
        let images: Vec<SparsePolynomial> = jobs
            .par_iter()
            .map(|&(idx, (f, from, to))| {
                lowering_operator(&polys[idx], f, from, to)
                    .expect("operators are in range")
                    .canonicalize()
            })
            .collect();
        let mut next = Vec::new();
        for ((idx, op), img) in jobs.into_iter().zip(images) {
            if polys.len() == expected {
                break;
            }
            if !img.is_zero() && span.insert(&img) {
                let mut word = words[idx].clone();
                word.push(op);
                words.push(word);
                next.push(polys.len());
                polys.push(img);
            }
        }
        frontier = next;
    }
    if polys.len() != expected {
        return Err(Error::Contract(format!(
            "lowering closure reached dimension {} but the module has dimension {expected}",
            polys.len()
        )));
    }
    let provenance = polys
        .iter()
        .zip(&words)
        .map(|(p, w)| Provenance {
            fillings: label_for(&triple, p.multidegree().expect("weight vectors")),
            via: if w.is_empty() {
                "hwv".to_string()
            } else {
                format!(
                    "lower:{}",
                    w.iter().map(|(f, from, to)| format!("{f}{from}>{to}")).join(".")
                )
            },
        })
        .collect();
    Ok(ModuleBasis {
        triple,
        dims,
        polys,
        provenance,
    })
}

/// For each filling reachable from `rep` by renaming entries and sorting columns,
/// the first renaming (in lexicographic order of permutations) that reaches it.
fn reachable(rep: &SemistandardFilling, n: usize) -> HashMap<SemistandardFilling, Vec<u8>> {
    let mut out = HashMap::new();
    for perm in (1..=n as u8).permutations(n) {
        if let Some(g) = rep.relabel(&perm) {
            out.entry(g).or_insert(perm);
        }
    }
    out
}

/// Renamings `σ` (with `σ[t - 1]` the new name of `t`) carrying weight `from` to
/// weight `to`, in lexicographic order.
fn weight_maps(from: &[u32], to: &[u32]) -> Vec<Vec<u8>> {
    let n = from.len();
    (1..=n as u8)
        .permutations(n)
        .filter(|perm| (0..n).all(|t| to[usize::from(perm[t]) - 1] == from[t]))
        .collect()
}

fn is_identity(perm: &[u8]) -> bool {
    perm.iter().enumerate().all(|(t, &x)| usize::from(x) == t + 1)
}

struct Swapper<'a> {
    reps: &'a [(FillingTriple, SparsePolynomial)],
    dims: Dims,
    reach: Vec<[HashMap<SemistandardFilling, Vec<u8>>; 3]>,
}

impl Swapper<'_> {
    fn apply(&self, r: usize, perms: &[&Vec<u8>; 3]) -> Result<SparsePolynomial> {
        let mut p = self.reps[r].1.with_dims(self.dims)?;
        for (f, perm) in Factor::ALL.iter().zip(perms) {
            if !is_identity(perm) {
                p = p.substitute_indices(*f, perm)?;
            }
        }
        Ok(p.canonicalize())
    }

    fn via(r: usize, perms: &[&Vec<u8>; 3]) -> String {
        if perms.iter().all(|p| is_identity(p)) {
            return "symmetrizer".to_string();
        }
        format!(
            "swap:r{r}:{}",
            Factor::ALL
                .iter()
                .zip(perms)
                .map(|(f, perm)| format!("{f}={}", perm.iter().join(".")))
                .join(",")
        )
    }

    /// The swap that carries a representative filling onto `target` itself, if any.
    fn direct(&self, target: &FillingTriple) -> Option<(usize, [&Vec<u8>; 3])> {
        self.reach.iter().enumerate().find_map(|(r, maps)| {
            let a = maps[0].get(&target[0])?;
            let b = maps[1].get(&target[1])?;
            let c = maps[2].get(&target[2])?;
            Some((r, [a, b, c]))
        })
    }

    /// Every swap of every representative landing in the weight space of `target`.
    fn by_weight(&self, target: &FillingTriple) -> Vec<(usize, [Vec<u8>; 3])> {
        let ns = self.dims.as_array();
        let mut out = Vec::new();
        for (r, (fills, _)) in self.reps.iter().enumerate() {
            let maps: Vec<Vec<Vec<u8>>> = (0..3)
                .map(|f| weight_maps(&fills[f].weight(ns[f]), &target[f].weight(ns[f])))
                .collect();
            for ((a, b), c) in maps[0]
                .iter()
                .cartesian_product(&maps[1])
                .cartesian_product(&maps[2])
            {
                out.push((r, [a.clone(), b.clone(), c.clone()]));
            }
        }
        out
    }
}

/// Expands representative polynomials to one polynomial per semistandard filling
/// triple, by renaming basis indices in each factor.
///
/// Renaming the entries of a filling `T` by a permutation `σ` sends the symmetrized
/// vector of `T` to, up to sign, the symmetrized vector of the column-sorted renamed
/// filling whenever that filling is semistandard; such a direct swap is used when one
/// exists. Otherwise the swaps of the representatives into the weight space of the
/// target are tried in order until one enlarges the span.
pub fn module_basis_by_swaps(
    reps: &[(FillingTriple, SparsePolynomial)],
    dims: Dims,
) -> Result<ModuleBasis> {
    let Some((first, _)) = reps.first() else {
        return Err(Error::Invalid("no representatives given".into()));
    };
    let triple: [Partition; 3] = first.clone().map(|f| f.shape().clone());
    for (fills, p) in reps {
        if fills.iter().zip(&triple).any(|(f, t)| f.shape() != t) {
            return Err(Error::Invalid(format!(
                "representative {} has a different partition triple",
                encode_fillings(fills)
            )));
        }
        if p.is_zero() {
            return Err(Error::Contract(format!(
                "representative {} is the zero polynomial",
                encode_fillings(fills)
            )));
        }
    }
    let ns = dims.as_array();
    let swapper = Swapper {
        reps,
        dims,
        reach: reps
            .iter()
            .map(|(fills, _)| [0, 1, 2].map(|f| reachable(&fills[f], ns[f])))
            .collect(),
    };
    let targets: Vec<FillingTriple> = enumerate_ssyt(&triple[0], ns[0])
        .into_iter()
        .cartesian_product(enumerate_ssyt(&triple[1], ns[1]))
        .cartesian_product(enumerate_ssyt(&triple[2], ns[2]))
        .map(|((a, b), c)| [a, b, c])
        .collect();

    let direct: Vec<Option<Result<(SparsePolynomial, String)>>> = targets
        .par_iter()
        .map(|target| {
            swapper.direct(target).map(|(r, perms)| {
                Ok((swapper.apply(r, &perms)?, Swapper::via(r, &perms)))
            })
        })
        .collect();

    let mut span = ExactSpan::new();
    let mut polys = Vec::with_capacity(targets.len());
    let mut provenance = Vec::with_capacity(targets.len());
    for (target, first_try) in targets.iter().zip(direct) {
        let label = encode_fillings(target);
        let weights_ok = |p: &SparsePolynomial| {
            p.multidegree().is_some_and(|md| {
                Factor::ALL
                    .iter()
                    .zip(target)
                    .all(|(&f, t)| md.factor(f) == t.weight(ns[f.position()]).as_slice())
            })
        };
        let mut chosen = None;
        if let Some(res) = first_try {
            let (p, via) = res?;
            if !weights_ok(&p) {
                return Err(Error::Contract(format!(
                    "swap expansion gave the wrong multidegree at filling {label}"
                )));
            }
            if span.insert(&p) {
                chosen = Some((p, via));
            }
        }
        if chosen.is_none() {
            for (r, perms) in swapper.by_weight(target) {
                let perms = [&perms[0], &perms[1], &perms[2]];
                let p = swapper.apply(r, &perms)?;
                if !weights_ok(&p) {
                    return Err(Error::Contract(format!(
                        "swap expansion gave the wrong multidegree at filling {label}"
                    )));
                }
                if span.insert(&p) {
                    chosen = Some((p, Swapper::via(r, &perms)));
                    break;
                }
            }
        }
        let (p, via) = chosen.ok_or_else(|| {
            Error::Contract(format!(
                "no swap of a representative gives a new polynomial at filling {label}"
            ))
        })?;
        polys.push(p);
        provenance.push(Provenance {
            fillings: label,
            via,
        });
    }
    Ok(ModuleBasis {
        triple,
        dims,
        polys,
        provenance,
    })
}
