//! Irreducible characters of symmetric groups by the Murnaghan–Nakayama rule,
//! the Weyl dimension of Schur modules, and three-factor Kronecker coefficients.

use std::cell::RefCell;
use std::collections::HashMap;

use super::partition::Partition;
use crate::error::{Error, Result};

/// A conjugacy class of `S_d`, named by its cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    pub class_size: u128,
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// `z_μ = Π m_j! · j^{m_j}`, the centralizer order.
pub fn centralizer_order(cycle_type: &Partition) -> u128 {
    cycle_type
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &m)| factorial(m) * (j as u128).pow(m))
        .product()
}

pub fn conjugacy_classes(d: u32) -> Vec<ConjugacyClass> {
    let n_fact = factorial(d);
    Partition::all(d)
        .into_iter()
        .map(|ct| {
            let size = n_fact / centralizer_order(&ct);
            ConjugacyClass {
                cycle_type: ct,
                class_size: size,
            }
        })
        .collect()
}

/// Dimension of `S_shape(C^n)` by the hook-content formula; zero when the shape has
/// more than `n` rows.
pub fn weyl_dimension(shape: &Partition, n: usize) -> u64 {
    if shape.length() > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (r, c) in shape.cells() {
        num *= (n as i64 + c as i64 - r as i64) as u128;
        den *= u128::from(shape.hook_length(r, c));
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    (num / den) as u64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

thread_local! {
    static CHAR_CACHE: RefCell<HashMap<(Vec<u32>, Vec<u32>), i64>> = RefCell::new(HashMap::new());
}

/// `χ^shape` evaluated on the class with the given cycle type.
pub fn mn_character(shape: &Partition, cycle_type: &Partition) -> Result<i64> {
    if shape.size() != cycle_type.size() {
        return Err(Error::SizeMismatch(shape.size(), cycle_type.size()));
    }
    Ok(chi(shape.parts(), cycle_type.parts()))
}

fn chi(shape: &[u32], cycle: &[u32]) -> i64 {
    let Some((&r, rest)) = cycle.split_first() else {
        return 1;
    };
    let key = (shape.to_vec(), cycle.to_vec());
    if let Some(v) = CHAR_CACHE.with(|c| c.borrow().get(&key).copied()) {
        return v;
    }
    // Beta numbers: removing a rim hook of length r moves one bead down by r.
    let len = shape.len();
    let beta: Vec<u32> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * chi(&parts, rest);
    }
    CHAR_CACHE.with(|c| c.borrow_mut().insert(key, total));
    total
}

/// Multiplicity of `S_{π1} ⊗ S_{π2} ⊗ S_{π3}` in a symmetric power:
/// `(1/d!) Σ_classes |class| χ_{π1} χ_{π2} χ_{π3}`.
pub fn kronecker_mult(p1: &Partition, p2: &Partition, p3: &Partition) -> Result<u64> {
    let d = p1.size();
    for p in [p2, p3] {
        if p.size() != d {
            return Err(Error::SizeMismatch(d, p.size()));
        }
    }
    let mut acc: i128 = 0;
    for class in conjugacy_classes(d) {
        let prod = i128::from(mn_character(p1, &class.cycle_type)?)
            * i128::from(mn_character(p2, &class.cycle_type)?)
            * i128::from(mn_character(p3, &class.cycle_type)?);
        acc += prod * class.class_size as i128;
    }
    let order = factorial(d) as i128;
    assert!(
        acc % order == 0 && acc >= 0,
        "character sum {acc} is not a non-negative multiple of {d}!"
    );
    Ok((acc / order) as u64)
}
