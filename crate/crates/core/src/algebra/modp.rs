//! Arithmetic modulo the Mersenne prime `2^61 - 1`.
//!
//! Used only to obtain lower bounds on exact ranks: the rank of an integer matrix
//! reduced mod `p` never exceeds its rank over the rationals.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & P) + ((x >> 122) as u64);
    while s >= P {
        s -= P;
    }
    s
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn pow(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_bigint(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((x % &p) + &p) % &p;
    r.to_u64().expect("residue fits in u64")
}

/// Rank of a dense matrix over `F_p`.
pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(p, r);
        let pinv = inv(rows[r][c]);
        let pivot: Vec<u64> = rows[r].iter().map(|&x| mul(x, pinv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f != 0 {
                for j in c..ncols {
                    row[j] = sub(row[j], mul(f, pivot[j]));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_spot_check() {
        let a = 123_456_789_012_345u64;
        assert_eq!(mul(a, inv(a)), 1);
        assert_eq!(sub(0, 1), P - 1);
        assert_eq!(from_bigint(&BigInt::from(-5)), P - 5);
        assert_eq!(reduce128(u128::from(P) * u128::from(P)), 0);
        assert_eq!(reduce128(u128::MAX), (u128::MAX % u128::from(P)) as u64);
    }

    #[test]
    fn rank_mod_p() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 5]];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank(vec![vec![0, 0], vec![0, 0]]), 0);
    }
}
