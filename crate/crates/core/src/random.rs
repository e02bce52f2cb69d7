//! Seeded random rationals. Every randomized routine derives its generator from a
//! user seed and a stream number, so results do not depend on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rational, Dims, Matrix, Rational, Tensor3};

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn int_entry(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    rational(rng.gen_range(-bound..=bound))
}

pub fn int_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| int_entry(rng, bound)).collect()
}

pub fn int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| int_entry(rng, bound))
}

pub fn int_tensor(rng: &mut ChaCha8Rng, dims: Dims, bound: i64) -> Tensor3 {
    Tensor3::from_fn(dims, |_, _, _| int_entry(rng, bound))
}
