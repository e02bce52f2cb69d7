use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::Matrix;
use super::scalar::{format_rational, parse_rational, Rational, Scalar};
use super::var::{Dims, Factor, VariableIndex};
use crate::error::{Error, Result};

/// A dense `a × b × c` tensor. Indices passed to [`Tensor3::get`] are 0-based;
/// [`Tensor3::at`] takes a 1-based [`VariableIndex`].
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3<S = Rational> {
    dims: Dims,
    entries: Vec<S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn zeros(dims: Dims) -> Self {
        Tensor3 {
            dims,
            entries: vec![S::zero(); dims.volume()],
        }
    }

    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dims.volume());
        for i in 0..dims.a {
            for j in 0..dims.b {
                for k in 0..dims.c {
                    entries.push(f(i, j, k));
                }
            }
        }
        Tensor3 { dims, entries }
    }

    /// Entries in row-major order (`i` outermost, `k` innermost).
    pub fn from_entries(dims: Dims, entries: Vec<S>) -> Result<Self> {
        if entries.len() != dims.volume() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for dims {dims}",
                entries.len()
            )));
        }
        Ok(Tensor3 { dims, entries })
    }

    /// The outer product `u ⊗ v ⊗ w`.
    pub fn rank_one(u: &[S], v: &[S], w: &[S]) -> Self {
        let dims = Dims::new(u.len(), v.len(), w.len());
        Self::from_fn(dims, |i, j, k| u[i].clone() * v[j].clone() * w[k].clone())
    }

    /// The unit tensor with a single 1 at the given 1-based coordinate.
    pub fn unit(dims: Dims, at: VariableIndex) -> Self {
        let mut t = Self::zeros(dims);
        t.set_at(at, S::one());
        t
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(
            i < self.dims.a && j < self.dims.b && k < self.dims.c,
            "tensor index ({i},{j},{k}) out of range for dims {}",
            self.dims
        );
        (i * self.dims.b + j) * self.dims.c + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.entries[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: S) {
        let o = self.offset(i, j, k);
        self.entries[o] = value;
    }

    /// Entry at a 1-based coordinate.
    pub fn at(&self, v: VariableIndex) -> Result<&S> {
        if !self.dims.contains_var(v) {
            return Err(Error::IndexOutOfRange {
                var: v,
                dims: self.dims,
            });
        }
        Ok(&self.entries[self.dims.offset(v)])
    }

    pub fn set_at(&mut self, v: VariableIndex, value: S) {
        let o = self.dims.offset(v);
        self.entries[o] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "tensor sum dims mismatch");
        Tensor3 {
            dims: self.dims,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Tensor3 {
            dims: self.dims,
            entries: self.entries.iter().map(|x| s.clone() * x.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Zero-pads into larger dims (coordinates keep their indices).
    pub fn embed(&self, dims: Dims) -> Result<Self> {
        if !dims.contains(&self.dims) {
            return Err(Error::DimensionMismatch(format!(
                "cannot embed {} into {dims}",
                self.dims
            )));
        }
        let mut t = Self::zeros(dims);
        for i in 0..self.dims.a {
            for j in 0..self.dims.b {
                for k in 0..self.dims.c {
                    t.set(i, j, k, self.get(i, j, k).clone());
                }
            }
        }
        Ok(t)
    }

    /// The slice obtained by fixing one factor's index (0-based). Fixing `A` gives the
    /// `b × c` matrix `T_index`, so that `T = Σ_i a_i ⊗ T_i`; fixing `B` gives an
    /// `a × c` matrix and fixing `C` an `a × b` matrix.
    pub fn slice(&self, factor: Factor, index: usize) -> Matrix<S> {
        let d = self.dims;
        match factor {
            Factor::A => Matrix::from_fn(d.b, d.c, |j, k| self.get(index, j, k).clone()),
            Factor::B => Matrix::from_fn(d.a, d.c, |i, k| self.get(i, index, k).clone()),
            Factor::C => Matrix::from_fn(d.a, d.b, |i, j| self.get(i, j, index).clone()),
        }
    }

    /// Reassembles `Σ_i a_i ⊗ slices[i]` from `b × c` slices.
    pub fn from_a_slices(slices: &[Matrix<S>]) -> Self {
        let b = slices.first().map_or(0, Matrix::rows);
        let c = slices.first().map_or(0, Matrix::cols);
        let dims = Dims::new(slices.len(), b, c);
        Self::from_fn(dims, |i, j, k| slices[i].get(j, k).clone())
    }

    /// Permutes the roles of the factors: entry `(x_0, x_1, x_2)` of the result is the
    /// entry of `self` whose factor `order[p]` index is `x_p`.
    pub fn permute_factors(&self, order: [Factor; 3]) -> Self {
        let src = self.dims.as_array();
        let dims = Dims::from_array([
            src[order[0].position()],
            src[order[1].position()],
            src[order[2].position()],
        ]);
        Self::from_fn(dims, |x0, x1, x2| {
            let mut idx = [0usize; 3];
            idx[order[0].position()] = x0;
            idx[order[1].position()] = x1;
            idx[order[2].position()] = x2;
            self.get(idx[0], idx[1], idx[2]).clone()
        })
    }

    /// Pushes the tensor through one linear map per factor. `maps[f]` is a
    /// `dim_f × new_f` matrix and the result has entries
    /// `T'[p, q, r] = Σ maps[0][i][p] · maps[1][j][q] · maps[2][k][r] · T[i, j, k]`.
    pub fn transform(&self, maps: [&Matrix<S>; 3]) -> Result<Self> {
        let d = self.dims.as_array();
        for (f, m) in maps.iter().enumerate() {
            if m.rows() != d[f] {
                return Err(Error::DimensionMismatch(format!(
                    "map for factor {} has {} rows, tensor dimension is {}",
                    Factor::ALL[f],
                    m.rows(),
                    d[f]
                )));
            }
        }
        let [ma, mb, mc] = maps;
        // One factor at a time: a·b·c' + a·b'·c' + a'·b'·c' products in total.
        let step_c = Self::from_fn(Dims::new(d[0], d[1], mc.cols()), |i, j, r| {
            (0..d[2]).fold(S::zero(), |acc, k| acc + mc.get(k, r).clone() * self.get(i, j, k).clone())
        });
        let step_b = Self::from_fn(Dims::new(d[0], mb.cols(), mc.cols()), |i, q, r| {
            (0..d[1]).fold(S::zero(), |acc, j| acc + mb.get(j, q).clone() * step_c.get(i, j, r).clone())
        });
        Ok(Self::from_fn(Dims::new(ma.cols(), mb.cols(), mc.cols()), |p, q, r| {
            (0..d[0]).fold(S::zero(), |acc, i| acc + ma.get(i, p).clone() * step_b.get(i, q, r).clone())
        }))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor3<T> {
        Tensor3 {
            dims: self.dims,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Tensor3<f64> {
        self.map(Scalar::to_f64)
    }
}

/// On-disk tensor layout: `entries[i]` lists the `b·c` entries of slice `i`
/// with `k` varying fastest, each as a `"p/q"` string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorFile {
    pub dims: [usize; 3],
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl Tensor3<Rational> {
    pub fn to_file(&self) -> TensorFile {
        let d = self.dims;
        TensorFile {
            dims: d.as_array(),
            entries: (0..d.a)
                .map(|i| {
                    self.entries[i * d.b * d.c..(i + 1) * d.b * d.c]
                        .iter()
                        .map(format_rational)
                        .collect()
                })
                .collect(),
            meta: None,
        }
    }

    pub fn from_file(file: &TensorFile) -> Result<Self> {
        let [a, b, c] = file.dims;
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::Invalid(format!("tensor dims {a},{b},{c} must be positive")));
        }
        let dims = Dims::new(a, b, c);
        if file.entries.len() != a || file.entries.iter().any(|row| row.len() != b * c) {
            return Err(Error::DimensionMismatch(format!(
                "entries do not form {a} rows of {} values",
                b * c
            )));
        }
        let entries = file
            .entries
            .iter()
            .flatten()
            .map(|s| {
                parse_rational(s).ok_or_else(|| Error::Invalid(format!("bad rational entry '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Tensor3::from_entries(dims, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("tensor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: TensorFile = serde_json::from_str(s)?;
        Self::from_file(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rational;

    #[test]
    fn transform_by_identity_and_rank_one() {
        let t = Tensor3::from_fn(Dims::new(2, 3, 2), |i, j, k| rational((i * 6 + j * 2 + k) as i64 - 4));
        let ids = [2, 3, 2].map(Matrix::<Rational>::identity);
        assert_eq!(t.transform([&ids[0], &ids[1], &ids[2]]).unwrap(), t);

        let u = [rational(1), rational(-2)];
        let v = [rational(3), rational(0), rational(1)];
        let w = [rational(2), rational(5)];
        let r1 = Tensor3::rank_one(&u, &v, &w);
        let ma = Matrix::from_rows(vec![vec![rational(1), rational(2), rational(0)], vec![rational(1), rational(1), rational(7)]]);
        let mb = Matrix::from_rows(vec![vec![rational(1)], vec![rational(4)], vec![rational(-1)]]);
        let mc = Matrix::<Rational>::identity(2);
        let out = r1.transform([&ma, &mb, &mc]).unwrap();
        // u·ma = (-1, 0, -14), v·mb = (2), w unchanged
        let expect = Tensor3::rank_one(&[rational(-1), rational(0), rational(-14)], &[rational(2)], &w);
        assert_eq!(out, expect);
        assert!(r1.transform([&mb, &mb, &mc]).is_err());
    }

    fn sample() -> Tensor3 {
        Tensor3::from_fn(Dims::new(2, 3, 4), |i, j, k| {
            rational((i * 100 + j * 10 + k) as i64 - 50)
        })
    }

    #[test]
    fn slices_reconstruct_tensor() {
        let t = sample();
        let slices: Vec<_> = (0..2).map(|i| t.slice(Factor::A, i)).collect();
        assert_eq!(Tensor3::from_a_slices(&slices), t);
        assert_eq!(t.slice(Factor::C, 3).get(1, 2), &rational(73));
        assert_eq!(t.slice(Factor::B, 1).get(1, 3), &rational(63));
    }

    #[test]
    fn json_round_trip() {
        let mut t = sample();
        t.set(1, 1, 1, Rational::new(7.into(), (-3).into()));
        let back = Tensor3::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(t.to_json().starts_with("{\"dims\":[2,3,4],\"entries\":[[\"-50/1\""));
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(Tensor3::from_json("{\"dims\":[2,2,2],\"entries\":[[\"1\"]]}").is_err());
        assert!(Tensor3::from_json("{\"dims\":[1,1,1],\"entries\":[[\"x\"]]}").is_err());
        assert!(Tensor3::from_json("not json").is_err());
    }

    #[test]
    fn out_of_range_coordinate_is_an_error() {
        let t = sample();
        let err = t.at(VariableIndex::new(3, 1, 1)).unwrap_err();
        assert!(err.to_string().contains("x[3,1,1]"));
    }

    #[test]
    fn permute_factors_moves_axes() {
        let t = sample();
        let p = t.permute_factors([Factor::C, Factor::A, Factor::B]);
        assert_eq!(p.dims(), Dims::new(4, 2, 3));
        assert_eq!(p.get(3, 1, 2), t.get(1, 2, 3));
    }
}
