//! Exact arithmetic substrate: indexed variables, sparse multigraded polynomials,
//! dense tensors and exact linear algebra over the rationals.

mod linalg;
mod monomial;
mod poly;
mod scalar;
mod tensor;
pub mod textfmt;
mod var;

pub(crate) mod modp;
pub(crate) mod span;

pub use linalg::{integer_rank, Matrix, RationalMatrix};
pub use monomial::{multidegree_of, Monomial, MultiDegree};
pub use poly::SparsePolynomial;
pub use scalar::{format_rational, parse_rational, rational, Rational, Scalar};
pub use span::ExactSpan;
pub use tensor::{Tensor3, TensorFile};
pub use var::{Dims, Factor, VariableIndex};
