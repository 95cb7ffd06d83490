//! Exact arithmetic over `Q` and `Q(√2)`: polynomials, symmetric matrices,
//! characteristic polynomials and certified real-root counts.

pub mod matrix;
pub mod poly;
pub mod qs2;
pub mod rat;
pub mod roots;

pub use matrix::{char_poly, SymMatrix};
pub use poly::Poly;
pub use qs2::{qs2_arith, FieldOp, QSqrt2};
pub use rat::{rat, Rat};
pub use roots::{real_root_signature, Bound, Signature};
