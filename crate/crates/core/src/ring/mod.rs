//! Exact scalars: rationals, cyclotomic fields and polynomials in `t`.

mod cyclotomic;
mod expr;
mod matrix;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, lcm_order, Cyclotomic};
pub use expr::{parse_cyclotomic, parse_poly};
pub use matrix::CycMatrix;
pub use poly::{CycPoly, PolyJson, TermJson};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
