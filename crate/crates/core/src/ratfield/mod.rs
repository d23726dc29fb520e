//! Exact scalar arithmetic: polynomials, rational functions and stability.

mod poly;
mod rational;
mod stability;

pub(crate) use poly::parse_q;
pub use poly::{q, qr, Poly, Q};
pub use rational::RationalFunction;
pub use stability::{coprime_basis, is_member_a, is_stable_poly, is_unit_a, stable_part, Region};
