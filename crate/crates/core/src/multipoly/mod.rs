//! Multivariate polynomials, rational functions and Groebner bases.

mod bareiss;
mod format;
mod gcd;
mod groebner;
mod monomial;
mod order;
mod parametric;
mod poly;
mod ratfunc;

pub use bareiss::{adjugate, determinant, fraction_free_rank};
pub use format::{default_names, format_monomial, format_poly, parse_poly};
pub use gcd::{content_in, div_exact, gcd, monomial_content};
pub use groebner::{
    buchberger, divide, is_groebner_basis, normal_form, reduce_basis, s_polynomial, standard_monomials,
    StandardMonomials,
};
pub use monomial::{Degree, Monomial};
pub use order::{OrderKind, TermOrder};
pub use parametric::{clear_denominators, parametric_count, parametric_groebner, split_coefficients};
pub use poly::{Polynomial, RingMismatch};
pub use ratfunc::{Poly, RationalFunction};

/// Polynomial in the X-variables with coefficients in k(x).
pub type XPoly = Polynomial<RationalFunction>;
