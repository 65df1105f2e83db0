//! Groebner bases over k(x) computed in k[X, x].
//!
//! A Groebner basis of an ideal of k[X, x] under a product order with the
//! `x` block last is also a Groebner basis of its extension to k(x)[X], and
//! the X-parts of its leading monomials generate the initial ideal there.
//! Working with polynomial coefficients avoids the gcd cost of rational
//! function arithmetic during Buchberger.

use std::collections::BTreeMap;

use super::{
    buchberger, div_exact, gcd, reduce_basis, standard_monomials, Monomial, Poly, Polynomial, RationalFunction,
    TermOrder, XPoly,
};
use crate::scalars::Cyclotomic;

/// `f` times a common denominator of its coefficients, as a polynomial in
/// the X-variables followed by the coefficient variables.
pub fn clear_denominators(f: &XPoly, coeff_vars: usize) -> Poly {
    let k = f.nvars();
    let total = k + coeff_vars;
    let mut den = Polynomial::constant(Cyclotomic::one(), coeff_vars);
    for (_, c) in f.terms() {
        if !c.den().is_constant() {
            let g = gcd(&den, c.den());
            den = &den * &div_exact(c.den(), &g).expect("gcd divides");
        }
    }
    let mut out = Polynomial::zero(total);
    for (m, c) in f.terms() {
        let scale = div_exact(&den, c.den()).expect("common denominator");
        let coeff = &scale * c.num();
        for (xm, v) in coeff.terms() {
            let e: Vec<u32> = m.exps().iter().chain(xm.exps()).copied().collect();
            out.add_term(Monomial::new(&e), v);
        }
    }
    out
}

/// Inverse of `clear_denominators` up to the cleared factor.
pub fn split_coefficients(p: &Poly, front: usize) -> XPoly {
    let coeff_vars = p.nvars() - front;
    let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let head = Monomial::new(&m.exps()[..front]);
        let tail = Monomial::new(&m.exps()[front..]);
        groups
            .entry(head)
            .or_insert_with(|| Polynomial::zero(coeff_vars))
            .add_term(tail, c);
    }
    Polynomial::from_terms(
        front,
        groups.into_iter().map(|(m, c)| (m, RationalFunction::from_poly(c))),
    )
}

fn block_basis(gens: &[XPoly], order: &TermOrder, coeff_vars: usize) -> (Vec<Poly>, TermOrder) {
    let front = order.nvars();
    let flat: Vec<Poly> = gens
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| clear_denominators(f, coeff_vars))
        .collect();
    let block = TermOrder::block(order.kind(), front, front + coeff_vars);
    (buchberger(&flat, &block), block)
}

/// Standard monomial count over k(x) of the ideal generated by `gens`;
/// `None` when the quotient is infinite-dimensional.
pub fn parametric_count(gens: &[XPoly], order: &TermOrder, coeff_vars: usize) -> Option<usize> {
    let front = order.nvars();
    let (gb, block) = block_basis(gens, order, coeff_vars);
    let leads: Vec<Poly> = gb
        .iter()
        .map(|g| {
            let m = g.leading_monomial(&block).expect("nonzero");
            Polynomial::monomial(Monomial::new(&m.exps()[..front]), Cyclotomic::one())
        })
        .collect();
    standard_monomials(&leads, &order.resized(front), front).count()
}

/// Reduced Groebner basis over k(x), as `buchberger` would return it.
pub fn parametric_groebner(gens: &[XPoly], order: &TermOrder, coeff_vars: usize) -> Vec<XPoly> {
    let front = order.nvars();
    let (gb, _) = block_basis(gens, order, coeff_vars);
    let lifted: Vec<XPoly> = gb.iter().map(|g| split_coefficients(g, front)).collect();
    if lifted.is_empty() {
        return lifted;
    }
    reduce_basis(lifted, order)
}
