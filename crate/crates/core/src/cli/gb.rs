//! Standalone reduced Groebner basis computation.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multipoly::{
    buchberger, format_monomial, format_poly, is_groebner_basis, parse_poly, standard_monomials, OrderKind,
    StandardMonomials, TermOrder,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerReport {
    pub variables: Vec<String>,
    pub cyclotomic_order: u32,
    pub term_order: OrderKind,
    pub input: Vec<String>,
    pub basis: Vec<String>,
    pub leading_monomials: Vec<String>,
    /// Dimension of the quotient ring, when finite.
    pub standard_monomial_count: Option<usize>,
    pub is_groebner_basis: bool,
}

pub fn groebner(vars: &[String], cyclotomic_order: u32, kind: OrderKind, polys: &[String]) -> Result<GroebnerReport> {
    let order = TermOrder::new(kind, vars.len());
    let parsed = polys
        .iter()
        .map(|s| parse_poly(s, cyclotomic_order, vars))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let gb = buchberger(&parsed, &order);
    let none: &[&str] = &[];
    Ok(GroebnerReport {
        variables: vars.to_vec(),
        cyclotomic_order,
        term_order: kind,
        input: parsed.iter().map(|p| format_poly(p, vars, &order, none)).collect(),
        basis: gb.iter().map(|p| format_poly(p, vars, &order, none)).collect(),
        leading_monomials: gb
            .iter()
            .map(|p| format_monomial(p.leading_monomial(&order).expect("nonzero"), vars))
            .collect(),
        standard_monomial_count: match standard_monomials(&gb, &order, vars.len()) {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        },
        is_groebner_basis: is_groebner_basis(&gb, &order),
    })
}
