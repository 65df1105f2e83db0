#![allow(dead_code)]

use invfield::cli::load_spec;
use invfield::cli::spec::Overrides;
use invfield::grouprep::RepContext;
use invfield::multipoly::{parse_poly, Poly, RationalFunction, XPoly};
use invfield::orbitideal::to_xpoly;

pub const ALL: &[&str] = &[
    "trivial", "c2", "c3_1d", "c3", "c5", "c7", "c9", "c3reg", "c4reg", "q8", "s3std", "a4perm",
];

pub fn ctx(name: &str) -> RepContext {
    load_spec(name).unwrap().build(&Overrides::default()).unwrap()
}

pub fn p(c: &RepContext, s: &str) -> Poly {
    parse_poly(s, c.group().field_order(), c.var_names()).unwrap()
}

pub fn rf(c: &RepContext, n: &str, d: &str) -> RationalFunction {
    RationalFunction::new(p(c, n), p(c, d)).unwrap()
}

/// `f(X) - c(x)` for a polynomial `f` written in the lowercase names.
pub fn xrel(c: &RepContext, f: &str, coeff: &RationalFunction) -> XPoly {
    let n = c.nvars();
    &to_xpoly(&p(c, f)) - &XPoly::constant(coeff.clone(), n)
}

pub fn element_named(c: &RepContext, name: &str) -> usize {
    let k = c.group().generator_names().iter().position(|n| n == name).unwrap();
    c.group().generator_indices()[k]
}
