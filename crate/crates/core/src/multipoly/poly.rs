use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::{Degree, Monomial, TermOrder};
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ring mismatch: {left} vs {right} variables")]
pub struct RingMismatch {
    pub left: usize,
    pub right: usize,
}

/// Sparse multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn var(i: usize, nvars: usize, one: &F) -> Self {
        Self::monomial(Monomial::var(i, nvars), one.one_like())
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            assert_eq!(m.nvars(), nvars, "monomial arity does not match ring");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, F)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Option<&F> {
        self.terms.get(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// True for the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Lowest total degree of a term.
    pub fn min_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .min()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exp(var))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Which variables occur.
    pub fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    s[i] = true;
                }
            }
        }
        s
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &F)> {
        let mut it = self.terms.iter();
        let mut best = it.next()?;
        for t in it {
            if order.cmp(t.0, best.0).is_gt() {
                best = t;
            }
        }
        Some(best)
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    pub fn leading_coeff(&self, order: &TermOrder) -> Option<&F> {
        self.leading_term(order).map(|t| t.1)
    }

    /// Leading term in storage order (lex with variable 0 most significant).
    pub fn lex_leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Scales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading_coeff(order) {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, rhs: &Self) -> Result<(), RingMismatch> {
        if self.nvars == rhs.nvars {
            Ok(())
        } else {
            Err(RingMismatch {
                left: self.nvars,
                right: rhs.nvars,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, RingMismatch> {
        self.check(rhs)?;
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        Ok(big)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, RingMismatch> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, RingMismatch> {
        self.check(rhs)?;
        let mut out = Self::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_nonzero(|c| c.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        self.map_nonzero(|x| x.mul(c))
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter_map(|(k, v)| {
                    let p = v.mul(c);
                    (!p.is_zero()).then(|| (k.mul(m), p))
                })
                .collect(),
        }
    }

    fn map_nonzero(&self, f: impl Fn(&F) -> F) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    /// Coefficient-wise map into another field; zeros are pruned.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let Some(one) = self.one_coeff() else {
            assert!(e > 0, "zero polynomial to the power 0 has no coefficient context");
            return self.clone();
        };
        let mut acc = Self::constant(one, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn one_coeff(&self) -> Option<F> {
        self.terms.values().next().map(|c| c.one_like())
    }

    /// Replaces variable `i` with `images[i]` (all in a common target ring).
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Polynomial::zero(target);
        let mut cache: Vec<Vec<Polynomial<F>>> = vec![Vec::new(); self.nvars];
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), target);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Polynomial::constant(c.one_like(), target));
                }
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Point evaluation.
    pub fn eval(&self, point: &[F]) -> Option<F> {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc: Option<F> = None;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e));
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc
    }

    /// Embeds into a ring with more variables, placing variable `i` at
    /// position `offset + i`.
    pub fn extend_vars(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; nvars];
                    e[offset..offset + self.nvars].copy_from_slice(m.exps());
                    (Monomial::new(&e), c.clone())
                })
                .collect(),
        }
    }

    pub(crate) fn from_map(nvars: usize, terms: BTreeMap<Monomial, F>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub(crate) fn map_mut(&mut self) -> &mut BTreeMap<Monomial, F> {
        &mut self.terms
    }
}

impl<F: Field> std::fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = super::format::default_names(self.nvars);
        write!(
            f,
            "{}",
            super::format::format_poly(self, &names, &TermOrder::grevlex(self.nvars), &[] as &[&str])
        )
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(&self)
    }
}
