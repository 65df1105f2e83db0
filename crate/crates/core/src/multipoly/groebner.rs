use std::collections::HashSet;

use super::{Monomial, Polynomial, TermOrder};
use crate::scalars::Field;

struct Lead<F> {
    mono: Monomial,
    inv_coeff: F,
}

fn leads<F: Field>(basis: &[Polynomial<F>], order: &TermOrder) -> Vec<Lead<F>> {
    basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("basis elements must be nonzero");
            Lead {
                mono: m.clone(),
                inv_coeff: c.inv().expect("nonzero"),
            }
        })
        .collect()
}

/// Multivariate division: `f = sum q_i * basis_i + r`, no term of `r`
/// divisible by a leading monomial of the basis.
pub fn divide<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    order: &TermOrder,
) -> (Vec<Polynomial<F>>, Polynomial<F>) {
    let n = f.nvars();
    let ls = leads(basis, order);
    let mut q = vec![Polynomial::zero(n); basis.len()];
    let mut r = Polynomial::zero(n);
    let mut p = f.clone();
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match ls.iter().position(|l| l.mono.divides(&m)) {
            Some(i) => {
                let t = m.div(&ls[i].mono).expect("divides");
                let k = c.mul(&ls[i].inv_coeff);
                p = &p - &basis[i].mul_term(&t, &k);
                q[i].add_term(t, &k);
            }
            None => {
                p.map_mut().remove(&m);
                r.add_term(m, &c);
            }
        }
    }
    (q, r)
}

/// Remainder of `divide` without tracking quotients.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>], order: &TermOrder) -> Polynomial<F> {
    let ls = leads(basis, order);
    reduce_with(f, basis, &ls, order)
}

fn reduce_with<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    ls: &[Lead<F>],
    order: &TermOrder,
) -> Polynomial<F> {
    let mut r = Polynomial::zero(f.nvars());
    let mut p = f.clone();
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match ls.iter().position(|l| l.mono.divides(&m)) {
            Some(i) => {
                let t = m.div(&ls[i].mono).expect("divides");
                let k = c.mul(&ls[i].inv_coeff);
                p = &p - &basis[i].mul_term(&t, &k);
            }
            None => {
                p.map_mut().remove(&m);
                r.add_term(m, &c);
            }
        }
    }
    r
}

pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, order: &TermOrder) -> Polynomial<F> {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).expect("lcm"), &cf.inv().expect("nonzero"));
    let b = g.mul_term(&l.div(mg).expect("lcm"), &cg.inv().expect("nonzero"));
    &a - &b
}

/// Reduced Groebner basis of the ideal generated by `gens`, monic, sorted by
/// leading monomial descending. The zero ideal gives an empty basis.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], order: &TermOrder) -> Vec<Polynomial<F>> {
    let mut g: Vec<Polynomial<F>> = Vec::new();
    for p in gens.iter().filter(|p| !p.is_zero()) {
        let p = p.monic(order);
        if !g.contains(&p) {
            g.push(p);
        }
    }
    if g.iter().any(|p| p.is_constant()) {
        let one = g.iter().find(|p| p.is_constant()).expect("found").clone();
        return vec![one];
    }
    let mut lm: Vec<Monomial> = g.iter().map(|p| p.leading_monomial(order).expect("nonzero").clone()).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
            pending.insert((i, j));
        }
    }
    let key = |p: &(usize, usize), lm: &[Monomial]| lm[p.0].lcm(&lm[p.1]);
    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let a = key(&pairs[k], &lm);
            let b = key(&pairs[best], &lm);
            let ord = a
                .degree()
                .cmp(&b.degree())
                .then_with(|| order.cmp(&a, &b))
                .then_with(|| pairs[k].cmp(&pairs[best]));
            if ord.is_lt() {
                best = k;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        pending.remove(&(i, j));
        if lm[i].is_coprime(&lm[j]) {
            continue;
        }
        let l = lm[i].lcm(&lm[j]);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm[k].divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j], order);
        let r = normal_form(&s, &g, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        if r.is_constant() {
            return vec![r];
        }
        let new = g.len();
        lm.push(r.leading_monomial(order).expect("nonzero").clone());
        g.push(r);
        for k in 0..new {
            pairs.push((k, new));
            pending.insert((k, new));
        }
    }
    reduce_basis(g, order)
}

/// Minimalizes and interreduces a Groebner basis.
pub fn reduce_basis<F: Field>(g: Vec<Polynomial<F>>, order: &TermOrder) -> Vec<Polynomial<F>> {
    let lm: Vec<Monomial> = g.iter().map(|p| p.leading_monomial(order).expect("nonzero").clone()).collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..g.len() {
        let redundant = (0..g.len()).any(|k| {
            k != i && lm[k].divides(&lm[i]) && (lm[k] != lm[i] || k < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let mut min: Vec<Polynomial<F>> = keep.iter().map(|&i| g[i].monic(order)).collect();
    for i in 0..min.len() {
        let others: Vec<Polynomial<F>> = min
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form(&min[i], &others, order);
        min[i] = r.monic(order);
    }
    min.sort_by(|a, b| {
        order.cmp(
            b.leading_monomial(order).expect("nonzero"),
            a.leading_monomial(order).expect("nonzero"),
        )
    });
    min
}

/// Every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(gb: &[Polynomial<F>], order: &TermOrder) -> bool {
    let ls = leads(gb, order);
    for j in 0..gb.len() {
        for i in 0..j {
            let s = s_polynomial(&gb[i], &gb[j], order);
            if !reduce_with(&s, gb, &ls, order).is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl StandardMonomials {
    pub fn count(&self) -> Option<usize> {
        match self {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        }
    }
}

/// Monomials outside the initial ideal, ascending under `order`.
pub fn standard_monomials<F: Field>(gb: &[Polynomial<F>], order: &TermOrder, nvars: usize) -> StandardMonomials {
    let lms: Vec<Monomial> = gb.iter().filter_map(|p| p.leading_monomial(order).cloned()).collect();
    if lms.iter().any(|m| m.is_one()) {
        return StandardMonomials::Finite(Vec::new());
    }
    let mut bound = vec![u32::MAX; nvars];
    for m in &lms {
        if let Some((v, e)) = m.pure_power() {
            bound[v] = bound[v].min(e);
        }
    }
    if bound.iter().any(|&b| b == u32::MAX) {
        return StandardMonomials::Infinite;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial::new(&cur);
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == nvars {
                out.sort_by(|a, b| order.cmp(a, b));
                return StandardMonomials::Finite(out);
            }
            cur[i] += 1;
            if cur[i] < bound[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
