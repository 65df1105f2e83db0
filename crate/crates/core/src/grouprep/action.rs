use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::group::{CMatrix, MatrixGroup};
use crate::linalg::Matrix;
use crate::multipoly::{Monomial, Poly, Polynomial, RationalFunction, TermOrder};
use crate::scalars::{Cyclotomic, Field};

/// The action on `k[V]_d` in the monomial basis, listed in descending term
/// order.
#[derive(Debug)]
pub struct DegreeData {
    pub basis: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
    /// Column `j` of `matrices[g]` holds the coordinates of `g . basis[j]`.
    pub matrices: Vec<CMatrix>,
    pub reynolds: CMatrix,
}

/// `g . f (v) = f(g^-1 v)`, with per-degree matrices computed lazily.
#[derive(Debug)]
pub struct GradedAction {
    nvars: usize,
    order: TermOrder,
    group_order: usize,
    generators: Vec<usize>,
    linear: Vec<Vec<Poly>>,
    cache: Mutex<HashMap<u32, Arc<DegreeData>>>,
}

impl GradedAction {
    pub fn new(group: &MatrixGroup, order: TermOrder) -> Self {
        let n = group.dim();
        let linear = (0..group.order())
            .map(|g| {
                let inv = group.element(group.inv(g));
                (0..n)
                    .map(|i| {
                        Polynomial::from_terms(
                            n,
                            (0..n).map(|j| (Monomial::var(j, n), inv.get(i, j).clone())),
                        )
                    })
                    .collect()
            })
            .collect();
        GradedAction {
            nvars: n,
            order: order.resized(n),
            group_order: group.order(),
            generators: group.generator_indices().to_vec(),
            linear,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_order(&self) -> &TermOrder {
        &self.order
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Images of the variables under element `g`.
    pub fn linear_forms(&self, g: usize) -> &[Poly] {
        &self.linear[g]
    }

    pub fn act(&self, g: usize, f: &Poly) -> Poly {
        if f.is_constant() {
            return f.clone();
        }
        f.substitute(&self.linear[g])
    }

    pub fn act_rf(&self, g: usize, f: &RationalFunction) -> RationalFunction {
        f.map_polys(|p| self.act(g, p))
    }

    pub fn degree(&self, d: u32) -> Arc<DegreeData> {
        if let Some(dd) = self.cache.lock().expect("cache lock").get(&d) {
            return dd.clone();
        }
        let built = Arc::new(self.build(d));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(d)
            .or_insert(built)
            .clone()
    }

    fn build(&self, d: u32) -> DegreeData {
        let mut basis = Monomial::all_of_degree(self.nvars, d);
        self.order.sort_desc(&mut basis);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let zero = Cyclotomic::zero();
        let matrices: Vec<CMatrix> = (0..self.group_order)
            .map(|g| {
                let mut a = Matrix::new(n, n, zero.clone());
                for (j, m) in basis.iter().enumerate() {
                    let img = self.act(g, &Polynomial::monomial(m.clone(), Cyclotomic::one()));
                    for (mm, c) in img.terms() {
                        a.set(index[mm], j, c.clone());
                    }
                }
                a
            })
            .collect();
        let mut r = Matrix::new(n, n, zero);
        for a in &matrices {
            r = r.add(a);
        }
        let r = r.scale(&Cyclotomic::from_int(self.group_order as i64).inv().expect("nonzero"));
        DegreeData {
            basis,
            index,
            matrices,
            reynolds: r,
        }
    }

    /// Coordinates of the degree-`d` part of `f`.
    pub fn coords(&self, f: &Poly, d: u32) -> Vec<Cyclotomic> {
        let dd = self.degree(d);
        let mut v = vec![Cyclotomic::zero(); dd.basis.len()];
        for (m, c) in f.terms() {
            if m.degree() == d {
                v[dd.index[m]] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, d: u32, v: &[Cyclotomic]) -> Poly {
        let dd = self.degree(d);
        Polynomial::from_terms(
            self.nvars,
            dd.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    fn apply(&self, a: &CMatrix, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..a.rows())
            .map(|i| {
                let mut s = Cyclotomic::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let e = a.get(i, j);
                        if !e.is_zero() {
                            s = s.add(&e.mul(x));
                        }
                    }
                }
                s
            })
            .collect()
    }

    /// Action through the cached degree matrices.
    pub fn act_graded(&self, g: usize, f: &Poly) -> Poly {
        let mut out = Polynomial::zero(self.nvars);
        for d in degrees_of(f) {
            let dd = self.degree(d);
            let v = self.apply(&dd.matrices[g], &self.coords(f, d));
            out = &out + &self.from_coords(d, &v);
        }
        out
    }

    /// `|G|^-1 sum_g g . f`.
    pub fn reynolds(&self, f: &Poly) -> Poly {
        let mut out = Polynomial::zero(self.nvars);
        for d in degrees_of(f) {
            let dd = self.degree(d);
            let v = self.apply(&dd.reynolds, &self.coords(f, d));
            out = &out + &self.from_coords(d, &v);
        }
        out
    }

    pub fn reynolds_rf(&self, f: &RationalFunction) -> RationalFunction {
        if f.is_polynomial() {
            let c = f.den().constant_term().expect("nonzero").inv().expect("nonzero");
            return RationalFunction::from_poly(self.reynolds(f.num()).scale(&c));
        }
        let mut acc = RationalFunction::zero(self.nvars);
        for g in 0..self.group_order {
            acc = acc.add(&self.act_rf(g, f));
        }
        acc.mul(&RationalFunction::constant(
            Cyclotomic::from_int(self.group_order as i64).inv().expect("nonzero"),
            self.nvars,
        ))
    }

    /// Trace of the action of `g` on `k[V]_d`.
    pub fn character(&self, g: usize, d: u32) -> Cyclotomic {
        self.degree(d).matrices[g].trace()
    }

    pub fn is_invariant(&self, f: &Poly) -> bool {
        self.generators.iter().all(|&g| &self.act(g, f) == f)
    }

    pub fn is_invariant_rf(&self, f: &RationalFunction) -> bool {
        self.generators.iter().all(|&g| &self.act_rf(g, f) == f)
    }
}

fn degrees_of(f: &Poly) -> Vec<u32> {
    let mut ds: Vec<u32> = f.terms().map(|(m, _)| m.degree()).collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}
