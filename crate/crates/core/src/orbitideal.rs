//! The generic orbit ideal: kernel of `K[X] -> k(V)`, `X_i -> x_i`, built
//! from Reynolds matrix equations.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::{EquivariantEmbedding, RepContext};
use crate::linalg::Matrix;
use crate::multipoly::{
    adjugate, determinant, format_monomial, format_poly, parametric_count, parametric_groebner, Monomial, OrderKind, Poly, Polynomial,
    RationalFunction, StandardMonomials, TermOrder, XPoly,
};
use crate::scalars::{Cyclotomic, Field};
use crate::spanning::{poly_matrix_rank, RankMode, RegularWitness, SpanReport};

/// One solved equation `phi(v_1) = sum_i a_i psi_i(v_1)`, obtained from
/// `R(h_k phi(v_1)) = sum_i a_i R(h_k psi_i(v_1))`.
#[derive(Debug, Clone)]
pub struct MatrixEquationRecord {
    pub irrep: usize,
    pub phi: EquivariantEmbedding,
    pub multipliers: Vec<Poly>,
    /// `matrix[k][i] = R(h_k psi_i(v_1))`.
    pub matrix: Vec<Vec<Poly>>,
    /// `rhs[k] = R(h_k phi(v_1))`.
    pub rhs: Vec<Poly>,
    pub solution: Vec<RationalFunction>,
}

impl MatrixEquationRecord {
    /// Largest degree among the invariant polynomials of the equation.
    pub fn certificate_degree(&self) -> u32 {
        self.matrix
            .iter()
            .flatten()
            .chain(&self.rhs)
            .filter_map(|p| p.total_degree().finite())
            .max()
            .unwrap_or(0)
    }

    /// Nonzero invariant polynomials appearing in the equation.
    pub fn invariants(&self) -> Vec<Poly> {
        self.matrix
            .iter()
            .flatten()
            .chain(&self.rhs)
            .filter(|p| !p.is_zero())
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct OrbitIdealGenerator {
    pub xpoly: XPoly,
    /// Index into `OrbitIdealReport::records`.
    pub record: usize,
    /// Basis vector `v_j` the relation is evaluated at.
    pub basis_index: usize,
    /// Max over coefficients of max(deg num, deg den).
    pub coefficient_degree: u32,
}

#[derive(Debug, Clone)]
pub struct OrbitIdealReport {
    pub d_i: u32,
    pub candidate_degree: u32,
    pub order: TermOrder,
    pub records: Vec<MatrixEquationRecord>,
    pub generators: Vec<OrbitIdealGenerator>,
    pub groebner_basis: Vec<XPoly>,
    pub standard_monomials: Vec<Monomial>,
    /// Relations with `deg phi <= D_I` alone generate the ideal.
    pub low_relations_generate: bool,
}

/// Per irreducible: multipliers and the invariant matrix they give.
#[derive(Debug, Clone)]
pub struct MultiplierChoice {
    pub multipliers: Vec<Poly>,
    pub matrix: Vec<Vec<Poly>>,
    adjugate: Vec<Vec<Poly>>,
    det: Poly,
}

pub fn to_xpoly(p: &Poly) -> XPoly {
    let n = p.nvars();
    p.map_coeffs(|c| RationalFunction::constant(c.clone(), n))
}

/// `X -> x`.
pub fn xi_map(f: &XPoly) -> RationalFunction {
    let n = f.nvars();
    let mut acc = RationalFunction::zero(n);
    for (m, c) in f.terms() {
        let mono = RationalFunction::from_poly(Polynomial::monomial(m.clone(), Cyclotomic::one()));
        acc = acc.add(&c.mul(&mono));
    }
    acc
}

/// Graded order used for the orbit ideal.
pub fn ideal_order(ctx: &RepContext) -> TermOrder {
    let o = ctx.term_order();
    if o.is_graded() {
        o.clone()
    } else {
        TermOrder::new(OrderKind::Grevlex, ctx.nvars())
    }
}

fn witness_row(ctx: &RepContext, h: &Poly, psi: &[&EquivariantEmbedding]) -> Vec<Poly> {
    psi.iter()
        .map(|e| ctx.action().reynolds(&(h * &e.images[0])))
        .collect()
}

/// Chooses `d_lambda` multipliers making `(R(h_k psi_i(v_1)))` nonsingular.
/// Candidates: the dual component of the witness, then the whole witness,
/// then pairwise products of witness elements.
pub fn find_multipliers(ctx: &RepContext, witness: &RegularWitness, lambda: usize) -> Result<MultiplierChoice> {
    let comp = &witness.components[lambda];
    let psi: Vec<&EquivariantEmbedding> = comp.embeddings.iter().collect();
    let dl = psi.len();
    let mut candidates: Vec<Poly> = Vec::new();
    if let Some(dual) = ctx.dual(lambda) {
        for e in &witness.components[dual].embeddings {
            candidates.extend(e.images.iter().cloned());
        }
    }
    let all = witness.basis();
    candidates.extend(all.iter().cloned());
    let mut chosen: Vec<Poly> = Vec::new();
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    let mut tried: Vec<Poly> = Vec::new();
    let mut consider = |h: Poly, chosen: &mut Vec<Poly>, rows: &mut Vec<Vec<Poly>>| {
        if chosen.len() == dl || tried.contains(&h) {
            return;
        }
        let row = witness_row(ctx, &h, &psi);
        tried.push(h.clone());
        if row.iter().all(|p| p.is_zero()) {
            return;
        }
        rows.push(row);
        if poly_matrix_rank(rows, RankMode::Fast) == rows.len() {
            chosen.push(h);
        } else {
            rows.pop();
        }
    };
    for h in candidates {
        consider(h, &mut chosen, &mut rows);
    }
    if chosen.len() < dl {
        'outer: for a in &all {
            for b in &all {
                if chosen.len() == dl {
                    break 'outer;
                }
                consider(a * b, &mut chosen, &mut rows);
            }
        }
    }
    if chosen.len() < dl {
        return Err(Error::Internal(format!(
            "no nonsingular multiplier matrix found for `{}`",
            ctx.irreps()[lambda].label()
        )));
    }
    let det = determinant(rows.clone());
    if det.is_zero() {
        return Err(Error::Internal("multiplier matrix is singular".into()));
    }
    Ok(MultiplierChoice {
        adjugate: adjugate(&rows),
        multipliers: chosen,
        matrix: rows,
        det,
    })
}

/// Solves for the coefficients of `phi` in the witness basis of its
/// isotypic component and checks the relation at every basis vector.
pub fn solve_coefficients(
    ctx: &RepContext,
    witness: &RegularWitness,
    choice: &MultiplierChoice,
    phi: &EquivariantEmbedding,
) -> Result<MatrixEquationRecord> {
    solve_coefficients_within(ctx, witness, choice, phi, &Budget::unlimited())
}

/// As `solve_coefficients`, checking `budget` before each reduction to
/// lowest terms (the dominant cost for larger groups).
pub fn solve_coefficients_within(
    ctx: &RepContext,
    witness: &RegularWitness,
    choice: &MultiplierChoice,
    phi: &EquivariantEmbedding,
    budget: &Budget,
) -> Result<MatrixEquationRecord> {
    let lambda = phi.irrep;
    let psi = &witness.components[lambda].embeddings;
    let rhs: Vec<Poly> = choice
        .multipliers
        .iter()
        .map(|h| ctx.action().reynolds(&(h * &phi.images[0])))
        .collect();
    // a = adj(M) b / det(M); the relation is checked before reducing.
    let numerators: Vec<Poly> = choice
        .adjugate
        .iter()
        .map(|row| {
            row.iter()
                .zip(&rhs)
                .fold(Polynomial::zero(ctx.nvars()), |acc, (a, b)| &acc + &(a * b))
        })
        .collect();
    for j in 0..phi.images.len() {
        let mut acc = &phi.images[j] * &choice.det;
        for (num, e) in numerators.iter().zip(psi) {
            acc = &acc - &(num * &e.images[j]);
        }
        if !acc.is_zero() {
            return Err(Error::Internal(format!(
                "solved relation fails at basis vector {} for `{}` in degree {}",
                j + 1,
                ctx.irreps()[lambda].label(),
                phi.degree
            )));
        }
    }
    let solution = numerators
        .into_iter()
        .map(|num| {
            budget.check()?;
            Ok(RationalFunction::new(num, choice.det.clone())?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixEquationRecord {
        irrep: lambda,
        phi: phi.clone(),
        multipliers: choice.multipliers.clone(),
        matrix: choice.matrix.clone(),
        rhs,
        solution,
    })
}

/// Solves every non-witness embedding of degree at most `degree`.
pub fn solve_all(
    ctx: &RepContext,
    witness: &RegularWitness,
    degree: u32,
    budget: &Budget,
) -> Result<Vec<MatrixEquationRecord>> {
    let choices: Vec<MultiplierChoice> = (0..ctx.irreps().len())
        .map(|l| {
            budget.check()?;
            find_multipliers(ctx, witness, l)
        })
        .collect::<Result<_>>()?;
    let mut records = Vec::new();
    for d in 0..=degree {
        for (l, choice) in choices.iter().enumerate() {
            for phi in ctx.hom_basis(l, d).iter() {
                if witness.components[l].embeddings.contains(phi) {
                    continue;
                }
                budget.check()?;
                records.push(solve_coefficients_within(ctx, witness, choice, phi, budget)?);
            }
        }
    }
    Ok(records)
}

/// The relations `phi(v_j)(X) - sum_i a_i psi_i(v_j)(X)`.
pub fn relations(witness: &RegularWitness, records: &[MatrixEquationRecord]) -> Vec<OrbitIdealGenerator> {
    let mut out = Vec::new();
    for (r, rec) in records.iter().enumerate() {
        let psi = &witness.components[rec.irrep].embeddings;
        for j in 0..rec.phi.images.len() {
            let mut f = to_xpoly(&rec.phi.images[j]);
            for (a, e) in rec.solution.iter().zip(psi) {
                f = &f - &to_xpoly(&e.images[j]).scale(a);
            }
            let coefficient_degree = f.terms().map(|(_, c)| c.degree_bound()).max().unwrap_or(0);
            out.push(OrbitIdealGenerator {
                xpoly: f,
                record: r,
                basis_index: j,
                coefficient_degree,
            });
        }
    }
    out
}

pub fn standard_count(gb: &[XPoly], order: &TermOrder, nvars: usize) -> Option<usize> {
    crate::multipoly::standard_monomials(gb, order, nvars).count()
}

fn x_degree(f: &XPoly) -> u32 {
    f.total_degree().finite().unwrap_or(0)
}

/// Least `d` such that the elements of degree at most `d` of the reduced
/// Groebner basis generate the same ideal. Valid for graded orders.
pub fn generic_orbit_degree(gb: &[XPoly], order: &TermOrder, nvars: usize, group_order: usize) -> u32 {
    let top = gb.iter().map(x_degree).max().unwrap_or(0);
    for d in 1..top {
        let sub: Vec<XPoly> = gb.iter().filter(|f| x_degree(f) <= d).cloned().collect();
        if sub.is_empty() {
            continue;
        }
        if parametric_count(&sub, order, nvars) == Some(group_order) {
            return d;
        }
    }
    top.max(1)
}

pub fn build_orbit_ideal(ctx: &RepContext, span: &SpanReport) -> Result<OrbitIdealReport> {
    build_orbit_ideal_within(ctx, span, &Budget::unlimited())
}

/// Wall-clock allowance, checked between matrix equations, between the
/// reductions inside one, and before each Groebner stage. A single gcd is
/// not interrupted, so the overrun is bounded by the slowest one.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    limit: Option<Duration>,
    start: Instant,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            limit: None,
            start: Instant::now(),
        }
    }

    pub fn new(limit: Duration) -> Self {
        Budget {
            limit: Some(limit),
            start: Instant::now(),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::Budget(l.as_secs_f64())),
            _ => Ok(()),
        }
    }
}

pub fn build_orbit_ideal_within(ctx: &RepContext, span: &SpanReport, budget: &Budget) -> Result<OrbitIdealReport> {
    let order = ideal_order(ctx);
    let n = ctx.nvars();
    let g = ctx.group().order();
    let max_candidate = (span.d_span + 1).max(g as u32);
    let mut candidate = span.d_span + 1;
    loop {
        let records = solve_all(ctx, &span.witness, candidate, budget)?;
        let generators = relations(&span.witness, &records);
        for gen in &generators {
            if !xi_map(&gen.xpoly).is_zero() {
                return Err(Error::Internal("emitted relation is not in the kernel".into()));
            }
        }
        let polys: Vec<XPoly> = generators.iter().map(|g| g.xpoly.clone()).collect();
        budget.check()?;
        let gb = parametric_groebner(&polys, &order, n);
        let sm = crate::multipoly::standard_monomials(&gb, &order, n);
        if sm.count() == Some(g) {
            let StandardMonomials::Finite(standard_monomials) = sm else {
                unreachable!("count is finite")
            };
            let d_i = generic_orbit_degree(&gb, &order, n, g);
            let low: Vec<XPoly> = generators
                .iter()
                .filter(|gen| records[gen.record].phi.degree <= d_i)
                .map(|g| g.xpoly.clone())
                .collect();
            let low_relations_generate = parametric_count(&low, &order, n) == Some(g);
            return Ok(OrbitIdealReport {
                d_i,
                candidate_degree: candidate,
                order,
                records,
                generators,
                groebner_basis: gb,
                standard_monomials,
                low_relations_generate,
            });
        }
        if candidate >= max_candidate {
            return Err(Error::Internal(format!(
                "relations up to degree {candidate} do not cut out the generic orbit"
            )));
        }
        candidate += 1;
    }
}

/// Kernel of `X -> x` on polynomials of X-degree at most `degree`, computed
/// directly as the nullspace over k(x) of the matrix `(g . x^a)`.
pub fn brute_force_kernel(ctx: &RepContext, degree: u32) -> Vec<XPoly> {
    let n = ctx.nvars();
    let monos: Vec<Monomial> = (0..=degree).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
    let rows: Vec<Vec<RationalFunction>> = (0..ctx.group().order())
        .map(|g| {
            monos
                .iter()
                .map(|m| {
                    RationalFunction::from_poly(
                        ctx.action().act(g, &Polynomial::monomial(m.clone(), Cyclotomic::one())),
                    )
                })
                .collect()
        })
        .collect();
    let null = Matrix::from_rows(rows).nullspace();
    null.into_iter()
        .map(|v| Polynomial::from_terms(n, monos.iter().cloned().zip(v)))
        .collect()
}

/// Serializable view.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitIdealSummary {
    pub d_i: u32,
    pub candidate_degree: u32,
    pub term_order: OrderKind,
    pub generators: Vec<GeneratorSummary>,
    pub groebner_basis: Vec<String>,
    pub leading_monomials: Vec<String>,
    pub standard_monomial_count: usize,
    pub max_certificate_degree: u32,
    pub low_relations_generate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSummary {
    pub relation: String,
    pub irrep: String,
    pub phi_degree: u32,
    pub basis_index: usize,
    pub coefficient_degree: u32,
}

pub fn upper_names(ctx: &RepContext) -> Vec<String> {
    ctx.var_names().iter().map(|s| s.to_uppercase()).collect()
}

pub fn format_xpoly(ctx: &RepContext, f: &XPoly, order: &TermOrder) -> String {
    format_poly(f, &upper_names(ctx), order, ctx.var_names())
}

impl OrbitIdealReport {
    pub fn summary(&self, ctx: &RepContext) -> OrbitIdealSummary {
        let up = upper_names(ctx);
        OrbitIdealSummary {
            d_i: self.d_i,
            candidate_degree: self.candidate_degree,
            term_order: self.order.kind(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorSummary {
                    relation: format_xpoly(ctx, &g.xpoly, &self.order),
                    irrep: ctx.irreps()[self.records[g.record].irrep].label().to_string(),
                    phi_degree: self.records[g.record].phi.degree,
                    basis_index: g.basis_index + 1,
                    coefficient_degree: g.coefficient_degree,
                })
                .collect(),
            groebner_basis: self
                .groebner_basis
                .iter()
                .map(|f| format_xpoly(ctx, f, &self.order))
                .collect(),
            leading_monomials: self
                .groebner_basis
                .iter()
                .map(|f| format_monomial(f.leading_monomial(&self.order).expect("nonzero"), &up))
                .collect(),
            standard_monomial_count: self.standard_monomials.len(),
            max_certificate_degree: self
                .records
                .iter()
                .map(|r| r.certificate_degree())
                .max()
                .unwrap_or(0),
            low_relations_generate: self.low_relations_generate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::tests::ctx;
    use crate::multipoly::parse_poly;
    use crate::multipoly::buchberger;
    use crate::spanning::analyze_span;

    fn p(c: &RepContext, s: &str) -> Poly {
        parse_poly(s, c.group().field_order(), c.var_names()).unwrap()
    }

    fn rf(c: &RepContext, n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(c, n), p(c, d)).unwrap()
    }

    #[test]
    fn quaternion_orbit_ideal() {
        let c = ctx("q8");
        let span = analyze_span(&c, RankMode::Exact).unwrap();
        let rep = build_orbit_ideal(&c, &span).unwrap();
        assert_eq!(rep.d_i, 4);
        assert_eq!(rep.standard_monomials.len(), 8);
        assert_eq!(rep.generators.len(), 7);
        let s = rep.summary(&c);
        let mut lms = s.leading_monomials.clone();
        lms.sort();
        assert_eq!(lms, vec!["X*Y^3", "X^2*Y", "X^3", "Y^4"]);
        assert!(rep.low_relations_generate);

        let sta = c.irrep_index("Sta").unwrap();
        let rec = rep
            .records
            .iter()
            .find(|r| r.irrep == sta && r.phi.degree == 1)
            .unwrap();
        assert_eq!(rec.phi.images[0], p(&c, "x"));
        let psi = &span.witness.components[sta].embeddings;
        for (a, e) in rec.solution.iter().zip(psi) {
            if e.images[0] == p(&c, "y^3") {
                assert_eq!(a, &rf(&c, "-2*x*y", "x^4 - y^4"));
            } else {
                assert_eq!(e.images[0], p(&c, "x^2*y"));
                assert_eq!(a, &rf(&c, "x^4 + y^4", "x^5*y - x*y^5"));
            }
        }
        let mut hs = rec.multipliers.clone();
        hs.sort_by_key(|h| format!("{h:?}"));
        assert!(hs.iter().all(|h| h.is_homogeneous() && h.total_degree().finite() == Some(3)));

        let jl = c.irrep_index("j").unwrap();
        let rec = rep
            .records
            .iter()
            .find(|r| r.irrep == jl && r.phi.degree == 4)
            .unwrap();
        assert_eq!(rec.phi.images[0], p(&c, "x^4 - y^4"));
        assert_eq!(rec.multipliers, vec![p(&c, "x*y")]);
        assert_eq!(rec.solution[0], rf(&c, "x^4 - y^4", "x*y"));
    }

    #[test]
    fn trivial_and_cube_root() {
        let c = ctx("trivial");
        let span = analyze_span(&c, RankMode::Exact).unwrap();
        let rep = build_orbit_ideal(&c, &span).unwrap();
        assert_eq!(rep.d_i, 1);
        assert_eq!(rep.standard_monomials.len(), 1);
        assert_eq!(rep.summary(&c).groebner_basis, vec!["X - x"]);

        let c = ctx("c3_1d");
        let span = analyze_span(&c, RankMode::Exact).unwrap();
        let rep = build_orbit_ideal(&c, &span).unwrap();
        assert_eq!(rep.d_i, 3);
        assert_eq!(rep.summary(&c).groebner_basis, vec!["X^3 - x^3"]);
    }

    #[test]
    fn witness_members_solve_to_unit_vectors() {
        let c = ctx("s3std");
        let span = analyze_span(&c, RankMode::Exact).unwrap();
        for (l, comp) in span.witness.components.iter().enumerate() {
            let choice = find_multipliers(&c, &span.witness, l).unwrap();
            for (k, e) in comp.embeddings.iter().enumerate() {
                let rec = solve_coefficients(&c, &span.witness, &choice, e).unwrap();
                for (i, a) in rec.solution.iter().enumerate() {
                    assert_eq!(a.is_one(), i == k);
                    assert_eq!(a.is_zero(), i != k);
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_on_tiny_cases() {
        for name in ["trivial", "c2", "c3_1d"] {
            let c = ctx(name);
            let span = analyze_span(&c, RankMode::Exact).unwrap();
            let rep = build_orbit_ideal(&c, &span).unwrap();
            let kernel = brute_force_kernel(&c, span.d_span + 1);
            let gb = buchberger(&kernel, &rep.order);
            assert_eq!(gb, rep.groebner_basis, "{name}");
        }
    }
}
