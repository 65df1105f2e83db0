//! Linear independence over the invariant field, the spanning degree and a
//! graded copy of the regular representation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::{EquivariantEmbedding, RepContext};
use crate::linalg::Matrix;
use crate::multipoly::{fraction_free_rank, Poly};
use crate::scalars::Cyclotomic;

/// How ranks over k(x) are established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMode {
    /// Fraction-free elimination over polynomial entries.
    #[default]
    Exact,
    /// Evaluate at a pseudo-random integer point first; a full numeric rank
    /// proves independence, anything less falls back to `Exact`.
    Fast,
}

const EVAL_SEED: u64 = 0x5eed_1a7e;

/// Rank over k(x) of a matrix of polynomials.
pub fn poly_matrix_rank(rows: &[Vec<Poly>], mode: RankMode) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let full = rows.len().min(rows[0].len());
    if mode == RankMode::Fast && numeric_rank(rows, EVAL_SEED) == full {
        return full;
    }
    fraction_free_rank(rows.to_vec())
}

/// Rank after substituting a pseudo-random integer point; a lower bound for
/// the rank over k(x).
pub fn numeric_rank(rows: &[Vec<Poly>], seed: u64) -> usize {
    let n = rows
        .iter()
        .flatten()
        .map(|p| p.nvars())
        .next()
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<Cyclotomic> = (0..n)
        .map(|_| Cyclotomic::from_int(rng.gen_range(-1000..=1000)))
        .collect();
    let m = Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|p| p.eval(&point).unwrap_or_else(Cyclotomic::zero))
                    .collect()
            })
            .collect(),
    );
    m.rank()
}

/// Dimension over the invariant field of the span of `polys` inside k(V):
/// the rank over k(x) of the matrix `(g . f_i)`.
pub fn galois_rank(ctx: &RepContext, polys: &[Poly], mode: RankMode) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Poly>> = (0..ctx.group().order())
        .map(|g| polys.iter().map(|f| ctx.action().act(g, f)).collect())
        .collect();
    poly_matrix_rank(&rows, mode)
}

/// Rank over the invariant field of a family of embeddings of one
/// irreducible, as the rank over k(x) of the matrix of their images.
pub fn embedding_rank(embeddings: &[&EquivariantEmbedding], mode: RankMode) -> usize {
    let rows: Vec<Vec<Poly>> = embeddings.iter().map(|e| e.images.clone()).collect();
    poly_matrix_rank(&rows, mode)
}

/// The embeddings chosen for one irreducible.
#[derive(Debug, Clone)]
pub struct WitnessComponent {
    pub irrep: usize,
    pub embeddings: Vec<EquivariantEmbedding>,
}

/// A graded subspace carrying the regular representation whose k-basis is a
/// basis over the invariant field.
#[derive(Debug, Clone)]
pub struct RegularWitness {
    pub components: Vec<WitnessComponent>,
}

impl RegularWitness {
    pub fn max_degree(&self) -> u32 {
        self.components
            .iter()
            .flat_map(|c| c.embeddings.iter().map(|e| e.degree))
            .max()
            .unwrap_or(0)
    }

    /// All `|G|` basis polynomials `psi_i(v_j)`.
    pub fn basis(&self) -> Vec<Poly> {
        self.components
            .iter()
            .flat_map(|c| c.embeddings.iter().flat_map(|e| e.images.iter().cloned()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SpanReport {
    pub d_span: u32,
    pub d_reg: u32,
    /// Per irreducible, the least degree by which it is spanned.
    pub completion: Vec<u32>,
    /// `profile[d]` is the dimension over K of the span of polynomials of
    /// degree at most `d`, for `d = 0..=d_span`.
    pub profile: Vec<usize>,
    pub witness: RegularWitness,
}

/// Serializable summary of a `SpanReport`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanSummary {
    pub d_span: u32,
    pub d_reg: u32,
    pub completion: Vec<(String, u32)>,
    pub profile: Vec<usize>,
    pub witness: Vec<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub irrep: String,
    pub degree: u32,
    pub images: Vec<String>,
}

/// Per irreducible: cumulative rank after each degree, up to completion.
fn rank_history(ctx: &RepContext, lambda: usize, mode: RankMode) -> Result<Vec<usize>> {
    let dl = ctx.irreps()[lambda].degree();
    let max_d = ctx.group().order().saturating_sub(1) as u32;
    let mut chosen: Vec<EquivariantEmbedding> = Vec::new();
    let mut hist = Vec::new();
    for d in 0..=max_d {
        for e in ctx.hom_basis(lambda, d).iter() {
            if chosen.len() == dl {
                break;
            }
            let mut trial: Vec<&EquivariantEmbedding> = chosen.iter().collect();
            trial.push(e);
            if embedding_rank(&trial, mode) > chosen.len() {
                chosen.push(e.clone());
            }
        }
        hist.push(chosen.len());
        if chosen.len() == dl {
            return Ok(hist);
        }
    }
    Err(Error::Internal(format!(
        "irreducible `{}` not spanned by degree {max_d}; the action may not be faithful",
        ctx.irreps()[lambda].label()
    )))
}

/// Least `d` such that `k[V]_{<=d}` contains every irreducible `V_lambda`
/// with multiplicity at least `d_lambda`.
pub fn compute_dreg(ctx: &RepContext) -> Result<u32> {
    let max_d = ctx.group().order().saturating_sub(1) as u32;
    let mut acc = vec![0usize; ctx.irreps().len()];
    for d in 0..=max_d {
        for (l, a) in acc.iter_mut().enumerate() {
            *a += ctx.multiplicity(l, d)?;
        }
        if acc.iter().zip(ctx.irreps()).all(|(a, m)| *a >= m.degree()) {
            return Ok(d);
        }
    }
    Err(Error::Internal(format!(
        "regular representation not contained in degrees up to {max_d}"
    )))
}

/// Spanning degree only.
pub fn compute_dspan(ctx: &RepContext, mode: RankMode) -> Result<u32> {
    let mut d = 0;
    for l in 0..ctx.irreps().len() {
        d = d.max(rank_history(ctx, l, mode)?.len() as u32 - 1);
    }
    Ok(d)
}

/// Chooses `d_lambda` independent embeddings per irreducible, scanning from
/// the completion degree downwards so that the top degrees are preferred.
pub fn select_vreg(ctx: &RepContext, completion: &[u32], mode: RankMode) -> Result<RegularWitness> {
    let mut components = Vec::new();
    for (l, &top) in completion.iter().enumerate() {
        let dl = ctx.irreps()[l].degree();
        let mut chosen: Vec<EquivariantEmbedding> = Vec::new();
        'deg: for d in (0..=top).rev() {
            for e in ctx.hom_basis(l, d).iter() {
                if chosen.len() == dl {
                    break 'deg;
                }
                let mut trial: Vec<&EquivariantEmbedding> = chosen.iter().collect();
                trial.push(e);
                if embedding_rank(&trial, mode) > chosen.len() {
                    chosen.push(e.clone());
                }
            }
        }
        if chosen.len() != dl {
            return Err(Error::Internal(format!(
                "could not select a witness for `{}`",
                ctx.irreps()[l].label()
            )));
        }
        chosen.sort_by_key(|e| e.degree);
        components.push(WitnessComponent {
            irrep: l,
            embeddings: chosen,
        });
    }
    Ok(RegularWitness { components })
}

pub fn analyze_span(ctx: &RepContext, mode: RankMode) -> Result<SpanReport> {
    let hists: Vec<Vec<usize>> = (0..ctx.irreps().len())
        .map(|l| rank_history(ctx, l, mode))
        .collect::<Result<_>>()?;
    let completion: Vec<u32> = hists.iter().map(|h| h.len() as u32 - 1).collect();
    let d_span = completion.iter().copied().max().unwrap_or(0);
    let profile = (0..=d_span as usize)
        .map(|d| {
            hists
                .iter()
                .zip(ctx.irreps())
                .map(|(h, m)| m.degree() * h[d.min(h.len() - 1)])
                .sum()
        })
        .collect();
    let witness = select_vreg(ctx, &completion, mode)?;
    Ok(SpanReport {
        d_span,
        d_reg: compute_dreg(ctx)?,
        completion,
        profile,
        witness,
    })
}

/// The witness basis has full rank `|G|` over the invariant field.
pub fn verify_witness(ctx: &RepContext, w: &RegularWitness) -> bool {
    let basis = w.basis();
    basis.len() == ctx.group().order() && galois_rank(ctx, &basis, RankMode::Fast) == basis.len()
}

impl SpanReport {
    pub fn summary(&self, ctx: &RepContext) -> SpanSummary {
        let names = ctx.var_names();
        let order = ctx.term_order();
        SpanSummary {
            d_span: self.d_span,
            d_reg: self.d_reg,
            completion: self
                .completion
                .iter()
                .enumerate()
                .map(|(l, d)| (ctx.irreps()[l].label().to_string(), *d))
                .collect(),
            profile: self.profile.clone(),
            witness: self
                .witness
                .components
                .iter()
                .flat_map(|c| {
                    c.embeddings.iter().map(|e| WitnessEntry {
                        irrep: ctx.irreps()[c.irrep].label().to_string(),
                        degree: e.degree,
                        images: e
                            .images
                            .iter()
                            .map(|p| crate::multipoly::format_poly(p, names, order, &[] as &[&str]))
                            .collect(),
                    })
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::tests::ctx;
    use crate::multipoly::{parse_poly, Monomial};

    fn p(c: &RepContext, s: &str) -> Poly {
        parse_poly(s, c.group().field_order(), c.var_names()).unwrap()
    }

    #[test]
    fn quaternion_spanning() {
        let c = ctx("q8");
        let r = analyze_span(&c, RankMode::Exact).unwrap();
        assert_eq!(r.d_span, 3);
        assert!(r.d_reg <= 3);
        assert_eq!(r.profile.last(), Some(&8));
        let sta = c.irrep_index("Sta").unwrap();
        let comp = &r.witness.components[sta];
        assert!(comp.embeddings.iter().all(|e| e.degree == 3));
        for l in ["i", "j", "k"] {
            let e = &r.witness.components[c.irrep_index(l).unwrap()].embeddings;
            assert_eq!(e[0].degree, 2);
        }
        assert!(verify_witness(&c, &r.witness));
        assert_eq!(galois_rank(&c, &[p(&c, "y^3"), p(&c, "x^2*y")], RankMode::Exact), 2);
    }

    #[test]
    fn proportional_inputs_have_rank_one() {
        let c = ctx("q8");
        let f = p(&c, "x^2 + z*y");
        assert_eq!(galois_rank(&c, &[f.clone(), f.scale(&Cyclotomic::zeta(4, 1))], RankMode::Exact), 1);
    }

    #[test]
    fn cyclic_family() {
        for n in [3u32, 5, 7, 9] {
            let c = ctx(&format!("c{n}"));
            let r = analyze_span(&c, RankMode::Exact).unwrap();
            assert_eq!(r.d_span, (n - 1) / 2, "c{n}");
            assert_eq!(r.d_reg, r.d_span, "abelian c{n}");
        }
        let c = ctx("c5");
        let r = analyze_span(&c, RankMode::Exact).unwrap();
        let mut monos: Vec<Monomial> = r
            .witness
            .basis()
            .iter()
            .map(|f| {
                assert_eq!(f.len(), 1);
                f.terms().next().unwrap().0.clone()
            })
            .collect();
        monos.sort();
        let mut expected: Vec<Monomial> = ["1", "x", "y", "x^2", "y^2"]
            .iter()
            .map(|s| p(&c, s).terms().next().unwrap().0.clone())
            .collect();
        expected.sort();
        assert_eq!(monos, expected);
    }

    #[test]
    fn small_cases() {
        let c = ctx("trivial");
        assert_eq!(compute_dspan(&c, RankMode::Exact).unwrap(), 0);
        assert_eq!(compute_dreg(&c).unwrap(), 0);
        let c = ctx("c3_1d");
        assert_eq!(compute_dreg(&c).unwrap(), 2);
        assert_eq!(compute_dspan(&c, RankMode::Exact).unwrap(), 2);
        for name in ["c2", "c3reg", "c4reg"] {
            assert_eq!(compute_dspan(&ctx(name), RankMode::Exact).unwrap(), 1, "{name}");
        }
    }

    #[test]
    fn alternating_group_dependence() {
        let c = ctx("a4perm");
        assert_eq!(compute_dreg(&c).unwrap(), 2);
        let r = analyze_span(&c, RankMode::Fast).unwrap();
        assert_eq!(r.d_span, 3);
        let w = c.irrep_index("W").unwrap();
        let hb = c.hom_basis(w, 1);
        assert_eq!(hb.len(), 1);
        let s = p(&c, "x1 + x2 + x3 + x4");
        let mut polys = hb[0].images.clone();
        polys.extend(hb[0].images.iter().map(|f| f * &s));
        assert_eq!(galois_rank(&c, &polys, RankMode::Exact), 3);
        let lifted = EquivariantEmbedding {
            irrep: w,
            degree: 2,
            images: hb[0].images.iter().map(|f| f * &s).collect(),
        };
        assert_eq!(embedding_rank(&[&hb[0], &lifted], RankMode::Exact), 1);
    }

    #[test]
    fn embedding_rank_agrees_with_galois_rank() {
        let c = ctx("s3std");
        let std = c.irrep_index("std").unwrap();
        for d in 1..4 {
            for e in c.hom_basis(std, d).iter() {
                let g = galois_rank(&c, &e.images, RankMode::Exact);
                assert_eq!(g, 2 * embedding_rank(&[e], RankMode::Exact));
            }
        }
    }
}
