//! Generators of the field of rational invariants and the degree bound
//! checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::RepContext;
use crate::linalg::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multipoly::{
    buchberger, format_poly, parametric_count, standard_monomials, OrderKind, Poly, Polynomial, RationalFunction,
    TermOrder, XPoly,
};
use crate::orbitideal::{ideal_order, OrbitIdealReport};
use crate::scalars::{Cyclotomic, Field};

/// Basis of the homogeneous invariants of degree `d`: the column space of
/// the Reynolds matrix, row-reduced.
pub fn homogeneous_invariants(ctx: &RepContext, d: u32) -> Vec<Poly> {
    let dd = ctx.action().degree(d);
    let mut m = dd.reynolds.transpose();
    let pivots = m.rref();
    (0..pivots.len())
        .map(|r| ctx.action().from_coords(d, m.row(r)))
        .collect()
}

/// k-basis of the invariants of degree at most `d`.
pub fn invariant_basis(ctx: &RepContext, d: u32) -> Vec<Poly> {
    (0..=d).flat_map(|e| homogeneous_invariants(ctx, e)).collect()
}

/// Invariants of degree `d` not in the span of products of invariants of
/// lower positive degree.
pub fn new_algebra_generators(ctx: &RepContext, d: u32) -> Vec<Poly> {
    let top = homogeneous_invariants(ctx, d);
    if d <= 1 || top.is_empty() {
        return top;
    }
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for a in 1..=d / 2 {
        let low = homogeneous_invariants(ctx, a);
        let high = homogeneous_invariants(ctx, d - a);
        for f in &low {
            for g in &high {
                rows.push(ctx.action().coords(&(f * g), d));
            }
        }
    }
    let mut span: Vec<Vec<Cyclotomic>> = crate::linalg::row_basis(&rows);
    let mut rank = span.len();
    let mut out = Vec::new();
    for f in top {
        span.push(ctx.action().coords(&f, d));
        let r = Matrix::from_rows(span.clone()).rank();
        if r > rank {
            rank = r;
            out.push(f);
        } else {
            span.pop();
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldGenVerdict {
    pub generates: bool,
    /// Standard monomial count of the fiber ideal, if finite.
    pub count: Option<usize>,
    pub reason: Option<String>,
}

/// Decides whether the candidates generate the invariant field, by
/// comparing the generic fiber of the candidate map with the group order.
pub fn verify_field_generation(ctx: &RepContext, candidates: &[RationalFunction]) -> Result<FieldGenVerdict> {
    for c in candidates {
        if !ctx.action().is_invariant_rf(c) {
            return Err(Error::Internal(format!(
                "candidate {} is not invariant",
                c.format_with(ctx.var_names())
            )));
        }
    }
    let g = ctx.group().order();
    let count = match specialized_count(ctx, candidates) {
        Some(c) => Some(c),
        None => fiber_count(ctx.nvars(), candidates, ideal_order(ctx).kind()),
    };
    Ok(match count {
        None => FieldGenVerdict {
            generates: false,
            count: None,
            reason: Some("transcendence degree deficit".into()),
        },
        Some(c) if c == g => FieldGenVerdict {
            generates: true,
            count,
            reason: None,
        },
        Some(c) => FieldGenVerdict {
            generates: false,
            count,
            reason: Some(format!("generic fiber has {c} points, group has {g} elements")),
        },
    })
}

/// Ideal `<c_num(X) c_den(x) - c_num(x) c_den(X)>` in `k(x)[X]`, with an
/// extra variable `T` and `T prod c_den(X) - 1` when some denominator is
/// nonconstant. Returns the generators and the number of X-variables.
pub fn fiber_ideal(nvars: usize, candidates: &[RationalFunction]) -> (Vec<XPoly>, usize) {
    let saturate = candidates.iter().any(|c| !c.den().is_constant());
    let front = if saturate { nvars + 1 } else { nvars };
    let lift = |p: &Poly| -> XPoly {
        p.extend_vars(front, 0)
            .map_coeffs(|c| RationalFunction::constant(c.clone(), nvars))
    };
    let one = RationalFunction::one(nvars);
    let mut gens: Vec<XPoly> = Vec::new();
    let mut dens = Polynomial::constant(one.clone(), front);
    for c in candidates {
        let f = &lift(c.num()).scale(&RationalFunction::from_poly(c.den().clone()))
            - &lift(c.den()).scale(&RationalFunction::from_poly(c.num().clone()));
        if !f.is_zero() {
            gens.push(f);
        }
        if !c.den().is_constant() {
            dens = &dens * &lift(c.den());
        }
    }
    if saturate {
        let t = Polynomial::var(nvars, front, &one);
        gens.push(&(&t * &dens) - &Polynomial::constant(one, front));
    }
    (gens, front)
}

/// Standard monomial count of the fiber ideal over `k(x)`.
pub fn fiber_count(nvars: usize, candidates: &[RationalFunction], kind: OrderKind) -> Option<usize> {
    let (gens, front) = fiber_ideal(nvars, candidates);
    parametric_count(&gens, &TermOrder::new(kind, front), nvars)
}

/// Positive certificate without parameters. When the top-degree parts of
/// polynomial candidates have no common zero besides the origin, the
/// candidate map is finite, so the generic fiber is no longer than the
/// fiber over any specialized point, and it always contains the generic
/// orbit. A specialized fiber of exactly `|G|` points therefore settles the
/// generic count. `None` means no certificate was found.
fn specialized_count(ctx: &RepContext, candidates: &[RationalFunction]) -> Option<usize> {
    let n = ctx.nvars();
    let g = ctx.group().order();
    let mut polys: Vec<Poly> = Vec::new();
    for c in candidates {
        if !c.den().is_constant() {
            return None;
        }
        let d = c.den().constant_term()?;
        let p = c.num().scale(&Field::inv(d)?);
        if !p.is_constant() {
            polys.push(p);
        }
    }
    let order = TermOrder::grevlex(n);
    let tops: Vec<Poly> = polys
        .iter()
        .map(|p| p.homogeneous_part(p.total_degree().finite().unwrap_or(0)))
        .collect();
    standard_monomials(&buchberger(&tops, &order), &order, n).count()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SPECIALIZATION_SEED);
    for _ in 0..SPECIALIZATION_TRIES {
        let point: Vec<Cyclotomic> = (0..n).map(|_| Cyclotomic::from_int(rng.gen_range(-9..=9))).collect();
        let fiber: Vec<Poly> = polys
            .iter()
            .map(|p| {
                let v = p.eval(&point).expect("nonzero polynomial");
                p - &Polynomial::constant(v, n)
            })
            .collect();
        if standard_monomials(&buchberger(&fiber, &order), &order, n).count() == Some(g) {
            return Some(g);
        }
    }
    None
}

const SPECIALIZATION_SEED: u64 = 0x5eed;
const SPECIALIZATION_TRIES: usize = 3;

pub fn verify_polys(ctx: &RepContext, polys: &[Poly]) -> Result<FieldGenVerdict> {
    let rfs: Vec<RationalFunction> = polys.iter().map(|p| RationalFunction::from_poly(p.clone())).collect();
    verify_field_generation(ctx, &rfs)
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub polys: Vec<Poly>,
    /// Index of the matrix-equation record each polynomial came from.
    pub provenance: Vec<usize>,
}

impl GeneratorSet {
    pub fn max_degree(&self) -> u32 {
        self.polys
            .iter()
            .filter_map(|p| p.total_degree().finite())
            .max()
            .unwrap_or(0)
    }
}

/// Invariant polynomials from the matrix equations of the relations with
/// `deg phi <= D_I`; their field contains every relation coefficient.
pub fn extract_field_generators(ctx: &RepContext, report: &OrbitIdealReport) -> GeneratorSet {
    let grevlex = TermOrder::grevlex(ctx.nvars());
    let mut polys: Vec<Poly> = Vec::new();
    let mut provenance = Vec::new();
    for (r, rec) in report.records.iter().enumerate() {
        if rec.phi.degree > report.d_i {
            continue;
        }
        for p in rec.invariants() {
            if p.is_constant() {
                continue;
            }
            let m = p.monic(&grevlex);
            if !polys.contains(&m) {
                polys.push(m);
                provenance.push(r);
            }
        }
    }
    GeneratorSet { polys, provenance }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaProbe {
    pub degree: u32,
    pub new_generators: Vec<String>,
    pub verdict: Option<FieldGenVerdict>,
}

/// Least `d <= limit` such that the invariants of degree at most `d`
/// generate the invariant field, scanning upward. Degrees adding no new
/// algebra generator are not re-tested.
pub fn compute_beta_field_upper(ctx: &RepContext, limit: u32) -> Result<(Option<u32>, Vec<BetaProbe>)> {
    let mut gens: Vec<Poly> = Vec::new();
    let mut probes = Vec::new();
    let order = ctx.term_order();
    for d in 1..=limit {
        let new = new_algebra_generators(ctx, d);
        let names: Vec<String> = new
            .iter()
            .map(|p| format_poly(p, ctx.var_names(), order, &[] as &[&str]))
            .collect();
        if new.is_empty() {
            probes.push(BetaProbe {
                degree: d,
                new_generators: names,
                verdict: None,
            });
            continue;
        }
        gens.extend(new);
        let v = verify_polys(ctx, &gens)?;
        let done = v.generates;
        probes.push(BetaProbe {
            degree: d,
            new_generators: names,
            verdict: Some(v),
        });
        if done {
            return Ok((Some(d), probes));
        }
    }
    Ok((None, probes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: u32,
    pub rhs: u32,
    pub holds: bool,
}

impl InequalityCheck {
    pub fn le(name: &str, lhs: u32, rhs: u32) -> Self {
        InequalityCheck {
            name: name.into(),
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group_order: usize,
    pub d_span: u32,
    pub d_reg: u32,
    pub d_i: Option<u32>,
    pub beta_field_upper: Option<u32>,
    pub main_bound: u32,
    pub extracted_generate: Option<bool>,
    pub extracted_max_degree: Option<u32>,
    pub checks: Vec<InequalityCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.extracted_generate != Some(false)
    }
}

/// Assembles the inequality chain from computed pieces.
pub fn bound_report(
    group_order: usize,
    d_span: u32,
    d_reg: u32,
    d_i: Option<u32>,
    beta: Option<u32>,
    extracted: Option<(bool, u32)>,
    profile_strict: bool,
) -> BoundReport {
    let main = 2 * d_span + 1;
    let mut checks = vec![
        InequalityCheck::le("D_reg <= D_span", d_reg, d_span),
        InequalityCheck::le("D_span <= |G| - 1", d_span, group_order.saturating_sub(1) as u32),
    ];
    if let Some(di) = d_i {
        checks.push(InequalityCheck::le("D_I <= D_span + 1", di, d_span + 1));
    }
    match beta {
        Some(b) => checks.push(InequalityCheck::le("beta_field <= 2 D_span + 1", b, main)),
        None => checks.push(InequalityCheck {
            name: "beta_field <= 2 D_span + 1".into(),
            lhs: main + 1,
            rhs: main,
            holds: false,
        }),
    }
    if let Some((_, deg)) = extracted {
        checks.push(InequalityCheck::le("extracted generator degree <= 2 D_span + 1", deg, main));
    }
    checks.push(InequalityCheck {
        name: "dimension profile strictly increasing".into(),
        lhs: profile_strict as u32,
        rhs: 1,
        holds: profile_strict,
    });
    BoundReport {
        group_order,
        d_span,
        d_reg,
        d_i,
        beta_field_upper: beta,
        main_bound: main,
        extracted_generate: extracted.map(|e| e.0),
        extracted_max_degree: extracted.map(|e| e.1),
        checks,
    }
}

pub fn profile_strictly_increasing(profile: &[usize], group_order: usize) -> bool {
    profile.windows(2).all(|w| w[0] < w[1] || w[0] == group_order && w[1] == group_order)
        && profile.last() == Some(&group_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::tests::ctx;
    use crate::multipoly::parse_poly;
    use crate::orbitideal::build_orbit_ideal;
    use crate::spanning::{analyze_span, RankMode};

    fn p(c: &RepContext, s: &str) -> Poly {
        parse_poly(s, c.group().field_order(), c.var_names()).unwrap()
    }

    #[test]
    fn quaternion_invariants_and_field() {
        let c = ctx("q8");
        assert_eq!(homogeneous_invariants(&c, 2).len(), 0);
        assert_eq!(homogeneous_invariants(&c, 4).len(), 2);
        assert_eq!(new_algebra_generators(&c, 4).len(), 2);
        assert_eq!(new_algebra_generators(&c, 6).len(), 1);
        assert!(new_algebra_generators(&c, 8).is_empty());

        let two = [p(&c, "x^4 + y^4"), p(&c, "x^2*y^2")];
        let v = verify_polys(&c, &two).unwrap();
        assert!(!v.generates);
        assert_eq!(v.count, Some(16));

        let three = [two[0].clone(), two[1].clone(), p(&c, "x^5*y - x*y^5")];
        assert!(verify_polys(&c, &three).unwrap().generates);

        let (beta, _) = compute_beta_field_upper(&c, 8).unwrap();
        assert_eq!(beta, Some(6));
    }

    #[test]
    fn rational_candidates_use_saturation() {
        let c = ctx("q8");
        let a = RationalFunction::new(p(&c, "x^4 + y^4"), p(&c, "x^2*y^2")).unwrap();
        let b = RationalFunction::new(p(&c, "x^5*y - x*y^5"), p(&c, "x^2*y^2")).unwrap();
        let v = verify_field_generation(&c, &[a.clone(), b]).unwrap();
        assert!(v.generates);
        let v = verify_field_generation(&c, &[a]).unwrap();
        assert_eq!(v.count, None);
        let bad = RationalFunction::from_poly(p(&c, "x"));
        assert!(verify_field_generation(&c, &[bad]).is_err());
    }

    #[test]
    fn beta_values() {
        for (name, want) in [("trivial", 1), ("c2", 2), ("c3_1d", 3), ("c3", 3), ("c5", 5), ("c3reg", 3)] {
            let c = ctx(name);
            let (beta, _) = compute_beta_field_upper(&c, c.group().order() as u32).unwrap();
            assert_eq!(beta, Some(want), "{name}");
        }
    }

    #[test]
    fn extracted_generators_generate() {
        for name in ["q8", "c3", "c2", "c3_1d"] {
            let c = ctx(name);
            let span = analyze_span(&c, RankMode::Exact).unwrap();
            let oi = build_orbit_ideal(&c, &span).unwrap();
            let gens = extract_field_generators(&c, &oi);
            assert!(gens.max_degree() <= 2 * span.d_span + 1, "{name}");
            assert!(verify_polys(&c, &gens.polys).unwrap().generates, "{name}");
        }
    }

    #[test]
    fn profile_check() {
        assert!(profile_strictly_increasing(&[1, 3, 6, 8], 8));
        assert!(!profile_strictly_increasing(&[1, 3, 3, 8], 8));
        assert!(!profile_strictly_increasing(&[1, 3], 8));
    }
}
