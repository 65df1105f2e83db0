use proptest::prelude::*;

use super::*;
use crate::cli::fixtures::bundled;
use crate::cli::spec::{parse_spec_str, Overrides};
use crate::multipoly::{parse_poly, Poly};
use crate::scalars::{rat, Field};

pub(crate) fn ctx(name: &str) -> RepContext {
    parse_spec_str(bundled(name).unwrap())
        .unwrap()
        .build(&Overrides::default())
        .unwrap()
}

fn p(c: &RepContext, s: &str) -> Poly {
    parse_poly(s, c.group().field_order().max(4), c.var_names()).unwrap()
}

fn element_named(c: &RepContext, name: &str) -> usize {
    let k = c.group().generator_names().iter().position(|n| n == name).unwrap();
    c.group().generator_indices()[k]
}

#[test]
fn all_fixtures_validate() {
    for (name, _) in crate::cli::fixtures::BUNDLED {
        let c = ctx(name);
        let sum: usize = c.irreps().iter().map(|m| m.degree().pow(2)).sum();
        assert_eq!(sum, c.group().order(), "{name}");
    }
}

#[test]
fn quaternion_action() {
    let c = ctx("q8");
    let i = element_named(&c, "i");
    let j = element_named(&c, "j");
    let a = c.action();
    assert_eq!(a.act(i, &p(&c, "x")), p(&c, "y"));
    assert_eq!(a.act(i, &p(&c, "y")), p(&c, "-x"));
    assert_eq!(a.act(j, &p(&c, "x")), p(&c, "z*x"));
    assert_eq!(a.act(j, &p(&c, "x^2*y^2")), p(&c, "x^2*y^2"));
    assert_eq!(a.act(0, &p(&c, "x^3 - y")), p(&c, "x^3 - y"));
}

#[test]
fn quaternion_reynolds() {
    let c = ctx("q8");
    let a = c.action();
    assert_eq!(a.reynolds(&p(&c, "x*y^2*x")), p(&c, "x^2*y^2"));
    assert_eq!(a.reynolds(&p(&c, "x^3*x")), p(&c, "1/2*x^4 + 1/2*y^4"));
    let inv = p(&c, "x^4 + y^4");
    assert_eq!(a.reynolds(&inv), inv);
}

#[test]
fn characters_and_multiplicities() {
    let c = ctx("q8");
    let sta = c.irrep_index("Sta").unwrap();
    let i = element_named(&c, "i");
    assert!(c.irreps()[sta].character(i).is_zero());
    assert_eq!(c.irreps()[sta].character(0), Cyclotomic::from_int(2));
    assert_eq!(c.action().character(0, 2), Cyclotomic::from_int(3));
    assert_eq!(c.multiplicity(sta, 3).unwrap(), 2);
    assert_eq!(c.multiplicity(sta, 0).unwrap(), 0);
    assert_eq!(c.multiplicity(c.irrep_index("1").unwrap(), 4).unwrap(), 2);
}

#[test]
fn quaternion_hom_bases() {
    let c = ctx("q8");
    let sta = c.irrep_index("Sta").unwrap();
    let hb = c.hom_basis(sta, 3);
    assert_eq!(hb.len(), 2);
    let spans: Vec<(Poly, Poly)> = hb.iter().map(|e| (e.images[0].clone(), e.images[1].clone())).collect();
    assert!(spans.contains(&(p(&c, "x^2*y"), p(&c, "-x*y^2"))));
    assert!(spans.contains(&(p(&c, "y^3"), p(&c, "-x^3"))));
    let triv = c.trivial().unwrap();
    let hb0 = c.hom_basis(triv, 0);
    assert_eq!(hb0.len(), 1);
    assert_eq!(hb0[0].images[0], p(&c, "1"));
    let jl = c.irrep_index("j").unwrap();
    let hbj = c.hom_basis(jl, 2);
    assert_eq!(hbj.len(), 1);
    assert_eq!(hbj[0].images[0], p(&c, "x*y"));
}

#[test]
fn hom_dimension_matches_multiplicity_and_dimension_count() {
    for name in ["q8", "s3std", "a4perm", "c5"] {
        let c = ctx(name);
        let n = c.nvars() as u64;
        for d in 0..5u32 {
            let mut total = 0u64;
            for l in 0..c.irreps().len() {
                let m = c.multiplicity(l, d).unwrap();
                assert_eq!(c.hom_basis(l, d).len(), m, "{name} {l} {d}");
                total += (m * c.irreps()[l].degree()) as u64;
            }
            let binom = (1..=d as u64).fold(1u64, |acc, k| acc * (n + k - 1) / k);
            assert_eq!(total, binom, "{name} degree {d}");
        }
    }
}

#[test]
fn character_orthogonality() {
    for name in ["q8", "s3std", "a4perm"] {
        let c = ctx(name);
        let ms = c.irreps();
        for (a, ma) in ms.iter().enumerate() {
            for (b, mb) in ms.iter().enumerate() {
                let ip = character_inner_product(c.group(), |g| ma.character(g), |g| mb.character(g));
                assert_eq!(ip, Cyclotomic::from_int((a == b) as i64));
            }
        }
    }
}

#[test]
fn invalid_irreducible_lists_are_rejected() {
    let mut spec = parse_spec_str(bundled("c3_1d").unwrap()).unwrap();
    spec.irreducibles.truncate(1);
    let err = spec.build(&Overrides::default()).unwrap_err();
    assert!(matches!(err, crate::Error::Irrep(IrrepError::Incomplete { sum: 1, order: 3 })));

    let mut spec = parse_spec_str(bundled("c2").unwrap()).unwrap();
    spec.irreducibles[1] = spec.irreducibles[0].clone();
    spec.irreducibles[1].label = "copy".into();
    let err = spec.build(&Overrides::default()).unwrap_err();
    assert!(matches!(err, crate::Error::Irrep(IrrepError::Isomorphic { .. })));

    let mut spec = parse_spec_str(bundled("q8").unwrap()).unwrap();
    let sta = spec.irreducibles.pop().unwrap();
    let mut bad = sta.clone();
    bad.matrices[1] = vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()]];
    spec.irreducibles.push(bad);
    let err = spec.build(&Overrides::default()).unwrap_err();
    assert!(matches!(err, crate::Error::Irrep(IrrepError::NotHomomorphism { .. })));
}

#[test]
fn duals() {
    let c = ctx("c5");
    for l in 0..5 {
        let d = c.dual(l).unwrap();
        assert_eq!(c.dual(d), Some(l));
    }
    let q = ctx("q8");
    for l in 0..5 {
        assert_eq!(q.dual(l), Some(l));
    }
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, nvars), -4i64..=4, 0i64..4), 0..5).prop_map(move |ts| {
        Poly::from_terms(
            nvars,
            ts.into_iter().map(|(e, a, k)| {
                (
                    crate::multipoly::Monomial::new(&e),
                    Cyclotomic::from_rational(rat(a, 1)).mul(&crate::scalars::zeta(4, k)),
                )
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reynolds_is_an_invariant_projection(f in arb_poly(2), g in 0usize..8, h in 0usize..8) {
        let c = ctx_cached();
        let a = c.action();
        let r = a.reynolds(&f);
        prop_assert!(a.is_invariant(&r));
        prop_assert_eq!(a.reynolds(&r), r.clone());
        prop_assert_eq!(a.reynolds(&a.act(g, &f)), r);
        // left action
        let gh = c.group().mul(g, h);
        prop_assert_eq!(a.act(gh, &f), a.act(g, &a.act(h, &f)));
        prop_assert_eq!(a.act_graded(g, &f), a.act(g, &f));
    }

    #[test]
    fn hom_basis_outputs_are_equivariant(l in 0usize..5, d in 0u32..6) {
        let c = ctx_cached();
        for e in c.hom_basis(l, d).iter() {
            prop_assert!(c.is_equivariant(e));
        }
    }
}

fn ctx_cached() -> &'static RepContext {
    static C: std::sync::OnceLock<RepContext> = std::sync::OnceLock::new();
    C.get_or_init(|| ctx("q8"))
}
