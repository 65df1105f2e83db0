use super::{Monomial, Polynomial, TermOrder};
use crate::scalars::Field;

/// Exact quotient `a / b`, or `None` if `b` does not divide `a`.
pub fn div_exact<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Option<Polynomial<F>> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let nvars = a.nvars();
    if a.is_zero() {
        return Some(Polynomial::zero(nvars));
    }
    if b.is_constant() {
        let c = b.constant_term().expect("nonzero constant").inv()?;
        return Some(a.scale(&c));
    }
    let (bm, bc) = b.lex_leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let binv = bc.inv()?;
    let bdeg: Vec<u32> = (0..nvars).map(|v| b.degree_in(v).finite().unwrap_or(0)).collect();
    let adeg: Vec<u32> = (0..nvars).map(|v| a.degree_in(v).finite().unwrap_or(0)).collect();
    if bdeg.iter().zip(&adeg).any(|(x, y)| x > y) {
        return None;
    }
    let mut r = a.clone();
    let mut q = Polynomial::zero(nvars);
    while let Some((rm, rc)) = r.lex_leading() {
        let m = rm.div(&bm)?;
        if m.exps().iter().zip(&adeg).zip(&bdeg).any(|((e, ad), bd)| e + bd > *ad) {
            return None;
        }
        let c = rc.mul(&binv);
        let map = r.map_mut();
        for (t, tc) in b.terms() {
            let prod = t.mul(&m);
            let delta = tc.mul(&c).neg();
            use std::collections::btree_map::Entry;
            match map.entry(prod) {
                Entry::Vacant(v) => {
                    v.insert(delta);
                }
                Entry::Occupied(mut o) => {
                    let s = o.get().add(&delta);
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        q.add_term(m, &c);
    }
    Some(q)
}

/// Greatest common divisor, normalized to leading coefficient 1 under
/// grevlex. `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    assert_eq!(a.nvars(), b.nvars(), "gcd across different rings");
    let g = gcd_raw(a, b);
    g.monic(&TermOrder::grevlex(g.nvars()))
}

/// gcd of all terms' exponent vectors.
pub fn monomial_content<F: Field>(p: &Polynomial<F>) -> Monomial {
    let mut it = p.terms().map(|(m, _)| m);
    match it.next() {
        None => Monomial::one(p.nvars()),
        Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
    }
}

fn divide_monomial<F: Field>(p: &Polynomial<F>, m: &Monomial) -> Polynomial<F> {
    if m.is_one() {
        return p.clone();
    }
    Polynomial::from_map(
        p.nvars(),
        p.terms()
            .map(|(t, c)| (t.div(m).expect("monomial content divides"), c.clone()))
            .collect(),
    )
}

fn one_of<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    let c = p.terms().next().expect("nonzero").1.one_like();
    Polynomial::constant(c, p.nvars())
}

fn gcd_raw<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() {
        return one_of(a);
    }
    if b.is_constant() {
        return one_of(b);
    }
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let gm = ma.gcd(&mb);
    let a1 = divide_monomial(a, &ma);
    let b1 = divide_monomial(b, &mb);
    let core = gcd_primitive_monomial(&a1, &b1);
    if gm.is_one() {
        core
    } else {
        core.mul_term(&gm, &core.terms().next().expect("nonzero").1.one_like())
    }
}

/// gcd when neither argument has a monomial factor.
fn gcd_primitive_monomial<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    if a.is_constant() || b.is_constant() {
        return one_of(a);
    }
    if a == b {
        return a.clone();
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if div_exact(big, small).is_some() {
        return small.clone();
    }
    let sa = a.support();
    let sb = b.support();
    let n = a.nvars();
    if let Some(v) = (0..n).find(|&v| sa[v] && !sb[v]) {
        return gcd_raw(&content_in(a, v), b);
    }
    if let Some(v) = (0..n).find(|&v| sb[v] && !sa[v]) {
        return gcd_raw(a, &content_in(b, v));
    }
    if coprime_by_specialization(a, b) {
        return one_of(a);
    }
    let v = (0..n)
        .filter(|&v| sa[v])
        .min_by_key(|&v| {
            let da = a.degree_in(v).finite().unwrap_or(0);
            let db = b.degree_in(v).finite().unwrap_or(0);
            (da.max(db), v)
        })
        .expect("nonconstant polynomial has a variable");
    let ua = to_univariate(a, v);
    let ub = to_univariate(b, v);
    let ca = ucontent(&ua);
    let cb = ucontent(&ub);
    let c = gcd_raw(&ca, &cb);
    let pa = udiv_scalar(&ua, &ca);
    let pb = udiv_scalar(&ub, &cb);
    let (fa, fb) = (from_univariate(&pa, v, n), from_univariate(&pb, v, n));
    if let Some(g) = interpolated_gcd(&fa, &fb, v) {
        return &g * &c;
    }
    let g = subresultant_gcd(pa, pb);
    let g = udiv_scalar(&g, &ucontent(&g));
    &from_univariate(&g, v, n) * &c
}

/// Proves `gcd(a, b) = 1` through univariate images. For each variable `v`,
/// the others are fixed at a point where the leading coefficient of `a` in
/// `v` survives; a common factor involving `v` would then survive as a
/// common factor of the images. `false` means "not proved".
fn coprime_by_specialization<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> bool {
    let n = a.nvars();
    let sa = a.support();
    let one = a.terms().next().expect("nonzero").1.one_like();
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 23) as i64 - 11
    };
    for v in (0..n).filter(|&v| sa[v]) {
        let ua = to_univariate(a, v);
        let ub = to_univariate(b, v);
        let mut found = false;
        for _ in 0..SPECIALIZATION_TRIES {
            let point: Vec<F> = (0..n).map(|_| one.from_i64_like(next())).collect();
            let ia = eval_coeffs(&ua, &point);
            if ia.last().map_or(true, |c| c.is_zero()) {
                continue;
            }
            let ib = eval_coeffs(&ub, &point);
            if univariate_gcd_degree(ia, ib) == 0 {
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

const SPECIALIZATION_TRIES: usize = 3;

fn eval_coeffs<F: Field>(u: &[Polynomial<F>], point: &[F]) -> Vec<F> {
    u.iter()
        .map(|c| c.eval(point).unwrap_or_else(|| point[0].zero_like()))
        .collect()
}

/// Degree of the gcd of two dense univariate polynomials over a field.
fn univariate_gcd_degree<F: Field>(a: Vec<F>, b: Vec<F>) -> usize {
    univariate_gcd(a, b).len().saturating_sub(1)
}

fn trim_dense<F: Field>(u: &mut Vec<F>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Monic gcd of two dense univariate polynomials over a field, lowest
/// coefficient first; empty when both are zero.
fn univariate_gcd<F: Field>(mut a: Vec<F>, mut b: Vec<F>) -> Vec<F> {
    trim_dense(&mut a);
    trim_dense(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let k = a.len() - b.len();
            let f = a
                .last()
                .expect("nonempty")
                .div(b.last().expect("nonempty"))
                .expect("nonzero leading coefficient");
            for (i, c) in b.iter().enumerate() {
                a[i + k] = a[i + k].sub(&f.mul(c));
            }
            a.pop();
            trim_dense(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(lc) = a.last().cloned() {
        let inv = lc.inv().expect("nonzero");
        for c in a.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    a
}

/// `p` with variable `y` set to `alpha`.
fn eval_var<F: Field>(p: &Polynomial<F>, y: usize, alpha: &F) -> Polynomial<F> {
    let mut powers: Vec<F> = Vec::new();
    let mut out = Polynomial::zero(p.nvars());
    for (m, c) in p.terms() {
        let e = m.exp(y) as usize;
        while powers.len() <= e {
            let next = match powers.last() {
                None => alpha.one_like(),
                Some(last) => last.mul(alpha),
            };
            powers.push(next);
        }
        let mut m2 = m.clone();
        m2.set_exp(y, 0);
        out.add_term(m2, &c.mul(&powers[e]));
    }
    out
}

fn lc_in<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    to_univariate(p, v).pop().expect("nonzero polynomial")
}

/// Evaluation points 1, -1, 2, -2, ...
fn point<F: Field>(one: &F, k: usize) -> F {
    let m = (k / 2 + 1) as i64;
    one.from_i64_like(if k % 2 == 0 { m } else { -m })
}

const INTERPOLATION_SLACK: usize = 24;

/// gcd of `a` and `b`, both primitive in `v`, by evaluating the other
/// variables and interpolating. The result is checked by exact division; a
/// verified primitive common divisor whose degree in `v` is the minimum over
/// all images is the gcd. `None` when the check fails.
fn interpolated_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Option<Polynomial<F>> {
    let n = a.nvars();
    let sa = a.support();
    let sb = b.support();
    let others: Vec<usize> = (0..n).filter(|&y| y != v && (sa[y] || sb[y])).collect();
    let gamma = gcd_raw(&lc_in(a, v), &lc_in(b, v));
    for early_stop in [true, false] {
        let Some(big) = scaled_gcd(a, b, v, &gamma, &others, early_stop) else {
            continue;
        };
        if big.is_zero() {
            continue;
        }
        let c = content_in(&big, v);
        let g = div_exact(&big, &c)?;
        if div_exact(a, &g).is_some() && div_exact(b, &g).is_some() {
            return Some(g);
        }
    }
    None
}

/// The multiple of `gcd(a, b)` whose leading coefficient in `v` is `target`,
/// assuming that leading coefficient divides `target`.
fn scaled_gcd<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
    v: usize,
    target: &Polynomial<F>,
    others: &[usize],
    early_stop: bool,
) -> Option<Polynomial<F>> {
    let n = a.nvars();
    let Some((&y, rest)) = others.split_last() else {
        let one = a.terms().next()?.1.one_like();
        let at = |p: &Polynomial<F>| -> Vec<F> {
            to_univariate(p, v)
                .iter()
                .map(|c| c.constant_term().cloned().unwrap_or_else(|| one.zero_like()))
                .collect()
        };
        let g = univariate_gcd(at(a), at(b));
        let t = target.constant_term()?.clone();
        let terms = g.into_iter().enumerate().map(|(e, c)| {
            let mut m = Monomial::one(n);
            m.set_exp(v, e as u32);
            (m, c.mul(&t))
        });
        return Some(Polynomial::from_terms(n, terms));
    };
    let one = a.terms().next()?.1.one_like();
    let deg_y = |p: &Polynomial<F>| p.degree_in(y).finite().unwrap_or(0) as usize;
    let bound = deg_y(target) + deg_y(a).min(deg_y(b));
    let lca = lc_in(a, v);
    let lcb = lc_in(b, v);
    let mut points: Vec<F> = Vec::new();
    let mut images: Vec<Polynomial<F>> = Vec::new();
    let mut best: Option<u32> = None;
    let mut interp: Option<Polynomial<F>> = None;
    let mut k = 0;
    while points.len() <= bound {
        if k > bound + INTERPOLATION_SLACK {
            return None;
        }
        let alpha = point(&one, k);
        k += 1;
        let ta = eval_var(target, y, &alpha);
        if ta.is_zero() || eval_var(&lca, y, &alpha).is_zero() || eval_var(&lcb, y, &alpha).is_zero() {
            continue;
        }
        let Some(img) = scaled_gcd(&eval_var(a, y, &alpha), &eval_var(b, y, &alpha), v, &ta, rest, early_stop)
        else {
            continue;
        };
        let d = img.degree_in(v).finite().unwrap_or(0);
        match best {
            Some(bd) if d > bd => continue,
            Some(bd) if d < bd => {
                points.clear();
                images.clear();
                interp = None;
                best = Some(d);
            }
            None => best = Some(d),
            _ => {}
        }
        if early_stop {
            if let Some(prev) = &interp {
                if eval_var(prev, y, &alpha) == img {
                    return interp;
                }
            }
        }
        points.push(alpha);
        images.push(img);
        if early_stop {
            interp = Some(lagrange(&points, &images, y));
        }
    }
    Some(interp.unwrap_or_else(|| lagrange(&points, &images, y)))
}

/// Interpolates polynomial values at `points` of variable `y`.
fn lagrange<F: Field>(points: &[F], images: &[Polynomial<F>], y: usize) -> Polynomial<F> {
    let n = images[0].nvars();
    let one = points[0].one_like();
    let mut out = Polynomial::zero(n);
    for (j, (pj, img)) in points.iter().zip(images).enumerate() {
        let mut basis = Polynomial::constant(one.clone(), n);
        let mut denom = one.clone();
        for (k, pk) in points.iter().enumerate() {
            if k == j {
                continue;
            }
            let lin = &Polynomial::var(y, n, &one) - &Polynomial::constant(pk.clone(), n);
            basis = &basis * &lin;
            denom = denom.mul(&pj.sub(pk));
        }
        let scale = denom.inv().expect("distinct points");
        out = &out + &(&basis * img).scale(&scale);
    }
    out
}

/// Coefficients of `p` viewed as a polynomial in variable `v`; index is the
/// power of `v`.
pub fn to_univariate<F: Field>(p: &Polynomial<F>, v: usize) -> Vec<Polynomial<F>> {
    let n = p.nvars();
    let deg = p.degree_in(v).finite().map_or(0, |d| d as usize + 1);
    let mut out = vec![Polynomial::zero(n); deg];
    for (m, c) in p.terms() {
        let e = m.exp(v) as usize;
        let mut m2 = m.clone();
        m2.set_exp(v, 0);
        out[e].add_term(m2, c);
    }
    out
}

pub fn from_univariate<F: Field>(u: &[Polynomial<F>], v: usize, nvars: usize) -> Polynomial<F> {
    let mut out = Polynomial::zero(nvars);
    for (e, c) in u.iter().enumerate() {
        for (m, k) in c.terms() {
            let mut m2 = m.clone();
            m2.set_exp(v, e as u32);
            out.add_term(m2, k);
        }
    }
    out
}

/// gcd of the coefficients of `p` as a polynomial in `v`.
pub fn content_in<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    ucontent(&to_univariate(p, v))
}

fn ucontent<F: Field>(u: &[Polynomial<F>]) -> Polynomial<F> {
    let mut nonzero: Vec<&Polynomial<F>> = u.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.len());
    let mut acc = match nonzero.first() {
        None => return Polynomial::zero(u.first().map_or(0, |c| c.nvars())),
        Some(c) => (*c).clone(),
    };
    for c in &nonzero[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_raw(&acc, c);
    }
    if acc.is_constant() {
        one_of(&acc)
    } else {
        acc
    }
}

fn udiv_scalar<F: Field>(u: &[Polynomial<F>], c: &Polynomial<F>) -> Vec<Polynomial<F>> {
    if c.is_one() {
        return u.to_vec();
    }
    u.iter()
        .map(|x| div_exact(x, c).expect("content divides every coefficient"))
        .collect()
}

fn udeg<F: Field>(u: &[Polynomial<F>]) -> Option<usize> {
    u.iter().rposition(|c| !c.is_zero())
}

fn utrim<F: Field>(u: &mut Vec<Polynomial<F>>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let n = udeg(b).expect("nonzero divisor");
    let l = &b[n];
    let mut r = a.to_vec();
    utrim(&mut r);
    let mut e = (udeg(a).unwrap_or(0) + 1).saturating_sub(n) as u32;
    while let Some(dr) = udeg(&r) {
        if dr < n {
            break;
        }
        let s = r[dr].clone();
        let shift = dr - n;
        for c in r.iter_mut() {
            *c = &*c * l;
        }
        for (i, bc) in b.iter().enumerate().take(n + 1) {
            r[i + shift] = &r[i + shift] - &(&s * bc);
        }
        utrim(&mut r);
        e = e.saturating_sub(1);
    }
    if e > 0 && !r.is_empty() {
        let f = l.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Subresultant PRS on primitive inputs; returns a (non-primitive) gcd.
fn subresultant_gcd<F: Field>(a: Vec<Polynomial<F>>, b: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let (mut a, mut b) = if udeg(&a) >= udeg(&b) { (a, b) } else { (b, a) };
    utrim(&mut a);
    utrim(&mut b);
    let one = one_of(&a[udeg(&a).expect("nonzero")]);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = udeg(&a).expect("nonzero");
        let db = udeg(&b).expect("nonzero");
        let delta = (da - db) as u32;
        let r = prem(&a, &b);
        match udeg(&r) {
            None => return b,
            Some(0) => return vec![one],
            Some(_) => {}
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .iter()
            .map(|c| div_exact(c, &divisor).expect("subresultant division is exact"))
            .collect();
        g = a[udeg(&a).expect("nonzero")].clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            div_exact(&num, &den).expect("subresultant h update is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;
    use crate::scalars::Cyclotomic;

    fn p(s: &str) -> Polynomial<Cyclotomic> {
        parse_poly(s, 1, &["x", "y", "z1"]).unwrap()
    }

    #[test]
    fn textbook_gcds() {
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x - y")), p("x - y"));
        assert_eq!(gcd(&p("x^4 - y^4"), &p("x*y*x^4 - x*y*y^4")), p("x^4 - y^4"));
        assert_eq!(gcd(&p("x"), &p("y")), p("1"));
        assert_eq!(gcd(&p("0"), &p("2*x + 4")), p("x + 2"));
    }

    #[test]
    fn hidden_common_factor() {
        let f = p("x*y + z1^2 - 3");
        let a = &f * &p("x^3 + y - z1");
        let b = &f * &p("x*z1 - y^2 + 1");
        assert_eq!(gcd(&a, &b), f.monic(&TermOrder::grevlex(3)));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        assert_eq!(div_exact(&a, &p("x + y")), Some(p("x - y")));
        assert_eq!(div_exact(&a, &p("x + 2*y")), None);
        assert_eq!(div_exact(&p("x"), &p("x - y")), None);
    }
}
