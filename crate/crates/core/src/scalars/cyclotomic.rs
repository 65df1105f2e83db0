use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field;
use super::Rational;
use crate::linalg;

/// Per-order data: the cyclotomic polynomial and the residues of `x^k`.
#[derive(Debug)]
struct CycloData {
    phi: usize,
    /// Residue of `x^k` modulo the cyclotomic polynomial for `0 <= k < order`.
    powers: Vec<Vec<Rational>>,
    /// Monic minimal polynomial, constant term first.
    minpoly: Vec<Rational>,
}

fn cyclo_data(order: u32) -> Arc<CycloData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cyclotomic cache poisoned").get(&order) {
        return d.clone();
    }
    let minpoly = cyclotomic_polynomial(order);
    let phi = minpoly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![Rational::zero(); phi];
    cur[0] = Rational::one();
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1].clone();
        let mut next = vec![Rational::zero(); phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..phi {
                next[i] -= &top * &minpoly[i];
            }
        }
        cur = next;
    }
    let data = Arc::new(CycloData { phi, powers, minpoly });
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(order, data.clone());
    data
}

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<Rational> {
    assert!(m >= 1, "cyclotomic order must be positive");
    // x^m - 1 divided by every Phi_d for proper divisors d
    let mut num = vec![Rational::zero(); m as usize + 1];
    num[0] = -Rational::one();
    num[m as usize] = Rational::one();
    for d in 1..m {
        if m % d == 0 {
            let div = cyclotomic_polynomial(d);
            let (q, r) = upoly_divrem(&num, &div);
            debug_assert!(r.iter().all(Zero::is_zero));
            num = q;
        }
    }
    num
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Dense univariate division over Q, coefficients constant term first.
fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Vec<Rational> = a.to_vec();
    let Some(da) = degree(a) else {
        return (vec![Rational::zero()], vec![Rational::zero()]);
    };
    if da < db {
        trim(&mut r);
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); da - db + 1];
    let lead = b[db].clone();
    for k in (0..=(da - db)).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for i in 0..=db {
            r[k + i] -= &c * &b[i];
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn upoly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    // a - q*b
    let len = a.len().max(q.len() + b.len());
    let mut out = vec![Rational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// An exact element of the cyclotomic field Q(zeta_m), stored in the power
/// basis `1, z, ..., z^(phi(m)-1)` reduced modulo the m-th cyclotomic
/// polynomial.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    /// `zeta_m^e`; negative exponents are taken modulo `m`.
    pub fn zeta(m: u32, e: i64) -> Self {
        assert!(m >= 1, "cyclotomic order must be positive");
        let data = cyclo_data(m);
        let k = e.rem_euclid(m as i64) as usize;
        Cyclotomic {
            order: m,
            coeffs: data.powers[k].clone(),
        }
    }

    /// Builds an element from power-basis coordinates, reducing if more than
    /// `phi(m)` coordinates are given.
    pub fn from_power_coeffs(m: u32, coeffs: &[Rational]) -> Self {
        let data = cyclo_data(m);
        let mut acc = vec![Rational::zero(); data.phi];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &data.powers[i % m as usize];
            for (a, r) in acc.iter_mut().zip(row) {
                if !r.is_zero() {
                    *a += c * r;
                }
            }
        }
        Cyclotomic {
            order: m,
            coeffs: acc,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Re-expresses `self` in Q(zeta_m); `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Cyclotomic {
        if m == self.order {
            return self.clone();
        }
        assert!(
            m % self.order == 0,
            "cannot embed Q(zeta_{}) into Q(zeta_{})",
            self.order,
            m
        );
        let step = (m / self.order) as usize;
        let mut spread = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            spread[(i * step) % m as usize] = c.clone();
        }
        Self::from_power_coeffs(m, &spread)
    }

    /// Coordinates of `self` in Q(zeta_m), usable as a hash key.
    pub fn key(&self, m: u32) -> Vec<Rational> {
        self.lift(m).coeffs
    }

    /// The same value expressed in the smallest Q(zeta_d), d | order, that
    /// contains it.
    pub fn normalize_order(&self) -> Cyclotomic {
        if self.is_rational() {
            return Cyclotomic::from_rational(self.coeffs[0].clone());
        }
        let m = self.order;
        for d in 2..m {
            if m % d != 0 {
                continue;
            }
            let pd = euler_phi(d);
            let cols: Vec<Cyclotomic> = (0..pd).map(|i| Cyclotomic::zeta(d, i as i64).lift(m)).collect();
            let phi_m = self.coeffs.len();
            let mut a = linalg::Matrix::new(phi_m, pd, Rational::zero());
            for (j, col) in cols.iter().enumerate() {
                for i in 0..phi_m {
                    a.set(i, j, col.coeffs[i].clone());
                }
            }
            if let Some(sol) = linalg::solve_consistent(&a, &self.coeffs) {
                return Cyclotomic::from_power_coeffs(d, &sol);
            }
        }
        self.clone()
    }

    fn common(&self, rhs: &Cyclotomic) -> (Cyclotomic, Cyclotomic, u32) {
        if self.order == rhs.order {
            return (self.clone(), rhs.clone(), self.order);
        }
        let m = self.order.lcm(&rhs.order);
        (self.lift(m), rhs.lift(m), m)
    }

    fn binary<F>(&self, rhs: &Cyclotomic, f: F) -> Cyclotomic
    where
        F: Fn(&[Rational], &[Rational], u32) -> Vec<Rational>,
    {
        if self.order == rhs.order {
            let coeffs = f(&self.coeffs, &rhs.coeffs, self.order);
            return Cyclotomic {
                order: self.order,
                coeffs,
            };
        }
        // one side rational: no need to lift the whole vector
        if self.order == 1 || rhs.order == 1 {
            let m = self.order.max(rhs.order);
            let (a, b) = (self.lift(m), rhs.lift(m));
            return Cyclotomic {
                order: m,
                coeffs: f(&a.coeffs, &b.coeffs, m),
            };
        }
        let (a, b, m) = self.common(rhs);
        Cyclotomic {
            order: m,
            coeffs: f(&a.coeffs, &b.coeffs, m),
        }
    }

    fn mul_coeffs(a: &[Rational], b: &[Rational], m: u32) -> Vec<Rational> {
        let phi = a.len();
        if phi == 1 {
            return vec![&a[0] * &b[0]];
        }
        let data = cyclo_data(m);
        let mut acc: Vec<Rational> = vec![Rational::zero(); m as usize];
        let mut touched = vec![false; m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % m as usize;
                acc[k] += x * y;
                touched[k] = true;
            }
        }
        let mut out = vec![Rational::zero(); phi];
        for k in 0..m as usize {
            if !touched[k] || acc[k].is_zero() {
                continue;
            }
            if k < phi {
                out[k] += &acc[k];
            } else {
                for (o, r) in out.iter_mut().zip(&data.powers[k]) {
                    if !r.is_zero() {
                        *o += &acc[k] * r;
                    }
                }
            }
        }
        out
    }

    /// Inverse by the extended Euclidean algorithm against the minimal
    /// polynomial.
    fn inverse(&self) -> Option<Cyclotomic> {
        if self.coeffs.iter().all(Zero::is_zero) {
            return None;
        }
        if self.is_rational() {
            return Some(Cyclotomic {
                order: self.order,
                coeffs: {
                    let mut v = vec![Rational::zero(); self.coeffs.len()];
                    v[0] = self.coeffs[0].recip();
                    v
                },
            });
        }
        let data = cyclo_data(self.order);
        // invariant: s_i * a == r_i (mod minpoly)
        let mut r0 = data.minpoly.clone();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0 = vec![Rational::zero()];
        let mut s1 = vec![Rational::one()];
        while degree(&r1).unwrap_or(0) > 0 {
            let (q, r) = upoly_divrem(&r0, &r1);
            let s2 = upoly_sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert!(!is_zero_poly(&r1));
        let c = r1[0].recip();
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (i, s) in s1.iter().enumerate() {
            coeffs[i] = s * &c;
        }
        Some(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl field::Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero()
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.coeffs[0]) && self.coeffs[1..].iter().all(Zero::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        if field::Field::is_zero(rhs) {
            return self.clone();
        }
        if field::Field::is_zero(self) {
            return rhs.clone();
        }
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, rhs: &Self) -> Self {
        if field::Field::is_zero(rhs) {
            return self.clone();
        }
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_rational() && rhs.order == self.order.max(rhs.order) {
            let c = &self.coeffs[0];
            return Cyclotomic {
                order: rhs.order,
                coeffs: rhs.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        if rhs.is_rational() && self.order == self.order.max(rhs.order) {
            let c = &rhs.coeffs[0];
            return Cyclotomic {
                order: self.order,
                coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        self.binary(rhs, Self::mul_coeffs)
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        Cyclotomic::from_rational(q.clone())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints in the scalar literal grammar, `z` standing for zeta of the
    /// element's order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "z")?,
                (_, true) => write!(f, "z^{}", e)?,
                (1, false) => write!(f, "{}*z", abs)?,
                (_, false) => write!(f, "{}*z^{}", abs, e)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_ops {
    ($($tr:ident $method:ident $fm:ident),*) => {$(
        impl std::ops::$tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                field::Field::$fm(self, rhs)
            }
        }
        impl std::ops::$tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                field::Field::$fm(&self, &rhs)
            }
        }
    )*};
}

forward_ops!(Add add add, Sub sub sub, Mul mul mul);

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        field::Field::neg(&self)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        field::Field::neg(self)
    }
}
