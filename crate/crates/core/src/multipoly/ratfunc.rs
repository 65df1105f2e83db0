use std::fmt;

use super::format::{default_names, format_poly};
use super::gcd::{div_exact, gcd};
use super::{Polynomial, TermOrder};
use crate::scalars::{Cyclotomic, Field, Rational, ScalarError};

pub type Poly = Polynomial<Cyclotomic>;

/// Quotient of polynomials over Q(zeta_m) in lowest terms, denominator
/// monic under grevlex.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        assert_eq!(num.nvars(), den.nvars(), "numerator and denominator rings differ");
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::constant(Cyclotomic::one(), n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Cyclotomic::one(), nvars)
    }

    pub fn constant(c: Cyclotomic, nvars: usize) -> Self {
        Self::from_poly(Polynomial::constant(c, nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The constant value if this is a constant.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if !self.is_polynomial() || !self.num.is_constant() {
            return None;
        }
        Some(self.num.constant_term().cloned().unwrap_or_else(Cyclotomic::zero))
    }

    /// max(deg num, deg den).
    pub fn degree_bound(&self) -> u32 {
        let a = self.num.total_degree().finite().unwrap_or(0);
        let b = self.den.total_degree().finite().unwrap_or(0);
        a.max(b)
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Cyclotomic]) -> Option<Cyclotomic> {
        let d = self.den.eval(point).unwrap_or_else(Cyclotomic::zero);
        let n = self.num.eval(point).unwrap_or_else(Cyclotomic::zero);
        n.div(&d)
    }

    /// Applies a ring map to numerator and denominator.
    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let den = f(&self.den);
        Self::new(f(&self.num), den).expect("ring map sent a denominator to zero")
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    div_exact(&num, &g).expect("gcd divides"),
                    div_exact(&den, &g).expect("gcd divides"),
                )
            }
        };
        Self::normalize(num, den)
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let order = TermOrder::grevlex(den.nvars());
        let lc = den.leading_coeff(&order).expect("nonzero denominator").clone();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn format_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        let order = TermOrder::grevlex(self.nvars());
        let n = format_poly(&self.num, names, &order, &[] as &[&str]);
        if self.den.is_one() {
            return n;
        }
        let d = format_poly(&self.den, names, &order, &[] as &[&str]);
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        format!("{n}/({d})")
    }
}

impl Field for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars())
    }

    fn one_like(&self) -> Self {
        Self::one(self.nvars())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            }
            .zero_checked();
        }
        if rhs.den.is_one() {
            return RationalFunction {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            }
            .zero_checked();
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction {
                num,
                den: &self.den * &rhs.den,
            }
            .zero_checked();
        }
        let b1 = div_exact(&self.den, &g).expect("gcd divides");
        let d1 = div_exact(&rhs.den, &g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let den = &b1 * &rhs.den;
        if num.is_zero() {
            return self.zero_like();
        }
        let g2 = gcd(&num, &g);
        if g2.is_constant() {
            RationalFunction { num, den }
        } else {
            Self::normalize(
                div_exact(&num, &g2).expect("gcd divides"),
                div_exact(&den, &g2).expect("gcd divides"),
            )
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (
                    div_exact(n, &g).expect("gcd divides"),
                    div_exact(d, &g).expect("gcd divides"),
                )
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::normalize(&a * &c, &b * &d)
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        Self::constant(Cyclotomic::from_rational(q.clone()), self.nvars())
    }

    fn format_coeff(&self, names: &[String]) -> String {
        if names.len() == self.nvars() {
            self.format_with(names)
        } else {
            self.to_string()
        }
    }
}

impl RationalFunction {
    fn zero_checked(self) -> Self {
        if self.num.is_zero() {
            Self::zero(self.nvars())
        } else {
            self
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_names(self.nvars())))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 4, &["x", "y"]).unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduced_and_normalized() {
        let r = rf("x^2 - y^2", "2*x - 2*y");
        assert_eq!(r.num(), &p("1/2*x + 1/2*y"));
        assert_eq!(r.den(), &p("1"));
        assert!(RationalFunction::new(p("x"), p("0")).is_err());
    }

    #[test]
    fn arithmetic_cancels() {
        let a = rf("1", "x - y");
        let b = rf("1", "x + y");
        let s = a.add(&b);
        assert_eq!(s, rf("2*x", "x^2 - y^2"));
        assert!(s.sub(&a).sub(&b).is_zero());
        let prod = rf("x^2 - y^2", "x*y").mul(&rf("x", "x + y"));
        assert_eq!(prod, rf("x - y", "y"));
        assert!(prod.mul(&prod.inv().unwrap()).is_one());
    }

    #[test]
    fn display_uses_names() {
        let r = rf("-2*x*y", "x^4 - y^4");
        assert_eq!(r.format_with(&["x", "y"]), "-2*x*y/(x^4 - y^4)");
    }
}
