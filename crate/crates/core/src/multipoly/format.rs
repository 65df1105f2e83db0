use super::{Monomial, Polynomial, TermOrder};
use crate::scalars::literal::{parse_terms, LiteralError};
use crate::scalars::{Cyclotomic, Field};

/// `x1, x2, ...`
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn format_monomial<S: AsRef<str>>(m: &Monomial, names: &[S]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let n = names[i].as_ref();
            if e == 1 {
                n.to_string()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn is_atomic(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.contains(' ') && !body.contains('(')
}

/// Terms in descending order under `order`. `coeff_names` names the
/// variables of coefficients that are themselves functions.
pub fn format_poly<F, S, T>(p: &Polynomial<F>, names: &[S], order: &TermOrder, coeff_names: &[T]) -> String
where
    F: Field,
    S: AsRef<str>,
    T: AsRef<str>,
{
    if p.is_zero() {
        return "0".into();
    }
    let cn: Vec<String> = coeff_names.iter().map(|s| s.as_ref().to_string()).collect();
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
        let cs = c.format_coeff(&cn);
        let (neg, body) = if is_atomic(&cs) && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else {
            (false, cs)
        };
        let term = if m.is_one() {
            if is_atomic(&body) || k == 0 && !neg {
                body
            } else {
                format!("({body})")
            }
        } else {
            let ms = format_monomial(m, names);
            if body == "1" {
                ms
            } else if is_atomic(&body) {
                format!("{body}*{ms}")
            } else {
                format!("({body})*{ms}")
            }
        };
        match (k, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(&term);
            }
            (0, false) => out.push_str(&term),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&term);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
    }
    out
}

/// Parses the polynomial literal grammar over Q(zeta_order).
pub fn parse_poly<S: AsRef<str>>(src: &str, order: u32, names: &[S]) -> Result<Polynomial<Cyclotomic>, LiteralError> {
    let vars: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let terms = parse_terms(src, order, &vars)?;
    Ok(Polynomial::from_terms(
        vars.len(),
        terms.into_iter().map(|(c, e)| (Monomial::new(&e), c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_in_term_order() {
        let names = ["x", "y"];
        let p = parse_poly("y^4 + 3*x*y - 1/2 + (z + 1)*x", 4, &names).unwrap();
        let o = TermOrder::grevlex(2);
        let s = format_poly(&p, &names, &o, &[] as &[&str]);
        assert_eq!(s, "y^4 + 3*x*y + (1 + z)*x - 1/2");
        assert_eq!(parse_poly(&s, 4, &names).unwrap(), p);
    }

    #[test]
    fn binomial_square() {
        let names = ["x", "y"];
        let a = parse_poly("x + y", 1, &names).unwrap();
        assert_eq!(&a * &a, parse_poly("x^2 + 2*x*y + y^2", 1, &names).unwrap());
    }
}
