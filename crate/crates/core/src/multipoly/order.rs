use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grlex,
    Grevlex,
}

/// A monomial order together with a variable priority; `priority[0]` is the
/// most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    /// Length of a leading block; variables after it are compared by
    /// grevlex only when the leading block ties.
    block: Option<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        TermOrder {
            kind,
            priority: (0..nvars).collect(),
            block: None,
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().enumerate().all(|(i, &p)| i == p),
            "variable priority must be a permutation"
        );
        TermOrder {
            kind,
            priority,
            block: None,
        }
    }

    /// Product order: the first `split` variables under `kind`, ties broken
    /// by grevlex on the rest. Eliminates the trailing block.
    pub fn block(kind: OrderKind, split: usize, nvars: usize) -> Self {
        assert!(split <= nvars, "block larger than the ring");
        TermOrder {
            kind,
            priority: (0..nvars).collect(),
            block: Some(split),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn is_graded(&self) -> bool {
        !matches!(self.kind, OrderKind::Lex) && self.block.is_none()
    }

    /// Same kind over a different number of variables (identity priority).
    pub fn resized(&self, nvars: usize) -> Self {
        if nvars == self.priority.len() {
            self.clone()
        } else if let Some(k) = self.block {
            Self::block(self.kind, k.min(nvars), nvars)
        } else {
            Self::new(self.kind, nvars)
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.priority.len());
        match self.block {
            None => cmp_on(self.kind, &self.priority, a, b),
            Some(k) => cmp_on(self.kind, &self.priority[..k], a, b)
                .then_with(|| cmp_on(OrderKind::Grevlex, &self.priority[k..], a, b)),
        }
    }

    pub fn sort_desc(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.cmp(b, a));
    }
}

fn cmp_on(kind: OrderKind, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    let deg = |m: &Monomial| vars.iter().map(|&v| m.exp(v)).sum::<u32>();
    let lex = || {
        for &v in vars {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    };
    match kind {
        OrderKind::Lex => lex(),
        OrderKind::Grlex => deg(a).cmp(&deg(b)).then_with(lex),
        OrderKind::Grevlex => deg(a).cmp(&deg(b)).then_with(|| {
            for &v in vars.iter().rev() {
                match a.exp(v).cmp(&b.exp(v)) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        }),
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
            OrderKind::Grevlex => "grevlex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lex" => Ok(OrderKind::Lex),
            "grlex" | "deglex" => Ok(OrderKind::Grlex),
            "grevlex" | "degrevlex" => Ok(OrderKind::Grevlex),
            other => Err(format!("unknown term order `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn classic_three_variable_orders() {
        let lex = TermOrder::new(OrderKind::Lex, 3);
        let grlex = TermOrder::new(OrderKind::Grlex, 3);
        let grevlex = TermOrder::grevlex(3);
        // x y^5 z^2 vs x^4 y z^3
        let a = m(&[1, 5, 2]);
        let b = m(&[4, 1, 3]);
        assert_eq!(lex.cmp(&a, &b), Ordering::Less);
        assert_eq!(grlex.cmp(&a, &b), Ordering::Less);
        // x^4 y^7 z vs x^4 y^2 z^3 (equal x)
        assert_eq!(lex.cmp(&m(&[4, 7, 1]), &m(&[4, 2, 3])), Ordering::Greater);
        // same degree: grlex looks at x first, grevlex at z
        assert_eq!(grevlex.cmp(&a, &b), Ordering::Greater);
                assert_eq!(grlex.cmp(&m(&[1, 2, 1]), &m(&[0, 4, 0])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&m(&[1, 2, 1]), &m(&[0, 4, 0])), Ordering::Less);
    }

    #[test]
    fn priority_permutes_variables() {
        let o = TermOrder::with_priority(OrderKind::Lex, vec![1, 0]);
        assert_eq!(o.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn degree_of_zero_is_below_everything() {
        use super::super::Degree;
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Degree::Finite(3).max(Degree::NegInfinity), Degree::Finite(3));
    }
}
