use super::gcd::div_exact;
use super::Polynomial;
use crate::scalars::Field;

/// Rank over the fraction field of a matrix with polynomial entries, by
/// fraction-free elimination. Rows may be empty.
pub fn fraction_free_rank<F: Field>(mut m: Vec<Vec<Polynomial<F>>>) -> usize {
    let nr = m.len();
    if nr == 0 {
        return 0;
    }
    let nc = m[0].len();
    let Some(seed) = m.iter().flatten().find(|e| !e.is_zero()) else {
        return 0;
    };
    let one = Polynomial::constant(
        seed.terms().next().expect("nonzero").1.one_like(),
        seed.nvars(),
    );
    let mut prev = one;
    let mut r = 0;
    for col in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| (m[i][col].len(), i))
        else {
            continue;
        };
        m.swap(p, r);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[col], Polynomial::zero(prev.nvars()));
            for j in col + 1..nc {
                let v = &(&pivot_row[col] * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = if prev.is_one() {
                    v
                } else {
                    div_exact(&v, &prev).expect("fraction-free elimination divides exactly")
                };
            }
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}

/// Determinant of a nonempty square matrix by fraction-free elimination.
pub fn determinant<F: Field>(mut m: Vec<Vec<Polynomial<F>>>) -> Polynomial<F> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square nonempty matrix");
    let nvars = m[0][0].nvars();
    let mut prev: Option<Polynomial<F>> = None;
    let mut negate = false;
    for col in 0..n {
        let Some(p) = (col..n)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| (m[i][col].len(), i))
        else {
            return Polynomial::zero(nvars);
        };
        if p != col {
            m.swap(p, col);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[col], Polynomial::zero(nvars));
            for j in col + 1..n {
                let v = &(&pivot_row[col] * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = match &prev {
                    Some(d) => div_exact(&v, d).expect("fraction-free elimination divides exactly"),
                    None => v,
                };
            }
        }
        prev = Some(m[col][col].clone());
    }
    let det = prev.expect("nonempty");
    if negate {
        -&det
    } else {
        det
    }
}

/// Classical adjugate: `adj(m) * m = det(m) * I`.
pub fn adjugate<F: Field>(m: &[Vec<Polynomial<F>>]) -> Vec<Vec<Polynomial<F>>> {
    let n = m.len();
    if n == 1 {
        let one = m[0][0].terms().next().map(|(_, c)| c.one_like());
        return vec![vec![match one {
            Some(c) => Polynomial::constant(c, m[0][0].nvars()),
            None => return vec![vec![Polynomial::zero(m[0][0].nvars())]],
        }]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<Polynomial<F>>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                        .collect();
                    let d = determinant(minor);
                    if (i + j) % 2 == 1 {
                        -&d
                    } else {
                        d
                    }
                })
                .collect()
        })
        .collect()
}
