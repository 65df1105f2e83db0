use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalars::{Cyclotomic, Rational};

pub type CMatrix = Matrix<Cyclotomic>;

pub const DEFAULT_ELEMENT_CAP: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator `{name}` is not a {dim}x{dim} matrix")]
    BadShape { name: String, dim: usize },
    #[error("generator `{name}` is not invertible")]
    NotInvertible { name: String },
    #[error("group has more than {cap} elements (too large for desk-scale computation)")]
    TooLarge { cap: usize },
}

/// A finite matrix group with all elements enumerated breadth-first from the
/// generators. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    dim: usize,
    field_order: u32,
    generator_names: Vec<String>,
    generator_index: Vec<usize>,
    elements: Vec<CMatrix>,
    /// For element `e != 0`: `(gen, parent)` with `e = gen * parent`.
    words: Vec<Option<(usize, usize)>>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

fn entry_order(m: &CMatrix) -> u32 {
    let mut o = 1u32;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            o = o.lcm(&m.get(i, j).order());
        }
    }
    o
}

fn matrix_key(m: &CMatrix, order: u32) -> Vec<Rational> {
    let mut k = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            k.extend(m.get(i, j).key(order));
        }
    }
    k
}

impl MatrixGroup {
    /// Breadth-first closure: each new element is `generator * known`, with
    /// generators tried in input order.
    pub fn enumerate(dim: usize, generators: &[(String, CMatrix)], cap: usize) -> Result<Self, GroupError> {
        let mut order = 1u32;
        for (name, g) in generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::BadShape {
                    name: name.clone(),
                    dim,
                });
            }
            if g.inverse().is_none() {
                return Err(GroupError::NotInvertible { name: name.clone() });
            }
            order = order.lcm(&entry_order(g));
        }
        let id = Matrix::identity(dim, &Cyclotomic::one());
        let mut elements = vec![id.clone()];
        let mut words = vec![None];
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        index.insert(matrix_key(&id, order), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, (_, g)) in generators.iter().enumerate() {
                let prod = g.mul(&elements[e]);
                let key = matrix_key(&prod, order);
                if index.contains_key(&key) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(GroupError::TooLarge { cap });
                }
                index.insert(key, elements.len());
                elements.push(prod);
                words.push(Some((gi, e)));
                queue.push_back(elements.len() - 1);
            }
        }
        let lookup = |m: &CMatrix| -> usize {
            *index
                .get(&matrix_key(m, order))
                .expect("enumerated set is closed under products")
        };
        let generator_index = generators.iter().map(|(_, g)| lookup(g)).collect();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| lookup(&a.mul(b))).collect())
            .collect();
        let inverse = (0..elements.len())
            .map(|a| {
                (0..elements.len())
                    .find(|&b| table[a][b] == 0)
                    .expect("finite groups contain inverses")
            })
            .collect();
        Ok(MatrixGroup {
            dim,
            field_order: order,
            generator_names: generators.iter().map(|(n, _)| n.clone()).collect(),
            generator_index,
            elements,
            words,
            table,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Cyclotomic order containing all matrix entries.
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CMatrix {
        &self.elements[i]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Element index of each generator.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_index
    }

    pub fn word(&self, e: usize) -> Option<(usize, usize)> {
        self.words[e]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Trace of the defining matrix.
    pub fn character(&self, g: usize) -> Cyclotomic {
        self.elements[g].trace()
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> usize {
        let mut e = 1usize;
        for a in 0..self.order() {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = self.table[a][x];
                k += 1;
            }
            e = e.lcm(&k);
        }
        e
    }
}
