use std::collections::HashSet;

use thiserror::Error;

use super::group::{CMatrix, MatrixGroup};
use crate::linalg::Matrix;
use crate::scalars::{Cyclotomic, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrrepError {
    #[error("irreducible `{label}`: expected {expected} generator matrices, found {found}")]
    GeneratorCount { label: String, expected: usize, found: usize },
    #[error("irreducible `{label}`: matrices must be {degree}x{degree}")]
    BadShape { label: String, degree: usize },
    #[error("irreducible `{label}`: degree must be positive")]
    ZeroDegree { label: String },
    #[error("label `{label}` is used twice")]
    DuplicateLabel { label: String },
    #[error("irreducible `{label}` is not a homomorphism on the group (relation {a}*{b} fails)")]
    NotHomomorphism { label: String, a: usize, b: usize },
    #[error("irreducible `{label}` is not absolutely irreducible (endomorphism dimension {end_dim})")]
    NotIrreducible { label: String, end_dim: usize },
    #[error("irreducibles `{first}` and `{second}` are isomorphic")]
    Isomorphic { first: String, second: String },
    #[error("sum of squared degrees is {sum}, but the group has order {order}")]
    Incomplete { sum: usize, order: usize },
    #[error("multiplicity of `{label}` in degree {degree} is not a non-negative integer")]
    BadMultiplicity { label: String, degree: u32 },
}

/// A fixed model of an irreducible representation; the distinguished basis
/// is the standard basis.
#[derive(Debug, Clone)]
pub struct IrreducibleModel {
    label: String,
    degree: usize,
    matrices: Vec<CMatrix>,
}

impl IrreducibleModel {
    /// Extends generator images to all elements along the enumeration words
    /// and checks the homomorphism property against the multiplication table.
    pub fn from_generators(
        label: &str,
        degree: usize,
        generator_images: &[CMatrix],
        group: &MatrixGroup,
    ) -> Result<Self, IrrepError> {
        if degree == 0 {
            return Err(IrrepError::ZeroDegree { label: label.into() });
        }
        let ngens = group.generator_names().len();
        if generator_images.len() != ngens {
            return Err(IrrepError::GeneratorCount {
                label: label.into(),
                expected: ngens,
                found: generator_images.len(),
            });
        }
        if generator_images.iter().any(|m| m.rows() != degree || m.cols() != degree) {
            return Err(IrrepError::BadShape {
                label: label.into(),
                degree,
            });
        }
        let mut matrices: Vec<CMatrix> = Vec::with_capacity(group.order());
        matrices.push(Matrix::identity(degree, &Cyclotomic::one()));
        for e in 1..group.order() {
            let (gen, parent) = group.word(e).expect("non-identity elements have words");
            matrices.push(generator_images[gen].mul(&matrices[parent]));
        }
        let model = IrreducibleModel {
            label: label.into(),
            degree,
            matrices,
        };
        // generators may coincide with other elements; their images must agree
        for (gi, &e) in group.generator_indices().iter().enumerate() {
            if model.matrices[e] != generator_images[gi] {
                return Err(IrrepError::NotHomomorphism {
                    label: label.into(),
                    a: e,
                    b: 0,
                });
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if model.matrices[a].mul(&model.matrices[b]) != model.matrices[group.mul(a, b)] {
                    return Err(IrrepError::NotHomomorphism {
                        label: label.into(),
                        a,
                        b,
                    });
                }
            }
        }
        Ok(model)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn character(&self, g: usize) -> Cyclotomic {
        self.matrices[g].trace()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.matrices.iter().all(|m| m.get(0, 0).is_one())
    }
}

/// Dimension of `Hom_G(a, b)` via the averaging projector applied to the
/// elementary maps.
pub fn averaged_hom_dim(a: &IrreducibleModel, b: &IrreducibleModel, group: &MatrixGroup) -> usize {
    let (da, db) = (a.degree, b.degree);
    let zero = Cyclotomic::zero();
    let mut rows = Vec::new();
    for r in 0..db {
        for c in 0..da {
            let mut e = Matrix::new(db, da, zero.clone());
            e.set(r, c, Cyclotomic::one());
            let mut acc = Matrix::new(db, da, zero.clone());
            for g in 0..group.order() {
                acc = acc.add(&b.matrix(g).mul(&e).mul(a.matrix(group.inv(g))));
            }
            rows.push(acc.to_rows().into_iter().flatten().collect::<Vec<_>>());
        }
    }
    Matrix::from_rows(rows).rank()
}

/// Checks that the models are a complete list of pairwise non-isomorphic
/// absolutely irreducible representations. Homomorphism is checked at
/// construction.
pub fn validate_irreducibles(models: &[IrreducibleModel], group: &MatrixGroup) -> Result<(), IrrepError> {
    let mut seen = HashSet::new();
    for m in models {
        if !seen.insert(m.label.as_str()) {
            return Err(IrrepError::DuplicateLabel { label: m.label.clone() });
        }
    }
    for m in models {
        let end_dim = averaged_hom_dim(m, m, group);
        if end_dim != 1 {
            return Err(IrrepError::NotIrreducible {
                label: m.label.clone(),
                end_dim,
            });
        }
    }
    for (i, a) in models.iter().enumerate() {
        for b in &models[i + 1..] {
            if averaged_hom_dim(a, b, group) != 0 {
                return Err(IrrepError::Isomorphic {
                    first: a.label.clone(),
                    second: b.label.clone(),
                });
            }
        }
    }
    let sum: usize = models.iter().map(|m| m.degree * m.degree).sum();
    if sum != group.order() {
        return Err(IrrepError::Incomplete {
            sum,
            order: group.order(),
        });
    }
    Ok(())
}

/// `|G|^-1 sum_g a(g) b(g^-1)`.
pub fn character_inner_product(
    group: &MatrixGroup,
    a: impl Fn(usize) -> Cyclotomic,
    b: impl Fn(usize) -> Cyclotomic,
) -> Cyclotomic {
    let mut s = Cyclotomic::zero();
    for g in 0..group.order() {
        s = s.add(&a(g).mul(&b(group.inv(g))));
    }
    s.mul(&Cyclotomic::from_int(group.order() as i64).inv().expect("nonzero"))
}

/// Index of the model whose character is `g -> chi(g^-1)`.
pub fn dual_index(models: &[IrreducibleModel], lambda: usize, group: &MatrixGroup) -> Option<usize> {
    let target: Vec<Cyclotomic> = (0..group.order())
        .map(|g| models[lambda].character(group.inv(g)))
        .collect();
    models
        .iter()
        .position(|m| (0..group.order()).all(|g| m.character(g) == target[g]))
}
