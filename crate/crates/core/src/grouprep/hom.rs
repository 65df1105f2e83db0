use crate::linalg::Matrix;
use crate::multipoly::Poly;
use crate::scalars::{Cyclotomic, Field};

use super::RepContext;

/// A G-map `V_lambda -> k[V]_d`, stored as the images of the distinguished
/// basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantEmbedding {
    pub irrep: usize,
    pub degree: u32,
    pub images: Vec<Poly>,
}

impl EquivariantEmbedding {
    /// Scales all images by `c`.
    pub fn scaled(&self, c: &Cyclotomic) -> Self {
        EquivariantEmbedding {
            irrep: self.irrep,
            degree: self.degree,
            images: self.images.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

/// Canonical basis of `Hom_G(V_lambda, k[V]_d)`: averaged elementary maps
/// `v_1 -> m`, row-reduced, so the first nonzero coordinate is 1.
pub(super) fn compute_hom_basis(ctx: &RepContext, lambda: usize, d: u32) -> Vec<EquivariantEmbedding> {
    let model = &ctx.irreps()[lambda];
    let group = ctx.group();
    let action = ctx.action();
    let dd = action.degree(d);
    let n = dd.basis.len();
    let dl = model.degree();
    let zero = Cyclotomic::zero();
    let mut projectors: Vec<Matrix<Cyclotomic>> = vec![Matrix::new(n, n, zero.clone()); dl];
    for g in 0..group.order() {
        let rinv = model.matrix(group.inv(g));
        for (i, p) in projectors.iter_mut().enumerate() {
            let c = rinv.get(0, i);
            if !c.is_zero() {
                *p = p.add(&dd.matrices[g].scale(c));
            }
        }
    }
    let rows: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|m| {
            projectors
                .iter()
                .flat_map(|p| (0..n).map(move |r| p.get(r, m).clone()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let mut mat = Matrix::from_rows(rows);
    let pivots = mat.rref();
    (0..pivots.len())
        .map(|r| {
            let row = mat.row(r);
            EquivariantEmbedding {
                irrep: lambda,
                degree: d,
                images: (0..dl).map(|i| action.from_coords(d, &row[i * n..(i + 1) * n])).collect(),
            }
        })
        .collect()
}

/// `g . phi(v_j) = sum_k rho(g)_{kj} phi(v_k)` for every generator.
pub(super) fn is_equivariant(ctx: &RepContext, e: &EquivariantEmbedding) -> bool {
    let model = &ctx.irreps()[e.irrep];
    ctx.group().generator_indices().iter().all(|&g| {
        let rho = model.matrix(g);
        (0..model.degree()).all(|j| {
            let lhs = ctx.action().act(g, &e.images[j]);
            let mut rhs = Poly::zero(ctx.action().nvars());
            for (k, img) in e.images.iter().enumerate() {
                rhs = &rhs + &img.scale(rho.get(k, j));
            }
            lhs == rhs
        })
    })
}
