//! Finite matrix groups, their action on polynomials, characters and
//! equivariant hom spaces.

mod action;
mod group;
mod hom;
mod irrep;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use action::{DegreeData, GradedAction};
pub use group::{CMatrix, GroupError, MatrixGroup, DEFAULT_ELEMENT_CAP};
pub use hom::EquivariantEmbedding;
pub use irrep::{
    averaged_hom_dim, character_inner_product, dual_index, validate_irreducibles, IrrepError, IrreducibleModel,
};

use crate::multipoly::TermOrder;
use crate::scalars::Cyclotomic;

/// A group with validated irreducible models and its polynomial action.
#[derive(Debug)]
pub struct RepContext {
    group: MatrixGroup,
    irreps: Vec<IrreducibleModel>,
    action: GradedAction,
    var_names: Vec<String>,
    homs: Mutex<HashMap<(usize, u32), Arc<Vec<EquivariantEmbedding>>>>,
}

impl RepContext {
    pub fn new(
        group: MatrixGroup,
        irreps: Vec<IrreducibleModel>,
        var_names: Vec<String>,
        order: TermOrder,
    ) -> Result<Self, IrrepError> {
        validate_irreducibles(&irreps, &group)?;
        assert_eq!(var_names.len(), group.dim(), "one name per variable");
        let action = GradedAction::new(&group, order);
        Ok(RepContext {
            group,
            irreps,
            action,
            var_names,
            homs: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn irreps(&self) -> &[IrreducibleModel] {
        &self.irreps
    }

    pub fn action(&self) -> &GradedAction {
        &self.action
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn nvars(&self) -> usize {
        self.group.dim()
    }

    pub fn term_order(&self) -> &TermOrder {
        self.action.term_order()
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|m| m.label() == label)
    }

    /// `<chi_d, chi_lambda>`, the multiplicity of `V_lambda` in `k[V]_d`.
    pub fn multiplicity(&self, lambda: usize, d: u32) -> Result<usize, IrrepError> {
        let model = &self.irreps[lambda];
        let ip = character_inner_product(&self.group, |g| self.action.character(g, d), |g| model.character(g));
        let bad = || IrrepError::BadMultiplicity {
            label: model.label().into(),
            degree: d,
        };
        let q = ip.normalize_order();
        let q = q.as_rational().ok_or_else(bad)?;
        if !q.is_integer() || q < &num_traits::Zero::zero() {
            return Err(bad());
        }
        usize::try_from(q.to_integer()).map_err(|_| bad())
    }

    /// Canonical basis of `Hom_G(V_lambda, k[V]_d)`.
    pub fn hom_basis(&self, lambda: usize, d: u32) -> Arc<Vec<EquivariantEmbedding>> {
        if let Some(v) = self.homs.lock().expect("lock").get(&(lambda, d)) {
            return v.clone();
        }
        let v = Arc::new(hom::compute_hom_basis(self, lambda, d));
        self.homs.lock().expect("lock").entry((lambda, d)).or_insert(v).clone()
    }

    pub fn is_equivariant(&self, e: &EquivariantEmbedding) -> bool {
        hom::is_equivariant(self, e)
    }

    pub fn dual(&self, lambda: usize) -> Option<usize> {
        dual_index(&self.irreps, lambda, &self.group)
    }

    /// Index of the trivial representation.
    pub fn trivial(&self) -> Option<usize> {
        self.irreps.iter().position(|m| m.is_trivial())
    }

    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    /// `|G|` as a field element.
    pub fn order_scalar(&self) -> Cyclotomic {
        Cyclotomic::from_int(self.group.order() as i64)
    }
}

#[cfg(test)]
pub(crate) mod tests;
