//! Group description files.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grouprep::{CMatrix, IrreducibleModel, MatrixGroup, RepContext, DEFAULT_ELEMENT_CAP};
use crate::linalg::Matrix;
use crate::multipoly::{OrderKind, TermOrder};
use crate::scalars::{parse_scalar, Cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

/// A matrix entry: a scalar literal, or a bare integer for convenience.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Literal(String),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Int(v) => v.to_string(),
            Entry::Literal(s) => s.clone(),
        }
    }
}

impl From<i64> for Entry {
    fn from(v: i64) -> Self {
        Entry::Int(v)
    }
}

impl From<&str> for Entry {
    fn from(s: &str) -> Self {
        Entry::Literal(s.to_string())
    }
}

pub type MatrixSpec = Vec<Vec<Entry>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub matrix: MatrixSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrreducibleSpec {
    pub label: String,
    pub degree: usize,
    /// One matrix per generator, in generator order.
    pub matrices: Vec<MatrixSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term_order: Option<OrderKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub cyclotomic_order: u32,
    pub variables: Vec<String>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    pub irreducibles: Vec<IrreducibleSpec>,
    #[serde(default)]
    pub options: SpecOptions,
}

/// Settings that may override the file's options.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub term_order: Option<OrderKind>,
    pub element_cap: Option<usize>,
}

pub fn parse_spec(path: &Path) -> Result<GroupSpecFile, SpecError> {
    let src = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_spec_str(&src)
}

pub fn parse_spec_str(src: &str) -> Result<GroupSpecFile, SpecError> {
    let spec: GroupSpecFile = serde_json::from_str(src).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_square(m: &MatrixSpec, dim: usize, what: &str) -> Result<(), SpecError> {
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(invalid(what, format!("matrix must be {dim}x{dim}")));
    }
    Ok(())
}

impl GroupSpecFile {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.cyclotomic_order == 0 {
            return Err(invalid("cyclotomic_order", "must be a positive integer"));
        }
        if self.variables.is_empty() {
            return Err(invalid("variables", "at least one variable is required"));
        }
        let mut seen = HashSet::new();
        for v in &self.variables {
            if !is_identifier(v) || v == "z" {
                return Err(invalid(
                    "variables",
                    format!("`{v}` is not a usable variable name (`z` is reserved for the root of unity)"),
                ));
            }
            if !seen.insert(v.as_str()) {
                return Err(invalid("variables", format!("`{v}` is listed twice")));
            }
        }
        let n = self.variables.len();
        let mut names = HashSet::new();
        for g in &self.generators {
            if !names.insert(g.name.as_str()) {
                return Err(invalid(format!("generator `{}`", g.name), "name is used twice"));
            }
            check_square(&g.matrix, n, &format!("generator `{}`", g.name))?;
        }
        let mut labels = HashSet::new();
        for ir in &self.irreducibles {
            let loc = format!("irreducible `{}`", ir.label);
            if !labels.insert(ir.label.as_str()) {
                return Err(invalid(loc, "label is used twice"));
            }
            if ir.degree == 0 {
                return Err(invalid(loc, "degree must be positive"));
            }
            if ir.matrices.len() != self.generators.len() {
                return Err(invalid(
                    loc,
                    format!(
                        "expected {} matrices (one per generator), found {}",
                        self.generators.len(),
                        ir.matrices.len()
                    ),
                ));
            }
            for (m, g) in ir.matrices.iter().zip(&self.generators) {
                check_square(m, ir.degree, &format!("{loc}, image of `{}`", g.name))?;
            }
        }
        Ok(())
    }

    fn matrix(&self, m: &MatrixSpec, what: &str) -> Result<CMatrix, SpecError> {
        let rows = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        parse_scalar(&e.text(), self.cyclotomic_order)
                            .map_err(|err| invalid(format!("{what}, entry ({}, {})", i + 1, j + 1), err.to_string()))
                    })
                    .collect::<Result<Vec<Cyclotomic>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows))
    }

    pub fn term_order(&self, overrides: &Overrides) -> TermOrder {
        let kind = overrides
            .term_order
            .or(self.options.term_order)
            .unwrap_or(OrderKind::Grevlex);
        TermOrder::new(kind, self.variables.len())
    }

    pub fn generator_matrices(&self) -> Result<Vec<(String, CMatrix)>, SpecError> {
        self.generators
            .iter()
            .map(|g| Ok((g.name.clone(), self.matrix(&g.matrix, &format!("generator `{}`", g.name))?)))
            .collect()
    }

    /// Enumerates the group, builds and validates the irreducible models.
    pub fn build(&self, overrides: &Overrides) -> crate::error::Result<RepContext> {
        self.validate()?;
        let cap = overrides
            .element_cap
            .or(self.options.element_cap)
            .unwrap_or(DEFAULT_ELEMENT_CAP);
        let gens = self.generator_matrices()?;
        let group = MatrixGroup::enumerate(self.variables.len(), &gens, cap)?;
        let mut models = Vec::with_capacity(self.irreducibles.len());
        for ir in &self.irreducibles {
            let mats = ir
                .matrices
                .iter()
                .zip(&self.generators)
                .map(|(m, g)| self.matrix(m, &format!("irreducible `{}`, image of `{}`", ir.label, g.name)))
                .collect::<Result<Vec<_>, _>>()?;
            models.push(IrreducibleModel::from_generators(&ir.label, ir.degree, &mats, &group)?);
        }
        Ok(RepContext::new(
            group,
            models,
            self.variables.clone(),
            self.term_order(overrides),
        )?)
    }
}
