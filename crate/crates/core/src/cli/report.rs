//! The analysis pipeline and its serializable report.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldgen::{
    bound_report, compute_beta_field_upper, extract_field_generators, profile_strictly_increasing, verify_polys,
    BetaProbe, BoundReport, FieldGenVerdict, InequalityCheck,
};
use crate::grouprep::RepContext;
use crate::multipoly::{format_poly, Monomial, OrderKind};
use crate::orbitideal::{build_orbit_ideal_within, Budget, OrbitIdealReport, OrbitIdealSummary};
use crate::spanning::{analyze_span, compute_dreg, RankMode, SpanReport, SpanSummary};

use super::spec::{GroupSpecFile, Overrides};

/// Default wall-clock allowance for the orbit ideal.
pub const DEFAULT_ORBIT_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Dspan,
    Dreg,
    Decompose,
    OrbitIdeal,
    Generators,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dspan => "dspan",
            Command::Dreg => "dreg",
            Command::Decompose => "decompose",
            Command::OrbitIdeal => "orbit-ideal",
            Command::Generators => "generators",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub term_order: Option<OrderKind>,
    pub element_cap: Option<usize>,
    pub fast_rank: bool,
    pub max_degree: Option<u32>,
    /// `None` means unlimited.
    pub orbit_budget: Option<Duration>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            term_order: None,
            element_cap: None,
            fast_rank: false,
            max_degree: None,
            orbit_budget: Some(DEFAULT_ORBIT_BUDGET),
        }
    }
}

impl RunOptions {
    fn rank_mode(&self) -> RankMode {
        if self.fast_rank {
            RankMode::Fast
        } else {
            RankMode::Exact
        }
    }

    fn budget(&self) -> Budget {
        match self.orbit_budget {
            Some(d) => Budget::new(d),
            None => Budget::unlimited(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepInfo {
    pub label: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicEntry {
    pub label: String,
    pub multiplicity: usize,
    /// Images of a basis of each summand, one list per copy.
    pub summands: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: u32,
    pub dimension: usize,
    pub components: Vec<IsotypicEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsSummary {
    pub polys: Vec<String>,
    /// Irreducible label and degree of the relation each came from.
    pub sources: Vec<(String, u32)>,
    pub max_degree: u32,
    pub verdict: FieldGenVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaSummary {
    pub value: Option<u32>,
    pub search_limit: u32,
    pub probes: Vec<BetaProbe>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: Command,
    pub name: String,
    pub group_order: usize,
    pub variables: Vec<String>,
    pub term_order: OrderKind,
    pub irreducibles: Vec<IrrepInfo>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decomposition: Vec<DegreeRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_reg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<SpanSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_ideal: Option<OrbitIdealSummary>,
    /// Why the orbit ideal is absent when the command asked for it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_ideal_skipped: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorsSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    /// Every asserted inequality; the exit status reflects these.
    pub checks: Vec<InequalityCheck>,
    /// Stage name to microseconds.
    pub timings: BTreeMap<String, u64>,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Copy with timings cleared, for comparisons.
    pub fn without_timings(&self) -> Self {
        AnalysisReport {
            timings: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

struct Clock(BTreeMap<String, u64>);

impl Clock {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.0.insert(stage.to_string(), t.elapsed().as_micros() as u64);
        out
    }
}

/// Per-degree isotypic decomposition of `k[V]_d` for `d = 0..=max_degree`.
pub fn decomposition(ctx: &RepContext, max_degree: u32) -> Result<Vec<DegreeRow>> {
    let names = ctx.var_names();
    let order = ctx.term_order();
    (0..=max_degree)
        .map(|d| {
            let components = ctx
                .irreps()
                .iter()
                .enumerate()
                .map(|(l, m)| {
                    let multiplicity = ctx.multiplicity(l, d)?;
                    let homs = ctx.hom_basis(l, d);
                    if homs.len() != multiplicity {
                        return Err(Error::Internal(format!(
                            "degree {d}: character predicts {multiplicity} copies of `{}`, found {}",
                            m.label(),
                            homs.len()
                        )));
                    }
                    Ok(IsotypicEntry {
                        label: m.label().to_string(),
                        multiplicity,
                        summands: homs
                            .iter()
                            .map(|e| {
                                e.images
                                    .iter()
                                    .map(|p| format_poly(p, names, order, &[] as &[&str]))
                                    .collect()
                            })
                            .collect(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DegreeRow {
                degree: d,
                dimension: Monomial::all_of_degree(ctx.nvars(), d).len(),
                components,
            })
        })
        .collect()
}

fn decomposition_checks(ctx: &RepContext, rows: &[DegreeRow]) -> Vec<InequalityCheck> {
    rows.iter()
        .map(|r| {
            let total: usize = r
                .components
                .iter()
                .zip(ctx.irreps())
                .map(|(c, m)| c.multiplicity * m.degree())
                .sum();
            InequalityCheck {
                name: format!("isotypic dimensions add up in degree {}", r.degree),
                lhs: total as u32,
                rhs: r.dimension as u32,
                holds: total == r.dimension,
            }
        })
        .collect()
}

fn span_checks(span: &SpanReport, group_order: usize) -> Vec<InequalityCheck> {
    let strict = profile_strictly_increasing(&span.profile, group_order);
    vec![
        InequalityCheck::le("D_reg <= D_span", span.d_reg, span.d_span),
        InequalityCheck::le("D_span <= |G| - 1", span.d_span, group_order.saturating_sub(1) as u32),
        InequalityCheck {
            name: "dimension profile strictly increasing".into(),
            lhs: strict as u32,
            rhs: 1,
            holds: strict,
        },
    ]
}

/// Orbit ideal within the budget; a budget overrun becomes a skip reason.
fn orbit_ideal(
    ctx: &RepContext,
    span: &SpanReport,
    opts: &RunOptions,
) -> Result<std::result::Result<OrbitIdealReport, String>> {
    match build_orbit_ideal_within(ctx, span, &opts.budget()) {
        Ok(r) => Ok(Ok(r)),
        Err(Error::Budget(s)) => Ok(Err(format!("skipped: exceeded the {s} s orbit-ideal budget"))),
        Err(e) => Err(e),
    }
}

fn generators_summary(ctx: &RepContext, oi: &OrbitIdealReport) -> Result<GeneratorsSummary> {
    let set = extract_field_generators(ctx, oi);
    let verdict = verify_polys(ctx, &set.polys)?;
    let order = ctx.term_order();
    Ok(GeneratorsSummary {
        polys: set
            .polys
            .iter()
            .map(|p| format_poly(p, ctx.var_names(), order, &[] as &[&str]))
            .collect(),
        sources: set
            .provenance
            .iter()
            .map(|&r| {
                let rec = &oi.records[r];
                (ctx.irreps()[rec.irrep].label().to_string(), rec.phi.degree)
            })
            .collect(),
        max_degree: set.max_degree(),
        verdict,
    })
}

/// Runs `command` on a parsed description.
pub fn run(command: Command, spec: &GroupSpecFile, opts: &RunOptions) -> Result<AnalysisReport> {
    let mut clock = Clock(BTreeMap::new());
    let overrides = Overrides {
        term_order: opts.term_order,
        element_cap: opts.element_cap,
    };
    let ctx = clock.time("setup", || spec.build(&overrides))?;
    let g = ctx.group().order();
    let mut report = AnalysisReport {
        command,
        name: spec.name.clone(),
        group_order: g,
        variables: ctx.var_names().to_vec(),
        term_order: ctx.term_order().kind(),
        irreducibles: ctx
            .irreps()
            .iter()
            .map(|m| IrrepInfo {
                label: m.label().to_string(),
                degree: m.degree(),
            })
            .collect(),
        decomposition: Vec::new(),
        d_reg: None,
        span: None,
        orbit_ideal: None,
        orbit_ideal_skipped: None,
        generators: None,
        beta: None,
        bounds: None,
        checks: Vec::new(),
        timings: BTreeMap::new(),
    };
    let max_degree = opts.max_degree.or(spec.options.max_degree);

    if command == Command::Dreg {
        let d = clock.time("dreg", || compute_dreg(&ctx))?;
        report.d_reg = Some(d);
        report
            .checks
            .push(InequalityCheck::le("D_reg <= |G| - 1", d, g.saturating_sub(1) as u32));
        report.timings = clock.0;
        return Ok(report);
    }

    if command == Command::Decompose {
        let top = match max_degree {
            Some(d) => d,
            None => clock.time("span", || analyze_span(&ctx, opts.rank_mode()))?.d_span,
        };
        report.decomposition = clock.time("decompose", || decomposition(&ctx, top))?;
        report.checks = decomposition_checks(&ctx, &report.decomposition);
        report.timings = clock.0;
        return Ok(report);
    }

    let span = clock.time("span", || analyze_span(&ctx, opts.rank_mode()))?;
    report.d_reg = Some(span.d_reg);
    report.span = Some(span.summary(&ctx));
    if command == Command::Dspan {
        report.checks = span_checks(&span, g);
        report.timings = clock.0;
        return Ok(report);
    }
    if command == Command::Verify {
        report.decomposition = clock.time("decompose", || decomposition(&ctx, span.d_span))?;
    }

    let oi = clock.time("orbit_ideal", || orbit_ideal(&ctx, &span, opts))?;
    let mut extracted = None;
    match &oi {
        Ok(r) => {
            report.orbit_ideal = Some(r.summary(&ctx));
            if command != Command::OrbitIdeal {
                let gens = clock.time("generators", || generators_summary(&ctx, r))?;
                extracted = Some((gens.verdict.generates, gens.max_degree));
                report.generators = Some(gens);
            }
        }
        Err(reason) => report.orbit_ideal_skipped = Some(reason.clone()),
    }
    let d_i = oi.as_ref().ok().map(|r| r.d_i);

    match command {
        Command::OrbitIdeal => {
            report.checks = span_checks(&span, g);
            if let Some(di) = d_i {
                report
                    .checks
                    .push(InequalityCheck::le("D_I <= D_span + 1", di, span.d_span + 1));
            }
        }
        Command::Generators => {
            report.checks = span_checks(&span, g);
            if let Some((gen, deg)) = extracted {
                report.checks.push(InequalityCheck {
                    name: "extracted generators generate the invariant field".into(),
                    lhs: gen as u32,
                    rhs: 1,
                    holds: gen,
                });
                report.checks.push(InequalityCheck::le(
                    "extracted generator degree <= 2 D_span + 1",
                    deg,
                    2 * span.d_span + 1,
                ));
            }
        }
        _ => {
            let limit = (2 * span.d_span + 1).max(max_degree.unwrap_or(0));
            let (beta, probes) = clock.time("beta_field", || compute_beta_field_upper(&ctx, limit))?;
            report.beta = Some(BetaSummary {
                value: beta,
                search_limit: limit,
                probes,
            });
            let strict = profile_strictly_increasing(&span.profile, g);
            let bounds = bound_report(g, span.d_span, span.d_reg, d_i, beta, extracted, strict);
            report.checks = bounds.checks.clone();
            if let Some(false) = bounds.extracted_generate {
                report.checks.push(InequalityCheck {
                    name: "extracted generators generate the invariant field".into(),
                    lhs: 0,
                    rhs: 1,
                    holds: false,
                });
            }
            report.bounds = Some(bounds);
        }
    }
    report.timings = clock.0;
    Ok(report)
}
