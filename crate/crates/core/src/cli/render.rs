//! Aligned plain-text tables.

use std::fmt::Write;

use super::gb::GroebnerReport;
use super::report::AnalysisReport;

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String], out: &mut String| {
            let mut s = String::from("  ");
            for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&self.header, out);
        let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
        line(&rule, out);
        for r in &self.rows {
            line(r, out);
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

pub fn render_report(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} ({}): |G| = {}, variables {}, term order {}",
        r.name,
        r.command.name(),
        r.group_order,
        r.variables.join(", "),
        r.term_order
    );
    let irr: Vec<String> = r.irreducibles.iter().map(|i| format!("{} (dim {})", i.label, i.degree)).collect();
    let _ = writeln!(out, "irreducibles: {}", irr.join(", "));

    if let Some(d) = r.d_reg {
        let _ = writeln!(out, "\nD_reg = {d}");
    }

    if !r.decomposition.is_empty() {
        out.push_str("\nDecomposition of k[V]_d\n");
        let mut t = Table::new(&["d", "dim", "isotype", "mult", "summands"]);
        for row in &r.decomposition {
            let mut first = true;
            for c in row.components.iter().filter(|c| c.multiplicity > 0) {
                let spans: Vec<String> = c.summands.iter().map(|s| format!("<{}>", s.join(", "))).collect();
                t.row(vec![
                    if first { row.degree.to_string() } else { String::new() },
                    if first { row.dimension.to_string() } else { String::new() },
                    c.label.clone(),
                    c.multiplicity.to_string(),
                    spans.join(" + "),
                ]);
                first = false;
            }
        }
        t.render(&mut out);
    }

    if let Some(s) = &r.span {
        let _ = writeln!(out, "\nD_span = {}, D_reg = {}", s.d_span, s.d_reg);
        let mut t = Table::new(&["irreducible", "spanned by degree"]);
        for (l, d) in &s.completion {
            t.row(vec![l.clone(), d.to_string()]);
        }
        t.render(&mut out);
        let prof: Vec<String> = s.profile.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "dimension profile over K: {}", prof.join(" < "));
        out.push_str("\nRegular-representation witness\n");
        let mut t = Table::new(&["irreducible", "degree", "basis images"]);
        for w in &s.witness {
            t.row(vec![w.irrep.clone(), w.degree.to_string(), w.images.join(", ")]);
        }
        t.render(&mut out);
    }

    if let Some(oi) = &r.orbit_ideal {
        let _ = writeln!(
            out,
            "\nGeneric orbit ideal: D_I = {}, {} standard monomials ({} order, relations up to degree {})",
            oi.d_i, oi.standard_monomial_count, oi.term_order, oi.candidate_degree
        );
        let mut t = Table::new(&["leading monomial", "basis element"]);
        for (lm, g) in oi.leading_monomials.iter().zip(&oi.groebner_basis) {
            t.row(vec![lm.clone(), g.clone()]);
        }
        t.render(&mut out);
        let _ = writeln!(
            out,
            "{} relations, largest certificate degree {}, low-degree relations generate: {}",
            oi.generators.len(),
            oi.max_certificate_degree,
            oi.low_relations_generate
        );
    }
    if let Some(why) = &r.orbit_ideal_skipped {
        let _ = writeln!(out, "\nGeneric orbit ideal: {why}");
    }

    if let Some(g) = &r.generators {
        let _ = writeln!(
            out,
            "\nExtracted field generators (max degree {}, generate: {})",
            g.max_degree, g.verdict.generates
        );
        let mut t = Table::new(&["from", "invariant"]);
        for (p, (l, d)) in g.polys.iter().zip(&g.sources) {
            t.row(vec![format!("{l}, degree {d}"), p.clone()]);
        }
        t.render(&mut out);
    }

    if let Some(b) = &r.beta {
        let _ = writeln!(out, "\nField Noether number search (up to degree {})", b.search_limit);
        let mut t = Table::new(&["d", "new generators", "fiber size", "generates"]);
        for p in &b.probes {
            t.row(vec![
                p.degree.to_string(),
                p.new_generators.len().to_string(),
                opt(p.verdict.as_ref().and_then(|v| v.count)),
                opt(p.verdict.as_ref().map(|v| v.generates)),
            ]);
        }
        t.render(&mut out);
        let _ = writeln!(out, "beta_field = {}", opt(b.value));
    }

    if !r.checks.is_empty() {
        out.push_str("\nChecks\n");
        let mut t = Table::new(&["check", "lhs", "rhs", "result"]);
        for c in &r.checks {
            t.row(vec![
                c.name.clone(),
                c.lhs.to_string(),
                c.rhs.to_string(),
                if c.holds { "ok" } else { "VIOLATED" }.into(),
            ]);
        }
        t.render(&mut out);
    }
    let _ = writeln!(out, "\n{}", if r.passed() { "all checks passed" } else { "some checks FAILED" });
    out
}

pub fn render_groebner(r: &GroebnerReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Reduced Groebner basis in Q(z_{})[{}], {} order",
        r.cyclotomic_order,
        r.variables.join(", "),
        r.term_order
    );
    let mut t = Table::new(&["leading monomial", "basis element"]);
    for (lm, g) in r.leading_monomials.iter().zip(&r.basis) {
        t.row(vec![lm.clone(), g.clone()]);
    }
    t.render(&mut out);
    let _ = writeln!(
        out,
        "quotient dimension: {}",
        r.standard_monomial_count
            .map(|c| c.to_string())
            .unwrap_or_else(|| "infinite".into())
    );
    out
}
