use std::fmt::Write as _;

use serde_json::{json, Value};

use ql_core::anchors::{self, AnchorStatus};
use ql_core::cohomology::{acm_embedding_obstruction, rr_chi, Feasibility};
use ql_core::{
    ci_residual, full_ideal_table, generator_estimate, ideal_h0_table,
    kernel_table_from_resolution, mapping_cone_n_from_e, match_acm_kernel, regularity,
    resolution_consistency_check, section_table, Ambient, Cell, CiLinkage, CohomTable,
    ConsistencyReport, CurveClass, Flavor, HilbertRow, ResolutionTriple, SheafExpr, TableFlag,
    TwistBounds, Window,
};

use crate::error::CliError;
use crate::{Format, Inputs, Rows};

/// Text for stdout and the process exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

const Q: Ambient = Ambient::QuadricThreefold;

fn number(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

fn cell_json(c: Cell) -> Value {
    c.known().map_or(Value::Null, number)
}

fn cell_text(c: Cell) -> String {
    c.known().map_or_else(|| "?".to_string(), |v| v.to_string())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Labelled rows over a window with the twist axis last, in the same layout
/// as [`CohomTable::to_text`].
fn grid(rows: &[(&str, Vec<String>)], window: Window) -> String {
    let label_width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(1).max(1);
    let mut width = 3;
    for n in window.iter() {
        width = width.max(n.to_string().len());
    }
    for (_, cells) in rows {
        for c in cells {
            width = width.max(c.len());
        }
    }
    let mut out = String::new();
    for (label, cells) in rows {
        let _ = write!(out, "{label:>label_width$} |");
        for c in cells {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "{}+{}",
        "-".repeat(label_width + 1),
        "-".repeat((width + 1) * window.len())
    );
    let _ = write!(out, "{:>label_width$} |", "n");
    for n in window.iter() {
        let _ = write!(out, " {n:>width$}");
    }
    out.push('\n');
    out
}

fn curve_from(inputs: &Inputs) -> Result<CurveClass, CliError> {
    let ambient = inputs.require(inputs.ambient, "ambient")?;
    let d = inputs.require(inputs.degree, "degree")?;
    let g = inputs.require(inputs.genus, "genus")?;
    let curve = CurveClass::acm(ambient, d, g)?;
    if let Feasibility::Infeasible(n) = acm_embedding_obstruction(d, g, ambient) {
        return Err(CliError::Infeasible(format!(
            "no ACM curve of degree {d} and genus {g} in {ambient}: at twist {n}, h^0(O_X({n})) = {} < chi(O_C({n})) = {}",
            ambient.h0(n),
            rr_chi(d, g, n)
        )));
    }
    Ok(curve)
}

struct Tables {
    sections: Option<HilbertRow>,
    ideal: Option<HilbertRow>,
    full: Option<CohomTable>,
}

fn regularity_line(t: &CohomTable) -> String {
    match regularity(t).regularity {
        Some(m) => format!("regularity: {m}\n"),
        None => format!("regularity: not reached in window {}\n", t.window()),
    }
}

fn flag_lines(t: &CohomTable) -> String {
    t.flags()
        .iter()
        .map(|f| match f {
            TableFlag::IntegralCurveAssumption => {
                "assumption: h^1(O_C(n)) = 0 where nd > 2g - 2, valid for integral curves\n"
                    .to_string()
            }
        })
        .collect()
}

pub fn table(inputs: &Inputs, rows: Rows) -> Result<Output, CliError> {
    let curve = curve_from(inputs)?;
    let window = inputs.window;
    let want = |r: Rows| rows == r || rows == Rows::All;
    let tables = Tables {
        sections: want(Rows::Section)
            .then(|| section_table(&curve, window))
            .transpose()?,
        ideal: want(Rows::Ideal)
            .then(|| ideal_h0_table(&curve, window))
            .transpose()?,
        full: want(Rows::Full)
            .then(|| full_ideal_table(&curve, window))
            .transpose()?,
    };
    let text = match inputs.format {
        Format::Text => table_text(&tables, window),
        Format::Csv => table_csv(&tables, window),
        Format::Json => table_json(&curve, &tables, window),
    };
    Ok(Output::ok(text))
}

fn table_text(t: &Tables, window: Window) -> String {
    let show = |row: &HilbertRow| row.values().iter().map(u128::to_string).collect::<Vec<_>>();
    let mut lines = Vec::new();
    if let Some(s) = &t.sections {
        lines.push(("h^0(O_C(n))", show(s)));
    }
    if let Some(i) = &t.ideal {
        lines.push(("h^0(I_C(n))", show(i)));
    }
    let mut out = String::new();
    if !lines.is_empty() {
        out.push_str(&grid(&lines, window));
    }
    if let Some(full) = &t.full {
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "h^i(I_C(n)):");
        out.push_str(&full.to_text());
        out.push_str(&regularity_line(full));
        out.push_str(&flag_lines(full));
    }
    out
}

fn table_csv(t: &Tables, window: Window) -> String {
    let mut out = String::from("row,n,value\n");
    for (name, row) in [("sections", &t.sections), ("ideal", &t.ideal)] {
        if let Some(row) = row {
            for (n, v) in row.iter() {
                let _ = writeln!(out, "{name},{n},{v}");
            }
        }
    }
    if let Some(full) = &t.full {
        for i in 0..4 {
            for n in window.iter() {
                let _ = writeln!(out, "h{i},{n},{}", cell_text(full.cell(i, n)));
            }
        }
    }
    out
}

fn table_json(curve: &CurveClass, t: &Tables, window: Window) -> String {
    let mut doc = json!({
        "ambient": curve.ambient().to_string(),
        "degree": curve.degree(),
        "genus": curve.genus(),
        "window": { "lo": window.lo(), "hi": window.hi() },
        "twists": window.iter().collect::<Vec<_>>(),
    });
    let row_json =
        |row: &HilbertRow| Value::Array(row.values().iter().map(|&v| number(v)).collect());
    if let Some(s) = &t.sections {
        doc["sections"] = row_json(s);
    }
    if let Some(i) = &t.ideal {
        doc["ideal"] = row_json(i);
    }
    if let Some(full) = &t.full {
        let rows: Vec<Value> = (0..4)
            .map(|i| Value::Array(full.row(i).into_iter().map(cell_json).collect()))
            .collect();
        let assumptions: Vec<&str> = full
            .flags()
            .iter()
            .map(|f| match f {
                TableFlag::IntegralCurveAssumption => "integral-curve",
            })
            .collect();
        doc["cohomology"] = json!({
            "rows": rows,
            "regularity": regularity(full).regularity,
            "assumptions": assumptions,
        });
    }
    json_text(&doc)
}

pub fn link(inputs: &Inputs, ci: &[i64]) -> Result<Output, CliError> {
    let d = inputs.require(inputs.degree, "degree")?;
    let g = inputs.require(inputs.genus, "genus")?;
    let linkage = match inputs.ambient {
        Some(Ambient::QuadricThreefold) => match ci {
            &[a, b] => CiLinkage::on_quadric(a, b)?,
            _ => {
                return Err(CliError::Usage(
                    "on quadric3, --ci takes the two remaining degrees a,b".into(),
                ))
            }
        },
        Some(Ambient::ProjSpace(n)) if ci.len() + 1 != n as usize => {
            return Err(CliError::Usage(format!(
                "a curve in P{n} is cut by {} hypersurfaces, got {}",
                n - 1,
                ci.len()
            )))
        }
        _ => CiLinkage::new(ci.len() as u32 + 1, ci.to_vec())?,
    };
    let r = ci_residual(d, g, &linkage)?;
    let text = match inputs.format {
        Format::Text => format!("{} {}\n", r.degree, r.genus),
        Format::Csv => format!(
            "degree,genus,genus_drop\n{},{},{}\n",
            r.degree, r.genus, r.genus_drop
        ),
        Format::Json => json_text(&json!({
            "degree": r.degree,
            "genus": r.genus,
            "genus_drop": r.genus_drop,
            "linkage": linkage.degrees(),
        })),
    };
    Ok(Output::ok(text))
}

enum Etype {
    Unique(ResolutionTriple),
    Ambiguous(Vec<SheafExpr>),
}

fn etype_resolution(curve: &CurveClass, window: Window) -> Result<Etype, CliError> {
    let estimate = generator_estimate(curve, window)?;
    let middle = estimate.as_middle(Q);
    let kernel_row = kernel_table_from_resolution(curve, &middle, window)?;
    let bounds = TwistBounds::default();
    let mut found = match_acm_kernel(&kernel_row, bounds)?;
    match found.len() {
        0 => Err(CliError::Infeasible(format!(
            "no rank-4 ACM kernel with twists in [{}, {}] has h^0 row {:?} on {window} (middle {middle})",
            bounds.lo,
            bounds.hi,
            kernel_row.values()
        ))),
        1 => Ok(Etype::Unique(ResolutionTriple {
            kernel: found.remove(0),
            middle,
            curve: *curve,
            flavor: Flavor::EType,
        })),
        _ => Ok(Etype::Ambiguous(found)),
    }
}

fn quadric_curve(inputs: &Inputs) -> Result<CurveClass, CliError> {
    let curve = curve_from(inputs)?;
    if curve.ambient() != Q {
        return Err(CliError::Usage(format!(
            "resolve works on quadric3, not {}",
            curve.ambient()
        )));
    }
    Ok(curve)
}

fn ambiguous(candidates: &[SheafExpr]) -> Output {
    let mut text = format!("ambiguous: {} kernels match\n", candidates.len());
    for c in candidates {
        let _ = writeln!(text, "  {c}");
    }
    Output { text, code: 3 }
}

pub fn resolve_etype(inputs: &Inputs) -> Result<Output, CliError> {
    let curve = quadric_curve(inputs)?;
    match etype_resolution(&curve, inputs.window)? {
        Etype::Ambiguous(found) => Ok(ambiguous(&found)),
        Etype::Unique(res) => Ok(render_resolution(inputs, &res, &[], None)),
    }
}

pub fn resolve_ntype(inputs: &Inputs, (a, b): (i64, i64)) -> Result<Output, CliError> {
    let curve = quadric_curve(inputs)?;
    let linkage = CiLinkage::on_quadric(a, b)?;
    let r = ci_residual(curve.degree(), curve.genus(), &linkage)?;
    let residual = CurveClass::acm(Q, r.degree, r.genus)?;
    let etype = match etype_resolution(&residual, inputs.window)? {
        Etype::Ambiguous(found) => return Ok(ambiguous(&found)),
        Etype::Unique(res) => res,
    };
    let cone = mapping_cone_n_from_e(&etype, a, b)?;
    Ok(render_resolution(
        inputs,
        &cone.resolution,
        &cone.shared_line_bundles,
        Some((&linkage, &etype)),
    ))
}

fn render_resolution(
    inputs: &Inputs,
    res: &ResolutionTriple,
    shared: &[ql_core::TwistAtom],
    linked: Option<(&CiLinkage, &ResolutionTriple)>,
) -> Output {
    let report = resolution_consistency_check(res, inputs.window);
    let code = if report.passed() { 0 } else { 3 };
    let text = match inputs.format {
        Format::Text => {
            let mut out = format!("{res}\n");
            if let Some((linkage, e)) = linked {
                let _ = writeln!(
                    out,
                    "linked by a complete intersection of type {:?} to degree {}, genus {}: {e}",
                    linkage.degrees(),
                    e.curve.degree(),
                    e.curve.genus()
                );
            }
            if !shared.is_empty() {
                let list: Vec<String> = shared.iter().map(|a| a.to_string()).collect();
                let _ = writeln!(out, "kept in both terms: {}", list.join(" + "));
            }
            out.push_str(&consistency_line(&report, inputs.window));
            out
        }
        Format::Csv => report.to_csv(),
        Format::Json => {
            let mut doc = json!({
                "flavor": res.flavor.to_string(),
                "resolution": res.to_string(),
                "kernel": res.kernel.to_string(),
                "middle": res.middle.to_string(),
                "consistency": consistency_json(&report),
                "shared_line_bundles": shared.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            });
            if let Some((linkage, e)) = linked {
                doc["linked"] = json!({
                    "linkage": linkage.degrees(),
                    "degree": e.curve.degree(),
                    "genus": e.curve.genus(),
                    "resolution": e.to_string(),
                });
            }
            json_text(&doc)
        }
    };
    Output { text, code }
}

fn consistency_line(report: &ConsistencyReport, window: Window) -> String {
    let balance = format!(
        "rank difference {}, c1 difference {}",
        report.rank_difference, report.c1_difference
    );
    if report.passed() {
        format!("consistency on {window}: PASS ({balance})\n")
    } else {
        format!(
            "consistency on {window}: FAIL at twists {:?} ({balance})\n",
            report.failing_twists()
        )
    }
}

fn consistency_json(report: &ConsistencyReport) -> Value {
    let cells: Vec<Value> = report
        .cells
        .iter()
        .map(|c| {
            json!({
                "n": c.n,
                "lhs": c.lhs as i64,
                "rhs": c.rhs.map(number),
                "pass": c.passed(),
            })
        })
        .collect();
    json!({
        "passed": report.passed(),
        "rank_difference": report.rank_difference,
        "c1_difference": report.c1_difference,
        "cells": cells,
    })
}

pub fn verify(format: Format) -> Result<Output, CliError> {
    let results = anchors::verify_all();
    let code = if anchors::all_passed(&results) { 0 } else { 3 };
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            for r in &results {
                let _ = writeln!(out, "{:<20} {:<20} {} [{}]", r.status.label(), r.id, r.claim, r.detail);
            }
            let count = |s: AnchorStatus| results.iter().filter(|r| r.status == s).count();
            let _ = writeln!(
                out,
                "{} anchors: {} PASS, {} EXPECTED-DISCREPANCY, {} FAIL",
                results.len(),
                count(AnchorStatus::Pass),
                count(AnchorStatus::ExpectedDiscrepancy),
                count(AnchorStatus::Fail)
            );
            out
        }
        Format::Csv => {
            let mut out = String::from("id,status,claim,detail\n");
            for r in &results {
                let _ = writeln!(out, "{},{},{},{}", r.id, r.status.label(), csv_field(r.claim), csv_field(&r.detail));
            }
            out
        }
        Format::Json => json_text(&Value::Array(
            results
                .iter()
                .map(|r| json!({ "id": r.id, "status": r.status.label(), "claim": r.claim, "detail": r.detail }))
                .collect(),
        )),
    };
    Ok(Output { text, code })
}
