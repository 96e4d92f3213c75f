//! Text renderings other than JSON.

use std::fmt::Write;

use serde::Serialize;

use fiedler_core::admissibility::AdmissibilityReport;
use fiedler_core::json::format_f64;
use fiedler_core::Graph;

/// Undirected DOT; with `phi`, each label carries the value to 6 decimals.
pub fn dot(g: &Graph, phi: Option<&[f64]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match phi {
            Some(phi) => writeln!(out, "  {v} [label=\"{v}\\n{:.6}\"];", phi[v]).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn vertex_csv(column: &str, values: &[f64]) -> String {
    let mut out = format!("vertex,{column}\n");
    for (v, x) in values.iter().enumerate() {
        writeln!(out, "{v},{}", format_f64(*x)).unwrap();
    }
    out
}

pub fn vertex_csv2(a: (&str, &[f64]), b: (&str, &[f64])) -> String {
    let mut out = format!("vertex,{},{}\n", a.0, b.0);
    for (v, (x, y)) in a.1.iter().zip(b.1).enumerate() {
        writeln!(out, "{v},{},{}", format_f64(*x), format_f64(*y)).unwrap();
    }
    out
}

pub fn edge_csv(g: &Graph) -> String {
    let mut out = String::from("u,v\n");
    for (u, v) in g.edges() {
        writeln!(out, "{u},{v}").unwrap();
    }
    out
}

pub fn component_csv(report: &AdmissibilityReport) -> String {
    let mut out = String::from("anchor,size,size_bound,hit,hit_bound,isolated,size_ok,hit_ok\n");
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.anchor,
            row.size,
            format_f64(row.size_bound),
            row.hit.map(format_f64).unwrap_or_default(),
            format_f64(row.hit_bound),
            row.isolated,
            row.size_ok,
            row.hit_ok
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
pub struct EdgeListJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl EdgeListJson {
    pub fn new(g: &Graph) -> Self {
        EdgeListJson {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}
