//! Text tables for `--pretty`.

use std::f64::consts::PI;
use std::io::{self, Write};

use qwalk_core::{AnalysisReport, EigenphaseSet, Periodicity, RationalMatrix};

use crate::{OperatorDoc, VerifyReport, WalkDocument};

fn matrix(out: &mut dyn Write, name: &str, labels: &[String], m: &RationalMatrix) -> io::Result<()> {
    let cells = m.entry_strings();
    let width = cells
        .iter()
        .chain(labels)
        .map(String::len)
        .max()
        .unwrap_or(1);
    let label_width = labels.iter().map(String::len).max().unwrap_or(0);
    writeln!(out, "{name}:")?;
    write!(out, "{:label_width$}", "")?;
    for l in labels {
        write!(out, " {l:>width$}")?;
    }
    writeln!(out)?;
    for r in 0..m.rows() {
        write!(out, "{:>label_width$}", labels[r])?;
        for c in 0..m.cols() {
            write!(out, " {:>width$}", cells[r * m.cols() + c])?;
        }
        writeln!(out)?;
    }
    writeln!(out)
}

pub fn walk(out: &mut dyn Write, doc: &WalkDocument) -> io::Result<()> {
    writeln!(out, "input      {}", doc.input)?;
    writeln!(out, "transform  {:?}", doc.transform)?;
    writeln!(out, "graph      {}", doc.graph_hash)?;
    writeln!(out, "dimension  {}", doc.operator.dim())?;
    writeln!(out)?;
    match &doc.operator {
        OperatorDoc::Bipartite(w) => {
            writeln!(out, "C0 = {:?}, C1 = {:?}", w.bipartition.c0, w.bipartition.c1)?;
            let labels: Vec<String> = w.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            matrix(out, "P", &labels, &w.p)?;
            matrix(out, "Q", &labels, &w.q)?;
            matrix(out, "U", &labels, &w.u)
        }
        OperatorDoc::Grover(w) => {
            let labels: Vec<String> = w.arcs.iter().map(|a| format!("{}<{}", a.head, a.tail)).collect();
            matrix(out, "K", &labels, &w.k)?;
            matrix(out, "U", &labels, &w.u)
        }
    }
}

fn spectrum(out: &mut dyn Write, s: &EigenphaseSet) -> io::Result<()> {
    writeln!(out, "spectrum   +1 x{}, -1 x{}", s.plus_one, s.minus_one)?;
    for p in &s.phases {
        let exact = p.exact_cos.as_ref().map(|c| format!("  cos = {c}")).unwrap_or_default();
        writeln!(
            out,
            "           e^(±i {:.6}π) x{}  cos ≈ {:.9}{exact}",
            p.theta / PI,
            p.multiplicity,
            p.cos
        )?;
    }
    Ok(())
}

fn verdict_word(p: Periodicity) -> &'static str {
    match p {
        Periodicity::Periodic => "periodic",
        Periodicity::NonPeriodic => "non-periodic",
        Periodicity::Inconclusive => "inconclusive",
    }
}

pub fn report(out: &mut dyn Write, r: &AnalysisReport) -> io::Result<()> {
    writeln!(out, "input      {}", r.input)?;
    writeln!(out, "graph      {} ({} vertices, {} edges)", r.graph_hash, r.vertices, r.edges)?;
    writeln!(out, "walk       {:?}, transform {:?}, dimension {}", r.kind, r.transform, r.dimension)?;
    let period = r.verdict.period.map(|p| format!(", period {p}")).unwrap_or_default();
    writeln!(out, "verdict    {}{period}", verdict_word(r.verdict.periodic))?;
    let ev = &r.verdict.evidence;
    if let Some(o) = &ev.oracle {
        writeln!(out, "oracle     {}", serde_json::to_string(o).unwrap_or_default())?;
    }
    if let Some(t) = &ev.trace {
        writeln!(out, "trace      {}", serde_json::to_string(t).unwrap_or_default())?;
    }
    if let Some(s) = &ev.spectral {
        writeln!(out, "spectral   {} (d0, d1) = ({}, {})", verdict_word(s.verdict), s.d0, s.d1)?;
        for v in &s.values {
            let order = v.order.map(|o| format!(" order {o}")).unwrap_or_default();
            let mark = if v.allowed { "allowed" } else { "not allowed" };
            writeln!(out, "           λ² = {} x{}  {mark}{order}", v.value, v.multiplicity)?;
        }
    }
    if let Some(g) = &ev.grover {
        writeln!(out, "grover     {} (degree {})", verdict_word(g.verdict), g.degree)?;
        for v in &g.values {
            let mark = if v.allowed { "allowed" } else { "not allowed" };
            writeln!(out, "           λ = {} x{}  {mark}", v.value, v.multiplicity)?;
        }
    }
    if let Some(p) = ev.phase_period {
        writeln!(out, "phases     period {p}")?;
    }
    if let Some(s) = &r.spectrum {
        spectrum(out, s)?;
    }
    if let Some(e) = &r.expected {
        let word = if e.matches { "matches" } else { "differs" };
        writeln!(out, "expected   period {} ({word})", e.period)?;
    }
    for note in &r.verdict.notes {
        writeln!(out, "note       {note}")?;
    }
    writeln!(out, "elapsed    {:.1} ms", r.elapsed_ms)
}

pub fn scan(out: &mut dyn Write, reports: &[&AnalysisReport]) -> io::Result<()> {
    writeln!(out, "{:<20} {:>5} {:<13} {:<13} {:>7}  hash", "graph", "edges", "spectral", "verdict", "period")?;
    for r in reports {
        let spectral = r
            .verdict
            .evidence
            .spectral
            .as_ref()
            .map_or("-", |s| verdict_word(s.verdict));
        let period = r.verdict.period.map_or("-".to_string(), |p| p.to_string());
        let flag = if r.verdict.disagreement { "  DISAGREEMENT" } else { "" };
        writeln!(
            out,
            "{:<20} {:>5} {:<13} {:<13} {:>7}  {}{flag}",
            r.input,
            r.edges,
            spectral,
            verdict_word(r.verdict.periodic),
            period,
            &r.graph_hash[..12]
        )?;
    }
    Ok(())
}

pub fn verify(out: &mut dyn Write, r: &VerifyReport) -> io::Result<()> {
    let word = |b: bool| if b { "pass" } else { "FAIL" };
    writeln!(out, "input                     {}", r.input)?;
    writeln!(out, "graph                     {} ({} vertices, {} edges)", r.graph_hash, r.vertices, r.edges)?;
    writeln!(out, "U_GW(G) = U_BW(S(G))      {}", word(r.grover_subdivision))?;
    if r.block_identity.is_empty() {
        writeln!(out, "block identity            skipped (not bipartite)")?;
    }
    for b in &r.block_identity {
        writeln!(out, "block identity, k = {:<5} {}", b.k, word(b.passed))?;
    }
    writeln!(out, "overall                   {}", word(r.passed))
}
