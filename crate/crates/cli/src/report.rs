//! Text and JSON renderings of module reports.

use std::fmt::Write;

use anyhow::Result;
use serde_json::{json, Value};

use equicut::boundary::{clock_turning, find_lemma_pattern, AngleClass, BoundaryLoop, LatticeRegion};
use equicut::dissect::{is_standard, Dissection, Failure, VerificationReport};
use equicut::relations::{Certification, Method, RelationReport};
use equicut::search::TileOutcome;

fn certification(c: Certification) -> &'static str {
    match c {
        Certification::Exact => "exact",
        Certification::IntervalOnly => "interval-only",
    }
}

fn method_text(m: &Method) -> String {
    match m {
        Method::Direct => "direct field membership".into(),
        Method::Enumeration { vectors } => format!("enumerated {vectors} vectors"),
        Method::Lattice { bits, .. } => format!("lattice certificate at {bits} bits"),
    }
}

const TEXT_WITNESSES: usize = 8;

pub fn relation_text(label: &str, r: &RelationReport) -> String {
    let mut s = format!(
        "{label} (H = {}): {} [{}]\n",
        r.height,
        r.status,
        method_text(&r.method)
    );
    for w in r.witnesses.iter().take(TEXT_WITNESSES) {
        let _ = writeln!(s, "  witness {w} [{}]", certification(w.certification));
    }
    if r.witnesses.len() > TEXT_WITNESSES {
        let _ = writeln!(s, "  ... {} more (see --json)", r.witnesses.len() - TEXT_WITNESSES);
    }
    for u in &r.undecided {
        let _ = writeln!(s, "  undecided {u:?}");
    }
    s
}

pub fn relation_json(r: &RelationReport) -> Value {
    json!({
        "status": r.status.to_string(),
        "height": r.height,
        "method": method_text(&r.method),
        "witnesses": r.witnesses.iter().map(|w| json!({
            "coefficients": w.coefficients.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "certification": certification(w.certification),
        })).collect::<Vec<_>>(),
        "undecided": r.undecided,
    })
}

fn failure_text(f: &Failure) -> String {
    match f {
        Failure::Overlap { first, second } => format!("overlap: pieces {first} and {second}"),
        Failure::OutsideRegion { piece } => format!("outside region: piece {piece}"),
        Failure::AreaMismatch { pieces, region } => {
            format!("area mismatch: pieces {pieces}, region {region} (twice the area)")
        }
        Failure::CongruenceMismatch { piece, mirrored } => {
            format!(
                "congruence mismatch: piece {piece}{}",
                if *mirrored { " (mirror image)" } else { "" }
            )
        }
    }
}

pub fn verification_text(d: &Dissection, rep: &VerificationReport) -> String {
    let mut s = format!(
        "{} pieces: {}\n",
        d.pieces.len(),
        if rep.valid { "valid" } else { "invalid" }
    );
    if rep.valid {
        let _ = writeln!(s, "standard: {}", is_standard(d));
    }
    for f in &rep.failures {
        let _ = writeln!(s, "  {}", failure_text(f));
    }
    s
}

pub fn verification_json(d: &Dissection, rep: &VerificationReport) -> Value {
    json!({
        "pieces": d.pieces.len(),
        "valid": rep.valid,
        "standard": rep.valid && is_standard(d),
        "failures": rep.failures.iter().map(failure_text).collect::<Vec<_>>(),
    })
}

fn tile_text(o: &TileOutcome) -> String {
    o.tile.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn outcome_text(o: &TileOutcome) -> String {
    let kind = if o.similar { "similar tile" } else { "tile" };
    let mut s = format!("{kind} ({}): ", tile_text(o));
    match (&o.result, &o.notice) {
        (Some(r), _) => {
            let standard = r.dissections.iter().filter(|d| is_standard(d)).count();
            let _ = writeln!(
                s,
                "{} found ({standard} standard), nodes {}, {}",
                r.dissections.len(),
                r.nodes,
                if r.complete { "complete" } else { "incomplete" }
            );
        }
        (None, Some(n)) => {
            let _ = writeln!(s, "{n}");
        }
        (None, None) => s.push_str("skipped\n"),
    }
    s
}

pub fn outcome_json(o: &TileOutcome) -> Value {
    json!({
        "tile": o.tile.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "similar": o.similar,
        "notice": o.notice,
        "found": o.result.as_ref().map(|r| r.dissections.len()),
        "standard": o.result.as_ref().map(|r| r.dissections.iter().filter(|d| is_standard(d)).count()),
        "nodes": o.result.as_ref().map(|r| r.nodes),
        "complete": o.result.as_ref().map(|r| r.complete),
    })
}

fn steps(l: &BoundaryLoop) -> Vec<i8> {
    l.angles.iter().map(|a| a.step).collect()
}

pub fn boundary_text(r: &LatticeRegion, loops: &[BoundaryLoop]) -> Result<String> {
    let mut s = format!("n = {}, {} cells, {} loops\n", r.n(), r.cells().len(), loops.len());
    for (k, l) in loops.iter().enumerate() {
        let convex = l.angles.iter().filter(|a| a.class == AngleClass::Convex).count();
        let _ = writeln!(
            s,
            "loop {k} ({}): {} vertices, {convex} convex, turning {}",
            if l.is_outer() { "outer" } else { "hole" },
            l.len(),
            clock_turning(l)?
        );
        let _ = writeln!(s, "  steps {:?}", steps(l));
        if l.is_outer() {
            match find_lemma_pattern(l) {
                Some(p) => {
                    let _ = writeln!(s, "  pattern: {p}");
                }
                None => s.push_str("  pattern: none\n"),
            }
        }
    }
    Ok(s)
}

pub fn boundary_json(r: &LatticeRegion, loops: &[BoundaryLoop]) -> Result<Value> {
    let loops = loops
        .iter()
        .map(|l| {
            Ok(json!({
                "outer": l.is_outer(),
                "vertices": l.vertices,
                "steps": steps(l),
                "turning": clock_turning(l)?,
                "pattern": find_lemma_pattern(l).map(|p| p.to_string()),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "n": r.n(), "cells": r.cells().len(), "loops": loops }))
}
