//! Text and CSV views of the output records. The CSV column order is part of
//! the frozen format contract; text output is for humans and starts with the
//! bare polynomial so it can be scraped with `head -1`.

use std::fmt::Write as _;
use std::io;

use super::output::{ClassCount, DiagnosticsRecord, OutputRecord};
use crate::oracle::VerificationReport;

fn class_list(counts: &[ClassCount]) -> String {
    if counts.is_empty() {
        return "none".into();
    }
    counts
        .iter()
        .map(|c| format!("mu={}: {}", c.mu, c.count))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn compute_text(record: &OutputRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", record.polynomial.text);
    let _ = writeln!(out, "instance: p={} n={}", record.p, record.n);
    let c = &record.edge_census;
    let _ = writeln!(
        out,
        "edges: {} (a1={}, a2={}; e1={}, e2={}, e3={})",
        c.total, c.a1, c.a2, c.e1, c.e2, c.e3
    );
    let _ = writeln!(out, "cross-class: {}", class_list(&c.cross));
    let _ = writeln!(out, "within-class: {}", class_list(&c.within));
    let _ = writeln!(out, "single-move: {}", class_list(&c.single_move));
    let ix = &record.indices;
    let _ = writeln!(out, "M1 = {}", ix.m1);
    let _ = writeln!(out, "M2 = {}", ix.m2);
    let _ = writeln!(out, "F = {}", ix.f);
    for (label, v) in [
        ("MM2", &ix.mm2),
        ("SSD", &ix.ssd),
        ("H", &ix.h),
        ("ISI", &ix.isi),
        ("A", &ix.a),
    ] {
        match &v.exact {
            Some(exact) => {
                let _ = writeln!(out, "{label} = {} (= {exact})", v.decimal);
            }
            None => {
                let _ = writeln!(out, "{label} = {}", v.decimal);
            }
        }
    }
    for (prefix, values) in [("R", &ix.r_alpha), ("RR", &ix.rr_alpha)] {
        for v in values.iter() {
            match &v.exact {
                Some(exact) => {
                    let _ = writeln!(out, "{prefix}[{}] = {} (= {exact})", v.alpha, v.decimal);
                }
                None => {
                    let _ = writeln!(out, "{prefix}[{}] = {}", v.alpha, v.decimal);
                }
            }
        }
    }
    if let Some(v) = &record.verification {
        let _ = writeln!(
            out,
            "verification: {} ({} states enumerated)",
            if v.passed { "PASS" } else { "FAIL" },
            v.states
        );
        for check in v.checks.iter().filter(|c| !c.ok) {
            let _ = writeln!(
                out,
                "  [MISMATCH] {}: expected {}, got {}",
                check.name, check.expected, check.actual
            );
        }
    }
    out
}

pub fn verify_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "verify p={} n={}: {} states enumerated",
        report.params.p(),
        report.params.n(),
        report.states_enumerated
    );
    for check in &report.checks {
        if check.ok() {
            let _ = writeln!(out, "  [ok] {}: {}", check.name, check.actual);
        } else {
            let _ = writeln!(
                out,
                "  [MISMATCH] {}: expected {}, got {}",
                check.name, check.expected, check.actual
            );
        }
    }
    if report.passed() {
        let _ = writeln!(out, "PASS ({} edges)", report.edges_enumerated);
    } else {
        let failed = report.checks.iter().filter(|c| !c.ok()).count();
        let _ = writeln!(
            out,
            "FAIL ({} of {} checks mismatched)",
            failed,
            report.checks.len()
        );
    }
    out
}

pub fn diagnostics_text(record: &DiagnosticsRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "literal coefficient formulas vs canonical census for p={} n={}",
        record.p, record.n
    );
    if record.entries.is_empty() {
        let _ = writeln!(out, "  (empty polynomial, nothing to compare)");
    }
    for e in &record.entries {
        let flag = if e.diverges { "  [DIVERGES]" } else { "" };
        let _ = writeln!(
            out,
            "  {} at x^{} y^{}: literal {}, canonical {}{flag}",
            e.family, e.i, e.j, e.literal, e.canonical
        );
    }
    let _ = writeln!(
        out,
        "  literal total {} vs canonical edge count {}",
        record.literal_total, record.canonical_total
    );
    if let Some(top) = &record.compact_top {
        let flag = if top.matches { "" } else { "  [DIVERGES]" };
        let _ = writeln!(
            out,
            "  compact top-coefficient identity: claimed {}, canonical {}{flag}",
            top.claimed, top.canonical
        );
    }
    out
}

const SWEEP_COLUMNS: [&str; 11] = [
    "p", "n", "E", "M1", "M2", "MM2", "SSD", "H", "ISI", "A", "F",
];
const SWEEP_EXACT_COLUMNS: [&str; 5] = [
    "MM2_exact", "SSD_exact", "H_exact", "ISI_exact", "A_exact",
];

/// One row per record, columns as frozen in docs/FORMATS.md. `exact` appends
/// the num/den renderings of the rational-valued columns.
pub fn write_sweep_csv<W: io::Write>(
    writer: W,
    records: &[OutputRecord],
    exact: bool,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = SWEEP_COLUMNS.to_vec();
    if exact {
        header.extend_from_slice(&SWEEP_EXACT_COLUMNS);
    }
    w.write_record(&header)?;
    for r in records {
        let ix = &r.indices;
        let mut row = vec![
            r.p.to_string(),
            r.n.to_string(),
            r.edge_census.total.clone(),
            ix.m1.clone(),
            ix.m2.clone(),
            ix.mm2.decimal.clone(),
            ix.ssd.decimal.clone(),
            ix.h.decimal.clone(),
            ix.isi.decimal.clone(),
            ix.a.decimal.clone(),
            ix.f.clone(),
        ];
        if exact {
            for v in [&ix.mm2, &ix.ssd, &ix.h, &ix.isi, &ix.a] {
                row.push(v.exact.clone().unwrap_or_default());
            }
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
