//! Text, JSON and CSV rendering for CLI output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::claims::{AuditReport, Verdict};
use crate::closure::ClosureSummary;
use crate::cone::CensusReport;
use crate::triple::{OrbitRecord, Triple};
use crate::verify::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_rows<R: AsRef<[String]>>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row.as_ref()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn key_values(pairs: &[(&str, String)]) -> Vec<[String; 2]> {
    pairs.iter().map(|(k, v)| [k.to_string(), v.clone()]).collect()
}

fn census_pairs(r: &CensusReport) -> Vec<(&'static str, String)> {
    vec![
        ("p_models", r.p_models.to_string()),
        ("p_regular_models", r.p_regular_models.to_string()),
        ("p_very_degenerate_models", r.p_very_degenerate_models.to_string()),
        ("p_symmetric", r.p_symmetric.len().to_string()),
        ("p_regular_cones", r.p_regular_cones.to_string()),
        ("p_declared_cones", r.p_declared_cones.to_string()),
        ("p_cones", r.p_cones.to_string()),
        ("t_models", r.t_models.to_string()),
        ("t_symmetric", r.t_symmetric.to_string()),
        ("t_cones", r.t_cones.to_string()),
        ("total_cones", r.total_cones.to_string()),
    ]
}

fn census_table(r: &CensusReport, out: &mut String) {
    for (k, v) in census_pairs(r) {
        writeln!(out, "{k:<26} {v:>6}").unwrap();
    }
    writeln!(out, "\nsymmetric type P models:").unwrap();
    writeln!(out, "  {:<28} {:>6} {:>8}", "model", "orbit", "stab").unwrap();
    for m in &r.p_symmetric {
        let name = match m.triple {
            Some(t) => format!("{t} {}", m.family),
            None => m.family.clone(),
        };
        writeln!(out, "  {name:<28} {:>6} {:>8}", m.orbit_length, m.symmetry_order).unwrap();
    }
    if !r.findings.is_empty() {
        writeln!(out, "\nfindings:").unwrap();
        for f in &r.findings {
            writeln!(out, "  - {f}").unwrap();
        }
    }
}

pub fn render_census(r: &CensusReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&["key", "value"], key_values(&census_pairs(r))),
        Format::Table => {
            let mut out = String::new();
            census_table(r, &mut out);
            out
        }
    }
}

fn verdict_table(title: &str, verdicts: &[Verdict], out: &mut String) {
    writeln!(out, "{title}:").unwrap();
    writeln!(out, "  {:<4} {:<34} {:>8} {:>8}  {}", "ok", "name", "lhs", "rhs", "expect").unwrap();
    for v in verdicts {
        let ok = if v.as_expected() { "ok" } else { "FAIL" };
        let relation = if v.holds { "==" } else { "!=" };
        writeln!(
            out,
            "  {ok:<4} {:<34} {:>8} {:>8}  {} ({relation})",
            v.name, v.lhs, v.rhs, v.expect
        )
        .unwrap();
    }
}

fn verdict_row(kind: &str, v: &Verdict) -> Vec<String> {
    vec![
        kind.to_string(),
        v.name.clone(),
        v.lhs.to_string(),
        v.rhs.to_string(),
        v.holds.to_string(),
        v.expect.to_string(),
        v.as_expected().to_string(),
        v.cite.clone(),
    ]
}

const VERDICT_HEADER: [&str; 8] = ["kind", "name", "lhs", "rhs", "holds", "expect", "as_expected", "cite"];

pub fn render_audit(r: &AuditReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&VERDICT_HEADER, r.verdicts.iter().map(|v| verdict_row("claim", v))),
        Format::Table => {
            let mut out = String::new();
            verdict_table("claims", &r.verdicts, &mut out);
            if !r.findings.is_empty() {
                writeln!(out, "\nfindings:").unwrap();
                for f in &r.findings {
                    writeln!(out, "  - {f}").unwrap();
                }
            }
            writeln!(out, "\nstatus: {}", status(r.exit_status)).unwrap();
            out
        }
    }
}

fn status(code: i32) -> &'static str {
    if code == 0 {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_verification(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(
            &VERDICT_HEADER,
            r.checks
                .iter()
                .map(|v| verdict_row("check", v))
                .chain(r.claims.verdicts.iter().map(|v| verdict_row("claim", v))),
        ),
        Format::Table => {
            let mut out = String::new();
            census_table(
                &CensusReport {
                    findings: Vec::new(),
                    ..r.census.clone()
                },
                &mut out,
            );
            writeln!(out).unwrap();
            verdict_table("checks", &r.checks, &mut out);
            writeln!(out).unwrap();
            verdict_table("claims", &r.claims.verdicts, &mut out);
            if !r.findings.is_empty() {
                writeln!(out, "\nfindings:").unwrap();
                for f in &r.findings {
                    writeln!(out, "  - {f}").unwrap();
                }
            }
            writeln!(out, "\nstatus: {}", status(r.exit_status)).unwrap();
            out
        }
    }
}

#[derive(Serialize)]
struct OrbitOutput<'a> {
    triple: Triple,
    canonical: Triple,
    orbit_length: usize,
    stabilizer_order: usize,
    members: &'a std::collections::BTreeSet<Triple>,
}

pub fn render_orbit(t: Triple, o: &OrbitRecord, format: Format) -> String {
    let out = OrbitOutput {
        triple: t,
        canonical: o.representative,
        orbit_length: o.len(),
        stabilizer_order: o.stabilizer_order,
        members: &o.members,
    };
    let members: Vec<String> = o.members.iter().map(Triple::to_string).collect();
    match format {
        Format::Json => json(&out),
        Format::Csv => csv_rows(
            &["triple", "canonical", "orbit_length", "stabilizer_order", "members"],
            [[
                t.to_string(),
                o.representative.to_string(),
                o.len().to_string(),
                o.stabilizer_order.to_string(),
                members.join(" "),
            ]],
        ),
        Format::Table => format!(
            "triple            {t}\ncanonical         {}\norbit length      {}\nstabilizer order  {}\nmembers           {}\n",
            o.representative,
            o.len(),
            o.stabilizer_order,
            members.join(" ")
        ),
    }
}

#[derive(Serialize)]
struct ClosureOutput<'a> {
    moves: &'a str,
    class_count: usize,
    expansion_steps: usize,
}

pub fn render_closure(moves: &str, s: ClosureSummary, format: Format) -> String {
    let out = ClosureOutput {
        moves,
        class_count: s.class_count,
        expansion_steps: s.expansion_steps,
    };
    match format {
        Format::Json => json(&out),
        Format::Csv => csv_rows(
            &["moves", "class_count", "expansion_steps"],
            [[moves.to_string(), s.class_count.to_string(), s.expansion_steps.to_string()]],
        ),
        Format::Table => format!(
            "moves             {moves}\nclass count       {}\nexpansion steps   {}\n",
            s.class_count, s.expansion_steps
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_json_keys() {
        let t = Triple::new(1, 1, 1).unwrap();
        let text = render_orbit(t, &t.orbit(), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["orbit_length"], 2);
        assert_eq!(v["stabilizer_order"], 3);
        assert_eq!(v["canonical"], serde_json::json!([-1, -1, -1]));
    }

    #[test]
    fn csv_quotes_commas() {
        let t = Triple::new(0, -1, 1).unwrap();
        let text = render_orbit(t, &t.orbit(), Format::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("triple,canonical,orbit_length,stabilizer_order,members"));
        assert!(lines.next().unwrap().starts_with("\"(0,-1,1)\",\"(-1,1,0)\",3,2,"));
    }
}
