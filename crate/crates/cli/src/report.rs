//! Machine (JSON) and human (table) renderings of genus reports.

use std::fmt::Write as _;

use serde::Serialize;
use sphgenus::genus::{Hp0, SubsetRow};
use sphgenus::rational::fmt_rational;
use sphgenus::{GenusReport, Scenario};

use crate::scenario::ScenarioFile;

#[derive(Clone, Debug, Serialize)]
pub struct RowJson {
    pub subset: Vec<usize>,
    pub moment_dim: usize,
    pub degree: usize,
    pub no_dim: usize,
    pub defect: i64,
    pub term: String,
    pub interior: String,
}

impl RowJson {
    fn of(r: &SubsetRow) -> Self {
        RowJson {
            subset: r.subset.clone(),
            moment_dim: r.moment_dim,
            degree: r.degree,
            no_dim: r.no_dim,
            defect: r.defect,
            term: fmt_rational(&r.term),
            interior: fmt_rational(&r.interior),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Hp0Json {
    pub p: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

pub fn hp0_json(hp0: &[Hp0]) -> Vec<Hp0Json> {
    hp0.iter()
        .enumerate()
        .map(|(p, h)| match h {
            Hp0::Exact(v) => Hp0Json { p, status: "exact", value: Some(v.to_string()) },
            Hp0::UpperBound(v) => Hp0Json { p, status: "upper_bound", value: Some(v.to_string()) },
            Hp0::Unknown => Hp0Json { p, status: "unknown", value: None },
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub scenario: ScenarioFile,
    pub variety_dim: usize,
    pub k: usize,
    pub independent: bool,
    pub chi: Option<String>,
    pub critical_numbers: Vec<i64>,
    pub hp0: Vec<Hp0Json>,
    pub subsets: Vec<RowJson>,
}

impl ReportJson {
    pub fn of(s: &Scenario, r: &GenusReport) -> Self {
        ReportJson {
            scenario: ScenarioFile::of(s),
            variety_dim: r.variety_dim,
            k: r.k,
            independent: r.independent,
            chi: r.chi.as_ref().map(|c| c.to_string()),
            critical_numbers: r.critical_numbers.iter().copied().collect(),
            hp0: hp0_json(&r.hp0),
            subsets: r.rows.iter().map(RowJson::of).collect(),
        }
    }
}

pub fn subset_label(j: &[usize]) -> String {
    let parts: Vec<String> = j.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn hp0_lines(hp0: &[Hp0]) -> String {
    let mut out = String::new();
    for (p, h) in hp0.iter().enumerate() {
        let _ = match h {
            Hp0::Exact(v) => writeln!(out, "h^({p},0) = {v}  (exact)"),
            Hp0::UpperBound(v) => writeln!(out, "h^({p},0) <= {v}  (bound)"),
            Hp0::Unknown => writeln!(out, "h^({p},0) unknown"),
        };
    }
    out
}

pub fn human(s: &Scenario, r: &GenusReport) -> String {
    let mut out = format!("{} scenario, k = {}, dimension {}\n\n", s.kind(), r.k, r.variety_dim);
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                subset_label(&row.subset),
                row.moment_dim.to_string(),
                row.degree.to_string(),
                row.no_dim.to_string(),
                row.defect.to_string(),
                fmt_rational(&row.term),
                fmt_rational(&row.interior),
            ]
        })
        .collect();
    out.push_str(&table(&["subset", "dim", "deg", "no_dim", "defect", "term", "interior"], &rows));
    out.push('\n');
    if !r.independent {
        out.push_str("independent: no (some defect is negative; the generic intersection is empty)\n");
        return out;
    }
    out.push_str("independent: yes\n");
    if let Some(chi) = &r.chi {
        let _ = writeln!(out, "chi = {chi}");
    }
    let crit: Vec<String> = r.critical_numbers.iter().map(i64::to_string).collect();
    let _ = writeln!(out, "critical numbers: {{{}}}", crit.join(", "));
    out.push_str(&hp0_lines(&r.hp0));
    out
}
