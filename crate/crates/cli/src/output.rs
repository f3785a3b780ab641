//! Table, JSON and CSV renderings. JSON is the stable machine surface.

use homomesy_core::ReportDocument;
use serde::Serialize;

use crate::{CliError, Format};

#[derive(Clone, Debug, Serialize)]
pub struct ListedOrbit {
    pub rep: String,
    pub period: usize,
    pub average: Vec<String>,
    pub states: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitListing {
    pub map: String,
    pub space: String,
    pub statistic: String,
    pub orbits: Vec<ListedOrbit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    pub family: String,
    pub name: String,
    pub coefficients: Vec<String>,
    pub present: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceDocument {
    pub map: String,
    pub space: String,
    pub coordinates: Vec<String>,
    pub dimension: usize,
    pub basis: Vec<Vec<String>>,
    pub generators: Vec<GeneratorEntry>,
}

fn json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))
}

fn csv(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let fail = |e: &dyn std::fmt::Display| CliError::Usage(format!("cannot write CSV: {e}"));
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(|e| fail(&e))?;
    for row in rows {
        writer.write_record(row).map_err(|e| fail(&e))?;
    }
    let bytes = writer.into_inner().map_err(|e| fail(&e))?;
    String::from_utf8(bytes).map_err(|e| fail(&e))
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn join(v: &[String]) -> String {
    if v.len() == 1 {
        v[0].clone()
    } else {
        format!("({})", v.join(", "))
    }
}

pub fn report(doc: &ReportDocument, format: Format) -> Result<String, CliError> {
    let verdict = match &doc.c {
        Some(c) => format!("homomesic, c = {}", join(c)),
        None => "not homomesic".to_string(),
    };
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .orbits
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    vec![
                        (i + 1).to_string(),
                        o.rep.clone(),
                        o.period.to_string(),
                        o.average.join(" "),
                        doc.homomesic.to_string(),
                        doc.c.as_ref().map(|c| c.join(" ")).unwrap_or_default(),
                    ]
                })
                .collect();
            csv(&strings(&["orbit", "representative", "period", "average", "homomesic", "c"]), &rows)
        }
        Format::Table => {
            let mut out = format!("{} on {}, statistic {}\n", doc.map, doc.space, doc.statistic);
            let rows: Vec<Vec<String>> = doc
                .orbits
                .iter()
                .enumerate()
                .map(|(i, o)| vec![(i + 1).to_string(), o.period.to_string(), join(&o.average), o.rep.clone()])
                .collect();
            out.push_str(&table(&strings(&["orbit", "period", "average", "representative"]), &rows));
            if let Some(g) = &doc.global_average {
                out.push_str(&format!("global average: {}\n", join(g)));
            }
            let noun = if doc.orbits.len() == 1 { "orbit" } else { "orbits" };
            out.push_str(&format!("{} {noun}: {verdict}\n", doc.orbits.len()));
            Ok(out)
        }
    }
}

pub fn orbits(doc: &OrbitListing, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let mut rows = Vec::new();
            for (i, o) in doc.orbits.iter().enumerate() {
                for (j, state) in o.states.iter().enumerate() {
                    let word = o.words.as_ref().map(|w| w[j].clone()).unwrap_or_default();
                    rows.push(vec![(i + 1).to_string(), o.period.to_string(), j.to_string(), state.clone(), word]);
                }
            }
            csv(&strings(&["orbit", "period", "position", "state", "word"]), &rows)
        }
        Format::Table => {
            let mut out = format!("{} on {}, statistic {}\n", doc.map, doc.space, doc.statistic);
            for (i, o) in doc.orbits.iter().enumerate() {
                out.push_str(&format!("orbit {}: period {}, average {}\n", i + 1, o.period, join(&o.average)));
                for (j, state) in o.states.iter().enumerate() {
                    match &o.words {
                        Some(w) => out.push_str(&format!("  {}  {state}\n", w[j])),
                        None => out.push_str(&format!("  {state}\n")),
                    }
                }
            }
            Ok(out)
        }
    }
}

pub fn subspace(doc: &SubspaceDocument, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let mut header = strings(&["kind", "name", "present"]);
            header.extend(doc.coordinates.iter().cloned());
            let mut rows = Vec::new();
            for (i, v) in doc.basis.iter().enumerate() {
                let mut row = vec!["basis".to_string(), format!("v{}", i + 1), String::new()];
                row.extend(v.iter().cloned());
                rows.push(row);
            }
            for g in &doc.generators {
                let mut row = vec![g.family.clone(), g.name.clone(), g.present.to_string()];
                row.extend(g.coefficients.iter().cloned());
                rows.push(row);
            }
            csv(&header, &rows)
        }
        Format::Table => {
            let mut out = format!("{} on {}\nhomomesic subspace dimension: {}\n", doc.map, doc.space, doc.dimension);
            let mut header = vec![String::new()];
            header.extend(doc.coordinates.iter().cloned());
            let rows: Vec<Vec<String>> = doc
                .basis
                .iter()
                .enumerate()
                .map(|(i, v)| std::iter::once(format!("v{}", i + 1)).chain(v.iter().cloned()).collect())
                .collect();
            out.push_str(&table(&header, &rows));
            for g in &doc.generators {
                let mark = if g.present { "present" } else { "absent" };
                out.push_str(&format!("{mark:<8} {}: {}\n", g.family, g.name));
            }
            Ok(out)
        }
    }
}
