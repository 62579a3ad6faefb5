//! Bit-stable serializations: sorted sparse entries, scalars as `num/den` strings.

use exact_linalg::scalar::format;
use exact_linalg::{KernelSolver, Strategy};
use exceptional_core::albert::{AlbertTensors, SparseVector, DIM as ALBERT_DIM};
use exceptional_core::brown;
use exceptional_core::constants::ZORN_SIGNS;
use exceptional_core::jordan_similitudes as js;
use exceptional_core::lie::LieSubalgebraReport;
use exceptional_core::octonion;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::calibration::CalibrationFile;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    OctonionTable,
    AlbertTensor,
    BrownTTensor,
    LieBasis(String),
}

pub const LIE_BASES: [&str; 9] =
    ["der-j", "sim-j", "stab-l", "stab-lines", "aut-lv", "fix-one", "sim-b", "stab-one", "stab-pair"];

impl Structure {
    pub fn parse(s: &str) -> Option<Structure> {
        match s {
            "octonion-table" => Some(Structure::OctonionTable),
            "albert-tensor" => Some(Structure::AlbertTensor),
            "brown-t-tensor" => Some(Structure::BrownTTensor),
            _ => {
                let name = s.strip_prefix("lie-basis:")?;
                LIE_BASES.contains(&name).then(|| Structure::LieBasis(name.to_string()))
            }
        }
    }

    pub fn needs_calibration(&self) -> bool {
        match self {
            Structure::BrownTTensor => true,
            Structure::LieBasis(n) => matches!(n.as_str(), "sim-b" | "stab-one" | "stab-pair"),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

fn hash_lines(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

fn csv(header: &str, lines: &[String]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
    out
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn octonion_table(format_: Format) -> String {
    let mut entries = octonion::structure_constants(ZORN_SIGNS);
    entries.sort_by_key(|e| (e.0, e.1, e.2));
    let lines: Vec<String> = entries.iter().map(|(i, j, k, v)| format!("{i},{j},{k},{}", format(v))).collect();
    match format_ {
        Format::Csv => csv("i,j,k,value", &lines),
        Format::Json => pretty(json!({
            "structure": "octonion-table",
            "dim": octonion::DIM,
            "entries": entries.iter().map(|(i, j, k, v)| json!([i, j, k, format(v)])).collect::<Vec<_>>(),
            "hash": hash_lines(&lines),
        })),
    }
}

fn sparse_lines(kind: &str, entries: &[((usize, usize), SparseVector)]) -> Vec<(String, [usize; 3], String)> {
    let mut out = Vec::new();
    for ((a, b), v) in entries {
        for (c, x) in v {
            out.push((kind.to_string(), [*a, *b, *c], format(x)));
        }
    }
    out.sort();
    out
}

fn albert_tensor(format_: Format) -> String {
    let t = AlbertTensors::compute();
    let jordan = sparse_lines("jordan", &t.jordan);
    let mut norm: Vec<(String, [usize; 3], String)> =
        t.norm_polar.iter().map(|((a, b, c), v)| ("norm".to_string(), [*a, *b, *c], format(v))).collect();
    norm.sort();
    let lines: Vec<String> =
        jordan.iter().chain(&norm).map(|(k, [a, b, c], v)| format!("{k},{a},{b},{c},{v}")).collect();
    match format_ {
        Format::Csv => csv("kind,a,b,c,value", &lines),
        Format::Json => pretty(json!({
            "structure": "albert-tensor",
            "dim": ALBERT_DIM,
            "jordan": jordan.iter().map(|(_, i, v)| json!([i[0], i[1], i[2], v])).collect::<Vec<_>>(),
            "norm_polar": norm.iter().map(|(_, i, v)| json!([i[0], i[1], i[2], v])).collect::<Vec<_>>(),
            "hash": hash_lines(&lines),
        })),
    }
}

fn brown_t_tensor(format_: Format, calibration: Option<&CalibrationFile>) -> Result<String, CliError> {
    let fts = CalibrationFile::brown(calibration)?.structure()?;
    let t = &fts.t_tensor;
    Ok(match format_ {
        Format::Csv => csv("a,b,c,k,value", &t.csv_lines()),
        Format::Json => pretty(json!({
            "structure": "brown-t-tensor",
            "b_sign": fts.b_sign,
            "quartic_coeffs": fts.quartic_coeffs.iter().map(format).collect::<Vec<_>>(),
            "entries": t.sorted_entries(),
            "hash": t.content_hash(),
        })),
    })
}

/// Computes the named Lie algebra basis.
pub fn lie_basis(
    name: &str,
    solver: &KernelSolver,
    calibration: Option<&CalibrationFile>,
) -> Result<LieSubalgebraReport, CliError> {
    let linalg = |e: exact_linalg::LinalgError| CliError::Computation(e.to_string());
    match name {
        "der-j" => js::derivation_algebra_with(solver, Strategy::FractionFree).map_err(linalg),
        "sim-j" => js::similitude_algebra_with(solver, Strategy::FractionFree).map_err(linalg),
        "stab-l" | "stab-lines" | "aut-lv" | "fix-one" => {
            let der = js::derivation_algebra_with(solver, Strategy::FractionFree).map_err(linalg)?;
            let sim = js::similitude_algebra_with(solver, Strategy::FractionFree).map_err(linalg)?;
            let st = js::stabilizer_dimensions(solver, &der, &sim).map_err(linalg)?;
            let found = st.reports().into_iter().find(|r| r.name == name).cloned();
            Ok(found.expect("named report"))
        }
        "sim-b" | "stab-one" | "stab-pair" => {
            let fts = CalibrationFile::brown(calibration)?.structure()?;
            let sim = brown::similitude_algebra_b(solver, &fts).map_err(linalg)?.report;
            if name == "sim-b" {
                return Ok(sim);
            }
            let st = brown::stabilizer_dimensions_b(solver, &sim).map_err(linalg)?;
            Ok(if name == "stab-one" { st.stab_one } else { st.stab_pair })
        }
        _ => Err(CliError::Usage(format!("unknown Lie basis {name:?}; known: {}", LIE_BASES.join(", ")))),
    }
}

pub fn dump(
    structure: &Structure,
    format_: Format,
    solver: &KernelSolver,
    calibration: Option<&CalibrationFile>,
) -> Result<String, CliError> {
    match structure {
        Structure::OctonionTable => Ok(octonion_table(format_)),
        Structure::AlbertTensor => Ok(albert_tensor(format_)),
        Structure::BrownTTensor => brown_t_tensor(format_, calibration),
        Structure::LieBasis(name) => {
            let report = lie_basis(name, solver, calibration)?;
            Ok(match format_ {
                Format::Json => pretty(serde_json::to_value(report.to_json(true)).expect("report serializes")),
                Format::Csv => {
                    let mut lines = Vec::new();
                    for (i, v) in report.vectors().iter().enumerate() {
                        for (k, x) in v.iter().enumerate().filter(|(_, x)| !num_traits::Zero::is_zero(*x)) {
                            lines.push(format!("{i},{k},{}", format(x)));
                        }
                    }
                    csv("vector,coordinate,value", &lines)
                }
            })
        }
    }
}
