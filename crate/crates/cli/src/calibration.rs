//! The calibration file: frozen conventions plus a content hash, read before any Brown run.

use std::path::Path;

use exact_linalg::scalar::{format, parse};
use exact_linalg::{KernelSolver, Scalar};
use exceptional_core::brown::{self, FtsStructure};
use exceptional_core::jordan_similitudes::{self, MoufangPlacement};
use exceptional_core::octonion::{self, ZornSigns};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    OctonionSigns,
    MoufangSlots,
    BrownFts,
    All,
}

impl Target {
    pub fn parse(s: &str) -> Option<Target> {
        match s {
            "octonion-signs" => Some(Target::OctonionSigns),
            "moufang-slots" => Some(Target::MoufangSlots),
            "brown-fts" => Some(Target::BrownFts),
            "all" => Some(Target::All),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrownCalibration {
    pub b_sign: i64,
    pub c1: String,
    pub c2: String,
    pub c4: String,
    /// Grid points `(c2, c4)` that produced dimension 134.
    pub successes: Vec<(i64, i64)>,
    pub t_tensor_entries: usize,
    pub t_tensor_hash: String,
}

impl BrownCalibration {
    pub fn coefficients(&self) -> Result<[Scalar; 3], CliError> {
        let p = |s: &str| parse(s).map_err(|e| CliError::Calibration(format!("bad coefficient: {e}")));
        Ok([p(&self.c1)?, p(&self.c2)?, p(&self.c4)?])
    }

    /// Rebuilds the structure and checks it against the recorded tensor hash.
    pub fn structure(&self) -> Result<FtsStructure, CliError> {
        let fts = FtsStructure::new(self.b_sign, self.coefficients()?);
        if fts.content_hash() != self.t_tensor_hash {
            return Err(CliError::MissingCalibration(
                "t-tensor hash in the calibration file does not match the rebuilt tensor".into(),
            ));
        }
        Ok(fts)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationContent {
    pub octonion_signs: Option<ZornSigns>,
    pub moufang_slots: Option<MoufangPlacement>,
    pub brown_fts: Option<BrownCalibration>,
}

impl CalibrationContent {
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("content serializes");
        format!("{:x}", Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationFile {
    #[serde(flatten)]
    pub content: CalibrationContent,
    pub hash: String,
}

impl CalibrationFile {
    pub fn new(content: CalibrationContent) -> Self {
        let hash = content.hash();
        CalibrationFile { content, hash }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("calibration serializes");
        s.push('\n');
        s
    }

    /// Reads and hash-checks a calibration file. `Ok(None)` if it does not exist.
    pub fn load(path: &Path) -> Result<Option<CalibrationFile>, CliError> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::Io(format!("{}: {e}", path.display()))),
        };
        let file: CalibrationFile = serde_json::from_str(&text)
            .map_err(|e| CliError::MissingCalibration(format!("{} is not a calibration file: {e}", path.display())))?;
        if file.content.hash() != file.hash {
            return Err(CliError::MissingCalibration(format!("hash mismatch in {}", path.display())));
        }
        Ok(Some(file))
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    /// The Brown section, or the "run calibrate" error.
    pub fn brown(file: Option<&CalibrationFile>) -> Result<&BrownCalibration, CliError> {
        file.and_then(|f| f.content.brown_fts.as_ref()).ok_or_else(|| {
            CliError::MissingCalibration(
                "no brown-fts calibration found; run `calibrate --target brown-fts` first".into(),
            )
        })
    }
}

pub fn calibrate_brown(solver: &KernelSolver) -> Result<BrownCalibration, CliError> {
    let cal = brown::calibrate_fts(solver).map_err(|e| CliError::Calibration(e.to_string()))?;
    let s = &cal.structure;
    Ok(BrownCalibration {
        b_sign: s.b_sign,
        c1: format(&s.quartic_coeffs[0]),
        c2: format(&s.quartic_coeffs[1]),
        c4: format(&s.quartic_coeffs[2]),
        successes: cal.successes,
        t_tensor_entries: s.t_tensor.len(),
        t_tensor_hash: s.content_hash(),
    })
}

/// Runs the requested searches and merges their results into `existing`.
pub fn calibrate(
    target: Target,
    solver: &KernelSolver,
    existing: Option<CalibrationFile>,
) -> Result<CalibrationFile, CliError> {
    let mut content = existing.map(|f| f.content).unwrap_or_default();
    let calib = |e: exceptional_core::CalibrationError| CliError::Calibration(e.to_string());
    if matches!(target, Target::OctonionSigns | Target::All) {
        content.octonion_signs = Some(octonion::calibrate_signs().map_err(calib)?);
    }
    if matches!(target, Target::MoufangSlots | Target::All) {
        content.moufang_slots = Some(jordan_similitudes::calibrate_moufang_slots().map_err(calib)?);
    }
    if matches!(target, Target::BrownFts | Target::All) {
        content.brown_fts = Some(calibrate_brown(solver)?);
    }
    Ok(CalibrationFile::new(content))
}
