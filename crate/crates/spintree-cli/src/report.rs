//! Machine-readable reports.
//!
//! The structured report goes to stdout as JSON with every float printed at
//! 15 significant digits, so identical runs produce byte-identical output.
//! Wall time is shown only on the human-readable side (`--pretty`).

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preset: Option<String>,
    pub tree: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree2: Option<String>,
    pub spins: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<SpectrumSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rewrite: Option<RewriteSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub two_tree: Option<TwoTreeSection>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(pass: bool) -> Verdict {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Verdict,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub numeric: Vec<Level>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted: Option<Vec<Level>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub comparison: Option<ComparisonSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSection {
    pub level_counts_match: bool,
    pub multiplicities_match: bool,
    pub max_energy_deviation: f64,
    pub status: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: String,
    pub node: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewriteSection {
    pub moves: Vec<MoveRecord>,
    pub replay_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoTreeSection {
    pub common_nodes: Vec<String>,
    pub lift_equality: Vec<EqualityRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hamiltonian_in_common_algebra: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityRecord {
    pub element: String,
    pub node: String,
    pub deviation: f64,
}

/// serde_json formatter pinning floats to 15 significant digits.
struct FixedPrecision;

impl serde_json::ser::Formatter for FixedPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.14e}")
    }
}

pub fn to_json(report: &Report) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedPrecision);
    report
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// CSV export of the numeric (and, when present, predicted) levels.
pub fn write_spectrum_csv(
    path: &std::path::Path,
    section: &SpectrumSection,
) -> Result<(), CliError> {
    let mut out = String::from("energy,multiplicity,source\n");
    for level in &section.numeric {
        out.push_str(&format!(
            "{:.14e},{},numeric\n",
            level.energy, level.multiplicity
        ));
    }
    if let Some(predicted) = &section.predicted {
        for level in predicted {
            out.push_str(&format!(
                "{:.14e},{},predicted\n",
                level.energy, level.multiplicity
            ));
        }
    }
    std::fs::write(path, out)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}
