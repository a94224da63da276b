//! File formats: state files, ensemble CSV, and JSON reports.
//!
//! Floats are always written in shortest round-trip form, so parsing a
//! written value gives back the identical bits.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::C64;
use crate::measures::{profile, ResourceProfile};
use crate::relations::{RelationKind, TheoremReport};
use crate::states::{make_state, HaarStream, PureState3, SamplerConfig, RNG_ALGORITHM};
use crate::tolerance::Tolerances;

pub const CONVENTION: &str = "A-msb";

pub const SAMPLE_HEADER: [&str; 13] = [
    "index",
    "ggm",
    "gmc",
    "fill",
    "coherence",
    "s_ab",
    "s_ac",
    "s_bc",
    "s_max",
    "a",
    "b",
    "c",
    "q",
];

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported basis convention {0:?}, expected \"A-msb\"")]
    Convention(String),
    #[error("expected 8 amplitudes, found {0}")]
    AmplitudeCount(usize),
    #[error(transparent)]
    State(#[from] crate::Error),
}

impl FormatError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        FormatError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// I/O failures as opposed to malformed content.
    pub fn is_io(&self) -> bool {
        matches!(self, FormatError::Io { .. })
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Serialize, Deserialize)]
struct StateJson {
    convention: String,
    amplitudes: Vec<[f64; 2]>,
}

/// Amplitudes already normalized within tolerance are taken verbatim so a
/// written state reads back bit-for-bit; anything else is normalized.
fn state_from_pairs(pairs: &[[f64; 2]]) -> Result<PureState3, FormatError> {
    let amps: [C64; 8] = pairs
        .iter()
        .map(|&[re, im]| C64::new(re, im))
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|v: Vec<C64>| FormatError::AmplitudeCount(v.len()))?;
    match PureState3::from_normalized(amps) {
        Ok(s) => Ok(s),
        Err(crate::Error::NotNormalized { .. }) => Ok(make_state(amps)?.state),
        Err(e) => Err(e.into()),
    }
}

fn amplitude_pairs(state: &PureState3) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

pub fn state_to_json(state: &PureState3) -> String {
    let doc = StateJson {
        convention: CONVENTION.to_string(),
        amplitudes: amplitude_pairs(state),
    };
    serde_json::to_string_pretty(&doc).expect("state serializes")
}

pub fn state_from_json(text: &str) -> Result<PureState3, FormatError> {
    let doc: StateJson = serde_json::from_str(text)?;
    if doc.convention != CONVENTION {
        return Err(FormatError::Convention(doc.convention));
    }
    state_from_pairs(&doc.amplitudes)
}

/// Eight lines of `re im`.
pub fn state_to_text(state: &PureState3) -> String {
    let mut out = String::new();
    for z in state.amplitudes() {
        writeln!(out, "{} {}", fmt_f64(z.re), fmt_f64(z.im)).unwrap();
    }
    out
}

pub fn state_from_text(text: &str) -> Result<PureState3, FormatError> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| FormatError::Parse {
                line: i + 1,
                message: format!("{s:?}: {e}"),
            })
        };
        match fields.as_slice() {
            [re, im] => pairs.push([parse(re)?, parse(im)?]),
            _ => {
                return Err(FormatError::Parse {
                    line: i + 1,
                    message: format!("expected \"re im\", found {} fields", fields.len()),
                })
            }
        }
    }
    state_from_pairs(&pairs)
}

/// Accepts either format; JSON is recognized by a leading `{`.
pub fn parse_state(text: &str) -> Result<PureState3, FormatError> {
    if text.trim_start().starts_with('{') {
        state_from_json(text)
    } else {
        state_from_text(text)
    }
}

pub fn read_state(path: &Path) -> Result<PureState3, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
    parse_state(&text)
}

/// Provenance attached to every artifact.
///
/// `timestamp` is left out of CSV and SVG output so that reruns with the
/// same seed stay byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub n_samples: u64,
    pub tolerances: Tolerances,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunMetadata {
    pub fn new(seed: u64, n_samples: u64, tolerances: Tolerances) -> Self {
        Self {
            seed,
            rng_algorithm: RNG_ALGORITHM,
            n_samples,
            tolerances,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: None,
        }
    }

    pub fn with_timestamp(mut self) -> Self {
        self.timestamp = Some(chrono::Utc::now().to_rfc3339());
        self
    }

    /// `key: value` lines without any comment prefix.
    pub fn lines(&self) -> Vec<String> {
        let mut v = vec![
            format!("tool: tripartite {}", self.tool_version),
            format!("seed: {}", self.seed),
            format!("rng_algorithm: {}", self.rng_algorithm),
            format!("n_samples: {}", self.n_samples),
            format!("tolerances: {}", self.tolerances),
            format!("convention: {CONVENTION}"),
        ];
        if let Some(t) = &self.timestamp {
            v.push(format!("timestamp: {t}"));
        }
        v
    }
}

/// Profiles of samples `0..count` in index order, computed in parallel.
pub fn ensemble_profiles(config: SamplerConfig) -> crate::Result<Vec<ResourceProfile>> {
    let stream = HaarStream::new(config.seed());
    (0..config.count() as u64)
        .into_par_iter()
        .map(|i| profile(&stream.state(i)))
        .collect()
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn sample_row(index: usize, p: &ResourceProfile) -> [String; 13] {
    let s = &p.steering_pairs;
    [
        index.to_string(),
        fmt_f64(p.ggm),
        fmt_f64(p.gmc),
        fmt_f64(p.fill),
        fmt_f64(p.coherence),
        fmt_f64(s.ab),
        fmt_f64(s.ac),
        fmt_f64(s.bc),
        fmt_f64(p.steering_max),
        fmt_f64(p.sides.a),
        fmt_f64(p.sides.b),
        fmt_f64(p.sides.c),
        fmt_f64(p.half_perimeter),
    ]
}

/// Writes `#`-prefixed metadata, the header, and one row per profile.
pub fn write_samples_csv<W: Write>(
    mut out: W,
    meta: &RunMetadata,
    profiles: &[ResourceProfile],
) -> std::io::Result<()> {
    for line in meta.lines() {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv_writer(out);
    w.write_record(SAMPLE_HEADER)?;
    for (i, p) in profiles.iter().enumerate() {
        w.write_record(sample_row(i, p))?;
    }
    w.flush()
}

/// Reads the numeric columns of a CSV written by [`write_samples_csv`] or
/// the figure exporter; returns the header and the rows.
pub fn read_numeric_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), FormatError> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|e| FormatError::Parse {
                    line: i + 2,
                    message: format!("{f:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

pub fn profile_to_json(p: &ResourceProfile) -> String {
    serde_json::to_string_pretty(p).expect("profile serializes")
}

pub fn report_to_json(report: &TheoremReport, meta: &RunMetadata) -> Value {
    let relations: Vec<Value> = report
        .relations
        .iter()
        .map(|r| {
            let (stat_key, kind) = match r.id.kind() {
                RelationKind::Equality => ("max_residual", "equality"),
                RelationKind::Inequality => ("min_slack", "inequality"),
            };
            let worst = r.worst.first();
            let mut obj = json!({
                "id": r.id.name(),
                "kind": kind,
                stat_key: r.statistic,
                "pass": r.pass,
                "n_applicable": r.n_applicable,
                "n_failed": r.n_failed,
                "worst_index": worst.map(|w| w.index),
                "worst_state": worst.map(|w| amplitude_pairs(&w.state)),
                "n_samples": report.n_samples,
                "seed": report.seed,
                "rng_algorithm": report.rng_algorithm,
                "tol": report.tol,
            });
            obj["worst_cases"] = r
                .worst
                .iter()
                .map(|w| json!({ "index": w.index, "value": w.value }))
                .collect();
            obj
        })
        .collect();
    json!({
        "pass": report.pass(),
        "metadata": meta,
        "ggm_domain_violations": report.ggm_domain_violations,
        "evaluation_errors": report
            .evaluation_errors
            .iter()
            .map(|(i, m)| json!({ "index": i, "message": m }))
            .collect::<Vec<_>>(),
        "relations": relations,
    })
}
