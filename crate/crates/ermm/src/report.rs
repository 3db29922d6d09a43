//! Report rows, the source-tag registry, and CSV / JSON / gnuplot writers.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Every tag a report row may carry, with the quantity it names.
pub const SOURCE_TAGS: &[(&str, &str)] = &[
    ("tree-count-recurrence", "tree counts d_k from the rooted recurrence"),
    ("tree-count-closed-form", "d_k^(2) = 2^k (k+1)^(k-2)"),
    ("h-series", "coefficients of H = exp(q z H^(q-1))"),
    ("psi-closed-form", "Polya-equation solution psi_k"),
    ("convolution-identity", "convolution identity between h_k and d_k"),
    ("rooted-tree-recurrence", "rooted colour-tree counts T^_m and t_m"),
    ("unrooted-tree-count", "unrooted colour-tree counts T_k"),
    ("catalan", "Catalan numbers"),
    ("walk-census", "first-passage walk census F_q(r) and totals F_q"),
    ("walk-census-brute-force", "walk census by exhaustive enumeration"),
    ("full-first-cumulant", "full-regime first cumulant"),
    ("full-variance", "full-regime variance 2q^2(1-p)"),
    ("full-diagram-sum", "full-regime cumulant from tree-arc diagrams"),
    ("dilute-tree-count", "dilute Y cumulant 2^(k-1) d_k"),
    ("dilute-even-closed-walks", "dilute even-q X cumulant"),
    ("dilute-odd-cycle-gluing", "dilute odd-q X cumulant (4q'+2)^(k-1)"),
    ("sparse-walk-census", "sparse first cumulant from the walk census"),
    ("sparse-tree-census", "sparse cumulant from the tree-diagram census"),
    ("sparse-cycle-census", "sparse odd-q X first cumulant from one-cycle diagrams"),
    ("very-sparse-single-edge", "very sparse cumulant 2^(k-1)"),
    ("diagram-count", "connected (k-1)-arc diagram classes"),
    ("diagram-oracle-equality", "diagram cumulant equals brute-force cumulant"),
    ("free-partition-closed-form", "Z_n without potential equals (1+x)^N"),
    ("quartic-partition-identity", "normalised Z with Tr Delta^2 potential equals shifted expectation"),
    ("moment-routes", "graph and index-tuple moment routes agree"),
    ("laplacian-trace-identity", "E Tr Delta^2 = E Y^(2) + n(n-1)p"),
    ("normalized-cumulant", "Monte Carlo normalised cumulant"),
    ("clt-shape", "skewness and excess kurtosis of the sampled statistic"),
    ("clt-ks", "Kolmogorov-Smirnov distance to N(0,1) after studentising"),
    ("gaussian-calibration", "KS calibration on synthetic Gaussian samples"),
    ("free-energy-truncation", "truncated free energy"),
    ("free-energy-prefactor", "logistic prefactor of the free energy"),
    ("spectral-moment", "normalised spectral moment M_q"),
];

pub fn is_registered(tag: &str) -> bool {
    SOURCE_TAGS.iter().any(|(t, _)| *t == tag)
}

/// One report line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub quantity: String,
    pub reference: String,
    pub value: String,
    pub target: Option<String>,
    pub stderr: Option<f64>,
    pub pass: Option<bool>,
}

impl Row {
    /// Row with a registered source tag; unknown tags are a programming error.
    pub fn new(quantity: impl Into<String>, reference: &str, value: impl Into<String>) -> Self {
        assert!(is_registered(reference), "unregistered source tag {reference:?}");
        Row { quantity: quantity.into(), reference: reference.into(), value: value.into(), target: None, stderr: None, pass: None }
    }

    pub fn target(mut self, target: impl Into<String>) -> Self {
        self.target = Some(target.into());
        self
    }

    pub fn stderr(mut self, stderr: Option<f64>) -> Self {
        self.stderr = stderr;
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }
}

/// Report metadata and rows; key order is fixed so output is byte-stable.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub metadata: BTreeMap<String, String>,
    pub rows: Vec<Row>,
    /// Numeric series for `--plot`, keyed by file stem; each inner vector is one whitespace-separated line.
    #[serde(skip)]
    pub plots: BTreeMap<String, PlotData>,
}

/// A gnuplot data block: column names and numeric rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlotData {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Report {
    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    /// False if any row carries `pass = false`.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn first_failure(&self) -> Option<&Row> {
        self.rows.iter().find(|r| r.pass == Some(false))
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["quantity", "reference", "value", "target", "stderr", "pass"])
            .map_err(CliError::io)?;
        for r in &self.rows {
            writer
                .write_record([
                    r.quantity.clone(),
                    r.reference.clone(),
                    r.value.clone(),
                    r.target.clone().unwrap_or_default(),
                    r.stderr.map(format_float).unwrap_or_default(),
                    r.pass.map(|p| p.to_string()).unwrap_or_default(),
                ])
                .map_err(CliError::io)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: OutputFormat) -> CliResult<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, format: OutputFormat, path: Option<&Path>) -> CliResult<()> {
        let text = self.render(format)?;
        match path {
            Some(p) => fs::write(p, text).map_err(CliError::io),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::io),
        }
    }

    /// Writes one `<stem>.dat` file per plot block into `dir`.
    pub fn write_plots(&self, dir: &Path) -> CliResult<Vec<std::path::PathBuf>> {
        fs::create_dir_all(dir).map_err(CliError::io)?;
        let mut written = Vec::new();
        for (stem, data) in &self.plots {
            let mut text = format!("# {}\n", data.columns.join(" "));
            for row in &data.rows {
                let line: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            let path = dir.join(format!("{stem}.dat"));
            fs::write(&path, text).map_err(CliError::io)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Shortest round-trip decimal; NaN and infinities are spelled out.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:?}")
    } else {
        v.to_string()
    }
}
