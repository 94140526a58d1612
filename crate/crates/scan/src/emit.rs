//! Output formats. Every numeric column names its unit.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Result, ScanError};
use crate::propagate::PropagationReport;
use crate::report::{render_text, PaperCheck};
use crate::sweep::SweepResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Plotdata,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
            Self::Plotdata => "plotdata",
            Self::Text => "text",
        }
    }
}

fn unsupported(what: &str, f: Format) -> ScanError {
    ScanError::Scenario(format!("{what} cannot be written as {}", f.name()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| ScanError::Scenario(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_sweep_json(text: &str) -> Result<SweepResult> {
    let r: SweepResult = serde_json::from_str(text)
        .map_err(|e| ScanError::Scenario(format!("invalid sweep JSON: {e}")))?;
    r.validate()?;
    Ok(r)
}

fn num(v: Option<f64>, missing: &str) -> String {
    v.map_or_else(|| missing.to_string(), |x| x.to_string())
}

fn column_names(r: &SweepResult) -> Vec<String> {
    let mut cols = vec![format!("{} [{}]", r.axis.name, r.axis.unit)];
    cols.extend(
        r.aux_axes
            .iter()
            .map(|a| format!("{} [{}]", a.name, a.unit)),
    );
    cols.extend(
        r.series
            .iter()
            .map(|s| format!("{} [{}]", s.component.name(), s.unit)),
    );
    cols
}

fn row_values(r: &SweepResult, k: usize, missing: &str) -> Vec<String> {
    let mut row = vec![r.axis.values[k].to_string()];
    row.extend(r.aux_axes.iter().map(|a| a.values[k].to_string()));
    row.extend(r.series.iter().map(|s| num(s.values[k], missing)));
    row
}

pub fn sweep_csv(r: &SweepResult) -> String {
    let mut out = column_names(r);
    out.push("flags".into());
    let mut s = out.join(",");
    s.push('\n');
    for k in 0..r.len() {
        let mut row = row_values(r, k, "");
        row.push(r.flags[k].join(";"));
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn sweep_plotdata(r: &SweepResult) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {} of scenario {} (schema {})",
        r.kind, r.scenario, r.schema_version
    );
    for (k, v) in &r.interpretation {
        let _ = writeln!(s, "# {k}: {v}");
    }
    for d in &r.diagnostics {
        let _ = writeln!(
            s,
            "# {} = {} [{}]  {}",
            d.name,
            num(d.value, "n/a"),
            d.unit,
            d.note
        );
    }
    let mut cols = column_names(r);
    cols.push("flags".into());
    let _ = writeln!(s, "# columns:");
    for (k, c) in cols.iter().enumerate() {
        let _ = writeln!(s, "#   {} {}", k + 1, c);
    }
    for k in 0..r.len() {
        let mut row = row_values(r, k, "nan");
        row.push(if r.flags[k].is_empty() {
            "-".into()
        } else {
            r.flags[k].join(";")
        });
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn render_sweep(r: &SweepResult, format: Format) -> Result<String> {
    r.validate()?;
    match format {
        Format::Csv => Ok(sweep_csv(r)),
        Format::Json => to_json(r),
        Format::Plotdata => Ok(sweep_plotdata(r)),
        Format::Text => Err(unsupported("a sweep", format)),
    }
}

const PROPAGATION_COLUMNS: [&str; 9] = [
    "z [cm]",
    "analytic_signal_re [1]",
    "analytic_signal_im [1]",
    "analytic_idler_re [1]",
    "analytic_idler_im [1]",
    "coupled_signal_re [1]",
    "coupled_signal_im [1]",
    "coupled_idler_re [1]",
    "coupled_idler_im [1]",
];

fn propagation_rows(r: &PropagationReport) -> impl Iterator<Item = Vec<String>> + '_ {
    (0..r.z.len()).map(move |k| {
        let mut row = vec![r.z[k].to_string()];
        for a in [
            &r.analytic_signal,
            &r.analytic_idler,
            &r.coupled_signal,
            &r.coupled_idler,
        ] {
            row.push(a[k].re.to_string());
            row.push(a[k].im.to_string());
        }
        row
    })
}

fn propagation_header(r: &PropagationReport, prefix: &str) -> String {
    let m = &r.summary;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{prefix}propagate {} of scenario {}",
        r.component, r.scenario
    );
    let _ = writeln!(
        s,
        "{prefix}omega_s = {} rad/s, omega_i = {} rad/s",
        r.omega_s, r.omega_i
    );
    let _ = writeln!(
        s,
        "{prefix}alpha = {} cm^-1, delta = {} cm^-1",
        r.coefficient, r.delta
    );
    let _ = writeln!(
        s,
        "{prefix}cell = {} cm, step = {} cm, tolerance = {}",
        r.cell_length, r.step, r.tolerance
    );
    let _ = writeln!(
        s,
        "{prefix}analytic_rate = {} cm^-1, coupled_rate = {} cm^-1, discrepancy = {}",
        num(m.analytic_rate, "n/a"),
        num(m.coupled_rate, "n/a"),
        num(m.rate_discrepancy, "n/a")
    );
    let _ = writeln!(
        s,
        "{prefix}gain dB = 20 log10(amplitude ratio): analytic = {}, coupled = {}",
        num(m.analytic_gain_db, "n/a"),
        num(m.coupled_gain_db, "n/a")
    );
    let _ = writeln!(
        s,
        "{prefix}analytic_factor exp(alpha L) = {}, manley_rowe_drift = {}",
        m.analytic_factor, m.manley_rowe_drift
    );
    let _ = writeln!(
        s,
        "{prefix}flags: {}",
        if r.flags.is_empty() {
            "-".to_string()
        } else {
            r.flags.join(";")
        }
    );
    s
}

pub fn render_propagation(r: &PropagationReport, format: Format) -> Result<String> {
    let flags = if r.flags.is_empty() {
        String::new()
    } else {
        r.flags.join(";")
    };
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut cols: Vec<&str> = PROPAGATION_COLUMNS.to_vec();
            cols.push("flags");
            let mut s = cols.join(",");
            s.push('\n');
            for row in propagation_rows(r) {
                s.push_str(&row.join(","));
                s.push(',');
                s.push_str(&flags);
                s.push('\n');
            }
            Ok(s)
        }
        Format::Plotdata => {
            let mut s = propagation_header(r, "# ");
            let _ = writeln!(s, "# columns:");
            for (k, c) in PROPAGATION_COLUMNS.iter().enumerate() {
                let _ = writeln!(s, "#   {} {}", k + 1, c);
            }
            for row in propagation_rows(r) {
                s.push_str(&row.join(" "));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Text => Ok(propagation_header(r, "")),
    }
}

pub fn render_paper_check(r: &PaperCheck, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(render_text(r)),
        Format::Json => to_json(r),
        other => Err(unsupported("paper-check", other)),
    }
}

/// Writes to `path`, or to stdout when no path is given.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| ScanError::io(p, e)),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| ScanError::io("<stdout>", e))
        }
    }
}
