//! CSV rendering (deterministic, 12 significant digits, LF line endings)
//! and a gnuplot script generator for the emitted tables.

use std::io::Write;
use std::path::Path;

use super::{Grid, ResultTable, Scenario, ScenarioError};

/// One numeric field: scientific notation with 12 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Render a table as CSV text: header row, then one line per row, LF only.
pub fn table_to_csv(table: &ResultTable) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            out.push_str(&format_value(*v));
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Write CSV to any sink.
pub fn emit_csv(table: &ResultTable, mut sink: impl Write) -> std::io::Result<()> {
    sink.write_all(table_to_csv(table).as_bytes())
}

/// Write CSV to a file path.
pub fn write_csv(table: &ResultTable, path: &Path) -> Result<(), ScenarioError> {
    std::fs::write(path, table_to_csv(table))
        .map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })
}

fn sample_indices(n: usize, keep: usize) -> Vec<usize> {
    if n <= keep {
        return (0..n).collect();
    }
    let mut idx: Vec<usize> = (0..keep)
        .map(|i| ((i as f64) * ((n - 1) as f64) / ((keep - 1) as f64)).round() as usize)
        .collect();
    idx.dedup();
    idx
}

fn format_family_value(v: f64) -> String {
    format!("{v}")
}

struct CurveLayout {
    /// 1-based CSV column of the plot's x values.
    x_col: usize,
    /// Key name of the x axis.
    x_key: String,
    /// X axis uses log scale.
    x_log: bool,
    /// One (gnuplot `every` clause, curve title) per family member; empty
    /// for single-axis sweeps where each measure is its own curve.
    curves: Vec<(String, String)>,
    /// 1-based CSV column where measures start.
    first_measure_col: usize,
    /// Measure column names.
    measures: Vec<String>,
}

fn measures_layout(cfg: &super::SweepConfig) -> CurveLayout {
    let measures: Vec<String> =
        cfg.sorted_outputs().iter().map(|m| m.name().to_string()).collect();
    if cfg.axes.len() == 1 {
        return CurveLayout {
            x_col: 1,
            x_key: cfg.axes[0].key.name().to_string(),
            x_log: matches!(cfg.axes[0].grid, Grid::LogSpaced { .. }),
            curves: Vec::new(),
            first_measure_col: 2,
            measures,
        };
    }

    let n_outer = cfg.axes[0].grid.len();
    let n_inner = cfg.axes[1].grid.len();
    // The denser axis is the x axis; the other labels one curve per value.
    let family_is_outer = n_inner >= n_outer;
    let (x_axis, family_axis) =
        if family_is_outer { (&cfg.axes[1], &cfg.axes[0]) } else { (&cfg.axes[0], &cfg.axes[1]) };
    let family_values = family_axis.grid.values();
    let curves = sample_indices(family_values.len(), 8)
        .into_iter()
        .map(|f| {
            let every = if family_is_outer {
                // Block of consecutive rows for outer value f.
                format!("every ::{}::{}", f * n_inner, f * n_inner + n_inner - 1)
            } else {
                // Every n_inner-th row, offset f, walks the outer axis.
                format!("every {n_inner}::{f}")
            };
            let title =
                format!("{}={}", family_axis.key.name(), format_family_value(family_values[f]));
            (every, title)
        })
        .collect();
    CurveLayout {
        x_col: if family_is_outer { 2 } else { 1 },
        x_key: x_axis.key.name().to_string(),
        x_log: matches!(x_axis.grid, Grid::LogSpaced { .. }),
        curves,
        first_measure_col: 3,
        measures,
    }
}

/// Generate a gnuplot script that plots `csv_path` as produced for
/// `scenario`: one plot per measure, one curve per family value (at most 8,
/// evenly sampled), with a pause between plots. The script assumes gnuplot 5.
pub fn gnuplot_script(scenario: &Scenario, csv_path: &str) -> String {
    let layout = match scenario {
        Scenario::Spectrum(sp) => CurveLayout {
            x_col: 1,
            x_key: sp.axis.key.name().to_string(),
            x_log: matches!(sp.axis.grid, Grid::LogSpaced { .. }),
            curves: Vec::new(),
            first_measure_col: 2,
            measures: ["E0", "E1", "E2", "E3"].map(String::from).to_vec(),
        },
        Scenario::Measures(cfg) => measures_layout(cfg),
    };

    let mut s = String::new();
    s.push_str("# gnuplot helper generated by gravcat\n");
    s.push_str(&format!("# data: {csv_path}\n"));
    s.push_str("set datafile separator comma\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set key outside right\n");
    s.push_str("set grid\n");
    s.push_str(&format!("set xlabel '{}'\n", layout.x_key));
    if layout.x_log {
        s.push_str("set logscale x\n");
    }

    if layout.curves.is_empty() {
        // All measures on one plot, x against each value column.
        s.push_str("set ylabel 'value'\n");
        let clauses: Vec<String> = layout
            .measures
            .iter()
            .enumerate()
            .map(|(i, m)| {
                format!(
                    "  '{csv_path}' using {}:{} with lines title '{m}'",
                    layout.x_col,
                    layout.first_measure_col + i
                )
            })
            .collect();
        s.push_str(&format!("plot \\\n{}\n", clauses.join(", \\\n")));
        s.push_str("pause -1 'Press return to finish'\n");
        return s;
    }

    for (i, measure) in layout.measures.iter().enumerate() {
        let y_col = layout.first_measure_col + i;
        s.push_str(&format!("\nset ylabel '{measure}'\n"));
        let clauses: Vec<String> = layout
            .curves
            .iter()
            .map(|(every, title)| {
                format!(
                    "  '{csv_path}' {every} using {}:{y_col} with lines title '{title}'",
                    layout.x_col
                )
            })
            .collect();
        s.push_str(&format!("plot \\\n{}\n", clauses.join(", \\\n")));
        s.push_str("pause -1 'Press return for the next plot'\n");
    }
    s
}
