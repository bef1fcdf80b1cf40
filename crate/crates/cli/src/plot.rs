//! Standalone barcode plotting: read a barcode CSV, render the panel SVG.

use crate::error::{CliError, Result};
use std::path::{Path, PathBuf};
use topocount_core::Barcode;

/// Renders `csv_path` to SVG. The output lands at `out_path`, or next to the
/// input with the extension swapped. `threshold_fraction` positions the
/// persistence cutoff marker.
pub fn plot_barcode(
    csv_path: &Path,
    out_path: Option<&Path>,
    threshold_fraction: f64,
) -> Result<PathBuf> {
    if !(threshold_fraction > 0.0 && threshold_fraction <= 1.0) {
        return Err(CliError::Config(format!(
            "threshold fraction {threshold_fraction} outside (0, 1]"
        )));
    }
    let text = std::fs::read_to_string(csv_path).map_err(|source| CliError::Io {
        action: "read",
        path: csv_path.to_path_buf(),
        source,
    })?;
    let barcode = Barcode::from_csv(&text).map_err(|source| CliError::BarcodeParse {
        path: csv_path.to_path_buf(),
        source,
    })?;
    let out = match out_path {
        Some(p) => p.to_path_buf(),
        None => csv_path.with_extension("svg"),
    };
    std::fs::write(&out, barcode.to_svg(threshold_fraction)).map_err(|source| CliError::Io {
        action: "write",
        path: out.clone(),
        source,
    })?;
    Ok(out)
}
