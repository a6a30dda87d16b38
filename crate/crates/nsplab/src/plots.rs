//! Plot-data emission: whitespace-delimited `.dat` files plus a gnuplot
//! script stub per figure (decay curves with predicted-slope guide lines).

use crate::manifest::RunManifest;
use std::io::Write;
use std::path::Path;

/// Convert every CSV artifact next to `manifest.json` into a `.dat` file and
/// a `.gp` stub. Returns the number of figures emitted.
pub fn emit_plots(run_dir: &Path) -> std::io::Result<usize> {
    let manifest_path = run_dir.join("manifest.json");
    let manifest = RunManifest::read(&manifest_path)?;
    let mut figures = 0usize;
    let mut entries: Vec<_> = std::fs::read_dir(run_dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "csv").unwrap_or(false))
        .collect();
    entries.sort();
    if entries.is_empty() {
        eprintln!("warning: no CSV series in {}; nothing to plot", run_dir.display());
        return Ok(0);
    }
    for csv_path in entries {
        let stem = csv_path.file_stem().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(&csv_path)?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let columns: Vec<&str> = header.split(',').collect();
        let dat_path = run_dir.join(format!("{stem}.dat"));
        {
            let mut dat = std::fs::File::create(&dat_path)?;
            writeln!(dat, "# {}", columns.join(" "))?;
            for line in lines {
                writeln!(dat, "{}", line.replace(',', " "))?;
            }
        }
        let gp_path = run_dir.join(format!("{stem}.gp"));
        let mut gp = std::fs::File::create(&gp_path)?;
        writeln!(gp, "# generated for run {}", manifest.config_hash)?;
        writeln!(gp, "set logscale xy")?;
        writeln!(gp, "set xlabel '{}'", columns.first().unwrap_or(&"x"))?;
        writeln!(gp, "set ylabel '{}'", columns.last().unwrap_or(&"y"))?;
        writeln!(gp, "set title '{stem}'")?;
        // decay figures get a guide line at the predicted slope when the
        // manifest carries one
        if stem.contains("dispersive") || stem.contains("decay") {
            writeln!(gp, "guide(x) = x**(-1.5)")?;
            writeln!(
                gp,
                "plot '{stem}.dat' using 4:5 with linespoints title 'scan', guide(x) title 't^-3/2'"
            )?;
        } else {
            writeln!(gp, "plot '{stem}.dat' using 1:2 with linespoints title '{stem}'")?;
        }
        figures += 1;
    }
    Ok(figures)
}
