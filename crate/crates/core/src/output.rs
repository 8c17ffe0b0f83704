//! CSV layouts for sweep grids, temporal responses, phase sweeps and the
//! Table-1 reproduction.
//!
//! Numbers are written in shortest round-trip form. Lines starting with `#`
//! carry provenance and summary values ahead of the header row.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::phase::PhaseSweep;
use crate::table1::Table1Row;
use crate::temporal::TemporalResponse;
use crate::transmittance::SweepGrid;

/// Marker written in place of a failed sweep cell.
pub const FAILED_CELL: &str = "NaN";

/// Marker for an undefined FWHM (gate never opens).
pub const UNDEFINED: &str = "undefined";

fn num(v: f64) -> String {
    format!("{v}")
}

fn comments<W: Write>(out: &mut W, lines: &[String]) -> io::Result<()> {
    for l in lines {
        writeln!(out, "# {l}")?;
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::new(io::ErrorKind::Other, e)
}

pub fn write_sweep<W: Write>(mut out: W, grid: &SweepGrid, provenance: &[String]) -> io::Result<()> {
    comments(&mut out, provenance)?;
    writeln!(out, "# failed_cells = {}", grid.failures())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pump_diameter_um", "probe_diameter_um", "efficiency"]).map_err(csv_err)?;
    let cols = grid.probe_diameters.len();
    for (i, pump) in grid.pump_diameters.iter().enumerate() {
        for (j, probe) in grid.probe_diameters.iter().enumerate() {
            let cell = grid.efficiency[i * cols + j].map_or_else(|| FAILED_CELL.to_string(), num);
            w.write_record([num(pump.as_um()), num(probe.as_um()), cell]).map_err(csv_err)?;
        }
    }
    w.flush()
}

pub fn write_temporal<W: Write>(mut out: W, response: &TemporalResponse, provenance: &[String]) -> io::Result<()> {
    comments(&mut out, provenance)?;
    let fwhm = response.fwhm.map_or_else(|| UNDEFINED.to_string(), |t| num(t.as_fs()));
    writeln!(out, "# fwhm_fs = {fwhm}")?;
    writeln!(out, "# peak = {}", num(response.peak_transmittance))?;
    writeln!(out, "# convention = {}", response.convention)?;
    writeln!(out, "# gate_duration_fs = {}", num(response.gate_duration.as_fs()))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["time_fs", "transmittance"]).map_err(csv_err)?;
    for (t, v) in response.times.iter().zip(&response.transmittance) {
        w.write_record([num(t.as_fs()), num(*v)]).map_err(csv_err)?;
    }
    w.flush()
}

pub fn write_table1<W: Write>(mut out: W, rows: &[Table1Row], provenance: &[String]) -> io::Result<()> {
    comments(&mut out, provenance)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "label",
        "efficiency_computed",
        "efficiency_paper",
        "fwhm_fs_computed",
        "fwhm_fs_paper",
    ])
    .map_err(csv_err)?;
    for r in rows {
        let fwhm = r.fwhm_computed.map_or_else(|| UNDEFINED.to_string(), |t| num(t.as_fs()));
        w.write_record([
            r.label.clone(),
            num(r.efficiency_computed),
            num(r.efficiency_paper),
            fwhm,
            num(r.fwhm_paper.as_fs()),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
}

pub fn write_phase_sweep<W: Write>(mut out: W, sweep: &PhaseSweep, provenance: &[String]) -> io::Result<()> {
    comments(&mut out, provenance)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["thickness_mm", "phase_rad_no_dispersion", "phase_rad_dispersion"]).map_err(csv_err)?;
    for (i, l) in sweep.thickness.iter().enumerate() {
        w.write_record([
            num(l.as_mm()),
            num(sweep.phase_no_dispersion[i]),
            num(sweep.phase_dispersion[i]),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
}

/// Creates `path` and hands a buffered writer to `f`.
pub fn write_file<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let io_err = |source| Error::Io { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    f(&mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{Length, Time};
    use crate::temporal::Convention;

    fn records(bytes: &[u8]) -> Vec<csv::StringRecord> {
        csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(bytes)
            .records()
            .collect::<std::result::Result<_, _>>()
            .unwrap()
    }

    #[test]
    fn sweep_layout() {
        let grid = SweepGrid {
            pump_diameters: vec![Length::from_um(10.0), Length::from_um(20.0)],
            probe_diameters: vec![Length::from_um(5.0), Length::from_um(15.0)],
            efficiency: vec![Some(0.1), Some(0.2), None, Some(1.0 / 3.0)],
        };
        let mut buf = Vec::new();
        write_sweep(&mut buf, &grid, &["label = x".into()]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# label = x\n# failed_cells = 1\npump_diameter_um,probe_diameter_um,efficiency\n"));
        let rows = records(&buf);
        assert_eq!(rows.len(), 4);
        assert_eq!(&rows[1][1], "15");
        assert_eq!(&rows[2][2], FAILED_CELL);
        assert_eq!(rows[3][2].parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn temporal_layout() {
        let n = 2001;
        let times: Vec<Time> = (0..n).map(|i| Time::from_fs(i as f64 * 0.37 - 370.0)).collect();
        let transmittance: Vec<f64> = times.iter().map(|t| (-(t.as_fs() / 50.0).powi(2)).exp()).collect();
        let r = TemporalResponse {
            times,
            transmittance: transmittance.clone(),
            fwhm: Some(Time::from_fs(83.25)),
            peak_transmittance: 1.0,
            convention: Convention::PaperConstantIntensity,
            gate_duration: Time::from_fs(80.0),
        };
        let mut buf = Vec::new();
        write_temporal(&mut buf, &r, &[]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("# fwhm_fs = 83.25\n"));
        assert!(text.contains("# peak = 1\n"));
        assert!(text.contains("# convention = paper-constant-intensity\n"));
        let rows = records(&buf);
        assert_eq!(rows.len(), n);
        for (row, v) in rows.iter().zip(&transmittance) {
            assert_eq!(row[1].parse::<f64>().unwrap(), *v);
        }
    }
}
