//! Scenario files on disk, overrides and the pinned reference-row numbers.

use std::path::{Path, PathBuf};

use kerr_shutter::scenario::{load_scenario_with, EnergySource};
use kerr_shutter::table1::{reference_rows, reproduce_table1};
use kerr_shutter::{load_scenario, Convention, Error, Scenario};

fn path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

#[test]
fn shipped_files_load() {
    for name in ["fig2.conf", "fig3c.conf", "table1_row1.conf", "table1_row2.conf", "table1_row3.conf"] {
        load_scenario(&path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn row_files_equal_builtin_rows() {
    let rows = reference_rows(Convention::default()).unwrap();
    for (i, row) in rows.iter().enumerate() {
        let file = load_scenario(&path(&format!("table1_row{}.conf", i + 1))).unwrap();
        let builtin = &row.scenario;
        assert_eq!(file.medium, builtin.medium, "row {}", i + 1);
        assert_eq!(file.geometry, builtin.geometry, "row {}", i + 1);
        assert_eq!(file.pulse, builtin.pulse, "row {}", i + 1);
        assert_eq!(file.energy_source, builtin.energy_source, "row {}", i + 1);
        assert_eq!(file.dispersion, builtin.dispersion);
    }
}

#[test]
fn overrides_apply_in_order() {
    let s = load_scenario_with(
        &path("table1_row1.conf"),
        &["pulse.duration=60 fs".into(), "pulse.duration=70 fs".into(), "medium.thickness=1 mm".into()],
    )
    .unwrap();
    assert!((s.pulse.duration.as_fs() - 70.0).abs() < 1e-12);
    assert!((s.medium.thickness.as_mm() - 1.0).abs() < 1e-12);

    let direct = load_scenario_with(&path("table1_row1.conf"), &["pulse.energy=5 nJ".into()]).unwrap();
    assert!(matches!(direct.energy_source, EnergySource::Direct(_)));
    assert!((direct.pulse.energy.as_nj() - 5.0).abs() < 1e-12);
}

#[test]
fn canonical_text_round_trips() {
    for name in ["fig2.conf", "table1_row3.conf"] {
        let s = load_scenario(&path(name)).unwrap();
        let back = Scenario::parse(&s.to_config()).unwrap();
        assert_eq!(back.medium, s.medium);
        assert_eq!(back.geometry, s.geometry);
        assert_eq!(back.pulse, s.pulse);
        assert_eq!(back.to_config(), s.to_config());
    }
}

#[test]
fn file_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.conf");
    let text = std::fs::read_to_string(path("fig2.conf")).unwrap().replace("duration = 80 fs", "duration = 80 mm");
    std::fs::write(&file, &text).unwrap();
    let line = text.lines().position(|l| l.contains("80 mm")).unwrap() + 1;
    match load_scenario(&file) {
        Err(Error::Parse { line: got, message }) => {
            assert_eq!(got, line);
            assert!(message.contains("pulse.duration"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(load_scenario(&dir.path().join("missing.conf")), Err(Error::Io { .. })));
}

/// Numbers pinned from a reviewed run; guards against silent drift.
#[test]
fn table1_matches_pinned_fixture() {
    for convention in [Convention::PaperConstantIntensity, Convention::ZResolved] {
        let fixture = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(format!("table1_{convention}.csv"));
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(&fixture).unwrap();
        let pinned: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        let rows = reproduce_table1(convention).unwrap();
        assert_eq!(pinned.len(), rows.len());
        for (p, r) in pinned.iter().zip(&rows) {
            assert_eq!(&p[0], r.label);
            let close = |text: &str, v: f64| {
                let want: f64 = text.parse().unwrap();
                assert!(((v - want) / want).abs() < 1e-9, "{}: {v} vs {want}", r.label);
            };
            close(&p[1], r.efficiency_computed);
            close(&p[3], r.fwhm_computed.unwrap().as_fs());
            assert_eq!(p[2].parse::<f64>().unwrap(), r.efficiency_paper);
        }
    }
}
