use std::fs;

use ddr_core::scenario::export::{read_grid, read_table};
use ddr_core::scenario::presets::{all_presets, preset};
use ddr_core::scenario::run::run_scenario;
use ddr_core::scenario::{ScenarioConfig, PRESET_NAMES};
use ddr_core::{Error, TransverseGrid};

#[test]
fn spectrum_preset_writes_named_columns() {
    let dir = tempfile::tempdir().unwrap();
    let p = preset("fig2_mia").unwrap();
    let summary = run_scenario(&p.config, &p.defaulted, Some(dir.path())).unwrap();
    let (names, rows) = read_table(&dir.path().join("spectrum.dat")).unwrap();
    assert_eq!(names, ["delta1_over_gamma", "re_chi", "im_chi"]);
    assert_eq!(rows.len(), 6001);
    assert_eq!(rows[0][0], -3.0);
    assert_eq!(rows[6000][0], 3.0);
    let s = summary.cases[0].spectrum.as_ref().unwrap();
    assert_eq!(s.center_is_local_max, Some(true));
    assert!(dir.path().join("summary.json").exists());
    assert!(dir.path().join("resolved_config.toml").exists());
}

#[test]
fn chi_map_signs_follow_the_regimes() {
    let p = preset("fig4_chi_map").unwrap();
    let summary = run_scenario(&p.config, &p.defaulted, None).unwrap();
    let map = |name: &str| summary.case(name).unwrap().chi_map.clone().unwrap();
    // microwave without pump: absorption everywhere, peaked on the doublet
    let mia = map("mia");
    assert_eq!(mia.gain_fraction, 0.0);
    assert!(mia.im_chi_at_origin > 0.0);
    // adding the pump opens gain where the control is strong
    let lwi = map("lwi");
    assert!(lwi.min_im_chi < 0.0);
    assert!(
        (lwi.min_im_chi_at.abs() - 0.012).abs() < 0.002,
        "gain at {}",
        lwi.min_im_chi_at
    );
    assert!(lwi.im_chi_at_origin < mia.im_chi_at_origin);
}

#[test]
fn resolved_config_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = preset("fig5_rayleigh_clone").unwrap();
    p.config.propagation.length = 0.5;
    p.config.outputs.snapshots = vec![0.0, 0.5];
    let first = run_scenario(&p.config, &p.defaulted, Some(dir.path())).unwrap();
    let text = fs::read_to_string(dir.path().join("resolved_config.toml")).unwrap();
    let back = ScenarioConfig::from_toml_str(&text).unwrap();
    assert_eq!(back, p.config);
    let second = run_scenario(&back, &p.defaulted, None).unwrap();
    assert_eq!(first.cases, second.cases);
    assert!(dir.path().join("cut_z0.500.dat").exists());
    assert!(dir.path().join("power.dat").exists());
}

#[test]
fn two_dimensional_run_writes_grids_of_the_configured_size() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = preset("fig7_sparrow_3peak").unwrap();
    assert_eq!((p.config.grid.nx, p.config.grid.ny), (512, 512));
    // same geometry on a coarser grid and a short run, to keep the test fast
    p.config.grid = TransverseGrid::new_2d(64, 64, 0.06, 0.06);
    p.config.propagation.length = 0.02;
    p.config.propagation.dz = 0.01;
    p.config.outputs.snapshots = vec![0.02];
    let summary = run_scenario(&p.config, &p.defaulted, Some(dir.path())).unwrap();
    let bin = dir.path().join("probe_z0.020.bin");
    assert!(
        summary.files.iter().any(|f| f == "probe_z0.020.bin"),
        "{:?}",
        summary.files
    );
    let (field, meta) = read_grid(&bin).unwrap();
    assert_eq!((meta.nx, meta.ny), (64, 64));
    assert_eq!(fs::metadata(&bin).unwrap().len(), 64 * 64 * 16);
    assert!((field.z - 0.02).abs() < 1e-12);
}

#[test]
fn every_preset_validates_and_unknown_names_fail() {
    assert_eq!(all_presets().len(), PRESET_NAMES.len());
    for p in all_presets() {
        p.config.validate().unwrap_or_else(|e| panic!("{}: {e}", p.name));
    }
    assert!(matches!(preset("fig9"), Err(Error::ConfigInvalid { .. })));
}

#[test]
fn config_errors_name_the_offending_key() {
    let text = "name = \"x\"\n[probe]\nwaist = -1.0\n";
    let err = ScenarioConfig::from_toml_str(text)
        .and_then(|c| c.validate())
        .unwrap_err();
    assert!(err.to_string().contains("probe.waist"), "{err}");
    let err = ScenarioConfig::from_toml_str("name = \"x\"\nbogus = 1\n").unwrap_err();
    assert!(err.to_string().contains("bogus"), "{err}");
}

#[test]
fn documented_preset_configs_match_the_presets() {
    let docs = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/presets");
    for p in all_presets() {
        let path = docs.join(format!("{}.toml", p.name));
        let cfg = ScenarioConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(cfg, p.config, "{} is out of date", path.display());
    }
}
