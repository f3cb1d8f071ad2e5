use std::path::Path;
use std::process::{Command, Output};

use dipole_gauge_cli::config::RunConfig;
use dipole_gauge_cli::{run, CliError, CommandKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binary(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dipole-gauge"))
        .arg(args[0])
        .arg("--config")
        .arg(config)
        .args(&args[1..])
        .output()
        .expect("binary runs")
}

fn split_csv(line: &str) -> Vec<String> {
    let mut fields = vec![String::new()];
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(String::new()),
            c => fields.last_mut().unwrap().push(c),
        }
    }
    fields
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> std::path::PathBuf {
    let path = dir.path().join("config.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn unknown_keys_are_rejected() {
    for text in [
        r#"{"schema_version": 1, "extra": 1}"#,
        r#"{"schema_version": 1, "lattice": {"box_length": 1, "half_extent": 4, "n": 2}}"#,
        r#"{"schema_version": 1, "tolerances": {"typo_rel": 0.1}}"#,
    ] {
        assert!(matches!(RunConfig::parse(text), Err(CliError::Validation(_))), "{text}");
    }
}

#[test]
fn schema_version_is_required_and_checked() {
    assert!(RunConfig::parse("{}").is_err());
    assert!(RunConfig::parse(r#"{"schema_version": 2}"#).is_err());
    assert!(RunConfig::parse(r#"{"schema_version": 1}"#).is_ok());
}

#[test]
fn config_survives_serialization_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let mut p = || [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.2..1.0)];
        let text = format!(
            r#"{{"schema_version": 1, "sigma": 0.01, "dipoles": [{{"position": {:?}, "moment": {:?}}}], "field_points": [{:?}]}}"#,
            p(),
            p(),
            p()
        );
        let Ok(cfg) = RunConfig::parse(&text) else { continue };
        let again = RunConfig::parse(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, again);
    }
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("verify-commutator", r#"{"schema_version": 1, "separations": []}"#),
        ("verify-commutator", r#"{"schema_version": 1, "separations": [[0, 0, 0.1]], "sigma": 0.5}"#),
        ("dipole-energy", r#"{"schema_version": 1, "dipoles": [{"position": [0,0,0], "moment": [1,0,0]}, {"position": [0,0,0], "moment": [0,1,0]}]}"#),
        ("bch-check", r#"{"schema_version": 1, "bch": {"xi": [0.1], "truncations": [40], "max_dimension": 10}}"#),
        ("coulomb-path", r#"{"schema_version": 1, "paths": [{"charge": 1, "vertices": [[0,0,0],[0,0,5]]}], "field_points": [[0,0,2]]}"#),
        ("field-shift", r#"{"schema_version": 1, "bogus": true}"#),
    ];
    for (cmd, text) in cases {
        let out = binary(&[cmd], &write_config(&dir, text));
        assert_eq!(out.status.code(), Some(2), "{cmd} {text}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn singular_path_names_the_segment() {
    let text = r#"{"schema_version": 1, "paths": [{"charge": 1, "vertices": [[0,0,0],[1,0,0],[1,0,5]]}], "field_points": [[1,0,2]]}"#;
    let err = run(CommandKind::CoulombPath, text).unwrap_err().to_string();
    assert!(err.contains("segment 1"), "{err}");
}

#[test]
fn tolerance_failure_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"schema_version": 1, "sweep_half_extents": [24], "separations": [[0, 0, 0.1]], "tolerances": {"commutator_rel": 1e-6}}"#;
    let out = binary(&["verify-commutator"], &write_config(&dir, text));
    assert_eq!(out.status.code(), Some(1));
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["pass"], false);
}

#[test]
fn passing_run_exits_with_zero_and_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, r#"{"schema_version": 1, "bch": {"xi": [0.3], "truncations": [20]}}"#);
    let out_path = dir.path().join("result.json");
    let out = binary(&["bch-check", "--out", out_path.to_str().unwrap()], &config);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rec: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(rec["command"], "bch-check");
    assert_eq!(rec["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, r#"{"schema_version": 1, "field_points": [[0, 0, 2]]}"#);
    let out = binary(&["coulomb-path", "--format", "csv"], &config);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "command,kind,name,component,computed,reference,abs_error,rel_error,tolerance,pass");
    for line in lines {
        let fields = split_csv(line);
        assert_eq!(fields.len(), 10, "{line}");
        let mantissa: &str = fields[4].split('e').next().unwrap();
        assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17, "{line}");
    }
}

#[test]
fn format_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, r#"{"schema_version": 1, "format": "csv", "bch": {"xi": [0.1], "truncations": [10]}}"#);
    let csv = binary(&["bch-check"], &config);
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("command,"));
    let json = binary(&["bch-check", "--format", "json"], &config);
    assert!(String::from_utf8_lossy(&json.stdout).starts_with('{'));
}

#[test]
fn help_documents_formulas() {
    let out = Command::new(env!("CARGO_BIN_EXE_dipole-gauge")).args(["dipole-energy", "--help"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ε_dip(R,d,d')"));
    assert!(text.contains("--format"));
}

#[test]
fn shipped_configs_pass() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for cmd in ["verify-commutator", "dipole-energy", "field-shift", "coulomb-path", "bch-check"] {
        let out = binary(&[cmd], &dir.join(format!("{cmd}.json")));
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stdout));
    }
}
