use std::path::PathBuf;
use std::process::{Command, Output};

fn zfr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zfr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zfr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn poles_case_table_for_delta() {
    let out = zfr(&["poles", "--pi", "delta", "--t", "0", "--pi-prime", "delta", "--capacity", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out));
    assert_eq!(table.len(), 9);
    let poles = table.iter().filter(|r| r[3] == "true").count();
    for r in &table {
        assert_eq!(r[4], poles.to_string());
    }
    // every factor collides at s = 1 when t = 0 and pi = pi' is self-dual
    assert_eq!(poles, 9);
}

#[test]
fn poles_auxiliary_sum_has_double_pole() {
    let out = zfr(&["poles", "--rep", "trivial", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out));
    assert_eq!(table.len(), 4);
    assert_eq!(table[0][4], "2");
}

#[test]
fn sieve_example_verdicts() {
    let out = zfr(&["sieve", "--rep", "trivial", "--Y", "1e5", "--t", "10", "--C", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out));
    let combined = table.iter().find(|r| r[0] == "combined").unwrap();
    assert_eq!(combined[7], "true");
    let small = table.iter().find(|r| r[0] == "small_angle").unwrap();
    assert_eq!(small[7], "true");
    // 17 significant digits
    assert_eq!(combined[1], "1.0000000000000000e5");
}

#[test]
fn empty_grids_are_configuration_errors() {
    let out = zfr(&["sieve", "--rep", "trivial", "--Y", "", "--t", "10", "--C", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let cfg = scratch("empty.toml");
    std::fs::write(&cfg, "Y = []\nt = [10.0]\nC = [0.1]\nrep = \"trivial\"\n").unwrap();
    let out = zfr(&["sieve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--Y grid is empty"));
    let out = zfr(&["sieve", "--rep", "trivial", "--t", "10", "--C", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn error_classes_map_to_exit_codes() {
    let small = zfr(&["sieve", "--rep", "trivial", "--Y", "1e5", "--t", "10", "--C", "0.1", "--capacity", "1000"]);
    assert_eq!(small.status.code(), Some(4));
    assert_eq!(zfr(&["poles", "--rep", "bogus", "--t", "0"]).status.code(), Some(2));
    assert_eq!(
        zfr(&["lfun", "--rep", "newform:/nonexistent/table.txt", "--t", "1", "--sigma", "2"]).status.code(),
        Some(3)
    );
    // no rigorous evaluator for a newform's edge values
    assert_eq!(
        zfr(&["perron", "--rep", "delta", "--t", "1", "--Y", "100", "--capacity", "1000"]).status.code(),
        Some(2)
    );
    assert_eq!(zfr(&["lfun", "--rep", "trivial", "--t", "1", "--sigma", "0.9"]).status.code(), Some(2));
    // zeta(1) is a pole
    assert_eq!(
        zfr(&["zerofree", "--mode", "scan", "--rep", "trivial", "--t", "0", "--sigma", "0"]).status.code(),
        Some(5)
    );
}

#[test]
fn conductor_sweep_is_deterministic() {
    let args = ["conductor", "--mode", "both", "--samples", "2000", "--seed", "7"];
    let a = zfr(&args);
    let b = zfr(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    let c = zfr(&["conductor", "--mode", "both", "--samples", "2000", "--seed", "8"]);
    assert_ne!(a.stderr, c.stderr, "manifest records the seed");
    let table = rows(&stdout(&a));
    let dims = table.iter().filter(|r| r[1] == "tensor dimension failures");
    for r in dims {
        assert_eq!(r[2], "0");
    }
}

#[test]
fn conductor_global_bounds() {
    let out = zfr(&["conductor", "--mode", "none", "--rep", "delta", "--t", "0,5", "--capacity", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out));
    assert_eq!(table.len(), 8);
    assert!(table.iter().any(|r| r[1] == "implied C1"));
}

#[test]
fn flags_override_config_file() {
    let cfg = scratch("over.toml");
    std::fs::write(&cfg, "rep = \"trivial\"\nt = [1.0]\nY = [1000.0]\n").unwrap();
    let from_file = zfr(&["perron", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(rows(&stdout(&from_file))[0][0], "1.0000000000000000e3");
    let flagged = zfr(&["perron", "--config", cfg.to_str().unwrap(), "--Y", "2000"]);
    assert_eq!(rows(&stdout(&flagged))[0][0], "2.0000000000000000e3");
    assert_ne!(from_file.stderr, flagged.stderr, "config hash changes");
    let bad = scratch("bad.toml");
    std::fs::write(&bad, "colour = 3\n").unwrap();
    assert_eq!(zfr(&["perron", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn gen_delta_round_trips_through_newform_import() {
    let table = scratch("delta.txt");
    let out = zfr(&["gen-delta", "--capacity", "100", "--out", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.starts_with("#ap-table v1 weight=12 level=1 label=Delta\n2,-24\n3,252\n5,4830\n7,-16744\n"));
    let mut manifest = table.clone().into_os_string();
    manifest.push(".manifest");
    assert!(std::fs::read_to_string(manifest).unwrap().starts_with("zfr 0.1.0 command=gen-delta"));

    let spec = format!("newform:{}", table.display());
    let via_file = zfr(&["lfun", "--rep", &spec, "--t", "1", "--sigma", "2", "--capacity", "97"]);
    let builtin = zfr(&["lfun", "--rep", "delta", "--t", "1", "--sigma", "2", "--capacity", "97"]);
    assert_eq!(via_file.status.code(), Some(0));
    assert_eq!(via_file.stdout, builtin.stdout);
    // the imported table stops at 97
    let over = zfr(&["lfun", "--rep", &spec, "--t", "1", "--sigma", "2", "--capacity", "200"]);
    assert_eq!(over.status.code(), Some(4));
}

#[test]
fn zerofree_modes() {
    let width = zfr(&["zerofree", "--mode", "width", "--t", "10,100,1000,10000"]);
    assert_eq!(width.status.code(), Some(0));
    let table = rows(&stdout(&width));
    let scaled: Vec<f64> = table.iter().map(|r| r[5].parse().unwrap()).collect();
    for s in &scaled {
        assert!((s - scaled[0]).abs() < 1e-12 && *s > 0.0);
    }
    let scan = zfr(&["zerofree", "--rep", "trivial", "--t", "1,14", "--sigma", "0,1"]);
    assert_eq!(scan.status.code(), Some(0));
    assert_eq!(rows(&stdout(&scan)).len(), 4);
    let chain = zfr(&["zerofree", "--mode", "chain", "--rep", "trivial", "--t", "1", "--Y", "1e3,1e4"]);
    assert_eq!(chain.status.code(), Some(0));
    assert_eq!(rows(&stdout(&chain))[0][6], "true");
}
