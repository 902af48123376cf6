//! CLI and cache behavior: round-trips, corruption rejection, cold/warm
//! equality, exit codes, and schema re-parsing.

use gsp4_cli::cache::{fnv1a64, Cache};
use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gsp4")
}

fn fresh_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gsp4-clitest-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn cache_roundtrip_and_corruption() {
    let dir = fresh_dir("roundtrip");
    let cache = Cache::open(&dir).unwrap();
    let payload = b"0123456789abcdef".repeat(100);
    cache.save(3, "classes", &payload).unwrap();
    let loaded = cache.load(3, "classes").unwrap().expect("present");
    assert_eq!(loaded, payload);
    // absent keys load as None
    assert!(cache.load(5, "classes").unwrap().is_none());
    assert!(cache.load(3, "tables").unwrap().is_none());
    // a flipped payload byte is rejected by the hash
    let path = dir.join("classes-q3-v1.bin");
    let mut bytes = std::fs::read(&path).unwrap();
    let n = bytes.len();
    bytes[n - 1] ^= 0x40;
    std::fs::write(&path, &bytes).unwrap();
    assert!(matches!(
        cache.load(3, "classes"),
        Err(gsp4_cli::cache::CacheError::HashMismatch { .. })
    ));
    drop(cache);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn fnv_hash_is_stable() {
    assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
    assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
}

#[test]
fn lock_file_blocks_second_writer() {
    let dir = fresh_dir("lock");
    let c1 = Cache::open(&dir).unwrap();
    // second open fails while the first holds the lock (short retry window)
    let t0 = std::time::Instant::now();
    let c2 = Cache::open(&dir);
    assert!(c2.is_err(), "second writer must be rejected");
    assert!(t0.elapsed().as_secs() >= 4, "lock acquisition must have retried");
    drop(c1);
    // after release the lock is free again
    let c3 = Cache::open(&dir);
    assert!(c3.is_ok());
    drop(c3);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn table_cold_and_warm_outputs_are_identical() {
    let dir = fresh_dir("warmth");
    let run = || {
        let out = Command::new(bin())
            .args(["table", "--q", "3", "--format", "csv"])
            .env("GSP4_CACHE_DIR", &dir)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let cold = run();
    let warm = run();
    assert_eq!(cold, warm, "cold and warm table output must be byte-identical");
    // header plus 38 rows
    assert_eq!(String::from_utf8(cold).unwrap().lines().count(), 39);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn classes_json_reparses_with_expected_schema() {
    let dir = fresh_dir("classes");
    let out = Command::new(bin())
        .args(["classes", "--q", "3"])
        .env("GSP4_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["q"], 3);
    assert_eq!(v["class_count"], 38);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 38);
    let sizes: u64 = classes.iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(sizes, 103_680);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn induce_and_decompose_commands() {
    let dir = fresh_dir("induce");
    let out = Command::new(bin())
        .args([
            "induce",
            "--q",
            "3",
            "--spec",
            r#"{"Borel":{"m1":0,"m2":0,"ms":0}}"#,
        ])
        .env("GSP4_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // the identity class A1(2) carries the full degree 160
    let values = v["values"].as_array().unwrap();
    let id = values.iter().find(|e| e[0] == "A1(2)").unwrap();
    assert!((id[1][0].as_f64().unwrap() - 160.0).abs() < 1e-6);

    let out = Command::new(bin())
        .args([
            "decompose",
            "--q",
            "3",
            "--spec",
            r#"{"Borel":{"m1":0,"m2":0,"ms":0}}"#,
        ])
        .env("GSP4_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["norm_sq"], 8);
    assert_eq!(v["constituents"].as_array().unwrap().len(), 5);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes() {
    let dir = fresh_dir("exits");
    // resource guard: q = 7 enumeration is refused with exit 3
    let out = Command::new(bin())
        .args(["classes", "--q", "7"])
        .env("GSP4_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // usage error: unknown subcommand is clap's exit 2
    let out = Command::new(bin()).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // usage error: suite/q mismatch
    let out = Command::new(bin())
        .args(["verify", "--q", "5", "--suite", "core"])
        .env("GSP4_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn dims_command_values() {
    let out = Command::new(bin())
        .args(["dims", "--q", "3", "--format", "csv"])
        .env("GSP4_CACHE_DIR", fresh_dir("dims"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("I,") && l.contains(",160,")));
    assert!(text.lines().any(|l| l.starts_with("VIa,") && l.contains(",105,")));
    assert!(text.lines().any(|l| l.starts_with("XIa,") && l.contains(",60,")));
}
