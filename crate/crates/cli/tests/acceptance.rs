//! Acceptance criterion 11: the file parser never crashes on malformed
//! input. One thousand random mutations of a valid algebra file must leave
//! the process exiting cleanly - code 0 if the mutation happened to keep the
//! file valid, code 1 with a diagnostic otherwise. Panics or signals fail
//! the criterion.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn criterion_11_malformed_files_never_crash() {
    let dir = tempfile::tempdir().unwrap();
    let base = Command::new(env!("CARGO_BIN_EXE_algint"))
        .current_dir(dir.path())
        .args(["catalog", "quaternions", "-o", "q.json"])
        .output()
        .expect("binary runs");
    assert!(base.status.success());
    let pristine = std::fs::read(dir.path().join("q.json")).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mutated_path = dir.path().join("mutated.json");
    let mut exit_zero = 0usize;
    let mut exit_one = 0usize;
    for case in 0..1000 {
        let mut bytes = pristine.clone();
        // one to three random point mutations: substitute, insert, delete,
        // or truncate
        for _ in 0..rng.random_range(1..=3) {
            if bytes.is_empty() {
                break;
            }
            let pos = rng.random_range(0..bytes.len());
            match rng.random_range(0..4) {
                0 => bytes[pos] = rng.random_range(0..=255),
                1 => bytes.insert(pos, rng.random_range(0..=255)),
                2 => {
                    bytes.remove(pos);
                }
                _ => bytes.truncate(pos),
            }
        }
        std::fs::write(&mutated_path, &bytes).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_algint"))
            .current_dir(dir.path())
            .args(["inspect", "mutated.json"])
            .output()
            .expect("binary runs");
        match out.status.code() {
            Some(0) => exit_zero += 1,
            Some(1) => {
                assert!(
                    !out.stderr.is_empty(),
                    "case {case}: exit 1 without a diagnostic"
                );
                exit_one += 1;
            }
            other => {
                println!("ACCEPTANCE 11 (parser robustness): FAIL - case {case} exited {other:?}");
                panic!(
                    "case {case}: mutation must exit 0 or 1, got {other:?}; stderr: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
            }
        }
    }
    // a handful of entirely random byte files, same contract
    for case in 0..50 {
        let len = rng.random_range(0..400usize);
        let bytes: Vec<u8> = (0..len).map(|_| rng.random_range(0..=255)).collect();
        std::fs::write(&mutated_path, &bytes).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_algint"))
            .current_dir(dir.path())
            .args(["inspect", "mutated.json"])
            .output()
            .expect("binary runs");
        assert_eq!(
            out.status.code(),
            Some(1),
            "random-bytes case {case} must exit 1, got {:?}",
            out.status.code()
        );
        assert!(!out.stderr.is_empty(), "random-bytes case {case}: no diagnostic");
    }

    assert!(exit_one > 0, "mutations never produced a rejected file");
    println!(
        "ACCEPTANCE 11 (parser robustness): PASS - 1000 mutations ({exit_one} rejected with diagnostics, {exit_zero} still valid) + 50 random-byte files rejected"
    );
}
