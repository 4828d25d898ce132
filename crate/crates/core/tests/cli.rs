use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use proptest::prelude::*;
use tempfile::TempDir;

const EXAMPLE: &[u8] = b"aabcabbaabaabdabbaaabbdc";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lyndon-bwt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &TempDir, name: &str, bytes: &[u8]) -> String {
    let path = dir.path().join(name);
    fs::write(&path, bytes).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn factorize_example() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "w", EXAMPLE);
    let o = run(&["factorize", &path]);
    assert!(o.status.success());
    assert_eq!(
        o.stdout,
        b"1\t7\taabcabb\n8\t17\taabaabdabb\n18\t24\taaabbdc\n"
    );
}

#[test]
fn factorize_trivial_inputs() {
    let o = run_stdin(&["factorize", "-"], b"");
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let o = run_stdin(&["factorize", "-"], b"a");
    assert_eq!(o.stdout, b"1\t1\ta\n");
}

#[test]
fn missing_file_is_input_error() {
    for cmd in ["factorize", "bwt", "unbwt", "verify", "bench"] {
        let o = run(&[cmd, "/nonexistent/input"]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert!(stderr(&o).contains("/nonexistent/input"));
    }
}

#[test]
fn bwt_mathematics_both_methods() {
    for method in ["lyndon", "naive"] {
        let o = run_stdin(
            &["bwt", "-", "--method", method, "--encoding", "ascii"],
            b"mathematics",
        );
        assert!(o.status.success());
        assert_eq!(o.stdout, b"smmihtt$ecaa");
    }
    let o = run_stdin(&["bwt", "-", "--encoding", "ascii"], b"");
    assert_eq!(o.stdout, b"$");
}

#[test]
fn bwt_default_encoding() {
    let o = run_stdin(&["bwt", "-"], b"mathematics");
    assert_eq!(o.stdout, b"sentinel_row=8\nsmmihttecaa");
}

#[test]
fn bwt_nul_byte() {
    let o = run_stdin(&["bwt", "-"], b"ab\0c");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NUL byte in input"));
}

#[test]
fn bwt_flags_change_nothing_in_output() {
    let expected = run_stdin(&["bwt", "-", "--method", "naive", "--emit-sa"], EXAMPLE).stdout;
    for chunk in ["1", "2", "5"] {
        for parallel in ["1", "2", "4"] {
            let o = run_stdin(
                &[
                    "bwt",
                    "-",
                    "--emit-sa",
                    "--chunk-factors",
                    chunk,
                    "--parallel",
                    parallel,
                ],
                EXAMPLE,
            );
            assert!(o.status.success());
            assert_eq!(o.stdout, expected, "chunk {chunk} parallel {parallel}");
        }
    }
}

#[test]
fn bwt_bad_chunk_is_input_error() {
    let o = run_stdin(&["bwt", "-", "--chunk-factors", "0"], b"ab");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sa_to_file() {
    let dir = TempDir::new().unwrap();
    let sa_path = dir.path().join("sa.txt");
    let o = run_stdin(
        &[
            "bwt",
            "-",
            "--encoding",
            "ascii",
            "--emit-sa",
            "--sa-output",
            sa_path.to_str().unwrap(),
        ],
        b"mathematics",
    );
    assert!(o.status.success());
    assert_eq!(o.stdout, b"smmihtt$ecaa");
    assert_eq!(
        fs::read_to_string(&sa_path).unwrap(),
        "12\n2\n7\n10\n5\n4\n9\n1\n6\n11\n3\n8\n"
    );
}

#[test]
fn sa_inline() {
    let o = run_stdin(&["bwt", "-", "--encoding", "hex", "--emit-sa"], b"ab");
    assert_eq!(o.stdout, b"sentinel_row=2\n6261\n\n3\n1\n2\n");
}

#[test]
fn unbwt_examples() {
    let o = run_stdin(&["unbwt", "-", "--encoding", "ascii"], b"smmihtt$ecaa");
    assert!(o.status.success());
    assert_eq!(o.stdout, b"mathematics");
    let o = run_stdin(&["unbwt", "-", "--encoding", "ascii"], b"$");
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn unbwt_malformed_exit_3() {
    let o = run_stdin(&["unbwt", "-", "--encoding", "ascii"], b"ab$$");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not a sentinel-terminated bwt"));
    let o = run_stdin(&["unbwt", "-"], b"no header");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("malformed bwt"));
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("ex1", EXAMPLE), ("math", &b"mathematics"[..])] {
        let path = write(&dir, name, text);
        let o = run(&["verify", &path, "--samples", "16"]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(String::from_utf8_lossy(&o.stdout).starts_with("ok: 17 inputs"));
    }
}

#[test]
fn verify_negative_control() {
    let o = run_stdin(
        &["verify", "-", "--inject-fault", "--samples", "2"],
        b"mathematics",
    );
    assert_eq!(o.status.code(), Some(1));
    let dump = String::from_utf8_lossy(&o.stdout);
    assert!(dump.starts_with("mismatch\n"));
    assert!(dump.contains("input_len: 1\n"));
    assert!(dump.contains("input_hex: "));
}

#[test]
fn bench_csv() {
    let o = run_stdin(
        &["bench", "-", "--chunk-factors", "1,2", "--repeat", "2"],
        b"zyxwvutsrqponmlkjihgfedcba",
    );
    assert!(o.status.success());
    let out = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "config,k,M,time_ns,total_work");
    assert_eq!(lines.len(), 5);
    let fields = |l: &str| {
        let f: Vec<String> = l.split(',').map(str::to_owned).collect();
        (f[0].clone(), f[1].clone(), f[2].clone(), f[4].clone())
    };
    assert_eq!(fields(lines[1]), fields(lines[2]));
    assert_eq!(fields(lines[3]), fields(lines[4]));
    assert_eq!(fields(lines[1]).1, "26");
    assert_eq!(fields(lines[1]).2, "1");
}

#[test]
fn bench_rejects_nul() {
    let o = run_stdin(&["bench", "-"], b"a\0");
    assert_eq!(o.status.code(), Some(2));
}

fn round_trip(dir: &Path, text: &[u8], encoding: &[&str], pipeline: &[&str]) {
    let input = dir.join("in");
    let encoded = dir.join("enc");
    fs::write(&input, text).unwrap();
    let mut bwt_args = vec!["bwt", input.to_str().unwrap()];
    bwt_args.extend_from_slice(encoding);
    bwt_args.extend_from_slice(pipeline);
    let o = run(&bwt_args);
    assert!(o.status.success(), "{}", stderr(&o));
    fs::write(&encoded, &o.stdout).unwrap();
    let mut unbwt_args = vec!["unbwt", encoded.to_str().unwrap()];
    unbwt_args.extend_from_slice(encoding);
    let o = run(&unbwt_args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(o.stdout, text);
}

#[test]
fn round_trip_fixed() {
    let dir = TempDir::new().unwrap();
    let binary: Vec<u8> = (1..=255u8).rev().chain(1..=255).collect();
    round_trip(dir.path(), &binary, &[], &[]);
    round_trip(dir.path(), &binary, &["--encoding", "hex"], &[]);
    round_trip(
        dir.path(),
        &binary,
        &["--encoding", "raw", "--sentinel", "escaped"],
        &[],
    );
    round_trip(dir.path(), b"banana\n", &["--encoding", "ascii"], &[]);
    round_trip(
        dir.path(),
        EXAMPLE,
        &["--encoding", "ascii"],
        &["--chunk-factors", "2", "--parallel", "2"],
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_random(
        text in proptest::collection::vec(1u8..=255, 0..200),
        encoding in prop_oneof![Just("raw"), Just("hex")],
        escaped in any::<bool>(),
    ) {
        let dir = TempDir::new().unwrap();
        let sentinel = if escaped { "escaped" } else { "indexed" };
        round_trip(dir.path(), &text, &["--encoding", encoding, "--sentinel", sentinel], &[]);
    }
}
