use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_public_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/zerosum.h")).unwrap();
    for symbol in [
        "typedef struct ZsPair ZsPair;",
        "typedef struct ZsReport ZsReport;",
        "typedef struct ZsPairList ZsPairList;",
        "ZS_STATUS_OK = 0",
        "ZS_STATUS_PANIC",
        "ZS_MODE_PRUNED",
        "zs_pair_parse(",
        "zs_pair_parse_json(",
        "zs_pair_from_runs(",
        "zs_pair_reducibility(",
        "zs_derive_product(",
        "zs_derive_chain(",
        "zs_compute_ell(",
        "zs_report_witness(",
        "zs_enumerate(",
        "zs_allocate_marbles(",
        "zs_last_error(",
        "zs_string_free(",
    ] {
        assert!(header.contains(symbol), "missing {symbol}");
    }
}

/// Directory holding the library artifacts of this build.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = artifact_dir().join("libzerosum_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("examples/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("7^3 1^2 | 6^3 5 irreducible=1 length=9"),
        "{stdout}"
    );
    assert!(stdout.contains("derived 5 | 1^5"), "{stdout}");
    assert!(stdout.contains("ell(3)=5"), "{stdout}");
    assert!(stdout.contains("error: "), "{stdout}");
}
