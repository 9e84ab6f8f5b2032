//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("qetsim.h").exists());

    // `cargo test` only builds the rlib, so build the static library first.
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let built = Command::new(cargo)
        .args(["build", "-p", "qetsim-ffi", "--lib"])
        .current_dir(&crate_dir)
        .status()
        .unwrap();
    assert!(built.success(), "static library build failed");
    // Test binaries live in target/debug/deps; the library one level up.
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().unwrap().parent().unwrap().join("libqetsim_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new(&cc)
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status();
    let Ok(status) = status else {
        eprintln!("skipping: no C compiler");
        return;
    };
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).arg(tmp.path()).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "smoke failed: {stdout}{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("ok"), "{stdout}");
}
