use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/modext.h")).unwrap();
    for name in [
        "modext_code_from_json",
        "modext_code_to_json",
        "modext_code_length",
        "modext_code_free",
        "modext_forge",
        "modext_check",
        "modext_min_length",
        "modext_gaussian_binomial",
        "modext_string_free",
        "modext_last_error_message",
        "typedef struct ModextCode ModextCode",
        "MODEXT_STATUS_BUDGET = 4",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libmodext_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out = tempfile_path();
    let status = Command::new("cc")
        .arg(dir.join("tests/c_smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("cc available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

fn tempfile_path() -> PathBuf {
    std::env::temp_dir().join(format!("modext_c_smoke_{}", std::process::id()))
}
