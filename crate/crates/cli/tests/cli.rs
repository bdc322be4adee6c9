use std::path::Path;
use std::process::{Command, Output};

use gallai_ramsey::detectors::find_mono_fan;
use gallai_ramsey::{write_certificate, CertificateFile, Recipe};
use tempfile::TempDir;

fn grc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grc"))
        .args(args)
        .output()
        .expect("run grc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(dir: &Path, name: &str, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.join(format!("{name}.grc"));
    let mut args = vec!["construct", name];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = grc(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

#[test]
fn construct_then_verify_fan_g4() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "fan-g4", &[]);
    let out = grc(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.ends_with("ABSENT")).count(),
        4,
        "{text}"
    );
}

#[test]
fn recoloring_one_edge_produces_a_witness() {
    let dir = TempDir::new().unwrap();
    let path = construct(dir.path(), "fan-g4", &[]);
    let cert = CertificateFile::load(&path).unwrap();
    let g = cert.to_graph().unwrap();
    // the first single-edge recoloring that creates a monochromatic F_3
    let mut broken = None;
    'search: for u in 0..g.n() {
        for v in u + 1..g.n() {
            for c in 1..=4 {
                if c == g.color(u, v) {
                    continue;
                }
                let mut h = g.clone();
                h.set_color(u, v, c).unwrap();
                if !find_mono_fan(&h, c, 3).unwrap().is_absent() {
                    broken = Some(h);
                    break 'search;
                }
            }
        }
    }
    let h = broken.expect("some recoloring creates a fan");
    let bad = dir.path().join("broken.grc");
    write_certificate(&h, &cert.metadata).save(&bad).unwrap();
    let out = grc(&["--format", "records", "verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let witness = text
        .lines()
        .find_map(|l| l.split_once("witness=").map(|(_, w)| w.to_string()))
        .unwrap_or_else(|| panic!("no witness in {text}"));
    assert_eq!(witness.split(',').count(), 7);
}

#[test]
fn certify_star_h() {
    let out = grc(&["certify", "star-h", "--n", "12", "--k", "3"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).lines().last().unwrap().starts_with("bound 27"),
        "{}",
        stdout(&out)
    );
    let out = grc(&["certify", "star-h", "--n", "12", "--k", "3", "--with-w"]);
    assert!(
        stdout(&out).lines().last().unwrap().starts_with("bound 22"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn records_output_is_reproducible() {
    let args = ["certify", "fan-g3", "--i", "4", "--format", "records"];
    let (a, b) = (grc(&args), grc(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let last = stdout(&a);
    assert!(last.lines().last().unwrap().contains("15"), "{last}");
}

#[test]
fn partition_find_and_verify() {
    let dir = TempDir::new().unwrap();
    // the pentagon blown up with K_2 parts: 10 vertices, within --find's reach
    let g = Recipe::blow_up(Recipe::pentagon(1, 2), vec![Recipe::clique(2, 3); 5])
        .expand()
        .unwrap();
    let path = dir.path().join("small.grc");
    write_certificate(&g, &[]).save(&path).unwrap();
    let file = path.to_str().unwrap();
    let found = grc(&["partition", file, "--find"]);
    assert_eq!(found.status.code(), Some(0));
    let spec = dir.path().join("parts.txt");
    std::fs::write(&spec, stdout(&found)).unwrap();
    let checked = grc(&["partition", file, "--verify", spec.to_str().unwrap()]);
    assert_eq!(checked.status.code(), Some(0), "{}", stdout(&checked));
    std::fs::write(&spec, "0 1 2 3 4\n5 6 7 8 9\n").unwrap();
    let wrong = grc(&["partition", file, "--verify", spec.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn oracle_ramsey2_paths() {
    let out = grc(&[
        "--format", "records", "oracle", "ramsey2", "--p1", "path:4", "--p2", "path:4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("value=5"), "{}", stdout(&out));
}

#[test]
fn bound_table_reports_the_delta() {
    let out = grc(&[
        "--format",
        "records",
        "bound",
        "--target",
        "fan",
        "--k",
        "4",
        "--certify",
    ]);
    assert!(out.status.success());
    let line = stdout(&out);
    assert!(
        line.contains("conjectured=69")
            && line.contains("theorem=71")
            && line.contains("certified=71"),
        "{line}"
    );
    assert!(line.contains("delta=2"), "{line}");
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(grc(&["certify", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(
        grc(&["certify", "star-h", "--n", "11", "--k", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        grc(&["verify", "/nonexistent/file.grc"]).status.code(),
        Some(2)
    );
}
