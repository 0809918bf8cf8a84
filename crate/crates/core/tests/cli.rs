use std::path::Path;
use std::process::{Command, Output};

use chanrev::cli::files;
use chanrev::zoo;

fn chanrev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chanrev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn decaying_file(dir: &Path) -> String {
    write(dir, "decaying.json", &files::format_channel(&zoo::decaying_channel(0.36).unwrap()))
}

#[test]
fn reverse_decaying_two_kraus() {
    let dir = tempfile::tempdir().unwrap();
    let file = decaying_file(dir.path());
    let out = chanrev(&["reverse", &file, "--method", "two-kraus", "--leading", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let rev = files::parse_channel(&stdout(&out), files::FILE_TOL).unwrap();
    let a = &rev.kraus()[0];
    let b = &rev.kraus()[1];
    assert!((a[(1, 0)].re - 0.6).abs() < 1e-15 && a[(0, 1)].norm() == 0.0);
    assert!((b[(0, 0)].re - 0.8).abs() < 1e-15 && (b[(1, 1)].re - 1.0).abs() < 1e-15);
}

#[test]
fn reverse_decaying_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let file = decaying_file(dir.path());
    let crooks = chanrev(&["reverse", &file, "--method", "crooks"]);
    assert_eq!(crooks.status.code(), Some(4));
    assert!(stderr(&crooks).contains("invariant state not invertible"));
    assert!(stdout(&crooks).is_empty());

    let dual = chanrev(&["reverse", &file, "--method", "dual"]);
    assert_eq!(dual.status.code(), Some(4));
    assert!(stderr(&dual).contains("unital"));

    let ess = chanrev(&["zoo", "random", "--n", "2", "--k", "3", "--seed", "4"]);
    let three = write(dir.path(), "three.json", &stdout(&ess));
    let two = chanrev(&["reverse", &three, "--method", "two-kraus"]);
    assert_eq!(two.status.code(), Some(4));
}

#[test]
fn round_trip_through_reverse_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = decaying_file(dir.path());
    let target = dir.path().join("rev.json");
    let out = chanrev(&["reverse", &file, "--method", "essential", "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&target).unwrap();
    let again = files::format_channel(&files::parse_channel(&text, files::FILE_TOL).unwrap());
    assert_eq!(again, text);
}

#[test]
fn info_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = decaying_file(dir.path());
    let out = chanrev(&["info", &file, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let d: Vec<f64> = v["canonical_weights"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((d[0] - 1.64).abs() < 1e-12 && (d[1] - 0.36).abs() < 1e-12);
    assert_eq!(v["unital"], false);
    assert_eq!(v["invariant_state"][0][0][0].as_f64().unwrap().round(), 1.0);

    let id = write(dir.path(), "id.json", &files::format_channel(&chanrev::QuantumChannel::identity(2)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&chanrev(&["info", &id, "--json"]))).unwrap();
    assert_eq!(v["kraus_rank"], 1);
    assert!((v["canonical_weights"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    for flag in ["trace_preserving", "unital", "bistochastic", "selfdual"] {
        assert_eq!(v[flag], true, "{flag}");
    }
    // The identity fixes every state.
    assert!(v["invariant_state"].is_null());
}

#[test]
fn invalid_channel_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.json",
        "{\"dim\": 2, \"kraus\": [[[[1, 0], [0, 0]], [[0, 0], [0.9486832980505138, 0]]]]}\n",
    );
    let out = chanrev(&["info", &file]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("residual 1.000e-1"), "{}", stderr(&out));

    let garbled = write(dir.path(), "garbled.json", "{\"dim\": 2,\n\"kraus\": [[[1, 0]]\n");
    let out = chanrev(&["info", &garbled]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"));
}

#[test]
fn check_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = decaying_file(dir.path());
    let out = chanrev(&["check", &file, "--method", "two-kraus", "--beta", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["jarzynski"]["residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["entropy_production"][0][1], "undefined");

    let star = write(
        dir.path(),
        "star.json",
        &stdout(&chanrev(&["zoo", "pauli", "--p", "0.25,0.25,0.25,0.25"])),
    );
    let out = chanrev(&["check", &star, "--method", "dual"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&chanrev(&["check", &star, "--method", "dual", "--json"]))).unwrap();
    for row in v["forward"].as_array().unwrap() {
        for x in row.as_array().unwrap() {
            assert!((x.as_f64().unwrap() - 0.5).abs() < 1e-15);
        }
    }
    for row in v["entropy_production"].as_array().unwrap() {
        for x in row.as_array().unwrap() {
            assert!(x.as_f64().unwrap().abs() < 1e-10);
        }
    }

    let h = files::format_observable(&zoo::random_hamiltonian(2, 3).unwrap());
    let hi = write(dir.path(), "hi.json", &h);
    let out = chanrev(&["check", &file, "--method", "essential", "--hi", &hi, "--beta", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("jarzynski"));
}

#[test]
fn residual_tripwire() {
    // An impossible tolerance forces the tripwire even though the relations hold.
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "r.json",
        &files::format_channel(&zoo::random_channel(3, 2, 1).unwrap()),
    );
    let out = chanrev(&["check", &file, "--method", "essential", "--beta", "2", "--residual-tol", "0"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn zoo_and_simplex() {
    let out = chanrev(&["zoo", "decaying", "--p", "0.36"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0.6") && text.contains("0.8") && text.contains("1.0"));

    let star = files::parse_channel(&stdout(&chanrev(&["zoo", "pauli", "--p", "0.25,0.25,0.25,0.25"])), 1e-8).unwrap();
    assert!(chanrev::channel::channels_equal(&star, &zoo::depolarizing_channel(2).unwrap(), 1e-15).unwrap());

    assert_eq!(stdout(&chanrev(&["simplex", "--p", "1,0,0,0"])), "1.000 1.000 1.000\n");
    assert_eq!(chanrev(&["zoo", "pauli", "--p", "0.3,0.3"]).status.code(), Some(2));
    assert_eq!(chanrev(&["frobnicate"]).status.code(), Some(2));
}
