use std::path::PathBuf;
use std::process::{Command, Output};

use abmod::cli::format_module;
use abmod::smatrix::random_unit_matrix;
use abmod::{Construct, GaussianRational};
use serde_json::Value;

struct Dir(PathBuf);

impl Dir {
    fn new(name: &str) -> Dir {
        let path = std::env::temp_dir().join(format!("abmod-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&path).unwrap();
        Dir(path)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_string()
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn abmod(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_abmod"));
    cmd.args(args).env_remove("ABMOD_MAX_PRECISION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn jets_separate_at_order_four() {
    let d = Dir::new("jets");
    let j = d.file("j.json", r#"{"construct": "J", "k": 3, "lambda": "0", "precision": 12}"#);
    let f = d.file("f.json", r#"{"construct": "F", "k": 3, "lambda": "0", "rho": "1/2", "precision": 12}"#);
    let at3 = json(&abmod(&["jet-iso", &j, &f, "--order", "3"], &[]));
    assert_eq!(at3["status"], "Iso");
    assert_eq!(at3["witness"].as_array().unwrap().len(), 3);
    let at4 = json(&abmod(&["jet-iso", &j, &f, "--order", "4", "--seed", "5"], &[]));
    assert_eq!(at4["status"], "NotIso");
}

#[test]
fn module_commands() {
    let d = Dir::new("cmds");
    let e0 = d.file("e0.json", r#"{"construct": "E", "lambda": 0}"#);
    let ext = json(&abmod(&["ext", &e0, &e0], &[]));
    assert_eq!((ext["ext0"].as_u64(), ext["ext1"].as_u64()), (Some(1), Some(2)));

    let e = d.file("e.json", r#"{"construct": "E", "lambda": "1/3", "precision": 6}"#);
    let dual = abmod(&["dual", &e], &[]);
    let text = String::from_utf8(json_ok(&dual)).unwrap();
    let expected = d.file("em.json", r#"{"construct": "E", "lambda": "-1/3", "precision": 6}"#);
    let expected = abmod(&["saturate", &expected], &[]);
    assert_eq!(text, String::from_utf8(json_ok(&expected)).unwrap());

    let pair = Construct::Epair { lambda: GaussianRational::from_int(2), mu: GaussianRational::ratio(1, 2) };
    let pair = pair.build(Some(12)).unwrap();
    let pair = pair.change_basis(&random_unit_matrix(2, 12, 9)).unwrap();
    let moved = d.file("pair.json", &format_module(&pair));
    let class = json(&abmod(&["classify", &moved], &[]));
    assert_eq!(class["variant"], "Pair", "{class}");

    let jh = json(&abmod(&["jh", &d.file("r3.json", r#"{"construct": "Rank3Example"}"#)], &[]));
    assert_eq!(jh["exponents"].as_array().unwrap().len(), 3);

    let v = json(&abmod(&["verify-bound", &d.file("j2.json", r#"{"construct": "J", "k": 2, "lambda": "1/2"}"#), "--seed", "3"], &[]));
    assert_eq!(v["verified"], true);
}

fn json_ok(out: &Output) -> Vec<u8> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout.clone()
}

#[test]
fn exit_codes() {
    let d = Dir::new("exit");
    let typo = d.file("typo.json", "{\"rank\": 1,\n \"precision\": 4,\n \"matrix\": [[\"1/2*c\"]]}");
    let out = abmod(&["invariants", &typo], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3:"));
    assert_eq!(abmod(&["invariants", "/nonexistent/module.json"], &[]).status.code(), Some(2));

    let r3 = d.file("r3.json", r#"{"construct": "Rank3Example"}"#);
    assert_eq!(abmod(&["classify", &r3], &[]).status.code(), Some(3));

    let j = d.file("j.json", r#"{"construct": "J", "k": 3, "lambda": "0", "precision": 3}"#);
    let capped = abmod(&["invariants", &j], &[("ABMOD_MAX_PRECISION", "3")]);
    assert_eq!(capped.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("--precision"));
    let retried = json(&abmod(&["invariants", &j], &[]));
    assert_eq!(retried["or"], 2);
    assert_eq!(retried["alpha"], "3");
}
