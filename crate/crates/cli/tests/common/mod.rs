#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub fn qmk(args: &[&str]) -> Output {
    qmk_env(args, &[])
}

pub fn qmk_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qmk"));
    cmd.args(args).env_remove("QMK_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn qmk")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

pub fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn schema_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas"]
        .iter()
        .collect()
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).expect("schema file");
    serde_json::from_str(&text).expect("schema JSON")
}

/// Validation errors of `instance` against `schemas/<name>`; empty when valid.
pub fn schema_errors(name: &str, instance: &Value) -> Vec<String> {
    let common = load("common.schema.json");
    let id = common["$id"].as_str().unwrap().to_string();
    let registry = jsonschema::Registry::new()
        .add(id, common)
        .expect("register common schema")
        .prepare()
        .expect("prepare registry");
    let validator = jsonschema::options()
        .with_registry(&registry)
        .build(&load(name))
        .expect("compile schema");
    validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect()
}

pub fn assert_valid(name: &str, instance: &Value) {
    let errors = schema_errors(name, instance);
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}
