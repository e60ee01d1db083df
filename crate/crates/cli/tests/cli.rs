use serde_json::Value;
use std::path::Path;

fn run(dir: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["tmfwb", "--out-dir", dir.to_str().unwrap()];
    argv.extend_from_slice(args);
    cli::run(argv)
}

fn read_json(p: impl AsRef<Path>) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn psi_eval_f1() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["psi-eval", "--n", "3", "--form", "f_1"]), 0);
    let v = read_json(d.path().join("psi3-f1.json"));
    assert_eq!(v["data"]["image"], "-15*a1*a3");
    assert_eq!(v["data"]["leading_term"], "a1*a3");
    assert_eq!(v["tool"], "tmfwb");
    assert_eq!(v["config"]["command"], "psi-eval");
    assert!(!v["anchor"].as_str().unwrap().is_empty());
}

#[test]
fn fgl_images_table() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["fgl-images", "--nmax", "3"]), 0);
    let v = read_json(d.path().join("fgl-images.json"));
    let rows = v["data"]["rows"].as_array().unwrap();
    assert_eq!(rows[1]["v_n"], "a1");
    assert_eq!(rows[2]["v_n"], "a3");
    assert_eq!(rows[3]["v_n"], "7*a1^4*a3 + 7*a1*a3^2");
    assert_eq!(rows[3]["t_n_terms"], 22);
}

#[test]
fn csv_carries_metadata() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["--format", "csv", "mahler-tables", "--n-max", "8"]), 0);
    let s = std::fs::read_to_string(d.path().join("mahler-eval.csv")).unwrap();
    assert!(s.starts_with("# tool=tmfwb\n"));
    assert!(s.contains("# config=t_max:default;precision:60;"));
    assert_eq!(run(d.path(), &["--format", "csv", "psi-eval", "--n", "5", "--form", "f1"]), 0);
    let s = std::fs::read_to_string(d.path().join("psi5-f1.csv")).unwrap();
    assert!(s.contains("path,value\n"));
}

#[test]
fn ext_chart_over_a1() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["--t-max", "16", "ext-chart", "--algebra", "1"]), 0);
    let v = read_json(d.path().join("ext-chart-F2-A1.json"));
    assert_eq!(v["config"]["t_max"], 16);
    let recs = v["data"]["records"].as_array().unwrap();
    assert!(recs.iter().any(|r| r["s"] == 3 && r["t"] == 7 && r["dim"] == 1));
}

#[test]
fn ext_chart_from_module_file() {
    let d = tempfile::tempdir().unwrap();
    let def = steenrod::ModuleDef::from_comodule(&steenrod::Comodule::bg(0, 1, 1));
    let f = d.path().join("hz1.txt");
    std::fs::write(&f, def.to_text()).unwrap();
    assert_eq!(run(d.path(), &["--t-max", "12", "ext-chart", "--algebra", "1", "--module-file", f.to_str().unwrap()]), 0);
    let a = std::fs::read(d.path().join("ext-chart-HZ_1-A1.json")).unwrap();
    assert_eq!(run(d.path(), &["--t-max", "12", "ext-chart", "--algebra", "1", "--module", "HZ_1"]), 0);
    let b = std::fs::read(d.path().join("ext-chart-HZ_1-A1.json")).unwrap();
    assert_eq!(a, b);
    // level mismatch is a usage error
    assert_eq!(run(d.path(), &["ext-chart", "--algebra", "2", "--module-file", f.to_str().unwrap()]), 2);
}

#[test]
fn outputs_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let args = ["--threads", "3", "certify-all", "--only", "1,2,5"];
    assert_eq!(run(d.path(), &args), 0);
    let a = std::fs::read(d.path().join("certify-all.json")).unwrap();
    assert_eq!(run(d.path(), &args), 0);
    assert_eq!(a, std::fs::read(d.path().join("certify-all.json")).unwrap());
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["no-such-command"]), 2);
    assert_eq!(run(d.path(), &["psi-eval", "--n", "3", "--form", "f1", "--bogus"]), 2);
    assert_eq!(run(d.path(), &["psi-eval", "--n", "7", "--form", "f1"]), 2);
    assert_eq!(run(d.path(), &["psi-eval", "--n", "3", "--form", "g1"]), 2);
    assert_eq!(run(d.path(), &["ext-chart", "--algebra", "3"]), 2);
    assert_eq!(run(d.path(), &["certify-all", "--only", "9"]), 2);
    // a file where the directory should be
    let blocker = d.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    assert_eq!(cli::run(["tmfwb", "--out-dir", blocker.to_str().unwrap(), "fgl-images"]), 2);
    // known-failing criterion: certification failure
    assert_eq!(run(d.path(), &["certify-all", "--only", "7"]), 1);
    assert_eq!(run(d.path(), &["bg-verify", "--hz-j-max", "2", "--bo-j-max", "1"]), 0);
}

#[test]
fn form_names() {
    assert_eq!(cli::commands::normalize_form("f_12"), "f12");
    assert_eq!(cli::commands::normalize_form("tc6f9_2"), "tc6f9_2");
    assert_eq!(cli::commands::normalize_form("f_1 f_2"), "f_1 f_2");
}

#[test]
fn schemas_parse_and_name_required_keys() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas");
    let env = read_json(dir.join("envelope.schema.json"));
    let req: Vec<&str> = env["required"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(req, ["tool", "version", "command", "anchor", "config", "data"]);
    for f in ["ext-chart.schema.json", "certify.schema.json"] {
        read_json(dir.join(f));
    }
}
