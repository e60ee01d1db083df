//! Run configuration and the metadata envelope every output file carries.

use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const TOOL: &str = "tmfwb";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const OUT_DIR_ENV: &str = "TMFWB_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub t_max: Option<u64>,
    pub precision: usize,
    pub out_dir: PathBuf,
    pub format: Format,
    pub threads: usize,
}

/// What a result file reproduces; plain object names.
pub fn anchor(command: &str) -> &'static str {
    match command {
        "ext-chart" => "Ext charts over A(n)",
        "bg-verify" => "Brown-Gitler comodules, splittings and exact sequences",
        "rational-gens" => "rational generators of tmf cooperations",
        "fgl-images" => "formal group law of tmf1(3) and BP generator images",
        "mahler-tables" => "g- and 9-Mahler bases of numerical polynomials",
        "hz-image" => "image of HZ_j summands in bo cooperations",
        "twovar-library" => "two-variable modular form generators",
        "psi-eval" => "level-3 and level-5 pushforwards",
        "certify-all" => "acceptance criteria",
        _ => "",
    }
}

pub fn envelope(cfg: &RunConfig, data: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": cfg.command,
        "anchor": anchor(&cfg.command),
        "config": cfg,
        "data": data,
    })
}

/// `# key=value` header lines for CSV outputs.
pub fn csv_header(cfg: &RunConfig) -> String {
    let mut s = String::new();
    let t = cfg.t_max.map(|t| t.to_string()).unwrap_or_else(|| "default".into());
    let _ = writeln!(s, "# tool={TOOL}");
    let _ = writeln!(s, "# version={VERSION}");
    let _ = writeln!(s, "# command={}", cfg.command);
    let _ = writeln!(s, "# anchor={}", anchor(&cfg.command));
    let _ = writeln!(
        s,
        "# config=t_max:{t};precision:{};out_dir:{};format:{};threads:{}",
        cfg.precision,
        cfg.out_dir.display(),
        cfg.format.ext(),
        cfg.threads
    );
    s
}

/// Flatten JSON to `path,value` rows for commands without a natural table.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn rec(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| rec(&join(prefix, k), x, out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| rec(&join(prefix, &i.to_string()), x, out)),
            Value::String(s) => out.push((prefix.into(), s.clone())),
            other => out.push((prefix.into(), other.to_string())),
        }
    }
    fn join(a: &str, b: &str) -> String {
        if a.is_empty() {
            b.into()
        } else {
            format!("{a}.{b}")
        }
    }
    let mut out = vec![];
    rec("", v, &mut out);
    out
}

pub fn flat_csv(v: &Value) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(["path", "value"]).expect("in-memory write");
    for (p, x) in flatten(v) {
        w.write_record([p, x]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

pub fn out_path(dir: &Path, stem: &str, f: Format) -> PathBuf {
    dir.join(format!("{stem}.{}", f.ext()))
}
