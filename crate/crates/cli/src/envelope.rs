//! Output lines: a [`VerdictReport`] wrapped with its run configuration and
//! the field choice it was computed in.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use paley_core::{FieldCtx, Verdict, VerdictReport};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};

pub const SCHEMA: u32 = 1;

/// The ambient field: characteristic, degree, modulus and primitive element
/// as coefficient lists, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub degree: u32,
    pub modulus: Vec<u64>,
    pub generator: Vec<u64>,
}

impl FieldInfo {
    pub fn of(ctx: &FieldCtx) -> Self {
        FieldInfo {
            p: ctx.characteristic(),
            degree: ctx.degree(),
            modulus: ctx.modulus().to_vec(),
            generator: ctx.generator_poly().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema: u32,
    pub task: String,
    pub config: Value,
    pub result: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub ms: u64,
}

impl Envelope {
    pub fn new(run: &RunConfig, field: Option<&FieldInfo>, report: VerdictReport) -> Self {
        let mut config = match serde_json::to_value(run) {
            Ok(Value::Object(m)) => m,
            _ => Map::new(),
        };
        if let Some(f) = field {
            config.insert("field".into(), serde_json::to_value(f).unwrap_or(Value::Null));
        }
        config.insert("instance".into(), Value::Object(report.params.into_iter().collect()));
        Envelope {
            schema: SCHEMA,
            task: report.task,
            config: Value::Object(config),
            result: report.result,
            verdict: report.verdict,
            witness: report.witness,
            ms: report.ms,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("envelope serializes")
    }

    /// The line with the wall-time field zeroed, for determinism checks.
    pub fn timeless_line(&self) -> String {
        Envelope { ms: 0, ..self.clone() }.to_json_line()
    }

    /// `schema, task, verdict, ms` followed by dotted config/result/witness
    /// keys; nested arrays are kept as JSON text.
    fn flatten(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        flatten_into(&mut out, "config", &self.config);
        for (k, v) in &self.result {
            flatten_into(&mut out, &format!("result.{k}"), v);
        }
        if let Some(w) = &self.witness {
            flatten_into(&mut out, "witness", w);
        }
        out
    }
}

fn flatten_into(out: &mut BTreeMap<String, String>, prefix: &str, v: &Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten_into(out, &format!("{prefix}.{k}"), x);
            }
        }
        Value::String(s) => {
            out.insert(prefix.to_string(), s.clone());
        }
        Value::Null => {
            out.insert(prefix.to_string(), String::new());
        }
        other => {
            out.insert(prefix.to_string(), other.to_string());
        }
    }
}

/// Writes the envelopes as JSON Lines or as one CSV table whose columns are
/// the union of all flattened keys.
pub fn write_all<W: Write>(w: W, envelopes: &[Envelope], format: Format) -> io::Result<()> {
    match format {
        Format::Json => write_jsonl(w, envelopes),
        Format::Csv => write_csv(w, envelopes),
    }
}

fn write_jsonl<W: Write>(mut w: W, envelopes: &[Envelope]) -> io::Result<()> {
    for e in envelopes {
        writeln!(w, "{}", e.to_json_line())?;
    }
    w.flush()
}

fn write_csv<W: Write>(w: W, envelopes: &[Envelope]) -> io::Result<()> {
    let rows: Vec<_> = envelopes.iter().map(Envelope::flatten).collect();
    let columns: BTreeSet<&String> = rows.iter().flat_map(|r| r.keys()).collect();
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["schema".to_string(), "task".into(), "verdict".into(), "ms".into()];
    header.extend(columns.iter().map(|c| c.to_string()));
    out.write_record(&header)?;
    for (e, row) in envelopes.iter().zip(&rows) {
        let verdict = serde_json::to_value(e.verdict).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        let mut rec = vec![e.schema.to_string(), e.task.clone(), verdict, e.ms.to_string()];
        rec.extend(columns.iter().map(|&c| row.get(c).cloned().unwrap_or_default()));
        out.write_record(&rec)?;
    }
    out.flush()
}
