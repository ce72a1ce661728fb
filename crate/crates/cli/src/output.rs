//! Rendering run outputs and law reports as text, JSON, or CSV.

use std::collections::BTreeMap;

use nlconj::{LawReport, Verdict};
use serde_json::{json, Map, Value};

use crate::runs::RunOutput;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Default, Debug, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a LawReport>) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }

    pub fn line(&self) -> String {
        format!("summary: {} pass, {} fail, {} not-applicable", self.pass, self.fail, self.not_applicable)
    }
}

/// Rendered files keyed by name; `stdout` lists what goes to the terminal.
pub struct Rendered {
    pub files: BTreeMap<String, String>,
    pub stdout: String,
}

pub fn render(runs: &[RunOutput], extra: &[LawReport], format: Format) -> Rendered {
    let reports: Vec<&LawReport> = runs.iter().flat_map(|r| &r.reports).chain(extra).collect();
    let summary = Summary::of(reports.iter().copied());
    let mut files = BTreeMap::new();
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            for run in runs {
                s.push_str(&format!("[{}] {}\n", run.label, run.op));
                for (k, v) in &run.fields {
                    s.push_str(&format!("  {k} = {v}\n"));
                }
            }
            for r in &reports {
                s.push_str(&r.line());
                s.push('\n');
            }
            s.push_str(&summary.line());
            s.push('\n');
            files.insert("report.txt".into(), s.clone());
            s
        }
        Format::Json => {
            let runs: Vec<Value> = runs
                .iter()
                .map(|r| {
                    let fields: Map<String, Value> =
                        r.fields.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                    json!({"label": r.label, "op": r.op, "fields": fields})
                })
                .collect();
            let doc = json!({
                "runs": runs,
                "reports": reports,
                "summary": {"pass": summary.pass, "fail": summary.fail, "not_applicable": summary.not_applicable},
            });
            let s = serde_json::to_string_pretty(&doc).expect("plain JSON") + "\n";
            files.insert("report.json".into(), s.clone());
            s
        }
        Format::Csv => {
            let mut fields = csv::Writer::from_writer(Vec::new());
            fields.write_record(["run", "op", "key", "value"]).expect("in-memory write");
            for run in runs {
                for (k, v) in &run.fields {
                    fields.write_record([&run.label, &run.op, k, v]).expect("in-memory write");
                }
            }
            let mut laws = csv::Writer::from_writer(Vec::new());
            laws.write_record(["law", "instance", "lhs", "rhs", "verdict", "note"]).expect("in-memory write");
            for r in &reports {
                laws.write_record([
                    r.law.as_str(),
                    &r.instance,
                    &r.lhs.to_string(),
                    &r.rhs.to_string(),
                    &r.verdict.to_string(),
                    &r.note,
                ])
                .expect("in-memory write");
            }
            let fields = String::from_utf8(fields.into_inner().expect("flush")).expect("utf-8");
            let laws = String::from_utf8(laws.into_inner().expect("flush")).expect("utf-8");
            files.insert("fields.csv".into(), fields.clone());
            files.insert("reports.csv".into(), laws.clone());
            format!("{fields}\n{laws}")
        }
    };
    for run in runs {
        for (name, body) in &run.plots {
            files.insert(format!("plot-{name}"), body.clone());
        }
    }
    Rendered { files, stdout }
}
