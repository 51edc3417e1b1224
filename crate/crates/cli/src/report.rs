use std::fmt::Write;

use chrono::{DateTime, SecondsFormat, Utc};
use idverify_core::corpus::{Category, Report, Status};
use serde::Serialize;
use serde_json::value::RawValue;

/// A float written with 17 significant digits, or null when not finite.
fn number(v: f64) -> Box<RawValue> {
    let text = if v.is_finite() { format!("{v:.16e}") } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

#[derive(Serialize)]
struct JsonOutcome<'a> {
    id: &'a str,
    status: &'static str,
    computed: Box<RawValue>,
    expected: Box<RawValue>,
    abs_err: Box<RawValue>,
    kernel_err: Box<RawValue>,
    tol: Box<RawValue>,
    seconds: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonSummary {
    pass: usize,
    fail: usize,
    error: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    engine_version: &'a str,
    profile: &'static str,
    seed: u64,
    timestamp: String,
    outcomes: Vec<JsonOutcome<'a>>,
    summary: JsonSummary,
}

fn timestamp(r: &Report) -> String {
    DateTime::<Utc>::from(r.timestamp).to_rfc3339_opts(SecondsFormat::Secs, true)
}

pub fn to_json(r: &Report) -> String {
    let body = JsonReport {
        engine_version: r.engine_version,
        profile: r.profile.name(),
        seed: r.seed,
        timestamp: timestamp(r),
        outcomes: r
            .outcomes
            .iter()
            .map(|o| JsonOutcome {
                id: &o.id,
                status: o.status.name(),
                computed: number(o.computed),
                expected: number(o.expected),
                abs_err: number(o.abs_err),
                kernel_err: number(o.kernel_err),
                tol: number(o.tol),
                seconds: number(o.seconds),
                message: o.message.as_deref(),
            })
            .collect(),
        summary: JsonSummary { pass: r.summary.pass, fail: r.summary.fail, error: r.summary.error },
    };
    let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_markdown(r: &Report) -> String {
    let s = r.summary;
    let mut md = String::new();
    let _ = writeln!(md, "# idverify report\n");
    let _ = writeln!(md, "Engine {}, profile `{}`, seed {}, {}.\n", r.engine_version, r.profile.name(), r.seed, timestamp(r));
    let _ = writeln!(md, "**{} of {} pass** ({} fail, {} error).", s.pass, s.total(), s.fail, s.error);
    for cat in Category::ALL {
        let group: Vec<_> = r.outcomes.iter().filter(|o| o.category == cat).collect();
        if group.is_empty() {
            continue;
        }
        let pass = group.iter().filter(|o| o.status == Status::Pass).count();
        let _ = writeln!(md, "\n## {} ({pass}/{} pass)\n", cat.name(), group.len());
        let _ = writeln!(md, "| id | status | computed | expected | abs err | kernel err | tol | seconds |");
        let _ = writeln!(md, "|---|---|---:|---:|---:|---:|---:|---:|");
        for o in group {
            let _ = writeln!(
                md,
                "| {} | {} | {:.12e} | {:.12e} | {:.2e} | {:.2e} | {:.1e} | {:.3} |",
                o.id,
                o.status.name(),
                o.computed,
                o.expected,
                o.abs_err,
                o.kernel_err,
                o.tol,
                o.seconds
            );
        }
    }
    md
}
