use std::fmt::Write;

use provwidgets_core::batch::analyze_session;
use provwidgets_core::session::{self, SessionDocument};
use provwidgets_core::{IntervalEnd, TemporalTrace, Timestamp};
use serde_json::{json, Map, Value};

fn header(out: &mut String, id: &str, w: &session::WidgetState) {
    let _ = write!(out, "widget {id} ({}, {} entries", w.kind, w.log.len());
    if let Some(label) = &w.config.label {
        let _ = write!(out, ", label {label:?}");
    }
    out.push_str(")\n");
}

pub fn summary_table(doc: &SessionDocument) -> String {
    let mut out = String::new();
    for ((id, w), analysis) in doc.widgets.iter().zip(analyze_session(doc)) {
        header(&mut out, id, w);
        let Some(summary) = analysis.aggregate else {
            out.push_str("  (no provenance)\n");
            continue;
        };
        let _ = writeln!(
            out,
            "  {:<24} {:>9} {:>15} {:>5}",
            "key", "frequency", "last_ts", "rank"
        );
        for b in &summary.bins {
            let key = session::bin_key_value(&b.key).to_string();
            let _ = writeln!(
                out,
                "  {key:<24} {:>9} {:>15} {:>5}",
                b.frequency, b.last_ts, b.rank
            );
        }
    }
    out.trim_end().to_owned()
}

fn end_label(end: IntervalEnd) -> String {
    match end {
        IntervalEnd::At(t) => t.to_string(),
        IntervalEnd::Open => "open".into(),
    }
}

pub fn trace_text(doc: &SessionDocument) -> String {
    let mut out = String::new();
    for ((id, w), analysis) in doc.widgets.iter().zip(analyze_session(doc)) {
        header(&mut out, id, w);
        match analysis.trace {
            None => out.push_str("  (no provenance)\n"),
            Some(TemporalTrace::Single { points }) => {
                for (t, v) in points {
                    let _ = writeln!(out, "  {t:<15} {v}");
                }
            }
            Some(TemporalTrace::Range { low, high }) => {
                for ((t, lo), (_, hi)) in low.into_iter().zip(high) {
                    let _ = writeln!(out, "  {t:<15} [{lo}, {hi}]");
                }
            }
            Some(TemporalTrace::Intervals(options)) => {
                for o in options {
                    let spans: Vec<String> = o
                        .intervals
                        .iter()
                        .map(|iv| format!("[{}, {})", iv.start, end_label(iv.end)))
                        .collect();
                    let _ = writeln!(out, "  {:<16} {}", o.option, spans.join(" "));
                }
            }
            Some(TemporalTrace::Text { items }) => {
                for (t, s) in items {
                    let _ = writeln!(out, "  {t:<15} {s:?}");
                }
            }
        }
    }
    out.trim_end().to_owned()
}

pub fn traces_json(doc: &SessionDocument) -> String {
    let widgets: Map<String, Value> = doc
        .widgets
        .keys()
        .zip(analyze_session(doc))
        .map(|(id, a)| {
            let trace = a.trace.as_ref().map_or(Value::Null, session::trace_value);
            (id.clone(), trace)
        })
        .collect();
    json!({ "widgets": widgets }).to_string()
}

pub fn replay(doc: &SessionDocument, at: Timestamp, as_json: bool) -> String {
    let states = doc
        .widgets
        .iter()
        .map(|(id, w)| (id, w.log.state_at(at).map(session::value_json)));
    if as_json {
        let widgets: Map<String, Value> = states
            .map(|(id, v)| (id.clone(), v.unwrap_or(Value::Null)))
            .collect();
        return json!({ "at": at.millis(), "widgets": widgets }).to_string();
    }
    let mut out = String::new();
    for (id, v) in states {
        let shown = v.map_or_else(|| "none".to_owned(), |v| v.to_string());
        let _ = writeln!(out, "{id}\t{shown}");
    }
    out.trim_end().to_owned()
}
