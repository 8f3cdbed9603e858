//! Session documents: the `.provjson` interchange format.
//!
//! ```json
//! {"version":"provwidgets/1","widgets":{"year":{
//!   "config":{"freeze":false,"mode":"interaction","visualize":true},
//!   "domain":{"ceil":100,"floor":0,"step":1,"type":"slider"},
//!   "kind":"single_slider",
//!   "log":{"data":[{"source":"user","timestamp":1000,"value":5}],"revalidate":false}}}}
//! ```
//!
//! Serialization is canonical: object keys sorted, no insignificant
//! whitespace, integral numbers written without a fraction. Values are
//! encoded by widget kind: a number for single sliders, `[low, high]` for
//! range sliders, an array of option ids for selection widgets and a string
//! for text input. `revalidate` is an instruction, not state, and is always
//! written as `false`.

use std::collections::BTreeMap;
use std::fmt;
use std::num::{NonZeroU64, NonZeroUsize};

use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::aggregate::{AggregateSummary, BinKey};
use crate::domain::{OptionSpec, SliderScale, ValueDomain};
use crate::log::ProvenanceLog;
use crate::model::{InteractionEntry, InteractionValue, OptionId, Source, Timestamp, WidgetKind};
use crate::scheduler::{ControllerConfig, Mode, ProvenanceChange};
use crate::trace::{IntervalEnd, TemporalTrace};

pub const SCHEMA_VERSION: &str = "provwidgets/1";

/// Largest integer magnitude written without a fractional part.
const MAX_SAFE_INTEGER: f64 = 9_007_199_254_740_991.0;

#[derive(Debug, Clone, PartialEq)]
pub struct WidgetState {
    pub kind: WidgetKind,
    pub domain: ValueDomain,
    pub config: ControllerConfig,
    pub log: ProvenanceLog,
}

impl WidgetState {
    pub fn new(kind: WidgetKind, domain: ValueDomain) -> Self {
        WidgetState {
            kind,
            domain,
            config: ControllerConfig::default(),
            log: ProvenanceLog::new(kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SessionDocument {
    pub widgets: BTreeMap<String, WidgetState>,
}

/// A schema breach, located by JSON path and, where applicable, widget id
/// and entry index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaViolation {
    pub path: String,
    pub widget: Option<String>,
    pub entry: Option<usize>,
    pub reason: String,
}

impl fmt::Display for SchemaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema violation at {0}")]
    Schema(SchemaViolation),

    #[error("cannot merge widget `{widget}`: {reason}")]
    MergeConflict { widget: String, reason: String },
}

impl SessionError {
    pub fn violation(&self) -> Option<&SchemaViolation> {
        match self {
            SessionError::Schema(v) => Some(v),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Encoding

pub fn serialize(doc: &SessionDocument) -> String {
    document_value(doc).to_string()
}

pub fn document_value(doc: &SessionDocument) -> Value {
    let widgets: Map<String, Value> = doc
        .widgets
        .iter()
        .map(|(id, w)| (id.clone(), widget_value(w)))
        .collect();
    json!({ "version": SCHEMA_VERSION, "widgets": widgets })
}

fn widget_value(w: &WidgetState) -> Value {
    json!({
        "kind": w.kind.as_str(),
        "domain": domain_value(&w.domain),
        "config": config_value(&w.config),
        "log": log_value(&w.log),
    })
}

fn domain_value(d: &ValueDomain) -> Value {
    match d {
        ValueDomain::Slider(s) => json!({
            "type": "slider",
            "floor": number(s.floor()),
            "ceil": number(s.ceil()),
            "step": number(s.step()),
        }),
        ValueDomain::Options(opts) => json!({
            "type": "options",
            "options": opts
                .iter()
                .map(|o| json!({ "id": o.id.as_str(), "label": o.label }))
                .collect::<Vec<_>>(),
        }),
        ValueDomain::Text => json!({ "type": "text" }),
    }
}

fn config_value(c: &ControllerConfig) -> Value {
    let mut m = Map::new();
    match c.mode {
        Mode::Interaction => {
            m.insert("mode".into(), "interaction".into());
        }
        Mode::Time { period_ms } => {
            m.insert("mode".into(), "time".into());
            m.insert("period_ms".into(), period_ms.get().into());
        }
    }
    m.insert("freeze".into(), c.freeze.into());
    m.insert("visualize".into(), c.visualize.into());
    if let Some(label) = &c.label {
        m.insert("label".into(), label.clone().into());
    }
    Value::Object(m)
}

/// The `provenance` object exchanged with the widget layer.
pub fn log_value(log: &ProvenanceLog) -> Value {
    json!({
        "data": log.entries().iter().map(entry_value).collect::<Vec<_>>(),
        "revalidate": false,
    })
}

fn entry_value(e: &InteractionEntry) -> Value {
    json!({
        "value": value_json(&e.value),
        "timestamp": e.timestamp.millis(),
        "source": e.source.as_str(),
    })
}

pub fn value_json(v: &InteractionValue) -> Value {
    match v {
        InteractionValue::Scalar(x) => number(*x),
        InteractionValue::Range { low, high } => json!([number(*low), number(*high)]),
        InteractionValue::Options(ids) => ids.iter().map(|id| Value::from(id.as_str())).collect(),
        InteractionValue::Text(s) => Value::from(s.as_str()),
    }
}

fn number(x: f64) -> Value {
    if x.fract() == 0.0 && x.abs() <= MAX_SAFE_INTEGER {
        Value::from(x as i64)
    } else {
        Number::from_f64(x).map_or(Value::Null, Value::Number)
    }
}

/// Notification payload: `{"provenance": <log>, "widget": <id>}`.
pub fn encode_change(change: &ProvenanceChange) -> String {
    json!({ "widget": change.widget_id, "provenance": log_value(&change.log) }).to_string()
}

// ---------------------------------------------------------------------------
// Decoding

pub fn deserialize(text: &str) -> Result<SessionDocument, SessionError> {
    let root: Value = serde_json::from_str(text).map_err(|e| SessionError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_document(&root).map_err(SessionError::Schema)
}

/// Re-encodes `text` in canonical form.
pub fn canonicalize(text: &str) -> Result<String, SessionError> {
    deserialize(text).map(|d| serialize(&d))
}

#[derive(Clone)]
struct Loc {
    path: String,
    widget: Option<String>,
    entry: Option<usize>,
}

impl Loc {
    fn root() -> Self {
        Loc {
            path: "$".into(),
            widget: None,
            entry: None,
        }
    }

    fn key(&self, key: &str) -> Loc {
        Loc {
            path: format!("{}.{key}", self.path),
            ..self.clone()
        }
    }

    fn index(&self, i: usize) -> Loc {
        Loc {
            path: format!("{}[{i}]", self.path),
            ..self.clone()
        }
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, SchemaViolation> {
        Err(SchemaViolation {
            path: self.path.clone(),
            widget: self.widget.clone(),
            entry: self.entry,
            reason: reason.into(),
        })
    }
}

type Parse<T> = Result<T, SchemaViolation>;

fn object<'a>(
    v: &'a Value,
    at: &Loc,
    required: &[&str],
    optional: &[&str],
) -> Parse<&'a Map<String, Value>> {
    let Some(m) = v.as_object() else {
        return at.fail("expected an object");
    };
    for key in required {
        if !m.contains_key(*key) {
            return at.key(key).fail("missing required field");
        }
    }
    if let Some(extra) = m
        .keys()
        .find(|k| !required.contains(&k.as_str()) && !optional.contains(&k.as_str()))
    {
        return at.key(extra).fail("unknown field");
    }
    Ok(m)
}

fn string<'a>(v: &'a Value, at: &Loc) -> Parse<&'a str> {
    v.as_str().map_or_else(|| at.fail("expected a string"), Ok)
}

fn boolean(v: &Value, at: &Loc) -> Parse<bool> {
    v.as_bool()
        .map_or_else(|| at.fail("expected a boolean"), Ok)
}

fn float(v: &Value, at: &Loc) -> Parse<f64> {
    v.as_f64().map_or_else(|| at.fail("expected a number"), Ok)
}

fn unsigned(v: &Value, at: &Loc) -> Parse<u64> {
    v.as_u64()
        .map_or_else(|| at.fail("expected a non-negative integer"), Ok)
}

fn parse_document(root: &Value) -> Parse<SessionDocument> {
    let at = Loc::root();
    let m = object(root, &at, &["version", "widgets"], &[])?;
    let version = string(&m["version"], &at.key("version"))?;
    if version != SCHEMA_VERSION {
        return at.key("version").fail(format!(
            "unsupported version `{version}`, expected `{SCHEMA_VERSION}`"
        ));
    }
    let widgets_at = at.key("widgets");
    let Some(widgets) = m["widgets"].as_object() else {
        return widgets_at.fail("expected an object");
    };
    let mut doc = SessionDocument::default();
    for (id, w) in widgets {
        let mut wat = widgets_at.key(id);
        wat.widget = Some(id.clone());
        doc.widgets.insert(id.clone(), parse_widget(w, &wat)?);
    }
    Ok(doc)
}

fn parse_widget(v: &Value, at: &Loc) -> Parse<WidgetState> {
    let m = object(v, at, &["kind", "domain", "config", "log"], &[])?;
    let kind_at = at.key("kind");
    let kind: WidgetKind = match string(&m["kind"], &kind_at)?.parse() {
        Ok(k) => k,
        Err(e) => return kind_at.fail(e.to_string()),
    };
    let domain_at = at.key("domain");
    let domain = parse_domain(&m["domain"], &domain_at)?;
    if !domain.fits(kind) {
        return domain_at.fail(format!("domain does not apply to a {kind} widget"));
    }
    let config = parse_config(&m["config"], &at.key("config"))?;
    let log = parse_log(&m["log"], &at.key("log"), kind, &domain)?;
    Ok(WidgetState {
        kind,
        domain,
        config,
        log,
    })
}

fn parse_domain(v: &Value, at: &Loc) -> Parse<ValueDomain> {
    let Some(ty) = v.get("type") else {
        object(v, at, &[], &[])?;
        return at.key("type").fail("missing required field");
    };
    match string(ty, &at.key("type"))? {
        "slider" => {
            let m = object(v, at, &["type", "floor", "ceil", "step"], &[])?;
            let floor = float(&m["floor"], &at.key("floor"))?;
            let ceil = float(&m["ceil"], &at.key("ceil"))?;
            let step = float(&m["step"], &at.key("step"))?;
            match SliderScale::new(floor, ceil, step) {
                Ok(s) => Ok(ValueDomain::Slider(s)),
                Err(e) => at.fail(e.to_string()),
            }
        }
        "options" => {
            let m = object(v, at, &["type", "options"], &[])?;
            let opts_at = at.key("options");
            let Some(items) = m["options"].as_array() else {
                return opts_at.fail("expected an array");
            };
            let mut options = Vec::with_capacity(items.len());
            for (i, item) in items.iter().enumerate() {
                let oat = opts_at.index(i);
                let om = object(item, &oat, &["id", "label"], &[])?;
                let id = string(&om["id"], &oat.key("id"))?;
                if options.iter().any(|o: &OptionSpec| o.id.as_str() == id) {
                    return oat.key("id").fail(format!("duplicate option id `{id}`"));
                }
                let label = string(&om["label"], &oat.key("label"))?;
                options.push(OptionSpec::new(id, label));
            }
            Ok(ValueDomain::Options(options))
        }
        "text" => {
            object(v, at, &["type"], &[])?;
            Ok(ValueDomain::Text)
        }
        other => at
            .key("type")
            .fail(format!("unknown domain type `{other}`")),
    }
}

fn parse_config(v: &Value, at: &Loc) -> Parse<ControllerConfig> {
    let m = object(
        v,
        at,
        &["mode", "freeze", "visualize"],
        &["period_ms", "label"],
    )?;
    let mode_at = at.key("mode");
    let mode = match string(&m["mode"], &mode_at)? {
        "interaction" => {
            if m.contains_key("period_ms") {
                return at
                    .key("period_ms")
                    .fail("period_ms only applies to time mode");
            }
            Mode::Interaction
        }
        "time" => {
            let pat = at.key("period_ms");
            let Some(p) = m.get("period_ms") else {
                return pat.fail("missing required field");
            };
            match NonZeroU64::new(unsigned(p, &pat)?) {
                Some(period_ms) => Mode::Time { period_ms },
                None => return pat.fail("period must be at least 1 ms"),
            }
        }
        other => return mode_at.fail(format!("unknown mode `{other}`")),
    };
    let label = match m.get("label") {
        Some(l) => Some(string(l, &at.key("label"))?.to_owned()),
        None => None,
    };
    Ok(ControllerConfig {
        mode,
        freeze: boolean(&m["freeze"], &at.key("freeze"))?,
        visualize: boolean(&m["visualize"], &at.key("visualize"))?,
        label,
    })
}

fn parse_log(v: &Value, at: &Loc, kind: WidgetKind, domain: &ValueDomain) -> Parse<ProvenanceLog> {
    let m = object(v, at, &["data"], &["revalidate"])?;
    let revalidate = match m.get("revalidate") {
        Some(r) => boolean(r, &at.key("revalidate"))?,
        None => false,
    };
    let data_at = at.key("data");
    let Some(items) = m["data"].as_array() else {
        return data_at.fail("expected an array");
    };
    let mut entries: Vec<InteractionEntry> = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let mut eat = data_at.index(i);
        eat.entry = Some(i);
        let entry = parse_entry(item, &eat, kind, domain)?;
        if let Some(prev) = entries.last() {
            if entry.timestamp < prev.timestamp {
                return eat.key("timestamp").fail(format!(
                    "timestamp {} precedes previous entry's {}",
                    entry.timestamp, prev.timestamp
                ));
            }
        }
        entries.push(entry);
    }
    let mut log = ProvenanceLog::new(kind);
    if let Err(e) = log.set_provenance(entries, revalidate) {
        // Every invariant set_provenance checks has been checked per entry above.
        return at.fail(e.to_string());
    }
    Ok(log)
}

fn parse_entry(
    v: &Value,
    at: &Loc,
    kind: WidgetKind,
    domain: &ValueDomain,
) -> Parse<InteractionEntry> {
    let m = object(v, at, &["value", "timestamp", "source"], &[])?;
    let value_at = at.key("value");
    let value = parse_value(&m["value"], &value_at, kind)?;
    if let Err(e) = domain.validate(kind, &value) {
        return value_at.fail(e.to_string());
    }
    let timestamp = Timestamp(unsigned(&m["timestamp"], &at.key("timestamp"))?);
    let source_at = at.key("source");
    let source_name = string(&m["source"], &source_at)?;
    let Some(source) = Source::parse(source_name) else {
        return source_at.fail(format!("unknown source `{source_name}`"));
    };
    Ok(InteractionEntry {
        value,
        timestamp,
        source,
    })
}

fn parse_value(v: &Value, at: &Loc, kind: WidgetKind) -> Parse<InteractionValue> {
    match kind {
        WidgetKind::SingleSlider => Ok(InteractionValue::Scalar(float(v, at)?)),
        WidgetKind::RangeSlider => match v.as_array().map(Vec::as_slice) {
            Some([low, high]) => Ok(InteractionValue::Range {
                low: float(low, &at.index(0))?,
                high: float(high, &at.index(1))?,
            }),
            _ => at.fail("expected a [low, high] pair"),
        },
        WidgetKind::InputText => Ok(InteractionValue::Text(string(v, at)?.to_owned())),
        _ => {
            let Some(items) = v.as_array() else {
                return at.fail("expected an array of option ids");
            };
            let mut ids = std::collections::BTreeSet::new();
            for (i, item) in items.iter().enumerate() {
                let id = string(item, &at.index(i))?;
                if !ids.insert(OptionId::from(id)) {
                    return at.index(i).fail(format!("duplicate option id `{id}`"));
                }
            }
            Ok(InteractionValue::Options(ids))
        }
    }
}

// ---------------------------------------------------------------------------
// Whole-session transforms

/// Combines sessions widget by widget. Entries are concatenated and stably
/// sorted by timestamp, so ties keep input order. When more than one input
/// contributes entries to a widget, the merged entries are retagged as
/// external history. Configuration comes from the first input holding the
/// widget.
pub fn merge(docs: &[SessionDocument]) -> Result<SessionDocument, SessionError> {
    let mut out = SessionDocument::default();
    let mut contributors: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in docs {
        for (id, w) in &doc.widgets {
            if !w.log.is_empty() {
                *contributors.entry(id).or_default() += 1;
            }
            match out.widgets.get_mut(id) {
                None => {
                    let mut w = w.clone();
                    w.log.take_revalidate();
                    out.widgets.insert(id.clone(), w);
                }
                Some(acc) => {
                    if acc.kind != w.kind {
                        return Err(SessionError::MergeConflict {
                            widget: id.clone(),
                            reason: format!("kind {} vs {}", acc.kind, w.kind),
                        });
                    }
                    if acc.domain != w.domain {
                        return Err(SessionError::MergeConflict {
                            widget: id.clone(),
                            reason: "value domains differ".into(),
                        });
                    }
                    let mut entries = std::mem::replace(&mut acc.log, ProvenanceLog::new(acc.kind))
                        .into_entries();
                    entries.extend(w.log.entries().iter().cloned());
                    entries.sort_by_key(|e| e.timestamp);
                    acc.log = ProvenanceLog::from_entries(acc.kind, entries)
                        .expect("sorted entries of a single kind");
                }
            }
        }
    }
    for (id, n) in contributors {
        if n < 2 {
            continue;
        }
        let w = out.widgets.get_mut(id).expect("contributor is present");
        let entries = std::mem::replace(&mut w.log, ProvenanceLog::new(w.kind))
            .into_entries()
            .into_iter()
            .map(|e| InteractionEntry {
                source: Source::External,
                ..e
            })
            .collect();
        w.log = ProvenanceLog::from_entries(w.kind, entries).expect("retagging keeps invariants");
    }
    Ok(out)
}

/// Applies suffix retention to every widget's log.
pub fn truncate(doc: &SessionDocument, keep: NonZeroUsize) -> SessionDocument {
    let mut out = doc.clone();
    for w in out.widgets.values_mut() {
        w.log.truncate_last(keep);
        w.log.take_revalidate();
    }
    out
}

/// Computed views of one widget.
#[derive(Debug, Clone, PartialEq)]
pub struct WidgetAnalysis {
    pub aggregate: Option<AggregateSummary>,
    pub trace: Option<TemporalTrace>,
}

pub fn analyze(w: &WidgetState) -> WidgetAnalysis {
    WidgetAnalysis {
        aggregate: crate::aggregate::aggregate(&w.log, &w.domain).ok(),
        trace: crate::trace::temporal_trace(&w.log).ok(),
    }
}

/// Frequencies, recency and temporal traces per widget as JSON.
pub fn export_aggregates(doc: &SessionDocument) -> String {
    let analyses = crate::batch::analyze_session(doc);
    let widgets: Map<String, Value> = doc
        .widgets
        .iter()
        .zip(analyses)
        .map(|((id, w), a)| {
            let mut m = Map::new();
            m.insert("kind".into(), w.kind.as_str().into());
            m.insert("entries".into(), w.log.len().into());
            if let Some(label) = &w.config.label {
                m.insert("label".into(), label.clone().into());
            }
            m.insert(
                "aggregate".into(),
                a.aggregate.as_ref().map_or(Value::Null, summary_value),
            );
            m.insert(
                "trace".into(),
                a.trace.as_ref().map_or(Value::Null, trace_value),
            );
            (id.clone(), Value::Object(m))
        })
        .collect();
    json!({ "version": SCHEMA_VERSION, "widgets": widgets }).to_string()
}

pub fn bin_key_value(key: &BinKey) -> Value {
    match key {
        BinKey::Step { value, .. } => number(*value),
        BinKey::Option(id) => id.as_str().into(),
        BinKey::Text(s) => s.as_str().into(),
    }
}

pub fn summary_value(s: &AggregateSummary) -> Value {
    json!({
        "max_frequency": s.max_frequency(),
        "bins": s.bins.iter().map(|b| json!({
            "key": bin_key_value(&b.key),
            "frequency": b.frequency,
            "last_ts": b.last_ts.millis(),
            "rank": b.rank,
        })).collect::<Vec<_>>(),
    })
}

fn points(series: &[(Timestamp, f64)]) -> Value {
    series
        .iter()
        .map(|(t, v)| json!([t.millis(), number(*v)]))
        .collect()
}

pub fn trace_value(t: &TemporalTrace) -> Value {
    match t {
        TemporalTrace::Single { points: p } => json!({ "type": "points", "points": points(p) }),
        TemporalTrace::Range { low, high } => {
            json!({ "type": "range", "low": points(low), "high": points(high) })
        }
        TemporalTrace::Intervals(all) => {
            let options: Map<String, Value> = all
                .iter()
                .map(|o| {
                    let spans = o
                        .intervals
                        .iter()
                        .map(|iv| {
                            let end = match iv.end {
                                IntervalEnd::At(e) => Value::from(e.millis()),
                                IntervalEnd::Open => Value::Null,
                            };
                            json!([iv.start.millis(), end])
                        })
                        .collect();
                    (o.option.as_str().to_owned(), Value::Array(spans))
                })
                .collect();
            json!({ "type": "intervals", "options": options })
        }
        TemporalTrace::Text { items } => json!({
            "type": "timeline",
            "items": items.iter().map(|(t, s)| json!([t.millis(), s])).collect::<Vec<_>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InteractionValue as V;

    fn scented_doc() -> SessionDocument {
        let mut w = WidgetState::new(
            WidgetKind::RangeSlider,
            ValueDomain::slider(0.0, 300.0, 1.0).unwrap(),
        );
        w.log = ProvenanceLog::from_entries(
            WidgetKind::RangeSlider,
            vec![
                InteractionEntry::user(V::range(100.0, 160.0), 1),
                InteractionEntry::user(V::range(100.0, 160.0), 2),
                InteractionEntry::user(V::range(160.0, 200.0), 3),
            ],
        )
        .unwrap();
        let mut doc = SessionDocument::default();
        doc.widgets.insert("horsepower".into(), w);
        doc
    }

    #[test]
    fn empty_session() {
        assert_eq!(
            serialize(&SessionDocument::default()),
            r#"{"version":"provwidgets/1","widgets":{}}"#
        );
    }

    #[test]
    fn scented_log_wire_form() {
        let text = serialize(&scented_doc());
        let v: Value = serde_json::from_str(&text).unwrap();
        let data = &v["widgets"]["horsepower"]["log"]["data"];
        let values: Vec<&Value> = data
            .as_array()
            .unwrap()
            .iter()
            .map(|e| &e["value"])
            .collect();
        assert_eq!(
            values,
            vec![&json!([100, 160]), &json!([100, 160]), &json!([160, 200])]
        );
        assert_eq!(deserialize(&text).unwrap(), scented_doc());
        assert!(text.contains(r#""revalidate":false"#));
    }

    #[test]
    fn fractional_values_survive() {
        let mut doc = scented_doc();
        let w = doc.widgets.get_mut("horsepower").unwrap();
        w.log
            .append(V::range(27.5, 136.1), Timestamp(9), Source::External)
            .unwrap();
        let back = deserialize(&serialize(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn located_violations() {
        let text = serialize(&scented_doc()).replace(r#""timestamp":2"#, r#""timestamp":0"#);
        let err = deserialize(&text).unwrap_err();
        let v = err.violation().unwrap();
        assert_eq!(v.widget.as_deref(), Some("horsepower"));
        assert_eq!(v.entry, Some(1));
        assert_eq!(v.path, "$.widgets.horsepower.log.data[1].timestamp");
    }

    #[test]
    fn scalar_on_checkbox_is_rejected() {
        let text = r#"{"version":"provwidgets/1","widgets":{"c":{"kind":"checkbox",
            "domain":{"type":"options","options":[{"id":"A","label":"A"}]},
            "config":{"mode":"interaction","freeze":false,"visualize":true},
            "log":{"data":[{"value":3,"timestamp":1,"source":"user"}]}}}}"#;
        let v = deserialize(text).unwrap_err().violation().cloned().unwrap();
        assert_eq!(v.path, "$.widgets.c.log.data[0].value");
        assert_eq!(v.entry, Some(0));
    }

    #[test]
    fn syntax_errors_are_malformed() {
        assert!(matches!(
            deserialize("{\"version\":"),
            Err(SessionError::Malformed { .. })
        ));
    }

    #[test]
    fn unknown_version() {
        let err = deserialize(r#"{"version":"0","widgets":{}}"#).unwrap_err();
        assert_eq!(err.violation().unwrap().path, "$.version");
    }

    #[test]
    fn merge_identity_and_retag() {
        let a = scented_doc();
        assert_eq!(merge(&[a.clone(), SessionDocument::default()]).unwrap(), a);
        let m = merge(&[a.clone(), a.clone()]).unwrap();
        let log = &m.widgets["horsepower"].log;
        assert_eq!(log.len(), 6);
        assert!(log.entries().iter().all(|e| e.source == Source::External));
        assert_eq!(log.entries()[0].timestamp, Timestamp(1));
        assert_eq!(log.entries()[1].timestamp, Timestamp(1));
    }

    #[test]
    fn merge_rejects_kind_conflict() {
        let a = scented_doc();
        let mut b = SessionDocument::default();
        b.widgets.insert(
            "horsepower".into(),
            WidgetState::new(
                WidgetKind::SingleSlider,
                ValueDomain::slider(0.0, 300.0, 1.0).unwrap(),
            ),
        );
        assert!(matches!(
            merge(&[a, b]),
            Err(SessionError::MergeConflict { .. })
        ));
    }

    #[test]
    fn export_matches_aggregate() {
        let doc = scented_doc();
        let v: Value = serde_json::from_str(&export_aggregates(&doc)).unwrap();
        let bins = v["widgets"]["horsepower"]["aggregate"]["bins"]
            .as_array()
            .unwrap();
        let at = |k: i64| bins.iter().find(|b| b["key"] == json!(k)).unwrap()["frequency"].clone();
        assert_eq!(at(120), json!(2));
        assert_eq!(at(160), json!(3));
        assert_eq!(at(180), json!(1));
        assert_eq!(v["widgets"]["horsepower"]["trace"]["type"], "range");
    }

    #[test]
    fn change_payload() {
        let doc = scented_doc();
        let change = ProvenanceChange {
            widget_id: "horsepower".into(),
            log: doc.widgets["horsepower"].log.clone(),
        };
        let v: Value = serde_json::from_str(&encode_change(&change)).unwrap();
        assert_eq!(v["widget"], "horsepower");
        assert_eq!(v["provenance"]["data"].as_array().unwrap().len(), 3);
    }
}
