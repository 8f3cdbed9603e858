//! Temporal view: how a widget's state evolved over time.

use std::collections::BTreeMap;

use crate::error::{ProvenanceError, Result};
use crate::log::ProvenanceLog;
use crate::model::{InteractionValue, OptionId, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IntervalEnd {
    At(Timestamp),
    /// Still selected in the final entry.
    Open,
}

/// Half-open `[start, end)` span during which an option was selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub start: Timestamp,
    pub end: IntervalEnd,
}

impl Interval {
    pub fn contains(&self, t: Timestamp) -> bool {
        t >= self.start
            && match self.end {
                IntervalEnd::At(end) => t < end,
                IntervalEnd::Open => true,
            }
    }

    /// Clips the interval to `[from, to]`, returning `None` when nothing is left.
    pub fn clip(&self, from: Timestamp, to: Timestamp) -> Option<(Timestamp, Timestamp)> {
        let start = self.start.max(from);
        let end = match self.end {
            IntervalEnd::At(e) => e.min(to),
            IntervalEnd::Open => to,
        };
        (start < end || (start == end && self.contains(start))).then_some((start, end))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptionIntervals {
    pub option: OptionId,
    pub intervals: Vec<Interval>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TemporalTrace {
    Single {
        points: Vec<(Timestamp, f64)>,
    },
    /// One series per handle.
    Range {
        low: Vec<(Timestamp, f64)>,
        high: Vec<(Timestamp, f64)>,
    },
    Intervals(Vec<OptionIntervals>),
    Text {
        items: Vec<(Timestamp, String)>,
    },
}

impl TemporalTrace {
    pub fn intervals_for(&self, id: &str) -> Option<&[Interval]> {
        match self {
            TemporalTrace::Intervals(all) => all
                .iter()
                .find(|o| o.option.as_str() == id)
                .map(|o| o.intervals.as_slice()),
            _ => None,
        }
    }
}

/// Derives the temporal trace of a non-empty log.
///
/// For selection widgets, consecutive entries containing an option merge into
/// one interval that closes at the first later entry without it. Zero-length
/// spans (selected and replaced at the same millisecond) are dropped.
pub fn temporal_trace(log: &ProvenanceLog) -> Result<TemporalTrace> {
    let entries = log.entries();
    let first = entries.first().ok_or(ProvenanceError::EmptyLog)?;
    let trace = match &first.value {
        InteractionValue::Scalar(_) => TemporalTrace::Single {
            points: entries
                .iter()
                .filter_map(|e| match e.value {
                    InteractionValue::Scalar(v) => Some((e.timestamp, v)),
                    _ => None,
                })
                .collect(),
        },
        InteractionValue::Range { .. } => {
            let (low, high) = entries
                .iter()
                .filter_map(|e| match e.value {
                    InteractionValue::Range { low, high } => {
                        Some(((e.timestamp, low), (e.timestamp, high)))
                    }
                    _ => None,
                })
                .unzip();
            TemporalTrace::Range { low, high }
        }
        InteractionValue::Options(_) => TemporalTrace::Intervals(option_intervals(log)),
        InteractionValue::Text(_) => TemporalTrace::Text {
            items: entries
                .iter()
                .filter_map(|e| match &e.value {
                    InteractionValue::Text(s) => Some((e.timestamp, s.clone())),
                    _ => None,
                })
                .collect(),
        },
    };
    Ok(trace)
}

fn option_intervals(log: &ProvenanceLog) -> Vec<OptionIntervals> {
    let mut open: BTreeMap<&OptionId, Timestamp> = BTreeMap::new();
    let mut closed: BTreeMap<&OptionId, Vec<Interval>> = BTreeMap::new();
    for e in log.entries() {
        let Some(ids) = e.value.as_options() else {
            continue;
        };
        open.retain(|id, start| {
            if ids.contains(*id) {
                return true;
            }
            if *start < e.timestamp {
                closed.entry(id).or_default().push(Interval {
                    start: *start,
                    end: IntervalEnd::At(e.timestamp),
                });
            }
            false
        });
        for id in ids {
            open.entry(id).or_insert(e.timestamp);
        }
    }
    for (id, start) in open {
        closed.entry(id).or_default().push(Interval {
            start,
            end: IntervalEnd::Open,
        });
    }
    closed
        .into_iter()
        .map(|(id, intervals)| OptionIntervals {
            option: id.clone(),
            intervals,
        })
        .collect()
}
