//! Frequency and recency per bin.
//!
//! Bins are grid steps for sliders, option ids for selection widgets and
//! distinct strings for text input. A range entry covers every step between
//! its snapped endpoints, both ends included. Recency is kept as the
//! timestamp of the latest contributing entry plus its dense rank (1 = most
//! recent); untouched bins are omitted.

use std::collections::{BTreeMap, HashMap};

use crate::domain::{SliderScale, ValueDomain};
use crate::error::{ProvenanceError, Result};
use crate::log::ProvenanceLog;
use crate::model::{InteractionValue, OptionId, Timestamp, WidgetKind};

#[derive(Debug, Clone, PartialEq)]
pub enum BinKey {
    /// A slider grid point.
    Step {
        index: u64,
        value: f64,
    },
    Option(OptionId),
    Text(String),
}

impl std::fmt::Display for BinKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BinKey::Step { value, .. } => write!(f, "{value}"),
            BinKey::Option(id) => f.write_str(id.as_str()),
            BinKey::Text(s) => write!(f, "{s:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bin {
    pub key: BinKey,
    pub frequency: u64,
    pub last_ts: Timestamp,
    /// Dense recency rank; bins sharing `last_ts` share a rank.
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateSummary {
    pub kind: WidgetKind,
    /// Ordered by key: grid index, then option-list position, then string.
    pub bins: Vec<Bin>,
}

impl AggregateSummary {
    pub fn bin(&self, key: &BinKey) -> Option<&Bin> {
        self.bins.iter().find(|b| &b.key == key)
    }

    /// Bin holding the grid point nearest to `value`.
    pub fn step(&self, value: f64) -> Option<&Bin> {
        self.bins.iter().find(|b| match b.key {
            BinKey::Step { value: v, .. } => v == value,
            _ => false,
        })
    }

    pub fn option(&self, id: &str) -> Option<&Bin> {
        self.bins
            .iter()
            .find(|b| matches!(&b.key, BinKey::Option(o) if o.as_str() == id))
    }

    pub fn text(&self, s: &str) -> Option<&Bin> {
        self.bins
            .iter()
            .find(|b| matches!(&b.key, BinKey::Text(t) if t == s))
    }

    pub fn recency_rank(&self, key: &BinKey) -> Option<u32> {
        self.bin(key).map(|b| b.rank)
    }

    pub fn total_frequency(&self) -> u64 {
        self.bins.iter().map(|b| b.frequency).sum()
    }

    pub fn max_frequency(&self) -> u64 {
        self.bins.iter().map(|b| b.frequency).max().unwrap_or(0)
    }

    /// Number of distinct recency shades in use.
    pub fn distinct_ranks(&self) -> u32 {
        self.bins.iter().map(|b| b.rank).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    frequency: u64,
    last_ts: Timestamp,
}

impl Tally {
    fn bump(slot: &mut Option<Tally>, ts: Timestamp) {
        match slot {
            Some(t) => {
                t.frequency += 1;
                t.last_ts = t.last_ts.max(ts);
            }
            None => {
                *slot = Some(Tally {
                    frequency: 1,
                    last_ts: ts,
                })
            }
        }
    }
}

/// Computes the aggregate view of a non-empty log.
pub fn aggregate(log: &ProvenanceLog, domain: &ValueDomain) -> Result<AggregateSummary> {
    if log.is_empty() {
        return Err(ProvenanceError::EmptyLog);
    }
    let kind = log.kind();
    if !domain.fits(kind) {
        return Err(ProvenanceError::InvalidDomain(format!(
            "domain does not apply to a {kind} widget"
        )));
    }
    let tallies = match (kind, domain) {
        (WidgetKind::SingleSlider, ValueDomain::Slider(scale)) => scalar_bins(log, scale),
        (WidgetKind::RangeSlider, ValueDomain::Slider(scale)) => range_bins(log, scale),
        (_, ValueDomain::Options(_)) => option_bins(log, domain),
        (WidgetKind::InputText, ValueDomain::Text) => text_bins(log),
        _ => unreachable!("domain fit checked above"),
    };
    Ok(AggregateSummary {
        kind,
        bins: rank(tallies),
    })
}

fn scalar_bins(log: &ProvenanceLog, scale: &SliderScale) -> Vec<(BinKey, Tally)> {
    let mut by_index: BTreeMap<u64, Option<Tally>> = BTreeMap::new();
    for e in log.entries() {
        if let InteractionValue::Scalar(v) = e.value {
            Tally::bump(
                by_index.entry(scale.snap_index(v)).or_default(),
                e.timestamp,
            );
        }
    }
    by_index
        .into_iter()
        .filter_map(|(index, t)| Some((step_key(scale, index), t?)))
        .collect()
}

/// Coverage counts through a difference array over the touched span; last
/// timestamps by painting each cell once, newest entry first.
fn range_bins(log: &ProvenanceLog, scale: &SliderScale) -> Vec<(BinKey, Tally)> {
    let spans: Vec<(u64, u64, Timestamp)> = log
        .entries()
        .iter()
        .filter_map(|e| match e.value {
            InteractionValue::Range { low, high } => {
                Some((scale.snap_index(low), scale.snap_index(high), e.timestamp))
            }
            _ => None,
        })
        .collect();
    let Some(origin) = spans.iter().map(|s| s.0).min() else {
        return Vec::new();
    };
    let end = spans.iter().map(|s| s.1).max().unwrap_or(origin);
    let width = (end - origin + 1) as usize;

    let mut delta = vec![0i64; width + 1];
    for &(lo, hi, _) in &spans {
        delta[(lo - origin) as usize] += 1;
        delta[(hi - origin) as usize + 1] -= 1;
    }

    // next_unpainted[i] points at the first cell >= i not yet assigned a timestamp.
    let mut next_unpainted: Vec<usize> = (0..=width).collect();
    let mut last_ts = vec![Timestamp(0); width];
    for &(lo, hi, ts) in spans.iter().rev() {
        let hi = (hi - origin) as usize;
        let mut i = find(&mut next_unpainted, (lo - origin) as usize);
        while i <= hi {
            last_ts[i] = ts;
            next_unpainted[i] = i + 1;
            i = find(&mut next_unpainted, i + 1);
        }
    }

    let mut running = 0i64;
    let mut out = Vec::new();
    for (offset, d) in delta[..width].iter().enumerate() {
        running += d;
        if running > 0 {
            out.push((
                step_key(scale, origin + offset as u64),
                Tally {
                    frequency: running as u64,
                    last_ts: last_ts[offset],
                },
            ));
        }
    }
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    let mut root = i;
    while parent[root] != root {
        root = parent[root];
    }
    while parent[i] != root {
        let next = parent[i];
        parent[i] = root;
        i = next;
    }
    root
}

fn option_bins(log: &ProvenanceLog, domain: &ValueDomain) -> Vec<(BinKey, Tally)> {
    let mut by_id: HashMap<&OptionId, Option<Tally>> = HashMap::new();
    for e in log.entries() {
        if let InteractionValue::Options(ids) = &e.value {
            for id in ids {
                Tally::bump(by_id.entry(id).or_default(), e.timestamp);
            }
        }
    }
    let mut bins: Vec<(&OptionId, Tally)> = by_id
        .into_iter()
        .filter_map(|(id, t)| Some((id, t?)))
        .collect();
    // Configured order first; ids missing from the domain (injected history) last.
    bins.sort_by(|(a, _), (b, _)| {
        let pa = domain.position_of(a).unwrap_or(usize::MAX);
        let pb = domain.position_of(b).unwrap_or(usize::MAX);
        pa.cmp(&pb).then_with(|| a.cmp(b))
    });
    bins.into_iter()
        .map(|(id, t)| (BinKey::Option(id.clone()), t))
        .collect()
}

fn text_bins(log: &ProvenanceLog) -> Vec<(BinKey, Tally)> {
    let mut by_text: BTreeMap<&str, Option<Tally>> = BTreeMap::new();
    for e in log.entries() {
        if let InteractionValue::Text(s) = &e.value {
            Tally::bump(by_text.entry(s).or_default(), e.timestamp);
        }
    }
    by_text
        .into_iter()
        .filter_map(|(s, t)| Some((BinKey::Text(s.to_owned()), t?)))
        .collect()
}

fn step_key(scale: &SliderScale, index: u64) -> BinKey {
    BinKey::Step {
        index,
        value: scale.grid_value(index),
    }
}

fn rank(tallies: Vec<(BinKey, Tally)>) -> Vec<Bin> {
    let mut stamps: Vec<Timestamp> = tallies.iter().map(|(_, t)| t.last_ts).collect();
    stamps.sort_unstable_by(|a, b| b.cmp(a));
    stamps.dedup();
    tallies
        .into_iter()
        .map(|(key, t)| {
            let pos = stamps
                .binary_search_by(|probe| t.last_ts.cmp(probe))
                .expect("every last_ts is in the rank table");
            Bin {
                key,
                frequency: t.frequency,
                last_ts: t.last_ts,
                rank: pos as u32 + 1,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{InteractionEntry, InteractionValue as V};

    fn log(kind: WidgetKind, entries: Vec<(V, u64)>) -> ProvenanceLog {
        ProvenanceLog::from_entries(
            kind,
            entries
                .into_iter()
                .map(|(v, t)| InteractionEntry::user(v, t))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_log_has_no_aggregate() {
        let d = ValueDomain::Text;
        assert_eq!(
            aggregate(&ProvenanceLog::new(WidgetKind::InputText), &d),
            Err(ProvenanceError::EmptyLog)
        );
    }

    #[test]
    fn scented_range_coverage() {
        let d = ValueDomain::slider(0.0, 300.0, 1.0).unwrap();
        let l = log(
            WidgetKind::RangeSlider,
            vec![
                (V::range(100.0, 160.0), 1),
                (V::range(100.0, 160.0), 2),
                (V::range(160.0, 200.0), 3),
            ],
        );
        let s = aggregate(&l, &d).unwrap();
        assert_eq!(s.step(120.0).unwrap().frequency, 2);
        assert_eq!(s.step(180.0).unwrap().frequency, 1);
        assert_eq!(s.step(160.0).unwrap().frequency, 3);
        assert_eq!(s.step(160.0).unwrap().rank, 1);
        assert_eq!(s.step(200.0).unwrap().rank, 1);
        assert_eq!(s.step(120.0).unwrap().rank, 2);
        assert!(s.step(99.0).is_none());
        assert!(s.step(201.0).is_none());
        assert_eq!(s.bins.len(), 101);
    }

    #[test]
    fn checkbox_membership() {
        let d = ValueDomain::option_ids(["A", "B", "C"]).unwrap();
        let l = log(
            WidgetKind::Checkbox,
            vec![(V::options(["A"]), 1), (V::options(["A", "B"]), 2)],
        );
        let s = aggregate(&l, &d).unwrap();
        assert_eq!(s.option("A").unwrap().frequency, 2);
        assert_eq!(s.option("B").unwrap().frequency, 1);
        assert_eq!(s.option("A").unwrap().rank, 1);
        assert_eq!(s.option("B").unwrap().rank, 1);
        assert!(s.option("C").is_none());
    }

    #[test]
    fn text_counts() {
        let l = log(
            WidgetKind::InputText,
            vec![
                (V::text("pika"), 1),
                (V::text("char"), 2),
                (V::text("pika"), 3),
            ],
        );
        let s = aggregate(&l, &ValueDomain::Text).unwrap();
        assert_eq!(s.text("pika").unwrap().frequency, 2);
        assert_eq!(s.text("pika").unwrap().rank, 1);
        assert_eq!(s.text("char").unwrap().frequency, 1);
        assert_eq!(s.text("char").unwrap().rank, 2);
        assert!(s.text("Pika").is_none());
    }

    #[test]
    fn scalars_snap_into_bins() {
        let d = ValueDomain::slider(0.0, 10.0, 2.0).unwrap();
        let l = log(
            WidgetKind::SingleSlider,
            vec![
                (V::Scalar(3.2), 1),
                (V::Scalar(4.0), 2),
                (V::Scalar(9.0), 3),
            ],
        );
        let s = aggregate(&l, &d).unwrap();
        assert_eq!(s.step(4.0).unwrap().frequency, 2);
        assert_eq!(s.step(10.0).unwrap().frequency, 1);
        assert_eq!(s.total_frequency(), 3);
    }

    #[test]
    fn domain_must_fit() {
        let l = log(WidgetKind::InputText, vec![(V::text("a"), 1)]);
        assert!(matches!(
            aggregate(&l, &ValueDomain::option_ids(["a"]).unwrap()),
            Err(ProvenanceError::InvalidDomain(_))
        ));
    }
}
