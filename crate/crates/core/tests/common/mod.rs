//! Random fixtures and brute-force oracles shared by the integration suites.
//!
//! The oracles deliberately avoid the library's grid arithmetic: slider grids
//! are materialized point by point, snapping is an argmin over that list and
//! replay is a linear scan.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use provwidgets_core::{
    AggregateSummary, BinKey, InteractionEntry, InteractionValue, OptionId, ProvenanceLog,
    Timestamp, ValueDomain, WidgetKind,
};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const MAX_ENTRIES: usize = 200;
pub const MAX_OPTIONS: usize = 20;
pub const MAX_STEPS: u64 = 500;

const TEXT_POOL: &[&str] = &[
    "pika", "Pika", "char", "squirtle", "", "pika ", "bulba", "ö",
];

/// Oracle view of one bin: frequency, last timestamp, dense recency rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OracleKey {
    /// Grid point scaled by 2 so half-steps stay integral in the fixtures.
    Step(i64),
    Option(String),
    Text(String),
}

pub type OracleBins = BTreeMap<OracleKey, (u64, u64, u32)>;

// ---------------------------------------------------------------------------
// Generators

pub fn random_domain<R: Rng>(rng: &mut R, kind: WidgetKind) -> ValueDomain {
    if kind.is_slider() {
        // Integral floor and step; the span may or may not be a multiple of the step.
        let step = rng.random_range(1..=5) as f64;
        let floor = rng.random_range(-50..=50) as f64;
        let steps = rng.random_range(1..=MAX_STEPS);
        let span = if rng.random_bool(0.5) {
            steps as f64 * step
        } else {
            ((steps as f64 - 1.0).max(0.0) * step + rng.random_range(1..step as i64 + 1) as f64)
                .max(1.0)
        };
        ValueDomain::slider(floor, floor + span, step).unwrap()
    } else if kind.is_selection() {
        let n = rng.random_range(1..=MAX_OPTIONS);
        ValueDomain::option_ids((0..n).map(|i| format!("o{i}"))).unwrap()
    } else {
        ValueDomain::Text
    }
}

/// A half-integer inside the scale.
fn half_step_value<R: Rng>(rng: &mut R, floor: f64, ceil: f64) -> f64 {
    let halves = ((ceil - floor) * 2.0) as i64;
    floor + rng.random_range(0..=halves) as f64 / 2.0
}

pub fn random_value<R: Rng>(
    rng: &mut R,
    kind: WidgetKind,
    domain: &ValueDomain,
) -> InteractionValue {
    match domain {
        ValueDomain::Slider(s) => {
            let a = half_step_value(rng, s.floor(), s.ceil());
            if kind == WidgetKind::SingleSlider {
                InteractionValue::Scalar(a)
            } else {
                let b = half_step_value(rng, s.floor(), s.ceil());
                InteractionValue::range(a.min(b), a.max(b))
            }
        }
        ValueDomain::Options(opts) => {
            let ids: Vec<&str> = opts.iter().map(|o| o.id.as_str()).collect();
            if kind.is_single_select() {
                if rng.random_bool(0.1) {
                    InteractionValue::options::<_, &str>([])
                } else {
                    InteractionValue::options([*ids.choose(rng).unwrap()])
                }
            } else {
                InteractionValue::options(ids.into_iter().filter(|_| rng.random_bool(0.3)))
            }
        }
        ValueDomain::Text => InteractionValue::text(*TEXT_POOL.choose(rng).unwrap()),
    }
}

/// Sorted entries; duplicate values and equal timestamps are both allowed.
pub fn random_entries<R: Rng>(
    rng: &mut R,
    kind: WidgetKind,
    domain: &ValueDomain,
    max: usize,
) -> Vec<InteractionEntry> {
    let n = rng.random_range(1..=max);
    let mut ts = rng.random_range(1_000..2_000u64);
    (0..n)
        .map(|_| {
            ts += rng.random_range(0..=40);
            InteractionEntry::user(random_value(rng, kind, domain), ts)
        })
        .collect()
}

pub fn random_log<R: Rng>(rng: &mut R, kind: WidgetKind) -> (ProvenanceLog, ValueDomain) {
    let domain = random_domain(rng, kind);
    let entries = random_entries(rng, kind, &domain, MAX_ENTRIES);
    (ProvenanceLog::from_entries(kind, entries).unwrap(), domain)
}

// ---------------------------------------------------------------------------
// Oracles

/// Grid points from floor by step, with the final one at ceil.
pub fn materialize_grid(floor: f64, ceil: f64, step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut k = 0u64;
    loop {
        let g = floor + k as f64 * step;
        if g >= ceil - 1e-9 * step {
            break;
        }
        grid.push(g);
        k += 1;
    }
    grid.push(ceil);
    grid
}

/// Nearest grid point by exhaustive search; ties go to the higher point.
pub fn nearest(grid: &[f64], v: f64) -> f64 {
    let mut best = grid[0];
    for &g in grid {
        if (v - g).abs() <= (v - best).abs() {
            best = g;
        }
    }
    best
}

fn dense_ranks(bins: BTreeMap<OracleKey, (u64, u64)>) -> OracleBins {
    let stamps: BTreeSet<u64> = bins.values().map(|b| b.1).collect();
    bins.into_iter()
        .map(|(k, (f, last))| {
            let newer = stamps.iter().filter(|&&s| s > last).count() as u32;
            (k, (f, last, newer + 1))
        })
        .collect()
}

pub fn oracle_aggregate(log: &ProvenanceLog, domain: &ValueDomain) -> OracleBins {
    let mut bins: BTreeMap<OracleKey, (u64, u64)> = BTreeMap::new();
    let mut bump = |key: OracleKey, ts: Timestamp| {
        let b = bins.entry(key).or_insert((0, 0));
        b.0 += 1;
        b.1 = b.1.max(ts.0);
    };
    match domain {
        ValueDomain::Slider(s) => {
            let grid = materialize_grid(s.floor(), s.ceil(), s.step());
            let snapped: Vec<(f64, f64)> = log
                .entries()
                .iter()
                .map(|e| match e.value {
                    InteractionValue::Scalar(v) => (nearest(&grid, v), nearest(&grid, v)),
                    InteractionValue::Range { low, high } => {
                        (nearest(&grid, low), nearest(&grid, high))
                    }
                    _ => (f64::NAN, f64::NAN),
                })
                .collect();
            for &g in &grid {
                for (e, &(lo, hi)) in log.entries().iter().zip(&snapped) {
                    if lo <= g && g <= hi {
                        bump(OracleKey::Step((g * 2.0).round() as i64), e.timestamp);
                    }
                }
            }
        }
        ValueDomain::Options(opts) => {
            for o in opts {
                for e in log.entries() {
                    if let InteractionValue::Options(ids) = &e.value {
                        if ids.iter().any(|id| id.as_str() == o.id.as_str()) {
                            bump(OracleKey::Option(o.id.0.clone()), e.timestamp);
                        }
                    }
                }
            }
        }
        ValueDomain::Text => {
            for e in log.entries() {
                if let InteractionValue::Text(s) = &e.value {
                    bump(OracleKey::Text(s.clone()), e.timestamp);
                }
            }
        }
    }
    dense_ranks(bins)
}

pub fn summary_bins(summary: &AggregateSummary) -> OracleBins {
    summary
        .bins
        .iter()
        .map(|b| {
            let key = match &b.key {
                BinKey::Step { value, .. } => OracleKey::Step((value * 2.0).round() as i64),
                BinKey::Option(id) => OracleKey::Option(id.0.clone()),
                BinKey::Text(s) => OracleKey::Text(s.clone()),
            };
            (key, (b.frequency, b.last_ts.0, b.rank))
        })
        .collect()
}

/// Value in effect at `t` by linear replay.
pub fn replay(entries: &[InteractionEntry], t: Timestamp) -> Option<InteractionValue> {
    let mut state = None;
    for e in entries {
        if e.timestamp <= t {
            state = Some(e.value.clone());
        }
    }
    state
}

pub fn option_selected(value: Option<&InteractionValue>, id: &OptionId) -> bool {
    value
        .and_then(InteractionValue::as_options)
        .is_some_and(|ids| ids.contains(id))
}
