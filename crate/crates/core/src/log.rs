//! The per-widget provenance log and the operations that read or extend it.
//!
//! A log is append-only: live interactions, recovered states and injected
//! history all land at the tail in non-decreasing timestamp order. The only
//! ways to drop history are wholesale replacement ([`ProvenanceLog::set_provenance`])
//! and suffix retention ([`ProvenanceLog::truncate_last`]).

use std::num::NonZeroUsize;

use crate::domain::ValueDomain;
use crate::error::{ProvenanceError, Result};
use crate::model::{InteractionEntry, InteractionValue, Source, Timestamp, WidgetKind};

/// Which historical state to restore.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryTarget {
    /// The entry at this position in the log.
    Index(usize),
    /// Whatever state was in effect at this instant.
    At(Timestamp),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProvenanceLog {
    kind: WidgetKind,
    entries: Vec<InteractionEntry>,
    revalidate: bool,
}

impl ProvenanceLog {
    pub fn new(kind: WidgetKind) -> Self {
        ProvenanceLog {
            kind,
            entries: Vec::new(),
            revalidate: false,
        }
    }

    /// Builds a log from existing entries, checking order and kind.
    pub fn from_entries(kind: WidgetKind, entries: Vec<InteractionEntry>) -> Result<Self> {
        let mut log = ProvenanceLog::new(kind);
        log.set_provenance(entries, false)?;
        Ok(log)
    }

    pub fn kind(&self) -> WidgetKind {
        self.kind
    }

    pub fn entries(&self) -> &[InteractionEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<InteractionEntry> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn revalidate(&self) -> bool {
        self.revalidate
    }

    pub fn last_timestamp(&self) -> Option<Timestamp> {
        self.entries.last().map(|e| e.timestamp)
    }

    pub fn current_value(&self) -> Option<&InteractionValue> {
        self.entries.last().map(|e| &e.value)
    }

    /// Records a value-changing interaction after validating it against `domain`.
    ///
    /// Returns `false` when `value` equals the current value; such events are
    /// not provenance and leave the log untouched.
    pub fn record(
        &mut self,
        domain: &ValueDomain,
        value: InteractionValue,
        ts: Timestamp,
        source: Source,
    ) -> Result<bool> {
        domain.validate(self.kind, &value)?;
        self.append(value, ts, source)
    }

    /// Same as [`record`](Self::record) without the domain check. Used for
    /// states that already live in the log and may predate the current domain.
    pub fn append(
        &mut self,
        value: InteractionValue,
        ts: Timestamp,
        source: Source,
    ) -> Result<bool> {
        if !self.kind.admits(&value) {
            return Err(ProvenanceError::KindMismatch {
                expected: self.kind,
                found: value.to_string(),
            });
        }
        value
            .check_well_formed()
            .map_err(ProvenanceError::DomainViolation)?;
        if let Some(last) = self.last_timestamp() {
            if ts < last {
                return Err(ProvenanceError::NonMonotonicTimestamp { last, got: ts });
            }
        }
        if self.current_value() == Some(&value) {
            return Ok(false);
        }
        self.entries.push(InteractionEntry {
            value,
            timestamp: ts,
            source,
        });
        Ok(true)
    }

    /// Value in effect at `t`: the latest entry with `timestamp <= t`.
    pub fn state_at(&self, t: Timestamp) -> Option<&InteractionValue> {
        let idx = self.entries.partition_point(|e| e.timestamp <= t);
        idx.checked_sub(1).map(|i| &self.entries[i].value)
    }

    pub fn resolve(&self, target: RecoveryTarget) -> Option<&InteractionValue> {
        match target {
            RecoveryTarget::Index(i) => self.entries.get(i).map(|e| &e.value),
            RecoveryTarget::At(t) => self.state_at(t),
        }
    }

    /// Restores a historical state by appending it as a new interaction at `now`.
    ///
    /// Returns `false` when the historical state is already current.
    pub fn recover(&mut self, target: RecoveryTarget, now: Timestamp) -> Result<bool> {
        let value = self
            .resolve(target)
            .cloned()
            .ok_or(ProvenanceError::NoSuchState)?;
        self.append(value, now, Source::Recovery)
    }

    /// Replaces every entry. `revalidate` asks the owner to recompute derived
    /// views; see [`take_revalidate`](Self::take_revalidate).
    pub fn set_provenance(
        &mut self,
        entries: Vec<InteractionEntry>,
        revalidate: bool,
    ) -> Result<()> {
        check_entries(self.kind, &entries)?;
        self.entries = entries;
        self.revalidate = revalidate;
        Ok(())
    }

    /// Clears the revalidate flag, returning whether it was set.
    pub fn take_revalidate(&mut self) -> bool {
        std::mem::take(&mut self.revalidate)
    }

    /// Keeps only the `n` most recent entries.
    pub fn truncate_last(&mut self, n: NonZeroUsize) {
        let excess = self.entries.len().saturating_sub(n.get());
        self.entries.drain(..excess);
    }

    pub fn truncated_last(mut self, n: NonZeroUsize) -> Self {
        self.truncate_last(n);
        self
    }
}

pub(crate) fn check_entries(kind: WidgetKind, entries: &[InteractionEntry]) -> Result<()> {
    for (index, entry) in entries.iter().enumerate() {
        if !kind.admits(&entry.value) {
            return Err(ProvenanceError::KindMismatch {
                expected: kind,
                found: entry.value.to_string(),
            });
        }
        entry
            .value
            .check_well_formed()
            .map_err(ProvenanceError::DomainViolation)?;
        if index > 0 && entry.timestamp < entries[index - 1].timestamp {
            return Err(ProvenanceError::UnsortedEntries { index });
        }
    }
    Ok(())
}
