//! Controller logging policy: interaction vs time mode, freeze gating and
//! change notifications.
//!
//! The host owns the clock. Every method that may record takes the current
//! time explicitly and nothing here reads wall time or spawns timers.

use std::num::NonZeroU64;

use crate::aggregate::{aggregate, AggregateSummary};
use crate::domain::ValueDomain;
use crate::error::{ProvenanceError, Result};
use crate::log::{ProvenanceLog, RecoveryTarget};
use crate::model::{InteractionEntry, InteractionValue, Source, Timestamp, WidgetKind};
use crate::trace::{temporal_trace, TemporalTrace};

pub const DEFAULT_PERIOD_MS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Log every value-changing interaction.
    Interaction,
    /// Sample the widget value once per period.
    Time { period_ms: NonZeroU64 },
}

impl Mode {
    pub fn time(period_ms: u64) -> Option<Mode> {
        NonZeroU64::new(period_ms).map(|period_ms| Mode::Time { period_ms })
    }

    pub fn default_time() -> Mode {
        Mode::Time {
            period_ms: NonZeroU64::new(DEFAULT_PERIOD_MS).unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllerConfig {
    pub mode: Mode,
    pub freeze: bool,
    pub visualize: bool,
    /// Shown as "label" in tooltips.
    pub label: Option<String>,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig {
            mode: Mode::Interaction,
            freeze: false,
            visualize: true,
            label: None,
        }
    }
}

impl ControllerConfig {
    /// No logging and no overlays: a plain control driving a dynamic query.
    pub fn inert() -> Self {
        ControllerConfig {
            freeze: true,
            visualize: false,
            ..Default::default()
        }
    }
}

/// Latest value seen in time mode, waiting for the next sampling tick.
#[derive(Debug, Clone, PartialEq)]
pub struct PendingValue {
    pub value: InteractionValue,
    pub staged_at: Timestamp,
}

/// Emitted whenever a widget's log changes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProvenanceChange {
    pub widget_id: String,
    pub log: ProvenanceLog,
}

/// Owns one widget's log, domain and configuration.
#[derive(Debug, Clone)]
pub struct Controller {
    id: String,
    domain: ValueDomain,
    config: ControllerConfig,
    log: ProvenanceLog,
    pending: Option<PendingValue>,
    /// Time of the last sampling tick that consumed a pending value.
    last_flush: Option<Timestamp>,
    /// Aggregate as of the last recomputation; `None` when the log was empty.
    summary: Option<AggregateSummary>,
}

impl Controller {
    pub fn new(
        id: impl Into<String>,
        kind: WidgetKind,
        domain: ValueDomain,
        config: ControllerConfig,
    ) -> Result<Self> {
        if !domain.fits(kind) {
            return Err(ProvenanceError::InvalidDomain(format!(
                "domain does not apply to a {kind} widget"
            )));
        }
        Ok(Controller {
            id: id.into(),
            domain,
            config,
            log: ProvenanceLog::new(kind),
            pending: None,
            last_flush: None,
            summary: None,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> WidgetKind {
        self.log.kind()
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    pub fn config(&self) -> &ControllerConfig {
        &self.config
    }

    pub fn log(&self) -> &ProvenanceLog {
        &self.log
    }

    pub fn pending(&self) -> Option<&PendingValue> {
        self.pending.as_ref()
    }

    pub fn current_value(&self) -> Option<&InteractionValue> {
        self.log.current_value()
    }

    /// Cached aggregate backing the overlay. Hidden when `visualize` is off.
    pub fn overlay(&self) -> Option<&AggregateSummary> {
        self.summary.as_ref().filter(|_| self.config.visualize)
    }

    /// Temporal view, computed on demand.
    pub fn temporal(&self) -> Option<TemporalTrace> {
        if !self.config.visualize {
            return None;
        }
        temporal_trace(&self.log).ok()
    }

    /// A value-changing event from the control.
    pub fn on_widget_event(
        &mut self,
        value: InteractionValue,
        ts: Timestamp,
    ) -> Result<Option<ProvenanceChange>> {
        if self.config.freeze {
            return Ok(None);
        }
        match self.config.mode {
            Mode::Interaction => {
                let changed = self.log.record(&self.domain, value, ts, Source::User)?;
                Ok(self.changed(changed))
            }
            Mode::Time { .. } => {
                self.domain.validate(self.log.kind(), &value)?;
                self.pending = Some(PendingValue {
                    value,
                    staged_at: ts,
                });
                Ok(None)
            }
        }
    }

    /// Periodic host callback; records the pending value in time mode once a
    /// full period has passed since the last sample.
    pub fn tick(&mut self, now: Timestamp) -> Result<Option<ProvenanceChange>> {
        let Mode::Time { period_ms } = self.config.mode else {
            return Ok(None);
        };
        let anchor = *self.last_flush.get_or_insert(now);
        if self.pending.is_none() || now.saturating_since(anchor) < period_ms.get() {
            return Ok(None);
        }
        self.last_flush = Some(now);
        self.flush(now)
    }

    fn flush(&mut self, now: Timestamp) -> Result<Option<ProvenanceChange>> {
        let Some(pending) = self.pending.take() else {
            return Ok(None);
        };
        let changed = self.log.append(pending.value, now, Source::User)?;
        Ok(self.changed(changed))
    }

    pub fn set_freeze(&mut self, freeze: bool) {
        if freeze {
            self.pending = None;
        }
        self.config.freeze = freeze;
    }

    pub fn set_visualize(&mut self, visualize: bool) {
        self.config.visualize = visualize;
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.config.label = label;
    }

    /// Switches logging mode. Leaving time mode records any pending value at
    /// `now` first so it is not lost.
    pub fn set_mode(&mut self, mode: Mode, now: Timestamp) -> Result<Option<ProvenanceChange>> {
        let was_time = matches!(self.config.mode, Mode::Time { .. });
        let emitted = if was_time && mode == Mode::Interaction {
            let at = self.log.last_timestamp().map_or(now, |last| last.max(now));
            self.flush(at)?
        } else {
            None
        };
        if !was_time {
            self.last_flush = None;
        }
        self.config.mode = mode;
        Ok(emitted)
    }

    /// Restores a historical state as a new interaction. Ignored while frozen.
    pub fn recover(
        &mut self,
        target: RecoveryTarget,
        now: Timestamp,
    ) -> Result<Option<ProvenanceChange>> {
        if self.config.freeze {
            return Ok(None);
        }
        let changed = self.log.recover(target, now)?;
        if changed {
            self.pending = None;
        }
        Ok(self.changed(changed))
    }

    /// Replaces the log with externally supplied entries. Derived views are
    /// recomputed and a change emitted only when `revalidate` is set.
    /// Injection is allowed while frozen.
    pub fn set_provenance(
        &mut self,
        entries: Vec<InteractionEntry>,
        revalidate: bool,
    ) -> Result<Option<ProvenanceChange>> {
        self.log.set_provenance(entries, revalidate)?;
        self.pending = None;
        if self.log.take_revalidate() {
            Ok(self.changed(true))
        } else {
            Ok(None)
        }
    }

    fn refresh(&mut self) {
        self.summary = aggregate(&self.log, &self.domain).ok();
    }

    fn changed(&mut self, changed: bool) -> Option<ProvenanceChange> {
        if !changed {
            return None;
        }
        self.refresh();
        Some(ProvenanceChange {
            widget_id: self.id.clone(),
            log: self.log.clone(),
        })
    }
}
