//! Interaction provenance for standard UI controls.
//!
//! Each widget (slider, range slider, dropdown, multiselect, radio button,
//! checkbox, text input) owns an append-only [`ProvenanceLog`] of the values
//! users set and when. From it the crate derives:
//!
//! - an aggregate view ([`aggregate`]): how often each value, option or
//!   string was chosen and how recently;
//! - a temporal view ([`temporal_trace`]): points over time for sliders,
//!   selection intervals for option widgets, a timeline for text;
//! - replay ([`ProvenanceLog::state_at`]) and action recovery
//!   ([`ProvenanceLog::recover`]), which restores a past state as a new
//!   interaction.
//!
//! [`Controller`] applies the logging policy (interaction or time mode,
//! freeze, visualize) and [`session`] reads and writes `.provjson` documents.

pub mod aggregate;
pub mod batch;
pub mod domain;
pub mod error;
pub mod log;
pub mod model;
pub mod recipes;
pub mod scheduler;
pub mod session;
pub mod trace;

pub use aggregate::{aggregate, AggregateSummary, Bin, BinKey};
pub use domain::{OptionSpec, SliderScale, ValueDomain};
pub use error::{ProvenanceError, Result};
pub use log::{ProvenanceLog, RecoveryTarget};
pub use model::{InteractionEntry, InteractionValue, OptionId, Source, Timestamp, WidgetKind};
pub use scheduler::{Controller, ControllerConfig, Mode, PendingValue, ProvenanceChange};
pub use session::{SessionDocument, SessionError, WidgetState};
pub use trace::{temporal_trace, Interval, IntervalEnd, OptionIntervals, TemporalTrace};
