//! Configurations that recreate scented widgets, phosphor objects and
//! dynamic query widgets on top of a [`Controller`].

use std::num::NonZeroUsize;

use crate::domain::ValueDomain;
use crate::error::Result;
use crate::model::{InteractionEntry, InteractionValue, Source, Timestamp, WidgetKind};
use crate::scheduler::{Controller, ControllerConfig, ProvenanceChange};

/// Current and previous interaction.
pub const PHOSPHOR_KEEP: NonZeroUsize = NonZeroUsize::new(2).unwrap();

/// A frozen widget displaying historical usage, e.g. merged logs from many users.
/// Entries are tagged as external history.
pub fn scented(
    id: impl Into<String>,
    kind: WidgetKind,
    domain: ValueDomain,
    history: Vec<InteractionEntry>,
) -> Result<Controller> {
    let mut c = Controller::new(
        id,
        kind,
        domain,
        ControllerConfig {
            freeze: true,
            ..Default::default()
        },
    )?;
    let history = history
        .into_iter()
        .map(|e| InteractionEntry {
            source: Source::External,
            ..e
        })
        .collect();
    c.set_provenance(history, true)?;
    Ok(c)
}

/// Forwards an event and, when provenance changed, keeps only the two most
/// recent entries and revalidates.
pub fn phosphor_event(
    c: &mut Controller,
    value: InteractionValue,
    ts: Timestamp,
) -> Result<Option<ProvenanceChange>> {
    if c.on_widget_event(value, ts)?.is_none() {
        return Ok(None);
    }
    let kept = c.log().clone().truncated_last(PHOSPHOR_KEEP).into_entries();
    c.set_provenance(kept, true)
}

/// A plain control: nothing logged, nothing overlaid.
pub fn dynamic_query(
    id: impl Into<String>,
    kind: WidgetKind,
    domain: ValueDomain,
) -> Result<Controller> {
    Controller::new(id, kind, domain, ControllerConfig::inert())
}
