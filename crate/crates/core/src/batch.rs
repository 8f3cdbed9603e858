//! Batch evaluation over many independent logs.
//!
//! Logs never share state, so batches split cleanly across threads. With the
//! `parallel` feature (default) the dispatching functions run on rayon;
//! without it they fall back to the sequential versions. Output order always
//! matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::aggregate::{aggregate, AggregateSummary};
use crate::domain::ValueDomain;
use crate::error::Result;
use crate::log::ProvenanceLog;
use crate::session::{analyze, SessionDocument, WidgetAnalysis};

pub fn aggregate_batch_seq(
    items: &[(ProvenanceLog, ValueDomain)],
) -> Vec<Result<AggregateSummary>> {
    items.iter().map(|(log, d)| aggregate(log, d)).collect()
}

#[cfg(feature = "parallel")]
pub fn aggregate_batch_par(
    items: &[(ProvenanceLog, ValueDomain)],
) -> Vec<Result<AggregateSummary>> {
    items.par_iter().map(|(log, d)| aggregate(log, d)).collect()
}

pub fn aggregate_batch(items: &[(ProvenanceLog, ValueDomain)]) -> Vec<Result<AggregateSummary>> {
    #[cfg(feature = "parallel")]
    {
        aggregate_batch_par(items)
    }
    #[cfg(not(feature = "parallel"))]
    {
        aggregate_batch_seq(items)
    }
}

pub fn analyze_session_seq(doc: &SessionDocument) -> Vec<WidgetAnalysis> {
    doc.widgets.values().map(analyze).collect()
}

#[cfg(feature = "parallel")]
pub fn analyze_session_par(doc: &SessionDocument) -> Vec<WidgetAnalysis> {
    let widgets: Vec<&crate::session::WidgetState> = doc.widgets.values().collect();
    widgets.into_par_iter().map(analyze).collect()
}

/// Aggregate and trace of every widget, in widget-id order.
pub fn analyze_session(doc: &SessionDocument) -> Vec<WidgetAnalysis> {
    #[cfg(feature = "parallel")]
    {
        analyze_session_par(doc)
    }
    #[cfg(not(feature = "parallel"))]
    {
        analyze_session_seq(doc)
    }
}
