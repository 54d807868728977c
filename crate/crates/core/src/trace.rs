//! Event records of a PathFinder run and their JSON-lines form.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monitor::StopReason;
use crate::vset::{JSet, KSet};

/// Bumped whenever an event or summary field changes meaning.
pub const TRACE_SCHEMA_VERSION: u32 = 1;

/// One step of a run. Every event carries the query clock `t` at the time
/// it happened.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    NewStart {
        t: u64,
        jset: JSet,
        partition: Vec<Vec<u32>>,
    },
    Query {
        t: u64,
        jset: JSet,
        kset: KSet,
        outcome: bool,
    },
    /// Batch activated by the edge that brought the path to length `len`.
    BatchActivated {
        t: u64,
        len: usize,
        jsets: Vec<JSet>,
    },
    /// A batch member that was already discovered and so not re-activated.
    BatchMemberSkipped { t: u64, jset: JSet },
    Explored { t: u64, jset: JSet },
    /// Last edge removed; `len` is the new length.
    EdgeRemoved { t: u64, len: usize },
    Stopped { t: u64, reason: StopReason },
}

impl TraceEvent {
    pub fn time(&self) -> u64 {
        match self {
            TraceEvent::NewStart { t, .. }
            | TraceEvent::Query { t, .. }
            | TraceEvent::BatchActivated { t, .. }
            | TraceEvent::BatchMemberSkipped { t, .. }
            | TraceEvent::Explored { t, .. }
            | TraceEvent::EdgeRemoved { t, .. }
            | TraceEvent::Stopped { t, .. } => *t,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceLevel {
    /// Summary only.
    #[default]
    Summary,
    /// Every event.
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub schema_version: u32,
    pub n: u32,
    pub k: usize,
    pub j: usize,
    /// Longest path held at any time.
    pub max_len: usize,
    /// Path length when the run stopped.
    pub final_len: usize,
    /// Queries made.
    pub queries: u64,
    pub new_starts: u64,
    /// Positive queries.
    pub edges_found: u64,
    pub standard: u64,
    pub explored: u64,
    pub skipped_batch_members: u64,
    pub stop_reason: StopReason,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub events: Vec<TraceEvent>,
    pub summary: RunSummary,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "event", rename = "summary")]
struct SummaryLine {
    #[serde(flatten)]
    summary: RunSummary,
}

impl RunTrace {
    /// One JSON object per line, events first and the summary last.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for e in &self.events {
            serde_json::to_writer(&mut w, e)?;
            w.write_all(b"\n")?;
        }
        serde_json::to_writer(
            &mut w,
            &SummaryLine {
                summary: self.summary.clone(),
            },
        )?;
        w.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self> {
        let mut events = Vec::new();
        let mut summary = None;
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            if summary.is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "event after summary".into(),
                });
            }
            let value: serde_json::Value = serde_json::from_str(&line)?;
            if value.get("event").and_then(|v| v.as_str()) == Some("summary") {
                let s: SummaryLine = serde_json::from_value(value)?;
                if s.summary.schema_version != TRACE_SCHEMA_VERSION {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("unsupported schema version {}", s.summary.schema_version),
                    });
                }
                summary = Some(s.summary);
            } else {
                events.push(serde_json::from_value(value)?);
            }
        }
        let summary = summary.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing summary line".into(),
        })?;
        Ok(RunTrace { events, summary })
    }
}
