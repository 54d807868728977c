//! Records a full event trace, writes it as JSON lines, reads it back and
//! replays the run against a hypergraph rebuilt from the positive queries.

use std::io::Cursor;

use hyperpaths::hypergraph::ExplicitHypergraph;
use hyperpaths::pathfinder::{PathFinder, RunConfig};
use hyperpaths::{threshold_p0, LazyHypergraph, RunTrace, StoppingConfig, TraceEvent, TraceLevel};

fn main() -> hyperpaths::Result<()> {
    let (n, k, j, seed) = (25, 4, 2, 11);
    let p = 2.0 * threshold_p0(n as u64, k, j)?;
    let config = RunConfig::new(seed, StoppingConfig::exhaustive(k, j)).with_trace(TraceLevel::Full);
    let mut pf = PathFinder::new(LazyHypergraph::new(n, k, p, seed)?, j, config.clone())?;
    pf.run_to_end();
    let trace = pf.into_trace();

    let mut buf = Vec::new();
    trace.write_jsonl(&mut buf)?;
    let text = String::from_utf8(buf).unwrap();
    println!("{} lines; first three:", text.lines().count());
    for line in text.lines().take(3) {
        println!("  {line}");
    }

    let back = RunTrace::read_jsonl(Cursor::new(text.as_bytes()))?;
    assert_eq!(back, trace);

    let mut h = ExplicitHypergraph::new(n, k);
    for e in &back.events {
        if let TraceEvent::Query { kset, outcome: true, .. } = e {
            h.insert(*kset)?;
        }
    }
    let mut replay = PathFinder::new(&h, j, config)?;
    replay.run_to_end();
    println!(
        "replay on the {} revealed edges reproduces the trace: {}",
        h.edge_count(),
        replay.into_trace() == back
    );
    Ok(())
}
