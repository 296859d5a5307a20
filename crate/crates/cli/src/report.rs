//! Runs a selection of ledger checks on a worker pool and collects the
//! results in id order.

use std::time::Instant;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{find, Status, CHECKS};
use crate::context::Context;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub payload: Value,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub reported: usize,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }

    /// JSON with the timing fields removed, for reproducibility checks.
    pub fn without_timing(&self) -> Value {
        let mut v = json!(self);
        if let Some(list) = v["checks"].as_array_mut() {
            for c in list {
                c.as_object_mut().map(|o| o.remove("wall_ms"));
            }
        }
        v
    }
}

/// Resolves the selection; an empty list selects every check.
pub fn select(ids: &[String]) -> Result<Vec<&'static str>> {
    if ids.is_empty() || ids.iter().any(|i| i == "all") {
        return Ok(CHECKS.iter().map(|(k, _)| *k).collect());
    }
    let mut out = Vec::new();
    for id in ids {
        match CHECKS.iter().find(|(k, _)| k == id) {
            Some((k, _)) => out.push(*k),
            None => bail!("unknown check id {id}"),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn run_report(ctx: &Context, ids: &[&'static str]) -> Report {
    let mut checks: Vec<CheckResult> = ids
        .par_iter()
        .map(|id| {
            let f = find(id).expect("selection is validated");
            let start = Instant::now();
            let outcome = f(ctx);
            let wall_ms = start.elapsed().as_millis();
            let (status, payload) = match outcome {
                Ok(o) => (o.status, o.payload),
                Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
            };
            CheckResult { id: id.to_string(), status, payload, wall_ms }
        })
        .collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Report { passed: count(Status::Pass), failed: count(Status::Fail), reported: count(Status::Reported), checks }
}
