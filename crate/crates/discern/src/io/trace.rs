//! Solve observers with wall-clock stamps: a CSV trace of duality-gap
//! evaluations and a per-iteration timer for the runtime benchmarks.

use std::time::{Duration, Instant};

use discern_core::solver::{SolveObserver, TraceRow};

/// Collects `(iter, dual, primal, gap, wall-time-ms)` rows.
pub struct TraceWriter {
    start: Instant,
    rows: Vec<(TraceRow, f64)>,
}

impl TraceWriter {
    pub fn new() -> Self {
        TraceWriter { start: Instant::now(), rows: Vec::new() }
    }

    pub fn rows(&self) -> &[(TraceRow, f64)] {
        &self.rows
    }

    pub fn table(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let columns = vec!["iter", "dual", "primal", "gap", "wall_ms"];
        let rows = self
            .rows
            .iter()
            .map(|(r, ms)| {
                vec![
                    r.iteration.to_string(),
                    r.dual.to_string(),
                    r.primal_smoothed.to_string(),
                    r.gap.to_string(),
                    format!("{ms:.3}"),
                ]
            })
            .collect();
        (columns, rows)
    }
}

impl Default for TraceWriter {
    fn default() -> Self {
        Self::new()
    }
}

impl SolveObserver for TraceWriter {
    fn on_gap_eval(&mut self, row: &TraceRow) {
        let ms = self.start.elapsed().as_secs_f64() * 1e3;
        self.rows.push((row.clone(), ms));
    }
}

/// Per-iteration wall-time sampler.
pub struct IterTimer {
    last: Instant,
    pub durations: Vec<Duration>,
}

impl IterTimer {
    pub fn new() -> Self {
        IterTimer { last: Instant::now(), durations: Vec::new() }
    }

    /// Restart the reference instant (keeps accumulated samples); call
    /// before reusing the timer after unrelated work.
    pub fn reset_clock(&mut self) {
        self.last = Instant::now();
    }

    pub fn median_ms(&self) -> f64 {
        if self.durations.is_empty() {
            return f64::NAN;
        }
        let mut ms: Vec<f64> = self.durations.iter().map(|d| d.as_secs_f64() * 1e3).collect();
        ms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mid = ms.len() / 2;
        if ms.len() % 2 == 1 {
            ms[mid]
        } else {
            0.5 * (ms[mid - 1] + ms[mid])
        }
    }
}

impl Default for IterTimer {
    fn default() -> Self {
        Self::new()
    }
}

impl SolveObserver for IterTimer {
    fn on_iteration(&mut self, _iteration: usize) {
        let now = Instant::now();
        self.durations.push(now - self.last);
        self.last = now;
    }
}
