//! Seeded Erdős–Rényi classification sweeps.
//!
//! Every trial draws its graph from its own generator, seeded by a hash of
//! the master seed and the trial number, so rows do not depend on the order
//! in which trials run.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::BatchError;
use crate::exec::{self, Execution};
use crate::graph::{SimplicialGraph, MAX_VERTICES};
use crate::hypergraph::classify;

pub const CSV_COLUMNS: [&str; 9] = [
    "trial",
    "seed",
    "n",
    "p",
    "index",
    "divergence",
    "thick_order",
    "rel_hyp",
    "ends",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatchSpec {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub master_seed: u64,
}

impl BatchSpec {
    pub fn new(n: usize, p: f64, trials: usize, master_seed: u64) -> Result<Self, BatchError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(BatchError::InvalidSpec(format!("p = {p} is outside [0, 1]")));
        }
        if trials == 0 {
            return Err(BatchError::InvalidSpec("trials must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(BatchError::InvalidSpec(format!(
                "n = {n} exceeds the cap of {MAX_VERTICES}"
            )));
        }
        Ok(BatchSpec {
            n,
            p,
            trials,
            master_seed,
        })
    }
}

/// One CSV row; mirrors the classification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub index: String,
    pub divergence: String,
    pub thick_order: String,
    pub rel_hyp: bool,
    pub ends: String,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-trial seed.
pub fn derive_seed(master_seed: u64, trial: usize) -> u64 {
    splitmix64(master_seed ^ splitmix64(trial as u64))
}

/// `G(n, p)` with vertices `v0 … v{n-1}`.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> SimplicialGraph {
    let mut g = SimplicialGraph::with_vertices((0..n).map(|i| format!("v{i}")))
        .expect("generated labels are distinct");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).expect("u != v");
            }
        }
    }
    g
}

pub fn run_trial(spec: &BatchSpec, trial: usize) -> BatchRow {
    let seed = derive_seed(spec.master_seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = erdos_renyi(spec.n, spec.p, &mut rng);
    let report = classify(&g);
    BatchRow {
        trial,
        seed,
        n: spec.n,
        p: spec.p,
        index: report.index.to_string(),
        divergence: report.divergence.to_string(),
        thick_order: report
            .thickness_order
            .map_or_else(|| "none".to_string(), |k| k.to_string()),
        rel_hyp: report.relatively_hyperbolic,
        ends: report.ends.as_str().to_string(),
    }
}

/// All trials, in trial order whatever the execution mode.
pub fn run_batch(spec: &BatchSpec, exec: Execution) -> Vec<BatchRow> {
    exec::map_range(exec, spec.trials, |t| run_trial(spec, t))
}

pub fn write_csv<W: Write>(rows: &[BatchRow], out: W) -> Result<(), BatchError> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_COLUMNS)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_bytes(rows: &[BatchRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory cannot fail");
    buf
}

/// Counts per index, divergence and ends.
pub fn summary(spec: &BatchSpec, rows: &[BatchRow]) -> Value {
    fn tally<'a>(values: impl Iterator<Item = &'a str>) -> BTreeMap<&'a str, usize> {
        let mut m = BTreeMap::new();
        for v in values {
            *m.entry(v).or_insert(0) += 1;
        }
        m
    }
    json!({
        "n": spec.n,
        "p": spec.p,
        "trials": spec.trials,
        "master_seed": spec.master_seed,
        "index": tally(rows.iter().map(|r| r.index.as_str())),
        "divergence": tally(rows.iter().map(|r| r.divergence.as_str())),
        "ends": tally(rows.iter().map(|r| r.ends.as_str())),
        "rel_hyp": rows.iter().filter(|r| r.rel_hyp).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_matches_columns() {
        let spec = BatchSpec::new(4, 0.5, 2, 3).unwrap();
        let text = String::from_utf8(csv_bytes(&run_batch(&spec, Execution::Sequential))).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(text.lines().count(), 3);
        let empty = String::from_utf8(csv_bytes(&[])).unwrap();
        assert_eq!(empty.trim_end(), CSV_COLUMNS.join(","));
    }

    #[test]
    fn forced_probabilities() {
        let full = run_batch(&BatchSpec::new(6, 1.0, 5, 1).unwrap(), Execution::Sequential);
        assert!(full.iter().all(|r| r.index == "inf" && r.ends == "finite"));
        let empty = run_batch(&BatchSpec::new(6, 0.0, 5, 1).unwrap(), Execution::Sequential);
        assert!(empty.iter().all(|r| r.index == "inf" && r.ends == "infinitely_many"));
    }

    #[test]
    fn order_independent_of_execution() {
        let spec = BatchSpec::new(8, 0.5, 30, 11).unwrap();
        let a = csv_bytes(&run_batch(&spec, Execution::Sequential));
        let b = csv_bytes(&run_batch(&spec, Execution::Jobs(4)));
        assert_eq!(a, b);
    }

    #[test]
    fn spec_validation() {
        assert!(BatchSpec::new(5, 1.5, 1, 0).is_err());
        assert!(BatchSpec::new(5, 0.5, 0, 0).is_err());
        assert!(BatchSpec::new(500, 0.5, 1, 0).is_err());
    }

    #[test]
    fn seeds_differ_per_trial() {
        let s: std::collections::BTreeSet<u64> = (0..1000).map(|t| derive_seed(7, t)).collect();
        assert_eq!(s.len(), 1000);
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }
}
