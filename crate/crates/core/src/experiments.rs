//! Complexity and halting statistics as a function of edge count, over
//! exhaustive corpora and random G(n, m) ensembles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::engine::{default_cap, simulate, GameParams, LifePattern};
use crate::error::{Error, Result};
use crate::formats::encode_graph6;
use crate::generators::random_gnm;
use crate::graph::Graph;

/// Aggregated single-seed games for one `(n, m)`. Sums are exact, so records
/// merge in any order to the same result.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DensityRecord {
    pub n: usize,
    pub m: usize,
    pub graphs: u64,
    pub games: u64,
    pub complexity_sum: u64,
    pub max_complexity: u64,
    pub halted: u64,
}

impl DensityRecord {
    fn merge(mut self, other: &DensityRecord) -> Self {
        self.graphs += other.graphs;
        self.games += other.games;
        self.complexity_sum += other.complexity_sum;
        self.max_complexity = self.max_complexity.max(other.max_complexity);
        self.halted += other.halted;
        self
    }

    /// Edge density `2m / (n(n-1))`.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        2.0 * self.m as f64 / (self.n * (self.n - 1)) as f64
    }

    pub fn mean_complexity(&self) -> f64 {
        if self.games == 0 {
            return 0.0;
        }
        self.complexity_sum as f64 / self.games as f64
    }

    /// Mean over graphs of the summed complexity of the graph's `n` games.
    pub fn mean_graph_total(&self) -> f64 {
        if self.graphs == 0 {
            return 0.0;
        }
        self.complexity_sum as f64 / self.graphs as f64
    }

    pub fn halting_fraction(&self) -> f64 {
        if self.games == 0 {
            return 0.0;
        }
        self.halted as f64 / self.games as f64
    }
}

/// Run every single-vertex seed of `g` once.
pub fn graph_record(g: &Graph, params: GameParams, cap: usize) -> Result<DensityRecord> {
    let n = g.n();
    let mut rec = DensityRecord {
        n,
        m: g.m(),
        graphs: 1,
        ..Default::default()
    };
    for v in 0..n {
        let t = simulate(g, &LifePattern::single(n, v)?, params, cap).map_err(|e| {
            e.in_graph(encode_graph6(g).unwrap_or_else(|_| format!("{g:?}")))
        })?;
        let c = t.complexity() as u64;
        rec.games += 1;
        rec.complexity_sum += c;
        rec.max_complexity = rec.max_complexity.max(c);
        rec.halted += t.outcome.halted() as u64;
    }
    Ok(rec)
}

/// One record per edge count present in `corpus`, ordered by `m`. The cap
/// defaults to [`default_cap`].
pub fn exhaustive_complexity(
    corpus: &[Graph],
    params: GameParams,
    cap: Option<usize>,
) -> Result<Vec<DensityRecord>> {
    let Some(first) = corpus.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    if let Some(g) = corpus.iter().find(|g| g.n() != n) {
        return Err(Error::SizeMismatch(n, g.n()));
    }
    let cap = cap.unwrap_or_else(|| default_cap(n));
    let per_graph: Vec<DensityRecord> = corpus
        .par_iter()
        .map(|g| graph_record(g, params, cap))
        .collect::<Result<_>>()?;
    let mut by_m: BTreeMap<usize, DensityRecord> = BTreeMap::new();
    for r in &per_graph {
        let slot = by_m.entry(r.m).or_insert_with(|| DensityRecord {
            n,
            m: r.m,
            ..Default::default()
        });
        *slot = std::mem::take(slot).merge(r);
    }
    Ok(by_m.into_values().collect())
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sample `i` at edge count `m`:
/// `splitmix64(splitmix64(splitmix64(seed) ^ m) ^ i)`.
pub fn sample_seed(seed: u64, m: u64, i: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ m) ^ i)
}

/// For each `m`, sample `samples_per_m` graphs from G(n, m) and run all `n`
/// single-vertex games on each. Output order follows `m_values`.
pub fn random_ensemble(
    n: usize,
    m_values: &[usize],
    samples_per_m: usize,
    rng_seed: u64,
    params: GameParams,
    cap: Option<usize>,
) -> Result<Vec<DensityRecord>> {
    if samples_per_m == 0 {
        return Err(Error::InvalidArgument("samples_per_m must be at least 1".into()));
    }
    let max = n * n.saturating_sub(1) / 2;
    if let Some(&m) = m_values.iter().find(|&&m| m > max) {
        return Err(Error::EdgeCountOutOfRange { n, m, max });
    }
    let cap = cap.unwrap_or_else(|| default_cap(n));
    m_values
        .iter()
        .map(|&m| {
            (0..samples_per_m as u64)
                .into_par_iter()
                .map(|i| {
                    let g = random_gnm(n, m, sample_seed(rng_seed, m as u64, i))?;
                    graph_record(&g, params, cap)
                })
                .try_fold(DensityRecord::default, |acc, r| r.map(|r| acc.merge(&r)))
                .try_reduce(DensityRecord::default, |a, b| Ok(a.merge(&b)))
                .map(|r| DensityRecord { n, m, ..r })
        })
        .collect()
}

pub const PHASE_CSV_HEADER: &str =
    "n,m,density,games,mean_complexity,max_complexity,halting_fraction,params,seed";

/// CSV rows for a sweep. `seed` is `None` for exhaustive corpora (written as
/// `-`). With `graph_totals`, the `mean_complexity` column holds the
/// per-graph summed complexity instead of the per-game mean.
pub fn records_csv(
    records: &[DensityRecord],
    params: GameParams,
    seed: Option<u64>,
    graph_totals: bool,
) -> String {
    let mut s = String::from(PHASE_CSV_HEADER);
    s.push('\n');
    let seed = seed.map_or_else(|| "-".to_string(), |x| x.to_string());
    for r in records {
        let mean = if graph_totals {
            r.mean_graph_total()
        } else {
            r.mean_complexity()
        };
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.m,
            r.density(),
            r.games,
            mean,
            r.max_complexity,
            r.halting_fraction(),
            params,
            seed
        )
        .expect("writing to a String");
    }
    s
}

/// Edge count with the largest mean complexity (first on ties).
pub fn peak_m(records: &[DensityRecord]) -> Option<usize> {
    records
        .iter()
        .fold(None::<&DensityRecord>, |best, r| match best {
            // compare complexity_sum/games exactly by cross-multiplying
            Some(b) if (r.complexity_sum as u128) * (b.games as u128)
                <= (b.complexity_sum as u128) * (r.games as u128) =>
            {
                Some(b)
            }
            _ => Some(r),
        })
        .map(|r| r.m)
}
