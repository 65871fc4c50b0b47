//! One-sided isomorphism test and corpus collision scanning.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::engine::GameParams;
use crate::error::Result;
use crate::features::{extract_features_with, LabelPropagation};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Certified non-isomorphic. `step` 0 means the vertex or edge counts
    /// differ; otherwise the sorted label blocks first differ at `step`.
    NonIsomorphic { step: usize },
    /// All `k` blocks agree.
    LikelyIsomorphic { k: usize },
}

impl IsoVerdict {
    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NonIsomorphic { .. })
    }
}

/// Compare the label blocks of `g` and `h` step by step for up to `k` steps
/// under the `(1, 1, 1)` rule. Never reports isomorphic graphs as distinct.
pub fn test_isomorphism(g: &Graph, h: &Graph, k: usize) -> IsoVerdict {
    test_isomorphism_with(g, h, k, GameParams::DEFAULT)
}

pub fn test_isomorphism_with(g: &Graph, h: &Graph, k: usize, params: GameParams) -> IsoVerdict {
    if g.n() != h.n() || g.m() != h.m() {
        return IsoVerdict::NonIsomorphic { step: 0 };
    }
    let mut pg = LabelPropagation::new(g, params, false);
    let mut ph = LabelPropagation::new(h, params, false);
    for t in 1..=k {
        if pg.advance() != ph.advance() {
            return IsoVerdict::NonIsomorphic { step: t };
        }
    }
    IsoVerdict::LikelyIsomorphic { k }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub total: usize,
    pub k: usize,
    /// Corpus indices grouped by identical feature vectors, each group in
    /// increasing index order, groups ordered by their first index.
    pub groups: Vec<Vec<usize>>,
}

impl ScanReport {
    /// Groups with more than one member.
    pub fn collisions(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.groups.iter().filter(|g| g.len() > 1)
    }

    pub fn collision_count(&self) -> usize {
        self.collisions().count()
    }
}

/// Group corpus entries by exact `k`-step feature vector. For a corpus of
/// pairwise non-isomorphic graphs, every non-singleton group is a pair the
/// test fails to separate.
pub fn collision_scan(corpus: &[Graph], k: usize) -> Result<ScanReport> {
    collision_scan_with(corpus, k, GameParams::DEFAULT)
}

pub fn collision_scan_with(corpus: &[Graph], k: usize, params: GameParams) -> Result<ScanReport> {
    let mut keys = ScanKeys::new(k, params);
    keys.extend(corpus)?;
    Ok(keys.finish())
}

/// Grouping key of one graph: its edge count (matching the pre-check in
/// [`test_isomorphism`]) followed by its exact feature vector.
pub fn scan_key(g: &Graph, k: usize, params: GameParams) -> Result<Box<[u8]>> {
    let fv = extract_features_with(g, k, false, params)?;
    let mut key = (g.m() as u64).to_le_bytes().to_vec();
    key.extend(fv.key_bytes());
    Ok(key.into_boxed_slice())
}

/// Incremental collision scan holding only compact keys, so a corpus can be
/// streamed in chunks.
pub struct ScanKeys {
    k: usize,
    params: GameParams,
    keyed: Vec<(Box<[u8]>, u32)>,
}

impl ScanKeys {
    pub fn new(k: usize, params: GameParams) -> Self {
        ScanKeys {
            k,
            params,
            keyed: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.keyed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keyed.is_empty()
    }

    /// Append a chunk; indices continue from the graphs already added.
    pub fn extend(&mut self, chunk: &[Graph]) -> Result<()> {
        let base = self.keyed.len();
        let (k, params) = (self.k, self.params);
        let keys: Vec<(Box<[u8]>, u32)> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, g)| Ok((scan_key(g, k, params)?, (base + i) as u32)))
            .collect::<Result<_>>()?;
        self.keyed.extend(keys);
        Ok(())
    }

    pub fn finish(mut self) -> ScanReport {
        self.keyed.par_sort_unstable();
        let mut groups: Vec<Vec<usize>> = self
            .keyed
            .chunk_by(|a, b| a.0 == b.0)
            .map(|c| c.iter().map(|&(_, i)| i as usize).collect())
            .collect();
        groups.iter_mut().for_each(|g| g.sort_unstable());
        groups.sort_unstable_by_key(|g| g[0]);
        ScanReport {
            total: self.keyed.len(),
            k: self.k,
            groups,
        }
    }
}

/// Baseline for reports: the number of sorted degree sequences shared by
/// more than one graph in the corpus.
pub fn degree_sequence_collisions(corpus: &[Graph]) -> usize {
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for g in corpus {
        *counts.entry(g.degree_sequence_sorted()).or_default() += 1;
    }
    counts.values().filter(|&&c| c > 1).count()
}
