//! Synchronous life dynamics on a graph, trajectories and cycle detection.
//!
//! A vertex that is alive at `t-1` stays alive iff it has at least `a` alive
//! and at least `d` dead neighbors; a dead vertex is born iff exactly `r` of
//! its neighbors are alive. Every vertex is updated from the state at `t-1`.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Survival and reproduction thresholds `(a, d, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameParams {
    /// Minimum alive neighbors for survival.
    pub a: u32,
    /// Minimum dead neighbors for survival.
    pub d: u32,
    /// Exact alive-neighbor count for a birth.
    pub r: u32,
}

impl GameParams {
    pub const fn new(a: u32, d: u32, r: u32) -> Self {
        GameParams { a, d, r }
    }

    /// `(1, 1, 1)`: the rule used for feature extraction.
    pub const DEFAULT: GameParams = GameParams::new(1, 1, 1);

    /// `(2, 5, 3)`: Conway's B3/S23 on a Moore-neighborhood torus.
    pub const CONWAY: GameParams = GameParams::new(2, 5, 3);
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams::DEFAULT
    }
}

impl fmt::Display for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.a, self.d, self.r)
    }
}

impl std::str::FromStr for GameParams {
    type Err = Error;

    /// Accepts `a,d,r` or `a/d/r`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split([',', '/']).map(str::trim).collect();
        let bad = || Error::InvalidArgument(format!("params must be a,d,r; got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut v = [0u32; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| bad())?;
        }
        Ok(GameParams::new(v[0], v[1], v[2]))
    }
}

/// The set of alive vertices at one step.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LifePattern(BitSet);

impl LifePattern {
    pub fn empty(n: usize) -> Self {
        LifePattern(BitSet::new(n))
    }

    pub fn single(n: usize, v: usize) -> Result<Self> {
        Self::from_vertices(n, [v])
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, alive: I) -> Result<Self> {
        let mut s = BitSet::new(n);
        for v in alive {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(LifePattern(s))
    }

    pub fn as_bitset(&self) -> &BitSet {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.capacity()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn population(&self) -> usize {
        self.0.count()
    }

    pub fn alive(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }
}

impl fmt::Debug for LifePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for LifePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.alive().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// One synchronous update.
///
/// # Panics
/// If `current` was built for a different vertex count than `g`.
pub fn step(g: &Graph, current: &LifePattern, p: GameParams) -> LifePattern {
    let n = g.n();
    assert_eq!(current.n(), n, "pattern size does not match graph");
    let cur = current.as_bitset();
    let mut words = vec![0u64; crate::bitset::words_for(n)];
    let (a, d, r) = (p.a as usize, p.d as usize, p.r as usize);
    for v in 0..n {
        let alive_nb = g.neighbors(v).intersection_count(cur);
        let lives = if cur.contains(v) {
            alive_nb >= a && g.degree(v) - alive_nb >= d
        } else {
            alive_nb == r
        };
        if lives {
            words[v / 64] |= 1 << (v % 64);
        }
    }
    LifePattern(BitSet::from_words(n, words))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Every vertex is dead at step `at`.
    Died { at: usize },
    /// The pattern at `repeat_at` equals the earlier pattern at `entry`.
    Cycled { entry: usize, repeat_at: usize },
}

impl Outcome {
    pub fn halted(&self) -> bool {
        matches!(self, Outcome::Died { .. })
    }

    /// Cycle length, or `None` for a game that died.
    pub fn period(&self) -> Option<usize> {
        match *self {
            Outcome::Cycled { entry, repeat_at } => Some(repeat_at - entry),
            Outcome::Died { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// `A_0, A_1, ...` up to and including the terminating step.
    pub patterns: Vec<LifePattern>,
    pub outcome: Outcome,
}

impl Trajectory {
    /// Distinct non-empty patterns seen before the game died or first
    /// repeated. All patterns before the terminating step are pairwise
    /// distinct and non-empty, so this is the terminating step index.
    pub fn complexity(&self) -> usize {
        match self.outcome {
            Outcome::Died { at } => at,
            Outcome::Cycled { repeat_at, .. } => repeat_at,
        }
    }
}

/// `min(2^n + 1, 10^6)`: by pigeonhole exact for `n <= 19`.
pub fn default_cap(n: usize) -> usize {
    const CEILING: usize = 1_000_000;
    if n >= 20 {
        CEILING
    } else {
        ((1usize << n) + 1).min(CEILING)
    }
}

/// Run the dynamics from `seed` until the population dies or a pattern
/// repeats, for at most `cap` steps.
pub fn simulate(g: &Graph, seed: &LifePattern, p: GameParams, cap: usize) -> Result<Trajectory> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    if seed.n() != g.n() {
        return Err(Error::SizeMismatch(seed.n(), g.n()));
    }
    let mut patterns = vec![seed.clone()];
    if seed.is_empty() {
        return Ok(Trajectory {
            patterns,
            outcome: Outcome::Died { at: 0 },
        });
    }
    let mut seen: HashMap<LifePattern, usize> = HashMap::new();
    seen.insert(seed.clone(), 0);
    let mut current = seed.clone();
    for t in 1..=cap {
        current = step(g, &current, p);
        patterns.push(current.clone());
        if current.is_empty() {
            return Ok(Trajectory {
                patterns,
                outcome: Outcome::Died { at: t },
            });
        }
        if let Some(&entry) = seen.get(&current) {
            return Ok(Trajectory {
                patterns,
                outcome: Outcome::Cycled { entry, repeat_at: t },
            });
        }
        seen.insert(current.clone(), t);
    }
    Err(Error::CapExceeded { cap })
}

/// Whether the population eventually dies.
pub fn halts(g: &Graph, seed: &LifePattern, p: GameParams, cap: usize) -> Result<bool> {
    simulate(g, seed, p, cap).map(|t| t.outcome.halted())
}
