//! Label propagation over single-seed games and the resulting feature vectors.
//!
//! Every vertex `i` seeds its own game `A_0^i = {i}` and carries a label,
//! initially 1. At step `t` all `n` games advance once, then every label is
//! updated simultaneously from the previous label array:
//!
//! ```text
//! l_t[i] = l_{t-1}[i] + sum over v in A_t^i of l_{t-1}[v]
//! ```
//!
//! Optionally the labels are rescaled to sum to 1 after each update. The
//! sorted label array at step `t` is block `f_t`; the feature vector is the
//! concatenation `f_1 .. f_k`.
//!
//! Arithmetic is exact. Unnormalized labels are kept in `u128` and promoted to
//! arbitrary precision on overflow; normalized labels are exact rationals.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::engine::{step, GameParams, LifePattern};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Fraction = Ratio<BigUint>;

/// One sorted label block `f_t`.
///
/// A block is `Small` exactly when every value fits in `u128`, so structural
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Small(Vec<u128>),
    Big(Vec<BigUint>),
    Normalized(Vec<Fraction>),
}

impl Block {
    pub fn len(&self) -> usize {
        match self {
            Block::Small(v) => v.len(),
            Block::Big(v) => v.len(),
            Block::Normalized(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn push_values(&self, out: &mut String) {
        match self {
            Block::Small(v) => v.iter().for_each(|x| write!(out, " {x}").unwrap()),
            Block::Big(v) => v.iter().for_each(|x| write!(out, " {x}").unwrap()),
            Block::Normalized(v) => v.iter().for_each(|x| write!(out, " {x}").unwrap()),
        }
    }

    /// `sum_j (self_j - other_j)^2` with each difference taken exactly before
    /// conversion to `f64`. Symmetric bit-for-bit in its arguments.
    pub fn squared_distance(&self, other: &Block) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let sq = |x: f64| x * x;
        let total = match (self, other) {
            (Block::Small(a), Block::Small(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| sq(x.abs_diff(*y) as f64))
                .sum(),
            (Block::Normalized(a), Block::Normalized(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let d = if x >= y { x - y } else { y - x };
                    sq(d.to_f64().unwrap_or(f64::INFINITY))
                })
                .sum(),
            (Block::Normalized(_), _) | (_, Block::Normalized(_)) => {
                return Err(Error::InvalidArgument(
                    "cannot compare normalized and unnormalized features".into(),
                ))
            }
            _ => {
                let a = self.to_big();
                let b = other.to_big();
                a.iter()
                    .zip(&b)
                    .map(|(x, y)| {
                        let d = if x >= y { x - y } else { y - x };
                        sq(d.to_f64().unwrap_or(f64::INFINITY))
                    })
                    .sum()
            }
        };
        Ok(total)
    }

    fn to_big(&self) -> Vec<BigUint> {
        match self {
            Block::Small(v) => v.iter().map(|&x| BigUint::from(x)).collect(),
            Block::Big(v) => v.clone(),
            Block::Normalized(_) => unreachable!("normalized blocks have no integer form"),
        }
    }

    /// Values as `f64`, for reporting.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Block::Small(v) => v.iter().map(|&x| x as f64).collect(),
            Block::Big(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect(),
            Block::Normalized(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
        }
    }
}

/// Concatenation of the sorted blocks `f_1 .. f_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureVector {
    n: usize,
    normalized: bool,
    blocks: Vec<Block>,
}

impl FeatureVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block `f_t`, `1 <= t <= k`.
    pub fn block(&self, t: usize) -> Option<&Block> {
        t.checked_sub(1).and_then(|i| self.blocks.get(i))
    }

    pub fn len(&self) -> usize {
        self.n * self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(Block::to_f64).collect()
    }

    /// Text form: `n k b` then the `k*n` values, where `b` is 1 for
    /// normalized (values written as `p/q` or `p`) and 0 otherwise.
    pub fn to_line(&self) -> String {
        let mut s = format!("{} {} {}", self.n, self.k(), self.normalized as u8);
        for b in &self.blocks {
            b.push_values(&mut s);
        }
        s
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("feature line: {m}"));
        let mut it = line.split_whitespace();
        let mut header = [0usize; 3];
        for h in header.iter_mut() {
            *h = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("bad header"))?;
        }
        let [n, k, b] = header;
        if b > 1 {
            return Err(bad("normalization flag must be 0 or 1"));
        }
        let toks: Vec<&str> = it.collect();
        if toks.len() != n * k {
            return Err(bad(&format!("expected {} values, found {}", n * k, toks.len())));
        }
        let mut blocks = Vec::with_capacity(k);
        for chunk in toks.chunks(n.max(1)).take(k) {
            let block = if b == 1 {
                let v = chunk
                    .iter()
                    .map(|t| t.parse::<Fraction>().map_err(|_| bad(&format!("bad fraction {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                Block::Normalized(v)
            } else {
                let v = chunk
                    .iter()
                    .map(|t| t.parse::<BigUint>().map_err(|_| bad(&format!("bad integer {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                match v.iter().map(|x| x.to_u128()).collect::<Option<Vec<_>>>() {
                    Some(small) => Block::Small(small),
                    None => Block::Big(v),
                }
            };
            blocks.push(block);
        }
        if n == 0 {
            let empty = if b == 1 { Block::Normalized(Vec::new()) } else { Block::Small(Vec::new()) };
            blocks = vec![empty; k];
        }
        Ok(FeatureVector {
            n,
            normalized: b == 1,
            blocks,
        })
    }

    /// Compact injective byte encoding, used as a grouping key.
    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.len() * 2);
        push_varint(&mut out, self.n as u128);
        push_varint(&mut out, self.k() as u128);
        out.push(self.normalized as u8);
        for b in &self.blocks {
            match b {
                Block::Small(v) => {
                    out.push(0);
                    v.iter().for_each(|&x| push_varint(&mut out, x));
                }
                Block::Big(v) => {
                    out.push(1);
                    v.iter().for_each(|x| push_bytes(&mut out, &x.to_bytes_le()));
                }
                Block::Normalized(v) => {
                    out.push(2);
                    for x in v {
                        push_bytes(&mut out, &x.numer().to_bytes_le());
                        push_bytes(&mut out, &x.denom().to_bytes_le());
                    }
                }
            }
        }
        out
    }

    /// Euclidean distance computed from exact per-coordinate differences.
    pub fn distance(&self, other: &FeatureVector) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        if self.k() != other.k() {
            return Err(Error::InvalidArgument(format!(
                "feature vectors have k = {} and k = {}",
                self.k(),
                other.k()
            )));
        }
        let mut total = 0.0;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            total += a.squared_distance(b)?;
        }
        Ok(total.sqrt())
    }
}

fn push_varint(out: &mut Vec<u8>, mut x: u128) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn push_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    push_varint(out, bytes.len() as u128);
    out.extend_from_slice(bytes);
}

#[derive(Clone, Debug)]
enum Labels {
    Small(Vec<u128>),
    Big(Vec<BigUint>),
    Normalized(Vec<Fraction>),
}

/// Advances the `n` single-seed games and the shared label array one step
/// at a time, yielding the sorted block for each step.
#[derive(Clone, Debug)]
pub struct LabelPropagation<'g> {
    graph: &'g Graph,
    params: GameParams,
    games: Vec<LifePattern>,
    labels: Labels,
    t: usize,
}

impl<'g> LabelPropagation<'g> {
    pub fn new(graph: &'g Graph, params: GameParams, normalize: bool) -> Self {
        let n = graph.n();
        let games = (0..n)
            .map(|i| LifePattern::single(n, i).expect("vertex in range"))
            .collect();
        let labels = if normalize && n > 0 {
            let share = Fraction::new(BigUint::one(), BigUint::from(n));
            Labels::Normalized(vec![share; n])
        } else if normalize {
            Labels::Normalized(Vec::new())
        } else {
            Labels::Small(vec![1; n])
        };
        LabelPropagation {
            graph,
            params,
            games,
            labels,
            t: 0,
        }
    }

    /// Steps taken so far.
    pub fn steps(&self) -> usize {
        self.t
    }

    /// Alive sets `A_t^i` of all games at the current step.
    pub fn games(&self) -> &[LifePattern] {
        &self.games
    }

    /// Advance to step `t + 1` and return its sorted block.
    pub fn advance(&mut self) -> Block {
        for game in &mut self.games {
            *game = step(self.graph, game, self.params);
        }
        self.t += 1;
        let games = &self.games;
        self.labels = match std::mem::replace(&mut self.labels, Labels::Small(Vec::new())) {
            Labels::Small(old) => match update_small(&old, games) {
                Some(new) => Labels::Small(new),
                None => {
                    let old: Vec<BigUint> = old.into_iter().map(BigUint::from).collect();
                    Labels::Big(update_generic(&old, games))
                }
            },
            Labels::Big(old) => Labels::Big(update_generic(&old, games)),
            Labels::Normalized(old) => {
                let mut new = update_generic(&old, games);
                let total: Fraction = new.iter().fold(Fraction::zero(), |acc, x| acc + x);
                for x in &mut new {
                    *x = &*x / &total;
                }
                Labels::Normalized(new)
            }
        };
        match &self.labels {
            Labels::Small(v) => {
                let mut s = v.clone();
                s.sort_unstable();
                Block::Small(s)
            }
            Labels::Big(v) => {
                let mut s = v.clone();
                s.sort_unstable();
                Block::Big(s)
            }
            Labels::Normalized(v) => {
                let mut s = v.clone();
                s.sort_unstable();
                Block::Normalized(s)
            }
        }
    }
}

fn update_small(old: &[u128], games: &[LifePattern]) -> Option<Vec<u128>> {
    games
        .iter()
        .enumerate()
        .map(|(i, game)| {
            game.alive()
                .try_fold(old[i], |acc, v| acc.checked_add(old[v]))
        })
        .collect()
}

fn update_generic<T>(old: &[T], games: &[LifePattern]) -> Vec<T>
where
    T: Clone + for<'a> std::ops::AddAssign<&'a T>,
{
    games
        .iter()
        .enumerate()
        .map(|(i, game)| {
            let mut acc = old[i].clone();
            for v in game.alive() {
                acc += &old[v];
            }
            acc
        })
        .collect()
}

/// Feature vector of `g` over `k >= 1` steps with the default `(1, 1, 1)` rule.
pub fn extract_features(g: &Graph, k: usize, normalize: bool) -> Result<FeatureVector> {
    extract_features_with(g, k, normalize, GameParams::DEFAULT)
}

pub fn extract_features_with(
    g: &Graph,
    k: usize,
    normalize: bool,
    params: GameParams,
) -> Result<FeatureVector> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut prop = LabelPropagation::new(g, params, normalize);
    let blocks = (0..k).map(|_| prop.advance()).collect();
    Ok(FeatureVector {
        n: g.n(),
        normalized: normalize,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_complete, make_path, make_star};

    fn small(fv: &FeatureVector) -> Vec<u128> {
        fv.blocks()
            .iter()
            .flat_map(|b| match b {
                Block::Small(v) => v.clone(),
                other => panic!("expected small block, got {other:?}"),
            })
            .collect()
    }

    fn frac(p: u32, q: u32) -> Fraction {
        Fraction::new(BigUint::from(p), BigUint::from(q))
    }

    #[test]
    fn path3_one_step() {
        let fv = extract_features(&make_path(3).unwrap(), 1, false).unwrap();
        assert_eq!(small(&fv), vec![2, 2, 3]);
        assert_eq!(fv.to_line(), "3 1 0 2 2 3");
    }

    #[test]
    fn path3_normalized() {
        let fv = extract_features(&make_path(3).unwrap(), 1, true).unwrap();
        assert_eq!(
            fv.blocks()[0],
            Block::Normalized(vec![frac(2, 7), frac(2, 7), frac(3, 7)])
        );
        assert_eq!(fv.to_line(), "3 1 1 2/7 2/7 3/7");
    }

    #[test]
    fn single_vertex() {
        let fv = extract_features(&Graph::empty(1), 4, false).unwrap();
        assert_eq!(small(&fv), vec![1; 4]);
    }

    #[test]
    fn complete_five() {
        let fv = extract_features(&make_complete(5).unwrap(), 1, false).unwrap();
        assert_eq!(small(&fv), vec![5; 5]);
    }

    #[test]
    fn p4_and_star_first_block() {
        let p4 = extract_features(&make_path(4).unwrap(), 1, false).unwrap();
        let s4 = extract_features(&make_star(4).unwrap(), 1, false).unwrap();
        assert_eq!(small(&p4), vec![2, 2, 3, 3]);
        assert_eq!(small(&s4), vec![2, 2, 2, 4]);
        assert_eq!(p4.distance(&s4).unwrap(), 2f64.sqrt());
    }

    #[test]
    fn k_zero_rejected() {
        assert!(extract_features(&make_path(3).unwrap(), 0, false).is_err());
    }

    #[test]
    fn line_round_trip() {
        let g = make_star(6).unwrap();
        for normalize in [false, true] {
            let fv = extract_features(&g, 3, normalize).unwrap();
            assert_eq!(FeatureVector::parse_line(&fv.to_line()).unwrap(), fv);
        }
        assert!(FeatureVector::parse_line("3 1 0 1 2").is_err());
        assert!(FeatureVector::parse_line("3 1 2 1 2 3").is_err());
    }

    #[test]
    fn keys_separate_vectors() {
        let a = extract_features(&make_path(4).unwrap(), 2, false).unwrap();
        let b = extract_features(&make_star(4).unwrap(), 2, false).unwrap();
        assert_ne!(a.key_bytes(), b.key_bytes());
        assert_eq!(a.key_bytes(), extract_features(&make_path(4).unwrap(), 2, false).unwrap().key_bytes());
        let an = extract_features(&make_path(4).unwrap(), 2, true).unwrap();
        assert_ne!(a.key_bytes(), an.key_bytes());
    }

    #[test]
    fn promotes_to_big_on_overflow() {
        // labels on K_n grow by a factor of n per step; 40 steps on K_20
        // overflow u128 (20^40 > 2^128)
        let g = make_complete(20).unwrap();
        let fv = extract_features(&g, 40, false).unwrap();
        assert!(matches!(fv.blocks()[0], Block::Small(_)));
        assert!(matches!(fv.blocks()[39], Block::Big(_)));
        let reparsed = FeatureVector::parse_line(&fv.to_line()).unwrap();
        assert_eq!(reparsed, fv);
    }
}
