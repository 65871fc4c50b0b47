//! Euclidean distance between feature vectors, and search for triples where
//! the triangle inequality is tight ("lines").

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{extract_features, Block, FeatureVector};
use crate::formats::encode_graph6;
use crate::graph::Graph;

/// Distance between the `k`-step feature vectors of two graphs with the same
/// vertex count.
pub fn glg_distance(g: &Graph, h: &Graph, k: usize, normalize: bool) -> Result<f64> {
    if g.n() != h.n() {
        return Err(Error::SizeMismatch(g.n(), h.n()));
    }
    extract_features(g, k, normalize)?.distance(&extract_features(h, k, normalize)?)
}

/// Symmetric matrix of pairwise distances, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    size: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_features(features: &[FeatureVector]) -> Result<Self> {
        let size = features.len();
        let rows: Vec<Vec<f64>> = (0..size)
            .into_par_iter()
            .map(|i| {
                (0..size)
                    .map(|j| {
                        // compute each pair once, in (min, max) order, so the
                        // matrix is exactly symmetric
                        let (a, b) = if i <= j { (i, j) } else { (j, i) };
                        features[a].distance(&features[b])
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(DistanceMatrix {
            size,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineTriple {
    pub i: usize,
    pub j: usize,
    pub mid: usize,
    pub d_ij: f64,
    pub d_imid: f64,
    pub d_jmid: f64,
    /// `|d_ij - d_imid - d_jmid|`.
    pub residual: f64,
    /// `mid`'s feature vector lies exactly on the segment between `i` and
    /// `j`, checked in rational arithmetic.
    pub exact: bool,
}

pub fn residual(d_ij: f64, d_imid: f64, d_jmid: f64) -> f64 {
    (d_ij - d_imid - d_jmid).abs()
}

/// All triples `(i, j, mid)` with `i < j`, `mid` distinct from both, all
/// three distances positive, and residual at most `tol * d_ij`. Sorted by
/// residual, then indices.
pub fn find_lines(corpus: &[Graph], k: usize, normalize: bool, tol: f64) -> Result<Vec<LineTriple>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(first) = corpus.first() {
        if let Some(g) = corpus.iter().find(|g| g.n() != first.n()) {
            return Err(Error::SizeMismatch(first.n(), g.n()));
        }
    }
    let features: Vec<FeatureVector> = corpus
        .par_iter()
        .map(|g| extract_features(g, k, normalize))
        .collect::<Result<_>>()?;
    lines_among(&features, tol)
}

/// The triple scan of [`find_lines`] over precomputed feature vectors.
pub fn lines_among(features: &[FeatureVector], tol: f64) -> Result<Vec<LineTriple>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let dist = DistanceMatrix::from_features(features)?;
    let size = features.len();

    let mut found: Vec<LineTriple> = (0..size)
        .into_par_iter()
        .flat_map_iter(|i| {
            let dist = &dist;
            let features = &features;
            (i + 1..size).flat_map(move |j| {
                let d_ij = dist.get(i, j);
                (0..size).filter_map(move |mid| {
                    if mid == i || mid == j || d_ij == 0.0 {
                        return None;
                    }
                    let (d_imid, d_jmid) = (dist.get(i, mid), dist.get(j, mid));
                    if d_imid == 0.0 || d_jmid == 0.0 {
                        return None;
                    }
                    let r = residual(d_ij, d_imid, d_jmid);
                    (r <= tol * d_ij).then(|| LineTriple {
                        i,
                        j,
                        mid,
                        d_ij,
                        d_imid,
                        d_jmid,
                        residual: r,
                        exact: on_segment(&features[i], &features[j], &features[mid]),
                    })
                })
            })
        })
        .collect();
    found.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then((a.i, a.j, a.mid).cmp(&(b.i, b.j, b.mid)))
    });
    Ok(found)
}

fn rationals(fv: &FeatureVector) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(fv.len());
    for b in fv.blocks() {
        match b {
            Block::Small(v) => out.extend(v.iter().map(|&x| BigRational::from(BigInt::from(x)))),
            Block::Big(v) => out.extend(v.iter().map(|x| BigRational::from(BigInt::from(x.clone())))),
            Block::Normalized(v) => out.extend(v.iter().map(|x| {
                BigRational::new(BigInt::from(x.numer().clone()), BigInt::from(x.denom().clone()))
            })),
        }
    }
    out
}

/// Whether `mid = a + lambda * (b - a)` for some rational `0 <= lambda <= 1`.
/// False when `a == b`.
pub fn on_segment(a: &FeatureVector, b: &FeatureVector, mid: &FeatureVector) -> bool {
    let (a, b, m) = (rationals(a), rationals(b), rationals(mid));
    if a.len() != b.len() || a.len() != m.len() {
        return false;
    }
    let span: Vec<BigRational> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
    let offset: Vec<BigRational> = m.iter().zip(&a).map(|(x, y)| x - y).collect();
    let Some(c) = span.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let lambda = &offset[c] / &span[c];
    if lambda < BigRational::zero() || lambda > BigRational::one() {
        return false;
    }
    span.iter().zip(&offset).all(|(s, o)| &lambda * s == *o)
}

pub const LINES_CSV_HEADER: &str = "i_graph6,j_graph6,mid_graph6,d_ij,d_imid,d_jmid,residual";

pub fn lines_csv(corpus: &[Graph], lines: &[LineTriple]) -> Result<String> {
    let mut s = String::from(LINES_CSV_HEADER);
    s.push('\n');
    for t in lines {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            encode_graph6(&corpus[t.i])?,
            encode_graph6(&corpus[t.j])?,
            encode_graph6(&corpus[t.mid])?,
            t.d_ij,
            t.d_imid,
            t.d_jmid,
            t.residual
        )
        .expect("writing to a String");
    }
    Ok(s)
}
