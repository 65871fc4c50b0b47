//! Undirected simple graphs with bit-set adjacency rows, and vertex permutations.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Each vertex owns a neighbor row `N(v)` as a bit-set. Rows are always
/// symmetric and never contain the vertex itself; every constructor checks
/// this. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitSet>,
    degrees: Vec<usize>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![BitSet::new(n); n],
            degrees: vec![0; n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![BitSet::new(n); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Build from rows already known to be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(rows: Vec<BitSet>) -> Self {
        let degrees: Vec<usize> = rows.iter().map(BitSet::count).collect();
        let m = degrees.iter().sum::<usize>() / 2;
        let g = Graph { rows, degrees, m };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    /// Verify symmetry and irreflexivity.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for (v, row) in self.rows.iter().enumerate() {
            if row.capacity() != n {
                return Err(Error::InvalidArgument(format!("row {v} has wrong width")));
            }
            if row.contains(v) {
                return Err(Error::SelfLoop(v));
            }
            for u in row.iter() {
                if !self.rows[u].contains(v) {
                    return Err(Error::InvalidArgument(format!("edge ({v},{u}) is not symmetric")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.rows[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence_sorted(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = BitSet::new(n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(v) = stack.pop() {
            for u in self.rows[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen.count() == n
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.degrees.iter().all(|&d| d == degree)
    }

    /// Relabel vertices: vertex `v` of `self` becomes `p(v)` in the result,
    /// so `(u, v)` is an edge of `self` iff `(p(u), p(v))` is an edge of the output.
    pub fn apply_permutation(&self, p: &Permutation) -> Result<Graph> {
        if p.len() != self.n() {
            return Err(Error::PermutationLength {
                expected: self.n(),
                got: p.len(),
            });
        }
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (p.apply(u), p.apply(v))))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n {
                return Err(Error::NotAPermutation(format!("value {x} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("value {x} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    /// Uniformly random permutation (Fisher–Yates).
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i as u64) as usize;
            map.swap(i, j);
        }
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn identity_and_inverse_round_trip() {
        let g = p4();
        assert_eq!(g.apply_permutation(&Permutation::identity(4)).unwrap(), g);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = Permutation::random(4, &mut rng);
            let h = g.apply_permutation(&p).unwrap();
            assert_eq!(h.apply_permutation(&p.inverse()).unwrap(), g);
            assert_eq!(h.degree_sequence_sorted(), g.degree_sequence_sorted());
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
        let err = p4().apply_permutation(&Permutation::identity(3)).unwrap_err();
        assert_eq!(err, Error::PermutationLength { expected: 4, got: 3 });
    }

    #[test]
    fn connectivity() {
        assert!(p4().is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::empty(1).is_connected());
    }
}
