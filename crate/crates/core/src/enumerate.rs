//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `k + 1` vertices are grown from the isomorphism classes on `k`
//! vertices by adding one vertex joined to every admissible neighbor subset,
//! and deduplicated by a canonical code. The canonical code is the maximum,
//! over the leaves of an individualization-refinement search tree, of the
//! upper-triangle adjacency bits read in graph6 order.
//!
//! Restricting every intermediate graph is complete for these families:
//! every connected graph has an ordering whose prefixes are connected (BFS),
//! and every induced subgraph of a graph of maximum degree `D` also has
//! maximum degree at most `D`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count with a `u128` canonical code.
pub const MAX_CANON_N: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumOptions {
    pub connected: bool,
    /// Keep only graphs in which every vertex has this degree.
    pub regular: Option<usize>,
}

impl EnumOptions {
    pub fn all() -> Self {
        EnumOptions::default()
    }

    pub fn connected() -> Self {
        EnumOptions {
            connected: true,
            regular: None,
        }
    }

    pub fn connected_regular(degree: usize) -> Self {
        EnumOptions {
            connected: true,
            regular: Some(degree),
        }
    }
}

type Adj = [u32; MAX_CANON_N];

fn adjacency(g: &Graph) -> Result<Adj> {
    if g.n() > MAX_CANON_N {
        return Err(Error::InvalidArgument(format!(
            "canonical form supports at most {MAX_CANON_N} vertices, got {}",
            g.n()
        )));
    }
    let mut adj = [0u32; MAX_CANON_N];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

/// Canonical code of `g`: equal for two graphs iff they are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<u128> {
    Ok(canon(&adjacency(g)?, g.n()))
}

/// The representative of `g`'s isomorphism class whose adjacency bits are
/// its canonical code.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    Ok(graph_from_code(canonical_code(g)?, g.n()))
}

fn bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Inverse of the code layout: the first pair `(0,1)` is the most
/// significant bit.
pub fn graph_from_code(code: u128, n: usize) -> Graph {
    let total = bits(n);
    let mut rows = vec![BitSet::new(n); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                rows[i].insert(j);
                rows[j].insert(i);
            }
            k += 1;
        }
    }
    Graph::from_rows_unchecked(rows)
}

fn code_for_order(adj: &Adj, order: &[usize]) -> u128 {
    let n = order.len();
    let total = bits(n);
    let mut code = 0u128;
    let mut k = 0;
    for j in 1..n {
        let row = adj[order[j]];
        for &vi in &order[..j] {
            if row >> vi & 1 == 1 {
                code |= 1 << (total - 1 - k);
            }
            k += 1;
        }
    }
    code
}

/// Split cells until the ordered partition is equitable. Sub-cells are
/// ordered by their neighbor count into the splitter, which keeps the
/// result invariant under relabeling.
fn refine(adj: &Adj, cells: &mut Vec<Vec<usize>>) {
    let mut s = 0;
    while s < cells.len() {
        let splitter: u32 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
        let mut split_any = false;
        let mut next = Vec::with_capacity(cells.len() + 2);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u32, usize)> = cell
                .iter()
                .map(|&v| ((adj[v] & splitter).count_ones(), v))
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            split_any |= keyed[0].0 != keyed[keyed.len() - 1].0;
        }
        *cells = next;
        if split_any {
            s = 0;
        } else {
            s += 1;
        }
    }
}

fn search(adj: &Adj, mut cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    refine(adj, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_for_order(adj, &order);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<usize> = Vec::with_capacity(cell.len());
    for &v in &cell {
        // swapping twins is an automorphism fixing everything else, so their
        // subtrees yield the same codes
        let twin = tried
            .iter()
            .any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        tried.push(v);
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend_from_slice(&cells[..target]);
        child.push(vec![v]);
        child.push(cell.iter().copied().filter(|&u| u != v).collect());
        child.extend_from_slice(&cells[target + 1..]);
        search(adj, child, best);
    }
}

fn canon(adj: &Adj, n: usize) -> u128 {
    if n <= 1 {
        return 0;
    }
    let mut best = None;
    search(adj, vec![(0..n).collect()], &mut best);
    best.expect("search reaches at least one leaf")
}

/// Canonical codes of all graphs on `n` vertices up to isomorphism, filtered
/// by `opts`, ordered by edge count then code. Decode with
/// [`graph_from_code`]; the codes take far less memory than the graphs.
pub fn enumerate_codes(n: usize, opts: EnumOptions) -> Result<Vec<u128>> {
    if n > MAX_CANON_N {
        return Err(Error::InvalidArgument(format!(
            "enumeration supports at most {MAX_CANON_N} vertices"
        )));
    }
    if n == 0 {
        return Ok(if opts.regular.is_some_and(|d| d > 0) { vec![] } else { vec![0] });
    }
    let max_degree = opts.regular;
    let mut level: Vec<u128> = vec![0];
    for k in 1..n {
        let remaining = n - (k + 1);
        let children: HashSet<u128> = level
            .par_iter()
            .fold(HashSet::new, |mut acc, &code| {
                let parent = adjacency(&graph_from_code(code, k)).expect("k < MAX_CANON_N");
                for subset in 0u32..(1 << k) {
                    if opts.connected && subset == 0 {
                        continue;
                    }
                    if let Some(d) = max_degree {
                        if subset.count_ones() as usize > d {
                            continue;
                        }
                    }
                    let mut adj = parent;
                    adj[k] = subset;
                    let mut rest = subset;
                    while rest != 0 {
                        adj[rest.trailing_zeros() as usize] |= 1 << k;
                        rest &= rest - 1;
                    }
                    if let Some(d) = max_degree {
                        // every vertex must still be able to reach degree d
                        let ok = (0..=k).all(|v| {
                            let deg = adj[v].count_ones() as usize;
                            deg <= d && d - deg <= remaining
                        });
                        if !ok {
                            continue;
                        }
                    }
                    acc.insert(canon(&adj, k + 1));
                }
                acc
            })
            .reduce(HashSet::new, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                big
            });
        level = children.into_iter().collect();
        level.par_sort_unstable();
    }
    let mut codes: Vec<u128> = level
        .into_par_iter()
        .filter(|&c| {
            let g = graph_from_code(c, n);
            (!opts.connected || g.is_connected()) && opts.regular.is_none_or(|d| g.is_regular(d))
        })
        .collect();
    // codes were sorted; stable sort keeps that order within each edge count
    codes.sort_by_key(|c| c.count_ones());
    Ok(codes)
}

/// [`enumerate_codes`], decoded.
pub fn enumerate_graphs(n: usize, opts: EnumOptions) -> Result<Vec<Graph>> {
    Ok(enumerate_codes(n, opts)?
        .par_iter()
        .map(|&c| graph_from_code(c, n))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_complete, make_cycle, make_path, make_star};
    use crate::graph::Permutation;
    use rand::SeedableRng;

    #[test]
    fn code_is_relabeling_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for g in [
            make_path(7).unwrap(),
            make_cycle(9).unwrap(),
            make_star(6).unwrap(),
            make_complete(8).unwrap(),
            crate::generators::random_gnm(12, 30, 4).unwrap(),
        ] {
            let c = canonical_code(&g).unwrap();
            for _ in 0..10 {
                let p = Permutation::random(g.n(), &mut rng);
                assert_eq!(canonical_code(&g.apply_permutation(&p).unwrap()).unwrap(), c);
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let p4 = canonical_code(&make_path(4).unwrap()).unwrap();
        let s4 = canonical_code(&make_star(4).unwrap()).unwrap();
        assert_ne!(p4, s4);
    }

    #[test]
    fn canonical_form_round_trip() {
        let g = make_cycle(6).unwrap();
        let c = canonical_form(&g).unwrap();
        assert_eq!(canonical_code(&c).unwrap(), canonical_code(&g).unwrap());
        assert_eq!(c.m(), 6);
    }

    #[test]
    fn small_counts() {
        // number of graphs on n vertices: 1, 2, 4, 11, 34, 156
        let all: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, EnumOptions::all()).unwrap().len())
            .collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        // connected: 1, 1, 2, 6, 21, 112
        let conn: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, EnumOptions::connected()).unwrap().len())
            .collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn cubic_counts() {
        assert_eq!(enumerate_graphs(4, EnumOptions::connected_regular(3)).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(6, EnumOptions::connected_regular(3)).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(8, EnumOptions::connected_regular(3)).unwrap().len(), 5);
        assert!(enumerate_graphs(5, EnumOptions::connected_regular(3)).unwrap().is_empty());
    }

    #[test]
    fn too_large_rejected() {
        assert!(canonical_code(&Graph::empty(17)).is_err());
        assert!(enumerate_graphs(17, EnumOptions::all()).is_err());
    }
}
