//! Standard graph constructions and the seeded G(n, m) sampler.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn require_vertices(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one vertex".into()));
    }
    Ok(())
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn make_path(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn make_complete(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    Graph::from_edges(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))
}

/// Star with center 0 and leaves `1..n`.
pub fn make_star(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    Graph::from_edges(n, (1..n).map(|i| (0, i)))
}

/// Cycle on `n` vertices. For `n < 3` the closing edge would be a loop or a
/// duplicate, so the result is the path on `n` vertices.
pub fn make_cycle(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    if n < 3 {
        return make_path(n);
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Grid of cells `(x, y)`, vertex `y * width + x`, with Moore (king-move)
/// adjacency. With `wrap` the grid is a torus; both sides must then be at
/// least 3 so every cell has 8 distinct neighbors.
pub fn make_grid(width: usize, height: usize, wrap: bool) -> Result<Graph> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidArgument("grid sides must be at least 1".into()));
    }
    if wrap && (width < 3 || height < 3) {
        return Err(Error::InvalidArgument(format!(
            "toroidal grid needs both sides >= 3, got {width}x{height}"
        )));
    }
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    let (nx, ny) = if wrap {
                        (nx.rem_euclid(width as i64), ny.rem_euclid(height as i64))
                    } else if nx < 0 || ny < 0 || nx >= width as i64 || ny >= height as i64 {
                        continue;
                    } else {
                        (nx, ny)
                    };
                    edges.push((y * width + x, ny as usize * width + nx as usize));
                }
            }
        }
    }
    Graph::from_edges(width * height, edges)
}

/// Pair `(i, j)`, `i < j`, at position `k` of the column-wise upper-triangle
/// order `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn pair_from_index(k: u64) -> (usize, usize) {
    // largest j with j(j-1)/2 <= k
    let mut j = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as u64;
    while j * (j - 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    let i = k - j * (j - 1) / 2;
    (i as usize, j as usize)
}

/// Uniform random simple graph with exactly `m` edges, drawn by a partial
/// Fisher–Yates shuffle over the `n(n-1)/2` pair indices. Deterministic in
/// `seed` on every platform (ChaCha8 stream, 64-bit range sampling).
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if m as u64 > pairs {
        return Err(Error::EdgeCountOutOfRange {
            n,
            m,
            max: pairs as usize,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // sparse view of the swapped prefix; unset slots hold their own index
    let mut swapped: HashMap<u64, u64> = HashMap::with_capacity(2 * m);
    let mut edges = Vec::with_capacity(m);
    for i in 0..m as u64 {
        let j = rng.gen_range(i..pairs);
        let at_j = swapped.get(&j).copied().unwrap_or(j);
        let at_i = swapped.get(&i).copied().unwrap_or(i);
        swapped.insert(j, at_i);
        edges.push(pair_from_index(at_j));
    }
    Graph::from_edges(n, edges)
}
