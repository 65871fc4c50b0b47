//! Reference implementations shared by the integration tests. They avoid the
//! library's bit-set code paths on purpose.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use glg_core::formats::read_graphs;
use glg_core::{GameParams, Graph};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn corpus(name: &str) -> Vec<Graph> {
    read_graphs(&data(&format!("corpus/{name}.g6"))).unwrap()
}

/// One synchronous step, counting neighbors vertex by vertex.
pub fn naive_step(g: &Graph, alive: &[bool], p: GameParams) -> Vec<bool> {
    let n = g.n();
    (0..n)
        .map(|v| {
            let mut live = 0;
            let mut dead = 0;
            for u in 0..n {
                if u != v && g.has_edge(u, v) {
                    if alive[u] {
                        live += 1;
                    } else {
                        dead += 1;
                    }
                }
            }
            if alive[v] {
                live >= p.a && dead >= p.d
            } else {
                live == p.r
            }
        })
        .collect()
}

/// Run until death or the first repeated pattern; returns the pattern list.
pub fn naive_trajectory(g: &Graph, seed: usize, p: GameParams, cap: usize) -> Vec<Vec<bool>> {
    let mut seen: Vec<Vec<bool>> = Vec::new();
    let mut cur = vec![false; g.n()];
    cur[seed] = true;
    loop {
        let done = cur.iter().all(|&x| !x) || seen.contains(&cur);
        seen.push(cur.clone());
        if done || seen.len() > cap {
            return seen;
        }
        cur = naive_step(g, &cur, p);
    }
}

/// Distinct non-empty patterns before death or repetition.
pub fn naive_complexity(traj: &[Vec<bool>]) -> usize {
    traj.len() - 1
}

/// Sorted label blocks for steps 1..=k under rule (1, 1, 1), with labels in
/// u128 (enough for the small graphs used in tests).
pub fn naive_features(g: &Graph, k: usize) -> Vec<Vec<u128>> {
    let n = g.n();
    let p = GameParams { a: 1, d: 1, r: 1 };
    let mut labels = vec![1u128; n];
    let mut games: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|v| v == i).collect())
        .collect();
    let mut out = Vec::new();
    for _ in 0..k {
        games = games.iter().map(|a| naive_step(g, a, p)).collect();
        let next: Vec<u128> = (0..n)
            .map(|i| labels[i] + (0..n).filter(|&v| games[i][v]).map(|v| labels[v]).sum::<u128>())
            .collect();
        labels = next;
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        out.push(sorted);
    }
    out
}

/// Conway's B3/S23 on a `w x h` torus, cells row-major.
pub fn conway_step(cells: &[bool], w: usize, h: usize) -> Vec<bool> {
    let mut out = vec![false; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut live = 0;
            for dy in [h - 1, 0, 1] {
                for dx in [w - 1, 0, 1] {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    if cells[((y + dy) % h) * w + (x + dx) % w] {
                        live += 1;
                    }
                }
            }
            let here = cells[y * w + x];
            out[y * w + x] = live == 3 || (here && live == 2);
        }
    }
    out
}

/// Exact permutation-based isomorphism check for small `n`.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence_sorted() != h.degree_sequence_sorted() {
        return false;
    }
    let n = g.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = g.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                map[v] = w;
                used[w] = true;
                if extend(g, h, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    extend(g, h, 0, &mut map, &mut used)
}
