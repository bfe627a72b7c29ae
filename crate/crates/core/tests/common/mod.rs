//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use racglab::graph::{brute_force_special_subgraphs, SimplicialGraph, VertexSet};
use racglab::{HypergraphIndex, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All labeled graphs on `n` vertices, one per edge mask.
pub fn labeled_graph(n: usize, mask: u64) -> SimplicialGraph {
    let mut g = SimplicialGraph::with_vertices((0..n).map(|i| format!("v{i}"))).unwrap();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimplicialGraph {
    let mut g = SimplicialGraph::with_vertices((0..n).map(|i| format!("v{i}"))).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hypergraph index from the brute-force special subgraphs, merging by
/// repeated pairwise absorption until nothing changes.
pub fn oracle_index(g: &SimplicialGraph) -> HypergraphIndex {
    let special = brute_force_special_subgraphs(g).unwrap();
    if special.wide.is_empty() {
        return HypergraphIndex::Infinite;
    }
    let mut stage: Vec<VertexSet> = special.wide.iter().chain(&special.strip).copied().collect();
    stage.sort();
    stage.dedup();
    let non_clique = |s: VertexSet| {
        s.iter()
            .any(|a| s.iter().any(|b| a != b && !g.adjacent(a, b)))
    };
    for i in 0.. {
        if stage.contains(&g.vertices()) {
            return HypergraphIndex::Finite(i);
        }
        // each hyperedge grows to the union of everything chained to it
        let mut next = Vec::new();
        for &e in &stage {
            let mut class = vec![e];
            let mut grew = true;
            while grew {
                grew = false;
                for &f in &stage {
                    if !class.contains(&f) && class.iter().any(|&c| non_clique(c.intersection(f))) {
                        class.push(f);
                        grew = true;
                    }
                }
            }
            next.push(class.into_iter().fold(VertexSet::EMPTY, |a, b| a.union(b)));
        }
        next.sort();
        next.dedup();
        if next == stage {
            return HypergraphIndex::Infinite;
        }
        stage = next;
    }
    unreachable!()
}

/// Integer matrices of the Tits representation: `σ_s(e_t) = e_t − 2B(s,t)e_s`
/// with `B(s,s) = 1`, `B(s,t) = 0` on edges and `−1` off edges. Faithful.
pub struct Tits {
    n: usize,
    gens: Vec<Vec<i64>>,
}

impl Tits {
    pub fn new(g: &SimplicialGraph) -> Self {
        let n = g.len();
        let b = |s: usize, t: usize| -> i64 {
            if s == t {
                1
            } else if g.adjacent(s, t) {
                0
            } else {
                -1
            }
        };
        let gens = (0..n)
            .map(|s| {
                let mut m = vec![0i64; n * n];
                for t in 0..n {
                    m[t * n + t] += 1;
                    m[s * n + t] -= 2 * b(s, t);
                }
                m
            })
            .collect();
        Tits { n, gens }
    }

    pub fn identity(&self) -> Vec<i64> {
        let mut m = vec![0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        m
    }

    /// `m · σ_s`.
    pub fn times(&self, m: &[i64], s: usize) -> Vec<i64> {
        let n = self.n;
        let g = &self.gens[s];
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = m[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        out[i * n + j] += a * g[k * n + j];
                    }
                }
            }
        }
        out
    }

    pub fn of_word(&self, w: &Word) -> Vec<i64> {
        w.letters().iter().fold(self.identity(), |m, &s| self.times(&m, s))
    }

    /// Word-metric ball by breadth-first search over matrices.
    pub fn ball(&self, radius: usize) -> HashMap<Vec<i64>, usize> {
        let mut dist = HashMap::new();
        dist.insert(self.identity(), 0);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(m) = queue.pop_front() {
            let d = dist[&m];
            if d == radius {
                continue;
            }
            for s in 0..self.n {
                let x = self.times(&m, s);
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }
}

/// Deletion condition: a word is reduced iff no two equal letters are
/// separated only by letters commuting with them.
pub fn reduced_by_deletion(g: &SimplicialGraph, w: &[usize]) -> bool {
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[j] == w[i] {
                return false;
            }
            if !g.adjacent(w[i], w[j]) {
                break;
            }
        }
    }
    true
}

/// Shortest path in the square lattice from `(ρ, 0)` to `(−ρ, 0)` through
/// points of L1 norm at least `ρ`.
pub fn grid_detour(rho: i64) -> usize {
    let bound = 3 * rho + 2;
    let mut dist: HashMap<(i64, i64), usize> = HashMap::new();
    dist.insert((rho, 0), 0);
    let mut queue = VecDeque::from([(rho, 0)]);
    while let Some((x, y)) = queue.pop_front() {
        let d = dist[&(x, y)];
        if (x, y) == (-rho, 0) {
            return d;
        }
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let p = (x + dx, y + dy);
            if p.0.abs() + p.1.abs() >= rho && p.0.abs() <= bound && p.1.abs() <= bound && !dist.contains_key(&p) {
                dist.insert(p, d + 1);
                queue.push_back(p);
            }
        }
    }
    unreachable!("the lattice annulus is connected")
}
