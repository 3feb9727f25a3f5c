//! Breadth-first oracles on the Farey graph restricted to slopes with
//! `|p|, q <= bound`.
//!
//! These are deliberately independent of the strip algorithm: the graph is
//! enumerated from the edge rule alone, and distances come from plain BFS.

use num_traits::ToPrimitive;

use super::{farey_distance, intersection_number, Slope, SurfaceModel};
use crate::error::{Error, Result};
use crate::par::Execution;

const NONE: u32 = u32::MAX;

/// Outcome of a geodesic-containment certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The vertex lies on every geodesic between the endpoints.
    Contained,
    /// Some geodesic between the endpoints avoids the vertex.
    NotContained,
    /// The bounded region does not contain a geodesic between the endpoints.
    Inconclusive,
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, for `gcd(a, m) = 1`, in `[0, m)`.
fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}

/// The Farey graph induced on slopes with `|p| <= bound` and `q <= bound`,
/// stored as a compressed adjacency list.
pub struct BoundedFareyGraph {
    bound: i64,
    index: Vec<u32>,
    slopes: Vec<(i32, i32)>,
    offsets: Vec<u32>,
    adjacency: Vec<u32>,
}

impl BoundedFareyGraph {
    /// Builds the graph from the parent structure of the Farey graph: every
    /// slope `p/q` with `q >= 2` has exactly two neighbours of smaller
    /// denominator, found from `p s - q r = ±1`.
    pub fn new(bound: u64) -> Result<Self> {
        let mut g = Self::with_vertices(bound)?;
        let n = g.slopes.len();
        let mut degree = vec![0u32; n + 1];
        g.for_each_edge(|u, v| {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        });
        let mut offsets = vec![0u32; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0u32; offsets[n] as usize];
        g.for_each_edge(|u, v| {
            adjacency[fill[u as usize] as usize] = v;
            fill[u as usize] += 1;
            adjacency[fill[v as usize] as usize] = u;
            fill[v as usize] += 1;
        });
        g.offsets = offsets;
        g.adjacency = adjacency;
        Ok(g)
    }

    /// Builds the graph by testing every vertex pair against the model's
    /// intersection convention. Quadratic; meant for small bounds.
    pub fn brute_force(model: SurfaceModel, bound: u64) -> Result<Self> {
        let edge_i = num_bigint::BigInt::from(model.edge_intersection()?);
        let mut g = Self::with_vertices(bound)?;
        let slopes: Vec<Slope> = g
            .slopes
            .iter()
            .map(|&(p, q)| Slope::from_ints(p as i64, q as i64).unwrap())
            .collect();
        let n = slopes.len();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for u in 0..n {
            for v in (u + 1)..n {
                if intersection_number(model, &slopes[u], &slopes[v])? == edge_i {
                    lists[u].push(v as u32);
                    lists[v].push(u as u32);
                }
            }
        }
        let mut offsets = vec![0u32; n + 1];
        let mut adjacency = Vec::new();
        for (u, list) in lists.into_iter().enumerate() {
            adjacency.extend(list);
            offsets[u + 1] = adjacency.len() as u32;
        }
        g.offsets = offsets;
        g.adjacency = adjacency;
        Ok(g)
    }

    fn with_vertices(bound: u64) -> Result<Self> {
        if bound == 0 || bound > 20_000 {
            return Err(Error::InvalidParameter(format!(
                "oracle bound {bound} must lie in 1..=20000"
            )));
        }
        let b = bound as i64;
        let width = (2 * b + 1) as usize;
        let mut index = vec![NONE; width * (b as usize + 1)];
        let mut slopes = Vec::new();
        index[(b + 1) as usize] = 0;
        slopes.push((1, 0));
        for q in 1..=b {
            for p in -b..=b {
                if gcd_i64(p, q) == 1 {
                    index[q as usize * width + (p + b) as usize] = slopes.len() as u32;
                    slopes.push((p as i32, q as i32));
                }
            }
        }
        Ok(BoundedFareyGraph {
            bound: b,
            index,
            slopes,
            offsets: Vec::new(),
            adjacency: Vec::new(),
        })
    }

    fn id(&self, p: i64, q: i64) -> u32 {
        let width = (2 * self.bound + 1) as usize;
        self.index[q as usize * width + (p + self.bound) as usize]
    }

    fn for_each_edge(&self, mut f: impl FnMut(u32, u32)) {
        let inf = 0u32;
        for (v, &(p, q)) in self.slopes.iter().enumerate() {
            let (p, q) = (p as i64, q as i64);
            let v = v as u32;
            match q {
                0 => {}
                1 => {
                    f(v, inf);
                    if p < self.bound {
                        f(v, self.id(p + 1, 1));
                    }
                }
                _ => {
                    let s = mod_inverse(p, q);
                    let r = (p * s - 1) / q;
                    f(v, self.id(r, s));
                    let s2 = q - s;
                    let r2 = (p * s2 + 1) / q;
                    f(v, self.id(r2, s2));
                }
            }
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound as u64
    }

    pub fn vertex_count(&self) -> usize {
        self.slopes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    /// Vertex id of `s`, or an out-of-range error.
    pub fn vertex(&self, s: &Slope) -> Result<u32> {
        let out = || Error::OutOfRange {
            slope: s.to_string(),
            bound: self.bound as u64,
        };
        let (p, q) = s.to_i64_pair().ok_or_else(out)?;
        if p.abs() > self.bound || q > self.bound {
            return Err(out());
        }
        Ok(self.id(p, q))
    }

    pub fn slope(&self, v: u32) -> Slope {
        let (p, q) = self.slopes[v as usize];
        Slope::from_ints(p as i64, q as i64).unwrap()
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.vertex(s).is_ok()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// BFS distances from `source`, skipping `deleted`; `u32::MAX` marks
    /// unreachable vertices.
    pub fn distances_from(&self, source: u32, deleted: Option<u32>) -> Vec<u32> {
        let mut dist = vec![NONE; self.slopes.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if Some(w) == deleted || dist[w as usize] != NONE {
                    continue;
                }
                dist[w as usize] = du + 1;
                queue.push_back(w);
            }
        }
        dist
    }

    fn bfs_pair(&self, a: u32, b: u32, deleted: Option<u32>) -> Option<u64> {
        if a == b {
            return Some(0);
        }
        let mut dist = vec![NONE; self.slopes.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[a as usize] = 0;
        queue.push_back(a);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if Some(w) == deleted || dist[w as usize] != NONE {
                    continue;
                }
                if w == b {
                    return Some(du as u64 + 1);
                }
                dist[w as usize] = du + 1;
                queue.push_back(w);
            }
        }
        None
    }

    /// BFS distance between two slopes in the bounded graph; `None` when the
    /// bounded graph does not connect them.
    pub fn distance(&self, a: &Slope, b: &Slope) -> Result<Option<u64>> {
        Ok(self.bfs_pair(self.vertex(a)?, self.vertex(b)?, None))
    }

    /// Certifies whether `g` lies on every geodesic from `a` to `b`.
    pub fn all_geodesics_contain(&self, a: &Slope, b: &Slope, g: &Slope) -> Result<Certification> {
        if a == g || b == g {
            return Err(Error::DegeneratePair(g.to_string()));
        }
        let (Ok(va), Ok(vb), Ok(vg)) = (self.vertex(a), self.vertex(b), self.vertex(g)) else {
            return Ok(Certification::Inconclusive);
        };
        let d = farey_distance(a, b);
        if farey_distance(a, g) + farey_distance(g, b) != d {
            return Ok(Certification::NotContained);
        }
        if self.bfs_pair(va, vb, None) != Some(d) {
            return Ok(Certification::Inconclusive);
        }
        Ok(match self.bfs_pair(va, vb, Some(vg)) {
            Some(without) if without <= d => Certification::NotContained,
            _ => Certification::Contained,
        })
    }

    /// All pairwise BFS distances among `targets`, computed with bit-parallel
    /// BFS from 64 sources at a time. `None` marks pairs the bounded graph
    /// does not connect.
    pub fn pairwise_distances(
        &self,
        targets: &[Slope],
        exec: Execution,
    ) -> Result<Vec<Vec<Option<u32>>>> {
        let ids: Vec<u32> = targets
            .iter()
            .map(|t| self.vertex(t))
            .collect::<Result<_>>()?;
        let n = self.slopes.len();
        let mut out = vec![vec![None; ids.len()]; ids.len()];
        let mut frontier = vec![0u64; n];
        let mut next = vec![0u64; n];
        let mut visited = vec![0u64; n];
        for (batch_no, batch) in ids.chunks(64).enumerate() {
            let full: u64 = if batch.len() == 64 {
                u64::MAX
            } else {
                (1u64 << batch.len()) - 1
            };
            frontier.iter_mut().for_each(|w| *w = 0);
            visited.iter_mut().for_each(|w| *w = 0);
            for (bit, &src) in batch.iter().enumerate() {
                frontier[src as usize] |= 1 << bit;
                visited[src as usize] |= 1 << bit;
            }
            let mut active: Option<Vec<u32>> = Some(batch.to_vec());
            let mut level = 0u32;
            loop {
                for (ti, &t) in ids.iter().enumerate() {
                    let fresh = frontier[t as usize];
                    let mut bits = fresh;
                    while bits != 0 {
                        let bit = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        out[batch_no * 64 + bit][ti] = Some(level);
                    }
                }
                if ids.iter().all(|&t| visited[t as usize] == full) {
                    break;
                }
                let any = match &active {
                    Some(list) => self.push_level(list, &frontier, &visited, &mut next),
                    None => self.pull_level(&frontier, &visited, &mut next, full, exec),
                };
                if !any {
                    break;
                }
                active = Some(Vec::new());
                for v in 0..n {
                    visited[v] |= next[v];
                    if next[v] != 0 {
                        if let Some(list) = active.as_mut() {
                            if list.len() < n / SPARSE_FRACTION {
                                list.push(v as u32);
                            } else {
                                active = None;
                            }
                        }
                    }
                }
                std::mem::swap(&mut frontier, &mut next);
                level += 1;
            }
        }
        Ok(out)
    }

    /// Sparse frontier: scatter from the active vertices only.
    fn push_level(
        &self,
        active: &[u32],
        frontier: &[u64],
        visited: &[u64],
        next: &mut [u64],
    ) -> bool {
        next.fill(0);
        let mut any = false;
        for &v in active {
            let bits = frontier[v as usize];
            for &w in self.neighbors(v) {
                let fresh = bits & !visited[w as usize];
                next[w as usize] |= fresh;
                any |= fresh != 0;
            }
        }
        any
    }

    fn pull_level(
        &self,
        frontier: &[u64],
        visited: &[u64],
        next: &mut [u64],
        full: u64,
        exec: Execution,
    ) -> bool {
        const CHUNK: usize = 1 << 16;
        let pull = |start: usize, out: &mut [u64]| -> bool {
            let mut any = false;
            for (i, slot) in out.iter_mut().enumerate() {
                let v = start + i;
                let seen = visited[v];
                if seen == full {
                    *slot = 0;
                    continue;
                }
                let mut acc = 0u64;
                for &w in self.neighbors(v as u32) {
                    acc |= frontier[w as usize];
                }
                *slot = acc & !seen & full;
                any |= *slot != 0;
            }
            any
        };
        match exec {
            Execution::Sequential => pull(0, next),
            Execution::Parallel => pull_chunks_parallel(next, CHUNK, &pull),
        }
    }
}

#[cfg(feature = "parallel")]
fn pull_chunks_parallel<F>(next: &mut [u64], chunk: usize, pull: &F) -> bool
where
    F: Fn(usize, &mut [u64]) -> bool + Sync,
{
    use rayon::prelude::*;
    next.par_chunks_mut(chunk)
        .enumerate()
        .map(|(i, out)| pull(i * chunk, out))
        .reduce(|| false, |a, b| a | b)
}

#[cfg(not(feature = "parallel"))]
fn pull_chunks_parallel<F>(next: &mut [u64], _chunk: usize, pull: &F) -> bool
where
    F: Fn(usize, &mut [u64]) -> bool + Sync,
{
    pull(0, next)
}

const SPARSE_FRACTION: usize = 64;

/// BFS distance in the Farey graph induced on slopes with `|p|, q <= bound`.
/// `Ok(None)` means the bounded graph does not connect the two slopes.
pub fn bfs_distance_oracle(a: &Slope, b: &Slope, bound: u64) -> Result<Option<u64>> {
    for s in [a, b] {
        let fits = s
            .to_i64_pair()
            .is_some_and(|(p, q)| p.unsigned_abs() <= bound && q as u64 <= bound);
        if !fits {
            return Err(Error::OutOfRange {
                slope: s.to_string(),
                bound,
            });
        }
    }
    BoundedFareyGraph::new(bound)?.distance(a, b)
}

/// Certifies that `g` lies on every Farey geodesic from `a` to `b`, using the
/// bounded graph with `g` deleted.
pub fn all_geodesics_contain(a: &Slope, b: &Slope, g: &Slope, bound: u64) -> Result<Certification> {
    if a == g || b == g {
        return Err(Error::DegeneratePair(g.to_string()));
    }
    let fits = [a, b, g]
        .iter()
        .all(|s| s.size().to_u64().is_some_and(|x| x <= bound));
    if !fits {
        return Ok(Certification::Inconclusive);
    }
    BoundedFareyGraph::new(bound)?.all_geodesics_contain(a, b, g)
}
