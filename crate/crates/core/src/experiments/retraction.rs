//! Checker for the retraction argument on finite graphs: if `Π: G -> H` and
//! `P: H -> G` are simplicial (edges go to edges or collapse) and
//! `P ∘ Π = id`, then `Π` is an isometric embedding.
//!
//! This validates the combinatorial step only, on explicit finite graphs; it
//! says nothing about which surfaces admit such maps.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::farey::{BoundedFareyGraph, Slope};

use super::report::Report;

/// Two graphs as adjacency lists and maps between their vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraphMapCheck {
    pub g: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
    pub pi: Vec<usize>,
    pub p: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isometric {
        pairs_checked: usize,
    },
    /// First pair (in index order) whose distance changes under `Π`;
    /// `None` means disconnected.
    Counterexample {
        a: usize,
        b: usize,
        d_g: Option<u32>,
        d_h: Option<u32>,
        hypotheses_hold: bool,
    },
    /// Distances agree but a map sends an edge to a non-edge.
    NotSimplicial {
        map: &'static str,
        u: usize,
        v: usize,
    },
}

fn check_graph(name: &str, adj: &[Vec<usize>], bad: &mut Vec<String>) {
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            if v >= adj.len() {
                bad.push(format!("{name}: edge {u}-{v} leaves the graph"));
            } else if v == u {
                bad.push(format!("{name}: loop at {u}"));
            } else if !adj[v].contains(&u) {
                bad.push(format!("{name}: edge {u}-{v} is not symmetric"));
            }
        }
    }
}

impl FiniteGraphMapCheck {
    /// Lists every malformed vertex; empty means the maps are usable.
    pub fn problems(&self) -> Vec<String> {
        let mut bad = Vec::new();
        check_graph("G", &self.g, &mut bad);
        check_graph("H", &self.h, &mut bad);
        if self.pi.len() != self.g.len() {
            bad.push(format!(
                "Π has {} entries for {} vertices",
                self.pi.len(),
                self.g.len()
            ));
        }
        if self.p.len() != self.h.len() {
            bad.push(format!(
                "P has {} entries for {} vertices",
                self.p.len(),
                self.h.len()
            ));
        }
        for (v, &w) in self.pi.iter().enumerate() {
            if w >= self.h.len() {
                bad.push(format!("Π({v}) = {w} is not a vertex of H"));
            }
        }
        for (v, &w) in self.p.iter().enumerate() {
            if w >= self.g.len() {
                bad.push(format!("P({v}) = {w} is not a vertex of G"));
            }
        }
        if bad.is_empty() {
            for (v, &w) in self.pi.iter().enumerate() {
                if self.p[w] != v {
                    bad.push(format!("P(Π({v})) = {} != {v}", self.p[w]));
                }
            }
        }
        bad
    }
}

fn distances(adj: &[Vec<usize>], src: usize) -> Vec<Option<u32>> {
    let mut d = vec![None; adj.len()];
    d[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = d[u].unwrap();
        for &w in &adj[u] {
            if d[w].is_none() {
                d[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    d
}

fn first_non_simplicial(
    from: &[Vec<usize>],
    to: &[Vec<usize>],
    map: &[usize],
) -> Option<(usize, usize)> {
    for (u, list) in from.iter().enumerate() {
        for &v in list {
            let (x, y) = (map[u], map[v]);
            if x != y && !to[x].contains(&y) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn check_retraction(fg: &FiniteGraphMapCheck) -> Result<Verdict> {
    let bad = fg.problems();
    if !bad.is_empty() {
        return Err(Error::MalformedMaps(bad.join("; ")));
    }
    let pi_bad = first_non_simplicial(&fg.g, &fg.h, &fg.pi);
    let p_bad = first_non_simplicial(&fg.h, &fg.g, &fg.p);
    let n = fg.g.len();
    for a in 0..n {
        let dg = distances(&fg.g, a);
        let dh = distances(&fg.h, fg.pi[a]);
        for b in (a + 1)..n {
            if dg[b] != dh[fg.pi[b]] {
                return Ok(Verdict::Counterexample {
                    a,
                    b,
                    d_g: dg[b],
                    d_h: dh[fg.pi[b]],
                    hypotheses_hold: pi_bad.is_none() && p_bad.is_none(),
                });
            }
        }
    }
    if let Some((u, v)) = pi_bad {
        return Ok(Verdict::NotSimplicial { map: "pi", u, v });
    }
    if let Some((u, v)) = p_bad {
        return Ok(Verdict::NotSimplicial { map: "p", u, v });
    }
    Ok(Verdict::Isometric {
        pairs_checked: n * n.saturating_sub(1) / 2,
    })
}

/// The Farey ball of `radius` about `center`, restricted to slopes with
/// `|p|, q <= bound` (balls of positive radius are infinite).
pub fn farey_ball(
    center: &Slope,
    radius: u32,
    bound: u64,
) -> Result<(Vec<Slope>, Vec<Vec<usize>>)> {
    let graph = BoundedFareyGraph::new(bound)?;
    let dist = graph.distances_from(graph.vertex(center)?, None);
    let members: Vec<u32> = (0..graph.vertex_count() as u32)
        .filter(|&v| dist[v as usize] <= radius)
        .collect();
    let local = |v: u32| members.binary_search(&v).ok();
    let adjacency = members
        .iter()
        .map(|&v| {
            graph
                .neighbors(v)
                .iter()
                .filter_map(|&w| local(w))
                .collect()
        })
        .collect();
    Ok((members.iter().map(|&v| graph.slope(v)).collect(), adjacency))
}

/// `adj` plus an edge joining the first (in index order) pair at distance 2.
pub fn with_chord(adj: &[Vec<usize>]) -> Option<(Vec<Vec<usize>>, (usize, usize))> {
    for a in 0..adj.len() {
        let d = distances(adj, a);
        if let Some(b) = (a + 1..adj.len()).find(|&b| d[b] == Some(2)) {
            let mut h = adj.to_vec();
            h[a].push(b);
            h[b].push(a);
            return Some((h, (a, b)));
        }
    }
    None
}

impl Verdict {
    pub fn to_report(&self, labels: &[Slope]) -> Report {
        let name = |i: usize| {
            labels
                .get(i)
                .map(Slope::to_string)
                .unwrap_or_else(|| i.to_string())
        };
        let mut r = Report::new(
            "retraction-check",
            vec!["verdict", "a", "b", "d_g", "d_h", "pairs_checked"],
        );
        let row = match self {
            Verdict::Isometric { pairs_checked } => {
                vec![
                    "isometric".into(),
                    "".into(),
                    "".into(),
                    "".into(),
                    "".into(),
                    (*pairs_checked).into(),
                ]
            }
            Verdict::Counterexample { a, b, d_g, d_h, .. } => vec![
                "counterexample".into(),
                name(*a).into(),
                name(*b).into(),
                d_g.map(u64::from).into(),
                d_h.map(u64::from).into(),
                "".into(),
            ],
            Verdict::NotSimplicial { map, u, v } => {
                vec![
                    format!("not_simplicial_{map}").into(),
                    name(*u).into(),
                    name(*v).into(),
                    "".into(),
                    "".into(),
                    "".into(),
                ]
            }
        };
        r.push_row(row);
        r
    }
}
