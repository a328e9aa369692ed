//! Instances obtained from matching, welfare and graph problems.

use std::collections::HashSet;

use num_traits::{Signed, ToPrimitive};

use super::{validate_function, Instance, Meta};
use crate::error::{Error, Result};
use crate::function::{Hyperedge, HypergraphFunction, SetFunction};
use crate::set::{Element, ElementSet};
use crate::system::{Constraint, PartitionMatroid};
use crate::value::{self, Value};

/// Turns an `r`-dimensional matching instance into a matroid-intersection
/// instance with `k` matroids and supermodular degree `d`.
///
/// `side_sizes[s]` is the number of vertices on side `s`; every edge lists
/// one vertex per side. Sides are padded up to `k(d + 1)` with vertices
/// private to each edge. Each edge `e` is split into `d + 1` elements
/// `(e, j)`, element `(e, j)` covering sides `jk..(j+1)k`, with id
/// `e(d + 1) + j`. An edge pays 1 once all of its splits are picked, so the
/// optimum equals the maximum matching size.
pub fn reduce_kdm(side_sizes: &[usize], edges: &[Vec<usize>], k: usize, d: usize) -> Result<Instance> {
    let r = side_sizes.len();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let width = k * (d + 1);
    if r == 0 || r > width {
        return Err(Error::InvalidParameter(format!(
            "{r} sides do not fit k(d + 1) = {width}"
        )));
    }
    let mut seen = HashSet::new();
    for (i, e) in edges.iter().enumerate() {
        if e.len() != r {
            return Err(Error::InvalidInstance(format!(
                "edge {i} has {} vertices, expected one per side ({r})",
                e.len()
            )));
        }
        if let Some(s) = (0..r).find(|&s| e[s] >= side_sizes[s]) {
            return Err(Error::InvalidInstance(format!(
                "edge {i} uses vertex {} on side {s} of size {}",
                e[s], side_sizes[s]
            )));
        }
        if !seen.insert(e.clone()) {
            return Err(Error::InvalidInstance(format!("edge {i} is repeated")));
        }
    }

    let splits = d + 1;
    let n = edges.len() * splits;
    let hyperedges = (0..edges.len())
        .map(|e| Hyperedge {
            members: (e * splits..(e + 1) * splits).collect(),
            weight: value::one(),
        })
        .collect();
    let f = HypergraphFunction::new(n, hyperedges)?;

    // Matroid j sees sides j, j + k, j + 2k, ...; element (e, s) touches
    // exactly one of them, side s*k + j.
    let matroids = (0..k)
        .map(|j| {
            Constraint::Partition(PartitionMatroid::by_key(n, |u| {
                let (e, split) = (u / splits, u % splits);
                let side = split * k + j;
                if side < r {
                    (side, edges[e][side], false)
                } else {
                    (side, e, true)
                }
            }))
        })
        .collect();

    let mut meta = Meta::new("kdm")
        .param("k", k)
        .param("d", d)
        .param("sides", r)
        .param("edges", edges.len());
    if r < width {
        meta = meta.note(format!(
            "padded {r} sides to {width} with one private vertex per edge"
        ));
    }
    Instance::from_hypergraph(f, Constraint::Intersection(matroids), meta)
}

/// Combinatorial auction: element `b·m + i` gives item `i` to bidder `b`,
/// and each item goes to at most one bidder.
pub fn welfare_to_instance(bidders: &[HypergraphFunction]) -> Result<Instance> {
    if bidders.is_empty() {
        return Err(Error::InvalidInstance("at least one bidder is required".into()));
    }
    let m = bidders[0].ground_size();
    let mut edges = Vec::new();
    for (b, u) in bidders.iter().enumerate() {
        if u.ground_size() != m {
            return Err(Error::InvalidInstance(format!(
                "bidder {b} values {} items, bidder 0 values {m}",
                u.ground_size()
            )));
        }
        validate_function(u).map_err(|e| match e {
            Error::NotMonotone { set, element } => Error::InvalidInstance(format!(
                "utility of bidder {b} is not monotone: adding item {element} to {set:?} loses value"
            )),
            other => other,
        })?;
        for e in u.edges() {
            edges.push(Hyperedge {
                members: e.members.iter().map(|i| b * m + i).collect(),
                weight: e.weight.clone(),
            });
        }
    }
    let n = bidders.len() * m;
    let f = HypergraphFunction::new(n, edges)?;
    let items = PartitionMatroid::by_key(n, |u| u % m);
    let meta = Meta::new("welfare")
        .param("bidders", bidders.len())
        .param("items", m);
    Instance::from_hypergraph(f, Constraint::Partition(items), meta)
}

/// Densest-subgraph style instance: one element per vertex, one unit
/// hyperedge per graph edge, and at most `⌊δ|V|⌋` vertices.
pub fn graph_to_uniform_instance(
    vertices: usize,
    edges: &[(Element, Element)],
    delta: &Value,
) -> Result<Instance> {
    if delta.is_negative() || *delta > value::one() {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in [0, 1], got {}",
            value::format(delta)
        )));
    }
    let mut seen = HashSet::new();
    let mut hyperedges = Vec::new();
    for &(a, b) in edges {
        if a == b {
            return Err(Error::InvalidInstance(format!("self-loop on vertex {a}")));
        }
        let members = ElementSet::from([a, b]);
        if !seen.insert(members.clone()) {
            return Err(Error::InvalidInstance(format!("edge {{{a}, {b}}} is repeated")));
        }
        hyperedges.push(Hyperedge {
            members,
            weight: value::one(),
        });
    }
    let f = HypergraphFunction::new(vertices, hyperedges)?;
    let scaled = delta * value::int(vertices as i64);
    let k = scaled.floor().to_integer().to_usize().expect("0 ≤ δ|V| ≤ |V|");
    let mut meta = Meta::new("graph-uniform")
        .param("vertices", vertices)
        .param("edges", edges.len())
        .param("delta", value::format(delta))
        .param("k", k);
    if !scaled.is_integer() {
        meta = meta.note(format!(
            "δ|V| = {} is not an integer; budget rounded down to {k}",
            value::format(&scaled)
        ));
    }
    Instance::from_hypergraph(f, Constraint::uniform(k), meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    #[test]
    fn single_edge_splits() {
        let inst = reduce_kdm(&[1, 1], &[vec![0, 0]], 1, 1).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.oracle.value(&ElementSet::from([0, 1])), int(1));
        assert_eq!(inst.oracle.value(&ElementSet::from([0])), int(0));
    }

    #[test]
    fn shared_splits_stay_distinct() {
        // both edges use vertex 0 on side 0: their first splits conflict
        let inst = reduce_kdm(&[1, 2], &[vec![0, 0], vec![0, 1]], 1, 1).unwrap();
        assert_eq!(inst.n(), 4);
        assert!(!inst.system.is_independent(&ElementSet::from([0, 2])));
        assert!(inst.system.is_independent(&ElementSet::from([0, 1, 3])));
        assert_eq!(inst.oracle.value(&ElementSet::from([0, 1, 3])), int(1));
    }

    #[test]
    fn kdm_padding_and_errors() {
        let inst = reduce_kdm(&[2, 2], &[vec![0, 1], vec![1, 0]], 1, 2).unwrap();
        assert_eq!(inst.n(), 6);
        assert_eq!(inst.meta.notes.len(), 1);
        // third splits sit on private padded vertices
        assert!(inst.system.is_independent(&ElementSet::from([2, 5])));
        assert!(reduce_kdm(&[1, 1, 1], &[vec![0, 0, 0]], 1, 1).is_err());
        assert!(reduce_kdm(&[1, 1], &[vec![0]], 1, 1).is_err());
        assert!(reduce_kdm(&[1, 1], &[vec![0, 1]], 1, 1).is_err());
        assert!(reduce_kdm(&[1, 1], &[vec![0, 0], vec![0, 0]], 1, 1).is_err());
    }

    #[test]
    fn welfare_layout() {
        let a = HypergraphFunction::linear(&[int(3), int(1)]);
        let b = HypergraphFunction::linear(&[int(2), int(2)]);
        let inst = welfare_to_instance(&[a, b]).unwrap();
        assert_eq!(inst.n(), 4);
        assert!(!inst.system.is_independent(&ElementSet::from([0, 2])));
        assert!(inst.system.is_independent(&ElementSet::from([0, 3])));
        assert_eq!(inst.oracle.value(&ElementSet::from([0, 3])), int(5));
        let bad = HypergraphFunction::from_edges(2, [(vec![0], int(1)), (vec![0, 1], int(-2))]).unwrap();
        assert!(welfare_to_instance(&[bad]).is_err());
        assert!(welfare_to_instance(&[]).is_err());
    }

    #[test]
    fn graph_budget_is_floored() {
        let tri = [(0, 1), (1, 2), (0, 2)];
        let inst = graph_to_uniform_instance(3, &tri, &ratio(2, 3)).unwrap();
        assert_eq!(inst.system.uniform_rank(), Some(2));
        assert!(inst.meta.notes.is_empty());
        let inst = graph_to_uniform_instance(3, &tri, &ratio(1, 2)).unwrap();
        assert_eq!(inst.system.uniform_rank(), Some(1));
        assert_eq!(inst.meta.notes.len(), 1);
        assert!(graph_to_uniform_instance(2, &[(1, 1)], &ratio(1, 2)).is_err());
        assert!(graph_to_uniform_instance(2, &[(0, 1), (1, 0)], &ratio(1, 2)).is_err());
        assert!(graph_to_uniform_instance(2, &[], &int(2)).is_err());
    }
}
