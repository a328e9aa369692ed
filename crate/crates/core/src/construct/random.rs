use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, Meta};
use crate::error::{Error, Result};
use crate::function::{Hyperedge, HypergraphFunction};
use crate::set::ElementSet;
use crate::system::{Constraint, PartitionMatroid};
use crate::value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum RandomConstraint {
    Uniform {
        k: usize,
    },
    /// Elements assigned to `parts` random parts of capacity one.
    Partition {
        parts: usize,
    },
    /// Two independent random partitions.
    Intersection {
        parts: usize,
    },
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize, parts: usize) -> PartitionMatroid {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..parts)).collect();
    PartitionMatroid::by_key(n, |u| labels[u])
}

fn random_weight(rng: &mut ChaCha8Rng) -> value::Value {
    value::ratio(rng.gen_range(1..=12), rng.gen_range(1..=4))
}

/// Random monotone hypergraph instance in which every element shares
/// hyperedges with at most `d` others, so the superset oracles answer
/// sets of size at most `d`.
///
/// All weights are positive. Deterministic in `seed`.
pub fn random_instance(n: usize, d: usize, constraint: RandomConstraint, seed: u64) -> Result<Instance> {
    if n > 0 && d >= n {
        return Err(Error::InvalidParameter(format!(
            "degree bound {d} needs at least {} elements",
            d + 1
        )));
    }
    match constraint {
        RandomConstraint::Uniform { k } if k > n => {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")))
        }
        RandomConstraint::Partition { parts } | RandomConstraint::Intersection { parts }
            if parts == 0 && n > 0 =>
        {
            return Err(Error::InvalidParameter(
                "partition needs at least one part".into(),
            ))
        }
        _ => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        // leave some elements worthless on their own
        if rng.gen_bool(0.8) {
            edges.push(Hyperedge {
                members: ElementSet::singleton(u),
                weight: random_weight(&mut rng),
            });
        }
    }

    let mut partners = vec![ElementSet::with_capacity(n); n];
    let mut seen = HashSet::new();
    if d > 0 {
        for _ in 0..2 * n {
            let size = rng.gen_range(2..=d + 1);
            let members: ElementSet = sample(&mut rng, n, size).into_iter().collect();
            let fits = members
                .iter()
                .all(|u| partners[u].union(&members).without(u).len() <= d);
            if !fits || !seen.insert(members.clone()) {
                continue;
            }
            for u in members.iter() {
                partners[u].union_with(&members.without(u));
            }
            edges.push(Hyperedge {
                members,
                weight: random_weight(&mut rng),
            });
        }
    }
    let f = HypergraphFunction::new(n, edges)?;

    let built = match constraint {
        RandomConstraint::Uniform { k } => Constraint::uniform(k),
        RandomConstraint::Partition { parts } => Constraint::Partition(random_partition(&mut rng, n, parts)),
        RandomConstraint::Intersection { parts } => Constraint::Intersection(vec![
            Constraint::Partition(random_partition(&mut rng, n, parts)),
            Constraint::Partition(random_partition(&mut rng, n, parts)),
        ]),
    };
    let mut meta = Meta::new("random").param("n", n).param("d", d);
    meta.params.insert(
        "constraint".into(),
        serde_json::to_value(constraint).expect("constraint spec serializes"),
    );
    meta.seed = Some(seed);
    Instance::from_hypergraph(f, built, meta)
}

/// An `r`-dimensional matching input: side sizes and one vertex per side
/// for each edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingInput {
    pub side_sizes: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
}

/// Up to `edges` distinct random edges over `r` sides of `side_size`
/// vertices each.
pub fn random_matching(r: usize, side_size: usize, edges: usize, seed: u64) -> Result<MatchingInput> {
    if r == 0 || side_size == 0 {
        return Err(Error::InvalidParameter(
            "sides and side size must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..4 * edges {
        if out.len() == edges {
            break;
        }
        let e: Vec<usize> = (0..r).map(|_| rng.gen_range(0..side_size)).collect();
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    Ok(MatchingInput {
        side_sizes: vec![side_size; r],
        edges: out,
    })
}

/// `G(n, p)` edge list with `p = num / den`.
pub fn random_graph(vertices: usize, num: u32, den: u32, seed: u64) -> Result<Vec<(usize, usize)>> {
    if den == 0 || num > den {
        return Err(Error::InvalidParameter(format!(
            "edge probability {num}/{den} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..vertices {
        for b in a + 1..vertices {
            if rng.gen_ratio(num, den) {
                edges.push((a, b));
            }
        }
    }
    Ok(edges)
}

/// Monotone bidder utilities over `items` items: positive item values plus
/// a few positive pair synergies.
pub fn random_bidders(bidders: usize, items: usize, seed: u64) -> Result<Vec<HypergraphFunction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..bidders)
        .map(|_| {
            let mut edges: Vec<Hyperedge> = (0..items)
                .map(|i| Hyperedge {
                    members: ElementSet::singleton(i),
                    weight: random_weight(&mut rng),
                })
                .collect();
            let mut seen = HashSet::new();
            if items >= 2 {
                for _ in 0..items / 2 {
                    let pair: ElementSet = sample(&mut rng, items, 2).into_iter().collect();
                    if seen.insert(pair.clone()) {
                        edges.push(Hyperedge {
                            members: pair,
                            weight: random_weight(&mut rng),
                        });
                    }
                }
            }
            HypergraphFunction::new(items, edges)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bound_holds() {
        for seed in 0..20 {
            let inst = random_instance(10, 2, RandomConstraint::Uniform { k: 4 }, seed).unwrap();
            assert!(inst.oracle.max_dep() <= 2);
        }
    }

    #[test]
    fn zero_degree_is_linear() {
        let inst = random_instance(8, 0, RandomConstraint::Partition { parts: 3 }, 7).unwrap();
        let crate::construct::FunctionRecord::Hypergraph(f) = &inst.record else {
            panic!("hypergraph expected")
        };
        assert!(f.edges().iter().all(|e| e.members.len() == 1));
    }

    #[test]
    fn seeded() {
        let a = random_instance(9, 3, RandomConstraint::Intersection { parts: 4 }, 11).unwrap();
        let b = random_instance(9, 3, RandomConstraint::Intersection { parts: 4 }, 11).unwrap();
        let c = random_instance(9, 3, RandomConstraint::Intersection { parts: 4 }, 12).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn infeasible_parameters() {
        assert!(random_instance(3, 3, RandomConstraint::Uniform { k: 1 }, 0).is_err());
        assert!(random_instance(3, 1, RandomConstraint::Uniform { k: 4 }, 0).is_err());
        assert!(random_instance(3, 1, RandomConstraint::Partition { parts: 0 }, 0).is_err());
        assert!(random_instance(0, 0, RandomConstraint::Uniform { k: 0 }, 0).is_ok());
    }

    #[test]
    fn auxiliary_generators() {
        let m = random_matching(3, 2, 5, 1).unwrap();
        assert_eq!(m.edges.len(), 5);
        assert!(m.edges.iter().all(|e| e.len() == 3 && e.iter().all(|&v| v < 2)));
        assert_eq!(random_matching(3, 2, 5, 1).unwrap(), m);
        let g = random_graph(6, 1, 1, 0).unwrap();
        assert_eq!(g.len(), 15);
        assert!(random_graph(6, 0, 1, 0).unwrap().is_empty());
        assert!(random_graph(3, 2, 1, 0).is_err());
        let b = random_bidders(2, 3, 4).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b
            .iter()
            .all(|f| f.edges().iter().all(|e| e.weight > value::zero())));
    }
}
