//! Worst-case instances for the two extendible-system greedy algorithms.
//!
//! Both are intersections of `k` unit-capacity partition matroids over
//! labelled points. The greedy algorithm is lured by an `ε` bonus into a
//! first pick that blocks everything else, while a spread-out set of
//! `k(d + 1) (+ 1)` points is independent and worth one per point.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::{validate_function, FunctionRecord, Instance, Meta};
use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::oracle::{DependencySource, OracleBundle};
use crate::set::{Element, ElementSet};
use crate::system::{Constraint, IndependenceSystem, PartitionMatroid};
use crate::value::{self, Value};

/// Largest coordinate grid the generators will enumerate.
const GRID_LIMIT: usize = 1 << 22;

/// A construction together with the sets its analysis is about.
#[derive(Debug)]
pub struct TightInstance {
    pub instance: Instance,
    /// What the greedy algorithm takes in its first iteration.
    pub first_pick: ElementSet,
    /// Value the greedy algorithm ends with: `1 + ε`.
    pub expected_value: Value,
    /// A large independent set.
    pub optimum: ElementSet,
    pub optimum_value: Value,
}

fn check_params(k: usize, eps: &Value) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {}",
            value::format(eps)
        )));
    }
    Ok(())
}

fn grid_size(side: usize, dims: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..dims {
        total = total
            .checked_mul(side)
            .filter(|&t| t <= GRID_LIMIT)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("{side}^{dims} grid points exceed {GRID_LIMIT}"))
            })?;
    }
    Ok(total)
}

/// All points of `{0..side-1}^dims` in lexicographic order.
fn grid(side: usize, dims: usize) -> Result<impl Iterator<Item = Vec<usize>>> {
    let total = grid_size(side, dims)?;
    Ok((0..total).map(move |mut code| {
        let mut p = vec![0; dims];
        for slot in p.iter_mut().rev() {
            *slot = code % side;
            code /= side;
        }
        p
    }))
}

fn index_of(points: &[Vec<usize>]) -> HashMap<Vec<usize>, Element> {
    points.iter().cloned().enumerate().map(|(u, p)| (p, u)).collect()
}

/// Number of distinct last coordinates present, plus `ε` once every
/// `(x, .., x, 0)` with `x ≤ d` is present.
#[derive(Clone)]
pub struct TightSupermodularFunction {
    k: usize,
    d: usize,
    eps: Value,
    points: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, Element>,
    bump: ElementSet,
}

impl TightSupermodularFunction {
    fn new(k: usize, d: usize, eps: Value) -> Result<Self> {
        let side = (d + 1) * (k + 1);
        let points: Vec<Vec<usize>> = grid(side, k + 1)?
            .filter(|p| p.iter().any(|&x| x <= d))
            .filter(|p| p[k] == 0 || p[k] > d)
            .collect();
        let index = index_of(&points);
        let bump = (0..=d)
            .map(|x| {
                let mut p = vec![x; k + 1];
                p[k] = 0;
                index[&p]
            })
            .collect();
        Ok(Self {
            k,
            d,
            eps,
            points,
            index,
            bump,
        })
    }

    /// Coordinates `(x_1, .., x_{k+1})` of an element.
    pub fn point(&self, u: Element) -> &[usize] {
        &self.points[u]
    }

    pub fn id_of(&self, point: &[usize]) -> Option<Element> {
        self.index.get(point).copied()
    }

    fn side(&self) -> usize {
        (self.d + 1) * (self.k + 1)
    }

    fn height(&self, u: Element) -> usize {
        self.points[u][self.k]
    }
}

impl fmt::Debug for TightSupermodularFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TightSupermodularFunction(k = {}, d = {}, eps = {}, n = {})",
            self.k,
            self.d,
            self.eps,
            self.points.len()
        )
    }
}

impl SetFunction for TightSupermodularFunction {
    fn ground_size(&self) -> usize {
        self.points.len()
    }

    fn eval(&self, set: &ElementSet) -> Value {
        let mut hit = vec![false; self.side()];
        let mut rows = 0i64;
        for u in set.iter() {
            let h = self.height(u);
            if !hit[h] {
                hit[h] = true;
                rows += 1;
            }
        }
        let mut v = value::int(rows);
        if self.bump.is_subset(set) {
            v += &self.eps;
        }
        v
    }
}

/// Builds the supermodular-degree construction for `(k, d, ε)`.
///
/// Elements are the points `x ∈ {0..m-1}^{k+1}`, `m = (d+1)(k+1)`, with
/// some coordinate at most `d` and last coordinate `0` or above `d`, in
/// lexicographic order. Matroid `i` allows one element per value of `x_i`.
pub fn build_tight_supermodular(k: usize, d: usize, eps: Value) -> Result<TightInstance> {
    check_params(k, &eps)?;
    let f = TightSupermodularFunction::new(k, d, eps.clone())?;
    let n = f.points.len();

    let matroids = (0..k)
        .map(|i| Constraint::Partition(PartitionMatroid::by_key(n, |u| f.points[u][i])))
        .collect();
    let system = IndependenceSystem::new(n, Constraint::Intersection(matroids))?;

    let mut dep = vec![ElementSet::with_capacity(n); n];
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u && f.height(v) == f.height(u)) {
            dep[u].insert(v);
        }
    }
    let sdep = (0..n)
        .map(|u| {
            if f.bump.contains(u) {
                f.bump.without(u)
            } else {
                ElementSet::with_capacity(n)
            }
        })
        .collect();

    let side = f.side();
    let optimum = (0..=k * (d + 1))
        .map(|j| {
            let p: Vec<usize> = (1..=k + 1).map(|i| (i * (d + 1) + side - j) % side).collect();
            f.index[&p]
        })
        .collect();

    validate_function(&f)?;
    let first_pick = f.bump.clone();
    let f = Arc::new(f);
    let oracle = OracleBundle::new(f, dep, sdep, DependencySource::Certified)?;
    let meta = Meta::new("tight-supermodular")
        .param("k", k)
        .param("d", d)
        .param("eps", value::format(&eps));
    Ok(TightInstance {
        instance: Instance {
            record: FunctionRecord::TightSupermodular {
                k,
                d,
                eps: eps.clone(),
            },
            oracle,
            system,
            meta,
        },
        first_pick,
        expected_value: value::one() + &eps,
        optimum,
        optimum_value: value::int((k * (d + 1) + 1) as i64),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DependencyLabel {
    /// A point `x ∈ {0..k(d+1)-1}^k`.
    Point(Vec<usize>),
    /// The extra element attached to coordinate value `x`.
    Extra(usize),
}

/// Number of point elements present, plus `ε` when the all-zero point and
/// the extras `1..=d` are all present.
#[derive(Clone)]
pub struct TightDependencyFunction {
    k: usize,
    d: usize,
    eps: Value,
    points: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, Element>,
    bump: ElementSet,
}

impl TightDependencyFunction {
    fn new(k: usize, d: usize, eps: Value) -> Result<Self> {
        let side = k * (d + 1);
        let points: Vec<Vec<usize>> = grid(side, k)?.filter(|p| p.iter().any(|&x| x <= d)).collect();
        let index = index_of(&points);
        let hat = index[&vec![0; k]];
        let p = points.len();
        let bump = std::iter::once(hat).chain((1..=d).map(|x| p + x)).collect();
        Ok(Self {
            k,
            d,
            eps,
            points,
            index,
            bump,
        })
    }

    pub fn label(&self, u: Element) -> DependencyLabel {
        match self.points.get(u) {
            Some(p) => DependencyLabel::Point(p.clone()),
            None => DependencyLabel::Extra(u - self.points.len()),
        }
    }

    pub fn id_of(&self, label: &DependencyLabel) -> Option<Element> {
        match label {
            DependencyLabel::Point(p) => self.index.get(p).copied(),
            DependencyLabel::Extra(x) if *x < self.side() => Some(self.points.len() + x),
            DependencyLabel::Extra(_) => None,
        }
    }

    fn side(&self) -> usize {
        self.k * (self.d + 1)
    }

    fn hat(&self) -> Element {
        self.index[&vec![0; self.k]]
    }
}

impl fmt::Debug for TightDependencyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TightDependencyFunction(k = {}, d = {}, eps = {}, n = {})",
            self.k,
            self.d,
            self.eps,
            self.ground_size()
        )
    }
}

impl SetFunction for TightDependencyFunction {
    fn ground_size(&self) -> usize {
        self.points.len() + self.side()
    }

    fn eval(&self, set: &ElementSet) -> Value {
        let p = self.points.len();
        let count = set.iter().take_while(|&u| u < p).count();
        let mut v = value::int(count as i64);
        if self.bump.is_subset(set) {
            v += &self.eps;
        }
        v
    }
}

/// Builds the dependency-degree construction for `(k, d, ε)`.
///
/// Elements are the points `x ∈ {0..k(d+1)-1}^k` with some coordinate at
/// most `d` (lexicographic), followed by one extra element per value
/// `0..k(d+1)-1`. Matroid `i` allows one element among the points with
/// `x_i = x` and extra `x`, for each `x`.
pub fn build_tight_dependency(k: usize, d: usize, eps: Value) -> Result<TightInstance> {
    check_params(k, &eps)?;
    let f = TightDependencyFunction::new(k, d, eps.clone())?;
    let p = f.points.len();
    let n = f.ground_size();

    let matroids = (0..k)
        .map(|i| {
            Constraint::Partition(PartitionMatroid::by_key(n, |u| {
                if u < p {
                    f.points[u][i]
                } else {
                    u - p
                }
            }))
        })
        .collect();
    let system = IndependenceSystem::new(n, Constraint::Intersection(matroids))?;

    let dep: Vec<ElementSet> = (0..n)
        .map(|u| {
            if f.bump.contains(u) {
                f.bump.without(u)
            } else {
                ElementSet::with_capacity(n)
            }
        })
        .collect();

    let side = f.side();
    let optimum = (1..=side)
        .map(|j| {
            let q: Vec<usize> = (1..=k).map(|i| (i * (d + 1) + side - j) % side).collect();
            f.index[&q]
        })
        .collect();

    validate_function(&f)?;
    let first_pick = f.bump.clone();
    debug_assert!(first_pick.contains(f.hat()));
    let f = Arc::new(f);
    let oracle = OracleBundle::new(f, dep.clone(), dep, DependencySource::Certified)?;
    let meta = Meta::new("tight-dependency")
        .param("k", k)
        .param("d", d)
        .param("eps", value::format(&eps));
    Ok(TightInstance {
        instance: Instance {
            record: FunctionRecord::TightDependency {
                k,
                d,
                eps: eps.clone(),
            },
            oracle,
            system,
            meta,
        },
        first_pick,
        expected_value: value::one() + &eps,
        optimum,
        optimum_value: value::int((k * (d + 1)) as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::ExactDegrees;
    use crate::value::ratio;

    // closed form for the number of valid points
    fn supermodular_count(k: usize, d: usize) -> usize {
        let m = (d + 1) * (k + 1);
        let pow = |b: usize, e: usize| b.pow(e as u32);
        pow(m, k) + (m - d - 1) * (pow(m, k) - pow(m - d - 1, k))
    }

    #[test]
    fn supermodular_sizes() {
        for (k, d, n) in [(1, 2, 15), (1, 1, 8), (2, 1, 116), (1, 0, 3)] {
            let t = build_tight_supermodular(k, d, ratio(1, 10)).unwrap();
            assert_eq!(t.instance.n(), n, "({k},{d})");
            assert_eq!(supermodular_count(k, d), n);
        }
    }

    #[test]
    fn supermodular_optimum_points() {
        let t = build_tight_supermodular(1, 2, ratio(1, 10)).unwrap();
        let FunctionRecord::TightSupermodular { .. } = t.instance.record else {
            panic!("wrong record")
        };
        let f = TightSupermodularFunction::new(1, 2, ratio(1, 10)).unwrap();
        let pts: Vec<Vec<usize>> = t.optimum.iter().map(|u| f.point(u).to_vec()).collect();
        let mut expected = vec![vec![3, 0], vec![2, 5], vec![1, 4], vec![0, 3]];
        expected.sort();
        assert_eq!(pts, expected);
        assert_eq!(t.instance.oracle.value(&t.optimum), value::int(4));
        assert!(t.instance.system.is_independent(&t.optimum));
        assert_eq!(t.instance.oracle.value(&t.first_pick), ratio(11, 10));
    }

    #[test]
    fn supermodular_certified_sets_are_exact() {
        for (k, d) in [(1, 2), (1, 1), (1, 0)] {
            let t = build_tight_supermodular(k, d, ratio(1, 10)).unwrap();
            let o = &t.instance.oracle;
            let exact = ExactDegrees::compute(o.function().as_ref(), 16).unwrap();
            assert_eq!(exact.sdep, o.sdep_table(), "({k},{d})");
            assert_eq!(exact.dep, o.dep_table(), "({k},{d})");
            assert_eq!(exact.supermodular_degree(), d);
        }
    }

    #[test]
    fn dependency_sizes_and_labels() {
        let t = build_tight_dependency(1, 1, ratio(1, 10)).unwrap();
        assert_eq!(t.instance.n(), 4);
        let t = build_tight_dependency(2, 2, ratio(1, 10)).unwrap();
        assert_eq!(t.instance.n(), 33);
        let f = TightDependencyFunction::new(2, 2, ratio(1, 10)).unwrap();
        assert_eq!(f.label(0), DependencyLabel::Point(vec![0, 0]));
        assert_eq!(f.label(27), DependencyLabel::Extra(0));
        assert_eq!(f.id_of(&DependencyLabel::Extra(5)), Some(32));
        assert_eq!(f.id_of(&DependencyLabel::Point(vec![5, 5])), None);
    }

    #[test]
    fn dependency_certified_sets_are_exact() {
        for (k, d) in [(1, 1), (1, 2), (2, 1), (1, 0)] {
            let t = build_tight_dependency(k, d, ratio(1, 10)).unwrap();
            let o = &t.instance.oracle;
            let exact = ExactDegrees::compute(o.function().as_ref(), 16).unwrap();
            assert_eq!(exact.dep, o.dep_table(), "({k},{d})");
            assert_eq!(exact.sdep, o.sdep_table(), "({k},{d})");
            assert_eq!(exact.dependency_degree(), d);
        }
    }

    #[test]
    fn dependency_optimum_avoids_extras() {
        let t = build_tight_dependency(2, 2, ratio(1, 10)).unwrap();
        assert_eq!(t.optimum.len(), 6);
        assert!(t.optimum.iter().all(|u| u < 27));
        assert!(t.instance.system.is_independent(&t.optimum));
        assert_eq!(t.instance.oracle.value(&t.optimum), value::int(6));
    }

    #[test]
    fn parameter_errors() {
        assert!(build_tight_supermodular(0, 1, ratio(1, 10)).is_err());
        assert!(build_tight_supermodular(1, 1, value::zero()).is_err());
        assert!(build_tight_dependency(1, 1, ratio(-1, 10)).is_err());
        assert!(build_tight_supermodular(6, 6, ratio(1, 10)).is_err());
    }
}
