//! Union-find and step-graph connectivity over integer point sets.

use std::collections::BTreeMap;

use crate::ratmath::{vec_add, IntVector};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns `false` if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Result of a step-graph connectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityCheck {
    pub connected: bool,
    /// Connected components, each sorted, ordered by their least point.
    pub components: Vec<Vec<IntVector>>,
}

/// Tests whether `points` is connected in the graph that joins `p` and
/// `p + b` for each step `b`. Steps act in both directions because the
/// reverse edge is found from the other endpoint.
///
/// The empty set and singletons count as connected.
pub fn is_b_connected(points: &[IntVector], steps: &[IntVector]) -> ConnectivityCheck {
    let index: BTreeMap<&IntVector, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::new(points.len());
    for (i, p) in points.iter().enumerate() {
        for b in steps {
            let q = vec_add(p, b);
            if let Some(&j) = index.get(&q) {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<IntVector>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(p.clone());
    }
    let mut components: Vec<Vec<IntVector>> = by_root.into_values().collect();
    for c in &mut components {
        c.sort();
    }
    components.sort();
    ConnectivityCheck {
        connected: components.len() <= 1,
        components,
    }
}
