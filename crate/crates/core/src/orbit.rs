//! Orbits of a quandle: classes of the equivalence generated by `x ▷ y ∼ y`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quandle::FiniteQuandle;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
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

    /// Returns `true` if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Classes sorted internally and ordered by least element.
    pub classes: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class index of every element.
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, class) in self.classes.iter().enumerate() {
            for &x in class {
                out[x] = i;
            }
        }
        out
    }
}

pub fn orbits(q: &FiniteQuandle) -> Result<OrbitPartition> {
    q.require_rack()?;
    let n = q.len();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in 0..n {
            uf.union(y, q.op(x, y));
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = uf.find(x);
        by_root[r].push(x);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    classes.sort_by_key(|c| c[0]);
    Ok(OrbitPartition { classes })
}
