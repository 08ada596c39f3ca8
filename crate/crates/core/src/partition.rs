//! Disjoint-set forest and the canonical partitions built from it.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
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

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        Partition::from_blocks(by_root.into_iter().filter(|b| !b.is_empty()).collect())
    }
}

/// A partition of `0..n` with every block sorted and blocks ordered by
/// their least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
            b.dedup();
        }
        blocks.sort();
        Self { blocks }
    }

    /// Connected components of the graph on `0..n` with an edge wherever `adjacent(i, j)`.
    pub fn components(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && adjacent(i, j) {
                    uf.union(i, j);
                }
            }
        }
        uf.into_partition()
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Number of elements covered.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            coarser
                .block_of(b[0])
                .is_some_and(|c| b.iter().all(|x| coarser.blocks[c].binary_search(x).is_ok()))
        })
    }

    /// Blocks rendered with labels, e.g. `{1,ψ} {σ}`.
    pub fn render(&self, labels: &[String]) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let inner: Vec<&str> = b.iter().map(|&i| labels[i].as_str()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}
