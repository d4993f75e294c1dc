//! Partitions of {0, …, n−1} in canonical form, with meet and join.

use serde::Serialize;
use thiserror::Error;

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so the result does not depend on call order.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("element {0} appears twice")]
    Repeated(usize),
    #[error("element {0} is in no block")]
    Missing(usize),
}

/// A partition stored as block labels, numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn diagonal(n: usize) -> Self {
        Partition { labels: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    /// Elements with equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match seen.iter().find(|(k, _)| *k == l) {
                Some(&(_, id)) => id,
                None => {
                    seen.push((l, seen.len()));
                    seen.len() - 1
                }
            };
            out.push(id);
        }
        Partition { labels: out }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(PartitionError::OutOfRange(x));
                }
                if labels[x] != usize::MAX {
                    return Err(PartitionError::Repeated(x));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionError::Missing(x));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Partition by the value of a function.
    pub fn kernel<K: PartialEq>(n: usize, f: impl Fn(usize) -> K) -> Self {
        let keys: Vec<K> = (0..n).map(f).collect();
        let labels: Vec<usize> = (0..n).map(|x| keys.iter().position(|k| *k == keys[x]).unwrap()).collect();
        Self::from_labels(&labels)
    }

    /// Size of the underlying set.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Blocks in label order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l].push(x);
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_blocks() == self.len()
    }

    /// Every block of self lies inside a block of other (self ⊆ other as relations).
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.len()).all(|x| (0..x).all(|y| !self.same(x, y) || other.same(x, y)))
    }

    /// Intersection of the relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        let labels: Vec<usize> = pairs.iter().map(|p| pairs.iter().position(|q| q == p).unwrap()).collect();
        Self::from_labels(&labels)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            for block in p.blocks() {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.into_partition()
    }

    /// Blocks rendered by element names, each block sorted by index.
    pub fn named_blocks(&self, name: impl Fn(usize) -> String) -> Vec<Vec<String>> {
        self.blocks().into_iter().map(|b| b.into_iter().map(&name).collect()).collect()
    }
}

/// Every partition of `items`, as lists of blocks, in restricted-growth order.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(items: &[usize], i: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            let mut blocks = vec![Vec::new(); max];
            for (k, &b) in rgs.iter().enumerate() {
                blocks[b].push(items[k]);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            go(items, i + 1, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, &mut Vec::new(), 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (0..7).map(|n| set_partitions(&(0..n).collect::<Vec<_>>()).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn blocks_round_trip() {
        let p = Partition::from_blocks(5, &[vec![3, 1], vec![0], vec![2, 4]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![0], vec![1, 3], vec![2, 4]]);
        assert_eq!(Partition::from_blocks(3, &[vec![0, 1]]), Err(PartitionError::Missing(2)));
        assert_eq!(Partition::from_blocks(2, &[vec![0, 1], vec![1]]), Err(PartitionError::Repeated(1)));
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..n, n).prop_map(|l| Partition::from_labels(&l))
    }

    proptest! {
        #[test]
        fn lattice_laws(a in arb_partition(7), b in arb_partition(7), c in arb_partition(7)) {
            prop_assert_eq!(a.meet(&a), a.clone());
            prop_assert_eq!(a.join(&a), a.clone());
            prop_assert_eq!(a.meet(&b), b.meet(&a));
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
            prop_assert_eq!(a.join(&a.meet(&b)), a.clone());
            prop_assert_eq!(a.meet(&b).meet(&c), a.meet(&b.meet(&c)));
            prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
            prop_assert!(a.meet(&b).refines(&a));
            prop_assert!(a.refines(&a.join(&b)));
            prop_assert_eq!(a.refines(&b), a.meet(&b) == a);
        }
    }
}
