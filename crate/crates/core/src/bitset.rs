//! Fixed-size bit sets for adjacency rows.

use std::collections::BTreeSet;

use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// A finished clique, or the extensions of an unfinished one.
type Step = (Option<Vec<usize>>, Vec<Vec<usize>>);

/// Grows seed cliques by one common neighbour at a time, closing each step with
/// `close`, until no extension exists. Returns the distinct maximal ones, sorted.
pub(crate) fn grow_maximal_cliques<F>(seeds: Vec<Vec<usize>>, adj: &[BitSet], close: F) -> Vec<Vec<usize>>
where
    F: Fn(Vec<usize>) -> Vec<usize> + Sync,
{
    let mut frontier: Vec<Vec<usize>> = seeds;
    let mut maximal = BTreeSet::new();
    while !frontier.is_empty() {
        let steps: Vec<Step> = frontier
            .par_iter()
            .map(|s| {
                let mut common = BitSet::full(adj.len());
                for &x in s {
                    common.intersect_with(&adj[x]);
                }
                for &x in s {
                    common.remove(x);
                }
                let mut covered = BitSet::new(adj.len());
                let mut grown = Vec::new();
                for x in common.iter() {
                    if covered.contains(x) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.push(x);
                    let t = close(t);
                    if t.iter().all(|&a| t.iter().all(|&b| adj[a].contains(b))) {
                        t.iter().for_each(|&y| covered.insert(y));
                        grown.push(t);
                    }
                }
                if grown.is_empty() {
                    (Some(s.clone()), grown)
                } else {
                    (None, grown)
                }
            })
            .collect();
        let mut next = BTreeSet::new();
        for (m, g) in steps {
            maximal.extend(m);
            next.extend(g);
        }
        frontier = next.into_iter().collect();
    }
    maximal.into_iter().collect()
}
