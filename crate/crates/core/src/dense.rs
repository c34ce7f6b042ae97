//! Packed adjacency matrices used by the search and closure algorithms.
//!
//! Rows are bitsets over vertex indices; the diagonal is kept out of the
//! matrix (it is implicit) except where an algorithm temporarily needs it.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Square boolean matrix with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMat {
    pub n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMat {
    pub fn zero(n: usize) -> BitMat {
        let words = n.div_ceil(64).max(1);
        BitMat {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_graph(g: &Graph) -> BitMat {
        let mut m = BitMat::zero(g.vertex_count());
        for (a, b) in g.arrows() {
            let i = g.vertex_index(a).expect("endpoint is a vertex");
            let j = g.vertex_index(b).expect("endpoint is a vertex");
            m.set(i, j);
        }
        m
    }

    pub fn to_graph(&self, labels: &[String]) -> Graph {
        debug_assert_eq!(labels.len(), self.n);
        let mut arrows = BTreeSet::new();
        for i in 0..self.n {
            for j in self.row_indices(i) {
                if i != j {
                    arrows.insert((labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut vs: Vec<String> = labels.to_vec();
        vs.sort();
        Graph::from_parts(vs, arrows)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.words;
        (0..words).flat_map(move |w| {
            let mut bits = self.rows[i * words + w];
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn transpose(&self) -> BitMat {
        let mut t = BitMat::zero(self.n);
        for i in 0..self.n {
            for j in self.row_indices(i) {
                t.set(j, i);
            }
        }
        t
    }

    pub fn union(&self, other: &BitMat) -> BitMat {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(other.rows.iter()) {
            *a |= *b;
        }
        out
    }

    pub fn intersect(&self, other: &BitMat) -> BitMat {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(other.rows.iter()) {
            *a &= *b;
        }
        out
    }

    pub fn with_diagonal(&self) -> BitMat {
        let mut out = self.clone();
        for i in 0..out.n {
            out.set(i, i);
        }
        out
    }

    pub fn without_diagonal(&self) -> BitMat {
        let mut out = self.clone();
        for i in 0..out.n {
            out.rows[i * out.words + i / 64] &= !(1u64 << (i % 64));
        }
        out
    }

    pub fn full_off_diagonal(n: usize) -> BitMat {
        let mut out = BitMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.set(i, j);
                }
            }
        }
        out
    }

    /// Boolean matrix product: `out[i][j]` iff some `k` has `self[i][k]` and
    /// `other[k][j]`.
    pub fn multiply(&self, other: &BitMat) -> BitMat {
        debug_assert_eq!(self.n, other.n);
        let mut out = BitMat::zero(self.n);
        for i in 0..self.n {
            let mut acc = vec![0u64; self.words];
            for k in self.row_indices(i) {
                for (a, b) in acc.iter_mut().zip(other.row(k)) {
                    *a |= *b;
                }
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        out
    }

    /// Reachability closure of the reflexive matrix, computed by iterated
    /// squaring.
    pub fn reflexive_transitive_closure(&self) -> BitMat {
        let mut cur = self.with_diagonal();
        loop {
            let next = cur.multiply(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Component id per vertex under symmetrized connectivity, via
    /// union-find.
    pub fn weak_components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for i in 0..self.n {
            for j in self.row_indices(i) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|i| find(&mut parent, i)).collect()
    }

    /// Strongly connected component id per vertex (Kosaraju).
    pub fn strong_components(&self) -> Vec<usize> {
        let n = self.n;
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![(start, self.row_indices(start).collect::<Vec<_>>(), 0usize)];
            seen[start] = true;
            while let Some((v, succ, idx)) = stack.last_mut() {
                if *idx < succ.len() {
                    let u = succ[*idx];
                    *idx += 1;
                    if !seen[u] {
                        seen[u] = true;
                        let next = self.row_indices(u).collect::<Vec<_>>();
                        stack.push((u, next, 0));
                    }
                } else {
                    order.push(*v);
                    stack.pop();
                }
            }
        }
        let rev = self.transpose();
        let mut comp = vec![usize::MAX; n];
        let mut current = 0;
        for &start in order.iter().rev() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = current;
            while let Some(v) = stack.pop() {
                for u in rev.row_indices(v) {
                    if comp[u] == usize::MAX {
                        comp[u] = current;
                        stack.push(u);
                    }
                }
            }
            current += 1;
        }
        comp
    }
}
