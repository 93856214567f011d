//! Type-4 MAWs through the bipartite graphs `G_w`, one per branching node of
//! the inverse-image tree.

use crate::handle::MawHandle;
use crate::symbol::Symbol;

use super::ktree::KTree;
use super::{EnumStats, MawSink};

/// Left part `(a, i)` of bridges `a α^i u β^j b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftVertex {
    pub symbol: Symbol,
    pub exponent: usize,
    /// Largest right exponent among this vertex's edges.
    pub max_right: usize,
}

/// Right part `(j, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightVertex {
    pub exponent: usize,
    pub symbol: Symbol,
    /// Largest left exponent among this vertex's edges.
    pub max_left: usize,
    /// Index in `rle(T)` of the `α`-run of one incident bridge.
    pub witness_run: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MawGraph {
    /// `R(w)` of the interior bridge.
    pub span: usize,
    /// Sorted by `(exponent, symbol)`.
    pub left: Vec<LeftVertex>,
    /// Sorted by `(exponent, symbol)`.
    pub right: Vec<RightVertex>,
    /// Edges grouped by left vertex: `edge_targets[edge_offsets[k]..edge_offsets[k+1]]`.
    pub edge_offsets: Vec<usize>,
    pub edge_targets: Vec<usize>,
}

impl MawGraph {
    /// The graph of node `id`, which must be expanded.
    pub fn from_node(tree: &KTree, id: usize) -> MawGraph {
        let node = tree.node(id);
        debug_assert!(node.expanded);
        let children: Vec<_> = node
            .children
            .iter()
            .map(|&c| {
                let n = tree.node(c);
                (n.key.expect("children carry keys"), n.witness)
            })
            .collect();

        let mut left: Vec<(usize, Symbol)> = children
            .iter()
            .map(|(k, _)| (k.left_exponent, k.left))
            .collect();
        left.sort_unstable();
        left.dedup();
        let mut right: Vec<(usize, Symbol)> = children
            .iter()
            .map(|(k, _)| (k.right_exponent, k.right))
            .collect();
        right.sort_unstable();
        right.dedup();

        let mut lv: Vec<LeftVertex> = left
            .iter()
            .map(|&(exponent, symbol)| LeftVertex {
                symbol,
                exponent,
                max_right: 0,
            })
            .collect();
        let mut rv: Vec<RightVertex> = right
            .iter()
            .map(|&(exponent, symbol)| RightVertex {
                exponent,
                symbol,
                max_left: 0,
                witness_run: 0,
            })
            .collect();

        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(children.len());
        for &(k, window) in &children {
            let l = left.binary_search(&(k.left_exponent, k.left)).unwrap();
            let r = right.binary_search(&(k.right_exponent, k.right)).unwrap();
            lv[l].max_right = lv[l].max_right.max(k.right_exponent);
            if k.left_exponent >= rv[r].max_left {
                rv[r].max_left = k.left_exponent;
                // the window starts one run before α; that index is α's
                // position in rle(T)
                rv[r].witness_run = window;
            }
            edges.push((l, r));
        }
        edges.sort_unstable();
        let mut edge_offsets = vec![0usize; lv.len() + 1];
        for &(l, _) in &edges {
            edge_offsets[l + 1] += 1;
        }
        for k in 0..lv.len() {
            edge_offsets[k + 1] += edge_offsets[k];
        }
        MawGraph {
            span: node.span,
            left: lv,
            right: rv,
            edge_offsets,
            edge_targets: edges.into_iter().map(|(_, r)| r).collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_targets.len()
    }

    pub fn neighbors(&self, k: usize) -> &[usize] {
        &self.edge_targets[self.edge_offsets[k]..self.edge_offsets[k + 1]]
    }

    pub fn words(&self) -> usize {
        1 + 3 * self.left.len()
            + 4 * self.right.len()
            + self.edge_offsets.len()
            + self.edge_targets.len()
    }

    fn handle(&self, k: usize, r: usize) -> MawHandle {
        MawHandle::bridge(
            4,
            self.left[k].symbol,
            self.right[r].witness_run,
            self.span + 1,
            self.left[k].exponent,
        )
    }

    /// Runs the candidate-pruning scan and reports every MAW pair `(k, k')`.
    ///
    /// The right vertices still in play form a linked list in exponent order.
    /// For each left vertex the scan walks the list up to its largest right
    /// exponent; a vertex whose largest left exponent is already too small
    /// can never match a later left vertex and is unlinked.
    pub fn scan<F: FnMut(usize, usize)>(&self, mut report: F) -> EnumStats {
        let mut stats = EnumStats::default();
        let nr = self.right.len();
        let end = nr;
        let mut next = vec![end; nr + 1];
        let mut prev = vec![end; nr + 1];
        let mut head = end;
        for r in (0..nr).rev() {
            if self.right[r].symbol.is_sentinel() {
                continue;
            }
            next[r] = head;
            if head != end {
                prev[head] = r;
            }
            head = r;
        }
        let mut mark = vec![usize::MAX; nr];

        for (k, lv) in self.left.iter().enumerate() {
            stats.ops += 1;
            if lv.symbol.is_sentinel() {
                continue;
            }
            for &r in self.neighbors(k) {
                stats.ops += 1;
                mark[r] = k;
            }
            let mut cur = head;
            while cur != end && self.right[cur].exponent <= lv.max_right {
                stats.ops += 1;
                let following = next[cur];
                if mark[cur] != k {
                    if self.right[cur].max_left >= lv.exponent {
                        report(k, cur);
                        stats.emitted += 1;
                    } else {
                        // unlink
                        let p = prev[cur];
                        if p == end {
                            head = following;
                        } else {
                            next[p] = following;
                        }
                        if following != end {
                            prev[following] = p;
                        }
                    }
                }
                cur = following;
            }
        }
        stats
    }

    pub fn enumerate<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        self.scan(|k, r| sink.emit(self.handle(k, r)))
    }

    /// The MAW pairs as `(k, k')` in scan order.
    pub fn maw_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.scan(|k, r| out.push((k, r)));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D4Rep {
    Explicit(Vec<MawHandle>),
    Graphs(Vec<MawGraph>),
}

/// One graph per node of the `W` set with at least two children.
pub fn build_graphs(tree: &KTree) -> Vec<MawGraph> {
    tree.w_set()
        .into_iter()
        .filter(|&id| tree.node(id).children.len() >= 2)
        .map(|id| MawGraph::from_node(tree, id))
        .collect()
}
