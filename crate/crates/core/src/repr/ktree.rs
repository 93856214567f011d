//! The inverse-image tree of bridges.
//!
//! Roots are the sentinel-free bridge substrings with two or three runs.
//! The children of a node `w` are the bridges `z` with `z^(1) = w`, found by
//! widening every occurrence of `w` by one run on each side and grouping the
//! widened windows by `(left symbol, left exponent, right exponent, right
//! symbol)`. Windows live in the sentinel-extended run sequence, where index
//! 0 and `m + 1` are the sentinels.

use crate::rle::{RleString, Run};
use crate::symbol::Symbol;

/// The one-run extension of a bridge on both sides: `a α^i · u · β^j b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChildKey {
    pub left: Symbol,
    pub left_exponent: usize,
    pub right_exponent: usize,
    pub right: Symbol,
}

#[derive(Clone, Debug)]
pub struct KNode {
    /// `R(w)`.
    pub span: usize,
    /// Distance from the root.
    pub depth: usize,
    pub parent: Option<usize>,
    /// How this node extends its parent; `None` for roots.
    pub key: Option<ChildKey>,
    /// `#w` counted over windows of `$T$`.
    pub occ_count: usize,
    /// Start of one occurrence window.
    pub witness: usize,
    /// Every occurrence window start, when the tree keeps them.
    pub occurrences: Vec<usize>,
    pub has_sentinel: bool,
    /// Whether the children were computed.
    pub expanded: bool,
    pub children: Vec<usize>,
}

impl KNode {
    /// `|K(w)|`, defined for expanded nodes.
    pub fn k_size(&self) -> usize {
        self.children.len()
    }
}

#[derive(Clone, Debug)]
pub struct KTree {
    ext: Vec<Run>,
    nodes: Vec<KNode>,
    roots: Vec<usize>,
}

struct Pending {
    node: usize,
    occurrences: Vec<usize>,
}

impl KTree {
    /// Builds the tree, keeping every node's occurrence list.
    pub fn build(rle: &RleString) -> KTree {
        KTree::build_with(rle, true)
    }

    /// Roots and every sentinel-free node occurring at least twice are
    /// expanded. Nodes with a single child are walked through, since their
    /// descendants can still branch.
    pub fn build_with(rle: &RleString, keep_occurrences: bool) -> KTree {
        let ext = rle.extended().into_runs();
        let last = ext.len() - 1;
        let mut tree = KTree {
            ext,
            nodes: Vec::new(),
            roots: Vec::new(),
        };
        let mut stack: Vec<Pending> = Vec::new();

        for span in [2usize, 3] {
            if last < span {
                continue;
            }
            // sentinel-free windows s..s+span-1 with 1 <= s, s+span-1 <= m
            let mut starts: Vec<_> = (1..=last - span)
                .map(|s| (tree.root_key(s, span), s))
                .collect();
            starts.sort_unstable();
            for group in starts.chunk_by(|x, y| x.0 == y.0) {
                let occ: Vec<usize> = group.iter().map(|g| g.1).collect();
                let id = tree.push_node(span, 0, None, None, occ.clone(), false, keep_occurrences);
                tree.roots.push(id);
                stack.push(Pending {
                    node: id,
                    occurrences: occ,
                });
            }
        }
        // roots are visited in creation order
        stack.reverse();

        while let Some(Pending { node, occurrences }) = stack.pop() {
            let (span, depth) = (tree.nodes[node].span, tree.nodes[node].depth);
            let mut ext_occ: Vec<(ChildKey, usize)> = occurrences
                .iter()
                .map(|&s| (tree.child_key(s, span), s - 1))
                .collect();
            ext_occ.sort_unstable();
            tree.nodes[node].expanded = true;
            let mut fresh = Vec::new();
            for group in ext_occ.chunk_by(|x, y| x.0 == y.0) {
                let key = group[0].0;
                let occ: Vec<usize> = group.iter().map(|g| g.1).collect();
                let has_sentinel = key.left.is_sentinel() || key.right.is_sentinel();
                let child = tree.push_node(
                    span + 2,
                    depth + 1,
                    Some(node),
                    Some(key),
                    occ.clone(),
                    has_sentinel,
                    keep_occurrences,
                );
                tree.nodes[node].children.push(child);
                if !has_sentinel && occ.len() >= 2 {
                    fresh.push(Pending {
                        node: child,
                        occurrences: occ,
                    });
                }
            }
            fresh.reverse();
            stack.extend(fresh);
        }
        tree
    }

    fn root_key(&self, s: usize, span: usize) -> (Symbol, Symbol, usize, Symbol) {
        let e = &self.ext;
        if span == 2 {
            (e[s].symbol, e[s + 1].symbol, 0, Symbol::SENTINEL)
        } else {
            (
                e[s].symbol,
                e[s + 1].symbol,
                e[s + 1].exponent,
                e[s + 2].symbol,
            )
        }
    }

    fn child_key(&self, s: usize, span: usize) -> ChildKey {
        let e = &self.ext;
        ChildKey {
            left: e[s - 1].symbol,
            left_exponent: e[s].exponent,
            right_exponent: e[s + span - 1].exponent,
            right: e[s + span].symbol,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push_node(
        &mut self,
        span: usize,
        depth: usize,
        parent: Option<usize>,
        key: Option<ChildKey>,
        occurrences: Vec<usize>,
        has_sentinel: bool,
        keep: bool,
    ) -> usize {
        let id = self.nodes.len();
        self.nodes.push(KNode {
            span,
            depth,
            parent,
            key,
            occ_count: occurrences.len(),
            witness: occurrences[0],
            occurrences: if keep { occurrences } else { Vec::new() },
            has_sentinel,
            expanded: false,
            children: Vec::new(),
        });
        id
    }

    pub fn nodes(&self) -> &[KNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &KNode {
        &self.nodes[id]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// The sentinel-extended runs the windows index into.
    pub fn extended_runs(&self) -> &[Run] {
        &self.ext
    }

    /// The bridge a node stands for, read from its witness window.
    pub fn bridge(&self, id: usize) -> RleString {
        let n = &self.nodes[id];
        let mut runs = self.ext[n.witness..n.witness + n.span].to_vec();
        runs[0].exponent = 1;
        runs[n.span - 1].exponent = 1;
        RleString::from_runs(runs).expect("windows are canonical")
    }

    /// Roots, plus expanded nodes with at least two children.
    pub fn w_set(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| {
                let n = &self.nodes[i];
                n.parent.is_none() || (n.expanded && n.children.len() >= 2)
            })
            .collect()
    }

    /// `X`: total `|K(w)|` over `w` in the `W` set.
    pub fn x_value(&self) -> usize {
        self.w_set()
            .iter()
            .map(|&i| self.nodes[i].children.len())
            .sum()
    }

    /// Number of non-root descendants of `root` with at least two children.
    pub fn branching_descendants(&self, root: usize) -> usize {
        let mut count = 0;
        let mut stack: Vec<usize> = self.nodes[root].children.clone();
        while let Some(id) = stack.pop() {
            let n = &self.nodes[id];
            if n.children.len() >= 2 {
                count += 1;
            }
            stack.extend_from_slice(&n.children);
        }
        count
    }
}
