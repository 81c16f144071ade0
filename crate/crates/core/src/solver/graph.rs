use std::collections::VecDeque;

use super::certificate::{CycleStep, ParityCycle};
use crate::error::SolverError;
use crate::group::{Element, FiniteGroup, Side};
use crate::tuples::{inversion_parity, Parity, SubsetIndex};

/// Translating the ascending arrangement of `from` by `b` gives an
/// arrangement of `to` with the given parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub b: Element,
    pub side: Side,
    pub parity: Parity,
}

/// Union-find where each node carries its parity relative to its parent.
#[derive(Debug, Clone)]
struct ParityUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    to_parent: Vec<Parity>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), size: vec![1; n], to_parent: vec![Parity::Even; n] }
    }

    /// Root of `x` and the parity of `x` relative to it.
    fn find(&mut self, x: usize) -> (usize, Parity) {
        let p = self.parent[x];
        if p == x {
            return (x, Parity::Even);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.to_parent[x] = self.to_parent[x] ^ up;
        (root, self.to_parent[x])
    }

    /// Record `bit(b) = bit(a) ^ p`. `Ok(true)` merges two classes,
    /// `Ok(false)` is redundant, `Err(())` contradicts earlier edges.
    fn union(&mut self, a: usize, b: usize, p: Parity) -> Result<bool, ()> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == p { Ok(false) } else { Err(()) };
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.to_parent[small] = pa ^ pb ^ p;
        Ok(true)
    }
}

/// Parity constraints between the chirality bits of all `n`-subsets.
#[derive(Debug, Clone)]
pub struct ConstraintGraph {
    pub n: usize,
    pub index: SubsetIndex,
    pub edges: Vec<Edge>,
    /// Component of each subset, numbered by first appearance in colex order.
    pub component: Vec<usize>,
    /// Parity of each subset relative to the colex-first subset of its
    /// component. Meaningful only without an obstruction.
    pub offset: Vec<Parity>,
    pub component_count: usize,
    /// First contradiction found, as an odd closed walk.
    pub obstruction: Option<ParityCycle>,
}

impl ConstraintGraph {
    pub fn build(group: &FiniteGroup, n: usize) -> Result<Self, SolverError> {
        let m = group.order();
        if n < 2 {
            return Err(SolverError::ArityTooSmall(n));
        }
        if n > m {
            return Err(SolverError::ArityAboveOrder { n, m });
        }
        let index = SubsetIndex::new(m, n);
        let count = index.count();
        let mut edges = Vec::with_capacity(2 * (m - 1) * count);
        let mut image = vec![0; n];
        for (from, subset) in index.iter().enumerate() {
            for side in Side::BOTH {
                for b in 1..m {
                    for (y, &x) in image.iter_mut().zip(&subset) {
                        *y = group.translate(x, b, side);
                    }
                    edges.push(Edge { from, to: index.rank_unsorted(&image), b, side, parity: inversion_parity(&image) });
                }
            }
        }

        let mut uf = ParityUnionFind::new(count);
        let mut tree: Vec<Vec<(usize, bool)>> = vec![Vec::new(); count];
        let mut conflict = None;
        for (e, edge) in edges.iter().enumerate() {
            match uf.union(edge.from, edge.to, edge.parity) {
                Ok(true) => {
                    tree[edge.from].push((e, true));
                    tree[edge.to].push((e, false));
                }
                Ok(false) => {}
                Err(()) => {
                    if conflict.is_none() {
                        conflict = Some(e);
                    }
                }
            }
        }

        let mut component = vec![usize::MAX; count];
        let mut root_component = vec![usize::MAX; count];
        let mut root_parity = vec![Parity::Even; count];
        let mut offset = vec![Parity::Even; count];
        let mut component_count = 0;
        for x in 0..count {
            let (root, p) = uf.find(x);
            if root_component[root] == usize::MAX {
                root_component[root] = component_count;
                root_parity[root] = p;
                component_count += 1;
            }
            component[x] = root_component[root];
            offset[x] = p ^ root_parity[root];
        }

        let obstruction = conflict.map(|e| odd_cycle(group, &index, &edges, &tree, e));
        Ok(ConstraintGraph { n, index, edges, component, offset, component_count, obstruction })
    }

    pub fn node_count(&self) -> usize {
        self.index.count()
    }

    pub fn odd_self_loops(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.from == e.to && e.parity.is_odd())
    }

    /// Subsets of each component, in colex order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (x, &c) in self.component.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

/// Closed walk `a → b ⇝ a` through the conflicting edge and the spanning
/// forest. Tree edges walked backwards use the inverse translation, which
/// carries the same parity.
fn odd_cycle(
    group: &FiniteGroup,
    index: &SubsetIndex,
    edges: &[Edge],
    tree: &[Vec<(usize, bool)>],
    conflict: usize,
) -> ParityCycle {
    let closing = edges[conflict];
    let step = |from: usize, b: Element, side: Side, parity: Parity| CycleStep {
        subset: index.unrank(from),
        side,
        b,
        parity: parity.is_odd() as u8,
    };
    let mut steps = vec![step(closing.from, closing.b, closing.side, closing.parity)];

    // BFS from closing.to to closing.from over tree edges
    let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; index.count()];
    let mut seen = vec![false; index.count()];
    let mut queue = VecDeque::from([closing.to]);
    seen[closing.to] = true;
    while let Some(x) = queue.pop_front() {
        if x == closing.from {
            break;
        }
        for &(e, forward) in &tree[x] {
            let next = if forward { edges[e].to } else { edges[e].from };
            if !seen[next] {
                seen[next] = true;
                prev[next] = Some((x, e, forward));
                queue.push_back(next);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = closing.from;
    while at != closing.to {
        let (x, e, forward) = prev[at].expect("tree path exists inside a component");
        let edge = edges[e];
        path.push(if forward {
            step(x, edge.b, edge.side, edge.parity)
        } else {
            step(x, group.inverse(edge.b), edge.side, edge.parity)
        });
        at = x;
    }
    path.reverse();
    steps.extend(path);
    ParityCycle { steps }
}
