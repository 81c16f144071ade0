use serde::Serialize;

use crate::error::{OrderError, SolverError};
use crate::group::{FiniteGroup, Side};
use crate::order::SphericalOrder;
use crate::tuples::{inversion_parity, representative, Sign, SubsetIndex};

/// Orbit counts of the group generated by even coordinate permutations and
/// the translations `x -> x·b`, `x -> b·x` acting on chirality classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    /// Orbits on all classes (two per subset).
    pub class_graph_components: usize,
    /// Orbits meeting the chosen classes of the supplied order.
    pub witness_rank: Option<usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut at = x;
    while parent[at] != root {
        let next = parent[at];
        parent[at] = root;
        at = next;
    }
    root
}

fn class_node(rank: usize, sign: Sign) -> usize {
    2 * rank + (sign == Sign::Minus) as usize
}

pub fn rank(group: &FiniteGroup, n: usize, order: Option<&SphericalOrder>) -> Result<RankReport, SolverError> {
    if n < 2 {
        return Err(SolverError::ArityTooSmall(n));
    }
    if let Some(k) = order {
        k.check_group(group)?;
        if k.arity() != n {
            return Err(OrderError::ArityMismatch { expected: n, got: k.arity() }.into());
        }
    }
    let m = group.order();
    if n > m {
        return Ok(RankReport { class_graph_components: 0, witness_rank: order.map(|_| 0) });
    }
    let index = SubsetIndex::new(m, n);
    let mut parent: Vec<usize> = (0..2 * index.count()).collect();
    let mut image = vec![0; n];
    for (r, subset) in index.iter().enumerate() {
        for sign in [Sign::Plus, Sign::Minus] {
            let arr = representative(&subset, sign);
            for side in Side::BOTH {
                for b in 1..m {
                    for (y, &x) in image.iter_mut().zip(&arr) {
                        *y = group.translate(x, b, side);
                    }
                    let target = class_node(index.rank_unsorted(&image), Sign::of_parity(inversion_parity(&image)));
                    let (ra, rb) = (find(&mut parent, class_node(r, sign)), find(&mut parent, target));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..parent.len()).map(|x| find(&mut parent, x)).collect();
    let witness_rank = order.map(|k| {
        let mut chosen: Vec<usize> = (0..index.count()).map(|r| roots[class_node(r, k.bit(r))]).collect();
        chosen.sort_unstable();
        chosen.dedup();
        chosen.len()
    });
    roots.sort_unstable();
    roots.dedup();
    Ok(RankReport { class_graph_components: roots.len(), witness_rank })
}

/// True when some class and its opposite lie in one orbit.
pub fn class_orbits_collide(group: &FiniteGroup, n: usize) -> bool {
    let m = group.order();
    if n > m {
        return false;
    }
    let index = SubsetIndex::new(m, n);
    let report = rank(group, n, None).expect("arity checked");
    report.class_graph_components < 2 * count_subset_orbits(group, &index)
}

fn count_subset_orbits(group: &FiniteGroup, index: &SubsetIndex) -> usize {
    let mut parent: Vec<usize> = (0..index.count()).collect();
    for (r, subset) in index.iter().enumerate() {
        for side in Side::BOTH {
            for b in 1..group.order() {
                let image: Vec<usize> = subset.iter().map(|&x| group.translate(x, b, side)).collect();
                let (ra, rb) = (find(&mut parent, r), find(&mut parent, index.rank_unsorted(&image)));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    (0..index.count()).filter(|&x| find(&mut parent, x) == x).count()
}
