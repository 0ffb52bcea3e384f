//! Dominating sets, domination number and domatic number by exhaustive search.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DOMINATION_MAX_ORDER: usize = 32;
pub const DOMATIC_MAX_ORDER: usize = 20;

/// Vertices dominated by `set`: the union of closed neighborhoods.
pub fn dominated_by(g: &Graph, set: VertexSet) -> VertexSet {
    set.iter()
        .fold(VertexSet::EMPTY, |acc, v| acc.union(g.closed_nbhd(v)))
}

/// Every vertex lies in `set` or has a neighbor in it.
pub fn is_dominating(g: &Graph, set: VertexSet) -> bool {
    dominated_by(g, set) == g.vertices()
}

/// `γ(G)`, by enumerating subsets in increasing size.
pub fn domination_number(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > DOMINATION_MAX_ORDER {
        return Err(Error::capacity(format!(
            "domination number limited to {DOMINATION_MAX_ORDER} vertices, got {n}"
        )));
    }
    let full = g.vertices();
    Ok((1..=n)
        .find(|&size| exists_dominating_of_size(g, full, size, VertexSet::EMPTY))
        .expect("the whole vertex set dominates"))
}

fn exists_dominating_of_size(
    g: &Graph,
    full: VertexSet,
    remaining: usize,
    covered: VertexSet,
) -> bool {
    if covered == full {
        return true;
    }
    if remaining == 0 {
        return false;
    }
    // the least undominated vertex must be covered by some pick from its closed neighborhood
    let target = full.difference(covered).first().expect("not all covered");
    g.closed_nbhd(target)
        .iter()
        .any(|v| exists_dominating_of_size(g, full, remaining - 1, covered.union(g.closed_nbhd(v))))
}

/// A minimal dominating set: greedy construction (largest new coverage first),
/// then vertices are dropped in increasing order while the rest still dominates.
pub fn minimal_dominating_set(g: &Graph) -> VertexSet {
    let full = g.vertices();
    let mut set = VertexSet::EMPTY;
    let mut covered = VertexSet::EMPTY;
    while covered != full {
        let best = (0..g.order())
            .filter(|&v| !set.contains(v))
            .max_by_key(|&v| (g.closed_nbhd(v).difference(covered).len(), std::cmp::Reverse(v)))
            .expect("an undominated vertex can always be added");
        set.insert(best);
        covered = covered.union(g.closed_nbhd(best));
    }
    shrink_to_minimal(g, set)
}

/// Removes vertices from a dominating set in increasing order while it keeps dominating.
pub fn shrink_to_minimal(g: &Graph, mut set: VertexSet) -> VertexSet {
    for v in set.iter() {
        let without = {
            let mut s = set;
            s.remove(v);
            s
        };
        if is_dominating(g, without) {
            set = without;
        }
    }
    set
}

/// No proper subset obtained by dropping one vertex still dominates.
pub fn is_minimal_dominating(g: &Graph, set: VertexSet) -> bool {
    is_dominating(g, set)
        && set.iter().all(|v| {
            let mut s = set;
            s.remove(v);
            !is_dominating(g, s)
        })
}

/// `d(G)`: the largest `k` admitting a partition of `V(G)` into `k` dominating sets.
/// Tries `k` from `δ(G) + 1` downward.
pub fn domatic_number(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > DOMATIC_MAX_ORDER {
        return Err(Error::capacity(format!(
            "domatic number limited to {DOMATIC_MAX_ORDER} vertices, got {n}"
        )));
    }
    let upper = g.min_degree() + 1;
    Ok((1..=upper)
        .rev()
        .find(|&k| domatic_partition(g, k).is_some())
        .expect("the trivial partition has one dominating class"))
}

/// A partition of the vertex set into `k` dominating sets, if one exists.
pub fn domatic_partition(g: &Graph, k: usize) -> Option<Vec<VertexSet>> {
    let n = g.order();
    if k == 0 || k > n {
        return None;
    }
    let mut search = PartitionSearch {
        g,
        k,
        classes: vec![VertexSet::EMPTY; k],
        unassigned: g.vertices(),
    };
    search.assign(0, 0).then(|| search.classes)
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    k: usize,
    classes: Vec<VertexSet>,
    unassigned: VertexSet,
}

impl PartitionSearch<'_> {
    fn feasible(&self) -> bool {
        (0..self.g.order()).all(|w| {
            let nb = self.g.closed_nbhd(w);
            let missing = self
                .classes
                .iter()
                .filter(|c| c.intersection(nb).is_empty())
                .count();
            missing <= nb.intersection(self.unassigned).len()
        })
    }

    fn assign(&mut self, v: usize, used: usize) -> bool {
        if v == self.g.order() {
            return true;
        }
        self.unassigned.remove(v);
        // classes are interchangeable: open at most one new class per vertex
        for c in 0..self.k.min(used + 1) {
            self.classes[c].insert(v);
            if self.feasible() && self.assign(v + 1, used.max(c + 1)) {
                return true;
            }
            self.classes[c].remove(v);
        }
        self.unassigned.insert(v);
        false
    }
}
