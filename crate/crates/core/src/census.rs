//! Small-graph enumeration: labeled trees from Prüfer sequences, isomorphism
//! classes of trees and spiders, and a connected-graph census with canonical labels.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::graph6::to_graph6;

pub const TREE_CENSUS_MAX_ORDER: usize = 10;
pub const GRAPH_CENSUS_MAX_ORDER: usize = 7;
/// Canonical codes pack the upper triangle into a `u64`.
pub const CANONICAL_MAX_ORDER: usize = 11;

/// The labeled tree on `0..seq.len() + 2` encoded by a Prüfer sequence.
pub fn prufer_decode(seq: &[Vertex]) -> Result<Graph> {
    let n = seq.len() + 2;
    check_tree_order(n)?;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::input(format!("Prüfer entry {bad} out of range for order {n}")));
    }
    let mut adj = Vec::with_capacity(n);
    prufer_adjacency(seq, &mut adj);
    let edges: Vec<_> = (0..n)
        .flat_map(|u| VertexSet::from_bits(adj[u]).iter().filter(move |&v| v > u).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, &edges)
}

fn check_tree_order(n: usize) -> Result<()> {
    if n > TREE_CENSUS_MAX_ORDER {
        return Err(Error::capacity(format!(
            "tree enumeration limited to {TREE_CENSUS_MAX_ORDER} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Calls `f` on every labeled tree of order `n` (`n^(n-2)` of them), in Prüfer order.
pub fn for_each_labeled_tree(n: usize, mut f: impl FnMut(Graph) -> Result<()>) -> Result<()> {
    check_tree_order(n)?;
    match n {
        0 => return Ok(()),
        1 => return f(Graph::empty(1)?),
        _ => {}
    }
    let len = n - 2;
    let mut seq = vec![0; len];
    loop {
        f(prufer_decode(&seq)?)?;
        // odometer increment
        let mut i = 0;
        while i < len && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            return Ok(());
        }
        seq[i] += 1;
    }
}

/// Every labeled tree of order `n`.
pub fn labeled_trees(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_labeled_tree(n, |t| {
        out.push(t);
        Ok(())
    })?;
    Ok(out)
}

/// AHU code of a rooted tree packed as bits, `1` for "(" and `0` for ")",
/// with its length; children are concatenated in sorted order.
type TreeCode = (u64, u32);

fn rooted_code(adj: &[u64], root: Vertex, parent: Option<Vertex>) -> TreeCode {
    let mut kids: Vec<TreeCode> = VertexSet::from_bits(adj[root])
        .iter()
        .filter(|&c| Some(c) != parent)
        .map(|c| rooted_code(adj, c, Some(root)))
        .collect();
    kids.sort_unstable();
    let (mut bits, mut len) = (1u64, 1u32);
    for (b, l) in kids {
        bits = bits << l | b;
        len += l;
    }
    (bits << 1, len + 1)
}

/// The one or two centers of a tree.
fn tree_centers(adj: &[u64]) -> Vec<Vertex> {
    let mut alive = VertexSet::full(adj.len());
    while alive.len() > 2 {
        let leaves: VertexSet = alive
            .iter()
            .filter(|&v| VertexSet::from_bits(adj[v]).intersection(alive).len() <= 1)
            .collect();
        alive = alive.difference(leaves);
    }
    alive.iter().collect()
}

fn code_of_tree_adjacency(adj: &[u64]) -> TreeCode {
    tree_centers(adj)
        .into_iter()
        .map(|c| rooted_code(adj, c, None))
        .min()
        .expect("a tree has a center")
}

/// Isomorphism-invariant code of a tree: the least AHU code over its centers.
pub fn tree_canonical_code(g: &Graph) -> Result<(u64, u32)> {
    if !g.is_tree() {
        return Err(Error::input("tree_canonical_code needs a tree"));
    }
    let adj: Vec<u64> = (0..g.order()).map(|v| g.neighborhood(v).bits()).collect();
    Ok(code_of_tree_adjacency(&adj))
}

/// Rebuilds a tree from its code, labeling vertices in preorder.
fn tree_from_code((bits, len): TreeCode) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut stack: Vec<Vertex> = Vec::new();
    let mut next = 0;
    for i in (0..len).rev() {
        if bits >> i & 1 == 1 {
            if let Some(&p) = stack.last() {
                edges.push((p, next));
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    Graph::from_edge_list(next, &edges)
}

/// Adjacency bitmasks of the tree with Prüfer sequence `seq` (entries in range).
fn prufer_adjacency(seq: &[Vertex], adj: &mut Vec<u64>) {
    let n = seq.len() + 2;
    let mut degree = [1u8; TREE_CENSUS_MAX_ORDER];
    for &x in seq {
        degree[x] += 1;
    }
    adj.clear();
    adj.resize(n, 0);
    let mut link = |u: usize, v: usize| {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    };
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        link(leaf, x);
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let mut rest = (0..n).filter(|&v| degree[v] == 1);
    let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
    link(u, v);
}

/// One representative per isomorphism class of trees of order `n`, from the Prüfer
/// enumeration deduplicated by canonical code. Representatives are labeled in
/// preorder of their canonical rooted form, sorted by code, tagged `tree:n#i`.
pub fn nonisomorphic_trees(n: usize) -> Result<Vec<Graph>> {
    check_tree_order(n)?;
    let mut classes = std::collections::BTreeSet::new();
    match n {
        0 => {}
        1 => {
            classes.insert((0b10, 2));
        }
        _ => {
            let len = n - 2;
            let mut seq = vec![0; len];
            let mut adj = Vec::with_capacity(n);
            'all: loop {
                prufer_adjacency(&seq, &mut adj);
                classes.insert(code_of_tree_adjacency(&adj));
                let mut i = 0;
                while i < len && seq[i] == n - 1 {
                    seq[i] = 0;
                    i += 1;
                }
                if i == len {
                    break 'all;
                }
                seq[i] += 1;
            }
        }
    }
    classes
        .into_iter()
        .enumerate()
        .map(|(i, code)| Ok(tree_from_code(code)?.with_tag(format!("tree:{n}#{i}"))))
        .collect()
}

/// Spiders: trees with exactly one vertex of degree at least 3.
pub fn is_spider(g: &Graph) -> bool {
    g.is_tree() && (0..g.order()).filter(|&v| g.degree(v) >= 3).count() == 1
}

pub fn spiders(n: usize) -> Result<Vec<Graph>> {
    Ok(nonisomorphic_trees(n)?.into_iter().filter(is_spider).collect())
}

/// Canonical form: the lexicographically least upper-triangle code over all
/// relabelings that list vertices by non-increasing degree, with the permutation
/// achieving it (`perm[old] = new`).
pub fn canonical_labeling(g: &Graph) -> Result<(u64, Vec<Vertex>)> {
    let n = g.order();
    if n > CANONICAL_MAX_ORDER {
        return Err(Error::capacity(format!(
            "canonical labeling limited to {CANONICAL_MAX_ORDER} vertices, got {n}"
        )));
    }
    // degree classes, highest degree first; positions are filled class by class
    let mut by_degree: BTreeMap<std::cmp::Reverse<usize>, Vec<Vertex>> = BTreeMap::new();
    for v in 0..n {
        by_degree.entry(std::cmp::Reverse(g.degree(v))).or_default().push(v);
    }
    let classes: Vec<Vec<Vertex>> = by_degree.into_values().collect();
    let mut best: Option<(u64, Vec<Vertex>)> = None;
    let mut order = Vec::with_capacity(n);
    search_orders(g, &classes, 0, &mut order, &mut best);
    let (code, order) = best.expect("at least one ordering");
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok((code, perm))
}

fn code_of(g: &Graph, order: &[Vertex]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | g.has_edge(order[i], order[j]) as u64;
        }
    }
    code
}

fn search_orders(
    g: &Graph,
    classes: &[Vec<Vertex>],
    class: usize,
    order: &mut Vec<Vertex>,
    best: &mut Option<(u64, Vec<Vertex>)>,
) {
    if class == classes.len() {
        let code = code_of(g, order);
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            *best = Some((code, order.clone()));
        }
        return;
    }
    let mut members = classes[class].clone();
    permute(&mut members, 0, &mut |p| {
        let len = order.len();
        order.extend_from_slice(p);
        search_orders(g, classes, class + 1, order, best);
        order.truncate(len);
    });
}

fn permute(items: &mut [Vertex], i: usize, f: &mut dyn FnMut(&[Vertex])) {
    if i == items.len() {
        f(items);
        return;
    }
    for j in i..items.len() {
        items.swap(i, j);
        permute(items, i + 1, f);
        items.swap(i, j);
    }
}

/// The canonical relabeling of `g`; isomorphic graphs give equal results.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, perm) = canonical_labeling(g)?;
    g.relabel(&perm)
}

/// All graphs of order `n` up to isomorphism, built by adding one vertex to
/// every graph of order `n - 1` in every possible way, deduplicated by canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > GRAPH_CENSUS_MAX_ORDER {
        return Err(Error::capacity(format!(
            "graph census limited to {GRAPH_CENSUS_MAX_ORDER} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut seen = BTreeMap::new();
        for g in &level {
            let base = g.edges();
            for mask in 0u64..1 << (m - 1) {
                let mut edges = base.clone();
                edges.extend((0..m - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, m - 1)));
                let h = Graph::from_edge_list(m, &edges)?;
                let (code, perm) = canonical_labeling(&h)?;
                seen.entry(code).or_insert_with(|| h.relabel(&perm));
            }
        }
        level = seen.into_values().collect::<Result<Vec<_>>>()?;
    }
    Ok(level)
}

/// Connected graphs of order `n` up to isomorphism, tagged with their graph6 string.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .map(|g| {
            let tag = to_graph6(&g).unwrap_or_default();
            g.with_tag(tag)
        })
        .collect())
}

/// `g` under a uniformly random relabeling; returns the permutation (`perm[old] = new`).
pub fn random_relabeling<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<(Graph, Vec<Vertex>)> {
    let mut perm: Vec<Vertex> = (0..g.order()).collect();
    perm.shuffle(rng);
    Ok((g.relabel(&perm)?, perm))
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn prufer_examples() {
        // [3, 3, 3] is the star centered at 3
        let star = prufer_decode(&[3, 3, 3]).unwrap();
        assert_eq!(star.degree(3), 4);
        let path = prufer_decode(&[1, 2]).unwrap();
        assert_eq!(path.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(prufer_decode(&[5]).is_err());
        assert_eq!(labeled_trees(5).unwrap().len(), 125);
    }

    #[test]
    fn tree_class_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| nonisomorphic_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
        for t in nonisomorphic_trees(7).unwrap() {
            assert!(t.is_tree());
            assert_eq!(t.order(), 7);
        }
    }

    #[test]
    fn tree_codes_agree_with_brute_force_canonical_forms() {
        for n in 2..=8 {
            let trees = nonisomorphic_trees(n).unwrap();
            let mut codes: Vec<u64> = trees.iter().map(|t| canonical_labeling(t).unwrap().0).collect();
            codes.sort_unstable();
            codes.dedup();
            assert_eq!(codes.len(), trees.len(), "n = {n}");
        }
    }

    #[test]
    fn spider_counts() {
        // spiders of order n correspond to partitions of n - 1 into at least 3 parts
        let counts: Vec<usize> = (4..=9).map(|n| spiders(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 7, 11, 17]);
    }

    #[test]
    fn connected_census_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = (1..=5).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn census_graphs_are_tagged_with_graph6() {
        let g = &connected_graphs(4).unwrap()[0];
        let parsed = crate::graph6::parse_graph6(g.tag().unwrap()).unwrap();
        assert_eq!(&parsed, g);
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant(n in 1usize..8, p in 0.1f64..0.9, seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_graph(n, p, &mut rng).unwrap();
            let (h, _) = random_relabeling(&g, &mut rng).unwrap();
            prop_assert_eq!(canonical_labeling(&g).unwrap().0, canonical_labeling(&h).unwrap().0);
            prop_assert_eq!(canonical_graph(&g).unwrap(), canonical_graph(&h).unwrap());
        }

        #[test]
        fn tree_codes_are_relabeling_invariant(seq in proptest::collection::vec(0usize..9, 7), seed in any::<u64>()) {
            let t = prufer_decode(&seq).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let (u, _) = random_relabeling(&t, &mut rng).unwrap();
            prop_assert_eq!(tree_canonical_code(&t).unwrap(), tree_canonical_code(&u).unwrap());
        }
    }
}
