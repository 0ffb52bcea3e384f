//! Reference implementations written straight from the rules, sharing no code
//! with the library beyond the `Graph` accessors.

#![allow(dead_code)]

use domgame_core::{Graph, Player};

fn dominates(g: &Graph, class: &[bool]) -> bool {
    (0..g.order()).all(|v| class[v] || (0..g.order()).any(|u| class[u] && g.has_edge(u, v)))
}

fn alice_wins_final(g: &Graph, k: usize, colors: &[u8]) -> bool {
    (1..=k as u8).all(|c| {
        let class: Vec<bool> = colors.iter().map(|&x| x == c).collect();
        dominates(g, &class)
    })
}

fn search(g: &Graph, k: usize, colors: &mut Vec<u8>, mover: Player) -> Player {
    if colors.iter().all(|&c| c != 0) {
        return if alice_wins_final(g, k, colors) { Player::Alice } else { Player::Bob };
    }
    let next = match mover {
        Player::Alice => Player::Bob,
        Player::Bob => Player::Alice,
    };
    for v in 0..g.order() {
        if colors[v] != 0 {
            continue;
        }
        for c in 1..=k as u8 {
            colors[v] = c;
            let w = search(g, k, colors, next);
            colors[v] = 0;
            if w == mover {
                return mover;
            }
        }
    }
    next
}

/// Plays every game to the end with no pruning or early termination.
pub fn naive_winner(g: &Graph, k: usize, first: Player) -> Player {
    let mut colors = vec![0u8; g.order()];
    search(g, k, &mut colors, first)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism classes of graphs of order `n` (connected only if asked), by
/// minimizing the adjacency bit string over all `n!` relabelings of every edge subset.
pub fn brute_force_class_count(n: usize, connected_only: bool) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if connected_only && !connected(n, &edges) {
            continue;
        }
        let code = perms
            .iter()
            .map(|p| {
                let mut adj = vec![false; n * n];
                for &(u, v) in &edges {
                    adj[p[u] * n + p[v]] = true;
                    adj[p[v] * n + p[u]] = true;
                }
                pairs.iter().fold(0u64, |acc, &(u, v)| acc << 1 | adj[u * n + v] as u64)
            })
            .min()
            .unwrap();
        seen.insert(code);
    }
    seen.len()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut reach = vec![false; n];
    let mut stack = vec![0];
    reach[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reach.into_iter().all(|r| r)
}

/// Largest number of disjoint dominating sets, by trying every assignment of
/// vertices to `d` classes.
pub fn brute_force_domatic_number(g: &Graph) -> usize {
    let n = g.order();
    let mut best = 1;
    for d in 2..=n {
        let mut assign = vec![0usize; n];
        let mut found = false;
        'outer: loop {
            let ok = (0..d).all(|c| {
                let class: Vec<bool> = assign.iter().map(|&x| x == c).collect();
                dominates(g, &class)
            });
            if ok {
                found = true;
                break;
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
                }
                assign[i] += 1;
                if assign[i] < d {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
        }
        if !found {
            break;
        }
        best = d;
    }
    best
}
