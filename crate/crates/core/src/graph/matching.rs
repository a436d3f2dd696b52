use std::collections::VecDeque;

use super::{GameGraph, HostGraph};

const NONE: usize = usize::MAX;

/// Kuhn's augmenting-path matching, X side searched against Y.
pub(super) fn bipartite_matching(g: &GameGraph) -> usize {
    let HostGraph::Bipartite { m, n } = g.host() else {
        unreachable!("bipartite_matching on a complete host")
    };
    let mut mate_of_y = vec![NONE; n];
    let mut size = 0;
    for x in 0..m {
        if g.degree(x) == 0 {
            continue;
        }
        let mut seen = vec![false; n];
        if augment(g, m, x, &mut seen, &mut mate_of_y) {
            size += 1;
        }
    }
    size
}

fn augment(g: &GameGraph, m: usize, x: usize, seen: &mut [bool], mate_of_y: &mut [usize]) -> bool {
    for y in g.neighbors(x) {
        let j = y - m;
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if mate_of_y[j] == NONE || augment(g, m, mate_of_y[j], seen, mate_of_y) {
            mate_of_y[j] = x;
            return true;
        }
    }
    false
}

/// Edmonds' blossom algorithm: grow alternating trees by BFS, contracting
/// odd cycles through their base.
pub(super) fn general_matching(g: &GameGraph) -> usize {
    let order = g.order();
    let mut state = Blossom {
        g,
        mate: vec![NONE; order],
        parent: vec![NONE; order],
        base: (0..order).collect(),
        used: vec![false; order],
        in_blossom: vec![false; order],
        queue: VecDeque::new(),
    };
    // Greedy start keeps the number of augmenting searches small.
    for u in 0..order {
        if state.mate[u] == NONE {
            if let Some(v) = g.neighbors(u).find(|&v| state.mate[v] == NONE) {
                state.mate[u] = v;
                state.mate[v] = u;
            }
        }
    }
    for root in 0..order {
        if state.mate[root] == NONE && g.degree(root) > 0 {
            if let Some(end) = state.find_path(root) {
                state.flip(end);
            }
        }
    }
    state.mate.iter().filter(|&&m| m != NONE).count() / 2
}

struct Blossom<'a> {
    g: &'a GameGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Returns the free vertex ending an augmenting path from `root`.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let order = self.mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            let neighbors: Vec<usize> = self.g.neighbors(v).collect();
            for to in neighbors {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..order {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn flip(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
