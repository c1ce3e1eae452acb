//! Maximum clique by branch and bound with a greedy colouring bound.
//!
//! Vertices are explored in index order and ties keep the first clique
//! found, so the result depends only on the graph.

#[derive(Clone, Debug)]
pub(crate) struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub(crate) fn new(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, adj: vec![0; n * words] }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a * self.words + b / 64] |= 1 << (b % 64);
        self.adj[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub(crate) fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CliqueResult {
    pub(crate) clique: Vec<usize>,
    pub(crate) optimal: bool,
    pub(crate) nodes: u64,
}

fn first_member(set: &[u64]) -> Option<usize> {
    set.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

struct Search<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    /// Greedy colouring of `cand` in index order; returns vertices with
    /// their colour numbers (colour classes in increasing order).
    fn colour(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.to_vec();
        let mut out = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_member(&q) {
                uncoloured[v / 64] &= !(1 << (v % 64));
                q[v / 64] &= !(1 << (v % 64));
                for (x, y) in q.iter_mut().zip(self.g.row(v)) {
                    *x &= !y;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let order = self.colour(&cand);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() || self.aborted {
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

fn greedy(g: &Graph) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for v in 0..g.len() {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

/// Largest clique found within `budget` search nodes, sorted ascending.
pub(crate) fn max_clique(g: &Graph, budget: u64) -> CliqueResult {
    if g.len() == 0 {
        return CliqueResult { clique: Vec::new(), optimal: true, nodes: 0 };
    }
    let mut all = vec![0u64; g.words];
    for v in 0..g.len() {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut s = Search { g, best: greedy(g), current: Vec::new(), nodes: 0, budget, aborted: false };
    s.expand(all);
    let mut clique = s.best;
    clique.sort_unstable();
    CliqueResult { clique, optimal: !s.aborted, nodes: s.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=14);
            let p = rng.gen_range(0.1..0.9);
            let mut g = Graph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(a, b);
                    }
                }
            }
            let r = max_clique(&g, u64::MAX);
            assert!(r.optimal);
            assert_eq!(r.clique.len(), brute(&g));
            for (i, &a) in r.clique.iter().enumerate() {
                for &b in &r.clique[i + 1..] {
                    assert!(g.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn wide_graph_uses_several_words() {
        let mut g = Graph::new(150);
        for a in 100..110 {
            for b in a + 1..110 {
                g.add_edge(a, b);
            }
        }
        g.add_edge(3, 140);
        let r = max_clique(&g, u64::MAX);
        assert_eq!(r.clique, (100..110).collect::<Vec<_>>());
    }

    #[test]
    fn tiny_budget_is_reported() {
        let mut g = Graph::new(40);
        for a in 0..40 {
            for b in a + 1..40 {
                if (a * 7 + b * 3) % 5 != 0 {
                    g.add_edge(a, b);
                }
            }
        }
        let r = max_clique(&g, 0);
        assert!(!r.optimal);
        assert!(!r.clique.is_empty());
    }
}
