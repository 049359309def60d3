//! Dinic max-flow on integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    flow: u64,
}

/// Residual network. Arc `i ^ 1` is the reverse of arc `i`.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds `u -> v`; returns the arc index.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.push_pair(u, v, cap, 0)
    }

    /// Adds an undirected edge as an arc pair that both carry `cap`.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.push_pair(u, v, cap, cap)
    }

    fn push_pair(&mut self, u: usize, v: usize, cap: u64, rev_cap: u64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to: v,
            cap,
            flow: 0,
        });
        self.arcs.push(Arc {
            to: u,
            cap: rev_cap,
            flow: 0,
        });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    fn residual(&self, a: usize) -> u64 {
        let arc = &self.arcs[a];
        // Reverse arcs hold negative flow of their partner.
        let partner = &self.arcs[a ^ 1];
        arc.cap - arc.flow + partner.flow
    }

    fn push(&mut self, a: usize, mut amount: u64) {
        // Cancel flow on the partner first, then add forward flow.
        let back = self.arcs[a ^ 1].flow.min(amount);
        self.arcs[a ^ 1].flow -= back;
        amount -= back;
        self.arcs[a].flow += amount;
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for i in 0..self.adj[u].len() {
                let a = self.adj[u][i];
                let v = self.arcs[a].to;
                if self.level[v] == u32::MAX && self.residual(a) > 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64) -> u64 {
        if u == t {
            return limit;
        }
        while self.iter[u] < self.adj[u].len() {
            let a = self.adj[u][self.iter[u]];
            let v = self.arcs[a].to;
            let r = self.residual(a);
            if r > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, limit.min(r));
                if d > 0 {
                    self.push(a, d);
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Maximum flow from `s` to `t`, added on top of any existing flow.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total: u64 = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                total = total.saturating_add(f);
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reach(&self, s: usize) -> Vec<bool> {
        self.reach_from(&[s])
    }

    /// Nodes reachable from any start node in the residual network.
    pub fn reach_from(&self, starts: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = Vec::new();
        for &s in starts {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let v = self.arcs[a].to;
                if !seen[v] && self.residual(a) > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Nodes that can reach `t` in the residual network.
    pub fn residual_coreach(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                // `a` leaves v; its partner `a ^ 1` enters v from `u`.
                let u = self.arcs[a].to;
                if !seen[u] && self.residual(a ^ 1) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Net flow on arc `a`.
    pub fn flow(&self, a: usize) -> u64 {
        self.arcs[a].flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut f = FlowNetwork::new(6);
        for &(u, v, c) in &[
            (0, 1, 16),
            (0, 2, 13),
            (1, 2, 10),
            (2, 1, 4),
            (1, 3, 12),
            (3, 2, 9),
            (2, 4, 14),
            (4, 3, 7),
            (3, 5, 20),
            (4, 5, 4),
        ] {
            f.add_arc(u, v, c);
        }
        assert_eq!(f.max_flow(0, 5), 23);
        let side = f.residual_reach(0);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn undirected_edges_carry_flow_both_ways() {
        let mut f = FlowNetwork::new(3);
        f.add_edge(1, 0, 5);
        f.add_edge(1, 2, 3);
        assert_eq!(f.max_flow(0, 2), 3);
        let mut g = FlowNetwork::new(2);
        g.add_edge(0, 1, 4);
        assert_eq!(g.max_flow(1, 0), 4);
    }

    #[test]
    fn coreach_identifies_sink_side() {
        let mut f = FlowNetwork::new(4);
        f.add_arc(0, 1, 1);
        f.add_arc(1, 2, 5);
        f.add_arc(2, 3, 5);
        assert_eq!(f.max_flow(0, 3), 1);
        let co = f.residual_coreach(3);
        assert_eq!(co, vec![false, true, true, true]);
    }
}
