//! Dinic's algorithm over a generic scalar capacity.

use std::collections::VecDeque;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Edge<S> {
    to: usize,
    cap: S,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork<S> {
    arcs: Vec<Edge<S>>,
    adj: Vec<Vec<usize>>,
    /// Residual capacities at or below this count as saturated.
    eps: S,
}

impl<S: Scalar> FlowNetwork<S> {
    pub fn new(nodes: usize, eps: S) -> Self {
        FlowNetwork { arcs: Vec::new(), adj: vec![Vec::new(); nodes], eps }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: S) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Edge { to, cap });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Edge { to: from, cap: S::zero() });
    }

    fn open(&self, a: usize) -> bool {
        self.arcs[a].cap > self.eps
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.adj.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.arcs[a].to;
                if level[v].is_none() && self.open(a) {
                    level[v] = Some(level[u].expect("visited") + 1);
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, limit: S, level: &[Option<usize>], next: &mut [usize]) -> S {
        if u == t {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let a = self.adj[u][next[u]];
            let v = self.arcs[a].to;
            if self.open(a) && level[v] == level[u].map(|l| l + 1) {
                let cap = self.arcs[a].cap.clone();
                let push = if cap < limit { cap } else { limit.clone() };
                let got = self.augment(v, t, push, level, next);
                if got > S::zero() {
                    self.arcs[a].cap = self.arcs[a].cap.clone() - got.clone();
                    self.arcs[a ^ 1].cap = self.arcs[a ^ 1].cap.clone() + got.clone();
                    return got;
                }
            }
            next[u] += 1;
        }
        S::zero()
    }

    /// Maximum flow value from `s` to `t`.
    pub fn max_flow(&mut self, s: usize, t: usize) -> S {
        let total_cap = self.adj[s]
            .iter()
            .fold(S::zero(), |acc, &a| acc + self.arcs[a].cap.clone());
        let mut flow = S::zero();
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return flow;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let got = self.augment(s, t, total_cap.clone() + S::one(), &level, &mut next);
                if got <= S::zero() {
                    break;
                }
                flow = flow + got;
            }
        }
    }

    /// Nodes reachable from `s` in the residual graph (the minimal source side).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l.is_some()).collect()
    }

    /// After `max_flow`: whether the minimum cut is unique, treating residual
    /// capacities at or below `slack` as saturated. The cut is unique exactly
    /// when every node is reachable from `s` or can reach `t`.
    pub fn unique_min_cut(&self, s: usize, t: usize, slack: &S) -> bool {
        let open = |a: usize| self.arcs[a].cap > *slack;
        let mut from_s = vec![false; self.adj.len()];
        let mut to_t = vec![false; self.adj.len()];
        from_s[s] = true;
        to_t[t] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let v = self.arcs[a].to;
                if !from_s[v] && open(a) {
                    from_s[v] = true;
                    stack.push(v);
                }
            }
        }
        stack.push(t);
        while let Some(v) = stack.pop() {
            // arc a leaves v, so a ^ 1 enters it
            for &a in &self.adj[v] {
                let u = self.arcs[a].to;
                if !to_t[u] && open(a ^ 1) {
                    to_t[u] = true;
                    stack.push(u);
                }
            }
        }
        from_s.iter().zip(&to_t).all(|(a, b)| *a || *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn textbook_network() {
        // classic 6-node example with max flow 23
        let mut g = FlowNetwork::new(6, 0.0);
        for (u, v, c) in [(0, 1, 16.0), (0, 2, 13.0), (1, 2, 10.0), (2, 1, 4.0), (1, 3, 12.0), (3, 2, 9.0), (2, 4, 14.0), (4, 3, 7.0), (3, 5, 20.0), (4, 5, 4.0)] {
            g.add_edge(u, v, c);
        }
        assert_eq!(g.max_flow(0, 5), 23.0);
        let side = g.source_side(0);
        assert!(side[0] && !side[5]);
        assert!(g.unique_min_cut(0, 5, &0.0));
    }

    #[test]
    fn detects_tied_cuts() {
        // two parallel unit paths in series with a unit edge: two minimum cuts
        let mut g = FlowNetwork::new(3, Rational64::from_integer(0));
        g.add_edge(0, 1, Rational64::from_integer(1));
        g.add_edge(1, 2, Rational64::from_integer(1));
        assert_eq!(g.max_flow(0, 2), Rational64::from_integer(1));
        assert!(!g.unique_min_cut(0, 2, &Rational64::from_integer(0)));
    }

    #[test]
    fn rational_capacities() {
        let mut g = FlowNetwork::new(4, Rational64::from_integer(0));
        g.add_edge(0, 1, Rational64::new(1, 3));
        g.add_edge(0, 2, Rational64::new(1, 2));
        g.add_edge(1, 3, Rational64::new(1, 2));
        g.add_edge(2, 3, Rational64::new(1, 5));
        g.add_edge(1, 2, Rational64::from_integer(1));
        assert_eq!(g.max_flow(0, 3), Rational64::new(8, 15));
    }
}
