//! Strongly connected components of the transition graph.
//!
//! The graph of an automaton has the reachable plain states plus the two
//! sinks as nodes and an edge `p → q` whenever some symbol moves `p` to `q`.
//! The decomposition also fixes a topological index per SCC (edges never
//! decrease it) with the sink SCCs on the two maximal indices.

use crate::automaton::{Automaton, StateRef};

/// Tarjan's algorithm, iterative. Components are returned in reverse
/// topological order (every edge leaving a component points into an earlier
/// entry of the result) and the node order within a component follows the
/// discovery stack, so the output is deterministic for a fixed adjacency.
pub(crate) fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next_index = 0usize;
    // (node, edge position) call frames
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut ei)) = frames.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// SCC decomposition of the reachable part of an automaton (plus the sinks,
/// which are always present and each form their own self-looping SCC).
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    /// Per plain state; `usize::MAX` marks unreachable states.
    plain_scc: Vec<usize>,
    top_scc: usize,
    bottom_scc: usize,
    sccs: Vec<Vec<StateRef>>,
    /// Per SCC: position in a topological order of the condensation.
    topo_rank: Vec<usize>,
    /// Per SCC: singleton without a self-loop.
    trivial: Vec<bool>,
}

impl SccDecomposition {
    /// SCC id of a state, `None` for unreachable plain states.
    pub fn scc_of(&self, q: StateRef) -> Option<usize> {
        match q {
            StateRef::Top => Some(self.top_scc),
            StateRef::Bottom => Some(self.bottom_scc),
            StateRef::Plain(i) => {
                let id = *self.plain_scc.get(i)?;
                (id != usize::MAX).then_some(id)
            }
        }
    }

    pub fn same_scc(&self, p: StateRef, q: StateRef) -> bool {
        match (self.scc_of(p), self.scc_of(q)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Member states per SCC, sorted.
    pub fn sccs(&self) -> &[Vec<StateRef>] {
        &self.sccs
    }

    pub fn count(&self) -> usize {
        self.sccs.len()
    }

    pub fn topo_rank(&self, scc: usize) -> usize {
        self.topo_rank[scc]
    }

    pub fn is_trivial(&self, scc: usize) -> bool {
        self.trivial[scc]
    }
}

/// Decomposes the graph `(Q₊, T)` restricted to the states reachable from
/// the initial state, plus `⊤` and `⊥`.
pub fn decompose(a: &Automaton) -> SccDecomposition {
    let reachable = a.reachable();
    // node ids: reachable plain states in ascending order, then ⊤, then ⊥
    let node_of_plain = {
        let mut m = vec![usize::MAX; a.state_count()];
        for (i, &q) in reachable.iter().enumerate() {
            m[q] = i;
        }
        m
    };
    let top = reachable.len();
    let bottom = reachable.len() + 1;
    let n = reachable.len() + 2;

    let mut adj = vec![Vec::new(); n];
    for (i, &q) in reachable.iter().enumerate() {
        for s in 0..a.alphabet().len() {
            let t = match a.step(StateRef::Plain(q), s) {
                StateRef::Plain(j) => node_of_plain[j],
                StateRef::Top => top,
                StateRef::Bottom => bottom,
            };
            adj[i].push(t);
        }
        adj[i].sort_unstable();
        adj[i].dedup();
    }
    adj[top].push(top);
    adj[bottom].push(bottom);

    let comps = tarjan(&adj);
    let mut scc_of_node = vec![usize::MAX; n];
    for (id, comp) in comps.iter().enumerate() {
        for &v in comp {
            scc_of_node[v] = id;
        }
    }

    // Topological ranks: Kahn on the plain condensation with smallest SCC id
    // first, then the sink SCCs on the two maximal ranks. Edges into sinks
    // never constrain this since sinks have no outgoing cross edges.
    let top_scc = scc_of_node[top];
    let bottom_scc = scc_of_node[bottom];
    let k = comps.len();
    let mut indegree = vec![0usize; k];
    let mut dag: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, outs) in adj.iter().enumerate() {
        for &w in outs {
            let (cv, cw) = (scc_of_node[v], scc_of_node[w]);
            if cv != cw && !dag[cv].contains(&cw) {
                dag[cv].push(cw);
                indegree[cw] += 1;
            }
        }
    }
    let mut topo_rank = vec![usize::MAX; k];
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..k)
        .filter(|&c| indegree[c] == 0 && c != top_scc && c != bottom_scc)
        .map(std::cmp::Reverse)
        .collect();
    let mut next_rank = 0usize;
    while let Some(std::cmp::Reverse(c)) = ready.pop() {
        topo_rank[c] = next_rank;
        next_rank += 1;
        for &d in &dag[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 && d != top_scc && d != bottom_scc {
                ready.push(std::cmp::Reverse(d));
            }
        }
    }
    topo_rank[top_scc] = next_rank;
    topo_rank[bottom_scc] = next_rank + 1;

    let to_ref = |v: usize| -> StateRef {
        if v == top {
            StateRef::Top
        } else if v == bottom {
            StateRef::Bottom
        } else {
            StateRef::Plain(reachable[v])
        }
    };
    let mut sccs: Vec<Vec<StateRef>> = comps
        .iter()
        .map(|comp| {
            let mut members: Vec<StateRef> = comp.iter().map(|&v| to_ref(v)).collect();
            members.sort();
            members
        })
        .collect();
    let trivial: Vec<bool> = comps
        .iter()
        .map(|comp| comp.len() == 1 && !adj[comp[0]].contains(&comp[0]))
        .collect();

    // renumber SCC ids by topological rank so ids and ranks agree
    let mut by_rank: Vec<usize> = (0..k).collect();
    by_rank.sort_by_key(|&c| topo_rank[c]);
    let mut new_id = vec![0usize; k];
    for (rank, &old) in by_rank.iter().enumerate() {
        new_id[old] = rank;
    }
    let mut sccs_sorted = vec![Vec::new(); k];
    let mut trivial_sorted = vec![false; k];
    for old in 0..k {
        sccs_sorted[new_id[old]] = std::mem::take(&mut sccs[old]);
        trivial_sorted[new_id[old]] = trivial[old];
    }
    let mut plain_scc = vec![usize::MAX; a.state_count()];
    for (i, &q) in reachable.iter().enumerate() {
        plain_scc[q] = new_id[scc_of_node[i]];
    }

    SccDecomposition {
        plain_scc,
        top_scc: new_id[top_scc],
        bottom_scc: new_id[bottom_scc],
        sccs: sccs_sorted,
        topo_rank: (0..k).collect(),
        trivial: trivial_sorted,
    }
}
