//! Product constructions, language difference and equivalence checks with
//! witness lassos, and the quotients used by the minimisation pipelines.
//!
//! Everything here works on pair graphs. For difference and equivalence of
//! two automata the pair graph is the part reachable from the pair of
//! initial states; the quotients need verdicts for every pair of states, so
//! they build the graph over all ordered pairs (plus sink pairs) instead.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{AcceptanceMode, Automaton, Lasso, StateRef};
use crate::error::Error;
use crate::scc::tarjan;

/// Which of the two automata accepts a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A lasso in the language of one automaton and not the other.
///
/// Replaying it through both automata with `run_lasso` confirms acceptance
/// on `side` and rejection on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffWitness {
    pub lasso: Lasso,
    pub side: Side,
}

/// Synchronous pair graph of two automata over the same alphabet.
///
/// Nodes are ordered pairs of states (sinks included); the transition on a
/// symbol moves both components at once. Unlike an [`Automaton`] the pair
/// graph has no acceptance of its own — callers decorate the nodes.
#[derive(Debug, Clone)]
pub struct PairGraph {
    symbols: usize,
    nodes: Vec<(StateRef, StateRef)>,
    index: HashMap<(StateRef, StateRef), usize>,
    /// Row-major: `succ[node * symbols + s]`.
    succ: Vec<usize>,
    initial: usize,
}

impl PairGraph {
    pub fn nodes(&self) -> &[(StateRef, StateRef)] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_index(&self, pair: (StateRef, StateRef)) -> Option<usize> {
        self.index.get(&pair).copied()
    }

    /// Node index of the pair of initial states.
    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn successor(&self, node: usize, sym: usize) -> usize {
        self.succ[node * self.symbols + sym]
    }

    /// Forward adjacency, deduplicated and sorted. Edges are kept only where
    /// `keep` holds for both endpoints; dropped nodes end up isolated.
    fn adjacency(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (v, out) in adj.iter_mut().enumerate() {
            if !keep(v) {
                continue;
            }
            for s in 0..self.symbols {
                let w = self.succ[v * self.symbols + s];
                if keep(w) {
                    out.push(w);
                }
            }
            out.sort_unstable();
            out.dedup();
        }
        adj
    }

    /// Nodes from which some seed node is reachable (seeds included).
    fn backward_closure(&self, seeds: &[bool]) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.nodes.len()];
        for v in 0..self.nodes.len() {
            for s in 0..self.symbols {
                rev[self.successor(v, s)].push(v);
            }
        }
        let mut out = seeds.to_vec();
        let mut stack: Vec<usize> = (0..self.nodes.len()).filter(|&v| seeds[v]).collect();
        while let Some(v) = stack.pop() {
            for &u in &rev[v] {
                if !out[u] {
                    out[u] = true;
                    stack.push(u);
                }
            }
        }
        out
    }

    /// Shortest symbol sequence from `from` to `to`, exploring symbols in
    /// ascending order and restricted to nodes where `keep` holds (the
    /// endpoints must satisfy it). `min_len` of 1 asks for a non-empty path,
    /// which turns `from == to` into a shortest cycle search.
    fn shortest_path(
        &self,
        from: usize,
        to: usize,
        min_len: usize,
        keep: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        if from == to && min_len == 0 {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.nodes.len()];
        let mut queue = VecDeque::new();
        // expand the first layer by hand so a revisit of `from` is allowed
        for s in 0..self.symbols {
            let w = self.successor(from, s);
            if !keep(w) {
                continue;
            }
            if w == to {
                return Some(vec![s]);
            }
            if parent[w].is_none() && w != from {
                parent[w] = Some((from, s));
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in 0..self.symbols {
                let w = self.successor(v, s);
                if !keep(w) {
                    continue;
                }
                if w == to {
                    let mut syms = vec![s];
                    let mut cur = v;
                    while cur != from {
                        let (p, ps) = parent[cur].expect("bfs parent chain");
                        syms.push(ps);
                        cur = p;
                    }
                    syms.reverse();
                    return Some(syms);
                }
                if parent[w].is_none() && w != from {
                    parent[w] = Some((v, s));
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

fn check_alphabets(a: &Automaton, b: &Automaton) -> Result<(), Error> {
    if a.alphabet() == b.alphabet() {
        return Ok(());
    }
    let left: BTreeSet<&String> = a.alphabet().iter().collect();
    let right: BTreeSet<&String> = b.alphabet().iter().collect();
    let fmt = |only: Vec<&&String>| {
        only.iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    Err(Error::AlphabetMismatch {
        left_only: fmt(left.difference(&right).collect()),
        right_only: fmt(right.difference(&left).collect()),
    })
}

/// Pair graph of the pairs reachable from `(a.initial, b.initial)`, in BFS
/// discovery order (the initial pair is node 0).
pub fn product(a: &Automaton, b: &Automaton) -> Result<PairGraph, Error> {
    check_alphabets(a, b)?;
    let symbols = a.alphabet().len();
    let start = (a.initial(), b.initial());
    let mut nodes = vec![start];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut succ = Vec::new();
    let mut next = 0usize;
    while next < nodes.len() {
        let (p, q) = nodes[next];
        for s in 0..symbols {
            let t = (a.step(p, s), b.step(q, s));
            let id = *index.entry(t).or_insert_with(|| {
                nodes.push(t);
                nodes.len() - 1
            });
            succ.push(id);
        }
        next += 1;
    }
    Ok(PairGraph {
        symbols,
        nodes,
        index,
        succ,
        initial: 0,
    })
}

/// Pair graph over all ordered pairs of `Q₊ × Q₊`, reachable or not.
/// Quotients need verdicts for every pair of states of `a`, not just the
/// pairs reachable from the initial pair.
pub(crate) fn product_all_pairs(a: &Automaton, b: &Automaton) -> PairGraph {
    debug_assert_eq!(a.alphabet(), b.alphabet());
    let symbols = a.alphabet().len();
    let refs = |n: usize| {
        (0..n)
            .map(StateRef::Plain)
            .chain([StateRef::Top, StateRef::Bottom])
    };
    let mut nodes = Vec::with_capacity((a.state_count() + 2) * (b.state_count() + 2));
    for p in refs(a.state_count()) {
        for q in refs(b.state_count()) {
            nodes.push((p, q));
        }
    }
    let index: HashMap<(StateRef, StateRef), usize> =
        nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut succ = Vec::with_capacity(nodes.len() * symbols);
    for &(p, q) in &nodes {
        for s in 0..symbols {
            succ.push(index[&(a.step(p, s), b.step(q, s))]);
        }
    }
    let initial = index[&(a.initial(), b.initial())];
    PairGraph {
        symbols,
        nodes,
        index,
        succ,
        initial,
    }
}

fn non_trivial_flags(g: &PairGraph, comps: &[Vec<usize>], keep: &[bool]) -> Vec<bool> {
    comps
        .iter()
        .map(|comp| {
            if comp.len() > 1 {
                return true;
            }
            let v = comp[0];
            keep[v] && (0..g.symbols).any(|s| g.successor(v, s) == v)
        })
        .collect()
}

/// Decides whether `L(p1) ∖ L(p2)` is non-empty and returns a witness lasso
/// if so. Inputs are converted to parity internally.
///
/// The search is deterministic: for every even priority `e` of `p1` and odd
/// `o` of `p2` in ascending lexicographic order, the product is restricted
/// to pairs with `π₁ ≤ e` and `π₂ ≤ o`; a non-trivial SCC of the restriction
/// containing both a `π₁ = e` pair and a `π₂ = o` pair yields a cycle whose
/// maxima are exactly `(e, o)`, so prefix (shortest path from the initial
/// pair) plus cycle (shortest paths inside the SCC) witness the difference.
pub fn omega_diff_nonempty(p1: &Automaton, p2: &Automaton) -> Result<Option<DiffWitness>, Error> {
    check_alphabets(p1, p2)?;
    let p1 = p1.view_as(AcceptanceMode::Parity)?;
    let p2 = p2.view_as(AcceptanceMode::Parity)?;
    let g = product(&p1, &p2)?;
    let pri1: Vec<u32> = g.nodes().iter().map(|&(p, _)| p1.priority(p)).collect();
    let pri2: Vec<u32> = g.nodes().iter().map(|&(_, q)| p2.priority(q)).collect();
    let evens: BTreeSet<u32> = pri1.iter().copied().filter(|x| x % 2 == 0).collect();
    let odds: BTreeSet<u32> = pri2.iter().copied().filter(|x| x % 2 == 1).collect();

    for &e in &evens {
        for &o in &odds {
            let keep: Vec<bool> = (0..g.len()).map(|v| pri1[v] <= e && pri2[v] <= o).collect();
            let comps = tarjan(&g.adjacency(|v| keep[v]));
            let non_trivial = non_trivial_flags(&g, &comps, &keep);
            let candidate = comps
                .iter()
                .enumerate()
                .filter(|&(i, comp)| {
                    non_trivial[i]
                        && comp.iter().all(|&v| keep[v])
                        && comp.iter().any(|&v| pri1[v] == e)
                        && comp.iter().any(|&v| pri2[v] == o)
                })
                .min_by_key(|(_, comp)| *comp.iter().min().expect("non-empty scc"));
            let Some((_, comp)) = candidate else {
                continue;
            };
            let in_comp = {
                let mut m = vec![false; g.len()];
                for &v in comp {
                    m[v] = true;
                }
                m
            };
            let x = *comp.iter().filter(|&&v| pri1[v] == e).min().unwrap();
            let y = *comp.iter().filter(|&&v| pri2[v] == o).min().unwrap();
            let prefix = g
                .shortest_path(g.initial(), x, 0, |_| true)
                .expect("product nodes are reachable");
            let cycle = if x == y {
                g.shortest_path(x, x, 1, |v| in_comp[v])
                    .expect("non-trivial scc has a cycle")
            } else {
                let mut c = g
                    .shortest_path(x, y, 0, |v| in_comp[v])
                    .expect("scc is strongly connected");
                c.extend(
                    g.shortest_path(y, x, 0, |v| in_comp[v])
                        .expect("scc is strongly connected"),
                );
                c
            };
            let to_syms = |idx: Vec<usize>| -> Vec<String> {
                idx.into_iter().map(|s| p1.alphabet()[s].clone()).collect()
            };
            let lasso = Lasso::new(to_syms(prefix), to_syms(cycle))?;
            debug_assert!(p1.run_lasso(&lasso).unwrap().accepted);
            debug_assert!(!p2.run_lasso(&lasso).unwrap().accepted);
            return Ok(Some(DiffWitness {
                lasso,
                side: Side::Left,
            }));
        }
    }
    Ok(None)
}

/// ω-language equivalence: both differences are empty.
pub fn omega_equiv(a: &Automaton, b: &Automaton) -> Result<bool, Error> {
    Ok(omega_diff_nonempty(a, b)?.is_none() && omega_diff_nonempty(b, a)?.is_none())
}

/// Shortest finite word on which exactly one of the automata accepts,
/// together with the accepting side, or `None` if the finite languages are
/// equal. `⊤` counts as accepting and `⊥` as rejecting.
pub fn dfa_diff_word(a: &Automaton, b: &Automaton) -> Result<Option<(Vec<String>, Side)>, Error> {
    check_alphabets(a, b)?;
    let g = product(a, b)?;
    let discordant = |v: usize| {
        let (p, q) = g.nodes()[v];
        a.is_accepting_state(p) != b.is_accepting_state(q)
    };
    let side = |v: usize| {
        let (p, _) = g.nodes()[v];
        if a.is_accepting_state(p) {
            Side::Left
        } else {
            Side::Right
        }
    };
    // nodes are in BFS discovery order, so the first discordant node is also
    // one at minimal distance from the initial pair
    for v in 0..g.len() {
        if discordant(v) {
            let syms = g
                .shortest_path(g.initial(), v, 0, |_| true)
                .unwrap_or_default();
            let word = syms.into_iter().map(|s| a.alphabet()[s].clone()).collect();
            return Ok(Some((word, side(v))));
        }
    }
    Ok(None)
}

/// Finite-language equivalence via product reachability: no reachable pair
/// is discordant.
pub fn dfa_equiv(a: &Automaton, b: &Automaton) -> Result<bool, Error> {
    check_alphabets(a, b)?;
    let g = product(a, b)?;
    Ok((0..g.len()).all(|v| {
        let (p, q) = g.nodes()[v];
        a.is_accepting_state(p) == b.is_accepting_state(q)
    }))
}

/// Almost equivalence of two automata: on every ω-word the runs disagree on
/// final-state membership only finitely often. Decided on the reachable pair
/// graph — the automata are almost equivalent iff no discordant pair lies in
/// a non-trivial SCC.
pub fn almost_equiv(a: &Automaton, b: &Automaton) -> Result<bool, Error> {
    check_alphabets(a, b)?;
    let g = product(a, b)?;
    let keep = vec![true; g.len()];
    let comps = tarjan(&g.adjacency(|_| true));
    let non_trivial = non_trivial_flags(&g, &comps, &keep);
    for (i, comp) in comps.iter().enumerate() {
        if !non_trivial[i] {
            continue;
        }
        for &v in comp {
            let (p, q) = g.nodes()[v];
            if a.is_accepting_state(p) != b.is_accepting_state(q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A partition of the reachable states of an automaton plus the two sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of_plain: Vec<Option<usize>>,
    top_class: usize,
    bottom_class: usize,
    classes: Vec<Vec<StateRef>>,
}

impl Partition {
    /// Class of a state; `None` for plain states the partition does not
    /// cover (unreachable ones).
    pub fn class_of(&self, q: StateRef) -> Option<usize> {
        match q {
            StateRef::Top => Some(self.top_class),
            StateRef::Bottom => Some(self.bottom_class),
            StateRef::Plain(i) => self.class_of_plain.get(i).copied().flatten(),
        }
    }

    /// Member states per class, sorted within each class.
    pub fn classes(&self) -> &[Vec<StateRef>] {
        &self.classes
    }

    pub fn same_class(&self, p: StateRef, q: StateRef) -> bool {
        match (self.class_of(p), self.class_of(q)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Rebuilds a partition from explicit classes. Used by the text format;
    /// classes must be disjoint and contain `⊤` and `⊥` (not together).
    pub fn from_classes(classes: Vec<Vec<StateRef>>) -> Result<Self, Error> {
        let mut top_class = None;
        let mut bottom_class = None;
        let mut max_plain = None;
        let mut seen = BTreeSet::new();
        for (id, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Input(format!("partition class {id} is empty")));
            }
            for &q in class {
                if !seen.insert(q) {
                    return Err(Error::Input(format!(
                        "state {q} occurs twice in the partition"
                    )));
                }
                match q {
                    StateRef::Top => top_class = Some(id),
                    StateRef::Bottom => bottom_class = Some(id),
                    StateRef::Plain(i) => {
                        max_plain = Some(max_plain.map_or(i, |m: usize| m.max(i)))
                    }
                }
            }
        }
        let (Some(top_class), Some(bottom_class)) = (top_class, bottom_class) else {
            return Err(Error::Input("partition must cover TOP and BOT".into()));
        };
        if top_class == bottom_class {
            return Err(Error::Input("TOP and BOT may never share a class".into()));
        }
        let mut class_of_plain = vec![None; max_plain.map_or(0, |m| m + 1)];
        for (id, class) in classes.iter().enumerate() {
            for &q in class {
                if let StateRef::Plain(i) = q {
                    class_of_plain[i] = Some(id);
                }
            }
        }
        Ok(Partition {
            class_of_plain,
            top_class,
            bottom_class,
            classes,
        })
    }
}

/// Builds the partition of `a`'s reachable states (plus sinks) induced by an
/// equivalence relation given as a pairwise predicate. Classes are numbered
/// by first member in state order.
fn partition_from_relation(
    a: &Automaton,
    related: impl Fn(StateRef, StateRef) -> bool,
) -> Partition {
    let states: Vec<StateRef> = a
        .reachable()
        .into_iter()
        .map(StateRef::Plain)
        .chain([StateRef::Top, StateRef::Bottom])
        .collect();
    let mut classes: Vec<Vec<StateRef>> = Vec::new();
    let mut class_of_plain = vec![None; a.state_count()];
    let mut top_class = usize::MAX;
    let mut bottom_class = usize::MAX;
    for &q in &states {
        let id = match classes.iter().position(|c| related(c[0], q)) {
            Some(id) => {
                classes[id].push(q);
                id
            }
            None => {
                classes.push(vec![q]);
                classes.len() - 1
            }
        };
        match q {
            StateRef::Plain(i) => class_of_plain[i] = Some(id),
            StateRef::Top => top_class = id,
            StateRef::Bottom => bottom_class = id,
        }
    }
    Partition {
        class_of_plain,
        top_class,
        bottom_class,
        classes,
    }
}

/// Quotient of `a` under almost equivalence of states.
///
/// The pair graph `A⊺A` is built over all ordered pairs, a pair is
/// discordant if exactly one component is in `F ∪ {⊤}`, and `BAD` is the set
/// of pairs from which a discordant pair in a non-trivial SCC is reachable.
/// States `p, q` are almost equivalent iff `(p, q) ∉ BAD`.
pub fn almost_equiv_quotient(a: &Automaton) -> Partition {
    let g = product_all_pairs(a, a);
    let keep = vec![true; g.len()];
    let comps = tarjan(&g.adjacency(|_| true));
    let non_trivial = non_trivial_flags(&g, &comps, &keep);
    let mut seeds = vec![false; g.len()];
    for (i, comp) in comps.iter().enumerate() {
        if !non_trivial[i] {
            continue;
        }
        for &v in comp {
            let (p, q) = g.nodes()[v];
            if a.is_accepting_state(p) != a.is_accepting_state(q) {
                seeds[v] = true;
            }
        }
    }
    let bad = g.backward_closure(&seeds);
    partition_from_relation(a, |p, q| {
        !bad[g
            .node_index((p, q))
            .expect("full pair graph covers all pairs")]
    })
}

fn diff_from_seeds(g: &PairGraph, seeds: Vec<bool>) -> BTreeSet<(StateRef, StateRef)> {
    let bad = g.backward_closure(&seeds);
    (0..g.len())
        .filter(|&v| bad[v])
        .map(|v| g.nodes()[v])
        .collect()
}

/// All ordered pairs `(p, q)` with `L(B_p) ∖ L(B_q) ≠ ∅` for a Büchi
/// automaton, over all pairs of `Q₊`.
///
/// Pairs are decorated with priority 3 if the second component is accepting,
/// 2 if only the first is, and 1 otherwise. Priority-3 pairs are deleted;
/// a non-trivial SCC of the remainder containing a priority-2 pair carries a
/// cycle accepted by the first component and rejected by the second, and
/// every pair of the full graph that reaches such an SCC is in the
/// difference set.
pub fn buchi_diff_states(b: &Automaton) -> BTreeSet<(StateRef, StateRef)> {
    let g = product_all_pairs(b, b);
    let keep: Vec<bool> = g
        .nodes()
        .iter()
        .map(|&(_, q)| !b.is_accepting_state(q))
        .collect();
    let comps = tarjan(&g.adjacency(|v| keep[v]));
    let non_trivial = non_trivial_flags(&g, &comps, &keep);
    let mut seeds = vec![false; g.len()];
    for (i, comp) in comps.iter().enumerate() {
        let qualifies = non_trivial[i]
            && comp.iter().all(|&v| keep[v])
            && comp.iter().any(|&v| {
                let (p, _) = g.nodes()[v];
                b.is_accepting_state(p)
            });
        if qualifies {
            for &v in comp {
                seeds[v] = true;
            }
        }
    }
    diff_from_seeds(&g, seeds)
}

/// Co-Büchi counterpart of [`buchi_diff_states`]: under the `{2,3}` reading
/// a difference needs a reachable cycle on which every first component is
/// accepting (max `π₁ = 2`) while some second component is not (max
/// `π₂ = 3`).
fn cobuchi_diff_states(c: &Automaton) -> BTreeSet<(StateRef, StateRef)> {
    let g = product_all_pairs(c, c);
    let keep: Vec<bool> = g
        .nodes()
        .iter()
        .map(|&(p, _)| c.is_accepting_state(p))
        .collect();
    let comps = tarjan(&g.adjacency(|v| keep[v]));
    let non_trivial = non_trivial_flags(&g, &comps, &keep);
    let mut seeds = vec![false; g.len()];
    for (i, comp) in comps.iter().enumerate() {
        let qualifies = non_trivial[i]
            && comp.iter().all(|&v| keep[v])
            && comp.iter().any(|&v| {
                let (_, q) = g.nodes()[v];
                !c.is_accepting_state(q)
            });
        if qualifies {
            for &v in comp {
                seeds[v] = true;
            }
        }
    }
    diff_from_seeds(&g, seeds)
}

/// Generic parity-difference pairs over the full pair graph: the threshold
/// search of [`omega_diff_nonempty`] run for every source pair at once.
/// Works for any acceptance mode via the parity reading.
pub(crate) fn diff_states_generic(a: &Automaton, b: &Automaton) -> BTreeSet<(StateRef, StateRef)> {
    let g = product_all_pairs(a, b);
    let pri1: Vec<u32> = g.nodes().iter().map(|&(p, _)| a.priority(p)).collect();
    let pri2: Vec<u32> = g.nodes().iter().map(|&(_, q)| b.priority(q)).collect();
    let evens: BTreeSet<u32> = pri1.iter().copied().filter(|x| x % 2 == 0).collect();
    let odds: BTreeSet<u32> = pri2.iter().copied().filter(|x| x % 2 == 1).collect();
    let mut seeds = vec![false; g.len()];
    for &e in &evens {
        for &o in &odds {
            let keep: Vec<bool> = (0..g.len()).map(|v| pri1[v] <= e && pri2[v] <= o).collect();
            let comps = tarjan(&g.adjacency(|v| keep[v]));
            let non_trivial = non_trivial_flags(&g, &comps, &keep);
            for (i, comp) in comps.iter().enumerate() {
                let qualifies = non_trivial[i]
                    && comp.iter().all(|&v| keep[v])
                    && comp.iter().any(|&v| pri1[v] == e)
                    && comp.iter().any(|&v| pri2[v] == o);
                if qualifies {
                    for &v in comp {
                        seeds[v] = true;
                    }
                }
            }
        }
    }
    diff_from_seeds(&g, seeds)
}

/// Quotient of `a` under ω-language equivalence of states: `p ≡ q` iff
/// neither `(p, q)` nor `(q, p)` is in the difference set. Büchi automata
/// use the dedicated 3/2/1 product, co-Büchi automata the generic parity
/// machinery specialised to the `{2,3}` reading.
pub fn omega_equiv_quotient(a: &Automaton) -> Partition {
    let diff = match a.mode() {
        AcceptanceMode::CoBuchi => cobuchi_diff_states(a),
        AcceptanceMode::Parity => diff_states_generic(a, a),
        _ => buchi_diff_states(a),
    };
    partition_from_relation(a, |p, q| !diff.contains(&(p, q)) && !diff.contains(&(q, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Acceptance;

    fn sym(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn inf_many_a() -> Automaton {
        Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(0),
            vec![
                vec![StateRef::Plain(0), StateRef::Plain(1)],
                vec![StateRef::Plain(0), StateRef::Plain(1)],
            ],
            Acceptance::Buchi([0].into()),
        )
        .unwrap()
    }

    fn inf_many_b() -> Automaton {
        Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(1),
            vec![
                vec![StateRef::Plain(1), StateRef::Plain(0)],
                vec![StateRef::Plain(1), StateRef::Plain(0)],
            ],
            Acceptance::Buchi([0].into()),
        )
        .unwrap()
    }

    #[test]
    fn product_of_self_loop_with_itself() {
        let a = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(0)]],
            Acceptance::Finite([0].into()),
        )
        .unwrap();
        let g = product(&a, &a).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.nodes()[0], (StateRef::Plain(0), StateRef::Plain(0)));
    }

    #[test]
    fn product_pair_count_bound() {
        let a = Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(0),
            vec![
                vec![StateRef::Plain(1), StateRef::Plain(0)],
                vec![StateRef::Plain(0), StateRef::Plain(1)],
            ],
            Acceptance::Finite([0].into()),
        )
        .unwrap();
        let b = Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(0),
            vec![
                vec![StateRef::Plain(1), StateRef::Plain(2)],
                vec![StateRef::Plain(2), StateRef::Plain(0)],
                vec![StateRef::Plain(0), StateRef::Plain(1)],
            ],
            Acceptance::Finite([0].into()),
        )
        .unwrap();
        let g = product(&a, &b).unwrap();
        let plain_pairs = g
            .nodes()
            .iter()
            .filter(|(p, q)| !p.is_sink() && !q.is_sink())
            .count();
        assert!(plain_pairs <= 6);
    }

    #[test]
    fn product_of_dba_with_itself_stays_on_diagonal() {
        let a = inf_many_a();
        let g = product(&a, &a).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.nodes().iter().all(|(p, q)| p == q));
    }

    #[test]
    fn product_rejects_alphabet_mismatch() {
        let a = inf_many_a();
        let b = Automaton::new(
            sym(&["a", "c"]),
            StateRef::Top,
            vec![],
            Acceptance::Buchi(BTreeSet::new()),
        )
        .unwrap();
        match product(&a, &b) {
            Err(Error::AlphabetMismatch {
                left_only,
                right_only,
            }) => {
                assert_eq!(left_only, "b");
                assert_eq!(right_only, "c");
            }
            other => panic!("expected alphabet mismatch, got {other:?}"),
        }
    }

    #[test]
    fn omega_diff_empty_left_language() {
        let bot = inf_many_a().with_initial(StateRef::Bottom);
        let any = inf_many_a();
        assert!(omega_diff_nonempty(&bot, &any).unwrap().is_none());
    }

    #[test]
    fn omega_diff_universal_vs_empty() {
        let top = inf_many_a().with_initial(StateRef::Top);
        let bot = inf_many_a().with_initial(StateRef::Bottom);
        let w = omega_diff_nonempty(&top, &bot).unwrap().unwrap();
        assert!(w.lasso.prefix.is_empty());
        assert_eq!(w.lasso.cycle.len(), 1);
    }

    #[test]
    fn omega_diff_inf_a_vs_inf_b() {
        let w = omega_diff_nonempty(&inf_many_a(), &inf_many_b())
            .unwrap()
            .unwrap();
        assert_eq!(w.lasso.cycle, sym(&["a"]));
        assert!(inf_many_a().run_lasso(&w.lasso).unwrap().accepted);
        assert!(!inf_many_b().run_lasso(&w.lasso).unwrap().accepted);
    }

    #[test]
    fn omega_equiv_reflexive_and_distinguishes() {
        let a = inf_many_a();
        assert!(omega_equiv(&a, &a).unwrap());
        assert!(!omega_equiv(&a, &inf_many_b()).unwrap());
    }

    #[test]
    fn dfa_equiv_examples() {
        let a = inf_many_a().view_as(AcceptanceMode::Finite).unwrap();
        assert!(dfa_equiv(&a, &a).unwrap());
        let empty_f = Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(0), StateRef::Plain(0)]],
            Acceptance::Finite(BTreeSet::new()),
        )
        .unwrap();
        let bot = empty_f.with_initial(StateRef::Bottom);
        assert!(dfa_equiv(&empty_f, &bot).unwrap());
        let (word, side) = dfa_diff_word(&a, &bot).unwrap().unwrap();
        assert_eq!(side, Side::Left);
        assert!(a.run_finite(&word).unwrap().1);
    }

    #[test]
    fn almost_quotient_no_discordance() {
        // F = ∅, Top unreachable: all plain states and ⊥ in one class, ⊤ alone
        let a = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(1)], vec![StateRef::Plain(0)]],
            Acceptance::Finite(BTreeSet::new()),
        )
        .unwrap();
        let p = almost_equiv_quotient(&a);
        assert_eq!(p.classes().len(), 2);
        assert!(p.same_class(StateRef::Plain(0), StateRef::Plain(1)));
        assert!(p.same_class(StateRef::Plain(0), StateRef::Bottom));
        assert!(!p.same_class(StateRef::Top, StateRef::Bottom));
    }

    #[test]
    fn almost_quotient_discordant_self_loops() {
        // initial branches into an accepting and a rejecting self-loop
        let a = Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(0),
            vec![
                vec![StateRef::Plain(1), StateRef::Plain(2)],
                vec![StateRef::Plain(1), StateRef::Plain(1)],
                vec![StateRef::Plain(2), StateRef::Plain(2)],
            ],
            Acceptance::Finite([1].into()),
        )
        .unwrap();
        let p = almost_equiv_quotient(&a);
        assert!(!p.same_class(StateRef::Plain(1), StateRef::Plain(2)));
    }

    #[test]
    fn almost_equiv_single_finite_disagreement() {
        let a = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(1)], vec![StateRef::Plain(1)]],
            Acceptance::Finite([0].into()),
        )
        .unwrap();
        let b = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(1)], vec![StateRef::Plain(1)]],
            Acceptance::Finite(BTreeSet::new()),
        )
        .unwrap();
        assert!(almost_equiv(&a, &b).unwrap());
    }

    #[test]
    fn buchi_diff_states_examples() {
        // empty F: all left languages empty, no differences
        let empty = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(1)], vec![StateRef::Plain(0)]],
            Acceptance::Buchi(BTreeSet::new()),
        )
        .unwrap();
        let d = buchi_diff_states(&empty);
        assert!(d
            .iter()
            .all(|&(p, _)| p == StateRef::Top || p == StateRef::Bottom));

        let a = inf_many_a();
        let d = buchi_diff_states(&a);
        assert!(!d.contains(&(StateRef::Plain(0), StateRef::Plain(1))));
        assert!(!d.contains(&(StateRef::Plain(1), StateRef::Plain(0))));
        // diagonals are never in the set
        assert!(d.iter().all(|&(p, q)| p != q));
        // ⊤ differs from everything below it
        assert!(d.contains(&(StateRef::Top, StateRef::Plain(0))));
    }

    #[test]
    fn prefix_through_accepting_pair_is_found() {
        // L(B_0) = a^ω from state 0 of `one`; `two` accepts nothing but its
        // initial state is accepting, so the pair path to the witness cycle
        // passes a priority-3 pair. Reachability must use the full graph.
        let one = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(0)]],
            Acceptance::Buchi([0].into()),
        )
        .unwrap();
        let two = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![vec![StateRef::Plain(1)], vec![StateRef::Plain(1)]],
            Acceptance::Buchi([0].into()),
        )
        .unwrap();
        let w = omega_diff_nonempty(&one, &two).unwrap();
        assert!(w.is_some());
        // and the same through the state-pair machinery on a disjoint union
        let union = Automaton::new(
            sym(&["a"]),
            StateRef::Plain(0),
            vec![
                vec![StateRef::Plain(0)],
                vec![StateRef::Plain(2)],
                vec![StateRef::Plain(2)],
            ],
            Acceptance::Buchi([0, 1].into()),
        )
        .unwrap();
        let d = buchi_diff_states(&union);
        assert!(d.contains(&(StateRef::Plain(0), StateRef::Plain(1))));
    }

    #[test]
    fn omega_quotient_inf_many_a() {
        let p = omega_equiv_quotient(&inf_many_a());
        assert!(p.same_class(StateRef::Plain(0), StateRef::Plain(1)));
        assert!(!p.same_class(StateRef::Plain(0), StateRef::Top));
    }

    #[test]
    fn omega_quotient_two_universal_states_share_class() {
        // two all-accepting self-loop states in different SCCs accept Σ^ω
        let a = Automaton::new(
            sym(&["a", "b"]),
            StateRef::Plain(0),
            vec![
                vec![StateRef::Plain(1), StateRef::Plain(2)],
                vec![StateRef::Plain(1), StateRef::Plain(1)],
                vec![StateRef::Plain(2), StateRef::Plain(2)],
            ],
            Acceptance::Buchi([0, 1, 2].into()),
        )
        .unwrap();
        let p = omega_equiv_quotient(&a);
        assert!(p.same_class(StateRef::Plain(1), StateRef::Plain(2)));
        assert!(p.same_class(StateRef::Plain(1), StateRef::Top));
    }

    #[test]
    fn generic_matches_dedicated_on_buchi() {
        for a in [inf_many_a(), inf_many_b()] {
            assert_eq!(buchi_diff_states(&a), diff_states_generic(&a, &a));
        }
    }

    #[test]
    fn refinement_chain_on_random_automata() {
        // finite-language equivalence refines almost equivalence, which
        // refines ω-language equivalence
        let mut rng = crate::random::seeded(0xcafe);
        for _ in 0..25 {
            let a = crate::random::dfa(&mut rng, 10, 3);
            let almost = almost_equiv_quotient(&a);
            let omega = omega_equiv_quotient(&a.view_as(AcceptanceMode::Buchi).unwrap());
            let states: Vec<StateRef> = a
                .reachable()
                .into_iter()
                .map(StateRef::Plain)
                .chain([StateRef::Top, StateRef::Bottom])
                .collect();
            for &p in &states {
                for &q in &states {
                    let fin = dfa_equiv(&a.with_initial(p), &a.with_initial(q)).unwrap();
                    if fin {
                        assert!(almost.same_class(p, q), "finite ⊄ almost on {a:?}");
                    }
                    if almost.same_class(p, q) {
                        assert!(omega.same_class(p, q), "almost ⊄ omega on {a:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn quotients_are_congruences() {
        // if p ≡ q then δ(p,σ) ≡ δ(q,σ) for every symbol
        let mut rng = crate::random::seeded(0xdada);
        for i in 0..40 {
            let a = if i % 2 == 0 {
                crate::random::dfa(&mut rng, 6, 2)
            } else {
                crate::random::dba(&mut rng, 6, 2)
            };
            for partition in [almost_equiv_quotient(&a), omega_equiv_quotient(&a)] {
                for class in partition.classes() {
                    for &p in class {
                        for &q in class {
                            for s in 0..a.alphabet().len() {
                                assert!(
                                    partition.same_class(a.step(p, s), a.step(q, s)),
                                    "congruence broken at ({p}, {q}) on {a:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_replay_on_random_pairs() {
        let mut rng = crate::random::seeded(0xbeef);
        for _ in 0..200 {
            let a = crate::random::dba(&mut rng, 6, 2);
            let b = crate::random::dba(&mut rng, 6, 2);
            if let Some(w) = omega_diff_nonempty(&a, &b).unwrap() {
                assert_eq!(w.side, Side::Left);
                assert!(a.run_lasso(&w.lasso).unwrap().accepted);
                assert!(!b.run_lasso(&w.lasso).unwrap().accepted);
            }
        }
    }

    #[test]
    fn quotients_are_equivalences() {
        let a = inf_many_a();
        for p in [almost_equiv_quotient(&a), omega_equiv_quotient(&a)] {
            let covered: Vec<StateRef> = p.classes().iter().flatten().copied().collect();
            for &x in &covered {
                for &y in &covered {
                    assert_eq!(p.same_class(x, y), p.same_class(y, x));
                    for &z in &covered {
                        if p.same_class(x, y) && p.same_class(y, z) {
                            assert!(p.same_class(x, z));
                        }
                    }
                }
            }
        }
    }
}
