//! DFA minimisation, relative minimisation under almost equivalence, the
//! ω-language-equivalence strengthening for Büchi/co-Büchi automata, weak
//! automata, and the greedy state merge.
//!
//! The relative minimisation pipeline is: minimise the finite-word view,
//! rank states by their SCC in topological order (sinks above everything),
//! quotient by almost equivalence, pick the maximal-rank representative per
//! class, rewire transitions that leave their SCC to the representatives,
//! and minimise the finite-word view once more. Swapping the quotient for
//! ω-language equivalence gives the Büchi/co-Büchi reduction, which is
//! language preserving and leaves ω-equivalent states in a common SCC.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{Acceptance, AcceptanceMode, Automaton, StateRef};
use crate::equiv::{almost_equiv_quotient, omega_equiv, omega_equiv_quotient, Partition};
use crate::error::Error;
use crate::scc::{self, tarjan};

/// The SCC-condensation ranking used to pick representatives: states in one
/// SCC share a rank, reachability never decreases it, and the sinks sit
/// strictly above every plain state on a single shared rank (they are never
/// candidates of a common class, so their mutual order is irrelevant).
#[derive(Debug, Clone)]
pub struct Ranking {
    plain: Vec<Option<usize>>,
    sink: usize,
}

impl Ranking {
    /// Rank of a state; `None` for unreachable plain states.
    pub fn rank(&self, q: StateRef) -> Option<usize> {
        match q {
            StateRef::Plain(i) => self.plain.get(i).copied().flatten(),
            _ => Some(self.sink),
        }
    }
}

fn f_mode_set(a: &Automaton) -> Result<&BTreeSet<usize>, Error> {
    match a.acceptance() {
        Acceptance::Finite(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => Ok(f),
        Acceptance::Parity(_) => Err(Error::Mode(
            "operation needs a finite/Büchi/co-Büchi automaton, got parity".into(),
        )),
    }
}

fn with_f_set(a: &Automaton, f: BTreeSet<usize>) -> Automaton {
    let acceptance = match a.mode() {
        AcceptanceMode::Finite => Acceptance::Finite(f),
        AcceptanceMode::Buchi => Acceptance::Buchi(f),
        AcceptanceMode::CoBuchi => Acceptance::CoBuchi(f),
        AcceptanceMode::Parity => unreachable!("checked by f_mode_set"),
    };
    let rows = (0..a.state_count())
        .map(|q| {
            (0..a.alphabet().len())
                .map(|s| a.step(StateRef::Plain(q), s))
                .collect()
        })
        .collect();
    Automaton::new(a.alphabet().to_vec(), a.initial(), rows, acceptance)
        .expect("rebuilding a valid automaton")
}

/// Coarsest stable refinement of accepting/rejecting, Hopcroft style.
/// `accepting` must be non-empty and not full (guaranteed by the sinks).
fn refine_partition(
    node_count: usize,
    symbols: usize,
    step: impl Fn(usize, usize) -> usize,
    accepting: &[bool],
) -> Vec<usize> {
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); node_count * symbols];
    for q in 0..node_count {
        for c in 0..symbols {
            rev[step(q, c) * symbols + c].push(q);
        }
    }
    let mut block_of = vec![0usize; node_count];
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
    for q in 0..node_count {
        let b = if accepting[q] { 0 } else { 1 };
        block_of[q] = b;
        blocks[b].push(q);
    }
    let mut in_work = vec![true, true];
    let mut work: VecDeque<usize> = VecDeque::from([0, 1]);
    let mut mark = vec![false; node_count];
    while let Some(splitter) = work.pop_front() {
        in_work[splitter] = false;
        let members = blocks[splitter].clone();
        for c in 0..symbols {
            let mut preimage = Vec::new();
            for &m in &members {
                for &q in &rev[m * symbols + c] {
                    if !mark[q] {
                        mark[q] = true;
                        preimage.push(q);
                    }
                }
            }
            if preimage.is_empty() {
                continue;
            }
            let mut hit: HashMap<usize, Vec<usize>> = HashMap::new();
            for &q in &preimage {
                hit.entry(block_of[q]).or_default().push(q);
            }
            let mut ids: Vec<usize> = hit.keys().copied().collect();
            ids.sort_unstable();
            for y in ids {
                let moved = &hit[&y];
                if moved.len() == blocks[y].len() {
                    continue;
                }
                let new_id = blocks.len();
                for &q in moved {
                    block_of[q] = new_id;
                }
                blocks[y].retain(|&q| block_of[q] == y);
                let mut moved = moved.clone();
                moved.sort_unstable();
                blocks.push(moved);
                in_work.push(false);
                let enqueue = if in_work[y] {
                    new_id
                } else if blocks[y].len() <= blocks[new_id].len() {
                    y
                } else {
                    new_id
                };
                in_work[enqueue] = true;
                work.push_back(enqueue);
            }
            for &q in &preimage {
                mark[q] = false;
            }
        }
    }
    block_of
}

/// Minimal DFA for the language of `a` over its reachable states, computed
/// with Hopcroft's partition refinement. The sinks take part in the
/// refinement, so plain states whose language is `Σ*` or `∅` are folded into
/// `⊤` and `⊥` — only plain states count for size. The acceptance mode is
/// preserved (any `F`-based mode; merging finite-language-equivalent states
/// keeps the `F`-membership sequence of every run). Output is in canonical
/// form.
pub fn hopcroft_min(a: &Automaton) -> Result<Automaton, Error> {
    f_mode_set(a)?;
    let reach = a.reachable();
    let k = reach.len();
    let node_of_plain = {
        let mut m = vec![usize::MAX; a.state_count()];
        for (i, &q) in reach.iter().enumerate() {
            m[q] = i;
        }
        m
    };
    let symbols = a.alphabet().len();
    let to_node = |r: StateRef| match r {
        StateRef::Plain(i) => node_of_plain[i],
        StateRef::Top => k,
        StateRef::Bottom => k + 1,
    };
    let step = |v: usize, c: usize| {
        if v >= k {
            v
        } else {
            to_node(a.step(StateRef::Plain(reach[v]), c))
        }
    };
    let accepting: Vec<bool> = (0..k)
        .map(|v| a.is_accepting_state(StateRef::Plain(reach[v])))
        .chain([true, false])
        .collect();
    let block_of = refine_partition(k + 2, symbols, step, &accepting);
    let top_block = block_of[k];
    let bottom_block = block_of[k + 1];

    // plain result states: blocks without a sink, in order of first member
    let mut state_of_block: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    for (v, &b) in block_of.iter().enumerate().take(k) {
        if b == top_block || b == bottom_block {
            continue;
        }
        state_of_block.entry(b).or_insert_with(|| {
            reps.push(v);
            reps.len() - 1
        });
    }
    let map_block = |b: usize| -> StateRef {
        if b == top_block {
            StateRef::Top
        } else if b == bottom_block {
            StateRef::Bottom
        } else {
            StateRef::Plain(state_of_block[&b])
        }
    };
    let rows: Vec<Vec<StateRef>> = reps
        .iter()
        .map(|&v| {
            (0..symbols)
                .map(|c| map_block(block_of[step(v, c)]))
                .collect()
        })
        .collect();
    let f: BTreeSet<usize> = reps
        .iter()
        .enumerate()
        .filter(|&(_, &v)| accepting[v])
        .map(|(i, _)| i)
        .collect();
    let initial = match a.initial() {
        StateRef::Plain(i) => map_block(block_of[node_of_plain[i]]),
        sink => sink,
    };
    let acceptance = match a.mode() {
        AcceptanceMode::Finite => Acceptance::Finite(f),
        AcceptanceMode::Buchi => Acceptance::Buchi(f),
        AcceptanceMode::CoBuchi => Acceptance::CoBuchi(f),
        AcceptanceMode::Parity => unreachable!(),
    };
    let out = Automaton::new(a.alphabet().to_vec(), initial, rows, acceptance)?;
    Ok(out.canonical_form())
}

/// Ranking of `a`'s reachable states: the topological index of their SCC,
/// with both sinks on one rank strictly above all plain states.
pub fn build_ranking(a: &Automaton) -> Ranking {
    let d = scc::decompose(a);
    let plain = (0..a.state_count())
        .map(|q| d.scc_of(StateRef::Plain(q)).map(|s| d.topo_rank(s)))
        .collect();
    // the sinks hold the two maximal ranks; collapse them onto the lower one
    let sink = d.count().saturating_sub(2);
    Ranking { plain, sink }
}

/// One representative per class: maximal rank, ties broken by the smallest
/// state (plain states before sinks, ascending index).
pub fn pick_representatives(partition: &Partition, ranking: &Ranking) -> Vec<StateRef> {
    partition
        .classes()
        .iter()
        .map(|class| {
            let mut best: Option<(usize, StateRef)> = None;
            for &q in class {
                let r = ranking
                    .rank(q)
                    .expect("partition and ranking cover the same states");
                // members are sorted, so strict improvement keeps the
                // smallest state among equals
                if best.is_none_or(|(br, _)| r > br) {
                    best = Some((r, q));
                }
            }
            best.expect("classes are non-empty").1
        })
        .collect()
}

/// Construction step: the initial state moves to its class representative,
/// and a transition target `q'` is kept only when the source lies in the
/// same SCC as `rep[class(q')]`; otherwise the edge is redirected to that
/// representative. Acceptance is unchanged.
pub fn rewire(b: &Automaton, partition: &Partition, reps: &[StateRef]) -> Automaton {
    let d = scc::decompose(b);
    let symbols = b.alphabet().len();
    let rows: Vec<Vec<StateRef>> = (0..b.state_count())
        .map(|q| {
            (0..symbols)
                .map(|s| {
                    let t = b.step(StateRef::Plain(q), s);
                    match partition.class_of(t) {
                        Some(cls) => {
                            let rep = reps[cls];
                            if d.same_scc(StateRef::Plain(q), rep) {
                                t
                            } else {
                                rep
                            }
                        }
                        // target not covered: source is unreachable, keep row
                        None => t,
                    }
                })
                .collect()
        })
        .collect();
    let initial = reps[partition
        .class_of(b.initial())
        .expect("initial state is covered")];
    Automaton::new(b.alphabet().to_vec(), initial, rows, b.acceptance().clone())
        .expect("rewiring preserves validity")
}

/// Minimal automaton almost equivalent to `a`: Hopcroft, ranking, almost
/// equivalence quotient, representatives, rewire, Hopcroft. The result is
/// almost equivalent to the input and no strictly smaller automaton is; any
/// two almost-equivalent states of the result share an SCC. Works on any
/// `F`-based mode and preserves it (for Büchi/co-Büchi the result is then
/// ω-language equivalent).
pub fn relative_minimise(a: &Automaton) -> Result<Automaton, Error> {
    let b = hopcroft_min(a)?;
    let ranking = build_ranking(&b);
    let partition = almost_equiv_quotient(&b);
    let reps = pick_representatives(&partition, &ranking);
    let c = rewire(&b, &partition, &reps);
    hopcroft_min(&c)
}

/// State-space reduction of a Büchi or co-Büchi automaton: the relative
/// minimisation pipeline with the ω-language-equivalence quotient in place
/// of almost equivalence. The final pass merges states that are equivalent
/// as finite automata; merging ω-equivalent states in general is unsound and
/// is left to the verified [`greedy_merge`]. The result is ω-language
/// equivalent to the input.
pub fn reduce_omega(a: &Automaton) -> Result<Automaton, Error> {
    match a.mode() {
        AcceptanceMode::Buchi | AcceptanceMode::CoBuchi => {}
        m => {
            return Err(Error::Mode(format!(
                "reduce_omega needs a Büchi or co-Büchi automaton, got {m}"
            )))
        }
    }
    let b = hopcroft_min(a)?;
    let ranking = build_ranking(&b);
    let partition = omega_equiv_quotient(&b);
    let reps = pick_representatives(&partition, &ranking);
    let c = rewire(&b, &partition, &reps);
    hopcroft_min(&c)
}

/// True iff within every reachable SCC all states agree on `F`-membership.
pub fn is_weak(a: &Automaton) -> bool {
    let d = scc::decompose(a);
    d.sccs().iter().all(|scc| {
        let mut flags = scc.iter().map(|&q| a.is_accepting_state(q));
        let first = flags.next().expect("SCCs are non-empty");
        flags.all(|f| f == first)
    })
}

/// No cycle within the induced subgraph on `set` (self-loops count).
fn induced_acyclic(a: &Automaton, set: &BTreeSet<usize>) -> bool {
    let order: Vec<usize> = set.iter().copied().collect();
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let mut adj = vec![Vec::new(); order.len()];
    for (i, &q) in order.iter().enumerate() {
        for s in 0..a.alphabet().len() {
            if let StateRef::Plain(t) = a.step(StateRef::Plain(q), s) {
                if let Some(&j) = pos.get(&t) {
                    adj[i].push(j);
                }
            }
        }
        adj[i].sort_unstable();
        adj[i].dedup();
    }
    tarjan(&adj)
        .iter()
        .all(|comp| comp.len() == 1 && !adj[comp[0]].contains(&comp[0]))
}

/// Homogenises weak SCCs without changing the ω-language. In a Büchi
/// automaton a non-trivial SCC whose rejecting part is acyclic traps every
/// run into visiting `F` infinitely often, so the whole SCC can be made
/// accepting; dually, in a co-Büchi automaton an SCC whose accepting part is
/// acyclic can be made fully rejecting. Mixed SCCs with both an `F`-free
/// cycle and an `F` state are not weak and stay untouched, as do trivial
/// SCCs (their flag never affects ω-acceptance).
pub fn normalize_weak_sccs(a: &Automaton) -> Result<Automaton, Error> {
    match a.mode() {
        AcceptanceMode::Buchi | AcceptanceMode::CoBuchi => {}
        m => {
            return Err(Error::Mode(format!(
                "weak-SCC normalisation needs a Büchi or co-Büchi automaton, got {m}"
            )))
        }
    }
    let d = scc::decompose(a);
    let mut f = f_mode_set(a)?.clone();
    for (id, members) in d.sccs().iter().enumerate() {
        if d.is_trivial(id) {
            continue;
        }
        let plains: BTreeSet<usize> = members
            .iter()
            .filter_map(|&q| match q {
                StateRef::Plain(i) => Some(i),
                _ => None,
            })
            .collect();
        if plains.is_empty() {
            continue; // sink SCC
        }
        match a.mode() {
            AcceptanceMode::Buchi => {
                let rejecting: BTreeSet<usize> =
                    plains.iter().copied().filter(|q| !f.contains(q)).collect();
                if induced_acyclic(a, &rejecting) {
                    f.extend(plains);
                }
            }
            AcceptanceMode::CoBuchi => {
                let accepting: BTreeSet<usize> =
                    plains.iter().copied().filter(|q| f.contains(q)).collect();
                if induced_acyclic(a, &accepting) {
                    for q in plains {
                        f.remove(&q);
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(with_f_set(a, f))
}

/// Minimises a weak automaton: weak-SCC normalisation followed by relative
/// minimisation of the finite-word view, re-labelled to the input mode.
/// Language-equivalent weak automata are almost equivalent and automata
/// almost equivalent to a weak automaton are weak, so the result is a
/// minimal weak automaton for the language. With `require_weak` a non-weak
/// input is a mode error (otherwise the result is still ω-equivalent, just
/// without the minimality claim).
pub fn weak_minimise(a: &Automaton, require_weak: bool) -> Result<Automaton, Error> {
    if require_weak && !is_weak(a) {
        return Err(Error::Mode("automaton is not weak".into()));
    }
    relative_minimise(&normalize_weak_sccs(a)?)
}

/// `A^{p▷q}`: every transition into `p` is redirected to `q`, the initial
/// state moves if it was `p`, and `p` is removed (states above shift down).
pub fn merge_states(a: &Automaton, p: usize, q: usize) -> Automaton {
    assert!(p != q && p < a.state_count() && q < a.state_count());
    let shift = |i: usize| if i > p { i - 1 } else { i };
    let map = |t: StateRef| match t {
        StateRef::Plain(i) if i == p => StateRef::Plain(shift(q)),
        StateRef::Plain(i) => StateRef::Plain(shift(i)),
        sink => sink,
    };
    let rows: Vec<Vec<StateRef>> = (0..a.state_count())
        .filter(|&i| i != p)
        .map(|i| {
            (0..a.alphabet().len())
                .map(|s| map(a.step(StateRef::Plain(i), s)))
                .collect()
        })
        .collect();
    let initial = match a.initial() {
        StateRef::Plain(i) => map(StateRef::Plain(i)),
        sink => sink,
    };
    let acceptance = match a.acceptance() {
        Acceptance::Finite(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => {
            let f: BTreeSet<usize> = f.iter().filter(|&&i| i != p).map(|&i| shift(i)).collect();
            match a.mode() {
                AcceptanceMode::Finite => Acceptance::Finite(f),
                AcceptanceMode::Buchi => Acceptance::Buchi(f),
                AcceptanceMode::CoBuchi => Acceptance::CoBuchi(f),
                AcceptanceMode::Parity => unreachable!(),
            }
        }
        Acceptance::Parity(pri) => Acceptance::Parity(
            pri.iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, &x)| x)
                .collect(),
        ),
    };
    Automaton::new(a.alphabet().to_vec(), initial, rows, acceptance)
        .expect("merge preserves validity")
}

/// Greedy verified merging: candidate pairs `(p, q)` are taken in ascending
/// order among distinct states of a common SCC and a common ω-equivalence
/// class; `A^{p▷q}` replaces the automaton only if it stays ω-language
/// equivalent (merging equivalent states can break the language, so every
/// merge is checked), and the scan restarts after each success. Intended to
/// run on the output of [`reduce_omega`], whose SCCs can be treated in
/// isolation.
pub fn greedy_merge(a: &Automaton) -> Result<Automaton, Error> {
    match a.mode() {
        AcceptanceMode::Buchi | AcceptanceMode::CoBuchi => {}
        m => {
            return Err(Error::Mode(format!(
                "greedy_merge needs a Büchi or co-Büchi automaton, got {m}"
            )))
        }
    }
    let mut cur = a.clone();
    'restart: loop {
        let d = scc::decompose(&cur);
        let partition = omega_equiv_quotient(&cur);
        for p in 0..cur.state_count() {
            for q in 0..cur.state_count() {
                if p == q {
                    continue;
                }
                let (rp, rq) = (StateRef::Plain(p), StateRef::Plain(q));
                if !d.same_scc(rp, rq) || !partition.same_class(rp, rq) {
                    continue;
                }
                let candidate = merge_states(&cur, p, q);
                if omega_equiv(&cur, &candidate)? {
                    cur = candidate;
                    continue 'restart;
                }
            }
        }
        return Ok(cur);
    }
}
