//! Seeded random generation of automata, graphs, and lassos. Only used by
//! the test suites, but kept in the library so every suite draws from the
//! same distributions.

use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::automaton::{Acceptance, AcceptanceMode, Automaton, Lasso, StateRef};
use crate::hardness::{NiceGraph, SimpleGraph};
use crate::scc;

/// A reproducible generator.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` single-letter symbols starting at `a`.
pub fn alphabet(k: usize) -> Vec<String> {
    assert!(k <= 26);
    (0..k)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

fn random_target(rng: &mut ChaCha8Rng, n: usize) -> StateRef {
    // sinks are two extra targets, so they appear with weight 1 each
    match rng.gen_range(0..n + 2) {
        t if t < n => StateRef::Plain(t),
        t if t == n => StateRef::Top,
        _ => StateRef::Bottom,
    }
}

fn random_structure(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    symbols: usize,
) -> (usize, StateRef, Vec<Vec<StateRef>>) {
    let n = rng.gen_range(0..=max_states);
    let initial = if n == 0 {
        if rng.gen_bool(0.5) {
            StateRef::Top
        } else {
            StateRef::Bottom
        }
    } else {
        StateRef::Plain(rng.gen_range(0..n))
    };
    let rows = (0..n)
        .map(|_| (0..symbols).map(|_| random_target(rng, n)).collect())
        .collect();
    (n, initial, rows)
}

fn random_f(rng: &mut ChaCha8Rng, n: usize) -> std::collections::BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Random DFA with up to `max_states` plain states.
pub fn dfa(rng: &mut ChaCha8Rng, max_states: usize, symbols: usize) -> Automaton {
    let (n, initial, rows) = random_structure(rng, max_states, symbols);
    Automaton::new(
        alphabet(symbols),
        initial,
        rows,
        Acceptance::Finite(random_f(rng, n)),
    )
    .expect("generated automaton is valid")
}

/// Random deterministic Büchi automaton.
pub fn dba(rng: &mut ChaCha8Rng, max_states: usize, symbols: usize) -> Automaton {
    let (n, initial, rows) = random_structure(rng, max_states, symbols);
    Automaton::new(
        alphabet(symbols),
        initial,
        rows,
        Acceptance::Buchi(random_f(rng, n)),
    )
    .expect("generated automaton is valid")
}

/// Random deterministic co-Büchi automaton.
pub fn dca(rng: &mut ChaCha8Rng, max_states: usize, symbols: usize) -> Automaton {
    let (n, initial, rows) = random_structure(rng, max_states, symbols);
    Automaton::new(
        alphabet(symbols),
        initial,
        rows,
        Acceptance::CoBuchi(random_f(rng, n)),
    )
    .expect("generated automaton is valid")
}

/// Random deterministic parity automaton with priorities in `0..=max_priority`.
pub fn dpa(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    symbols: usize,
    max_priority: u32,
) -> Automaton {
    let (n, initial, rows) = random_structure(rng, max_states, symbols);
    let priorities = (0..n).map(|_| rng.gen_range(0..=max_priority)).collect();
    Automaton::new(
        alphabet(symbols),
        initial,
        rows,
        Acceptance::Parity(priorities),
    )
    .expect("generated automaton is valid")
}

/// Random weak automaton: random structure, then one acceptance flag per
/// SCC so every reachable SCC is homogeneous.
pub fn weak(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    symbols: usize,
    mode: AcceptanceMode,
) -> Automaton {
    let a = match mode {
        AcceptanceMode::CoBuchi => dca(rng, max_states, symbols),
        _ => dba(rng, max_states, symbols),
    };
    let d = scc::decompose(&a);
    let scc_flag: Vec<bool> = (0..d.count()).map(|_| rng.gen_bool(0.5)).collect();
    let f = (0..a.state_count())
        .filter(|&q| d.scc_of(StateRef::Plain(q)).is_some_and(|s| scc_flag[s]))
        .collect();
    let rows = (0..a.state_count())
        .map(|q| {
            (0..symbols)
                .map(|s| a.step(StateRef::Plain(q), s))
                .collect()
        })
        .collect();
    let acceptance = match mode {
        AcceptanceMode::CoBuchi => Acceptance::CoBuchi(f),
        _ => Acceptance::Buchi(f),
    };
    Automaton::new(alphabet(symbols), a.initial(), rows, acceptance)
        .expect("generated automaton is valid")
}

/// Random lasso over the given alphabet: prefix up to `max_prefix`, loop of
/// one to `max_cycle` symbols.
pub fn lasso(
    rng: &mut ChaCha8Rng,
    alphabet: &[String],
    max_prefix: usize,
    max_cycle: usize,
) -> Lasso {
    let pick = |rng: &mut ChaCha8Rng| alphabet[rng.gen_range(0..alphabet.len())].clone();
    let prefix = (0..rng.gen_range(0..=max_prefix))
        .map(|_| pick(rng))
        .collect();
    let cycle = (0..rng.gen_range(1..=max_cycle))
        .map(|_| pick(rng))
        .collect();
    Lasso::new(prefix, cycle).expect("cycle is non-empty")
}

/// Random simple graph with one to `max_vertices` vertices named `v0`, `v1`,
/// ...; possibly disconnected.
pub fn simple_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> SimpleGraph {
    let n = rng.gen_range(1..=max_vertices);
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let density = rng.gen_range(0.2..0.8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(vertices, edges).expect("generated graph is simple")
}

/// Random nice graph: a random spanning tree keeps it connected, extra
/// edges are sprinkled on top, and the initial vertex is random.
pub fn nice_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> NiceGraph {
    assert!(max_vertices >= 2);
    let n = rng.gen_range(2..=max_vertices);
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.3) {
                edges.push((u, v));
            }
        }
    }
    let graph = SimpleGraph::new(vertices, edges).expect("generated graph is simple");
    NiceGraph::new(graph, rng.gen_range(0..n)).expect("spanning tree keeps it nice")
}
