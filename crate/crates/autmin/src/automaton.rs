//! Deterministic automata over finite and infinite words.
//!
//! An [`Automaton`] is a total deterministic transition structure over a
//! finite alphabet together with one of four acceptance modes: finite-word
//! acceptance by final state, Büchi, co-Büchi, or parity. Besides its plain
//! states (dense indices `0..n`) every automaton has two implicit sink
//! states: `⊤` (immediate acceptance) and `⊥` (immediate rejection). The
//! sinks self-loop on every symbol, `⊤` is accepting / has an even priority,
//! `⊥` is rejecting / has an odd priority. Neither the sink transitions nor
//! their acceptance are stored; they are rules.
//!
//! Plain states are the only states counted in size comparisons.

use std::collections::BTreeSet;

use crate::error::Error;

/// Reference to a state: a plain state by index, or one of the two sinks.
///
/// The derived order is `Plain(0) < Plain(1) < ... < Top < Bottom`, which is
/// the tie-break order used everywhere an operation has to pick a state
/// deterministically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateRef {
    /// A stored state, index `< state_count`.
    Plain(usize),
    /// The accepting sink, written `TOP` in the text format.
    Top,
    /// The rejecting sink, written `BOT` in the text format.
    Bottom,
}

impl StateRef {
    pub fn is_sink(self) -> bool {
        matches!(self, StateRef::Top | StateRef::Bottom)
    }
}

impl std::fmt::Display for StateRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateRef::Plain(q) => write!(f, "{q}"),
            StateRef::Top => write!(f, "TOP"),
            StateRef::Bottom => write!(f, "BOT"),
        }
    }
}

/// The four acceptance modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcceptanceMode {
    Finite,
    Buchi,
    CoBuchi,
    Parity,
}

impl std::fmt::Display for AcceptanceMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AcceptanceMode::Finite => "finite",
            AcceptanceMode::Buchi => "buchi",
            AcceptanceMode::CoBuchi => "cobuchi",
            AcceptanceMode::Parity => "parity",
        };
        f.write_str(s)
    }
}

/// Acceptance condition, stored for plain states only.
///
/// For the `F`-based modes the sinks are handled by rule: `⊤ ∈ F`, `⊥ ∉ F`.
/// For parity, `⊤` has priority 0 and `⊥` has priority 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    Finite(BTreeSet<usize>),
    Buchi(BTreeSet<usize>),
    CoBuchi(BTreeSet<usize>),
    /// Priority per plain state, indexed by state.
    Parity(Vec<u32>),
}

impl Acceptance {
    pub fn mode(&self) -> AcceptanceMode {
        match self {
            Acceptance::Finite(_) => AcceptanceMode::Finite,
            Acceptance::Buchi(_) => AcceptanceMode::Buchi,
            Acceptance::CoBuchi(_) => AcceptanceMode::CoBuchi,
            Acceptance::Parity(_) => AcceptanceMode::Parity,
        }
    }
}

/// An ultimately periodic ω-word: a finite prefix followed by a non-empty
/// loop repeated forever. The universal witness and counterexample format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

impl Lasso {
    pub fn new(prefix: Vec<String>, cycle: Vec<String>) -> Result<Self, Error> {
        if cycle.is_empty() {
            return Err(Error::Input("lasso loop must be non-empty".into()));
        }
        Ok(Lasso { prefix, cycle })
    }
}

/// Result of running a lasso through an automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LassoRun {
    pub accepted: bool,
    /// Maximum priority on the state cycle the run settles into.
    pub cycle_max_priority: u32,
}

/// A deterministic automaton with total transitions and implicit `⊤`/`⊥`
/// sinks. See the module documentation for the conventions.
///
/// The alphabet is canonicalised (sorted, deduplicated is an error) at
/// construction, so two automata over the same symbols always agree on
/// symbol indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Vec<String>,
    state_count: usize,
    initial: StateRef,
    /// Row-major: `transitions[q * |Σ| + s]`.
    transitions: Vec<StateRef>,
    acceptance: Acceptance,
}

impl Automaton {
    /// Builds an automaton. `transitions[q][s]` is the successor of state `q`
    /// on `alphabet[s]` *in the order the alphabet is given*; the constructor
    /// sorts the alphabet and permutes the columns accordingly.
    ///
    /// Unreachable states are permitted. Parity priorities are not bounded
    /// here ([`Automaton::normalize_priorities`] restores `max ≤ n+1`); the
    /// text format parser does enforce the bound.
    pub fn new(
        alphabet: Vec<String>,
        initial: StateRef,
        transitions: Vec<Vec<StateRef>>,
        acceptance: Acceptance,
    ) -> Result<Self, Error> {
        if alphabet.is_empty() {
            return Err(Error::Input("alphabet must not be empty".into()));
        }
        if alphabet.iter().any(|s| s.is_empty()) {
            return Err(Error::Input("alphabet symbols must be non-empty".into()));
        }
        let mut order: Vec<usize> = (0..alphabet.len()).collect();
        order.sort_by(|&i, &j| alphabet[i].cmp(&alphabet[j]));
        for w in order.windows(2) {
            if alphabet[w[0]] == alphabet[w[1]] {
                return Err(Error::Input(format!(
                    "duplicate alphabet symbol `{}`",
                    alphabet[w[0]]
                )));
            }
        }
        let state_count = transitions.len();
        let check = |q: StateRef| -> Result<(), Error> {
            match q {
                StateRef::Plain(i) if i >= state_count => Err(Error::Input(format!(
                    "state {i} out of range (state count {state_count})"
                ))),
                _ => Ok(()),
            }
        };
        check(initial)?;
        let mut table = Vec::with_capacity(state_count * alphabet.len());
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Input(format!(
                    "state {q} has {} transitions, expected {}",
                    row.len(),
                    alphabet.len()
                )));
            }
            for &s in &order {
                check(row[s])?;
                table.push(row[s]);
            }
        }
        match &acceptance {
            Acceptance::Finite(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => {
                if let Some(&q) = f.iter().find(|&&q| q >= state_count) {
                    return Err(Error::Input(format!(
                        "acceptance set contains state {q} out of range"
                    )));
                }
            }
            Acceptance::Parity(p) => {
                if p.len() != state_count {
                    return Err(Error::Input(format!(
                        "parity function has {} entries, expected {state_count}",
                        p.len()
                    )));
                }
            }
        }
        let alphabet = order.into_iter().map(|i| alphabet[i].clone()).collect();
        Ok(Automaton {
            alphabet,
            state_count,
            initial,
            transitions: table,
            acceptance,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> StateRef {
        self.initial
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn mode(&self) -> AcceptanceMode {
        self.acceptance.mode()
    }

    /// Index of `sym` in the (sorted) alphabet.
    pub fn symbol_index(&self, sym: &str) -> Option<usize> {
        self.alphabet.binary_search_by(|s| s.as_str().cmp(sym)).ok()
    }

    /// The successor of `q` on the symbol with index `sym`. Sinks self-loop.
    pub fn step(&self, q: StateRef, sym: usize) -> StateRef {
        debug_assert!(sym < self.alphabet.len());
        match q {
            StateRef::Plain(i) => self.transitions[i * self.alphabet.len() + sym],
            sink => sink,
        }
    }

    /// Membership in `F ∪ {⊤}` for the `F`-based modes. For parity automata
    /// a state counts as accepting iff its priority is even.
    pub fn is_accepting_state(&self, q: StateRef) -> bool {
        match q {
            StateRef::Top => true,
            StateRef::Bottom => false,
            StateRef::Plain(i) => match &self.acceptance {
                Acceptance::Finite(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => {
                    f.contains(&i)
                }
                Acceptance::Parity(p) => p[i] % 2 == 0,
            },
        }
    }

    /// Priority of `q` under the parity reading of the acceptance mode:
    /// Büchi (and finite) is read as `{1,2}`, co-Büchi as `{2,3}`, and the
    /// sinks are `0` (⊤) and `1` (⊥) in parity mode.
    pub fn priority(&self, q: StateRef) -> u32 {
        match (&self.acceptance, q) {
            (Acceptance::Parity(_), StateRef::Top) => 0,
            (Acceptance::Parity(_), StateRef::Bottom) => 1,
            (Acceptance::Parity(p), StateRef::Plain(i)) => p[i],
            (Acceptance::CoBuchi(_), _) => {
                if self.is_accepting_state(q) {
                    2
                } else {
                    3
                }
            }
            _ => {
                if self.is_accepting_state(q) {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// The same automaton with a different initial state.
    ///
    /// Panics if `q` is a plain state out of range.
    pub fn with_initial(&self, q: StateRef) -> Automaton {
        if let StateRef::Plain(i) = q {
            assert!(i < self.state_count, "initial state {i} out of range");
        }
        let mut a = self.clone();
        a.initial = q;
        a
    }

    /// Plain states reachable from the initial state, ascending.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count];
        let mut stack = Vec::new();
        if let StateRef::Plain(i) = self.initial {
            seen[i] = true;
            stack.push(i);
        }
        while let Some(q) = stack.pop() {
            for s in 0..self.alphabet.len() {
                if let StateRef::Plain(t) = self.step(StateRef::Plain(q), s) {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        (0..self.state_count).filter(|&q| seen[q]).collect()
    }

    /// Runs a finite word. Returns the end state and whether the run is
    /// accepting (`end ∈ F ∪ {⊤}`). The empty word ends at the initial state.
    pub fn run_finite<S: AsRef<str>>(&self, word: &[S]) -> Result<(StateRef, bool), Error> {
        let mut q = self.initial;
        for (pos, sym) in word.iter().enumerate() {
            let s = self
                .symbol_index(sym.as_ref())
                .ok_or(Error::UnknownSymbol {
                    symbol: sym.as_ref().to_string(),
                    position: pos,
                })?;
            q = self.step(q, s);
        }
        Ok((q, self.is_accepting_state(q)))
    }

    /// Runs an ultimately periodic word. The run is simulated until a
    /// (state, loop-index) pair repeats, which happens within
    /// `(n+2)·|loop|` steps after the prefix; the result reports the maximum
    /// priority on the state cycle and acceptance is that maximum being even.
    ///
    /// Finite-acceptance automata are read as Büchi automata here.
    pub fn run_lasso(&self, lasso: &Lasso) -> Result<LassoRun, Error> {
        let index = |sym: &str, pos: usize| {
            self.symbol_index(sym).ok_or(Error::UnknownSymbol {
                symbol: sym.to_string(),
                position: pos,
            })
        };
        let mut q = self.initial;
        for (pos, sym) in lasso.prefix.iter().enumerate() {
            q = self.step(q, index(sym, pos)?);
        }
        let cycle: Vec<usize> = lasso
            .cycle
            .iter()
            .enumerate()
            .map(|(i, sym)| index(sym, lasso.prefix.len() + i))
            .collect::<Result<_, _>>()?;

        let mut seen: std::collections::HashMap<(StateRef, usize), usize> =
            std::collections::HashMap::new();
        let mut trace = Vec::new();
        let mut idx = 0usize;
        loop {
            if let Some(&start) = seen.get(&(q, idx)) {
                let max = trace[start..]
                    .iter()
                    .map(|&p| self.priority(p))
                    .max()
                    .expect("cycle is non-empty");
                return Ok(LassoRun {
                    accepted: max % 2 == 0,
                    cycle_max_priority: max,
                });
            }
            seen.insert((q, idx), trace.len());
            trace.push(q);
            q = self.step(q, cycle[idx]);
            idx = (idx + 1) % cycle.len();
        }
    }

    /// Re-labels the acceptance without touching states or transitions.
    ///
    /// Conversions among finite/Büchi/co-Büchi keep `F`. Büchi (or finite)
    /// to parity maps `F → 2`, others `→ 1`; co-Büchi to parity maps
    /// `F → 2`, others `→ 3`. Parity converts back only when the priority
    /// image over plain states fits the respective window (`{1,2}` for
    /// finite/Büchi, `{2,3}` for co-Büchi), otherwise this is a mode error.
    pub fn view_as(&self, mode: AcceptanceMode) -> Result<Automaton, Error> {
        let f_set = |f: &BTreeSet<usize>| f.clone();
        let acceptance = match (&self.acceptance, mode) {
            (Acceptance::Finite(f), AcceptanceMode::Finite)
            | (Acceptance::Buchi(f), AcceptanceMode::Finite)
            | (Acceptance::CoBuchi(f), AcceptanceMode::Finite) => Acceptance::Finite(f_set(f)),
            (Acceptance::Finite(f), AcceptanceMode::Buchi)
            | (Acceptance::Buchi(f), AcceptanceMode::Buchi)
            | (Acceptance::CoBuchi(f), AcceptanceMode::Buchi) => Acceptance::Buchi(f_set(f)),
            (Acceptance::Finite(f), AcceptanceMode::CoBuchi)
            | (Acceptance::Buchi(f), AcceptanceMode::CoBuchi)
            | (Acceptance::CoBuchi(f), AcceptanceMode::CoBuchi) => Acceptance::CoBuchi(f_set(f)),
            (Acceptance::Finite(f), AcceptanceMode::Parity)
            | (Acceptance::Buchi(f), AcceptanceMode::Parity) => Acceptance::Parity(
                (0..self.state_count)
                    .map(|q| if f.contains(&q) { 2 } else { 1 })
                    .collect(),
            ),
            (Acceptance::CoBuchi(f), AcceptanceMode::Parity) => Acceptance::Parity(
                (0..self.state_count)
                    .map(|q| if f.contains(&q) { 2 } else { 3 })
                    .collect(),
            ),
            (Acceptance::Parity(p), AcceptanceMode::Parity) => Acceptance::Parity(p.clone()),
            (Acceptance::Parity(p), target) => {
                let window: &[u32] = match target {
                    AcceptanceMode::CoBuchi => &[2, 3],
                    _ => &[1, 2],
                };
                if let Some(&bad) = p.iter().find(|&&x| !window.contains(&x)) {
                    return Err(Error::Mode(format!(
                        "priority {bad} outside {{{},{}}}, cannot view parity automaton as {target}",
                        window[0], window[1]
                    )));
                }
                let f: BTreeSet<usize> = (0..self.state_count).filter(|&q| p[q] == 2).collect();
                match target {
                    AcceptanceMode::Finite => Acceptance::Finite(f),
                    AcceptanceMode::Buchi => Acceptance::Buchi(f),
                    AcceptanceMode::CoBuchi => Acceptance::CoBuchi(f),
                    AcceptanceMode::Parity => unreachable!(),
                }
            }
        };
        let mut a = self.clone();
        a.acceptance = acceptance;
        Ok(a)
    }

    /// Compresses gaps in the priority image: while some priority `p ≥ 2` is
    /// unused but a larger one occurs, all priorities above `p` shift down by
    /// two. Parity of every priority is preserved, so the language is; the
    /// result has `max priority ≤ n+1`. No-op for non-parity automata.
    pub fn normalize_priorities(&self) -> Automaton {
        let Acceptance::Parity(p) = &self.acceptance else {
            return self.clone();
        };
        let mut p = p.clone();
        loop {
            let image: BTreeSet<u32> = p.iter().copied().collect();
            let Some(&max) = image.iter().next_back() else {
                break;
            };
            let gap = (2..max).find(|x| !image.contains(x));
            match gap {
                Some(g) => {
                    for x in p.iter_mut() {
                        if *x > g {
                            *x -= 2;
                        }
                    }
                }
                None => break,
            }
        }
        let mut a = self.clone();
        a.acceptance = Acceptance::Parity(p);
        a
    }

    /// Canonical form: restrict to the states reachable from the initial
    /// state and renumber them in BFS discovery order, exploring successors
    /// in alphabet order. Two automata are isomorphic (up to unreachable
    /// states) iff their canonical forms are structurally equal, and
    /// serialising a canonical form is stable across runs.
    pub fn canonical_form(&self) -> Automaton {
        let mut number = vec![usize::MAX; self.state_count];
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        if let StateRef::Plain(i) = self.initial {
            number[i] = 0;
            order.push(i);
            queue.push_back(i);
        }
        while let Some(q) = queue.pop_front() {
            for s in 0..self.alphabet.len() {
                if let StateRef::Plain(t) = self.step(StateRef::Plain(q), s) {
                    if number[t] == usize::MAX {
                        number[t] = order.len();
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let map = |q: StateRef| match q {
            StateRef::Plain(i) => StateRef::Plain(number[i]),
            sink => sink,
        };
        let mut transitions = Vec::with_capacity(order.len() * self.alphabet.len());
        for &old in &order {
            for s in 0..self.alphabet.len() {
                transitions.push(map(self.step(StateRef::Plain(old), s)));
            }
        }
        let renum_set = |f: &BTreeSet<usize>| -> BTreeSet<usize> {
            f.iter()
                .filter(|&&q| number[q] != usize::MAX)
                .map(|&q| number[q])
                .collect()
        };
        let acceptance = match &self.acceptance {
            Acceptance::Finite(f) => Acceptance::Finite(renum_set(f)),
            Acceptance::Buchi(f) => Acceptance::Buchi(renum_set(f)),
            Acceptance::CoBuchi(f) => Acceptance::CoBuchi(renum_set(f)),
            Acceptance::Parity(p) => Acceptance::Parity(order.iter().map(|&old| p[old]).collect()),
        };
        Automaton {
            alphabet: self.alphabet.clone(),
            state_count: order.len(),
            initial: map(self.initial),
            transitions,
            acceptance,
        }
    }
}
