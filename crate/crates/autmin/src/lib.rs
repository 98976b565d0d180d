//! # autmin
//!
//! Minimisation and reduction of deterministic automata over finite and
//! infinite words:
//!
//! * exact DFA minimisation (Hopcroft's partition refinement),
//! * relative minimisation — the minimal automaton *almost equivalent* to a
//!   DFA, i.e. one whose run disagrees with the original on final-state
//!   membership only finitely often along every ω-word,
//! * language-preserving state-space reduction of deterministic Büchi and
//!   co-Büchi automata via the ω-language-equivalence quotient, plus a
//!   verified greedy state merge on top,
//! * minimisation of weak automata,
//! * the vertex-cover reduction: generators for the characteristic-language
//!   Büchi automata of nice graphs, cover extraction, and desk-scale exact
//!   searches for minimal equivalent automata.
//!
//! Automata are total deterministic transition tables over a finite
//! alphabet with two implicit sink states `⊤` (accepting) and `⊥`
//! (rejecting) and one of four acceptance modes: finite, Büchi, co-Büchi,
//! parity. Only plain states count in size comparisons.
//!
//! See [`format`](mod@format) for the text formats and the `autmin` binary
//! for the command-line frontend.

pub mod automaton;
pub mod equiv;
pub mod error;
pub mod format;
pub mod hardness;
pub mod minimise;
pub mod random;
pub mod scc;

pub use automaton::{Acceptance, AcceptanceMode, Automaton, Lasso, LassoRun, StateRef};
pub use error::Error;
