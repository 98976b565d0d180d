//! Bit-exact text formats for automata, graphs, lassos, and partitions.
//!
//! Automaton documents (`daut 1`) are line oriented; `#` starts a comment
//! unless escaped as `\#`, which is how the stop symbol appears in
//! alphabets. Serialisation is canonical: the alphabet is sorted, transition
//! lines are ordered by (state, symbol), and serialising the same automaton
//! twice is byte-identical. Lasso documents are a single `prefix ; loop`
//! line with no comment handling (the stop symbol is written bare there).

use std::collections::BTreeSet;

use crate::automaton::{Acceptance, Automaton, Lasso, StateRef};
use crate::equiv::Partition;
use crate::hardness::{NiceGraph, SimpleGraph};

/// A parse failure with its position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

#[derive(Debug, Clone)]
struct Tok {
    text: String,
    line: usize,
    col: usize,
}

/// Whitespace-separated tokens of one line. With `directives` set, `#`
/// starts a comment and `\#` is the escaped hash; without, every character
/// is literal.
fn tokenize_line(line: &str, lineno: usize, directives: bool) -> Vec<Tok> {
    let mut toks = Vec::new();
    let mut buf = String::new();
    let mut start = 0usize;
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0usize;
    let flush = |buf: &mut String, start: usize, toks: &mut Vec<Tok>| {
        if !buf.is_empty() {
            toks.push(Tok {
                text: std::mem::take(buf),
                line: lineno,
                col: start + 1,
            });
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if directives && c == '\\' && chars.get(i + 1) == Some(&'#') {
            if buf.is_empty() {
                start = i;
            }
            buf.push('#');
            i += 2;
            continue;
        }
        if directives && c == '#' {
            break; // comment
        }
        if c.is_whitespace() {
            flush(&mut buf, start, &mut toks);
        } else {
            if buf.is_empty() {
                start = i;
            }
            buf.push(c);
        }
        i += 1;
    }
    flush(&mut buf, start, &mut toks);
    toks
}

fn tokenize(text: &str, directives: bool) -> Vec<Vec<Tok>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| tokenize_line(l, i + 1, directives))
        .filter(|toks| !toks.is_empty())
        .collect()
}

fn escape(sym: &str) -> String {
    sym.replace('#', "\\#")
}

fn parse_number(tok: &Tok, what: &str) -> Result<usize, ParseError> {
    tok.text
        .parse::<usize>()
        .or_else(|_| err(tok.line, tok.col, format!("invalid {what} `{}`", tok.text)))
}

fn parse_state(tok: &Tok, state_count: usize) -> Result<StateRef, ParseError> {
    match tok.text.as_str() {
        "TOP" => Ok(StateRef::Top),
        "BOT" => Ok(StateRef::Bottom),
        _ => {
            let i = parse_number(tok, "state")?;
            if i >= state_count {
                return err(
                    tok.line,
                    tok.col,
                    format!("state {i} out of range (states {state_count})"),
                );
            }
            Ok(StateRef::Plain(i))
        }
    }
}

fn expect_directive<'a>(
    lines: &'a [Vec<Tok>],
    idx: usize,
    name: &str,
) -> Result<&'a [Tok], ParseError> {
    let Some(line) = lines.get(idx) else {
        let last = lines.last().map_or(1, |l| l[0].line);
        return err(last + 1, 1, format!("missing `{name}` directive"));
    };
    if line[0].text != name {
        return err(
            line[0].line,
            line[0].col,
            format!("expected `{name}`, found `{}`", line[0].text),
        );
    }
    Ok(&line[1..])
}

/// Parses an automaton document.
pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let lines = tokenize(text, true);
    if lines.is_empty() {
        return err(1, 1, "empty document");
    }
    let header = &lines[0];
    if header.len() != 2 || header[0].text != "daut" || header[1].text != "1" {
        return err(header[0].line, header[0].col, "expected header `daut 1`");
    }

    let alpha_toks = expect_directive(&lines, 1, "alphabet")?;
    if alpha_toks.is_empty() {
        let l = &lines[1][0];
        return err(l.line, l.col, "alphabet must list at least one symbol");
    }
    let mut alphabet = Vec::new();
    for t in alpha_toks {
        if alphabet.contains(&t.text) {
            return err(
                t.line,
                t.col,
                format!("duplicate alphabet symbol `{}`", t.text),
            );
        }
        alphabet.push(t.text.clone());
    }

    let states_toks = expect_directive(&lines, 2, "states")?;
    let [n_tok] = states_toks else {
        let l = &lines[2][0];
        return err(l.line, l.col, "expected `states <n>`");
    };
    let state_count = parse_number(n_tok, "state count")?;

    let initial_toks = expect_directive(&lines, 3, "initial")?;
    let [init_tok] = initial_toks else {
        let l = &lines[3][0];
        return err(l.line, l.col, "expected `initial <state|TOP|BOT>`");
    };
    let initial = parse_state(init_tok, state_count)?;

    let acc_toks = expect_directive(&lines, 4, "acceptance")?;
    let Some(mode_tok) = acc_toks.first() else {
        let l = &lines[4][0];
        return err(l.line, l.col, "expected an acceptance mode");
    };
    let acceptance = match mode_tok.text.as_str() {
        "finite" | "buchi" | "cobuchi" => {
            let mut f = BTreeSet::new();
            for t in &acc_toks[1..] {
                if t.text == "TOP" || t.text == "BOT" {
                    return err(
                        t.line,
                        t.col,
                        "sink acceptance is implicit and may not be listed",
                    );
                }
                let q = parse_number(t, "state")?;
                if q >= state_count {
                    return err(t.line, t.col, format!("state {q} out of range"));
                }
                f.insert(q);
            }
            match mode_tok.text.as_str() {
                "finite" => Acceptance::Finite(f),
                "buchi" => Acceptance::Buchi(f),
                _ => Acceptance::CoBuchi(f),
            }
        }
        "parity" => {
            if acc_toks.len() - 1 != state_count {
                return err(
                    mode_tok.line,
                    mode_tok.col,
                    format!(
                        "parity needs {state_count} priorities, found {}",
                        acc_toks.len() - 1
                    ),
                );
            }
            let mut pri = Vec::with_capacity(state_count);
            for t in &acc_toks[1..] {
                let p = parse_number(t, "priority")?;
                if p > state_count + 1 {
                    return err(
                        t.line,
                        t.col,
                        format!("priority {p} exceeds the bound n+1 = {}", state_count + 1),
                    );
                }
                pri.push(p as u32);
            }
            Acceptance::Parity(pri)
        }
        other => {
            return err(
                mode_tok.line,
                mode_tok.col,
                format!("unknown acceptance mode `{other}`"),
            )
        }
    };

    let mut table: Vec<Option<StateRef>> = vec![None; state_count * alphabet.len()];
    for line in &lines[5..] {
        let first = &line[0];
        if first.text != "trans" {
            return err(
                first.line,
                first.col,
                format!("expected `trans`, found `{}`", first.text),
            );
        }
        let [q_tok, sym_tok, target_tok] = &line[1..] else {
            return err(
                first.line,
                first.col,
                "expected `trans <state> <sym> <state|TOP|BOT>`",
            );
        };
        let q = parse_number(q_tok, "state")?;
        if q >= state_count {
            return err(q_tok.line, q_tok.col, format!("state {q} out of range"));
        }
        let Some(s) = alphabet.iter().position(|a| *a == sym_tok.text) else {
            return err(
                sym_tok.line,
                sym_tok.col,
                format!("unknown symbol `{}`", sym_tok.text),
            );
        };
        let target = parse_state(target_tok, state_count)?;
        let slot = &mut table[q * alphabet.len() + s];
        if slot.is_some() {
            return err(
                q_tok.line,
                q_tok.col,
                format!("duplicate transition for state {q} on `{}`", sym_tok.text),
            );
        }
        *slot = Some(target);
    }
    for q in 0..state_count {
        for (s, sym) in alphabet.iter().enumerate() {
            if table[q * alphabet.len() + s].is_none() {
                let last = lines.last().map_or(1, |l| l[0].line);
                return err(
                    last + 1,
                    1,
                    format!("missing transition for state {q} on `{sym}`"),
                );
            }
        }
    }
    let rows: Vec<Vec<StateRef>> = (0..state_count)
        .map(|q| {
            (0..alphabet.len())
                .map(|s| table[q * alphabet.len() + s].expect("checked above"))
                .collect()
        })
        .collect();
    Automaton::new(alphabet, initial, rows, acceptance).map_err(|e| ParseError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })
}

/// Canonical serialisation: sorted alphabet, transitions by (state, symbol).
pub fn serialise_automaton(a: &Automaton) -> String {
    let mut out = String::from("daut 1\n");
    out.push_str("alphabet");
    for sym in a.alphabet() {
        out.push(' ');
        out.push_str(&escape(sym));
    }
    out.push('\n');
    out.push_str(&format!("states {}\n", a.state_count()));
    out.push_str(&format!("initial {}\n", a.initial()));
    match a.acceptance() {
        Acceptance::Finite(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => {
            out.push_str(&format!("acceptance {}", a.mode()));
            for q in f {
                out.push_str(&format!(" {q}"));
            }
            out.push('\n');
        }
        Acceptance::Parity(pri) => {
            out.push_str("acceptance parity");
            for p in pri {
                out.push_str(&format!(" {p}"));
            }
            out.push('\n');
        }
    }
    for q in 0..a.state_count() {
        for (s, sym) in a.alphabet().iter().enumerate() {
            out.push_str(&format!(
                "trans {q} {} {}\n",
                escape(sym),
                a.step(StateRef::Plain(q), s)
            ));
        }
    }
    out
}

/// A graph document: raw simple graph, or nice graph when an initial vertex
/// is declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Simple(SimpleGraph),
    Nice(NiceGraph),
}

impl ParsedGraph {
    pub fn simple(&self) -> &SimpleGraph {
        match self {
            ParsedGraph::Simple(g) => g,
            ParsedGraph::Nice(n) => n.graph(),
        }
    }
}

/// Parses a graph document. Niceness (connected, more than one vertex) is
/// validated only when an initial vertex is declared.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let lines = tokenize(text, true);
    if lines.is_empty() {
        return err(1, 1, "empty document");
    }
    let header = &lines[0];
    if header.len() != 1 || header[0].text != "graph" {
        return err(header[0].line, header[0].col, "expected header `graph`");
    }
    let vert_toks = expect_directive(&lines, 1, "vertices")?;
    if vert_toks.is_empty() {
        let l = &lines[1][0];
        return err(l.line, l.col, "expected at least one vertex");
    }
    let mut vertices: Vec<String> = Vec::new();
    for t in vert_toks {
        if vertices.contains(&t.text) {
            return err(t.line, t.col, format!("duplicate vertex `{}`", t.text));
        }
        vertices.push(t.text.clone());
    }
    let lookup = |t: &Tok, vertices: &[String]| -> Result<usize, ParseError> {
        vertices
            .iter()
            .position(|v| *v == t.text)
            .ok_or(ParseError {
                line: t.line,
                col: t.col,
                message: format!("unknown vertex `{}`", t.text),
            })
    };
    let mut initial: Option<(usize, &Tok)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for line in &lines[2..] {
        let first = &line[0];
        match first.text.as_str() {
            "initial" => {
                let [v_tok] = &line[1..] else {
                    return err(first.line, first.col, "expected `initial <name>`");
                };
                if initial.is_some() {
                    return err(v_tok.line, v_tok.col, "duplicate `initial` directive");
                }
                initial = Some((lookup(v_tok, &vertices)?, v_tok));
            }
            "edge" => {
                let [u_tok, v_tok] = &line[1..] else {
                    return err(first.line, first.col, "expected `edge <u> <v>`");
                };
                let u = lookup(u_tok, &vertices)?;
                let v = lookup(v_tok, &vertices)?;
                if u == v {
                    return err(
                        u_tok.line,
                        u_tok.col,
                        format!("self-loop on `{}`", u_tok.text),
                    );
                }
                let e = (u.min(v), u.max(v));
                if edges.contains(&e) {
                    return err(
                        u_tok.line,
                        u_tok.col,
                        format!("duplicate edge {} {}", u_tok.text, v_tok.text),
                    );
                }
                edges.push(e);
            }
            other => {
                return err(
                    first.line,
                    first.col,
                    format!("unknown directive `{other}`"),
                )
            }
        }
    }
    let first_line = lines[0][0].line;
    let graph = SimpleGraph::new(vertices, edges).map_err(|e| ParseError {
        line: first_line,
        col: 1,
        message: e.to_string(),
    })?;
    match initial {
        None => Ok(ParsedGraph::Simple(graph)),
        Some((v, tok)) => {
            let nice = NiceGraph::new(graph, v).map_err(|e| ParseError {
                line: tok.line,
                col: tok.col,
                message: e.to_string(),
            })?;
            Ok(ParsedGraph::Nice(nice))
        }
    }
}

pub fn serialise_graph(g: &ParsedGraph) -> String {
    let (graph, initial) = match g {
        ParsedGraph::Simple(graph) => (graph, None),
        ParsedGraph::Nice(nice) => (nice.graph(), Some(nice.initial())),
    };
    let mut out = String::from("graph\nvertices");
    for v in graph.vertices() {
        out.push(' ');
        out.push_str(&escape(v));
    }
    out.push('\n');
    if let Some(v) = initial {
        out.push_str(&format!("initial {}\n", escape(graph.vertex_name(v))));
    }
    for &(u, v) in graph.edges() {
        out.push_str(&format!(
            "edge {} {}\n",
            escape(graph.vertex_name(u)),
            escape(graph.vertex_name(v))
        ));
    }
    out
}

/// Parses `<sym>* ; <sym>+`. No comment or escape handling: the stop symbol
/// is written bare in lassos.
pub fn parse_lasso(text: &str) -> Result<Lasso, ParseError> {
    let lines = tokenize(text, false);
    let toks: Vec<Tok> = lines.into_iter().flatten().collect();
    if toks.is_empty() {
        return err(1, 1, "empty lasso document");
    }
    let seps: Vec<usize> = toks
        .iter()
        .enumerate()
        .filter(|(_, t)| t.text == ";")
        .map(|(i, _)| i)
        .collect();
    let [sep] = seps[..] else {
        let t = &toks[0];
        return err(t.line, t.col, "a lasso needs exactly one `;` separator");
    };
    let prefix: Vec<String> = toks[..sep].iter().map(|t| t.text.clone()).collect();
    let cycle: Vec<String> = toks[sep + 1..].iter().map(|t| t.text.clone()).collect();
    if cycle.is_empty() {
        let t = &toks[sep];
        return err(t.line, t.col, "lasso loop must not be empty");
    }
    Lasso::new(prefix, cycle).map_err(|e| ParseError {
        line: toks[0].line,
        col: toks[0].col,
        message: e.to_string(),
    })
}

pub fn format_lasso(l: &Lasso) -> String {
    if l.prefix.is_empty() {
        format!("; {}", l.cycle.join(" "))
    } else {
        format!("{} ; {}", l.prefix.join(" "), l.cycle.join(" "))
    }
}

/// Parses a partition document: one class per line, members as state tokens.
pub fn parse_partition(text: &str) -> Result<Partition, ParseError> {
    let lines = tokenize(text, true);
    if lines.is_empty() {
        return err(1, 1, "empty partition document");
    }
    let mut classes = Vec::new();
    for line in &lines {
        let mut class = Vec::new();
        for t in line {
            class.push(parse_state(t, usize::MAX)?);
        }
        classes.push(class);
    }
    Partition::from_classes(classes).map_err(|e| ParseError {
        line: lines[0][0].line,
        col: 1,
        message: e.to_string(),
    })
}

pub fn format_partition(p: &Partition) -> String {
    let mut out = String::new();
    for class in p.classes() {
        let toks: Vec<String> = class.iter().map(|q| q.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AcceptanceMode;
    use crate::equiv::almost_equiv_quotient;

    #[test]
    fn minimal_document_is_universal() {
        let a = parse_automaton("daut 1\nalphabet a\nstates 0\ninitial TOP\nacceptance finite\n")
            .unwrap();
        assert_eq!(a.state_count(), 0);
        assert_eq!(a.initial(), StateRef::Top);
        assert!(a.run_finite(&["a"]).unwrap().1);
    }

    #[test]
    fn missing_transition_is_a_totality_error() {
        let doc = "daut 1\nalphabet a b\nstates 1\ninitial 0\nacceptance buchi 0\ntrans 0 a 0\n";
        let e = parse_automaton(doc).unwrap_err();
        assert!(e.message.contains("missing transition"));
        assert!(e.message.contains("state 0"));
        assert!(e.message.contains('b'));
    }

    #[test]
    fn duplicate_transition_rejected() {
        let doc = "daut 1\nalphabet a\nstates 1\ninitial 0\nacceptance finite\n\
                   trans 0 a 0\ntrans 0 a TOP\n";
        let e = parse_automaton(doc).unwrap_err();
        assert!(e.message.contains("duplicate transition"));
        assert_eq!(e.line, 7);
    }

    #[test]
    fn priority_bound_enforced() {
        let doc = "daut 1\nalphabet a\nstates 1\ninitial 0\nacceptance parity 3\ntrans 0 a 0\n";
        let e = parse_automaton(doc).unwrap_err();
        assert!(e.message.contains("priority 3"));
    }

    #[test]
    fn comments_and_escaped_stop_symbol() {
        let doc = "daut 1  # header\nalphabet \\# a   # two symbols\nstates 1\ninitial 0\n\
                   acceptance buchi\ntrans 0 a 0\ntrans 0 \\# TOP\n";
        let a = parse_automaton(doc).unwrap();
        assert_eq!(a.alphabet(), &["#".to_string(), "a".to_string()]);
        assert_eq!(a.step(StateRef::Plain(0), 0), StateRef::Top);
    }

    #[test]
    fn automaton_round_trip_and_stability() {
        let g =
            crate::hardness::SimpleGraph::new(vec!["v0".into(), "v1".into()], [(0, 1)]).unwrap();
        let nice = crate::hardness::NiceGraph::new(g, 0).unwrap();
        let b = crate::hardness::characteristic_dba(&nice, &[1].into()).unwrap();
        let text = serialise_automaton(&b);
        let reparsed = parse_automaton(&text).unwrap();
        assert_eq!(reparsed, b);
        assert_eq!(serialise_automaton(&reparsed), text);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = crate::random::seeded(7);
        for i in 0..100 {
            let a = match i % 4 {
                0 => crate::random::dfa(&mut rng, 5, 3),
                1 => crate::random::dba(&mut rng, 5, 2),
                2 => crate::random::dca(&mut rng, 5, 2),
                _ => crate::random::dpa(&mut rng, 5, 2, 5).normalize_priorities(),
            };
            let text = serialise_automaton(&a);
            assert_eq!(parse_automaton(&text).unwrap(), a, "round trip of {text}");
        }
    }

    #[test]
    fn graph_documents() {
        let p2 = "graph\nvertices v0 v1\ninitial v0\nedge v0 v1\n";
        let ParsedGraph::Nice(nice) = parse_graph(p2).unwrap() else {
            panic!("expected a nice graph");
        };
        assert_eq!(nice.vertex_count(), 2);
        let text = serialise_graph(&ParsedGraph::Nice(nice.clone()));
        assert_eq!(parse_graph(&text).unwrap(), ParsedGraph::Nice(nice));

        let raw = parse_graph("graph\nvertices a b c\nedge a b\n").unwrap();
        assert!(matches!(raw, ParsedGraph::Simple(_)));

        let e = parse_graph("graph\nvertices v0 v1\nedge v0 v0\n").unwrap_err();
        assert!(e.message.contains("self-loop"));
        assert_eq!(e.line, 3);

        let e = parse_graph("graph\nvertices v0 v1 v2\ninitial v0\nedge v0 v1\n").unwrap_err();
        assert!(e.message.contains("connected"));

        let e = parse_graph("graph\nvertices v0 v1\nedge v0 v1\nedge v1 v0\n").unwrap_err();
        assert!(e.message.contains("duplicate edge"));
    }

    #[test]
    fn lasso_documents() {
        assert_eq!(
            parse_lasso("; a").unwrap(),
            Lasso::new(vec![], vec!["a".into()]).unwrap()
        );
        let l = parse_lasso("v0 # v0 ; v1").unwrap();
        assert_eq!(l.prefix.len(), 3);
        assert_eq!(l.prefix[1], "#");
        assert_eq!(l.cycle.len(), 1);
        assert!(parse_lasso("a b ;").is_err());
        for l in [
            Lasso::new(vec![], vec!["a".into()]).unwrap(),
            Lasso::new(vec!["#".into(), "x".into()], vec!["y".into(), "#".into()]).unwrap(),
        ] {
            assert_eq!(parse_lasso(&format_lasso(&l)).unwrap(), l);
        }
    }

    #[test]
    fn partition_round_trip() {
        let a = crate::random::dfa(&mut crate::random::seeded(3), 5, 2);
        let p = almost_equiv_quotient(&a);
        let text = format_partition(&p);
        assert_eq!(parse_partition(&text).unwrap().classes(), p.classes());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_automaton("daut 2\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_automaton("daut 1\nalphabet a\nstates 1\ninitial 5\nacceptance finite\n")
            .unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.col > 1);
    }

    #[test]
    fn mode_views_round_trip_the_format() {
        let a = crate::random::dba(&mut crate::random::seeded(9), 4, 2);
        let f = a.view_as(AcceptanceMode::Finite).unwrap();
        let text = serialise_automaton(&f);
        assert!(text.contains("acceptance finite"));
        assert_eq!(parse_automaton(&text).unwrap(), f);
    }
}
