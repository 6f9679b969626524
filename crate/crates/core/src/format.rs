//! Line-oriented DFA text format.
//!
//! ```text
//! # comment
//! alphabet: a,b
//! states: s,r,f
//! initial: s
//! final: f
//! s a f
//! s b f
//! ...
//! ```
//!
//! The four header lines come first, in this order; `final:` may have an
//! empty right-hand side. Each remaining line is one transition
//! `source symbol target`. The serializer always renumbers states
//! breadth-first as `q0, q1, ...` so equal automata print identically.

use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::dfa::{Dfa, DfaBuilder};
use crate::error::{Error, Result};

/// Parses the text format. With `complete`, missing transitions go to a
/// fresh sink; otherwise a partial table is an error. Unreachable states
/// are dropped and the rest are numbered breadth-first, keeping their names.
pub fn parse_dfa(text: &str, complete: bool) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |key: &str| -> Result<(usize, &str)> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::format(0, format!("missing `{key}:` line")))?;
        let rest = line
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| Error::format(no, format!("expected `{key}:`")))?;
        Ok((no, rest.trim()))
    };

    let (no, sigma) = header("alphabet")?;
    let alphabet = Alphabet::parse(sigma).map_err(|e| Error::format(no, e.to_string()))?;
    let mut builder = DfaBuilder::new(alphabet);

    let (no, states) = header("states")?;
    for name in split_list(states) {
        check_state_name(no, name)?;
        if builder.lookup(name).is_some() {
            return Err(Error::format(no, format!("duplicate state {name}")));
        }
        builder.state(name);
    }
    if builder.num_states() == 0 {
        return Err(Error::format(no, "no states declared"));
    }

    let (no, initial) = header("initial")?;
    let q0 = known(&builder, no, initial)?;
    builder.set_initial(q0);

    let (no, finals) = header("final")?;
    for name in split_list(finals) {
        let q = known(&builder, no, name)?;
        builder.set_final(q, true);
    }

    for (no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [src, sym, dst] = parts[..] else {
            return Err(Error::format(
                no,
                "expected a transition `source symbol target`",
            ));
        };
        let src = known(&builder, no, src)?;
        let dst = known(&builder, no, dst)?;
        let mut chars = sym.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(Error::format(no, format!("invalid symbol {sym:?}")));
        };
        builder
            .add_transition(src, c, dst)
            .map_err(|e| Error::format(no, e.to_string()))?;
    }

    if !complete {
        if let Some((q, s)) = builder.missing_transition() {
            return Err(Error::format(
                0,
                format!("missing transition from {q} on {s} (use --complete to add a sink)"),
            ));
        }
    }
    Ok(builder.complete()?.trimmed())
}

/// Serializes with canonical breadth-first numbering `q0, q1, ...`.
pub fn to_text(dfa: &Dfa) -> String {
    let dfa = dfa.trimmed();
    let n = dfa.num_states();
    let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", dfa.alphabet());
    let _ = writeln!(out, "states: {}", names.join(","));
    let _ = writeln!(out, "initial: {}", names[dfa.initial()]);
    let finals: Vec<&str> = dfa.finals().map(|q| names[q].as_str()).collect();
    if finals.is_empty() {
        out.push_str("final:\n");
    } else {
        let _ = writeln!(out, "final: {}", finals.join(","));
    }
    for q in dfa.states() {
        for (a, s) in dfa.alphabet().symbols().iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", names[q], s, names[dfa.next(q, a)]);
        }
    }
    out
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn check_state_name(line: usize, name: &str) -> Result<()> {
    if name
        .chars()
        .any(|c| c.is_whitespace() || matches!(c, ',' | ':' | '#'))
    {
        return Err(Error::format(line, format!("invalid state name {name:?}")));
    }
    Ok(())
}

fn known(builder: &DfaBuilder, line: usize, name: &str) -> Result<usize> {
    builder
        .lookup(name)
        .ok_or_else(|| Error::format(line, format!("unknown state {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::is_isomorphic;
    use crate::fixtures;

    const M1: &str = "\
# (a|b)a*
alphabet: a,b
states: s,r,f
initial: s
final: f
s a f
s b f
f a f
f b r
r a r
r b r
";

    #[test]
    fn parses_m1() {
        let dfa = parse_dfa(M1, false).unwrap();
        assert!(is_isomorphic(&dfa, &fixtures::m1()));
        // breadth-first order, names kept
        assert_eq!(dfa.names(), ["s", "f", "r"]);
    }

    #[test]
    fn serializes_canonically() {
        let text = to_text(&parse_dfa(M1, false).unwrap());
        assert_eq!(
            text,
            "alphabet: a,b\nstates: q0,q1,q2\ninitial: q0\nfinal: q1\n\
             q0 a q1\nq0 b q1\nq1 a q1\nq1 b q2\nq2 a q2\nq2 b q2\n"
        );
        let again = to_text(&parse_dfa(&text, false).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn empty_final_set() {
        let text = "alphabet: a\nstates: x\ninitial: x\nfinal:\nx a x\n";
        let dfa = parse_dfa(text, false).unwrap();
        assert_eq!(dfa.finals().count(), 0);
        assert_eq!(to_text(&dfa), text.replace('x', "q0"));
    }

    #[test]
    fn partial_input_needs_complete_flag() {
        let text = "alphabet: a,b\nstates: s,f\ninitial: s\nfinal: f\ns a f\nf a f\n";
        assert!(parse_dfa(text, false).is_err());
        let dfa = parse_dfa(text, true).unwrap();
        assert_eq!(dfa.num_states(), 3);
    }

    #[test]
    fn rejects_bad_input_with_line_numbers() {
        let cases = [
            ("alphabet: a\nstates: x\ninitial: y\nfinal:\n", 3),
            (
                "alphabet: a\nstates: x\ninitial: x\nfinal:\nx a x\nx a x\n",
                6,
            ),
            ("alphabet: a\nstates: x\ninitial: x\nfinal:\nx b x\n", 5),
            ("alphabet: a\nstates: x\ninitial: x\nfinal:\nx a z\n", 5),
            ("alphabet: a\nstates: x,x\ninitial: x\nfinal:\n", 2),
            ("alphabet: a\n\n# gap\nstates: x\nfinal: x\n", 5),
            ("alphabet: a\nstates: x\ninitial: x\nfinal:\nx a\n", 5),
        ];
        for (text, line) in cases {
            match parse_dfa(text, false) {
                Err(Error::Format { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
