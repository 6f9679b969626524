//! Hand-built automata used by the replication suite and the tests.

use crate::alphabet::Alphabet;
use crate::dfa::{Dfa, DfaBuilder};

fn build(sigma: &str, initial: &str, finals: &[&str], edges: &[(&str, char, &str)]) -> Dfa {
    let mut b = DfaBuilder::new(Alphabet::from_chars(sigma).expect("fixture alphabet"))
        .with_transitions(edges)
        .expect("fixture transitions");
    let q0 = b.state(initial);
    b.set_initial(q0);
    for f in finals {
        let q = b.state(f);
        b.set_final(q, true);
    }
    b.build().expect("fixture is complete").trimmed()
}

/// (a|b)a* with states s, r, f; r is the dead state.
pub fn m1() -> Dfa {
    build(
        "ab",
        "s",
        &["f"],
        &[
            ("s", 'a', "f"),
            ("s", 'b', "f"),
            ("f", 'a', "f"),
            ("f", 'b', "r"),
            ("r", 'a', "r"),
            ("r", 'b', "r"),
        ],
    )
}

/// (a|b)b* with states s, r, f.
pub fn m2() -> Dfa {
    build(
        "ab",
        "s",
        &["f"],
        &[
            ("s", 'a', "f"),
            ("s", 'b', "f"),
            ("f", 'b', "f"),
            ("f", 'a', "r"),
            ("r", 'a', "r"),
            ("r", 'b', "r"),
        ],
    )
}

/// The five-state minimal automaton for (a|b)a* ∪ (a|b)b*, states 1..5,
/// finals {2, 3, 4}.
pub fn union_table() -> Dfa {
    build(
        "ab",
        "1",
        &["2", "3", "4"],
        &[
            ("1", 'a', "2"),
            ("1", 'b', "2"),
            ("2", 'a', "3"),
            ("2", 'b', "4"),
            ("3", 'a', "3"),
            ("3", 'b', "5"),
            ("4", 'a', "5"),
            ("4", 'b', "4"),
            ("5", 'a', "5"),
            ("5", 'b', "5"),
        ],
    )
}

/// a⁺ over {a}.
pub fn a_plus() -> Dfa {
    build("a", "0", &["1"], &[("0", 'a', "1"), ("1", 'a', "1")])
}

/// b⁺ over {b}.
pub fn b_plus() -> Dfa {
    build("b", "0", &["1"], &[("0", 'b', "1"), ("1", 'b', "1")])
}

/// Σ⁺ over {a, b}.
pub fn sigma_plus() -> Dfa {
    build(
        "ab",
        "0",
        &["1"],
        &[
            ("0", 'a', "1"),
            ("0", 'b', "1"),
            ("1", 'a', "1"),
            ("1", 'b', "1"),
        ],
    )
}
