//! Moore-style partition refinement.

use std::collections::HashMap;

use crate::dfa::{default_names, Dfa, StateId};

/// The minimal complete accessible automaton for the language of `dfa`,
/// numbered breadth-first (`q0` initial) with symbols explored in alphabet
/// order. Two inputs accept the same language iff their minimizations are
/// structurally identical.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = dfa.trimmed();
    let n = dfa.num_states();
    let k = dfa.alphabet().len();

    let mut class: Vec<usize> = (0..n).map(|q| usize::from(dfa.is_final(q))).collect();
    let mut count = renumber_classes(&mut class);
    loop {
        let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|a| class[dfa.next(q, a)]));
            let fresh = signatures.len();
            next.push(*signatures.entry(sig).or_insert(fresh));
        }
        let refined = signatures.len();
        class = next;
        if refined == count {
            break;
        }
        count = refined;
    }

    // Quotient, then number classes breadth-first from the initial class.
    let mut order: Vec<usize> = vec![class[dfa.initial()]];
    let mut index = vec![usize::MAX; count];
    index[class[dfa.initial()]] = 0;
    let mut representative = vec![usize::MAX; count];
    for q in 0..n {
        if representative[class[q]] == usize::MAX {
            representative[class[q]] = q;
        }
    }
    let mut delta: Vec<StateId> = Vec::with_capacity(count * k);
    let mut i = 0;
    while i < order.len() {
        let q = representative[order[i]];
        i += 1;
        for a in 0..k {
            let c = class[dfa.next(q, a)];
            if index[c] == usize::MAX {
                index[c] = order.len();
                order.push(c);
            }
            delta.push(index[c]);
        }
    }
    let finals = order
        .iter()
        .map(|&c| dfa.is_final(representative[c]))
        .collect();
    Dfa::from_parts(
        dfa.alphabet().clone(),
        default_names(order.len()),
        delta,
        0,
        finals,
    )
}

/// Whether `dfa` already has the minimal number of states.
pub fn is_minimal(dfa: &Dfa) -> bool {
    minimize(dfa).num_states() == dfa.num_states()
}

fn renumber_classes(class: &mut [usize]) -> usize {
    let mut seen = HashMap::new();
    for c in class.iter_mut() {
        let fresh = seen.len();
        *c = *seen.entry(*c).or_insert(fresh);
    }
    seen.len()
}
