//! A second, deliberately plain classifier used to re-check search results.
//!
//! Nothing here calls the production minimizer or observability code:
//! minimization is pairwise table filling, and observability is a forward
//! search from each state.

use crate::alphabet::Symbol;
use crate::dfa::Dfa;

fn accessible(dfa: &Dfa) -> Vec<usize> {
    let mut seen = vec![false; dfa.num_states()];
    let mut order = vec![dfa.initial()];
    seen[dfa.initial()] = true;
    let mut stack = vec![dfa.initial()];
    while let Some(q) = stack.pop() {
        for a in 0..dfa.alphabet().len() {
            let p = dfa.next(q, a);
            if !seen[p] {
                seen[p] = true;
                order.push(p);
                stack.push(p);
            }
        }
    }
    order.sort_unstable();
    order
}

/// Whether some word leads from `q` to a final state (forward search).
fn reaches_final(dfa: &Dfa, q: usize) -> bool {
    let mut seen = vec![false; dfa.num_states()];
    let mut stack = vec![q];
    seen[q] = true;
    while let Some(p) = stack.pop() {
        if dfa.is_final(p) {
            return true;
        }
        for a in 0..dfa.alphabet().len() {
            let r = dfa.next(p, a);
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    false
}

/// Semi-observable count of the automaton as given (accessible part).
pub fn naive_so_count(dfa: &Dfa) -> usize {
    let states = accessible(dfa);
    let mut count = 0;
    for &q in &states {
        if !reaches_final(dfa, q) {
            continue;
        }
        if (0..dfa.alphabet().len()).any(|a| !reaches_final(dfa, dfa.next(q, a))) {
            count += 1;
        }
    }
    count
}

/// Table-filling minimization. Returns the quotient as `(table, finals,
/// initial)` over the accessible states, numbered by smallest member.
pub fn naive_minimize(dfa: &Dfa) -> Dfa {
    let states = accessible(dfa);
    let n = states.len();
    let k = dfa.alphabet().len();
    let pos = |q: usize| states.binary_search(&q).expect("accessible");
    let mut distinct = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            distinct[i][j] = dfa.is_final(states[i]) != dfa.is_final(states[j]);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if distinct[i][j] {
                    continue;
                }
                let split = (0..k).any(|a| {
                    let x = pos(dfa.next(states[i], a));
                    let y = pos(dfa.next(states[j], a));
                    distinct[x][y]
                });
                if split {
                    distinct[i][j] = true;
                    distinct[j][i] = true;
                    changed = true;
                }
            }
        }
    }
    // class of i = smallest j equivalent to it
    let rep: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| !distinct[i][j]).unwrap())
        .collect();
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let class = |i: usize| reps.binary_search(&rep[i]).unwrap();
    let mut table = Vec::with_capacity(reps.len() * k);
    for &r in &reps {
        for a in 0..k {
            table.push(class(pos(dfa.next(states[r], a))));
        }
    }
    let finals = reps.iter().map(|&r| dfa.is_final(states[r])).collect();
    Dfa::from_table(
        dfa.alphabet().clone(),
        table,
        class(pos(dfa.initial())),
        finals,
    )
    .expect("quotient is well formed")
}

pub fn naive_so_index(dfa: &Dfa) -> usize {
    naive_so_count(&naive_minimize(dfa))
}

/// Symbols that label an edge from an accessible state into a state that
/// can still reach a final state.
pub fn naive_minimal_alphabet(dfa: &Dfa) -> Vec<Symbol> {
    let states = accessible(dfa);
    dfa.alphabet()
        .symbols()
        .iter()
        .enumerate()
        .filter(|&(a, _)| states.iter().any(|&q| reaches_final(dfa, dfa.next(q, a))))
        .map(|(_, &s)| s)
        .collect()
}

/// Observable language test: restrict to the minimal alphabet, then every
/// accessible state must reach a final state.
pub fn naive_is_observable(dfa: &Dfa) -> bool {
    let sigma = naive_minimal_alphabet(dfa);
    let Some(restricted) = dfa.restrict(&sigma) else {
        return false;
    };
    accessible(&restricted)
        .into_iter()
        .all(|q| reaches_final(&restricted, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::minimize::minimize;
    use crate::observability::{is_observable_language, so_index};
    use crate::oracle::enumerate_dfas;
    use crate::Alphabet;

    #[test]
    fn agrees_with_fixtures() {
        assert_eq!(naive_so_index(&fixtures::m1()), 1);
        assert_eq!(naive_so_index(&fixtures::union_table()), 2);
        assert_eq!(naive_so_index(&fixtures::sigma_plus()), 0);
        assert!(naive_is_observable(&fixtures::sigma_plus()));
        assert!(!naive_is_observable(&fixtures::m1()));
    }

    #[test]
    fn agrees_with_production_on_small_machines() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        for dfa in enumerate_dfas(3, &sigma) {
            assert_eq!(naive_so_index(&dfa), so_index(&dfa));
            assert_eq!(
                naive_minimize(&dfa).num_states(),
                minimize(&dfa).num_states()
            );
            assert_eq!(naive_is_observable(&dfa), is_observable_language(&dfa));
        }
    }
}
