//! Exhaustive enumeration of small complete accessible automata.
//!
//! Every accessible automaton has exactly one breadth-first numbering, so
//! generating only transition tables that are already breadth-first
//! numbered yields each isomorphism class once. Tables are produced in
//! ascending order of their digit string (state-major, symbols in alphabet
//! order, read as a base-`n` number), and for each table every final-state
//! bitmask in ascending order. Sizes are visited from 1 up to the bound.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;

/// Position of an automaton in the canonical enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DfaCode {
    pub states: usize,
    pub table: Vec<u8>,
    /// Bit `q` set iff state `q` is final.
    pub finals: u64,
}

impl DfaCode {
    /// Code of a breadth-first numbered automaton.
    pub fn of(dfa: &Dfa) -> DfaCode {
        debug_assert!(dfa.is_canonically_numbered());
        DfaCode {
            states: dfa.num_states(),
            table: dfa.table().iter().map(|&t| t as u8).collect(),
            finals: dfa.finals().fold(0u64, |mask, q| mask | (1u64 << q)),
        }
    }

    pub fn to_dfa(&self, alphabet: &Alphabet) -> Dfa {
        let finals = (0..self.states)
            .map(|q| self.finals >> q & 1 == 1)
            .collect();
        Dfa::from_table(
            alphabet.clone(),
            self.table.iter().map(|&t| t as usize).collect(),
            0,
            finals,
        )
        .expect("valid code")
    }
}

impl fmt::Display for DfaCode {
    /// `n<states>:<table digits>:<final flags>`, e.g. `n3:112222:010`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}:", self.states)?;
        for t in &self.table {
            write!(f, "{t}")?;
        }
        f.write_str(":")?;
        for q in 0..self.states {
            write!(f, "{}", self.finals >> q & 1)?;
        }
        Ok(())
    }
}

/// Breadth-first numbered transition tables with exactly `n` states.
#[derive(Debug, Clone)]
pub struct TableIter {
    n: usize,
    k: usize,
    digits: Vec<usize>,
    /// `discovered[p]`: number of states discovered before position `p`.
    discovered: Vec<usize>,
    started: bool,
    done: bool,
}

impl TableIter {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k >= 1);
        let len = n * k;
        let mut discovered = vec![0; len + 1];
        discovered[0] = 1;
        TableIter {
            n,
            k,
            digits: vec![0; len],
            discovered,
            started: false,
            done: false,
        }
    }
}

impl Iterator for TableIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let len = self.n * self.k;
        let (mut p, mut c) = if self.started {
            (len - 1, self.digits[len - 1] + 1)
        } else {
            self.started = true;
            (0, 0)
        };
        loop {
            let disc = self.discovered[p];
            // the state owning position p must already be discovered
            let max = if p / self.k < disc {
                (self.n - 1).min(disc)
            } else {
                0
            };
            if p / self.k >= disc || c > max {
                if p == 0 {
                    self.done = true;
                    return None;
                }
                p -= 1;
                c = self.digits[p] + 1;
                continue;
            }
            self.digits[p] = c;
            let now = disc.max(c + 1);
            self.discovered[p + 1] = now;
            if self.n - now > len - (p + 1) {
                c += 1;
                continue;
            }
            if p + 1 == len {
                if now == self.n {
                    return Some(self.digits.clone());
                }
                c += 1;
                continue;
            }
            p += 1;
            c = 0;
        }
    }
}

/// Stream of every complete accessible automaton over `alphabet` with at
/// most `max_states` states, one per isomorphism class, in canonical order.
#[derive(Debug, Clone)]
pub struct DfaStream {
    alphabet: Alphabet,
    max_states: usize,
    n: usize,
    tables: TableIter,
    table: Option<Vec<usize>>,
    mask: u64,
}

/// Largest size accepted by [`enumerate_dfas`].
pub const MAX_ENUM_STATES: usize = 8;

pub fn enumerate_dfas(max_states: usize, alphabet: &Alphabet) -> DfaStream {
    assert!(
        max_states <= MAX_ENUM_STATES,
        "enumeration beyond {MAX_ENUM_STATES} states is not supported"
    );
    DfaStream {
        alphabet: alphabet.clone(),
        max_states,
        n: 1,
        tables: TableIter::new(1, alphabet.len()),
        table: None,
        mask: 0,
    }
}

impl DfaStream {
    /// Next automaton together with its code.
    pub fn next_coded(&mut self) -> Option<(DfaCode, Dfa)> {
        loop {
            if self.n > self.max_states {
                return None;
            }
            if let Some(table) = &self.table {
                if self.mask < (1u64 << self.n) {
                    let code = DfaCode {
                        states: self.n,
                        table: table.iter().map(|&t| t as u8).collect(),
                        finals: self.mask,
                    };
                    self.mask += 1;
                    let dfa = code.to_dfa(&self.alphabet);
                    return Some((code, dfa));
                }
            }
            match self.tables.next() {
                Some(t) => {
                    self.table = Some(t);
                    self.mask = 0;
                }
                None => {
                    self.n += 1;
                    self.table = None;
                    if self.n <= self.max_states {
                        self.tables = TableIter::new(self.n, self.alphabet.len());
                    }
                }
            }
        }
    }

    /// Iterator adaptor yielding `(code, dfa)` pairs.
    pub fn coded(self) -> impl Iterator<Item = (DfaCode, Dfa)> {
        let mut s = self;
        std::iter::from_fn(move || s.next_coded())
    }
}

impl Iterator for DfaStream {
    type Item = Dfa;

    fn next(&mut self) -> Option<Dfa> {
        self.next_coded().map(|(_, d)| d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Generate every table and final set, keep accessible ones, and dedup
    /// by breadth-first canonical form.
    fn naive_count(max_states: usize, k: usize) -> usize {
        let sigma = Alphabet::from_chars(&"abc"[..k]).unwrap();
        let mut seen = HashSet::new();
        for n in 1..=max_states {
            let len = n * k;
            let total = n.pow(len as u32);
            for code in 0..total {
                let mut table = Vec::with_capacity(len);
                let mut x = code;
                for _ in 0..len {
                    table.push(x % n);
                    x /= n;
                }
                for mask in 0..(1u32 << n) {
                    let finals = (0..n).map(|q| mask >> q & 1 == 1).collect();
                    let dfa = Dfa::from_table(sigma.clone(), table.clone(), 0, finals).unwrap();
                    if dfa.is_accessible() {
                        let canon = dfa.trimmed();
                        seen.insert((canon.table().to_vec(), canon.final_flags().to_vec()));
                    }
                }
            }
        }
        seen.len()
    }

    #[test]
    fn one_state_unary() {
        let sigma = Alphabet::from_chars("a").unwrap();
        assert_eq!(enumerate_dfas(1, &sigma).count(), 2);
    }

    #[test]
    fn counts_match_naive_generate_and_dedup() {
        // frozen regression values, cross-checked against the naive count
        let cases = [
            (2, 1, 10),
            (2, 2, 2 + 12 * 4),
            (3, 2, 2 + 12 * 4 + 216 * 8),
            (3, 1, 10 + 24),
        ];
        for (n, k, expected) in cases {
            let sigma = Alphabet::from_chars(&"abc"[..k]).unwrap();
            let got = enumerate_dfas(n, &sigma).count();
            assert_eq!(got, expected, "n={n} k={k}");
            assert_eq!(naive_count(n, k), expected, "naive n={n} k={k}");
        }
        assert_eq!(
            naive_count(2, 3),
            enumerate_dfas(2, &Alphabet::from_chars("abc").unwrap()).count()
        );
    }

    #[test]
    fn initially_connected_table_counts() {
        // 1, 12, 216, 5248 tables for two symbols
        let counts: Vec<usize> = (1..=4).map(|n| TableIter::new(n, 2).count()).collect();
        assert_eq!(counts, [1, 12, 216, 5248]);
    }

    #[test]
    fn stream_is_canonical_sorted_and_deterministic() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let a: Vec<DfaCode> = enumerate_dfas(3, &sigma).coded().map(|(c, _)| c).collect();
        let b: Vec<DfaCode> = enumerate_dfas(3, &sigma).coded().map(|(c, _)| c).collect();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        for dfa in enumerate_dfas(3, &sigma) {
            assert!(dfa.is_canonically_numbered());
        }
    }

    #[test]
    fn code_round_trip_and_display() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let m1 = crate::fixtures::m1().trimmed();
        let code = DfaCode::of(&m1);
        assert_eq!(code.to_string(), "n3:111222:010");
        assert!(code.to_dfa(&sigma).same_structure(&m1));
    }
}
