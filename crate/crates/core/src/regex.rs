//! Regular expressions over a declared alphabet.
//!
//! Surface syntax, lowest to highest precedence:
//!
//! | syntax    | meaning                |
//! |-----------|------------------------|
//! | `r|s`     | union                  |
//! | `rs`      | concatenation          |
//! | `r*` `r+` | Kleene star / plus     |
//! | `(r)`     | grouping               |
//! | `_`       | the empty word λ       |
//! | `~`       | the empty language ∅   |
//!
//! Whitespace between tokens is ignored. Union is written `|` rather than
//! the `+` of textbook notation, so `(a+b)a^*` is spelled `(a|b)a*`.

use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::nfa::{determinize, remove_lambda, Nfa};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    EmptySet,
    Lambda,
    Sym(Symbol),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    pub fn plus(a: Regex) -> Regex {
        Regex::Plus(Box::new(a))
    }

    /// `Sym(c)`; panics if `c` is not a valid symbol.
    pub fn sym(c: char) -> Regex {
        Regex::Sym(Symbol::new(c).expect("valid symbol"))
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) | Regex::Plus(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, r: &Regex, min: u8) -> fmt::Result {
            if r.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        }
        match self {
            Regex::EmptySet => f.write_str("~"),
            Regex::Lambda => f.write_str("_"),
            Regex::Sym(s) => write!(f, "{s}"),
            Regex::Union(a, b) => {
                child(f, a, 0)?;
                f.write_str("|")?;
                child(f, b, 1)
            }
            Regex::Concat(a, b) => {
                child(f, a, 1)?;
                child(f, b, 2)
            }
            Regex::Star(a) => {
                child(f, a, 3)?;
                f.write_str("*")
            }
            Regex::Plus(a) => {
                child(f, a, 3)?;
                f.write_str("+")
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<char> {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Regex {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.bump('|');
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.postfix()?;
        while matches!(self.peek(), Some(c) if c != '|' && c != ')') {
            let right = self.postfix()?;
            left = Regex::concat(left, right);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut inner = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump('*');
                    inner = Regex::star(inner);
                }
                Some('+') => {
                    self.bump('+');
                    inner = Regex::plus(inner);
                }
                _ => return Ok(inner),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of expression"));
        };
        match c {
            '(' => {
                self.bump(c);
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.bump(')');
                Ok(inner)
            }
            '_' => {
                self.bump(c);
                Ok(Regex::Lambda)
            }
            '~' => {
                self.bump(c);
                Ok(Regex::EmptySet)
            }
            ')' | '|' | '*' | '+' => Err(self.error(format!("unexpected `{c}`"))),
            _ => {
                let symbol =
                    Symbol::new(c).map_err(|_| self.error(format!("invalid symbol `{c}`")))?;
                if !self.alphabet.contains(symbol) {
                    return Err(self.error(format!("symbol `{c}` is not in the alphabet")));
                }
                self.bump(c);
                Ok(Regex::Sym(symbol))
            }
        }
    }
}

/// Parses `text`; errors carry the byte offset of the offending token.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let mut parser = Parser {
        text,
        pos: 0,
        alphabet,
    };
    let regex = parser.union()?;
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected `{c}`")));
    }
    Ok(regex)
}

/// Thompson construction into an automaton with λ-transitions. Returns the
/// automaton with a single initial and a single final state.
pub fn thompson(regex: &Regex, alphabet: &Alphabet) -> Result<Nfa> {
    fn build(nfa: &mut Nfa, r: &Regex, alphabet: &Alphabet) -> Result<(usize, usize)> {
        let fresh = |nfa: &mut Nfa| {
            let s = nfa.num_states();
            nfa.add_state(format!("t{s}"))
        };
        Ok(match r {
            Regex::EmptySet => (fresh(nfa), fresh(nfa)),
            Regex::Lambda => {
                let (s, e) = (fresh(nfa), fresh(nfa));
                nfa.add_lambda(s, e);
                (s, e)
            }
            Regex::Sym(sym) => {
                let a = alphabet
                    .index_of(*sym)
                    .ok_or(Error::UnknownSymbol(sym.as_char()))?;
                let (s, e) = (fresh(nfa), fresh(nfa));
                nfa.add_transition(s, a, e);
                (s, e)
            }
            Regex::Concat(x, y) => {
                let (s1, e1) = build(nfa, x, alphabet)?;
                let (s2, e2) = build(nfa, y, alphabet)?;
                nfa.add_lambda(e1, s2);
                (s1, e2)
            }
            Regex::Union(x, y) => {
                let (s1, e1) = build(nfa, x, alphabet)?;
                let (s2, e2) = build(nfa, y, alphabet)?;
                let (s, e) = (fresh(nfa), fresh(nfa));
                nfa.add_lambda(s, s1);
                nfa.add_lambda(s, s2);
                nfa.add_lambda(e1, e);
                nfa.add_lambda(e2, e);
                (s, e)
            }
            Regex::Star(x) | Regex::Plus(x) => {
                let (s1, e1) = build(nfa, x, alphabet)?;
                let (s, e) = (fresh(nfa), fresh(nfa));
                nfa.add_lambda(s, s1);
                nfa.add_lambda(e1, s1);
                nfa.add_lambda(e1, e);
                if matches!(r, Regex::Star(_)) {
                    nfa.add_lambda(s, e);
                }
                (s, e)
            }
        })
    }

    let mut nfa = Nfa::new(alphabet.clone());
    let (s, e) = build(&mut nfa, regex, alphabet)?;
    nfa.set_initial(s, true);
    nfa.set_final(e, true);
    Ok(nfa)
}

/// Minimal complete automaton for `regex` over the declared alphabet.
pub fn compile(regex: &Regex, alphabet: &Alphabet) -> Result<Dfa> {
    let nfa = thompson(regex, alphabet)?;
    Ok(minimize(&determinize(&remove_lambda(&nfa))))
}

/// Parses and compiles in one step.
pub fn compile_str(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
    compile(&parse_regex(text, alphabet)?, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::is_isomorphic;
    use crate::fixtures;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn parses_textbook_notation() {
        let r = parse_regex("(a|b)a*", &ab()).unwrap();
        assert_eq!(
            r,
            Regex::concat(
                Regex::union(Regex::sym('a'), Regex::sym('b')),
                Regex::star(Regex::sym('a'))
            )
        );
        assert_eq!(parse_regex("_", &ab()).unwrap(), Regex::Lambda);
        assert_eq!(
            parse_regex("a+b+", &ab()).unwrap(),
            Regex::concat(Regex::plus(Regex::sym('a')), Regex::plus(Regex::sym('b')))
        );
        assert_eq!(parse_regex(" ~ ", &ab()).unwrap(), Regex::EmptySet);
    }

    #[test]
    fn display_round_trips() {
        for text in ["(a|b)a*", "a+b+", "(ab)*|_", "a(b|~)+", "(a*)*", "a|b|ab"] {
            let r = parse_regex(text, &ab()).unwrap();
            assert_eq!(parse_regex(&r.to_string(), &ab()).unwrap(), r, "{text}");
        }
    }

    #[test]
    fn syntax_errors_report_offsets() {
        let cases = [
            ("(a|b", 4),
            ("a||b", 2),
            ("", 0),
            ("ab)", 2),
            ("*a", 0),
            ("a c", 2),
        ];
        for (text, offset) in cases {
            match parse_regex(text, &ab()) {
                Err(Error::Regex { offset: o, .. }) => assert_eq!(o, offset, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn compile_fixtures() {
        let m1 = compile_str("(a|b)a*", &ab()).unwrap();
        assert!(is_isomorphic(&m1, &fixtures::m1()));
        let empty = compile_str("~", &Alphabet::from_chars("a").unwrap()).unwrap();
        assert_eq!(empty.num_states(), 1);
        assert_eq!(empty.finals().count(), 0);
        let apbp = compile_str("a+b+", &ab()).unwrap();
        assert_eq!(apbp.num_states(), 4);
    }

    #[test]
    fn declared_alphabet_may_exceed_used_symbols() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        let dfa = compile_str("a+", &sigma).unwrap();
        assert_eq!(dfa.alphabet(), &sigma);
        assert_eq!(dfa.num_states(), 3);
    }
}
