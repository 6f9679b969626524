//! Language operations. Every public operation returns the minimal
//! automaton of its result; [`Operation::apply`] can skip the final
//! minimization to expose the raw construction (for example the subset
//! states of the Kleene-plus construction).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::{product, Combine, Dfa, StateId};
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::nfa::{determinize, remove_lambda, Nfa};

/// A monoid homomorphism from `source*` to `target*`, given by the image of
/// every source symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Homomorphism(format!(
                "{} images for {} source symbols",
                images.len(),
                source.len()
            )));
        }
        if let Some(s) = images
            .iter()
            .flat_map(|w| w.symbols())
            .find(|&&s| !target.contains(s))
        {
            return Err(Error::Homomorphism(format!(
                "image symbol {s} is not in the target alphabet {target}"
            )));
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    /// Builds `h` from `(symbol, image)` pairs written as strings, e.g.
    /// `[('a', "ab"), ('b', "b")]`; `"_"` or `""` is the empty image.
    pub fn from_pairs(pairs: &[(char, &str)], target: &Alphabet) -> Result<Self> {
        let source = Alphabet::new(
            pairs
                .iter()
                .map(|&(c, _)| Symbol::new(c))
                .collect::<Result<_>>()?,
        )?;
        let images = pairs
            .iter()
            .map(|&(_, img)| target.word(if img == "_" { "" } else { img }))
            .collect::<Result<_>>()?;
        Homomorphism::new(source, target.clone(), images)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Homomorphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images: alphabet.symbols().iter().map(|&s| Word(vec![s])).collect(),
        }
    }

    /// Parses one `a -> ab` line per source symbol (`a -> _` for λ). Without
    /// an explicit `target`, the target alphabet is the set of image symbols
    /// in first-appearance order.
    pub fn parse(text: &str, target: Option<&Alphabet>) -> Result<Self> {
        let mut sources = Vec::new();
        let mut raw_images = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::format(no, "expected `symbol -> image`"))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let mut chars = lhs.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::format(no, format!("invalid source symbol {lhs:?}")));
            };
            let symbol = Symbol::new(c).map_err(|e| Error::format(no, e.to_string()))?;
            if sources.contains(&symbol) {
                return Err(Error::format(no, format!("symbol {c} mapped twice")));
            }
            let image = if rhs == "_" { "" } else { rhs };
            let image: Vec<Symbol> = image
                .chars()
                .map(Symbol::new)
                .collect::<Result<_>>()
                .map_err(|e| Error::format(no, e.to_string()))?;
            sources.push(symbol);
            raw_images.push(image);
        }
        let source = Alphabet::new(sources)?;
        let target = match target {
            Some(t) => t.clone(),
            None => {
                let mut seen: Vec<Symbol> = Vec::new();
                for &s in raw_images.iter().flatten() {
                    if !seen.contains(&s) {
                        seen.push(s);
                    }
                }
                Alphabet::new(seen).map_err(|_| {
                    Error::Homomorphism("every image is empty; give the target alphabet".into())
                })?
            }
        };
        Homomorphism::new(source, target, raw_images.into_iter().map(Word).collect())
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    /// Image of the source symbol at index `a`.
    pub fn image(&self, a: usize) -> &Word {
        &self.images[a]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_lambda_free(&self) -> bool {
        self.images.iter().all(|w| !w.is_empty())
    }

    /// `h(word)`; `None` if the word leaves the source alphabet.
    pub fn apply(&self, word: &Word) -> Option<Word> {
        let mut out = Vec::new();
        for &s in word.symbols() {
            out.extend_from_slice(self.images[self.source.index_of(s)?].symbols());
        }
        Some(Word(out))
    }

    /// Same mapping with a different target alphabet.
    pub fn with_target(&self, target: Alphabet) -> Result<Self> {
        Homomorphism::new(self.source.clone(), target, self.images.clone())
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, w) in self.source.symbols().iter().zip(&self.images) {
            writeln!(f, "{s} -> {w}")?;
        }
        Ok(())
    }
}

fn union_raw(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    product(a, b, Combine::Or)
}

fn intersection_raw(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    product(a, b, Combine::And)
}

/// Disjoint copy of `dfa` inside `nfa`; returns the offset of its states.
fn copy_into(nfa: &mut Nfa, dfa: &Dfa, tag: &str) -> StateId {
    let offset = nfa.num_states();
    for q in dfa.states() {
        nfa.add_state(format!("{}{tag}", dfa.name(q)));
    }
    for q in dfa.states() {
        for a in 0..dfa.alphabet().len() {
            nfa.add_transition(offset + q, a, offset + dfa.next(q, a));
        }
    }
    offset
}

fn concat_raw(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    a.alphabet().check_same(b.alphabet())?;
    let mut nfa = Nfa::new(a.alphabet().clone());
    let left = copy_into(&mut nfa, a, "");
    let right = copy_into(&mut nfa, b, "'");
    nfa.set_initial(left + a.initial(), true);
    for f in a.finals() {
        nfa.add_lambda(left + f, right + b.initial());
    }
    for f in b.finals() {
        nfa.set_final(right + f, true);
    }
    Ok(determinize(&remove_lambda(&nfa)))
}

/// Steps 1 to 3 of the Kleene-plus construction: λ-edges from every final
/// state back to the initial state, λ-removal, subset construction. States
/// are named by their subsets.
pub fn kleene_plus_subsets(a: &Dfa) -> Dfa {
    let mut nfa = Nfa::from_dfa(a);
    for f in a.finals() {
        nfa.add_lambda(f, a.initial());
    }
    determinize(&remove_lambda(&nfa))
}

fn star_raw(a: &Dfa) -> Dfa {
    product(
        &kleene_plus_subsets(a),
        &Dfa::lambda_only(a.alphabet()),
        Combine::Or,
    )
    .expect("same alphabet")
}

fn hom_image_raw(a: &Dfa, h: &Homomorphism) -> Result<Dfa> {
    a.alphabet().check_same(h.source())?;
    let mut nfa = Nfa::new(h.target().clone());
    for q in a.states() {
        nfa.add_state(a.name(q));
    }
    for q in a.states() {
        for c in 0..a.alphabet().len() {
            let p = a.next(q, c);
            let image = h.image(c).symbols();
            if image.is_empty() {
                nfa.add_lambda(q, p);
                continue;
            }
            let mut from = q;
            for (i, &s) in image.iter().enumerate() {
                let to = if i + 1 == image.len() {
                    p
                } else {
                    let id = nfa.num_states();
                    nfa.add_state(format!("h{id}"))
                };
                let sym = h
                    .target()
                    .index_of(s)
                    .expect("checked by Homomorphism::new");
                nfa.add_transition(from, sym, to);
                from = to;
            }
        }
        if a.is_final(q) {
            nfa.set_final(q, true);
        }
    }
    nfa.set_initial(a.initial(), true);
    Ok(determinize(&remove_lambda(&nfa)))
}

fn hom_inverse_raw(a: &Dfa, h: &Homomorphism) -> Result<Dfa> {
    let images: Vec<Vec<usize>> = h
        .images()
        .iter()
        .map(|w| {
            w.symbols()
                .iter()
                .map(|&s| a.alphabet().index_of_char(s.as_char()))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()
        .map_err(|_| Error::AlphabetMismatch {
            left: h.target().to_string(),
            right: a.alphabet().to_string(),
        })?;
    let mut delta = Vec::with_capacity(a.num_states() * images.len());
    for q in a.states() {
        for img in &images {
            delta.push(a.run_indices(q, img));
        }
    }
    let dfa = Dfa::from_parts(
        h.source().clone(),
        a.names().to_vec(),
        delta,
        a.initial(),
        a.final_flags().to_vec(),
    );
    Ok(dfa.trimmed())
}

fn mirror_raw(a: &Dfa) -> Dfa {
    let mut nfa = Nfa::new(a.alphabet().clone());
    for q in a.states() {
        nfa.add_state(a.name(q));
    }
    for q in a.states() {
        for c in 0..a.alphabet().len() {
            nfa.add_transition(a.next(q, c), c, q);
        }
        if a.is_final(q) {
            nfa.set_initial(q, true);
        }
    }
    nfa.set_final(a.initial(), true);
    determinize(&nfa)
}

fn left_quotient_raw(k: &Dfa, l: &Dfa) -> Result<Dfa> {
    k.alphabet().check_same(l.alphabet())?;
    let sigma = k.alphabet().len();
    // States of `l` reached by words of K: reachable product pairs whose
    // K-component is final.
    let mut seen: HashMap<(StateId, StateId), ()> = HashMap::new();
    let mut stack = vec![(k.initial(), l.initial())];
    seen.insert((k.initial(), l.initial()), ());
    let mut starts = vec![false; l.num_states()];
    while let Some((p, q)) = stack.pop() {
        if k.is_final(p) {
            starts[q] = true;
        }
        for a in 0..sigma {
            let next = (k.next(p, a), l.next(q, a));
            if seen.insert(next, ()).is_none() {
                stack.push(next);
            }
        }
    }
    let mut nfa = Nfa::from_dfa(l);
    nfa.set_initial(l.initial(), false);
    for q in l.states() {
        if starts[q] {
            nfa.set_initial(q, true);
        }
    }
    Ok(determinize(&nfa))
}

fn right_quotient_raw(l: &Dfa, k: &Dfa) -> Result<Dfa> {
    l.alphabet().check_same(k.alphabet())?;
    let (nl, nk) = (l.num_states(), k.num_states());
    let sigma = l.alphabet().len();
    let id = |p: StateId, s: StateId| p * nk + s;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); nl * nk];
    for p in 0..nl {
        for s in 0..nk {
            for a in 0..sigma {
                preds[id(l.next(p, a), k.next(s, a))].push(id(p, s));
            }
        }
    }
    // Pairs from which some common word reaches final × final.
    let mut good = vec![false; nl * nk];
    let mut stack = Vec::new();
    for p in l.finals() {
        for s in k.finals() {
            good[id(p, s)] = true;
            stack.push(id(p, s));
        }
    }
    while let Some(x) = stack.pop() {
        for &y in &preds[x] {
            if !good[y] {
                good[y] = true;
                stack.push(y);
            }
        }
    }
    let finals = (0..nl).map(|q| good[id(q, k.initial())]).collect();
    Ok(l.with_finals(finals).trimmed())
}

/// L(a) ∪ L(b).
pub fn union(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    union_raw(a, b).map(|d| minimize(&d))
}

/// L(a) ∩ L(b).
pub fn intersection(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    intersection_raw(a, b).map(|d| minimize(&d))
}

/// Σ* − L(a).
pub fn complement(a: &Dfa) -> Dfa {
    minimize(&a.flip_finals())
}

/// L(a)·L(b).
pub fn concatenate(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    concat_raw(a, b).map(|d| minimize(&d))
}

/// L(a)⁺, built by the four-step construction: λ-edges from the finals to
/// the initial state, λ-removal, subset construction, minimization.
pub fn kleene_plus(a: &Dfa) -> Dfa {
    minimize(&kleene_plus_subsets(a))
}

/// L(a)* = L(a)⁺ ∪ {λ}.
pub fn kleene_star(a: &Dfa) -> Dfa {
    minimize(&star_raw(a))
}

/// h(L(a)), over the target alphabet of `h`.
pub fn hom_image(a: &Dfa, h: &Homomorphism) -> Result<Dfa> {
    hom_image_raw(a, h).map(|d| minimize(&d))
}

/// h⁻¹(L(a)) = {w : h(w) ∈ L(a)}, over the source alphabet of `h`.
pub fn hom_inverse(a: &Dfa, h: &Homomorphism) -> Result<Dfa> {
    hom_inverse_raw(a, h).map(|d| minimize(&d))
}

/// Reversal of every word.
pub fn mirror(a: &Dfa) -> Dfa {
    minimize(&mirror_raw(a))
}

/// K\L = {w : uw ∈ L for some u ∈ K}.
pub fn left_quotient(k: &Dfa, l: &Dfa) -> Result<Dfa> {
    left_quotient_raw(k, l).map(|d| minimize(&d))
}

/// L/K = {w : wu ∈ L for some u ∈ K}.
pub fn right_quotient(l: &Dfa, k: &Dfa) -> Result<Dfa> {
    right_quotient_raw(l, k).map(|d| minimize(&d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Union,
    Intersect,
    Complement,
    Concat,
    Plus,
    Star,
    Hom,
    InvHom,
    Mirror,
    LeftQuotient,
    RightQuotient,
}

impl Operation {
    pub const ALL: [Operation; 11] = [
        Operation::Union,
        Operation::Intersect,
        Operation::Complement,
        Operation::Concat,
        Operation::Plus,
        Operation::Star,
        Operation::Hom,
        Operation::InvHom,
        Operation::Mirror,
        Operation::LeftQuotient,
        Operation::RightQuotient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Union => "union",
            Operation::Intersect => "intersect",
            Operation::Complement => "complement",
            Operation::Concat => "concat",
            Operation::Plus => "plus",
            Operation::Star => "star",
            Operation::Hom => "hom",
            Operation::InvHom => "invhom",
            Operation::Mirror => "mirror",
            Operation::LeftQuotient => "lquot",
            Operation::RightQuotient => "rquot",
        }
    }

    /// Number of automaton operands.
    pub fn arity(self) -> usize {
        match self {
            Operation::Union
            | Operation::Intersect
            | Operation::Concat
            | Operation::LeftQuotient
            | Operation::RightQuotient => 2,
            _ => 1,
        }
    }

    pub fn needs_homomorphism(self) -> bool {
        matches!(self, Operation::Hom | Operation::InvHom)
    }

    /// Applies the operation; with `minimal = false` the raw construction is
    /// returned (complete and accessible, not minimized).
    pub fn apply(self, inputs: &[Dfa], h: Option<&Homomorphism>, minimal: bool) -> Result<Dfa> {
        if inputs.len() != self.arity() {
            return Err(Error::Invalid(format!(
                "{} takes {} automata, got {}",
                self.name(),
                self.arity(),
                inputs.len()
            )));
        }
        let hom =
            || h.ok_or_else(|| Error::Invalid(format!("{} needs a homomorphism", self.name())));
        let a = &inputs[0];
        let b = inputs.get(1);
        let raw = match self {
            Operation::Union => union_raw(a, b.unwrap())?,
            Operation::Intersect => intersection_raw(a, b.unwrap())?,
            Operation::Complement => a.flip_finals(),
            Operation::Concat => concat_raw(a, b.unwrap())?,
            Operation::Plus => kleene_plus_subsets(a),
            Operation::Star => star_raw(a),
            Operation::Hom => hom_image_raw(a, hom()?)?,
            Operation::InvHom => hom_inverse_raw(a, hom()?)?,
            Operation::Mirror => mirror_raw(a),
            Operation::LeftQuotient => left_quotient_raw(a, b.unwrap())?,
            Operation::RightQuotient => right_quotient_raw(a, b.unwrap())?,
        };
        Ok(if minimal { minimize(&raw) } else { raw })
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operation::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown operation {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::{equivalent, is_isomorphic};
    use crate::fixtures;
    use crate::observability::{is_observable_language, so_index};
    use crate::regex::compile_str;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn re(text: &str) -> Dfa {
        compile_str(text, &ab()).unwrap()
    }

    fn eq(a: &Dfa, b: &Dfa) -> bool {
        equivalent(a, b).unwrap()
    }

    #[test]
    fn union_examples() {
        let u = union(&fixtures::m1(), &fixtures::m2()).unwrap();
        assert!(is_isomorphic(&u, &fixtures::union_table()));
        let m1 = fixtures::m1();
        assert!(eq(&union(&m1, &Dfa::empty_language(&ab())).unwrap(), &m1));
        assert!(eq(&union(&m1, &m1).unwrap(), &m1));
    }

    #[test]
    fn intersection_examples() {
        let m1 = fixtures::m1();
        assert!(eq(&intersection(&m1, &fixtures::m2()).unwrap(), &re("a|b")));
        assert!(eq(&intersection(&m1, &Dfa::all_words(&ab())).unwrap(), &m1));
        let none = intersection(&m1, &Dfa::empty_language(&ab())).unwrap();
        assert!(eq(&none, &Dfa::empty_language(&ab())));
    }

    #[test]
    fn complement_examples() {
        let c = complement(&fixtures::sigma_plus());
        assert!(eq(&c, &Dfa::lambda_only(&ab())));
        let m1 = fixtures::m1();
        assert!(eq(&complement(&complement(&m1)), &m1));
        assert!(is_observable_language(&complement(&re("_|a"))));
    }

    #[test]
    fn concatenate_examples() {
        let ap = re("a+");
        let bp = re("b+");
        let c = concatenate(&ap, &bp).unwrap();
        assert!(eq(&c, &re("a+b+")));
        assert_eq!(so_index(&c), 2);
        let m1 = fixtures::m1();
        assert!(eq(
            &concatenate(&m1, &Dfa::lambda_only(&ab())).unwrap(),
            &m1
        ));
        let none = concatenate(&m1, &Dfa::empty_language(&ab())).unwrap();
        assert!(eq(&none, &Dfa::empty_language(&ab())));
    }

    #[test]
    fn kleene_examples() {
        let sp = fixtures::sigma_plus();
        assert!(eq(&kleene_plus(&fixtures::m1()), &sp));
        assert!(eq(&kleene_plus(&sp), &sp));
        let e = Dfa::empty_language(&ab());
        assert!(eq(&kleene_plus(&e), &e));
        assert!(eq(&kleene_star(&e), &Dfa::lambda_only(&ab())));
        assert!(eq(&kleene_star(&sp), &Dfa::all_words(&ab())));
        assert!(eq(&kleene_star(&fixtures::m1()), &Dfa::all_words(&ab())));
    }

    #[test]
    fn subset_names_survive_without_minimization() {
        let raw = Operation::Plus
            .apply(&[fixtures::m1()], None, false)
            .unwrap();
        assert_eq!(raw.name(0), "{s}");
        assert_eq!(raw.names(), ["{s}", "{f}", "{f,r}"]);
    }

    #[test]
    fn hom_image_examples() {
        let h = Homomorphism::from_pairs(&[('a', "ab"), ('b', "b")], &ab()).unwrap();
        assert!(h.is_lambda_free());
        let img = hom_image(&fixtures::m1(), &h).unwrap();
        assert!(eq(&img, &re("(ab|b)(ab)*")));
        let id = Homomorphism::identity(&ab());
        assert!(eq(
            &hom_image(&fixtures::m1(), &id).unwrap(),
            &fixtures::m1()
        ));
        let collapse = Homomorphism::from_pairs(
            &[('a', "a"), ('b', "a")],
            &Alphabet::from_chars("a").unwrap(),
        )
        .unwrap();
        let a_plus = hom_image(&fixtures::sigma_plus(), &collapse).unwrap();
        assert!(eq(&a_plus, &fixtures::a_plus()));
    }

    #[test]
    fn hom_image_with_lambda_images() {
        let h = Homomorphism::from_pairs(&[('a', "_"), ('b', "b")], &ab()).unwrap();
        assert!(!h.is_lambda_free());
        // (a|b)a* ↦ {λ, b}
        assert!(eq(&hom_image(&fixtures::m1(), &h).unwrap(), &re("_|b")));
    }

    #[test]
    fn hom_inverse_examples() {
        let id = Homomorphism::identity(&ab());
        assert!(eq(
            &hom_inverse(&fixtures::m1(), &id).unwrap(),
            &fixtures::m1()
        ));
        let sigma_a = Alphabet::from_chars("a").unwrap();
        let aa = Homomorphism::from_pairs(&[('a', "aa")], &sigma_a).unwrap();
        let even = compile_str("(aa)*", &sigma_a).unwrap();
        let inv = hom_inverse(&even, &aa).unwrap();
        assert!(eq(&inv, &Dfa::all_words(&sigma_a)));
        // symbols missing from the automaton's alphabet are rejected
        let bad = Homomorphism::from_pairs(&[('a', "b")], &ab()).unwrap();
        assert!(hom_inverse(&even, &bad).is_err());
    }

    #[test]
    fn mirror_examples() {
        let m1 = fixtures::m1();
        assert!(eq(&mirror(&mirror(&m1)), &m1));
        assert!(eq(&mirror(&re("a+b+")), &re("b+a+")));
        let sp = fixtures::sigma_plus();
        assert!(eq(&mirror(&sp), &sp));
        assert!(eq(&mirror(&re("(a|b)a*")), &re("a*(a|b)")));
    }

    #[test]
    fn quotient_examples() {
        let l = re("ab+");
        assert!(eq(
            &left_quotient(&Dfa::lambda_only(&ab()), &l).unwrap(),
            &l
        ));
        assert!(eq(&left_quotient(&re("a"), &l).unwrap(), &re("b+")));
        let all = Dfa::all_words(&ab());
        assert!(eq(
            &left_quotient(&all, &fixtures::sigma_plus()).unwrap(),
            &all
        ));
        assert!(eq(
            &right_quotient(&l, &Dfa::lambda_only(&ab())).unwrap(),
            &l
        ));
        assert!(eq(&right_quotient(&l, &re("b")).unwrap(), &re("ab*")));
        let e = Dfa::empty_language(&ab());
        assert!(eq(&right_quotient(&e, &l).unwrap(), &e));
    }

    #[test]
    fn operation_names_round_trip() {
        for op in Operation::ALL {
            assert_eq!(op.name().parse::<Operation>().unwrap(), op);
        }
        assert!("shuffle".parse::<Operation>().is_err());
        let err = Operation::Union.apply(&[fixtures::m1()], None, true);
        assert!(err.is_err());
        assert!(Operation::Hom.apply(&[fixtures::m1()], None, true).is_err());
    }

    #[test]
    fn homomorphism_file_format() {
        let h = Homomorphism::parse("# h\na -> aba\nb -> bab\n", None).unwrap();
        assert_eq!(h.to_string(), "a -> aba\nb -> bab\n");
        assert_eq!(h.target().to_string(), "a,b");
        let l = Homomorphism::parse("a -> _\nb -> c\n", None).unwrap();
        assert!(!l.is_lambda_free());
        assert_eq!(l.target().to_string(), "c");
        assert!(Homomorphism::parse("a -> _\n", None).is_err());
        assert!(Homomorphism::parse("a -> b\na -> a\n", None).is_err());
        assert!(Homomorphism::parse("a b\n", None).is_err());
        let w = ab().word("ab").unwrap();
        assert_eq!(h.apply(&w).unwrap().to_string(), "ababab");
    }
}
