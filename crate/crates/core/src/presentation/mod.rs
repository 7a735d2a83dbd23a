//! Finite group presentations: words, parsing, standard constructions, abelianization and cyclic covers.

mod abelian;
mod cover;
mod graph;
mod parse;
mod word;

use std::collections::HashSet;
use std::fmt;

pub use abelian::{abelianization, AbelianizationData};
pub use cover::cyclic_cover_presentation;
pub use graph::{graphs_up_to_isomorphism, SimpleGraph};
pub use parse::{parse_graph, parse_presentation};
pub use word::Word;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    gen_names: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn letter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl Presentation {
    /// Relators are cyclically reduced and trivial ones dropped.
    pub fn new(gen_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if gen_names.is_empty() {
            return Err(Error::Computation("a presentation needs at least one generator".into()));
        }
        let mut seen = HashSet::new();
        for name in &gen_names {
            if !valid_name(name) || !seen.insert(name.as_str()) {
                return Err(Error::Computation(format!("invalid or repeated generator name `{name}`")));
            }
        }
        let n = gen_names.len();
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.max_generator().filter(|&g| g >= n) {
                return Err(Error::GeneratorIndex { index: g, n });
            }
            let r = r.cyclically_reduced();
            if !r.is_identity() {
                rels.push(r);
            }
        }
        Ok(Presentation { gen_names, relators: rels })
    }

    /// Free group of rank `n` on generators `a, b, c, ...`.
    pub fn free(n: usize) -> Self {
        Self::new(letter_names(n), vec![]).expect("valid names")
    }

    /// Free abelian group of rank `n`.
    pub fn free_abelian(n: usize) -> Self {
        let rels = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| Word::commutator(&Word::generator(i), &Word::generator(j))))
            .collect();
        Self::new(letter_names(n), rels).expect("valid names")
    }

    /// The trivial group as `<a | a>`.
    pub fn trivial() -> Self {
        Self::new(letter_names(1), vec![Word::generator(0)]).expect("valid names")
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn num_generators(&self) -> usize {
        self.gen_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Canonical text form, accepted back by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\nrels:\n", self.gen_names.join(" "));
        for r in &self.relators {
            s.push_str(&r.render(&self.gen_names));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.gen_names)).collect();
        write!(f, "<{} | {}>", self.gen_names.join(", "), rels.join(", "))
    }
}

/// One generator per vertex and one commutator per edge.
pub fn raag_presentation(graph: &SimpleGraph) -> Presentation {
    let rels = graph
        .edges()
        .into_iter()
        .map(|(a, b)| Word::commutator(&Word::generator(a), &Word::generator(b)))
        .collect();
    Presentation::new(graph.vertices().to_vec(), rels).expect("graph vertex names are valid generators")
}

/// Fundamental group of the closed orientable surface of genus `g` with `s` punctures.
///
/// Closed surfaces use `[a1,b1]...[ag,bg]`; punctured ones are free of rank `2g+s-1`,
/// with generators `a1 b1 ... c1 ... c(s-1)`. Trivial cases give `<a | a>`.
pub fn surface_presentation(g: usize, s: usize) -> Presentation {
    let mut names = Vec::new();
    for i in 1..=g {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    if s == 0 {
        if g == 0 {
            return Presentation::trivial();
        }
        let rel = (0..g).fold(Word::identity(), |w, i| {
            w.mul(&Word::commutator(&Word::generator(2 * i), &Word::generator(2 * i + 1)))
        });
        return Presentation::new(names, vec![rel]).expect("valid names");
    }
    names.extend((1..s).map(|j| format!("c{j}")));
    if names.is_empty() {
        return Presentation::trivial();
    }
    Presentation::new(names, vec![]).expect("valid names")
}

/// `P x Q`: generators of `P` then `Q` (renamed on collision), all relators, and every `[p_i, q_j]`.
pub fn direct_product(p: &Presentation, q: &Presentation) -> Presentation {
    let np = p.num_generators();
    let mut names = p.gen_names.clone();
    for name in &q.gen_names {
        let mut candidate = name.clone();
        let mut k = 2;
        while names.contains(&candidate) || (candidate != *name && q.gen_names.contains(&candidate)) {
            candidate = format!("{name}_{k}");
            k += 1;
        }
        names.push(candidate);
    }
    let shift = |w: &Word| Word::from_syllables(w.syllables().iter().map(|&(g, e)| (g + np, e)));
    let mut rels: Vec<Word> = p.relators.clone();
    rels.extend(q.relators.iter().map(shift));
    for i in 0..np {
        for j in 0..q.num_generators() {
            rels.push(Word::commutator(&Word::generator(i), &Word::generator(np + j)));
        }
    }
    Presentation::new(names, rels).expect("names made distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn raag_examples() {
        let k2 = raag_presentation(&SimpleGraph::complete(2));
        assert_eq!(k2.relators(), &[Word::from_letters(&[1, 2, -1, -2])]);
        assert!(raag_presentation(&SimpleGraph::empty(3)).relators().is_empty());
        let p3 = raag_presentation(&SimpleGraph::path(3));
        assert_eq!(p3.relators().len(), 2);
        assert_eq!(p3.relators()[1], Word::from_letters(&[2, 3, -2, -3]));
    }

    #[test]
    fn surfaces() {
        assert_eq!(surface_presentation(1, 0).relators().len(), 1);
        let s2 = surface_presentation(2, 0);
        assert_eq!(s2.gen_names(), &["a1", "b1", "a2", "b2"]);
        assert_eq!(s2.relators(), &[Word::from_letters(&[1, 2, -1, -2, 3, 4, -3, -4])]);
        let f2 = surface_presentation(0, 3);
        assert_eq!(f2.num_generators(), 2);
        assert!(f2.relators().is_empty());
        assert_eq!(surface_presentation(0, 0), Presentation::trivial());
        assert_eq!(surface_presentation(0, 1), Presentation::trivial());
    }

    fn relator_set(p: &Presentation) -> BTreeSet<Word> {
        p.relators().iter().cloned().collect()
    }

    #[test]
    fn products_match_bipartite_raags() {
        assert_eq!(relator_set(&direct_product(&Presentation::free(1), &Presentation::free(1))), relator_set(&Presentation::free_abelian(2)));
        for (m, n) in [(2, 1), (2, 2), (1, 3), (3, 2)] {
            let prod = direct_product(&Presentation::free(m), &Presentation::free(n));
            let raag = raag_presentation(&SimpleGraph::complete_bipartite(m, n));
            assert_eq!(relator_set(&prod), relator_set(&raag), "F_{m} x F_{n}");
        }
        let renamed = direct_product(&Presentation::free(2), &Presentation::free(2));
        assert_eq!(renamed.gen_names(), &["a", "b", "a_2", "b_2"]);
    }

    #[test]
    fn round_trip_of_canonical_form() {
        let text = "gens: x y z\nrels: [x,y]^2 z\n(x z)^-3\n";
        let p = parse_presentation(text).unwrap();
        let again = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, again);
        assert_eq!(again.to_text(), p.to_text());
    }

    fn word_strategy(n: usize) -> impl Strategy<Value = Word> {
        let n = n as i64;
        prop::collection::vec(prop_oneof![1..=n, -n..=-1], 0..12).prop_map(|ls| Word::from_letters(&ls))
    }

    proptest! {
        #[test]
        fn parse_print_parse_is_identity(rels in prop::collection::vec(word_strategy(3), 0..5)) {
            let p = Presentation::new(letter_names(3), rels).unwrap();
            let q = parse_presentation(&p.to_text()).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_text(), p.to_text());
        }
    }
}
