use std::fmt;

/// A freely reduced word in the free group, stored as syllables `x_gen^exp`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn syllable(g: usize, e: i64) -> Self {
        Self::from_syllables([(g, e)])
    }

    /// Builds a word, freely reducing on the way.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(it: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    /// Word from signed letters: `+g` is `x_g`, `-g` is `x_g^{-1}`, generators 1-based.
    pub fn from_letters(letters: &[i64]) -> Self {
        Self::from_syllables(letters.iter().map(|&l| ((l.unsigned_abs() - 1) as usize, l.signum())))
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letters as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.0).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `u v u^{-1} v^{-1}`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Conjugates away matching ends so that the word is cyclically reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.syllables.clone();
        loop {
            if s.len() < 2 {
                break;
            }
            let (fg, fe) = s[0];
            let (lg, le) = s[s.len() - 1];
            if fg != lg {
                break;
            }
            s.pop();
            let e = fe + le;
            if e == 0 {
                s.remove(0);
            } else {
                s[0] = (fg, e);
                break;
            }
        }
        Word { syllables: s }
    }

    /// Exponent sum of each generator.
    pub fn exponent_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &(g, e) in &self.syllables {
            v[g] += e;
        }
        v
    }

    /// Prefix of the first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word::from_syllables(self.letters().take(k))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.syllables.is_empty() {
            return "1".into();
        }
        self.syllables
            .iter()
            .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{}", names[g], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0)).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters(&[1, 2, -2, -1, 1]);
        assert_eq!(w, Word::generator(0));
        assert_eq!(Word::commutator(&Word::generator(0), &Word::generator(1)).len(), 4);
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_letters(&[1, 2, 1]);
        assert_eq!(w.cyclically_reduced(), Word::from_syllables([(0, 2), (1, 1)]));
        let v = Word::from_letters(&[-1, 2, 2, 1]);
        assert_eq!(v.cyclically_reduced(), Word::syllable(1, 2));
        let c = Word::from_letters(&[1, 2, -1]);
        assert_eq!(c.cyclically_reduced(), Word::generator(1));
    }

    fn letters() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(prop_oneof![1i64..=3, -3i64..=-1], 0..30)
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(ls in letters()) {
            let w = Word::from_letters(&ls);
            let again = Word::from_syllables(w.syllables().iter().copied());
            prop_assert_eq!(&again, &w);
            let c = w.cyclically_reduced();
            prop_assert_eq!(c.cyclically_reduced(), c.clone());
            prop_assert_eq!(c.exponent_vector(3), w.exponent_vector(3));
        }

        #[test]
        fn inverse_cancels(ls in letters()) {
            let w = Word::from_letters(&ls);
            prop_assert!(w.mul(&w.inverse()).is_identity());
        }
    }
}
