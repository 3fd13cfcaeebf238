//! The integral group ring Z[F] and Fox free derivatives.

use std::collections::BTreeMap;
use std::fmt;

use super::word::Word;

/// Finite formal sum Σ c_w·w over freely reduced words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElt {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn term(w: Word, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let vanished = {
            let entry = self.terms.entry(w.clone()).or_insert(0);
            *entry += c;
            *entry == 0
        };
        if vanished {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in o.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElt {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in o.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, c) in self.terms() {
            out.add_term(w.concat(u), c);
        }
        out
    }

    /// Augmentation Σ c_w.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Apply a word map termwise (e.g. deleting letters).
    pub fn map_words<F: Fn(&Word) -> Word>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(f(w), c);
        }
        out
    }

    /// Image under a group homomorphism given on generators.
    pub fn substitute(&self, images: &[Word]) -> Self {
        self.map_words(|w| w.substitute(images))
    }
}

impl fmt::Debug for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}·{:?}", w.letters()))
            .collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

/// ∂w/∂x_g, using ∂(uv) = ∂u + u·∂v and ∂(x⁻¹)/∂x = −x⁻¹.
pub fn fox_derivative(w: &Word, g: usize) -> GroupRingElt {
    let target = g as i32 + 1;
    let mut out = GroupRingElt::zero();
    let mut prefix: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l == target {
            out.add_term(Word::new(prefix.clone()), 1);
        } else if l == -target {
            let mut p = prefix.clone();
            p.push(l);
            out.add_term(Word::new(p), -1);
        }
        prefix.push(l);
    }
    out
}

/// Rows: words; columns: generators.
pub fn fox_jacobian(words: &[Word], ngens: usize) -> Vec<Vec<GroupRingElt>> {
    words
        .iter()
        .map(|w| (0..ngens).map(|g| fox_derivative(w, g)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fundamental_identity(w: &Word, ngens: usize) {
        let mut lhs = GroupRingElt::zero();
        for g in 0..ngens {
            let xm1 = GroupRingElt::word(Word::gen(g)).sub(&GroupRingElt::one());
            lhs = lhs.add(&fox_derivative(w, g).mul(&xm1));
        }
        let rhs = GroupRingElt::word(w.clone()).sub(&GroupRingElt::one());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_examples() {
        let aba = Word::new(vec![1, 2, 1]);
        let d = fox_derivative(&aba, 0);
        let expect = GroupRingElt::one().add(&GroupRingElt::word(Word::new(vec![1, 2])));
        assert_eq!(d, expect);
        let ainv = Word::new(vec![-1]);
        assert_eq!(fox_derivative(&ainv, 0), GroupRingElt::term(ainv.clone(), -1));
    }

    #[test]
    fn fundamental_identity_examples() {
        fundamental_identity(&Word::new(vec![1, 1, 1, 2, 2]), 2);
        fundamental_identity(&Word::new(vec![1, -2, -1, 2, 2, -1, -1]), 2);
        fundamental_identity(&Word::empty(), 2);
    }
}
