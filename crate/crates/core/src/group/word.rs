//! Words in free groups. A letter is a nonzero integer: +i for x_i, -i for x_i⁻¹
//! (generators are 1-based in this encoding).

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduced word from raw letters.
    pub fn new(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "letter 0 is not allowed");
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Generator `g` (0-based) raised to `e`.
    pub fn gen_pow(g: usize, e: i64) -> Self {
        let l = if e >= 0 { g as i32 + 1 } else { -(g as i32 + 1) };
        Word(vec![l; e.unsigned_abs() as usize])
    }

    pub fn gen(g: usize) -> Self {
        Self::gen_pow(g, 1)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, o: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word::new(v)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::new();
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word::new(v)
    }

    /// Product of a sequence of words.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(ws: I) -> Self {
        let mut v = Vec::new();
        for w in ws {
            v.extend_from_slice(&w.0);
        }
        Word::new(v)
    }

    /// Replace each letter of generator g by the word `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut v = Vec::new();
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            let img = if l > 0 { images[g].clone() } else { images[g].inverse() };
            v.extend_from_slice(&img.0);
        }
        Word::new(v)
    }

    /// Delete every letter whose generator satisfies `drop`.
    pub fn delete<F: Fn(usize) -> bool>(&self, drop: F) -> Self {
        Word::new(
            self.0
                .iter()
                .copied()
                .filter(|l| !drop(l.unsigned_abs() as usize - 1))
                .collect(),
        )
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut s = vec![0; ngens];
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            s[g] += l.signum() as i64;
        }
        s
    }

    /// Render with generator names, e.g. `a^2 b^-1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = &names[l.unsigned_abs() as usize - 1];
            let e = (j - i) as i64 * l.signum() as i64;
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Word::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::new(vec![1, 2, -2, -1, 1]);
        assert_eq!(w.letters(), &[1]);
        let u = Word::new(vec![1, 2, 1]);
        assert!(u.concat(&u.inverse()).is_empty());
        assert_eq!(u.pow(-2).pow(-1), u.pow(2));
    }

    #[test]
    fn substitution_and_rendering() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = Word::new(vec![1, 1, -2]);
        assert_eq!(w.render(&names), "a^2 b^-1");
        let s = w.substitute(&[Word::gen(1), Word::gen(0)]);
        assert_eq!(s.render(&names), "b^2 a^-1");
        assert_eq!(w.exponent_sums(2), vec![2, -1]);
    }
}
