//! Representations of presentations into GL_d(Λ) and twisting of chain data.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::cyclotomic::CycNum;
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::smith::smith_normal_form;
use crate::error::{Error, Result};
use crate::group::fox::GroupRingElt;
use crate::group::presentation::SurgeryPresentation;
use crate::group::word::Word;

/// Images of the generators in GL_d(Λ).
#[derive(Clone, Debug)]
pub struct Representation {
    dim: usize,
    images: Vec<PolyMatrix>,
    inverses: Vec<PolyMatrix>,
}

impl Representation {
    pub fn new(images: Vec<PolyMatrix>) -> Result<Self> {
        let dim = images.first().map_or(1, |m| m.rows());
        let mut inverses = Vec::with_capacity(images.len());
        for m in &images {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidInput("generator images must be square of one size".into()));
            }
            inverses.push(
                invert(m).ok_or_else(|| Error::InvalidInput("generator image is not invertible over Λ".into()))?,
            );
        }
        Ok(Representation {
            dim,
            images,
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, g: usize) -> &PolyMatrix {
        &self.images[g]
    }

    pub fn evaluator(&self) -> WordEvaluator<'_> {
        WordEvaluator {
            rep: self,
            cache: HashMap::new(),
        }
    }

    pub fn eval_word(&self, w: &Word) -> PolyMatrix {
        self.evaluator().word(w)
    }

    /// Does every word map to the identity?
    pub fn kills(&self, words: &[Word]) -> bool {
        let id = PolyMatrix::identity(self.dim);
        let mut ev = self.evaluator();
        words.iter().all(|w| ev.word(w) == id)
    }

    /// β(g)^{#T}·β(g) = I for every generator.
    pub fn is_unitary(&self) -> bool {
        let id = PolyMatrix::identity(self.dim);
        self.images.iter().all(|m| m.bar_transpose().mul(m) == id)
    }

    /// Check that the representation factors through the presentation.
    pub fn check_presentation(&self, p: &SurgeryPresentation) -> Result<()> {
        if self.images.len() != p.ngens() {
            return Err(Error::InvalidInput(format!(
                "representation has {} generators, presentation has {}",
                self.images.len(),
                p.ngens()
            )));
        }
        if !self.kills(&p.cells()) {
            return Err(Error::InvalidInput("representation does not kill the relators".into()));
        }
        Ok(())
    }
}

/// Inverse over Λ when the determinant is a unit.
pub fn invert(m: &PolyMatrix) -> Option<PolyMatrix> {
    let sf = smith_normal_form(m);
    if sf.rank != m.rows() || !sf.diag.iter().all(|d| d.is_unit()) {
        return None;
    }
    // A = U⁻¹ D V⁻¹ ⇒ A⁻¹ = V D⁻¹ U, and D = I after normalization.
    Some(sf.v.mul(&sf.u))
}

/// Evaluates words with a prefix cache.
pub struct WordEvaluator<'a> {
    rep: &'a Representation,
    cache: HashMap<Vec<i32>, PolyMatrix>,
}

impl WordEvaluator<'_> {
    pub fn word(&mut self, w: &Word) -> PolyMatrix {
        let letters = w.letters();
        if let Some(m) = self.cache.get(letters) {
            return m.clone();
        }
        let mut start = letters.len();
        while start > 0 && !self.cache.contains_key(&letters[..start]) {
            start -= 1;
        }
        let mut acc = if start == 0 {
            PolyMatrix::identity(self.rep.dim)
        } else {
            self.cache[&letters[..start]].clone()
        };
        for i in start..letters.len() {
            let l = letters[i];
            let g = l.unsigned_abs() as usize - 1;
            let m = if l > 0 { &self.rep.images[g] } else { &self.rep.inverses[g] };
            acc = acc.mul(m);
            self.cache.insert(letters[..=i].to_vec(), acc.clone());
        }
        acc
    }

    pub fn elt(&mut self, e: &GroupRingElt) -> PolyMatrix {
        let d = self.rep.dim;
        let mut acc = PolyMatrix::zeros(d, d);
        for (w, c) in e.terms() {
            let m = self.word(w);
            acc = acc.add(&m.scale(&LaurentPoly::from_int(c)));
        }
        acc
    }

    /// Replace each entry of a Z[F]-matrix by its d×d image.
    pub fn twist(&mut self, m: &[Vec<GroupRingElt>]) -> PolyMatrix {
        let blocks: Vec<Vec<PolyMatrix>> = m
            .iter()
            .map(|row| row.iter().map(|e| self.elt(e)).collect())
            .collect();
        if blocks.is_empty() {
            return PolyMatrix::zeros(0, 0);
        }
        PolyMatrix::from_blocks(&blocks)
    }
}

/// Abelian representation x_i ↦ t^{w_i}.
pub fn abelian_rep(weights: &[i64]) -> Representation {
    Representation::new(
        weights
            .iter()
            .map(|&w| PolyMatrix::from_rows(vec![vec![LaurentPoly::monomial(CycNum::one(), w)]]))
            .collect(),
    )
    .expect("monomials are invertible")
}

/// ρ_θ for T(2, 2k+1), ξ = ζ_{2k+1}:
/// a ↦ diag(tξ^{−θ}, tξ^{θ}), b ↦ [[0, t^{−k−1}ξ^{kθ}], [t^{−k}ξ^{−kθ}, 0]].
pub fn torus_metabelian_rep(k: u32, theta: i64) -> Representation {
    let q = 2 * k + 1;
    let k = k as i64;
    let xi = |e: i64| CycNum::root_of_unity(e, q);
    let mono = |c: CycNum, e: i64| LaurentPoly::monomial(c, e);
    let z = LaurentPoly::zero();
    let a = PolyMatrix::from_rows(vec![
        vec![mono(xi(-theta), 1), z.clone()],
        vec![z.clone(), mono(xi(theta), 1)],
    ]);
    let b = PolyMatrix::from_rows(vec![
        vec![z.clone(), mono(xi(k * theta), -k - 1)],
        vec![mono(xi(-k * theta), -k), z],
    ]);
    Representation::new(vec![a, b]).expect("torus representation is invertible")
}

/// A character H → Z_m on a finite abelian group ⊕ Z/orders_i, given by its
/// values on the cyclic generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub modulus: u64,
    pub orders: Vec<u64>,
    pub values: Vec<i64>,
}

impl Character {
    pub fn new(modulus: u64, orders: Vec<u64>, values: Vec<i64>) -> Result<Self> {
        if modulus == 0 || orders.len() != values.len() {
            return Err(Error::InvalidInput("malformed character".into()));
        }
        let m = modulus as i64;
        let values: Vec<i64> = values.iter().map(|v| v.rem_euclid(m)).collect();
        for (o, v) in orders.iter().zip(&values) {
            if ((*o as i128 * *v as i128) % m as i128) != 0 {
                return Err(Error::InvalidInput(format!(
                    "character value {v} on Z/{o} is not well defined mod {m}"
                )));
            }
        }
        Ok(Character {
            modulus,
            orders,
            values,
        })
    }

    pub fn eval(&self, v: &[i64]) -> i64 {
        let m = self.modulus as i128;
        let s: i128 = v
            .iter()
            .zip(&self.values)
            .map(|(a, b)| *a as i128 * *b as i128)
            .sum();
        s.rem_euclid(m) as i64
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Data of the n-fold branched cover needed for metabelian representations:
/// H₁(Σ_n) = ⊕ Z/orders_i, the deck action t on H, and for each generator g
/// its image (φ(g), v_g) in Z ⋉ H.
#[derive(Clone, Debug)]
pub struct AlexanderData {
    pub orders: Vec<u64>,
    /// (t·v)_i = Σ_j t_action[i][j]·v_j.
    pub t_action: Vec<Vec<i64>>,
    pub gen_images: Vec<(i64, Vec<i64>)>,
}

impl AlexanderData {
    pub fn act(&self, v: &[i64]) -> Vec<i64> {
        self.t_action
            .iter()
            .zip(&self.orders)
            .map(|(row, &o)| {
                let s: i64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                s.rem_euclid(o as i64)
            })
            .collect()
    }

    /// Torus knot T(2, 2k+1): H₁(Σ₂) = Z_{2k+1}, t acts by −1,
    /// a ↦ (2, −1), b ↦ (−(2k+1), −k).
    pub fn torus(k: u32) -> Self {
        let q = 2 * k as i64 + 1;
        AlexanderData {
            orders: vec![q as u64],
            t_action: vec![vec![-1]],
            gen_images: vec![(2, vec![-1]), (-q, vec![-(k as i64)])],
        }
    }
}

/// α(n, χ): g ↦ C^{φ(g)}·diag(ξ^{χ(v)}, ξ^{χ(t·v)}, …, ξ^{χ(t^{n−1}·v)}),
/// C the n×n matrix with ones on the superdiagonal and t in the corner.
pub fn metabelian_rep(n: usize, chi: &Character, data: &AlexanderData) -> Result<Representation> {
    if chi.orders != data.orders {
        return Err(Error::InvalidInput("character and Alexander data disagree".into()));
    }
    let m = chi.modulus as u32;
    let mut images = Vec::new();
    for (phi, v) in &data.gen_images {
        let cpow = companion_power(n, *phi);
        let mut w = v.clone();
        let mut diag = PolyMatrix::zeros(n, n);
        for i in 0..n {
            diag[(i, i)] = LaurentPoly::constant(CycNum::root_of_unity(chi.eval(&w), m));
            w = data.act(&w);
        }
        images.push(cpow.mul(&diag));
    }
    Representation::new(images)
}

/// C^j with C^n = t·I.
fn companion_power(n: usize, j: i64) -> PolyMatrix {
    let q = j.div_euclid(n as i64);
    let r = j.rem_euclid(n as i64) as usize;
    let mut out = PolyMatrix::zeros(n, n);
    for i in 0..n {
        // C^r sends basis row i to row i + r, wrapping with a factor t.
        let target = i + r;
        let (col, extra) = if target >= n { (target - n, 1) } else { (target, 0) };
        out[(i, col)] = LaurentPoly::monomial(CycNum::one(), q + extra);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::torus_presentation;

    #[test]
    fn torus_rep_matches_metabelian_construction() {
        for k in 1..=4u32 {
            for theta in 0..(2 * k as i64 + 1) {
                let r1 = torus_metabelian_rep(k, theta);
                let chi = Character::new(2 * k as u64 + 1, vec![2 * k as u64 + 1], vec![theta]).unwrap();
                let r2 = metabelian_rep(2, &chi, &AlexanderData::torus(k)).unwrap();
                assert_eq!(r1.image(0), r2.image(0));
                assert_eq!(r1.image(1), r2.image(1));
            }
        }
    }

    #[test]
    fn torus_rep_kills_relators_and_meridian_image() {
        for k in 1..=4u32 {
            let p = torus_presentation(k);
            for theta in 0..=k as i64 {
                let r = torus_metabelian_rep(k, theta);
                r.check_presentation(&p).unwrap();
                assert!(r.is_unitary());
                let mu = r.eval_word(&p.meridian);
                let t = LaurentPoly::t();
                let expect = PolyMatrix::from_rows(vec![
                    vec![LaurentPoly::zero(), LaurentPoly::one()],
                    vec![t, LaurentPoly::zero()],
                ]);
                assert_eq!(mu, expect);
            }
        }
    }

    #[test]
    fn abelian_rep_kills_relators() {
        let p = torus_presentation(3);
        let r = abelian_rep(&p.weights);
        r.check_presentation(&p).unwrap();
        assert_eq!(r.eval_word(&p.meridian)[(0, 0)], LaurentPoly::t());
    }

    #[test]
    fn twisted_d3_closed_matrix() {
        for k in 1..=4u32 {
            let p = torus_presentation(k);
            let cd = p.chain_data().unwrap();
            for theta in 1..=k as i64 {
                let r = torus_metabelian_rep(k, theta);
                let d3 = r.evaluator().twist(&cd.d3);
                let kk = k as i64;
                let xi = |e: i64| CycNum::root_of_unity(e, 2 * k + 1);
                let m = |c: CycNum, e: i64| LaurentPoly::monomial(c, e);
                let one = CycNum::one();
                let expect = PolyMatrix::from_rows(vec![
                    vec![m(-xi(-kk * theta), 0), m(one.clone(), -kk - 1), m(-one.clone(), 0), m(one.clone(), 0)],
                    vec![m(one.clone(), -kk), m(-xi(kk * theta), 0), m(one.clone(), 1), m(-one.clone(), 0)],
                ]);
                assert_eq!(d3, expect, "k={k} θ={theta}");
            }
        }
    }

    #[test]
    fn rejects_ill_defined_character() {
        assert!(Character::new(3, vec![5], vec![1]).is_err());
        assert!(Character::new(3, vec![15], vec![1]).is_ok());
    }
}
