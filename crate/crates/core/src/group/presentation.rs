//! Zero-surgery presentations and the chain-level data of their universal covers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::fox::{fox_derivative, fox_jacobian, GroupRingElt};
use super::word::Word;
use crate::algebra::matrix::IntMatrix;
use crate::algebra::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Presentation ⟨x_1..x_n | r_1..r_{m-1}, λ₀⟩ of π₁ of a zero-surgery together
/// with the meridian and an identity word R in the letters x_i and ρ_1..ρ_m
/// (ρ_j stands for the j-th relator, the last one being the longitude).
#[derive(Clone, Debug)]
pub struct SurgeryPresentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
    pub longitude: Word,
    pub meridian: Word,
    /// Letters 1..=n are generators, n+1..=n+m are ρ_1..ρ_m.
    pub identity: Word,
    /// Abelianization weights: x_i ↦ t^{weights[i]}.
    pub weights: Vec<i64>,
}

/// Matrices over Z[F] with rows acting on the left of the cellular basis:
/// d1 is n×1, d2 is m×n, d3 is 1×m, phi is m×n.
#[derive(Clone, Debug)]
pub struct ChainData {
    pub ngens: usize,
    pub d1: Vec<Vec<GroupRingElt>>,
    pub d2: Vec<Vec<GroupRingElt>>,
    pub d3: Vec<Vec<GroupRingElt>>,
    pub phi: Vec<Vec<GroupRingElt>>,
}

impl SurgeryPresentation {
    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    /// Relators then longitude, i.e. the words ρ_j stands for.
    pub fn cells(&self) -> Vec<Word> {
        let mut v = self.relators.clone();
        v.push(self.longitude.clone());
        v
    }

    pub fn nrho(&self) -> usize {
        self.relators.len() + 1
    }

    fn is_rho(&self, g: usize) -> bool {
        g >= self.ngens()
    }

    /// Build a presentation, deriving the weights from the abelianization.
    pub fn new(
        names: Vec<String>,
        relators: Vec<Word>,
        longitude: Word,
        meridian: Word,
        identity: Word,
    ) -> Result<Self> {
        let mut p = SurgeryPresentation {
            names,
            relators,
            longitude,
            meridian,
            identity,
            weights: Vec::new(),
        };
        p.weights = p.abelianization()?;
        p.validate()?;
        Ok(p)
    }

    /// Weights of the surjection to Z = ⟨t⟩ sending the meridian to t.
    fn abelianization(&self) -> Result<Vec<i64>> {
        let n = self.ngens();
        let cells = self.cells();
        let rows: Vec<Vec<BigInt>> = cells
            .iter()
            .map(|w| w.exponent_sums(n).into_iter().map(BigInt::from).collect())
            .collect();
        let m = IntMatrix::from_rows(rows);
        let sf = smith_normal_form(&m);
        if sf.rank + 1 != n || sf.diag[..sf.rank].iter().any(|d| !d.is_one()) {
            return Err(Error::InvalidInput(
                "first homology of the presentation is not Z".into(),
            ));
        }
        let col = sf.rank;
        let mut w: Vec<i64> = (0..n)
            .map(|i| sf.v[(i, col)].to_i64().expect("weight overflow"))
            .collect();
        let mu: i64 = self
            .meridian
            .exponent_sums(n)
            .iter()
            .zip(&w)
            .map(|(a, b)| a * b)
            .sum();
        if mu.abs() != 1 {
            return Err(Error::InvalidInput(
                "meridian does not generate first homology".into(),
            ));
        }
        if mu < 0 {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(w)
    }

    /// Identity word check: deleting the ρ letters and substituting ρ_j ↦ r_j
    /// both give the trivial word.
    pub fn validate(&self) -> Result<()> {
        let n = self.ngens();
        let total = n + self.nrho();
        if self
            .identity
            .letters()
            .iter()
            .any(|l| l.unsigned_abs() as usize > total)
        {
            return Err(Error::BadIdentity("identity word uses unknown letters".into()));
        }
        let deleted = self.identity.delete(|g| self.is_rho(g));
        if !deleted.is_empty() {
            return Err(Error::BadIdentity(
                "deleting the relator letters does not give the trivial word".into(),
            ));
        }
        let mut images: Vec<Word> = (0..n).map(Word::gen).collect();
        images.extend(self.cells());
        if !self.identity.substitute(&images).is_empty() {
            return Err(Error::BadIdentity(
                "substituting the relators does not give the trivial word".into(),
            ));
        }
        Ok(())
    }

    pub fn chain_data(&self) -> Result<ChainData> {
        self.validate()?;
        let n = self.ngens();
        let m = self.nrho();
        let d1 = (0..n)
            .map(|g| vec![GroupRingElt::word(Word::gen(g)).sub(&GroupRingElt::one())])
            .collect();
        let d2 = fox_jacobian(&self.cells(), n);
        let kill = |w: &Word| w.delete(|g| g >= n);
        let d3 = vec![(0..m)
            .map(|j| fox_derivative(&self.identity, n + j).map_words(kill))
            .collect()];
        // Φ[j][x] = Σ ε_i w_i⁻¹ ∂w_i/∂x over occurrences of ρ_j in R, w_i the
        // conjugating prefix with the ρ letters deleted.
        let mut phi = vec![vec![GroupRingElt::zero(); n]; m];
        let mut prefix: Vec<i32> = Vec::new();
        for &l in self.identity.letters() {
            let g = l.unsigned_abs() as usize - 1;
            if g >= n {
                let j = g - n;
                let w = kill(&Word::new(prefix.clone()));
                let winv = w.inverse();
                for x in 0..n {
                    let term = fox_derivative(&w, x).left_mul_word(&winv);
                    let term = if l > 0 { term } else { term.neg() };
                    phi[j][x] = phi[j][x].add(&term);
                }
            }
            prefix.push(l);
        }
        Ok(ChainData {
            ngens: n,
            d1,
            d2,
            d3,
            phi,
        })
    }

    /// Parse the text format: labelled lines `generators:`, `relator:` (one or
    /// more), `longitude:`, `meridian:`, `identity:`. Blank lines and `#`
    /// comments are ignored. Letters are names with optional `^e`; parentheses
    /// group subwords. In the identity word `rho1`, `rho2`, … denote the
    /// relators in order, the last one being the longitude.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut rel_src = Vec::new();
        let mut long_src = None;
        let mut mer_src = None;
        let mut id_src = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (label, body) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing label in line {line:?}")))?;
            let body = body.trim().to_string();
            match label.trim() {
                "generators" => {
                    names = Some(body.split_whitespace().map(String::from).collect());
                }
                "relator" => rel_src.push(body),
                "longitude" => long_src = Some(body),
                "meridian" => mer_src = Some(body),
                "identity" => id_src = Some(body),
                other => return Err(Error::Parse(format!("unknown label {other:?}"))),
            }
        }
        let names = names.ok_or_else(|| Error::Parse("missing generators line".into()))?;
        if names.is_empty() {
            return Err(Error::Parse("no generators".into()));
        }
        for n in &names {
            if n.starts_with("rho") || !is_identifier(n) {
                return Err(Error::Parse(format!("bad generator name {n:?}")));
            }
        }
        let missing = |what: &str| Error::Parse(format!("missing {what} line"));
        let relators: Vec<Word> = rel_src
            .iter()
            .map(|s| parse_word(s, &names))
            .collect::<Result<_>>()?;
        let longitude = parse_word(&long_src.ok_or_else(|| missing("longitude"))?, &names)?;
        let meridian = parse_word(&mer_src.ok_or_else(|| missing("meridian"))?, &names)?;
        let mut ext = names.clone();
        for j in 1..=relators.len() + 1 {
            ext.push(format!("rho{j}"));
        }
        let identity = parse_word(&id_src.ok_or_else(|| missing("identity"))?, &ext)?;
        SurgeryPresentation::new(names, relators, longitude, meridian, identity)
    }

    pub fn to_text(&self) -> String {
        let mut ext = self.names.clone();
        for j in 1..=self.nrho() {
            ext.push(format!("rho{j}"));
        }
        let mut s = String::new();
        writeln!(s, "generators: {}", self.names.join(" ")).unwrap();
        for r in &self.relators {
            writeln!(s, "relator: {}", r.render(&self.names)).unwrap();
        }
        writeln!(s, "longitude: {}", self.longitude.render(&self.names)).unwrap();
        writeln!(s, "meridian: {}", self.meridian.render(&self.names)).unwrap();
        writeln!(s, "identity: {}", self.identity.render(&ext)).unwrap();
        s
    }
}

fn is_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    ch.next().is_some_and(|c| c.is_alphabetic() || c == 'ρ')
        && ch.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parse a word such as `a^3 b^-1 (a b)^2`.
pub fn parse_word(src: &str, names: &[String]) -> Result<Word> {
    let chars: Vec<char> = src.chars().map(|c| if c == '⁻' { '-' } else { c }).collect();
    let mut pos = 0;
    let w = parse_seq(&chars, &mut pos, names, src)?;
    skip_ws(&chars, &mut pos);
    if pos != chars.len() {
        return Err(Error::Parse(format!("unexpected input in word {src:?}")));
    }
    Ok(w)
}

fn skip_ws(c: &[char], pos: &mut usize) {
    while *pos < c.len() && (c[*pos].is_whitespace() || c[*pos] == '*' || c[*pos] == '·') {
        *pos += 1;
    }
}

fn parse_seq(c: &[char], pos: &mut usize, names: &[String], src: &str) -> Result<Word> {
    let mut letters: Vec<i32> = Vec::new();
    loop {
        skip_ws(c, pos);
        if *pos >= c.len() || c[*pos] == ')' {
            break;
        }
        let base = if c[*pos] == '(' {
            *pos += 1;
            let w = parse_seq(c, pos, names, src)?;
            if *pos >= c.len() || c[*pos] != ')' {
                return Err(Error::Parse(format!("unbalanced parenthesis in {src:?}")));
            }
            *pos += 1;
            w
        } else if c[*pos] == '1' {
            *pos += 1;
            Word::empty()
        } else {
            let start = *pos;
            while *pos < c.len() && (c[*pos].is_alphanumeric() || c[*pos] == '_' || c[*pos] == 'ρ')
            {
                *pos += 1;
            }
            let name: String = c[start..*pos].iter().collect();
            let name = name.replacen('ρ', "rho", 1);
            let g = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::Parse(format!("unknown letter {name:?} in {src:?}")))?;
            Word::gen(g)
        };
        let mut e: i64 = 1;
        if *pos < c.len() && c[*pos] == '^' {
            *pos += 1;
            let start = *pos;
            if *pos < c.len() && (c[*pos] == '-' || c[*pos] == '+') {
                *pos += 1;
            }
            while *pos < c.len() && c[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let s: String = c[start..*pos].iter().collect();
            e = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {src:?}")))?;
        }
        letters.extend_from_slice(base.pow(e).letters());
    }
    Ok(Word::new(letters))
}

/// The zero-surgery on T(2, 2k+1): ⟨a, b | a^{2k+1}b², λ₀⟩ with
/// λ₀ = (a^k b)^{2k+1} a^{2k+1} (a^k b)^{2k+1}, μ = (a^k b)⁻¹.
pub fn torus_presentation(k: u32) -> SurgeryPresentation {
    assert!(k >= 1, "torus_presentation needs k ≥ 1");
    let k = k as i64;
    let q = 2 * k + 1;
    let a = Word::gen(0);
    let b = Word::gen(1);
    let rho1 = Word::gen(2);
    let rho2 = Word::gen(3);
    let akb = a.pow(k).concat(&b);
    let r = a.pow(q).concat(&b.pow(2));
    let lambda = Word::product([&akb.pow(q), &a.pow(q), &akb.pow(q)]);
    let mu = akb.inverse();
    let conj = mu.pow(-2 * k).concat(&a.pow(k));
    let identity = Word::product([
        &mu,
        &rho2,
        &mu.inverse(),
        &rho2.inverse(),
        &mu.pow(-q),
        &rho1,
        &mu.pow(q),
        &conj,
        &rho1.inverse(),
        &conj.inverse(),
    ]);
    let p = SurgeryPresentation {
        names: vec!["a".into(), "b".into()],
        relators: vec![r],
        longitude: lambda,
        meridian: mu,
        identity,
        weights: vec![2, -q],
    };
    debug_assert!(p.validate().is_ok());
    p
}

/// Exponent sums of a Z[F] element's words under integer weights.
pub fn weighted_degree(w: &Word, weights: &[i64]) -> i64 {
    w.exponent_sums(weights.len())
        .iter()
        .zip(weights)
        .map(|(a, b)| a * b)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_identity_word_validates() {
        for k in 1..=5 {
            let p = torus_presentation(k);
            p.validate().unwrap();
            let fresh = SurgeryPresentation::new(
                p.names.clone(),
                p.relators.clone(),
                p.longitude.clone(),
                p.meridian.clone(),
                p.identity.clone(),
            )
            .unwrap();
            assert_eq!(fresh.weights, vec![2, -(2 * k as i64 + 1)]);
        }
    }

    #[test]
    fn fox_list_for_torus_relator() {
        for k in 1..=4i64 {
            let p = torus_presentation(k as u32);
            let r = &p.relators[0];
            let da = fox_derivative(r, 0);
            let mut expect = GroupRingElt::zero();
            for j in 0..=2 * k {
                expect.add_term(Word::gen_pow(0, j), 1);
            }
            assert_eq!(da, expect);
            let db = fox_derivative(r, 1);
            let mut expect = GroupRingElt::zero();
            expect.add_term(Word::gen_pow(0, 2 * k + 1), 1);
            expect.add_term(Word::gen_pow(0, 2 * k + 1).concat(&Word::gen(1)), 1);
            assert_eq!(db, expect);
        }
    }

    #[test]
    fn d3_matches_closed_form_for_k1() {
        let p = torus_presentation(1);
        let cd = p.chain_data().unwrap();
        let mu = p.meridian.clone();
        let mut e1 = GroupRingElt::word(mu.pow(-3));
        e1.add_term(mu.pow(-2).concat(&Word::gen(0)), -1);
        let e2 = GroupRingElt::word(mu.clone()).sub(&GroupRingElt::one());
        assert_eq!(cd.d3[0][0], e1);
        assert_eq!(cd.d3[0][1], e2);
    }

    #[test]
    fn phi_second_row() {
        let p = torus_presentation(2);
        let cd = p.chain_data().unwrap();
        let mu = p.meridian.clone();
        for x in 0..2 {
            let expect = fox_derivative(&mu, x).left_mul_word(&mu.inverse());
            assert_eq!(cd.phi[1][x], expect);
        }
    }

    #[test]
    fn text_round_trip() {
        let p = torus_presentation(2);
        let text = p.to_text();
        let q = SurgeryPresentation::parse(&text).unwrap();
        assert_eq!(q.identity, p.identity);
        assert_eq!(q.longitude, p.longitude);
        assert_eq!(q.weights, p.weights);
        let bad = text.replace("identity: ", "identity: a ");
        assert!(SurgeryPresentation::parse(&bad).is_err());
    }

    #[test]
    fn parse_grouped_words() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = parse_word("(a b)^-2 a^3b^2", &names).unwrap();
        assert_eq!(
            w,
            Word::product([&Word::new(vec![1, 2]).pow(-2), &Word::gen_pow(0, 3), &Word::gen_pow(1, 2)])
        );
    }
}
