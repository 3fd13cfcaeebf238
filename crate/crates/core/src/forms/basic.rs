//! The basic forms 𝔢(n, ε, ξ) and 𝔣(n, ξ) and decompositions into them.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::cyclotomic::{fmt_rational, parse_rational, CycNum, RootOfUnity};
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::ratfunc::ModCoset;
use crate::error::{Error, Result};
use crate::forms::linking_form::LinkingForm;
use crate::forms::roots::OffCircleRoot;

/// 𝔢(n, ε, ξ) with |ξ| = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ETerm {
    pub n: u32,
    pub epsilon: i32,
    pub xi: RootOfUnity,
}

/// 𝔣(n, ξ) with ξ = ρ·ω, 0 < ρ < 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FTerm {
    pub n: u32,
    pub rho: BigRational,
    pub omega: RootOfUnity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicForm {
    E(ETerm),
    F(FTerm),
}

fn linear(a: &CycNum) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, vec![-a.clone(), CycNum::one()])
}

/// w_ξ = ζ_L − ζ_L⁻¹ with L ≥ 3 taken from ξ, so that w_ξ/i > 0.
pub(crate) fn imaginary_unit_multiple(xi: &RootOfUnity) -> CycNum {
    let l = xi.conductor().max(3);
    &CycNum::root_of_unity(1, l) - &CycNum::root_of_unity(-1, l)
}

/// A ξ-positive polynomial: r(t) = −w_ξ·(t + ξ).
pub fn positive_polynomial(xi: &RootOfUnity) -> LaurentPoly {
    let w = imaginary_unit_multiple(xi);
    LaurentPoly::from_coeffs(0, vec![xi.to_cyc(), CycNum::one()]).scale(&-w)
}

impl ETerm {
    pub fn new(n: u32, epsilon: i32, xi: RootOfUnity) -> Self {
        assert!(n >= 1 && (epsilon == 1 || epsilon == -1));
        ETerm { n, epsilon, xi }
    }

    pub fn order(&self) -> LaurentPoly {
        linear(&self.xi.to_cyc()).pow(self.n)
    }

    /// λ(x, x) for the standard generator.
    pub fn value(&self) -> ModCoset {
        let xi = self.xi.to_cyc();
        let c = linear(&xi);
        let cbar = c.bar();
        let n = self.n;
        let eps = LaurentPoly::from_int(self.epsilon as i64);
        if n % 2 == 0 {
            let den = &c.pow(n / 2) * &cbar.pow(n / 2);
            ModCoset::from_parts(&eps, &den)
        } else {
            let den = &c.pow((n + 1) / 2) * &cbar.pow((n - 1) / 2);
            ModCoset::from_parts(&(&eps * &positive_polynomial(&self.xi)), &den)
        }
    }

    pub fn negate(&self) -> Self {
        ETerm {
            epsilon: -self.epsilon,
            ..*self
        }
    }

    fn sort_key(&self) -> (u32, BigRational, bool, i32) {
        let e = self.xi.signed_exponent();
        let q = self.xi.order() as i64;
        (self.n, BigRational::new(e.abs().into(), q.into()), e < 0, self.epsilon)
    }
}

impl Ord for ETerm {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sort_key().cmp(&o.sort_key())
    }
}

impl PartialOrd for ETerm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl FTerm {
    pub fn new(n: u32, root: OffCircleRoot) -> Self {
        FTerm {
            n,
            rho: root.rho,
            omega: root.omega,
        }
    }

    pub fn root(&self) -> OffCircleRoot {
        OffCircleRoot {
            rho: self.rho.clone(),
            omega: self.omega,
        }
    }

    /// C_ξ = (t − ξ)(t⁻¹ − ξ̄).
    pub fn basic_polynomial(&self) -> LaurentPoly {
        let c = linear(&self.root().value());
        &c * &c.bar()
    }

    pub fn order(&self) -> LaurentPoly {
        self.basic_polynomial().pow(self.n)
    }

    pub fn value(&self) -> ModCoset {
        ModCoset::from_parts(&LaurentPoly::one(), &self.order())
    }
}

impl Ord for FTerm {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.n, &self.rho, self.omega).cmp(&(o.n, &o.rho, o.omega))
    }
}

impl PartialOrd for FTerm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl BasicForm {
    pub fn order(&self) -> LaurentPoly {
        match self {
            BasicForm::E(e) => e.order(),
            BasicForm::F(f) => f.order(),
        }
    }

    pub fn value(&self) -> ModCoset {
        match self {
            BasicForm::E(e) => e.value(),
            BasicForm::F(f) => f.value(),
        }
    }

    pub fn to_linking_form(&self) -> LinkingForm {
        LinkingForm::new_unchecked(vec![self.order()], vec![vec![self.value()]])
            .expect("basic forms are well formed")
    }
}

/// ⊕ 𝔢 ⊕ 𝔣 ⊕ (residual part without identified roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub e_terms: Vec<ETerm>,
    pub f_terms: Vec<FTerm>,
    /// Order of the summand whose roots could not be identified; 1 if none.
    pub residual: LaurentPoly,
}

impl Default for Decomposition {
    fn default() -> Self {
        Decomposition {
            e_terms: Vec::new(),
            f_terms: Vec::new(),
            residual: LaurentPoly::one(),
        }
    }
}

impl Decomposition {
    pub fn new(mut e_terms: Vec<ETerm>, mut f_terms: Vec<FTerm>, residual: LaurentPoly) -> Self {
        e_terms.sort();
        f_terms.sort();
        Decomposition {
            e_terms,
            f_terms,
            residual: residual.normalized(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.e_terms.is_empty() && self.f_terms.is_empty() && self.residual.is_one()
    }

    pub fn direct_sum(&self, o: &Decomposition) -> Decomposition {
        let mut e = self.e_terms.clone();
        e.extend(o.e_terms.iter().cloned());
        let mut f = self.f_terms.clone();
        f.extend(o.f_terms.iter().cloned());
        Decomposition::new(e, f, &self.residual * &o.residual)
    }

    /// Decomposition of −λ: every ε flips, 𝔣-forms are self-negating.
    pub fn negate(&self) -> Decomposition {
        Decomposition::new(
            self.e_terms.iter().map(|e| e.negate()).collect(),
            self.f_terms.clone(),
            self.residual.clone(),
        )
    }

    pub fn basic_forms(&self) -> Vec<BasicForm> {
        self.e_terms
            .iter()
            .map(|e| BasicForm::E(*e))
            .chain(self.f_terms.iter().map(|f| BasicForm::F(f.clone())))
            .collect()
    }

    /// The orthogonal sum of the basic forms. Fails if there is a residual.
    pub fn realize(&self) -> Result<LinkingForm> {
        if !self.residual.is_one() {
            return Err(Error::InvalidInput(
                "cannot realize a decomposition with a residual".into(),
            ));
        }
        Ok(self
            .basic_forms()
            .iter()
            .fold(LinkingForm::empty(), |acc, b| acc.direct_sum(&b.to_linking_form())))
    }

    /// Module order: product of the summand orders.
    pub fn order(&self) -> LaurentPoly {
        self.basic_forms()
            .iter()
            .fold(self.residual.clone(), |acc, b| &acc * &b.order())
            .normalized()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    e: Vec<(u32, i32, RootOfUnity)>,
    f: Vec<(u32, String, RootOfUnity)>,
    residual: LaurentPoly,
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionRepr {
            e: self.e_terms.iter().map(|t| (t.n, t.epsilon, t.xi)).collect(),
            f: self
                .f_terms
                .iter()
                .map(|t| (t.n, fmt_rational(&t.rho), t.omega))
                .collect(),
            residual: self.residual.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DecompositionRepr::deserialize(d)?;
        let mut e = Vec::new();
        for (n, eps, xi) in r.e {
            if n == 0 || (eps != 1 && eps != -1) {
                return Err(D::Error::custom("e-term needs n ≥ 1 and ε = ±1"));
            }
            e.push(ETerm::new(n, eps, xi));
        }
        let mut f = Vec::new();
        for (n, rho, omega) in r.f {
            let rho = parse_rational(&rho).ok_or_else(|| D::Error::custom("bad rational ρ"))?;
            if n == 0 || !rho.is_positive() || rho >= BigRational::one() {
                return Err(D::Error::custom("f-term needs n ≥ 1 and 0 < ρ < 1"));
            }
            f.push(FTerm { n, rho, omega });
        }
        if r.residual.is_zero() {
            return Err(D::Error::custom("zero residual"));
        }
        Ok(Decomposition::new(e, f, r.residual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rational(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn e_values_are_hermitian() {
        for n in 1..=4 {
            for eps in [1, -1] {
                for xi in [RootOfUnity::new(2, 5), RootOfUnity::new(1, 2), RootOfUnity::one()] {
                    let e = ETerm::new(n, eps, xi);
                    assert!(BasicForm::E(e).to_linking_form().validate().is_ok(), "{e:?}");
                }
            }
        }
    }

    #[test]
    fn f_values_are_hermitian() {
        let f = FTerm {
            n: 2,
            rho: rational(1, 3),
            omega: RootOfUnity::new(1, 4),
        };
        assert!(BasicForm::F(f).to_linking_form().validate().is_ok());
    }

    #[test]
    fn json_round_trip() {
        let d = Decomposition::new(
            vec![ETerm::new(1, -1, RootOfUnity::new(-2, 5)), ETerm::new(1, 1, RootOfUnity::new(2, 5))],
            vec![FTerm {
                n: 1,
                rho: rational(1, 2),
                omega: RootOfUnity::one(),
            }],
            LaurentPoly::one(),
        );
        let s = d.to_json();
        assert!(s.starts_with(r#"{"e":[[1,1,"ζ5^2"],[1,-1,"ζ5^-2"]]"#), "{s}");
        assert_eq!(Decomposition::from_json(&s).unwrap(), d);
    }
}
