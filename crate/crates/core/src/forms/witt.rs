//! Formal signed sums of (rescaled) linking forms and their jump invariant.

use rayon::prelude::*;

use crate::algebra::cyclotomic::RootOfUnity;
use crate::error::Result;
use crate::forms::basic::Decomposition;
use crate::forms::decompose::decompose;
use crate::forms::jumps::JumpMap;
use crate::forms::linking_form::LinkingForm;

#[derive(Clone, Debug)]
pub enum WittSummand {
    Form(LinkingForm),
    Decomposed(Decomposition),
}

impl WittSummand {
    pub fn decomposition(&self) -> Result<Decomposition> {
        match self {
            WittSummand::Form(lf) => decompose(lf),
            WittSummand::Decomposed(d) => Ok(d.clone()),
        }
    }
}

/// sign · summand(η·t^m).
#[derive(Clone, Debug)]
pub struct WittTerm {
    pub sign: i32,
    pub summand: WittSummand,
    pub eta: RootOfUnity,
    pub m: u32,
}

impl WittTerm {
    pub fn jumps(&self) -> Result<JumpMap> {
        let d = self.summand.decomposition()?;
        Ok(JumpMap::from_decomposition(&d)
            .pullback(&self.eta, self.m)
            .scaled(self.sign as i64))
    }
}

#[derive(Clone, Debug, Default)]
pub struct WittClass {
    pub terms: Vec<WittTerm>,
}

impl WittClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_form(lf: LinkingForm) -> Self {
        Self::single(WittSummand::Form(lf))
    }

    pub fn from_decomposition(d: Decomposition) -> Self {
        Self::single(WittSummand::Decomposed(d))
    }

    fn single(s: WittSummand) -> Self {
        WittClass {
            terms: vec![WittTerm {
                sign: 1,
                summand: s,
                eta: RootOfUnity::one(),
                m: 1,
            }],
        }
    }

    pub fn add(&self, o: &WittClass) -> WittClass {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        WittClass { terms }
    }

    pub fn negate(&self) -> WittClass {
        WittClass {
            terms: self
                .terms
                .iter()
                .map(|t| WittTerm {
                    sign: -t.sign,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Apply t ↦ η·t^m to every term.
    pub fn rescale(&self, eta: &RootOfUnity, m: u32) -> WittClass {
        WittClass {
            terms: self
                .terms
                .iter()
                .map(|t| WittTerm {
                    eta: t.eta.mul(&eta.pow(t.m as i64)),
                    m: t.m * m,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Total jump map, evaluated termwise.
    pub fn jumps(&self) -> Result<JumpMap> {
        let parts: Vec<Result<JumpMap>> = self.terms.par_iter().map(|t| t.jumps()).collect();
        let mut out = JumpMap::new();
        for p in parts {
            out = out.add(&p?);
        }
        Ok(out)
    }

    pub fn is_metabolic(&self) -> Result<bool> {
        Ok(self.jumps()?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::CycNum;
    use crate::algebra::laurent::LaurentPoly;
    use crate::forms::basic::{BasicForm, ETerm};

    fn r(e: i64, n: u64) -> RootOfUnity {
        RootOfUnity::new(e, n)
    }

    #[test]
    fn form_minus_itself_is_metabolic() {
        let lf = BasicForm::E(ETerm::new(1, 1, r(2, 5))).to_linking_form();
        let w = WittClass::from_form(lf);
        assert!(!w.is_metabolic().unwrap());
        assert!(w.add(&w.negate()).is_metabolic().unwrap());
    }

    #[test]
    fn rescaled_form_matches_pullback() {
        let e = ETerm::new(1, 1, r(1, 6));
        let lf = BasicForm::E(e).to_linking_form();
        let eta = r(1, 13);
        let direct = decompose(&lf.rescale(&eta.to_cyc(), 1)).unwrap();
        let formal = WittClass::from_form(lf).rescale(&eta, 1).jumps().unwrap();
        assert_eq!(JumpMap::from_decomposition(&direct), formal);
        let d = Decomposition::new(vec![e], vec![], LaurentPoly::one());
        let lf2 = d.realize().unwrap().rescale(&CycNum::one(), 2);
        let formal2 = WittClass::from_decomposition(d).rescale(&RootOfUnity::one(), 2).jumps().unwrap();
        assert_eq!(JumpMap::from_decomposition(&decompose(&lf2).unwrap()), formal2);
    }
}
