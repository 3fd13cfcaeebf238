//! Hermitian linking forms on finitely generated torsion Λ-modules given as
//! direct sums of cyclic modules Λ/(f_i).

use serde::{Deserialize, Serialize};

use crate::algebra::cyclotomic::CycNum;
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::ratfunc::ModCoset;
use crate::error::{Error, Result};

/// gram[i][j] = λ(x_i, x_j), linear in the first variable:
/// λ(p·x, q·y) = p·q#·λ(x, y).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkingForm {
    orders: Vec<LaurentPoly>,
    gram: Vec<Vec<ModCoset>>,
}

impl LinkingForm {
    /// Validated constructor; orders are normalized.
    pub fn new(orders: Vec<LaurentPoly>, gram: Vec<Vec<ModCoset>>) -> Result<Self> {
        let lf = Self::new_unchecked(orders, gram)?;
        lf.validate()?;
        Ok(lf)
    }

    /// Shape checks only.
    pub fn new_unchecked(orders: Vec<LaurentPoly>, gram: Vec<Vec<ModCoset>>) -> Result<Self> {
        let n = orders.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("gram matrix shape does not match orders".into()));
        }
        if orders.iter().any(|f| f.is_zero()) {
            return Err(Error::InvalidInput("zero order: module is not torsion".into()));
        }
        Ok(LinkingForm {
            orders: orders.iter().map(|f| f.normalized()).collect(),
            gram,
        })
    }

    pub fn empty() -> Self {
        LinkingForm {
            orders: Vec::new(),
            gram: Vec::new(),
        }
    }

    /// The cyclic form Λ/(f) with λ(x, x) = value.
    pub fn cyclic(order: LaurentPoly, value: ModCoset) -> Result<Self> {
        Self::new(vec![order], vec![vec![value]])
    }

    pub fn size(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[LaurentPoly] {
        &self.orders
    }

    pub fn gram(&self) -> &[Vec<ModCoset>] {
        &self.gram
    }

    pub fn value(&self, i: usize, j: usize) -> &ModCoset {
        &self.gram[i][j]
    }

    /// Product of the summand orders.
    pub fn order(&self) -> LaurentPoly {
        self.orders.iter().fold(LaurentPoly::one(), |a, f| &a * f)
    }

    /// Hermitian, annihilated by the orders, and nondegenerate on every summand.
    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let g = &self.gram[i][j];
                if *g != self.gram[j][i].bar() {
                    return Err(Error::DegenerateForm(format!("not Hermitian at ({i},{j})")));
                }
                if !g.scale(&self.orders[i]).is_zero() {
                    return Err(Error::DegenerateForm(format!(
                        "value at ({i},{j}) is not annihilated by the order of generator {i}"
                    )));
                }
            }
            // The annihilator of λ(x_i, ·) is the lcm of the reduced denominators.
            let mut ann = LaurentPoly::one();
            for j in 0..n {
                let d = self.gram[i][j].den();
                let g = ann.gcd(d);
                ann = (&ann * d).exact_div(&g).unwrap().normalized();
            }
            if ann != self.orders[i] {
                return Err(Error::DegenerateForm(format!(
                    "annihilator of λ(x_{i}, ·) is ({ann}) but the order is ({})",
                    self.orders[i]
                )));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, o: &LinkingForm) -> LinkingForm {
        let n = self.size();
        let m = o.size();
        let mut gram = vec![vec![ModCoset::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = o.gram[i][j].clone();
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(o.orders.iter().cloned());
        LinkingForm { orders, gram }
    }

    pub fn negate(&self) -> LinkingForm {
        LinkingForm {
            orders: self.orders.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|g| -g).collect())
                .collect(),
        }
    }

    /// Pull back along t ↦ η·t^m (|η| = 1, m ≥ 1).
    pub fn rescale(&self, eta: &CycNum, m: u32) -> LinkingForm {
        LinkingForm {
            orders: self
                .orders
                .iter()
                .map(|f| f.substitute(eta, m).normalized())
                .collect(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|g| g.substitute(eta, m)).collect())
                .collect(),
        }
    }

    /// Complex conjugate form (coefficients conjugated, t fixed).
    pub fn conjugate(&self) -> LinkingForm {
        let conj_poly = |p: &LaurentPoly| p.map_coeffs(|c| c.conj());
        LinkingForm {
            orders: self.orders.iter().map(|f| conj_poly(f).normalized()).collect(),
            gram: self
                .gram
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|g| ModCoset::from_parts(&conj_poly(g.num()), &conj_poly(g.den())))
                        .collect()
                })
                .collect(),
        }
    }

    /// λ(u, w) for coefficient vectors u, w over the generators.
    pub fn pair(&self, u: &[LaurentPoly], w: &[LaurentPoly]) -> ModCoset {
        let mut acc = ModCoset::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc = &acc + &self.gram[i][j].scale(&(ui * &wj.bar()));
            }
        }
        acc
    }

    /// New generators y_i = Σ_k T[i][k]·x_k with orders `orders`. The caller
    /// guarantees that T is an automorphism mapping the cyclic decomposition
    /// to one with these orders.
    pub fn change_basis(&self, t: &PolyMatrix, orders: Vec<LaurentPoly>) -> LinkingForm {
        let n = t.rows();
        let rows: Vec<Vec<LaurentPoly>> = t.to_rows();
        let mut gram = vec![vec![ModCoset::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.pair(&rows[i], &rows[j]);
            }
        }
        LinkingForm {
            orders: orders.iter().map(|f| f.normalized()).collect(),
            gram,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: LinkingForm = serde_json::from_str(s)?;
        let gram = raw
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|g| ModCoset::from_parts(g.num(), g.den()))
                    .collect()
            })
            .collect();
        LinkingForm::new(raw.orders, gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(e: i64, n: u32) -> CycNum {
        CycNum::root_of_unity(e, n)
    }

    #[test]
    fn trefoil_classical_form_validates() {
        let f = LaurentPoly::from_ints(0, &[1, -1, 1]);
        let sym = ModCoset::from_parts(&LaurentPoly::one(), &LaurentPoly::from_ints(-1, &[1, -1, 1]));
        let lf = LinkingForm::cyclic(f, sym).unwrap();
        assert_eq!(LinkingForm::from_json(&lf.to_json()).unwrap(), lf);
        assert!(lf.direct_sum(&lf.negate()).validate().is_ok());
    }

    #[test]
    fn rejects_non_hermitian() {
        let xi = cyc(1, 5);
        let f = LaurentPoly::from_coeffs(0, vec![-xi.clone(), CycNum::one()]);
        let bad = ModCoset::from_parts(&LaurentPoly::one(), &f);
        assert!(LinkingForm::cyclic(f, bad).is_err());
    }
}
