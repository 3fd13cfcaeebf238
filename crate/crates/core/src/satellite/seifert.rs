//! Seifert matrices: classical Blanchfield forms and Levine–Tristram jumps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::algebra::cyclotomic::{CycNum, RootOfUnity};
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::matrix::{IntMatrix, Matrix, PolyMatrix};
use crate::algebra::ratfunc::ModCoset;
use crate::algebra::smith::smith_normal_form;
use crate::error::{Error, Result};
use crate::forms::roots::identify_roots;
use crate::forms::{JumpMap, LinkingForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    /// Checks squareness and det(V − Vᵀ) = ±1.
    pub fn new(v: Vec<Vec<i64>>) -> Result<Self> {
        let n = v.len();
        if v.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Seifert matrix must be square".into()));
        }
        let s = SeifertMatrix { v };
        let d = s.int_matrix(|i, j| s.v[i][j] - s.v[j][i]).det();
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidInput(format!("det(V − Vᵀ) = {d}, expected ±1")));
        }
        Ok(s)
    }

    /// T(2, q): −1 on the diagonal, 1 on the superdiagonal, size q − 1.
    pub fn torus(q: u64) -> Self {
        assert!(q % 2 == 1, "T(2, q) needs odd q");
        let n = (q - 1) as usize;
        let v = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match j as i64 - i as i64 {
                        0 => -1,
                        1 => 1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        SeifertMatrix { v }
    }

    pub fn size(&self) -> usize {
        self.v.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.v
    }

    fn int_matrix<F: Fn(usize, usize) -> i64>(&self, f: F) -> IntMatrix {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| BigInt::from(f(i, j)))
    }

    /// V − t·Vᵀ over Λ.
    pub fn presentation(&self) -> PolyMatrix {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| {
            LaurentPoly::from_ints(0, &[self.v[i][j], -self.v[j][i]])
        })
    }

    /// det(V − tVᵀ), normalized.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        self.presentation().det().normalized()
    }

    /// The symmetrized matrix V + Vᵀ presenting H₁ of the double branched cover.
    pub fn symmetrized(&self) -> IntMatrix {
        self.int_matrix(|i, j| self.v[i][j] + self.v[j][i])
    }

    /// Classical Blanchfield form λ(x, y) = (1 − t)·x(V − tVᵀ)⁻¹y^{#T} on
    /// Λⁿ / Λⁿ(V − tVᵀ).
    pub fn classical_blanchfield(&self) -> Result<LinkingForm> {
        if self.size() == 0 {
            return Ok(LinkingForm::empty());
        }
        let a = self.presentation();
        let sf = smith_normal_form(&a);
        if sf.rank < self.size() {
            return Err(Error::DegenerateForm("Alexander polynomial is zero".into()));
        }
        let idx: Vec<usize> = (0..self.size()).filter(|&i| !sf.diag[i].is_unit()).collect();
        let gens: Vec<Vec<LaurentPoly>> = idx.iter().map(|&i| sf.v_inv.row(i)).collect();
        let one_minus_t = LaurentPoly::from_ints(0, &[1, -1]);
        let orders: Vec<LaurentPoly> = idx.iter().map(|&i| sf.diag[i].clone()).collect();
        let gram = idx
            .iter()
            .enumerate()
            .map(|(a_, &i)| {
                let urow = sf.u.row(i);
                gens.iter()
                    .map(|g| {
                        let s = urow
                            .iter()
                            .zip(g)
                            .fold(LaurentPoly::zero(), |acc, (u, x)| &acc + &(u * &x.bar()));
                        ModCoset::from_parts(&(&one_minus_t * &s), &orders[a_])
                    })
                    .collect()
            })
            .collect();
        LinkingForm::new(orders, gram)
    }

    /// The Hermitian matrix (1 − ω)V + (1 − ω̄)Vᵀ.
    pub fn hermitian_at(&self, omega: &CycNum) -> Matrix<CycNum> {
        let a = &CycNum::one() - omega;
        let b = a.conj();
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| {
            &(&a * &CycNum::from_int(self.v[i][j])) + &(&b * &CycNum::from_int(self.v[j][i]))
        })
    }

    /// Levine–Tristram signature at a unit ω where the matrix is nonsingular.
    pub fn signature_at(&self, omega: &CycNum) -> Result<i64> {
        hermitian_signature(&self.hermitian_at(omega))
    }

    /// Jumps ½(σ(ξe^{−iδ}) − σ(ξe^{iδ})) at each unit root ξ of Δ.
    pub fn levine_tristram_jumps(&self) -> Result<JumpMap> {
        let delta = self.alexander_polynomial();
        let roots = identify_roots(&delta)?.on_circle;
        let l = roots.iter().fold(1u64, |acc, r| acc.lcm(&r.order()));
        let mut out = JumpMap::new();
        for xi in roots {
            let before = self.signature_at(&xi.mul(&RootOfUnity::new(-1, 2 * l)).to_cyc())?;
            let after = self.signature_at(&xi.mul(&RootOfUnity::new(1, 2 * l)).to_cyc())?;
            out.add_at(xi, (before - after) / 2);
        }
        Ok(out)
    }
}

/// Characteristic polynomial det(xI − M) by Faddeev–LeVerrier, low degree
/// first.
pub fn characteristic_polynomial(m: &Matrix<CycNum>) -> Vec<CycNum> {
    let n = m.rows();
    let mut c = vec![CycNum::zero(); n + 1];
    c[n] = CycNum::one();
    let mut mk = Matrix::<CycNum>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] = &next[(i, i)] + &c[n - k + 1];
        }
        mk = next;
        let am = m.mul(&mk);
        let tr = (0..n).fold(CycNum::zero(), |acc, i| &acc + &am[(i, i)]);
        c[n - k] = &(-tr) * &CycNum::from_ratio(1, k as i64);
    }
    c
}

fn sign_changes(signs: &[i32]) -> i64 {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Signature of a nonsingular Hermitian matrix over Q(ζ). Its characteristic
/// polynomial is real-rooted, so Descartes' rule counts roots exactly.
pub fn hermitian_signature(m: &Matrix<CycNum>) -> Result<i64> {
    let c = characteristic_polynomial(m);
    if c[0].is_zero() {
        return Err(Error::DegenerateForm("Hermitian matrix is singular".into()));
    }
    let signs = c
        .iter()
        .map(|x| x.sign_of_real())
        .collect::<Result<Vec<i32>>>()?;
    let flipped: Vec<i32> = signs
        .iter()
        .enumerate()
        .map(|(i, &s)| if i % 2 == 1 { -s } else { s })
        .collect();
    Ok(sign_changes(&signs) - sign_changes(&flipped))
}
