//! Twisted cochain complexes of zero-surgeries, their second cohomology and
//! the Blanchfield pairing on it.

use crate::algebra::laurent::LaurentPoly;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::ratfunc::ModCoset;
use crate::algebra::smith::{smith_normal_form, solve_with_smith, SmithForm};
use crate::error::{Error, Result};
use crate::forms::linking_form::LinkingForm;
use crate::group::presentation::SurgeryPresentation;
use crate::representation::Representation;

/// β applied to the chain data. Vectors are rows and matrices act on the
/// right; δ^i = (−1)^i·β(∂_i)^{#T}.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    pub dim: usize,
    pub d1: PolyMatrix,
    pub d2: PolyMatrix,
    pub d3: PolyMatrix,
    pub phi: PolyMatrix,
}

/// H² = ker(β(∂₃)^{#T}) / im(β(∂₂)^{#T}) as ⊕ Λ/(f_i).
#[derive(Clone, Debug)]
pub struct CohomologyModule {
    /// Generators as vectors in C² (length m·d), one per cyclic summand.
    pub generators: Vec<Vec<LaurentPoly>>,
    /// Invariant factors, normalized and non-units.
    pub orders: Vec<LaurentPoly>,
}

impl CohomologyModule {
    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Product of the invariant factors.
    pub fn order(&self) -> LaurentPoly {
        self.orders
            .iter()
            .fold(LaurentPoly::one(), |acc, f| &acc * f)
    }
}

impl TwistedComplex {
    pub fn new(p: &SurgeryPresentation, rep: &Representation) -> Result<Self> {
        rep.check_presentation(p)?;
        let cd = p.chain_data()?;
        let mut ev = rep.evaluator();
        Ok(TwistedComplex {
            dim: rep.dim(),
            d1: ev.twist(&cd.d1),
            d2: ev.twist(&cd.d2),
            d3: ev.twist(&cd.d3),
            phi: ev.twist(&cd.phi),
        })
    }

    /// Acyclic over the fraction field Q(ζ)(t).
    pub fn is_acyclic(&self) -> bool {
        let r1 = smith_normal_form(&self.d1).rank;
        let r2 = smith_normal_form(&self.d2).rank;
        let r3 = smith_normal_form(&self.d3).rank;
        let c0 = self.d1.cols();
        let c1 = self.d1.rows();
        let c2 = self.d2.rows();
        let c3 = self.d3.rows();
        c0 == r1 && c1 == r1 + r2 && c2 == r2 + r3 && c3 == r3
    }

    /// Second cohomology with explicit cyclic generators.
    pub fn cohomology(&self) -> Result<(CohomologyModule, CohomologySolver)> {
        let a = self.d3.bar_transpose();
        let b = self.d2.bar_transpose();
        let sa = smith_normal_form(&a);
        let r = sa.rank;
        let c2 = a.rows();
        // Kernel of x ↦ x·A: rows r.. of U.
        let kernel: Vec<Vec<LaurentPoly>> = (r..c2).map(|i| sa.u.row(i)).collect();
        let coords = b.mul(&sa.u_inv);
        let c = coords.submatrix(0, coords.rows(), r, c2);
        for i in 0..coords.rows() {
            for j in 0..r {
                if !coords[(i, j)].is_zero() {
                    return Err(Error::InvalidInput(
                        "β(∂₃)·β(∂₂) ≠ 0: representation does not respect the chain complex".into(),
                    ));
                }
            }
        }
        let sc = smith_normal_form(&c);
        if sc.rank != kernel.len() {
            return Err(Error::NotAcyclic);
        }
        let k = PolyMatrix::from_rows(kernel);
        let gens_all = sc.v_inv.mul(&k);
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (i, d) in sc.diag.iter().enumerate().take(sc.rank) {
            if d.is_unit() {
                continue;
            }
            generators.push(gens_all.row(i));
            orders.push(d.clone());
        }
        let solver = CohomologySolver {
            b_smith: smith_normal_form(&b),
            b,
            phi: self.phi.clone(),
        };
        Ok((CohomologyModule { generators, orders }, solver))
    }
}

/// Solves against β(∂₂)^{#T} and evaluates the pairing.
#[derive(Clone, Debug)]
pub struct CohomologySolver {
    b: PolyMatrix,
    b_smith: SmithForm<LaurentPoly>,
    phi: PolyMatrix,
}

impl CohomologySolver {
    /// (Z, s) with Z·β(∂₂)^{#T} = s·w, s minimal up to units.
    pub fn solve(&self, w: &[LaurentPoly]) -> Result<(Vec<LaurentPoly>, LaurentPoly)> {
        solve_with_smith(&self.b_smith, w)
    }

    pub fn coboundary_matrix(&self) -> &PolyMatrix {
        &self.b
    }

    /// Bl([v],[w]) = (1/s)·(v·β(Φ)·Z^{#T})^# with Z·β(∂₂)^{#T} = s·w.
    pub fn pairing(&self, v: &[LaurentPoly], w: &[LaurentPoly]) -> Result<ModCoset> {
        let (z, s) = self.solve(w)?;
        Ok(self.pairing_with(v, &z, &s))
    }

    /// The pairing for a given solution (Z, s) of Z·β(∂₂)^{#T} = s·w.
    pub fn pairing_with(&self, v: &[LaurentPoly], z: &[LaurentPoly], s: &LaurentPoly) -> ModCoset {
        let vphi = self.phi.left_apply(v);
        let x = vphi
            .iter()
            .zip(z)
            .fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * &b.bar()));
        ModCoset::from_parts(&x.bar(), s)
    }
}

/// The linking form on H² with gram[i][j] = Bl(x_j, x_i).
pub fn extract_linking_form(p: &SurgeryPresentation, rep: &Representation) -> Result<LinkingForm> {
    let cx = TwistedComplex::new(p, rep)?;
    if !cx.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let (module, solver) = cx.cohomology()?;
    let n = module.generators.len();
    let mut gram = vec![vec![ModCoset::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = solver.pairing(&module.generators[j], &module.generators[i])?;
        }
    }
    LinkingForm::new(module.orders, gram)
}
