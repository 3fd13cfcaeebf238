//! Primary decomposition, orthogonalization and classification of linking
//! forms into basic forms.

use crate::algebra::cyclotomic::{CycNum, RootOfUnity};
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::ratfunc::{laurent_mod, ModCoset};
use crate::error::{Error, Result};
use crate::forms::basic::{Decomposition, ETerm, FTerm};
use crate::forms::linking_form::LinkingForm;
use crate::forms::roots::{identify_roots, valuation};

fn linear(a: &CycNum) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, vec![-a.clone(), CycNum::one()])
}

fn sign_of(x: &CycNum) -> Result<i32> {
    let s = x.sign_of_real()?;
    if s == 0 {
        return Err(Error::DegenerateForm("vanishing leading coefficient".into()));
    }
    Ok(s)
}

/// Is r ξ-positive? Requires (t⁻¹ − ξ̄)·r to be symmetric and r(ξ) ≠ 0.
/// The sign change of θ ↦ (e^{−iθ} − ξ̄)r(e^{iθ}) at ξ is the sign of
/// −i·ξ̄·r(ξ), so r is ξ-positive iff i·ξ̄·r(ξ) > 0.
pub fn is_xi_positive(r: &LaurentPoly, xi: &RootOfUnity) -> Result<bool> {
    let x = xi.to_cyc();
    let s = &LaurentPoly::from_coeffs(-1, vec![CycNum::one(), -x.conj()]) * r;
    if s.bar() != s {
        return Err(Error::InvalidInput(format!(
            "(t⁻¹ − ξ̄)·r is not symmetric for r = {r}"
        )));
    }
    let rx = r.eval(&x);
    if rx.is_zero() {
        return Err(Error::InvalidInput("r vanishes at ξ".into()));
    }
    let v = &(&CycNum::root_of_unity(1, 4) * &x.conj()) * &rx;
    Ok(sign_of(&v)? > 0)
}

/// A (t − ξ)-primary summand with the restricted form.
#[derive(Clone, Debug)]
pub struct PrimaryPart {
    pub xi: RootOfUnity,
    pub form: LinkingForm,
}

/// Primary summands at the roots on the unit circle, plus the data of the rest.
#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    pub parts: Vec<PrimaryPart>,
    pub f_terms: Vec<FTerm>,
    pub residual: LaurentPoly,
}

pub fn primary_decompose(lf: &LinkingForm) -> Result<PrimaryDecomposition> {
    let total = lf.order().normalized();
    let roots = identify_roots(&total)?;
    let mut parts = Vec::new();
    for xi in &roots.on_circle {
        let a = xi.to_cyc();
        let p = linear(&a);
        let mut idx = Vec::new();
        let mut orders = Vec::new();
        let mut cof = Vec::new();
        for (i, f) in lf.orders().iter().enumerate() {
            let (n, q) = valuation(f, &a);
            if n > 0 {
                idx.push(i);
                orders.push(p.pow(n));
                cof.push(q);
            }
        }
        let m = idx.len();
        let mut gram = vec![vec![ModCoset::zero(); m]; m];
        for r in 0..m {
            for c in 0..m {
                gram[r][c] = lf
                    .value(idx[r], idx[c])
                    .scale(&(&cof[r] * &cof[c].bar()));
            }
        }
        parts.push(PrimaryPart {
            xi: *xi,
            form: LinkingForm::new_unchecked(orders, gram)?,
        });
    }
    let mut f_terms = Vec::new();
    for r in &roots.off_circle {
        let a = r.value();
        let b = r.partner();
        let (mut na, mut nb) = (0, 0);
        for f in lf.orders() {
            let (n, _) = valuation(f, &a);
            if n > 0 {
                f_terms.push(FTerm::new(n, r.clone()));
            }
            na += n;
            nb += valuation(f, &b).0;
        }
        if na != nb {
            return Err(Error::DegenerateForm(format!(
                "order is not symmetric at the pair {} / {}",
                a, b
            )));
        }
    }
    let mut residual = total;
    let mut strip = |a: &CycNum| residual = valuation(&residual, a).1;
    for xi in &roots.on_circle {
        strip(&xi.to_cyc());
    }
    for r in &roots.off_circle {
        strip(&r.value());
        strip(&r.partner());
    }
    Ok(PrimaryDecomposition {
        parts,
        f_terms,
        residual: residual.normalized(),
    })
}

/// Gram numerators over a fixed p^N, with p = t − ξ.
struct LocalGram {
    a: CycNum,
    n_max: u32,
    modulus: LaurentPoly,
    exps: Vec<u32>,
    g: Vec<Vec<LaurentPoly>>,
}

impl LocalGram {
    fn new(xi: &RootOfUnity, form: &LinkingForm) -> Result<Self> {
        let a = xi.to_cyc();
        let p = linear(&a);
        let mut exps = Vec::new();
        for f in form.orders() {
            let (n, q) = valuation(f, &a);
            if !q.is_unit() || n == 0 {
                return Err(Error::InvalidInput(format!("order {f} is not a power of (t − {xi})")));
            }
            exps.push(n);
        }
        let n_max = exps.iter().copied().max().unwrap_or(0);
        let modulus = p.pow(n_max);
        let k = exps.len();
        let mut g = vec![vec![LaurentPoly::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let v = form.value(i, j);
                if v.is_zero() {
                    continue;
                }
                let e = v.den().span().unwrap_or(0) as u32;
                if *v.den() != p.pow(e) || e > exps[i] || e > exps[j] {
                    return Err(Error::DegenerateForm(format!(
                        "value {v} does not live on the (t − {xi})-primary part"
                    )));
                }
                g[i][j] = laurent_mod(&(v.num() * &p.pow(n_max - e)), &modulus);
            }
        }
        Ok(LocalGram {
            a,
            n_max,
            modulus,
            exps,
            g,
        })
    }

    /// Exponent of the reduced denominator of g/p^N.
    fn level(&self, g: &LaurentPoly) -> u32 {
        if g.is_zero() {
            return 0;
        }
        self.n_max - valuation(g, &self.a).0.min(self.n_max)
    }

    fn reduce(&self, g: &LaurentPoly) -> LaurentPoly {
        laurent_mod(g, &self.modulus)
    }

    /// y_i ← y_i + c·y_j
    fn add_multiple(&mut self, i: usize, j: usize, c: &LaurentPoly, active: &[usize]) {
        let cb = c.bar();
        for &k in active {
            let v = self.reduce(&(&self.g[i][k] + &(c * &self.g[j][k])));
            self.g[i][k] = v;
        }
        for &k in active {
            let v = self.reduce(&(&self.g[k][i] + &(&cb * &self.g[k][j])));
            self.g[k][i] = v;
        }
    }
}

/// Split a (t − ξ)-primary form into an orthogonal sum of cyclic forms,
/// returned as (n, h) meaning Λ/(t − ξ)^n with λ(x, x) = h/(t − ξ)^n.
pub fn orthogonalize_local(xi: &RootOfUnity, form: &LinkingForm) -> Result<Vec<(u32, LaurentPoly)>> {
    let mut lg = LocalGram::new(xi, form)?;
    let p = linear(&lg.a);
    let mut active: Vec<usize> = (0..lg.exps.len()).collect();
    let mut blocks = Vec::new();
    let l = xi.conductor().max(5);
    let candidates: Vec<CycNum> = vec![
        CycNum::one(),
        CycNum::root_of_unity(1, 3),
        CycNum::root_of_unity(1, 4),
        CycNum::root_of_unity(1, l),
        CycNum::from_int(2),
    ];
    while !active.is_empty() {
        let m = active.iter().map(|&i| lg.exps[i]).max().unwrap();
        let top: Vec<usize> = active.iter().copied().filter(|&i| lg.exps[i] == m).collect();
        let mut pivot = top.iter().copied().find(|&i| lg.level(&lg.g[i][i]) == m);
        if pivot.is_none() {
            'search: for &a in &top {
                for &b in &top {
                    if a == b || lg.level(&lg.g[a][b]) != m {
                        continue;
                    }
                    for c in &candidates {
                        let cp = LaurentPoly::constant(c.clone());
                        let cb = LaurentPoly::constant(c.conj());
                        let d = &(&(&lg.g[a][a] + &(&cp * &lg.g[b][a])) + &(&cb * &lg.g[a][b]))
                            + &(&(&cp * &cb) * &lg.g[b][b]);
                        if lg.level(&lg.reduce(&d)) == m {
                            lg.add_multiple(a, b, &cp, &active);
                            pivot = Some(a);
                            break 'search;
                        }
                    }
                }
            }
        }
        let a = pivot.ok_or_else(|| {
            Error::DegenerateForm(format!("no pivot of exponent {m} at {xi}"))
        })?;
        let shift = p.pow(lg.n_max - m);
        let pm = p.pow(m);
        let h = lg.g[a][a].exact_div(&shift).expect("level m");
        let (one, h_inv, _) = h.xgcd(&pm);
        if !one.is_one() {
            return Err(Error::DegenerateForm("pivot value is not a unit".into()));
        }
        for &b in &active {
            if b == a || lg.g[b][a].is_zero() {
                continue;
            }
            let gb = lg.g[b][a].exact_div(&shift).ok_or_else(|| {
                Error::DegenerateForm("pairing exceeds the order of a generator".into())
            })?;
            let c = laurent_mod(&(&gb * &h_inv), &pm);
            lg.add_multiple(b, a, &-&c, &active);
            debug_assert!(lg.g[b][a].is_zero());
        }
        blocks.push((m, laurent_mod(&h, &pm)));
        active.retain(|&i| i != a);
    }
    Ok(blocks)
}

/// The orthogonal cyclic summands of a primary form as 1×1 linking forms.
pub fn orthogonalize(xi: &RootOfUnity, form: &LinkingForm) -> Result<Vec<LinkingForm>> {
    let p = linear(&xi.to_cyc());
    orthogonalize_local(xi, form)?
        .into_iter()
        .map(|(n, h)| {
            let f = p.pow(n);
            LinkingForm::cyclic(f.clone(), ModCoset::from_parts(&h, &f))
        })
        .collect()
}

/// ε of the cyclic form Λ/(t − ξ)^n with λ(x, x) = h/(t − ξ)^n.
fn epsilon(n: u32, h: &LaurentPoly, xi: &RootOfUnity) -> Result<i32> {
    let x = xi.to_cyc();
    let xb = x.conj();
    let unit = -&(&xb * &xb);
    let hx = h.eval(&x);
    if n % 2 == 1 {
        let r = &hx * &unit.pow(((n - 1) / 2) as i64);
        let v = &(&CycNum::root_of_unity(1, 4) * &xb) * &r;
        sign_of(&v)
    } else {
        sign_of(&(&hx * &unit.pow((n / 2) as i64)))
    }
}

/// Identify a cyclic form on Λ/(t − ξ)^n as 𝔢(n, ε, ξ).
pub fn classify_cyclic(order: &LaurentPoly, value: &ModCoset, xi: &RootOfUnity) -> Result<ETerm> {
    let a = xi.to_cyc();
    let (n, q) = valuation(order, &a);
    if n == 0 || !q.is_unit() {
        return Err(Error::InvalidInput(format!("order {order} is not a power of (t − {xi})")));
    }
    let p = linear(&a);
    if *value.den() != p.pow(n) {
        return Err(Error::DegenerateForm(format!(
            "annihilator of {value} is smaller than the order"
        )));
    }
    Ok(ETerm::new(n, epsilon(n, value.num(), xi)?, *xi))
}

/// Decompose a linking form into basic forms (unique up to order).
pub fn decompose(lf: &LinkingForm) -> Result<Decomposition> {
    let pd = primary_decompose(lf)?;
    let mut e_terms = Vec::new();
    for part in &pd.parts {
        for (n, h) in orthogonalize_local(&part.xi, &part.form)? {
            e_terms.push(ETerm::new(n, epsilon(n, &h, &part.xi)?, part.xi));
        }
    }
    Ok(Decomposition::new(e_terms, pd.f_terms, pd.residual))
}
