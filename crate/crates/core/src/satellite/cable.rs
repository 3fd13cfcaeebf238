//! Witt classes of metabelian Blanchfield forms of (2, d)-cables, connected
//! sums and mirrors.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::forms::{decompose, Decomposition, WittClass};
use crate::pipeline::torus_decomposition;
use crate::satellite::knot_expr::{IteratedTorus, SignedSummand};
use crate::satellite::seifert::SeifertMatrix;

type Cache = Mutex<HashMap<(char, u64, i64), Decomposition>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached<F: FnOnce() -> Result<Decomposition>>(key: (char, u64, i64), f: F) -> Result<Decomposition> {
    if let Some(d) = cache().lock().unwrap().get(&key) {
        return Ok(d.clone());
    }
    let d = f()?;
    cache().lock().unwrap().insert(key, d.clone());
    Ok(d)
}

/// Decomposition of the classical Blanchfield form of T(2, q).
pub fn classical_torus_decomposition(q: u64) -> Result<Decomposition> {
    cached(('c', q, 0), || decompose(&SeifertMatrix::torus(q).classical_blanchfield()?))
}

/// Decomposition of Bl_{α(2, χ_θ)}(T(2, d)) from the full pipeline, with θ
/// taken mod d and reduced into 0..=(d−1)/2.
pub fn torus_metabelian_decomposition(d: u64, theta: i64) -> Result<Decomposition> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidInput(format!("T(2, {d}) needs odd d ≥ 3")));
    }
    let t = theta.rem_euclid(d as i64);
    let t = t.min(d as i64 - t);
    cached(('m', d, t), || torus_decomposition(((d - 1) / 2) as u32, t))
}

/// Classical Blanchfield Witt class, using Bl(P(K)) = Bl(P) ⊕ Bl(K)(t²) for
/// the winding-number-2 cables.
pub fn classical_witt(k: &IteratedTorus) -> Result<WittClass> {
    let pattern = WittClass::from_decomposition(classical_torus_decomposition(k.pattern())?);
    match k.companion() {
        None => Ok(pattern),
        Some(c) => Ok(pattern.add(&classical_witt(&c)?.rescale(&RootOfUnity::one(), 2))),
    }
}

/// Witt class of Bl_{α(2, χ)}(K) for the character χ: H₁(Σ₂(K)) = Z_d → Z_ℓ
/// with value θ on the generator:
///
/// Bl(T(2, d))_{θ·d/ℓ} ⊕ Bl(K')(ξ_ℓ^{−θ}t) ⊕ Bl(K')(ξ_ℓ^{θ}t)
///
/// where K' is the companion (absent for a torus knot).
pub fn cable_metabelian_witt(k: &IteratedTorus, theta: u64, ell: u64) -> Result<WittClass> {
    let d = k.pattern();
    let theta = theta % ell;
    if theta != 0 && d % ell != 0 {
        return Err(Error::InvalidInput(format!(
            "no nontrivial Z_{ell} character on Z_{d}"
        )));
    }
    let scaled = if theta == 0 { 0 } else { theta * (d / ell) };
    let torus = WittClass::from_decomposition(torus_metabelian_decomposition(d, scaled as i64)?);
    let Some(companion) = k.companion() else {
        return Ok(torus);
    };
    let bl = classical_witt(&companion)?;
    let eta = RootOfUnity::new(theta as i64, ell);
    Ok(torus
        .add(&bl.rescale(&eta.conj(), 1))
        .add(&bl.rescale(&eta, 1)))
}

/// Bl(−K) = −Bl(K).
pub fn mirror_witt(w: &WittClass) -> WittClass {
    w.negate()
}

/// Witt class of one signed summand.
pub fn summand_witt(s: &SignedSummand, theta: u64, ell: u64) -> Result<WittClass> {
    let w = cable_metabelian_witt(&s.knot, theta, ell)?;
    Ok(if s.sign < 0 { mirror_witt(&w) } else { w })
}

/// Connected sum: the orthogonal sum of the summands' classes, with one
/// character value per summand.
pub fn connected_sum_witt(summands: &[SignedSummand], thetas: &[u64], ell: u64) -> Result<WittClass> {
    if summands.len() != thetas.len() {
        return Err(Error::InvalidInput("one character value per summand".into()));
    }
    summands
        .iter()
        .zip(thetas)
        .try_fold(WittClass::zero(), |acc, (s, &t)| Ok(acc.add(&summand_witt(s, t, ell)?)))
}
