//! Closed-form decomposition of the metabelian Blanchfield forms of T(2, 2k+1).

use crate::algebra::cyclotomic::RootOfUnity;
use crate::algebra::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::forms::{Decomposition, ETerm};

/// For 1 ≤ θ ≤ k, with ξ = ζ_{2k+1}: a pair 𝔢(1, ±1, ξᵉ) ⊕ 𝔢(1, ∓1, ξ^{−e})
/// for each 1 ≤ e ≤ k, e ≠ θ. The sign at ξᵉ is −1 exactly when θ < e and
/// θ + e is even.
pub fn torus_decomposition_oracle(k: u32, theta: i64) -> Result<Decomposition> {
    if k == 0 || theta < 1 || theta > k as i64 {
        return Err(Error::InvalidInput(format!(
            "oracle needs 1 ≤ θ ≤ k, got k = {k}, θ = {theta}"
        )));
    }
    let q = 2 * k as u64 + 1;
    let mut terms = Vec::new();
    for e in (1..=k as i64).filter(|&e| e != theta) {
        let eps = if theta < e && (theta + e) % 2 == 0 { -1 } else { 1 };
        terms.push(ETerm::new(1, eps, RootOfUnity::new(e, q)));
        terms.push(ETerm::new(1, -eps, RootOfUnity::new(-e, q)));
    }
    Ok(Decomposition::new(terms, vec![], LaurentPoly::one()))
}
