//! End-to-end computations for the torus knots T(2, 2k+1).

use rayon::prelude::*;
use serde::Serialize;

use crate::blanchfield::extract_linking_form;
use crate::error::{Error, Result};
use crate::forms::{decompose, Decomposition, JumpMap, LinkingForm};
use crate::group::presentation::torus_presentation;
use crate::representation::{abelian_rep, torus_metabelian_rep};
use crate::satellite::{torus_decomposition_oracle, SeifertMatrix};

/// The twisted Blanchfield form of T(2, 2k+1) for the metabelian
/// representation ρ_θ, computed from the presentation.
pub fn torus_blanchfield(k: u32, theta: i64) -> Result<LinkingForm> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let q = 2 * k as i64 + 1;
    let theta = theta.rem_euclid(q);
    let p = torus_presentation(k);
    let rep = torus_metabelian_rep(k, theta);
    extract_linking_form(&p, &rep)
}

pub fn torus_decomposition(k: u32, theta: i64) -> Result<Decomposition> {
    decompose(&torus_blanchfield(k, theta)?)
}

/// One golden comparison run by `selftest`.
#[derive(Clone, Debug, Serialize)]
pub struct SelfCheck {
    pub name: String,
    pub passed: bool,
}

/// Pipeline versus closed-form oracle for every 1 ≤ θ ≤ k ≤ `max_k`, and
/// abelian-twist jumps versus Levine–Tristram jumps for T(2,3), T(2,5).
pub fn selftest(max_k: u32) -> Result<Vec<SelfCheck>> {
    let pairs: Vec<(u32, i64)> = (1..=max_k)
        .flat_map(|k| (1..=k as i64).map(move |t| (k, t)))
        .collect();
    let mut checks = pairs
        .par_iter()
        .map(|&(k, t)| {
            Ok(SelfCheck {
                name: format!("torus k={k} theta={t}"),
                passed: torus_decomposition(k, t)? == torus_decomposition_oracle(k, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for k in [1u32, 2] {
        let q = 2 * k as u64 + 1;
        let p = torus_presentation(k);
        let lf = extract_linking_form(&p, &abelian_rep(&p.weights))?;
        let pipeline = JumpMap::from_decomposition(&decompose(&lf)?);
        let lt = SeifertMatrix::torus(q).levine_tristram_jumps()?;
        checks.push(SelfCheck {
            name: format!("levine-tristram T(2,{q})"),
            passed: pipeline == lt,
        });
    }
    Ok(checks)
}
