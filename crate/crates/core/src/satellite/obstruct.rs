//! The sliceness obstruction from metabelian Blanchfield forms over the
//! double branched cover.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::forms::JumpMap;
use crate::satellite::cable::summand_witt;
use crate::satellite::cover::{is_prime, prime_factors, BranchedCoverData, Subgroup};
use crate::satellite::knot_expr::{KnotExpr, SignedSummand};
use crate::satellite::seifert::SeifertMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub character: Vec<u64>,
    pub metabolic: bool,
    pub jumps: JumpMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllTable {
    pub ell: u64,
    pub rows: Vec<CharacterRow>,
}

/// A character vanishing on a metaboliser whose Witt class has a nonzero
/// jump at `location`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub metaboliser: usize,
    pub ell: u64,
    pub character: Vec<u64>,
    pub location: RootOfUnity,
    pub jump: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub knot: String,
    pub cover: BranchedCoverData,
    pub ells: Vec<u64>,
    pub metabolisers: Vec<Subgroup>,
    pub witnesses: Vec<Witness>,
    pub tables: Vec<EllTable>,
}

impl ObstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Metaboliser indices without a witness.
    pub fn unobstructed_metabolisers(&self) -> Vec<usize> {
        (0..self.metabolisers.len())
            .filter(|i| !self.witnesses.iter().any(|w| w.metaboliser == *i))
            .collect()
    }
}

/// H₁(Σ₂) of a connected sum, one cyclic factor Z_d per summand.
pub fn cover_data(summands: &[SignedSummand]) -> Result<BranchedCoverData> {
    summands.iter().try_fold(BranchedCoverData::trivial(), |acc, s| {
        let bc = BranchedCoverData::from_seifert(&SeifertMatrix::torus(s.knot.pattern()))?;
        Ok(acc.direct_sum(&if s.sign < 0 { bc.negate() } else { bc }))
    })
}

fn reduce(values: &[i64], ell: u64) -> Vec<u64> {
    values
        .iter()
        .map(|&v| {
            let v = v.rem_euclid(ell as i64) as u64;
            v.min(ell - v)
        })
        .collect()
}

/// Run the obstruction for each odd prime ℓ in `ells` (default: the odd
/// primes dividing |H₁(Σ₂)|).
pub fn sliceness_obstruction(expr: &KnotExpr, ells: Option<&[u64]>) -> Result<ObstructionReport> {
    let summands = expr.summands();
    let cover = cover_data(&summands)?;
    let ells: Vec<u64> = match ells {
        Some(list) => {
            if let Some(bad) = list.iter().find(|&&l| l == 2 || !is_prime(l)) {
                return Err(Error::InvalidInput(format!("ℓ = {bad} is not an odd prime")));
            }
            let mut v = list.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => prime_factors(cover.order()).into_iter().filter(|&p| p != 2).collect(),
    };
    let metabolisers = cover.enumerate_metabolisers()?;

    // Jumps of each summand for each reduced character value.
    let jobs: Vec<(u64, usize, u64)> = ells
        .iter()
        .flat_map(|&ell| {
            let cover = &cover;
            (0..summands.len()).flat_map(move |i| {
                let divides = cover.orders[i] % ell == 0;
                let top = if divides { ell / 2 } else { 0 };
                (0..=top).map(move |t| (ell, i, t))
            })
        })
        .collect();
    let computed: Vec<((u64, usize, u64), Result<JumpMap>)> = jobs
        .par_iter()
        .map(|&(ell, i, t)| ((ell, i, t), summand_witt(&summands[i], t, ell).and_then(|w| w.jumps())))
        .collect();
    let mut summand_jumps = HashMap::new();
    for (key, j) in computed {
        summand_jumps.insert(key, j?);
    }

    let tables: Vec<EllTable> = ells
        .iter()
        .map(|&ell| EllTable {
            ell,
            rows: cover
                .enumerate_characters(ell)
                .into_iter()
                .map(|chi| {
                    let character = reduce(&chi.values, ell);
                    let jumps = character
                        .iter()
                        .enumerate()
                        .fold(JumpMap::new(), |acc, (i, &t)| acc.add(&summand_jumps[&(ell, i, t)]));
                    CharacterRow {
                        metabolic: jumps.is_zero(),
                        character,
                        jumps,
                    }
                })
                .collect(),
        })
        .collect();
    let lookup: HashMap<(u64, Vec<u64>), &CharacterRow> = tables
        .iter()
        .flat_map(|t| t.rows.iter().map(move |r| ((t.ell, r.character.clone()), r)))
        .collect();

    let witnesses: Vec<Witness> = metabolisers
        .par_iter()
        .enumerate()
        .filter_map(|(m, p)| {
            ells.iter().find_map(|&ell| {
                cover
                    .all_characters(ell)
                    .into_iter()
                    .filter(|chi| !chi.is_trivial() && cover.vanishes_on(chi, p))
                    .find_map(|chi| {
                        let row = lookup[&(ell, reduce(&chi.values, ell))];
                        let (location, jump) = row.jumps.iter().next()?;
                        Some(Witness {
                            metaboliser: m,
                            ell,
                            character: chi.values.iter().map(|&v| v as u64).collect(),
                            location,
                            jump,
                        })
                    })
            })
        })
        .collect();

    let verdict = if witnesses.len() == metabolisers.len() {
        Verdict::Obstructed
    } else {
        Verdict::Inconclusive
    };
    Ok(ObstructionReport {
        verdict,
        knot: expr.normalized_string(),
        cover,
        ells,
        metabolisers,
        witnesses,
        tables,
    })
}
