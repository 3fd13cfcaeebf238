//! Signature jumps δσ(ξ) = Σ ε over odd-n 𝔢-summands at ξ.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::cyclotomic::RootOfUnity;
use crate::forms::basic::Decomposition;

/// Finitely supported map S¹ → Z; zero values are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JumpMap {
    jumps: BTreeMap<RootOfUnity, i64>,
}

impl JumpMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_decomposition(d: &Decomposition) -> Self {
        let mut out = JumpMap::new();
        for e in d.e_terms.iter().filter(|e| e.n % 2 == 1) {
            out.add_at(e.xi, e.epsilon as i64);
        }
        out
    }

    pub fn add_at(&mut self, xi: RootOfUnity, v: i64) {
        if v == 0 {
            return;
        }
        let e = self.jumps.entry(xi).or_insert(0);
        *e += v;
        if *e == 0 {
            self.jumps.remove(&xi);
        }
    }

    pub fn get(&self, xi: &RootOfUnity) -> i64 {
        self.jumps.get(xi).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn support(&self) -> Vec<RootOfUnity> {
        self.jumps.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RootOfUnity, i64)> + '_ {
        self.jumps.iter().map(|(k, v)| (*k, *v))
    }

    pub fn add(&self, o: &JumpMap) -> JumpMap {
        let mut out = self.clone();
        for (k, v) in o.iter() {
            out.add_at(k, v);
        }
        out
    }

    pub fn scaled(&self, s: i64) -> JumpMap {
        let mut out = JumpMap::new();
        for (k, v) in self.iter() {
            out.add_at(k, s * v);
        }
        out
    }

    pub fn neg(&self) -> JumpMap {
        self.scaled(-1)
    }

    /// Jumps of the form pulled back along t ↦ η·t^m: a jump at ζ appears at
    /// every ω with η·ω^m = ζ.
    pub fn pullback(&self, eta: &RootOfUnity, m: u32) -> JumpMap {
        assert!(m >= 1);
        let mut out = JumpMap::new();
        for (zeta, v) in self.iter() {
            let (a, q) = zeta.mul(&eta.conj()).fraction();
            for k in 0..m as u64 {
                out.add_at(RootOfUnity::new((a + k * q) as i64, q * m as u64), v);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Σ of all jumps (the total signature change around the circle).
    pub fn total(&self) -> i64 {
        self.jumps.values().sum()
    }
}

impl fmt::Display for JumpMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}: {v:+}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct JumpEntry {
    xi: RootOfUnity,
    conductor: u64,
    exponent: i64,
    jump: i64,
}

impl Serialize for JumpMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<JumpEntry> = self
            .iter()
            .map(|(xi, jump)| JumpEntry {
                xi,
                conductor: xi.order(),
                exponent: xi.signed_exponent(),
                jump,
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JumpMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<JumpEntry> = Vec::deserialize(d)?;
        let mut out = JumpMap::new();
        for e in v {
            if RootOfUnity::new(e.exponent, e.conductor.max(1)) != e.xi {
                return Err(D::Error::custom("conductor/exponent disagree with ξ"));
            }
            out.add_at(e.xi, e.jump);
        }
        Ok(out)
    }
}
