//! H₁ of the double branched cover with its linking pairing, Z_ℓ-valued
//! characters and metabolisers.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::smith::smith_normal_form;
use crate::error::{Error, Result};
use crate::representation::Character;
use crate::satellite::seifert::SeifertMatrix;

/// Largest group order accepted by the exhaustive metaboliser search.
pub const MAX_SEARCH_ORDER: u64 = 200_000;

/// ⊕ Z/orders_i with a symmetric pairing λ(g_i, g_j) = linking[i][j] / denom
/// mod 1. `summand[i]` records which connected summand the factor came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedCoverData {
    pub orders: Vec<u64>,
    pub denom: u64,
    pub linking: Vec<Vec<u64>>,
    pub summand: Vec<usize>,
}

/// A subgroup given by canonical generators in the coordinates of the group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
}

fn to_u64(x: &BigInt) -> u64 {
    x.abs().to_u64().expect("small integer")
}

impl BranchedCoverData {
    pub fn trivial() -> Self {
        BranchedCoverData {
            orders: Vec::new(),
            denom: 1,
            linking: Vec::new(),
            summand: Vec::new(),
        }
    }

    /// H₁(Σ₂) = coker(V + Vᵀ) with λ(x, y) = xᵀ(V + Vᵀ)⁻¹y mod 1.
    pub fn from_seifert(v: &SeifertMatrix) -> Result<Self> {
        let a = v.symmetrized();
        let n = a.rows();
        let sf = smith_normal_form(&a);
        if sf.rank < n {
            return Err(Error::DegenerateForm("det(V + Vᵀ) = 0".into()));
        }
        // Generators g_i = U⁻¹e_i, and (V+Vᵀ)⁻¹g_j = W e_j / d_j.
        let idx: Vec<usize> = (0..n).filter(|&i| to_u64(&sf.diag[i]) > 1).collect();
        let orders: Vec<u64> = idx.iter().map(|&i| to_u64(&sf.diag[i])).collect();
        let denom = orders.iter().fold(1u64, |acc, o| acc.lcm(o));
        let linking = idx
            .iter()
            .map(|&i| {
                let g = sf.u_inv.col(i);
                idx.iter()
                    .zip(&orders)
                    .map(|(&j, &o)| {
                        let w = sf.v.col(j);
                        let dot: BigInt = g.iter().zip(&w).map(|(a, b)| a * b).sum();
                        (dot * BigInt::from(denom / o))
                            .mod_floor(&BigInt::from(denom))
                            .to_u64()
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let out = BranchedCoverData {
            summand: vec![0; orders.len()],
            orders,
            denom,
            linking,
        }
        .reduced();
        out.check()?;
        Ok(out)
    }

    fn reduced(mut self) -> Self {
        let mut g = self.denom;
        for row in &self.linking {
            for x in row {
                g = g.gcd(x);
            }
        }
        if g > 1 {
            self.denom /= g;
            for row in self.linking.iter_mut() {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        self
    }

    fn check(&self) -> Result<()> {
        let s = self.orders.len();
        for i in 0..s {
            for j in 0..s {
                if self.linking[i][j] != self.linking[j][i] {
                    return Err(Error::DegenerateForm("linking pairing is not symmetric".into()));
                }
                // o_i · λ(g_i, g_j) must be an integer.
                if (self.orders[i] as u128 * self.linking[i][j] as u128) % self.denom as u128 != 0 {
                    return Err(Error::DegenerateForm("linking pairing is not well defined".into()));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        for row in out.linking.iter_mut() {
            for x in row.iter_mut() {
                *x = (self.denom - *x) % self.denom;
            }
        }
        out
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let denom = self.denom.lcm(&o.denom);
        let (fa, fb) = (denom / self.denom, denom / o.denom);
        let (sa, sb) = (self.rank(), o.rank());
        let mut linking = vec![vec![0u64; sa + sb]; sa + sb];
        for i in 0..sa {
            for j in 0..sa {
                linking[i][j] = self.linking[i][j] * fa;
            }
        }
        for i in 0..sb {
            for j in 0..sb {
                linking[sa + i][sa + j] = o.linking[i][j] * fb;
            }
        }
        let shift = self.summand.iter().max().map_or(0, |m| m + 1);
        BranchedCoverData {
            orders: self.orders.iter().chain(&o.orders).copied().collect(),
            denom,
            linking,
            summand: self
                .summand
                .iter()
                .copied()
                .chain(o.summand.iter().map(|s| s + shift))
                .collect(),
        }
        .reduced()
    }

    /// λ(x, y) as a numerator over `denom`.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        let d = self.denom as u128;
        let mut s = 0u128;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s = (s + *xi as u128 * *yj as u128 % d * self.linking[i][j] as u128) % d;
            }
        }
        s as u64
    }

    /// Every Z_ℓ-valued character, as value tuples on the cyclic generators,
    /// in lexicographic order.
    pub fn all_characters(&self, ell: u64) -> Vec<Character> {
        let ranges: Vec<u64> = self
            .orders
            .iter()
            .map(|o| if o % ell == 0 { ell } else { 1 })
            .collect();
        tuples(&ranges)
            .into_iter()
            .map(|v| {
                Character::new(ell, self.orders.clone(), v.iter().map(|&x| x as i64).collect())
                    .expect("values respect the orders")
            })
            .collect()
    }

    /// Characters up to θᵢ ↔ −θᵢ in each factor: every value in 0..=(ℓ−1)/2.
    pub fn enumerate_characters(&self, ell: u64) -> Vec<Character> {
        self.all_characters(ell)
            .into_iter()
            .filter(|c| c.values.iter().all(|&v| 2 * v as u64 <= ell))
            .collect()
    }

    pub fn vanishes_on(&self, chi: &Character, p: &Subgroup) -> bool {
        p.generators.iter().all(|g| {
            let v: Vec<i64> = g.iter().map(|&x| x as i64).collect();
            chi.eval(&v) == 0
        })
    }

    /// All subgroups P with P = P^⊥, found primary part by primary part.
    pub fn enumerate_metabolisers(&self) -> Result<Vec<Subgroup>> {
        let n = self.order();
        if n > MAX_SEARCH_ORDER {
            return Err(Error::TooLarge(n, MAX_SEARCH_ORDER));
        }
        if !is_square(n) {
            return Ok(Vec::new());
        }
        let mut parts: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
        for p in prime_factors(n) {
            let local = self.primary_part(p);
            let mets = local.metabolisers();
            if mets.is_empty() {
                return Ok(Vec::new());
            }
            parts.push(mets.into_iter().map(|m| local.embed(&m)).collect());
        }
        // Cartesian product of the local choices.
        let mut acc: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
        for choices in parts {
            let mut next = Vec::new();
            for a in &acc {
                for c in &choices {
                    let mut g = a.clone();
                    g.extend(c.iter().cloned());
                    next.push(g);
                }
            }
            acc = next;
        }
        let root = (n as f64).sqrt().round() as u64;
        let mut out: Vec<Subgroup> = acc
            .into_iter()
            .map(|generators| Subgroup {
                order: root,
                generators,
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn primary_part(&self, p: u64) -> PrimaryPart<'_> {
        let mut factors = Vec::new();
        for (i, &o) in self.orders.iter().enumerate() {
            let mut q = 1;
            while o % (q * p) == 0 {
                q *= p;
            }
            if q > 1 {
                factors.push((i, q, o / q));
            }
        }
        PrimaryPart { data: self, factors }
    }
}

/// The p-primary subgroup ⊕ Z/p^{a_i}, generated by (o_i / p^{a_i})·g_i.
struct PrimaryPart<'a> {
    data: &'a BranchedCoverData,
    /// (factor index, p^{a_i}, cofactor o_i / p^{a_i})
    factors: Vec<(usize, u64, u64)>,
}

impl PrimaryPart<'_> {
    fn size(&self) -> u64 {
        self.factors.iter().map(|f| f.1).product()
    }

    fn embed(&self, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        gens.iter()
            .map(|y| {
                let mut x = vec![0u64; self.data.rank()];
                for (k, &(i, _, c)) in self.factors.iter().enumerate() {
                    x[i] = y[k] * c % self.data.orders[i];
                }
                x
            })
            .collect()
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&(_, q, _)| {
                let v = code % q;
                code /= q;
                v
            })
            .collect()
    }

    fn encode(&self, y: &[u64]) -> u64 {
        let mut code = 0;
        for (k, &(_, q, _)) in self.factors.iter().enumerate().rev() {
            code = code * q + y[k];
        }
        code
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), f)| (x + y) % f.1)
            .collect()
    }

    fn pair(&self, a: &[u64], b: &[u64]) -> u64 {
        let ea = self.embed(&[a.to_vec()]).pop().unwrap();
        let eb = self.embed(&[b.to_vec()]).pop().unwrap();
        self.data.pair(&ea, &eb)
    }

    /// Elements of the subgroup generated by S and x.
    fn extend(&self, elems: &BTreeSet<u64>, x: &[u64]) -> BTreeSet<u64> {
        let mut out = elems.clone();
        let mut frontier: Vec<Vec<u64>> = elems.iter().map(|&c| self.decode(c)).collect();
        while let Some(e) = frontier.pop() {
            let s = self.add(&e, x);
            if out.insert(self.encode(&s)) {
                frontier.push(s);
            }
        }
        out
    }

    /// Breadth-first search over isotropic subgroups, keeping those of order
    /// √|H_p|. Returned as canonical generating sets.
    fn metabolisers(&self) -> Vec<Vec<Vec<u64>>> {
        let size = self.size();
        if !is_square(size) {
            return Vec::new();
        }
        let target = (size as f64).sqrt().round() as usize;
        let isotropic: Vec<Vec<u64>> = (1..size)
            .map(|c| self.decode(c))
            .filter(|x| self.pair(x, x) == 0)
            .collect();
        let mut seen: HashSet<BTreeSet<u64>> = HashSet::new();
        let mut level: Vec<BTreeSet<u64>> = vec![BTreeSet::from([0u64])];
        let mut found = Vec::new();
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                if s.len() == target {
                    found.push(s.clone());
                    continue;
                }
                let members: Vec<Vec<u64>> = s.iter().map(|&c| self.decode(c)).collect();
                for x in &isotropic {
                    if s.contains(&self.encode(x)) || members.iter().any(|m| self.pair(m, x) != 0) {
                        continue;
                    }
                    let t = self.extend(s, x);
                    if t.len() <= target && seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            level = next;
        }
        found.sort();
        found.into_iter().map(|s| self.canonical_generators(&s)).collect()
    }

    /// Greedy generating set: the smallest element codes not yet generated.
    fn canonical_generators(&self, s: &BTreeSet<u64>) -> Vec<Vec<u64>> {
        let mut span = BTreeSet::from([0u64]);
        let mut gens = Vec::new();
        for &c in s {
            if !span.contains(&c) {
                let x = self.decode(c);
                span = self.extend(&span, &x);
                gens.push(x);
            }
        }
        gens
    }
}

fn tuples(ranges: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &r in ranges {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..r).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    r * r == n
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}
