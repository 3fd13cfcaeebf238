//! Laurent polynomials Λ = Q(ζ)[t, t⁻¹] with the involution t ↦ t⁻¹, ζ ↦ ζ̄.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{CycNum, RootOfUnity};

/// Σ c_i t^{low+i}; `c` has nonzero first and last entries, or is empty for 0.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    low: i64,
    c: Vec<CycNum>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycNum::one())
    }

    pub fn t() -> Self {
        Self::monomial(CycNum::one(), 1)
    }

    pub fn constant(c: CycNum) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(CycNum::from_int(v))
    }

    pub fn monomial(c: CycNum, k: i64) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    /// Σ c_i t^{low+i}.
    pub fn from_coeffs(low: i64, c: Vec<CycNum>) -> Self {
        let mut p = LaurentPoly { low, c };
        p.trim();
        p
    }

    /// From integer coefficients starting at t^low.
    pub fn from_ints(low: i64, c: &[i64]) -> Self {
        Self::from_coeffs(low, c.iter().map(|&v| CycNum::from_int(v)).collect())
    }

    /// Sum of terms (exponent, coefficient); repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, CycNum)>>(terms: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for (k, c) in terms {
            acc = &acc + &LaurentPoly::monomial(c, k);
        }
        acc
    }

    fn trim(&mut self) {
        let lead_zeros = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead_zeros == self.c.len() {
            self.c.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    /// Units of Λ are c·t^k with c ≠ 0.
    pub fn is_unit(&self) -> bool {
        self.c.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.c.len() == 1 && self.low == 0)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent (equals `low` for monomials; undefined for 0).
    pub fn high(&self) -> i64 {
        self.low + self.c.len() as i64 - 1
    }

    /// high - low, the Euclidean size; `None` for zero.
    pub fn span(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, k: i64) -> CycNum {
        if self.is_zero() || k < self.low || k > self.high() {
            CycNum::zero()
        } else {
            self.c[(k - self.low) as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.c
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycNum)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn lead(&self) -> CycNum {
        self.c.last().cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn trail(&self) -> CycNum {
        self.c.first().cloned().unwrap_or_else(CycNum::zero)
    }

    /// lcm of the coefficient conductors.
    pub fn conductor(&self) -> u32 {
        self.c
            .iter()
            .filter(|x| !x.is_zero())
            .fold(1u64, |acc, x| acc.lcm(&(x.shrink().conductor() as u64))) as u32
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            c: self.c.clone(),
        }
    }

    /// The involution p ↦ p#, conjugating coefficients and sending t ↦ t⁻¹.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: -self.high(),
            c: self.c.iter().rev().map(|x| x.conj()).collect(),
        }
    }

    /// Map every coefficient (used for Galois actions).
    pub fn map_coeffs<F: Fn(&CycNum) -> CycNum>(&self, f: F) -> Self {
        Self::from_coeffs(self.low, self.c.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        if self.is_zero() {
            return CycNum::zero();
        }
        // Horner on the polynomial part, then multiply by x^low.
        let mut acc = CycNum::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        if self.low != 0 {
            acc = &acc * &x.pow(self.low);
        }
        acc
    }

    /// Substitute t ↦ η·t^m (m ≥ 1).
    pub fn substitute(&self, eta: &CycNum, m: u32) -> Self {
        let m = m as i64;
        Self::from_terms(self.terms().map(|(k, c)| (k * m, c * &eta.pow(k))))
    }

    pub fn substitute_root(&self, eta: &RootOfUnity, m: u32) -> Self {
        self.substitute(&eta.to_cyc(), m)
    }

    /// Canonical associate: lowest exponent 0 and monic.
    /// Returns (p, u, k) with self = u·t^k·p.
    pub fn normalize(&self) -> (Self, CycNum, i64) {
        if self.is_zero() {
            return (Self::zero(), CycNum::one(), 0);
        }
        let u = self.lead();
        let ui = u.inv().unwrap();
        let p = LaurentPoly {
            low: 0,
            c: self.c.iter().map(|x| x * &ui).collect(),
        };
        (p, u, self.low)
    }

    pub fn normalized(&self) -> Self {
        self.normalize().0
    }

    /// Are the two polynomials associates (equal up to a unit c·t^k)?
    pub fn associate(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Euclidean division with span(r) < span(b).
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let db = b.c.len() - 1;
        if self.c.len() - 1 < db {
            return (Self::zero(), self.clone());
        }
        let inv_lead = b.lead().inv().unwrap();
        let mut rem: Vec<CycNum> = self.c.clone();
        let qlen = rem.len() - db;
        let mut q = vec![CycNum::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + db];
            if top.is_zero() {
                continue;
            }
            let f = top * &inv_lead;
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    rem[i + j] = &rem[i + j] - &(&f * bj);
                }
            }
            q[i] = f;
        }
        rem.truncate(db);
        let q = LaurentPoly::from_coeffs(self.low - b.low, q);
        let r = LaurentPoly::from_coeffs(self.low, rem);
        (q, r)
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    /// Exact quotient, `None` if b does not divide self.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Normalized greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.normalized() };
        }
        a.normalized()
    }

    /// (g, x, y) with x·self + y·other = g, g normalized.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let (g, u, k) = r0.normalize();
        let ui = LaurentPoly::monomial(u.inv().unwrap(), -k);
        (g, &s0 * &ui, &t0 * &ui)
    }

    /// Ordinary polynomial derivative of the t^{-low}-shifted polynomial part.
    pub fn poly_derivative(&self) -> Self {
        let p = self.shift(-self.low);
        Self::from_terms(
            p.terms()
                .filter(|(k, _)| *k > 0)
                .map(|(k, c)| (k - 1, c * &CycNum::from_int(k))),
        )
    }

    /// Is the polynomial #-symmetric up to a unit, i.e. p# ≐ p?
    pub fn is_symmetric_up_to_unit(&self) -> bool {
        self.associate(&self.bar())
    }

    /// f64 coefficients of the polynomial part (low degree first).
    pub fn to_complex_coeffs(&self) -> Vec<(f64, f64)> {
        self.c.iter().map(|x| x.to_complex()).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let part = match k {
                0 => cs,
                _ => {
                    let tp = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                    if c.is_one() {
                        tp
                    } else if cs == "-1" {
                        format!("-{tp}")
                    } else {
                        format!("{cs}*{tp}")
                    }
                }
            };
            parts.push(part);
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ[{self}]")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> = self.terms().map(|(k, c)| (k, c.to_string())).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            let c: CycNum = c.parse().map_err(serde::de::Error::custom)?;
            out.push((k, c));
        }
        Ok(LaurentPoly::from_terms(out))
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn add_sub(a: &LaurentPoly, b: &LaurentPoly, sub: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sub { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high().max(b.high());
    let mut c = vec![CycNum::zero(); (high - low + 1) as usize];
    for (i, x) in a.c.iter().enumerate() {
        c[(a.low - low) as usize + i] = x.clone();
    }
    for (i, y) in b.c.iter().enumerate() {
        let slot = &mut c[(b.low - low) as usize + i];
        *slot = if sub { &*slot - y } else { &*slot + y };
    }
    LaurentPoly::from_coeffs(low, c)
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        add_sub(self, o, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        add_sub(self, o, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![CycNum::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += &(x * y);
                }
            }
        }
        LaurentPoly::from_coeffs(self.low + o.low, c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// 1 + t + … + t^k.
pub fn p_k(k: u32) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, vec![CycNum::one(); k as usize + 1])
}

/// R_η = t + t⁻¹ − 2·Re η for |η| = 1.
pub fn r_eta(eta: &CycNum) -> LaurentPoly {
    let re2 = eta + &eta.conj();
    LaurentPoly::from_coeffs(-1, vec![CycNum::one(), -re2, CycNum::one()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: i64, n: u32) -> CycNum {
        CycNum::root_of_unity(e, n)
    }

    #[test]
    fn division_examples() {
        let a = LaurentPoly::from_coeffs(0, vec![-z(1, 5), CycNum::one()]);
        let b = LaurentPoly::from_coeffs(0, vec![-z(2, 5), CycNum::one()]);
        let (q, r) = a.div_rem(&b);
        assert!(q.is_one());
        assert_eq!(r, LaurentPoly::constant(&z(2, 5) - &z(1, 5)));

        let t2m1 = LaurentPoly::from_ints(0, &[-1, 0, 1]);
        let tm1 = LaurentPoly::from_ints(0, &[-1, 1]);
        let (q, r) = t2m1.div_rem(&tm1);
        assert_eq!(q, LaurentPoly::from_ints(0, &[1, 1]));
        assert!(r.is_zero());

        let p4 = p_k(4);
        let (q, r) = p4.div_rem(&r_eta(&z(1, 5)));
        assert!(r.is_zero());
        assert!(q.associate(&(&LaurentPoly::t() * &r_eta(&z(2, 5)))));
    }

    #[test]
    fn involution_and_gcd() {
        let p = LaurentPoly::from_coeffs(-2, vec![z(1, 7), CycNum::from_int(3), z(3, 7)]);
        assert_eq!(p.bar().bar(), p);
        let q = LaurentPoly::from_ints(0, &[1, -1, 1]);
        assert_eq!(q.bar(), q.shift(-2));
        let a = &p * &q;
        let b = &q * &LaurentPoly::from_ints(0, &[2, 1]);
        assert_eq!(a.gcd(&b), q.normalized());
        let (g, x, y) = a.xgcd(&b);
        assert_eq!(&(&x * &a) + &(&y * &b), g);
    }

    #[test]
    fn eval_and_substitute() {
        let p = LaurentPoly::from_ints(-1, &[1, 0, 1]);
        assert_eq!(p.eval(&z(1, 4)), CycNum::zero());
        let s = p.substitute(&z(1, 3), 2);
        assert_eq!(s.coeff(2), z(1, 3));
        assert_eq!(s.coeff(-2), z(-1, 3));
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_coeffs(-1, vec![z(1, 5), CycNum::from_ratio(1, 2)]);
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
