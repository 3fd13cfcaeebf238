//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1} with a common
//! positive denominator. Conductors congruent to 2 mod 4 never occur: such
//! fields are folded onto Q(ζ_{N/2}) at construction time.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval;
use crate::error::Error;

/// Upper bound on conductors built from user input.
pub const HARD_CONDUCTOR_LIMIT: u32 = 1 << 20;

pub(crate) struct FieldData {
    pub n: u32,
    pub phi: usize,
    /// Φ_N, low degree first, monic of degree φ(N).
    pub cyclo: Vec<i64>,
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<FieldData>>> = RefCell::new(HashMap::new());
}

/// Canonical conductor: N ≡ 2 (mod 4) folds to N/2.
pub fn canonical_conductor(n: u32) -> u32 {
    assert!(n >= 1, "conductor must be positive");
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Coefficients of the N-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    thread_local! {
        static CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return (*p).clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_poly(d);
        num = exact_div_i128(&num, &div);
    }
    let out: Vec<i64> = num
        .iter()
        .map(|&c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    CACHE.with(|c| c.borrow_mut().insert(n, Rc::new(out.clone())));
    out
}

fn exact_div_i128(num: &[i128], den: &[i64]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn] as i128;
    debug_assert!(lead == 1);
    let qlen = rem.len() - dn;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn] / lead;
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

pub(crate) fn field(n: u32) -> Rc<FieldData> {
    FIELDS.with(|f| {
        if let Some(fd) = f.borrow().get(&n) {
            return fd.clone();
        }
        let cyclo = cyclotomic_poly(n);
        let fd = Rc::new(FieldData {
            n,
            phi: cyclo.len() - 1,
            cyclo,
        });
        f.borrow_mut().insert(n, fd.clone());
        fd
    })
}

/// Reduce a polynomial with integer coefficients modulo x^n - 1 and then Φ_n.
fn reduce_poly(fd: &FieldData, mut p: Vec<BigInt>) -> Vec<BigInt> {
    let n = fd.n as usize;
    if p.len() > n {
        for j in (n..p.len()).rev() {
            let c = std::mem::take(&mut p[j]);
            if !c.is_zero() {
                p[j % n] += c;
            }
        }
        p.truncate(n);
    }
    let phi = fd.phi;
    if p.len() > phi {
        for j in (phi..p.len()).rev() {
            if p[j].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[j]);
            let shift = j - phi;
            for (k, &ck) in fd.cyclo[..phi].iter().enumerate() {
                if ck != 0 {
                    p[shift + k] -= &c * ck;
                }
            }
        }
        p.truncate(phi);
    }
    p.resize(phi, BigInt::zero());
    p
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    c: Vec<BigInt>,
    d: BigInt,
}

impl CycNum {
    fn from_parts(n: u32, c: Vec<BigInt>, d: BigInt) -> Self {
        let mut x = CycNum { n, c, d };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.d.is_negative() {
            self.d = -std::mem::take(&mut self.d);
            for v in &mut self.c {
                *v = -std::mem::take(v);
            }
        }
        let mut g = self.d.clone();
        for v in &self.c {
            if g.is_one() {
                break;
            }
            if !v.is_zero() {
                g = g.gcd(v);
            }
        }
        if self.c.iter().all(|v| v.is_zero()) {
            self.d = BigInt::one();
            return;
        }
        if !g.is_one() {
            for v in &mut self.c {
                *v /= &g;
            }
            self.d /= &g;
        }
    }

    pub fn zero() -> Self {
        CycNum {
            n: 1,
            c: vec![BigInt::zero()],
            d: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycNum {
            n: 1,
            c: vec![BigInt::from(v)],
            d: BigInt::one(),
        }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        CycNum {
            n: 1,
            c: vec![v],
            d: BigInt::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_parts(1, vec![BigInt::from(p)], BigInt::from(q))
    }

    /// ζ_N^e for any integer e.
    pub fn root_of_unity(e: i64, n: u32) -> Self {
        assert!(n >= 1);
        let e = e.rem_euclid(n as i64) as u64;
        let g = (e as u64).gcd(&(n as u64)).max(1);
        let (e, n) = if e == 0 { (0, 1u64) } else { (e / g, n as u64 / g) };
        let n = n as u32;
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m.
            let m = n / 2;
            let k = (e * ((m as u64 + 1) / 2)) % m as u64;
            let base = Self::monomial(k as usize, m);
            return if e % 2 == 1 { -base } else { base };
        }
        Self::monomial(e as usize, n)
    }

    pub fn zeta(n: u32) -> Self {
        Self::root_of_unity(1, n)
    }

    fn monomial(j: usize, n: u32) -> Self {
        let fd = field(n);
        let mut p = vec![BigInt::zero(); j + 1];
        p[j] = BigInt::one();
        CycNum {
            n,
            c: reduce_poly(&fd, p),
            d: BigInt::one(),
        }
    }

    /// Build from rational coordinates in the power basis of Q(ζ_N).
    /// Extra coordinates beyond φ(N) are reduced.
    pub fn from_coords(n: u32, coords: &[BigRational]) -> Self {
        let n2 = canonical_conductor(n);
        if n2 != n {
            let mut acc = CycNum::zero();
            for (j, q) in coords.iter().enumerate() {
                if !q.is_zero() {
                    acc += &(&CycNum::root_of_unity(j as i64, n) * &CycNum::from_rational(q));
                }
            }
            return acc;
        }
        let mut den = BigInt::one();
        for q in coords {
            den = den.lcm(q.denom());
        }
        let p: Vec<BigInt> = coords
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        let fd = field(n);
        Self::from_parts(n, reduce_poly(&fd, p), den)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.c
            .iter()
            .map(|v| BigRational::new(v.clone(), self.d.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.c
    }

    pub fn denominator(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.d.is_one() && self.c[0].is_one() && self.c[1..].iter().all(|v| v.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|v| v.is_zero()) {
            Some(BigRational::new(self.c[0].clone(), self.d.clone()))
        } else {
            None
        }
    }

    /// Image under the inclusion Q(ζ_N) → Q(ζ_M), N | M.
    pub fn embed(&self, m: u32) -> Self {
        let m = canonical_conductor(m);
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot embed Q(ζ_{}) into Q(ζ_{})", self.n, m);
        let step = (m / self.n) as usize;
        let fd = field(m);
        let mut p = vec![BigInt::zero(); (self.c.len() - 1) * step + 1];
        for (j, v) in self.c.iter().enumerate() {
            if !v.is_zero() {
                p[j * step] = v.clone();
            }
        }
        CycNum {
            n: m,
            c: reduce_poly(&fd, p),
            d: self.d.clone(),
        }
    }

    fn lift_pair(a: &CycNum, b: &CycNum) -> (u32, Option<CycNum>, Option<CycNum>) {
        if a.n == b.n {
            return (a.n, None, None);
        }
        let l = (a.n as u64).lcm(&(b.n as u64));
        assert!(l <= HARD_CONDUCTOR_LIMIT as u64, "conductor overflow");
        let l = l as u32;
        let ea = if a.n == l { None } else { Some(a.embed(l)) };
        let eb = if b.n == l { None } else { Some(b.embed(l)) };
        (l, ea, eb)
    }

    /// Galois automorphism ζ ↦ ζ^a for a coprime to the conductor.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.n as i64;
        let a = a.rem_euclid(n.max(1));
        let fd = field(self.n);
        let mut p = vec![BigInt::zero(); self.n as usize];
        for (j, v) in self.c.iter().enumerate() {
            if !v.is_zero() {
                let e = ((j as i64 * a) % n.max(1)) as usize;
                p[e] += v;
            }
        }
        CycNum::from_parts(self.n, reduce_poly(&fd, p), self.d.clone())
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = self.c.len();
        if phi == 1 {
            return Some(CycNum::from_parts(
                self.n,
                vec![self.d.clone()],
                self.c[0].clone(),
            ));
        }
        // Solve M x = e_0 where M is multiplication by the numerator polynomial.
        let fd = field(self.n);
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        let mut cur = self.c.clone();
        for _ in 0..phi {
            cols.push(cur.clone());
            let mut shifted = vec![BigInt::zero()];
            shifted.extend(cur.into_iter());
            cur = reduce_poly(&fd, shifted);
        }
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..phi)
                    .map(|j| BigRational::from_integer(cols[j][i].clone()))
                    .collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        let sol = solve_dense(&mut m)?;
        let inv_num = CycNum::from_coords(self.n, &sol);
        Some(&inv_num * &CycNum::from_bigint(self.d.clone()))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("inverse of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycNum::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Field norm down to Q (product of all Galois conjugates).
    pub fn norm(&self) -> BigRational {
        let n = self.n as i64;
        let mut acc = CycNum::one();
        for a in 1..n.max(2) {
            if n > 1 && (a as u64).gcd(&(n as u64)) != 1 {
                continue;
            }
            acc = &acc * &self.galois(a);
            if n <= 1 {
                break;
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Approximate complex value under ζ_N ↦ exp(2πi/N).
    pub fn to_complex(&self) -> (f64, f64) {
        let d = self.d.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let a = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            let x = v.to_f64().unwrap_or(0.0) / d;
            re += x * a.cos();
            im += x * a.sin();
        }
        (re, im)
    }

    /// Exact sign of a real element: -1, 0 or 1.
    /// Errors if the element is not real.
    pub fn sign_of_real(&self) -> Result<i32, Error> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(0);
        }
        Ok(interval::sign_of_real_sum(self.n, &self.c))
    }

    /// Smallest conductor M with the element in Q(ζ_M), and its image there.
    pub fn shrink(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        if let Some(q) = self.as_rational() {
            return CycNum::from_rational(&q);
        }
        for m in divisors(self.n) {
            if m == self.n || m % 4 == 2 {
                continue;
            }
            if let Some(x) = self.descend(m) {
                return x;
            }
        }
        self.clone()
    }

    fn descend(&self, m: u32) -> Option<Self> {
        // Fixed by σ_a for all a ≡ 1 mod m.
        let n = self.n as u64;
        let mut a = 1 + m as u64;
        while a < n {
            if a.gcd(&n) == 1 && self.galois(a as i64) != *self {
                return None;
            }
            a += m as u64;
        }
        let phi_m = field(m).phi;
        let phi_n = self.c.len();
        let basis: Vec<CycNum> = (0..phi_m)
            .map(|j| CycNum::monomial(j, m).embed(self.n))
            .collect();
        let mut rows: Vec<Vec<BigRational>> = (0..phi_n)
            .map(|i| {
                let mut row: Vec<BigRational> = basis
                    .iter()
                    .map(|b| BigRational::new(b.c[i].clone(), b.d.clone()))
                    .collect();
                row.push(BigRational::new(self.c[i].clone(), self.d.clone()));
                row
            })
            .collect();
        let sol = solve_overdetermined(&mut rows, phi_m)?;
        Some(CycNum::from_coords(m, &sol))
    }

    /// Rendering with minimal conductor, e.g. `1/2 + -3*ζ5^2`.
    fn render(&self) -> String {
        let s = self.shrink();
        if s.n == 1 {
            return fmt_rational(&BigRational::new(s.c[0].clone(), s.d.clone()));
        }
        let mut parts = Vec::new();
        for (j, v) in s.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let q = BigRational::new(v.clone(), s.d.clone());
            if j == 0 {
                parts.push(fmt_rational(&q));
            } else if q.is_one() {
                parts.push(format!("ζ{}^{}", s.n, j));
            } else {
                parts.push(format!("{}*ζ{}^{}", fmt_rational(&q), s.n, j));
            }
        }
        parts.join(" + ")
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

/// Gaussian elimination on an augmented square system; returns `None` if singular.
fn solve_dense(m: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (pr, rr) = if r < col {
                    let (a, b) = m.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (x, p) in rr.iter_mut().zip(pr.iter()) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

/// Solve an overdetermined consistent system with `k` unknowns.
fn solve_overdetermined(rows: &mut Vec<Vec<BigRational>>, k: usize) -> Option<Vec<BigRational>> {
    let nrows = rows.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(prow.iter()) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][k].clone();
    }
    Some(sol)
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self.render())
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Parses sums of terms `c`, `ζN^e`, `c*ζN^e` (also `z` for `ζ`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad cyclotomic number: {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        // Split on '+' that are not part of an exponent sign or a leading sign.
        let mut terms = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = cleaned.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            if ch == '+' && i > 0 && chars[i - 1] != '^' && chars[i - 1] != '*' {
                terms.push(std::mem::take(&mut cur));
            } else {
                cur.push(ch);
            }
        }
        terms.push(cur);
        let mut acc = CycNum::zero();
        for t in terms {
            if t.is_empty() {
                return Err(bad());
            }
            let (coef, root) = match t.find(['ζ', 'z']) {
                None => (t.as_str(), None),
                Some(pos) => {
                    let (c, r) = t.split_at(pos);
                    let c = c.strip_suffix('*').unwrap_or(c);
                    (c, Some(r))
                }
            };
            let q = match coef {
                "" => BigRational::one(),
                "-" => -BigRational::one(),
                c => parse_rational(c).ok_or_else(bad)?,
            };
            let mut term = CycNum::from_rational(&q);
            if let Some(r) = root {
                let r = r.trim_start_matches(['ζ', 'z']);
                let (n, e) = r.split_once('^').unwrap_or((r, "1"));
                let n: u32 = n.parse().map_err(|_| bad())?;
                let e: i64 = e.parse().map_err(|_| bad())?;
                if n == 0 || n > HARD_CONDUCTOR_LIMIT {
                    return Err(bad());
                }
                term = &term * &CycNum::root_of_unity(e, n);
            }
            acc += &term;
        }
        Ok(acc)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.d == other.d && self.c == other.c;
        }
        let (_, ea, eb) = CycNum::lift_pair(self, other);
        let a = ea.as_ref().unwrap_or(self);
        let b = eb.as_ref().unwrap_or(other);
        a.d == b.d && a.c == b.c
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

fn add_impl(a: &CycNum, b: &CycNum, negate_b: bool) -> CycNum {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let (n, ea, eb) = CycNum::lift_pair(a, b);
    let a = ea.as_ref().unwrap_or(a);
    let b = eb.as_ref().unwrap_or(b);
    let c: Vec<BigInt> = if a.d == b.d {
        a.c.iter()
            .zip(b.c.iter())
            .map(|(x, y)| if negate_b { x - y } else { x + y })
            .collect()
    } else {
        a.c.iter()
            .zip(b.c.iter())
            .map(|(x, y)| {
                let l = x * &b.d;
                let r = y * &a.d;
                if negate_b {
                    l - r
                } else {
                    l + r
                }
            })
            .collect()
    };
    let d = if a.d == b.d { a.d.clone() } else { &a.d * &b.d };
    CycNum::from_parts(n, c, d)
}

fn mul_impl(a: &CycNum, b: &CycNum) -> CycNum {
    if a.is_zero() || b.is_zero() {
        return CycNum::zero();
    }
    let (n, ea, eb) = CycNum::lift_pair(a, b);
    let a = ea.as_ref().unwrap_or(a);
    let b = eb.as_ref().unwrap_or(b);
    if a.c.len() == 1 {
        return CycNum::from_parts(n, vec![&a.c[0] * &b.c[0]], &a.d * &b.d);
    }
    let mut p = vec![BigInt::zero(); a.c.len() + b.c.len() - 1];
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.c.iter().enumerate() {
            if !y.is_zero() {
                p[i + j] += x * y;
            }
        }
    }
    let fd = field(n);
    CycNum::from_parts(n, reduce_poly(&fd, p), &a.d * &b.d)
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        add_impl(self, o, false)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        add_impl(self, o, true)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        mul_impl(self, o)
    }
}

impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn div(self, o: &CycNum) -> CycNum {
        mul_impl(self, &o.inv().expect("division by zero"))
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            c: self.c.iter().map(|v| -v).collect(),
            d: self.d.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for v in &mut self.c {
            *v = -std::mem::take(v);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, o: &CycNum) {
        *self = add_impl(self, o, false);
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, o: &CycNum) {
        *self = add_impl(self, o, true);
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, o: &CycNum) {
        *self = mul_impl(self, o);
    }
}

/// A root of unity exp(2πi·p/q), stored as a reduced fraction in [0, 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(e: i64, n: u64) -> Self {
        assert!(n >= 1, "order must be positive");
        let e = e.rem_euclid(n as i64) as u64;
        if e == 0 {
            return RootOfUnity { num: 0, den: 1 };
        }
        let g = e.gcd(&n);
        RootOfUnity {
            num: e / g,
            den: n / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    /// Order of the root, i.e. the minimal N with ζ = ζ_N^e.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// Exponent in (−N/2, N/2].
    pub fn signed_exponent(&self) -> i64 {
        let e = self.num as i64;
        let n = self.den as i64;
        if 2 * e > n {
            e - n
        } else {
            e
        }
    }

    pub fn fraction(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn conj(&self) -> Self {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    pub fn mul(&self, o: &RootOfUnity) -> Self {
        let l = self.den.lcm(&o.den);
        RootOfUnity::new(
            (self.num * (l / self.den) + o.num * (l / o.den)) as i64,
            l,
        )
    }

    pub fn pow(&self, k: i64) -> Self {
        RootOfUnity::new(
            ((self.num as i128 * k as i128).rem_euclid(self.den as i128)) as i64,
            self.den,
        )
    }

    pub fn to_cyc(&self) -> CycNum {
        CycNum::root_of_unity(self.num as i64, self.den as u32)
    }

    /// The angle as a fraction of a full turn.
    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Canonical field conductor containing this root.
    pub fn conductor(&self) -> u32 {
        canonical_conductor(self.den as u32)
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        ((self.num as u128) * (o.den as u128)).cmp(&((o.num as u128) * (self.den as u128)))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ{}^{}", self.den, self.signed_exponent())
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad root of unity: {s:?}"));
        let r = s.trim().trim_start_matches(['ζ', 'z']);
        let (n, e) = r.split_once('^').unwrap_or((r, "1"));
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let e: i64 = e.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(RootOfUnity::new(e, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn zeta_relations() {
        let z = CycNum::zeta(5);
        let s = (0..5).fold(CycNum::zero(), |acc, j| acc + z.pow(j));
        assert!(s.is_zero());
        assert_eq!(z.pow(5), CycNum::one());
        assert_eq!(CycNum::zeta(6), -CycNum::root_of_unity(2, 3));
        assert_eq!(CycNum::zeta(2), CycNum::from_int(-1));
        assert_eq!(CycNum::zeta(4).pow(2), CycNum::from_int(-1));
    }

    #[test]
    fn embedding_respects_roots() {
        let z5 = CycNum::zeta(5);
        let z15 = CycNum::zeta(15);
        assert_eq!(z5.embed(15), z15.pow(3));
        assert_eq!(z5.embed(15), z5);
        assert_eq!(&z5 * &z15, z15.pow(4));
    }

    #[test]
    fn inverse_and_conj() {
        let a = CycNum::from_int(2) + CycNum::zeta(7) - CycNum::root_of_unity(3, 7);
        let ai = a.inv().unwrap();
        assert!((&a * &ai).is_one());
        let z = CycNum::zeta(9);
        assert_eq!(z.conj(), z.pow(-1));
        let r = &z + &z.conj();
        assert!(r.is_real());
    }

    #[test]
    fn norm_of_one_minus_zeta() {
        let a = CycNum::one() - CycNum::zeta(5);
        assert_eq!(a.norm(), BigRational::from_integer(5.into()));
        let b = CycNum::one() - CycNum::zeta(12);
        assert_eq!(b.norm(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn shrink_and_render() {
        let x = CycNum::zeta(5).embed(20);
        assert_eq!(x.shrink().conductor(), 5);
        assert_eq!(x.to_string(), "ζ5^1");
        let half = CycNum::from_ratio(1, 2);
        assert_eq!(half.to_string(), "1/2");
        let y = CycNum::zeta(3) + CycNum::zeta(3).conj();
        assert_eq!(y.to_string(), "-1");
        let back: CycNum = x.to_string().parse().unwrap();
        assert_eq!(back, x);
        let w: CycNum = "1/2 + -3*ζ7^2 + ζ7^3".parse().unwrap();
        assert_eq!(w.to_string().parse::<CycNum>().unwrap(), w);
    }

    #[test]
    fn root_of_unity_rendering() {
        assert_eq!(RootOfUnity::new(3, 5).to_string(), "ζ5^-2");
        assert_eq!(RootOfUnity::new(4, 10).to_string(), "ζ5^2");
        assert_eq!(RootOfUnity::new(1, 2).to_string(), "ζ2^1");
        assert_eq!("ζ5^-2".parse::<RootOfUnity>().unwrap(), RootOfUnity::new(3, 5));
        assert!(RootOfUnity::new(1, 6) < RootOfUnity::new(1, 5));
    }

    #[test]
    fn sign_of_real_examples() {
        let z = CycNum::zeta(5);
        let two_cos = &z + &z.conj();
        assert_eq!(two_cos.sign_of_real().unwrap(), 1);
        let z2 = z.pow(2);
        assert_eq!((&z2 + &z2.conj()).sign_of_real().unwrap(), -1);
        assert!(CycNum::zeta(5).sign_of_real().is_err());
        // golden ratio identity: 2cos(2π/5) = (√5 - 1)/2, so 4cos²+2cos-1 = 0
        let e = &(&two_cos * &two_cos) + &two_cos - CycNum::one();
        assert_eq!(e.sign_of_real().unwrap(), 0);
    }
}
