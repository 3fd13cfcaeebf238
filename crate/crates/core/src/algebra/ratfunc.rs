//! Rational functions Q(ζ)(t) and their classes in Q(ζ)(t)/Λ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::cyclotomic::CycNum;
use super::laurent::LaurentPoly;

/// num/den in lowest terms with den normalized (lowest exponent 0, monic).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let (den_n, u, k) = den.normalize();
        let num = LaurentPoly::monomial(u.inv().unwrap(), -k) * num;
        RatFunc { num, den: den_n }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Lies in Λ (denominator a unit).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        RatFunc::new(self.num.bar(), self.den.bar())
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        RatFunc::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &LaurentPoly) -> Self {
        RatFunc::new(self.num.clone(), &self.den * p)
    }

    /// Value at x, `None` at a pole.
    pub fn eval(&self, x: &CycNum) -> Option<CycNum> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    pub fn substitute(&self, eta: &CycNum, m: u32) -> Self {
        RatFunc::new(self.num.substitute(eta, m), self.den.substitute(eta, m))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Residue of a polynomial with exponents ≥ 0 modulo a normalized `m`,
/// returned with exponents in [0, deg m).
fn poly_rem_dense(p: &LaurentPoly, m: &LaurentPoly) -> LaurentPoly {
    debug_assert!(p.is_zero() || p.low() >= 0);
    if p.is_zero() {
        return p.clone();
    }
    let dm = m.high() as usize;
    let mut dense = vec![CycNum::zero(); p.high() as usize + 1];
    for (k, c) in p.terms() {
        dense[k as usize] = c.clone();
    }
    if dense.len() > dm {
        let mc = m.coeffs();
        for i in (0..dense.len() - dm).rev() {
            let top = dense[i + dm].clone();
            if top.is_zero() {
                continue;
            }
            for (j, mj) in mc.iter().enumerate() {
                if !mj.is_zero() {
                    dense[i + j] = &dense[i + j] - &(&top * mj);
                }
            }
        }
        dense.truncate(dm);
    }
    LaurentPoly::from_coeffs(0, dense)
}

/// Residue of a Laurent polynomial in Q(ζ)[t]/(m) for normalized m with m(0) ≠ 0.
pub fn laurent_mod(p: &LaurentPoly, m: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    if m.high() == 0 {
        return LaurentPoly::zero();
    }
    if p.low() >= 0 {
        return poly_rem_dense(p, m);
    }
    // t⁻¹ ≡ −(m − m0)/(t·m0) mod m
    let m0 = m.coeff(0);
    let tail = LaurentPoly::from_coeffs(0, m.coeffs()[1..].to_vec());
    let t_inv = tail.scale(&(-(m0.inv().unwrap())));
    let k = -p.low();
    let mut acc = poly_rem_dense(&p.shift(k), m);
    for _ in 0..k {
        acc = poly_rem_dense(&(&acc * &t_inv), m);
    }
    acc
}

/// A class in Q(ζ)(t)/Λ, stored canonically: num has exponents in [0, deg den)
/// and is coprime to den; den normalized. Zero is 0/1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModCoset {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ModCoset {
    pub fn zero() -> Self {
        ModCoset {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_ratfunc(r: &RatFunc) -> Self {
        Self::from_parts(r.num(), r.den())
    }

    /// The class of num/den.
    pub fn from_parts(num: &LaurentPoly, den: &LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (den, u, k) = den.normalize();
        if den.is_one() || num.is_zero() {
            return Self::zero();
        }
        let num = &LaurentPoly::monomial(u.inv().unwrap(), -k) * num;
        let r = laurent_mod(&num, &den);
        if r.is_zero() {
            return Self::zero();
        }
        let g = r.gcd(&den);
        if g.is_one() {
            return ModCoset { num: r, den };
        }
        let den2 = den.exact_div(&g).unwrap();
        let r2 = r.exact_div(&g).unwrap();
        let (den2, u2, k2) = den2.normalize();
        let r2 = &LaurentPoly::monomial(u2.inv().unwrap(), -k2) * &r2;
        let r2 = laurent_mod(&r2, &den2);
        ModCoset { num: r2, den: den2 }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den.clone())
    }

    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_parts(&self.num.bar(), &self.den.bar())
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_parts(&(&self.num * p), &self.den)
    }

    pub fn substitute(&self, eta: &CycNum, m: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_parts(&self.num.substitute(eta, m), &self.den.substitute(eta, m))
    }
}

impl<'a> Add<&'a ModCoset> for &'a ModCoset {
    type Output = ModCoset;
    fn add(self, o: &ModCoset) -> ModCoset {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return ModCoset::from_parts(&(&self.num + &o.num), &self.den);
        }
        ModCoset::from_parts(
            &(&(&self.num * &o.den) + &(&o.num * &self.den)),
            &(&self.den * &o.den),
        )
    }
}

impl<'a> Sub<&'a ModCoset> for &'a ModCoset {
    type Output = ModCoset;
    fn sub(self, o: &ModCoset) -> ModCoset {
        self + &(-o)
    }
}

impl Neg for &ModCoset {
    type Output = ModCoset;
    fn neg(self) -> ModCoset {
        if self.is_zero() {
            return self.clone();
        }
        ModCoset::from_parts(&-&self.num, &self.den)
    }
}

impl fmt::Display for ModCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "({}) / ({}) mod Λ", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_canonical_forms() {
        let den = LaurentPoly::from_ints(0, &[1, -1, 1]);
        let a = ModCoset::from_parts(&LaurentPoly::from_ints(-3, &[1]), &den);
        // t^-3 ≡ -1 mod t^2 - t + 1
        assert_eq!(a, ModCoset::from_parts(&LaurentPoly::from_int(-1), &den));
        let b = ModCoset::from_parts(&(&den * &LaurentPoly::from_ints(-2, &[5, 1])), &den);
        assert!(b.is_zero());
        let c = ModCoset::from_parts(
            &LaurentPoly::from_ints(0, &[-1, 1]),
            &LaurentPoly::from_ints(0, &[-1, 0, 1]),
        );
        assert_eq!(c.den(), &LaurentPoly::from_ints(0, &[1, 1]));
    }

    #[test]
    fn coset_arithmetic() {
        let den = LaurentPoly::from_ints(0, &[1, 1, 1]);
        let x = ModCoset::from_parts(&LaurentPoly::from_ints(0, &[0, 1]), &den);
        let y = &x + &x.bar();
        assert_eq!(y, y.bar());
        let z = &x - &x;
        assert!(z.is_zero());
    }
}
