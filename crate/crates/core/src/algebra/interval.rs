//! Certified signs of real cyclotomic numbers.
//!
//! Values cos(2πj/N) are computed in binary fixed point over `BigInt` with an
//! explicit error bound in units of the last place. Precision doubles until the
//! sign of the sum is separated from its error bound.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

/// Fixed-point value `v / 2^prec` with absolute error at most `err` ulps.
#[derive(Clone, Debug)]
pub(crate) struct Fixed {
    pub v: BigInt,
    pub err: u64,
}

thread_local! {
    static PI_CACHE: RefCell<HashMap<u32, Rc<Fixed>>> = RefCell::new(HashMap::new());
    static COS_CACHE: RefCell<HashMap<(u32, u32), Rc<Vec<Fixed>>>> = RefCell::new(HashMap::new());
}

fn one(prec: u32) -> BigInt {
    BigInt::from(1) << prec
}

/// atan(1/m) by its alternating series.
fn atan_inv(m: u64, prec: u32) -> Fixed {
    let m2 = BigInt::from(m * m);
    let mut power = one(prec) / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = power / &m2;
        k += 1;
        terms += 1;
    }
    Fixed {
        v: sum,
        err: 3 * terms + 2,
    }
}

/// π to `prec` bits via Machin's formula.
pub(crate) fn pi(prec: u32) -> Rc<Fixed> {
    if let Some(p) = PI_CACHE.with(|c| c.borrow().get(&prec).cloned()) {
        return p;
    }
    let a = atan_inv(5, prec);
    let b = atan_inv(239, prec);
    let v = (a.v * 16) - (b.v * 4);
    let out = Rc::new(Fixed {
        v,
        err: 16 * a.err + 4 * b.err,
    });
    PI_CACHE.with(|c| c.borrow_mut().insert(prec, out.clone()));
    out
}

/// cos(x) for 0 ≤ x ≤ π/2 given as fixed point with error `xerr`.
fn cos_small(x: &BigInt, xerr: u64, prec: u32) -> Fixed {
    let x2 = (x * x) >> prec;
    let mut term = one(prec);
    let mut sum = term.clone();
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = (&term * &x2) >> prec;
        term = term / BigInt::from((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    Fixed {
        v: sum,
        err: 16 * (xerr + 2) * (k + 2),
    }
}

/// cos(2πj/n) for j in 0..phi.
fn cos_table(n: u32, count: usize, prec: u32) -> Rc<Vec<Fixed>> {
    if let Some(t) = COS_CACHE.with(|c| c.borrow().get(&(n, prec)).cloned()) {
        if t.len() >= count {
            return t;
        }
    }
    let p = pi(prec);
    let two_pi = &p.v * 2;
    let mut out = Vec::with_capacity(count);
    for j in 0..count as u64 {
        let n64 = n as u64;
        let mut a = j % n64;
        // Fold the angle 2πa/n into [0, π/2], tracking the sign.
        if 2 * a > n64 {
            a = n64 - a;
        }
        let mut neg = false;
        let (num, den) = if 4 * a > n64 {
            neg = true;
            // π - 2πa/n = 2π(n - 2a)/(2n)
            (n64 - 2 * a, 2 * n64)
        } else {
            (a, n64)
        };
        let x = (&two_pi * BigInt::from(num)) / BigInt::from(den);
        let xerr = 2 * p.err * num / den + 1;
        let mut c = cos_small(&x, xerr, prec);
        if neg {
            c.v = -c.v;
        }
        out.push(c);
    }
    let out = Rc::new(out);
    COS_CACHE.with(|c| c.borrow_mut().insert((n, prec), out.clone()));
    out
}

/// Sign of Σ c_j cos(2πj/n), assumed nonzero unless all c_j vanish.
pub(crate) fn sign_of_real_sum(n: u32, c: &[BigInt]) -> i32 {
    if c.iter().all(|v| v.is_zero()) {
        return 0;
    }
    let bits = c.iter().map(|v| v.bits()).max().unwrap_or(1) as u32;
    let mut prec = 64 + bits.next_power_of_two();
    loop {
        let table = cos_table(n, c.len(), prec);
        let mut s = BigInt::zero();
        let mut err = BigInt::zero();
        for (cj, t) in c.iter().zip(table.iter()) {
            if cj.is_zero() {
                continue;
            }
            s += cj * &t.v;
            err += cj.abs() * BigInt::from(t.err);
        }
        if s.abs() > err {
            return if s.sign() == Sign::Minus { -1 } else { 1 };
        }
        assert!(prec < (1 << 22), "sign evaluation did not converge");
        prec *= 2;
    }
}

/// Fixed-point approximation of cos(2πj/n) as an f64 pair (value, error bound).
pub fn cos_turns_bounds(j: u64, n: u32, prec: u32) -> (f64, f64) {
    let t = cos_table(n, (j + 1) as usize, prec);
    let f = &t[j as usize];
    let scale = 2f64.powi(prec as i32);
    (
        num_traits::ToPrimitive::to_f64(&f.v).unwrap() / scale,
        f.err as f64 / scale,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(200);
        let approx = num_traits::ToPrimitive::to_f64(&(&p.v >> 150u32)).unwrap() / 2f64.powi(50);
        assert!((approx - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn cos_values() {
        for n in [3u32, 5, 7, 12, 60] {
            for j in 0..n as u64 {
                let (v, e) = cos_turns_bounds(j, n, 128);
                let exact = (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos();
                assert!((v - exact).abs() < 1e-12, "n={n} j={j}");
                assert!(e < 1e-20);
            }
        }
    }
}
