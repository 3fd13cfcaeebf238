//! Locating the roots of order polynomials: numerical isolation followed by
//! exact verification over a cyclotomic field.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::algebra::cyclotomic::{CycNum, RootOfUnity, HARD_CONDUCTOR_LIMIT};
use crate::algebra::laurent::LaurentPoly;
use crate::error::{Error, Result};

const DEFAULT_MAX_CONDUCTOR: u64 = 10_000;
const CIRCLE_TOL: f64 = 1e-6;

/// Cap on the order of roots of unity searched for, from
/// `BLANCHFIELD_MAX_CONDUCTOR` (default 10⁴).
pub fn max_conductor() -> u64 {
    std::env::var("BLANCHFIELD_MAX_CONDUCTOR")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&n| n >= 1)
        .map(|n| n.min(HARD_CONDUCTOR_LIMIT as u64))
        .unwrap_or(DEFAULT_MAX_CONDUCTOR)
}

/// A nonzero root ρ·ω with ρ rational, 0 < ρ < 1 and ω a root of unity. Its
/// partner under p ↦ p# is ω/ρ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OffCircleRoot {
    pub rho: BigRational,
    pub omega: RootOfUnity,
}

impl OffCircleRoot {
    pub fn value(&self) -> CycNum {
        &CycNum::from_rational(&self.rho) * &self.omega.to_cyc()
    }

    /// ω/ρ, the root of t⁻¹ − ξ̄.
    pub fn partner(&self) -> CycNum {
        &CycNum::from_rational(&(BigRational::from_integer(1.into()) / &self.rho)) * &self.omega.to_cyc()
    }
}

/// The exactly identified roots of a polynomial.
#[derive(Clone, Debug, Default)]
pub struct RootData {
    pub on_circle: Vec<RootOfUnity>,
    pub off_circle: Vec<OffCircleRoot>,
}

/// The square-free part p / gcd(p, p'), normalized.
pub fn square_free_part(p: &LaurentPoly) -> LaurentPoly {
    let p = p.normalized();
    if p.span().unwrap_or(0) == 0 {
        return p;
    }
    let g = p.gcd(&p.poly_derivative());
    p.exact_div(&g).expect("gcd divides").normalized()
}

/// All complex roots of the polynomial part, by Aberth–Ehrlich iteration.
/// The result is checked by expanding ∏(t − zᵢ) against the coefficients;
/// if no starting configuration passes, the roots are reported as not found.
pub fn numeric_roots(p: &LaurentPoly) -> Result<Vec<Complex64>> {
    let coeffs: Vec<Complex64> = p
        .normalized()
        .to_complex_coeffs()
        .into_iter()
        .map(|(re, im)| Complex64::new(re, im))
        .collect();
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    let a: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let scale = a.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for (attempt, offset) in [0.4, 0.13, 0.77, 0.29, 0.61, 0.05].into_iter().enumerate() {
        let z = aberth(&a, offset, attempt);
        let err = expansion_error(&a, &z) / scale;
        if err < 1e-8 * d as f64 {
            return Ok(z);
        }
        if best.as_ref().map_or(true, |(e, _)| err < *e) {
            best = Some((err, z));
        }
    }
    let (err, _) = best.expect("at least one attempt");
    Err(Error::UnidentifiedRoot(format!(
        "root isolation for {p} did not converge (relative error {err:.1e})"
    )))
}

fn aberth(a: &[Complex64], offset: f64, attempt: usize) -> Vec<Complex64> {
    let d = a.len() - 1;
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for c in a.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };
    let r0 = a[0].norm().powf(1.0 / d as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let r = r0 * (1.0 + 0.05 * attempt as f64 * (j as f64 + 1.0) / d as f64);
            Complex64::from_polar(r, 2.0 * std::f64::consts::PI * (j as f64 + offset) / d as f64)
        })
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(1.0));
            } else {
                // Collided with another iterate or hit a critical point.
                z[i] += Complex64::from_polar(1e-3 * r0, 1.0 + i as f64);
                worst = 1.0;
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*zi);
            let step = v / dv;
            if step.is_finite() {
                *zi -= step;
            }
        }
    }
    z
}

/// max |coefficient| of ∏(t − zᵢ) − a for monic a.
fn expansion_error(a: &[Complex64], z: &[Complex64]) -> f64 {
    let mut prod = vec![Complex64::new(1.0, 0.0)];
    for zi in z {
        let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * zi;
        }
        prod = next;
    }
    prod.iter().zip(a).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Convergents p/q of x with q ≤ max_den.
fn convergents(x: f64, max_den: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h = ai * h1 + h0;
        let k = ai * k1 + k0;
        if k as u64 > max_den {
            break;
        }
        out.push((h as i64, k as u64));
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        let frac = r - a;
        if frac.abs() < 1e-13 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn turns_of(z: Complex64) -> f64 {
    let t = z.arg() / (2.0 * std::f64::consts::PI);
    if t < 0.0 {
        t + 1.0
    } else {
        t
    }
}

/// Root of unity at the angle of z that is an exact root of p.
fn identify_unit_root(p: &LaurentPoly, z: Complex64, cap: u64) -> Result<Option<RootOfUnity>> {
    let x = turns_of(z);
    let mut over_cap = None;
    for (a, q) in convergents(x, HARD_CONDUCTOR_LIMIT as u64) {
        if (x - a as f64 / q as f64).abs() > 1e-7 {
            continue;
        }
        if q > cap {
            if (x - a as f64 / q as f64).abs() < 1e-10 && over_cap.is_none() {
                over_cap = Some(q);
            }
            continue;
        }
        let cand = RootOfUnity::new(a, q);
        if p.eval(&cand.to_cyc()).is_zero() {
            return Ok(Some(cand));
        }
    }
    match over_cap {
        Some(q) => Err(Error::ConductorCap(q, cap)),
        None => Ok(None),
    }
}

fn identify_off_circle(p: &LaurentPoly, z: Complex64, cap: u64) -> Option<OffCircleRoot> {
    let modulus = z.norm();
    if !(modulus > 0.0 && modulus < 1.0) {
        return None;
    }
    let x = turns_of(z);
    let omegas: Vec<RootOfUnity> = convergents(x, cap)
        .into_iter()
        .filter(|(a, q)| (x - *a as f64 / *q as f64).abs() < 1e-7)
        .map(|(a, q)| RootOfUnity::new(a, q))
        .collect();
    let rhos: Vec<BigRational> = convergents(modulus, cap)
        .into_iter()
        .filter(|(a, q)| *a > 0 && (modulus - *a as f64 / *q as f64).abs() < 1e-7)
        .map(|(a, q)| BigRational::new(BigInt::from(a), BigInt::from(q)))
        .collect();
    for omega in &omegas {
        for rho in &rhos {
            let r = OffCircleRoot {
                rho: rho.clone(),
                omega: *omega,
            };
            if p.eval(&r.value()).is_zero() && p.eval(&r.partner()).is_zero() {
                return Some(r);
            }
        }
    }
    None
}

/// Identify the roots of p on the unit circle (as roots of unity) and the
/// off-circle pairs ρω, ω/ρ with ρ rational. Off-circle roots of any other
/// shape are left for the caller's residual; an unidentified root on the
/// circle is an error.
pub fn identify_roots(p: &LaurentPoly) -> Result<RootData> {
    let cap = max_conductor();
    let s = square_free_part(p);
    let mut data = RootData::default();
    for z in numeric_roots(&s)? {
        let near_circle = (z.norm() - 1.0).abs() < CIRCLE_TOL;
        if near_circle {
            if let Some(r) = identify_unit_root(&s, z, cap)? {
                if !data.on_circle.contains(&r) {
                    data.on_circle.push(r);
                }
                continue;
            }
        }
        if let Some(r) = identify_off_circle(&s, z, cap) {
            if !data.off_circle.contains(&r) {
                data.off_circle.push(r);
            }
            continue;
        }
        if near_circle {
            return Err(Error::UnidentifiedRoot(format!(
                "root near {:.6}+{:.6}i of {s} is not a root of unity of order ≤ {cap}",
                z.re, z.im
            )));
        }
    }
    data.on_circle.sort();
    data.off_circle.sort();
    Ok(data)
}

/// v_{t−a}(p) and the cofactor p/(t−a)^v.
pub fn valuation(p: &LaurentPoly, a: &CycNum) -> (u32, LaurentPoly) {
    let lin = LaurentPoly::from_coeffs(0, vec![-a.clone(), CycNum::one()]);
    let mut q = p.clone();
    let mut v = 0;
    while !q.is_zero() {
        match q.exact_div(&lin) {
            Some(r) => {
                q = r;
                v += 1;
            }
            None => break,
        }
    }
    (v, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::{p_k, r_eta};

    #[test]
    fn square_free() {
        let f = LaurentPoly::from_ints(0, &[1, -1, 1]);
        let g = &(&f * &f) * &LaurentPoly::from_ints(0, &[-1, 1]);
        assert_eq!(square_free_part(&g), (&f * &LaurentPoly::from_ints(0, &[-1, 1])).normalized());
    }

    #[test]
    fn roots_of_unity_found() {
        let d = identify_roots(&p_k(4)).unwrap();
        let want: Vec<RootOfUnity> = (1..5).map(|e| RootOfUnity::new(e, 5)).collect();
        assert_eq!(d.on_circle, want);
        let r = r_eta(&CycNum::root_of_unity(2, 7));
        let d = identify_roots(&r).unwrap();
        assert_eq!(d.on_circle, vec![RootOfUnity::new(2, 7), RootOfUnity::new(5, 7)]);
    }

    #[test]
    fn nearby_roots_do_not_collapse() {
        // Aberth iterates once merged here and the roots went missing.
        let lin = |a: CycNum| LaurentPoly::from_coeffs(0, vec![-a, CycNum::one()]);
        let p = &lin(RootOfUnity::new(11, 15).to_cyc()) * &lin(RootOfUnity::new(2, 3).to_cyc());
        let d = identify_roots(&p).unwrap();
        assert_eq!(d.on_circle, vec![RootOfUnity::new(2, 3), RootOfUnity::new(11, 15)]);
    }

    #[test]
    fn off_circle_pair() {
        // (t − ½)(t⁻¹ − ½)
        let f = &LaurentPoly::from_coeffs(0, vec![CycNum::from_ratio(-1, 2), CycNum::one()])
            * &LaurentPoly::from_coeffs(-1, vec![CycNum::one(), CycNum::from_ratio(-1, 2)]);
        let d = identify_roots(&f).unwrap();
        assert!(d.on_circle.is_empty());
        assert_eq!(d.off_circle.len(), 1);
        assert_eq!(d.off_circle[0].rho, BigRational::new(1.into(), 2.into()));
        assert_eq!(d.off_circle[0].omega, RootOfUnity::one());
    }

    #[test]
    fn irrational_roots_are_skipped() {
        // t² − 3t + 1 has real roots (3 ± √5)/2
        let d = identify_roots(&LaurentPoly::from_ints(0, &[1, -3, 1])).unwrap();
        assert!(d.on_circle.is_empty() && d.off_circle.is_empty());
    }

    #[test]
    fn valuation_counts() {
        let a = CycNum::root_of_unity(1, 5);
        let lin = LaurentPoly::from_coeffs(0, vec![-a.clone(), CycNum::one()]);
        let p = &lin.pow(3) * &LaurentPoly::from_ints(0, &[1, 1]);
        let (v, q) = valuation(&p, &a);
        assert_eq!(v, 3);
        assert_eq!(q, LaurentPoly::from_ints(0, &[1, 1]));
    }
}
