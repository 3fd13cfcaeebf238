//! Seeded random linking forms and basis scrambles shared by the test suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use blanchfield::algebra::{CycNum, LaurentPoly, PolyMatrix, RootOfUnity};
use blanchfield::forms::{Decomposition, ETerm, FTerm, LinkingForm};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Field conductors used for random forms (all ≤ 60).
pub const CONDUCTORS: [u64; 12] = [3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 60];

pub fn random_root(rng: &mut ChaCha8Rng, n: u64) -> RootOfUnity {
    RootOfUnity::new(rng.gen_range(0..n as i64), n)
}

pub fn random_eterm(rng: &mut ChaCha8Rng, n: u64) -> ETerm {
    ETerm::new(
        rng.gen_range(1..=3),
        if rng.gen_bool(0.5) { 1 } else { -1 },
        random_root(rng, n),
    )
}

pub fn random_fterm(rng: &mut ChaCha8Rng, n: u64) -> FTerm {
    let (p, q) = *[(1, 2), (1, 3), (2, 3), (1, 4), (3, 5)].choose(rng).unwrap();
    FTerm {
        n: rng.gen_range(1..=2),
        rho: BigRational::new(BigInt::from(p), BigInt::from(q)),
        omega: random_root(rng, n),
    }
}

/// 1 to `max_terms` basic forms over Q(ζ_N), N drawn from [`CONDUCTORS`].
pub fn random_decomposition(rng: &mut ChaCha8Rng, max_terms: usize, with_f: bool) -> Decomposition {
    let n = *CONDUCTORS.choose(rng).unwrap();
    random_decomposition_over(rng, n, max_terms, with_f)
}

pub fn random_decomposition_over(rng: &mut ChaCha8Rng, n: u64, max_terms: usize, with_f: bool) -> Decomposition {
    let count = rng.gen_range(1..=max_terms);
    let mut e = Vec::new();
    let mut f = Vec::new();
    for _ in 0..count {
        if with_f && rng.gen_bool(0.2) {
            f.push(random_fterm(rng, n));
        } else {
            e.push(random_eterm(rng, n));
        }
    }
    Decomposition::new(e, f, LaurentPoly::one())
}

fn small_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let c: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
    let p = LaurentPoly::from_ints(rng.gen_range(-1..=1), &c);
    if p.is_zero() {
        LaurentPoly::one()
    } else {
        p
    }
}

fn unit(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let c = &CycNum::from_ratio(rng.gen_range(1..=3), rng.gen_range(1..=2))
        * &CycNum::root_of_unity(rng.gen_range(0..4), 4);
    let c = if rng.gen_bool(0.5) { c } else { -c };
    LaurentPoly::monomial(c, rng.gen_range(-2..=2))
}

fn identity_rows(n: usize) -> Vec<Vec<LaurentPoly>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect()
}

/// One random change of generators that keeps the form isometric:
/// permutation, unit rescaling, a shear y_i = x_i + c·x_j with f_j | c·f_i,
/// or merging two summands of coprime order into one cyclic summand.
pub fn scramble_once(rng: &mut ChaCha8Rng, lf: &LinkingForm) -> LinkingForm {
    let n = lf.size();
    if n == 0 {
        return lf.clone();
    }
    let orders = lf.orders().to_vec();
    let mut rows = identity_rows(n);
    let op = rng.gen_range(0..4);
    match op {
        0 => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let rows: Vec<Vec<LaurentPoly>> = perm.iter().map(|&p| rows[p].clone()).collect();
            let ords = perm.iter().map(|&p| orders[p].clone()).collect();
            return lf.change_basis(&PolyMatrix::from_rows(rows), ords);
        }
        1 => {
            let i = rng.gen_range(0..n);
            rows[i][i] = unit(rng);
        }
        _ if n >= 2 => {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let g = orders[i].gcd(&orders[j]);
            if op == 3 && g.is_unit() {
                let (a, b) = (i.min(j), i.max(j));
                let mut merged = rows[a].clone();
                merged[b] = LaurentPoly::one();
                let mut new_rows = Vec::new();
                let mut ords = Vec::new();
                for k in 0..n {
                    if k == a {
                        new_rows.push(merged.clone());
                        ords.push(&orders[a] * &orders[b]);
                    } else if k != b {
                        new_rows.push(rows[k].clone());
                        ords.push(orders[k].clone());
                    }
                }
                return lf.change_basis(&PolyMatrix::from_rows(new_rows), ords);
            }
            let c = orders[j].exact_div(&g).expect("gcd divides");
            rows[i][j] = &c * &small_poly(rng);
        }
        _ => {}
    }
    lf.change_basis(&PolyMatrix::from_rows(rows), orders)
}

pub fn scramble(rng: &mut ChaCha8Rng, lf: &LinkingForm, steps: usize) -> LinkingForm {
    (0..steps).fold(lf.clone(), |acc, _| scramble_once(rng, &acc))
}
