//! Smith normal form over a Euclidean domain, with transforms.

use super::matrix::{Euclidean, Matrix};
use crate::error::Error;

/// D = U·A·V with D diagonal, d_i | d_{i+1}, nonzero entries first and
/// normalized to canonical associates.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub diag: Vec<T>,
    pub rank: usize,
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
}

struct Work<T: Euclidean> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Euclidean> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i += q·row_j
    fn row_op(&mut self, i: usize, j: usize, q: &T) {
        self.a.add_row_multiple(i, j, q);
        self.u.add_row_multiple(i, j, q);
        self.u_inv.add_col_multiple(j, i, &q.neg());
    }

    /// col_i += q·col_j
    fn col_op(&mut self, i: usize, j: usize, q: &T) {
        self.a.add_col_multiple(i, j, q);
        self.v.add_col_multiple(i, j, q);
        self.v_inv.add_row_multiple(j, i, &q.neg());
    }

    fn scale_row(&mut self, i: usize, u: &T, u_inv: &T) {
        self.a.scale_row(i, u);
        self.u.scale_row(i, u);
        self.u_inv.scale_col(i, u_inv);
    }
}

pub fn smith_normal_form<T: Euclidean>(a: &Matrix<T>) -> SmithForm<T> {
    let m = a.rows();
    let n = a.cols();
    let mut w = Work {
        a: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // Pivot: minimal size, ties broken by position.
            let mut best: Option<(T::Size, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &w.a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    let s = x.size();
                    if best.as_ref().map_or(true, |(bs, _, _)| s < *bs) {
                        best = Some((s, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = w.a[(i, t)].div_rem(&p);
                w.row_op(i, t, &q.neg());
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = w.a[(t, j)].div_rem(&p);
                w.col_op(j, t, &q.neg());
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility of the remaining block.
            let mut bad_row = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    let x = &w.a[(i, j)];
                    if !x.is_zero() && !x.div_rem(&p).1.is_zero() {
                        bad_row = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad_row {
                Some(i) => w.row_op(t, i, &T::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_zero() {
            break;
        }
        let (_, u, ui) = w.a[(t, t)].normalize();
        w.scale_row(t, &ui, &u);
        rank += 1;
    }
    let diag = (0..m.min(n)).map(|i| w.a[(i, i)].clone()).collect();
    SmithForm {
        diag,
        rank,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Rank over the fraction field.
pub fn rank<T: Euclidean>(a: &Matrix<T>) -> usize {
    smith_normal_form(a).rank
}

/// Solve x·A = s·b for a row vector x, with s minimal up to units.
pub fn solve_linear<T: Euclidean>(a: &Matrix<T>, b: &[T]) -> Result<(Vec<T>, T), Error> {
    let sf = smith_normal_form(a);
    solve_with_smith(&sf, b)
}

pub fn solve_with_smith<T: Euclidean>(sf: &SmithForm<T>, b: &[T]) -> Result<(Vec<T>, T), Error> {
    // A = U⁻¹ D V⁻¹, so x·A = s·b  ⇔  (x·U⁻¹)·D = s·(b·V).
    let c = sf.v.left_apply(b);
    let r = sf.rank;
    if c[r..].iter().any(|x| !x.is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut s = T::one();
    for i in 0..r {
        if c[i].is_zero() {
            continue;
        }
        let g = sf.diag[i].gcd(&c[i]);
        let need = sf.diag[i].div_rem(&g).0;
        // s ← lcm(s, need)
        let gs = s.gcd(&need);
        s = s.mul(&need.div_rem(&gs).0);
    }
    let (s, _, _) = s.normalize();
    let m = sf.u.rows();
    let mut y = vec![T::zero(); m];
    for i in 0..r {
        if c[i].is_zero() {
            continue;
        }
        let (q, rem) = s.mul(&c[i]).div_rem(&sf.diag[i]);
        debug_assert!(rem.is_zero());
        y[i] = q;
    }
    Ok((sf.u.left_apply(&y), s))
}
