//! Hermite normal form over the integers and the lattice computations built
//! on it (integral kernels and integral solutions of linear systems).
//!
//! Vectors are rows; a matrix acts on the right, `x * A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// Row Hermite normal form.
#[derive(Clone, Debug)]
pub struct Hnf {
    /// `H = U * A`, echelon with positive pivots and reduced entries above them.
    pub h: Matrix,
    /// Unimodular transform.
    pub u: Matrix,
    /// Pivot column of each nonzero row of `h`, in order.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `rows[a] := p*rows[a] + q*rows[b]`, `rows[b] := r*rows[a] + s*rows[b]`.
fn combine(rows: &mut [Vec<BigInt>], a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
    let (ra, rb) = (rows[a].clone(), rows[b].clone());
    for k in 0..ra.len() {
        rows[a][k] = p * &ra[k] + q * &rb[k];
        rows[b][k] = r * &ra[k] + s * &rb[k];
    }
}

fn axpy(rows: &mut [Vec<BigInt>], target: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let s = rows[src].clone();
    for (x, y) in rows[target].iter_mut().zip(s.iter()) {
        *x -= f * y;
    }
}

/// Hermite normal form of `a` (`m x n`) with its unimodular transform.
pub fn hnf_with_transform(a: &Matrix) -> Hnf {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u = identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        // gcd-combine every lower entry into the pivot row
        for i in row + 1..m {
            if h[i][col].is_zero() {
                continue;
            }
            if h[row][col].is_zero() {
                h.swap(row, i);
                u.swap(row, i);
                continue;
            }
            let (x, y) = (h[row][col].clone(), h[i][col].clone());
            let e = x.extended_gcd(&y);
            let (g, p, q) = (e.gcd, e.x, e.y);
            let (r, s) = (-(&y / &g), &x / &g);
            combine(&mut h, row, i, &p, &q, &r, &s);
            combine(&mut u, row, i, &p, &q, &r, &s);
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            for v in h[row].iter_mut().chain(u[row].iter_mut()) {
                *v = -std::mem::take(v);
            }
        }
        let piv = h[row][col].clone();
        for i in 0..row {
            let f = h[i][col].div_floor(&piv);
            axpy(&mut h, i, row, &f);
            axpy(&mut u, i, row, &f);
        }
        pivots.push(col);
        row += 1;
    }
    Hnf { h, u, pivots }
}

/// Saturated basis of `{x in Z^m : x * A = 0}`, itself in Hermite normal form.
pub fn integer_kernel(a: &Matrix) -> Matrix {
    let hnf = hnf_with_transform(a);
    let r = hnf.rank();
    let basis: Matrix = hnf.u[r..].to_vec();
    if basis.is_empty() {
        return basis;
    }
    let reduced = hnf_with_transform(&basis);
    reduced.h[..reduced.rank()].to_vec()
}

/// Some integral `x` with `x * A = b`, if one exists.
pub fn solve_integer_left(a: &Matrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    let hnf = hnf_with_transform(a);
    let mut residual = b.to_vec();
    let mut y = vec![BigInt::zero(); m];
    for (i, &col) in hnf.pivots.iter().enumerate() {
        let piv = &hnf.h[i][col];
        let (q, rem) = residual[col].div_rem(piv);
        if !rem.is_zero() {
            return None;
        }
        for (x, hv) in residual.iter_mut().zip(hnf.h[i].iter()) {
            *x -= &q * hv;
        }
        y[i] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigInt::zero(); m];
    for (i, yi) in y.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        for (xv, uv) in x.iter_mut().zip(hnf.u[i].iter()) {
            *xv += yi * uv;
        }
    }
    Some(x)
}

/// `x * A`.
pub fn row_times(x: &[BigInt], a: &Matrix) -> Vec<BigInt> {
    let n = a.first().map_or(0, Vec::len);
    let mut out = vec![BigInt::zero(); n];
    for (xi, row) in x.iter().zip(a.iter()) {
        if xi.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row.iter()) {
            *o += xi * v;
        }
    }
    out
}

/// Whether `v` lies in the row lattice of `basis`.
pub fn contains(basis: &Matrix, v: &[BigInt]) -> bool {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    solve_integer_left(basis, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
        a.iter().map(|r| row_times(r, b)).collect()
    }

    #[test]
    fn hnf_is_echelon_and_transform_is_consistent() {
        let a = mat(&[&[2, 4, 6], &[3, 6, 9], &[1, 1, 1], &[0, 2, 5]]);
        let hnf = hnf_with_transform(&a);
        assert_eq!(mat_mul(&hnf.u, &a), hnf.h);
        assert_eq!(hnf.rank(), 3);
        for (i, &c) in hnf.pivots.iter().enumerate() {
            assert!(hnf.h[i][c].is_positive());
            for k in 0..i {
                let v = &hnf.h[k][c];
                assert!(!v.is_negative() && v < &hnf.h[i][c]);
            }
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // x*A = 0 with A = [[2],[4]]: kernel spanned by (2, -1), not (4, -2)
        let a = mat(&[&[2], &[4]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(row_times(&k[0], &a), vec![BigInt::zero()]);
        let g = k[0].iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        assert!(g.is_one());
    }

    #[test]
    fn integral_solutions() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = solve_integer_left(&a, &b).unwrap();
        assert_eq!(row_times(&x, &a), b);
        assert!(solve_integer_left(&a, &[BigInt::from(1), BigInt::zero()]).is_none());
        assert!(contains(&a, &[BigInt::from(2), BigInt::from(3)]));
    }
}
