use rug::ops::Pow;
use rug::Float;

use super::complex::Complex;

fn assert_square<T>(m: &[Vec<T>]) {
    assert!(m.iter().all(|row| row.len() == m.len()), "determinant of a non-square matrix");
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_real(m: &[Vec<Float>]) -> Float {
    assert_square(m);
    let n = m.len();
    let prec = m.first().and_then(|r| r.first()).map_or(64, Float::prec);
    let mut a: Vec<Vec<Float>> = m.to_vec();
    let mut det = Float::with_val(prec, 1);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].clone().abs().partial_cmp(&a[j][col].clone().abs()).unwrap())
            .unwrap();
        if a[pivot][col].is_zero() {
            return Float::new(prec);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        for row in col + 1..n {
            let factor = Float::with_val(prec, &a[row][col] / &a[col][col]);
            for k in col..n {
                let t = Float::with_val(prec, &factor * &a[col][k]);
                a[row][k] -= t;
            }
        }
    }
    det
}

/// Complex determinant by Gaussian elimination with partial pivoting.
pub fn det_complex(m: &[Vec<Complex>]) -> Complex {
    assert_square(m);
    let n = m.len();
    let prec = m.first().and_then(|r| r.first()).map_or(64, Complex::prec);
    let mut a: Vec<Vec<Complex>> = m.to_vec();
    let mut det = Complex::real(Float::with_val(prec, 1));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm_sqr().partial_cmp(&a[j][col].norm_sqr()).unwrap())
            .unwrap();
        if a[pivot][col].is_zero() {
            return Complex::zero(prec);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        for row in col + 1..n {
            let factor = a[row][col].div(&a[col][col]);
            for k in col..n {
                let t = factor.mul(&a[col][k]);
                a[row][k] = a[row][k].sub(&t);
            }
        }
    }
    det
}

/// Singular values of a real matrix by one-sided Jacobi rotations,
/// sorted in decreasing order.
pub fn singular_values(m: &[Vec<Float>]) -> Vec<Float> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let prec = m[0].first().map_or(64, Float::prec);
    // work on columns of the taller orientation
    let (mut u, n): (Vec<Vec<Float>>, usize) = if rows >= cols {
        ((0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect(), rows)
    } else {
        (m.to_vec(), cols)
    };
    let dot = |a: &[Float], b: &[Float]| {
        a.iter().zip(b).fold(Float::new(prec), |acc, (x, y)| acc + Float::with_val(prec, x * y))
    };
    let tol = Float::with_val(prec, 2).pow(-(prec as i32) + 8);
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..u.len() {
            for q in p + 1..u.len() {
                let alpha = dot(&u[p], &u[p]);
                let beta = dot(&u[q], &u[q]);
                let gamma = dot(&u[p], &u[q]);
                let scale = Float::with_val(prec, &alpha * &beta).sqrt();
                if gamma.is_zero() || Float::with_val(prec, gamma.abs_ref()) <= Float::with_val(prec, &tol * &scale) {
                    continue;
                }
                rotated = true;
                let zeta = Float::with_val(prec, &beta - &alpha) / (Float::with_val(prec, &gamma * 2u32));
                let sign = if zeta.is_sign_negative() { -1 } else { 1 };
                let root = Float::with_val(prec, Float::with_val(prec, zeta.square_ref()) + 1u32).sqrt();
                let t = Float::with_val(prec, sign) / (Float::with_val(prec, zeta.abs_ref()) + root);
                let c = Float::with_val(prec, Float::with_val(prec, t.square_ref()) + 1u32).sqrt().recip();
                let s = Float::with_val(prec, &c * &t);
                for k in 0..n {
                    let up = u[p][k].clone();
                    let uq = u[q][k].clone();
                    u[p][k] = Float::with_val(prec, &c * &up) - Float::with_val(prec, &s * &uq);
                    u[q][k] = Float::with_val(prec, &s * &up) + Float::with_val(prec, &c * &uq);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<Float> = u.iter().map(|col| dot(col, col).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Number of singular values above `rel_threshold` times the largest one.
pub fn numerical_rank(m: &[Vec<Float>], rel_threshold: &Float) -> usize {
    let sv = singular_values(m);
    let Some(max) = sv.first() else { return 0 };
    if max.is_zero() {
        return 0;
    }
    let cutoff = Float::with_val(max.prec(), max * rel_threshold);
    sv.iter().filter(|s| **s > cutoff).count()
}
