use num_complex::Complex64;

use super::eig::{jacobi_rotation, normalize_phase, rotate_columns};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Singular value decomposition `m = left * diag(singulars) * right^dagger`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub left: ComplexMatrix,
    /// Nonnegative, descending.
    pub singulars: Vec<f64>,
    pub right: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.singulars.len();
        ComplexMatrix::from_fn(self.left.rows(), self.right.rows(), |r, c| {
            (0..n)
                .map(|k| self.left[(r, k)] * self.singulars[k] * self.right[(c, k)].conj())
                .sum()
        })
    }
}

/// SVD of a square matrix by one-sided (Hestenes) Jacobi rotations.
///
/// Singular values are sorted descending with ties kept in the order the
/// Jacobi iteration produced them. Left vectors belonging to numerically zero
/// singular values are completed by Gram-Schmidt against the standard basis
/// in index order. Each singular pair `(u_j, v_j)` is then rotated by a common
/// phase so the first largest-modulus entry of `u_j` is real and positive.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if !m.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut work = m.clone();
    let mut right = ComplexMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (mut alpha, mut beta) = (0.0, 0.0);
                let mut gamma = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let up = work[(k, p)];
                    let uq = work[(k, q)];
                    alpha += up.norm_sqr();
                    beta += uq.norm_sqr();
                    gamma += up.conj() * uq;
                }
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                if let Some(w) = jacobi_rotation(alpha, beta, gamma) {
                    rotate_columns(&mut work, p, q, &w);
                    rotate_columns(&mut right, p, q, &w);
                    rotated = true;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|k| work[(k, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let s_max = norms[order[0]];
    let zero_tol = s_max * (n as f64) * f64::EPSILON * 4.0;

    let singulars: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut left = ComplexMatrix::zeros(n, n);
    let mut right_sorted = ComplexMatrix::zeros(n, n);
    let mut filled = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        right_sorted.set_column(dst, &right.column(src));
        let s = norms[src];
        if s > zero_tol && s > 0.0 {
            let col: Vec<Complex64> = work.column(src).iter().map(|z| z / s).collect();
            left.set_column(dst, &col);
            filled.push(dst);
        }
    }
    complete_orthonormal(&mut left, &filled);

    for j in 0..n {
        let mut u = left.column(j);
        let before = u.clone();
        normalize_phase(&mut u);
        if let Some(idx) = before.iter().position(|z| z.norm() > 0.0) {
            let ph = u[idx] / before[idx];
            let v: Vec<Complex64> = right_sorted.column(j).iter().map(|z| z * ph).collect();
            right_sorted.set_column(j, &v);
        }
        left.set_column(j, &u);
    }

    Ok(Svd {
        left,
        singulars,
        right: right_sorted,
    })
}

/// Fills the columns of `m` not listed in `filled` with unit vectors
/// orthogonal to every column filled so far, drawn from the standard basis
/// in index order. Two passes of classical Gram-Schmidt per candidate.
pub(crate) fn complete_orthonormal(m: &mut ComplexMatrix, filled: &[usize]) {
    let n = m.rows();
    let mut basis: Vec<Vec<Complex64>> = filled.iter().map(|&j| m.column(j)).collect();
    let missing: Vec<usize> = (0..m.cols()).filter(|j| !filled.contains(j)).collect();
    let mut candidate = 0;
    for j in missing {
        loop {
            assert!(candidate < n, "cannot complete orthonormal basis");
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[candidate] = Complex64::new(1.0, 0.0);
            candidate += 1;
            for _ in 0..2 {
                for b in &basis {
                    let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= overlap * bi;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for z in &mut v {
                    *z /= norm;
                }
                m.set_column(j, &v);
                basis.push(v);
                break;
            }
        }
    }
}
