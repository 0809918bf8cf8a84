use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest tolerated asymmetry `max |m_ij - conj(m_ji)|`, relative to
/// `max(1, max |m_ij|)`, before a matrix declared Hermitian is rejected.
pub const HERMITIAN_ASYMMETRY_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEig {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermEig {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// `V f(diag) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |r, c| {
            (0..n)
                .map(|k| self.vectors[(r, k)] * mapped[k] * self.vectors[(c, k)].conj())
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// Rotates `v` by a global phase so that its first entry of (numerically)
/// largest modulus is real and positive.
pub(crate) fn normalize_phase(v: &mut [Complex64]) {
    if let Some(idx) = leading_index(v) {
        let z = v[idx];
        let phase = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

/// First index whose modulus is within a relative 1e-9 of the largest.
pub(crate) fn leading_index(v: &[Complex64]) -> Option<usize> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return None;
    }
    v.iter().position(|z| z.norm() >= max * (1.0 - 1e-9))
}

fn asymmetry(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input is symmetrized as `(m + m^dagger)/2` first. Eigenvalues come back
/// ascending (stable with respect to the Jacobi output order) and each
/// eigenvector is phase-normalized with [`normalize_phase`], so equal inputs
/// give bit-identical outputs.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let scale = m.max_abs().max(1.0);
    let asym = asymmetry(m);
    if asym > HERMITIAN_ASYMMETRY_TOL * scale {
        return Err(Error::NotHermitian { asymmetry: asym });
    }

    let n = m.rows();
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[(r, c)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * a.frobenius_norm() || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        normalize_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    Ok(HermEig { values, vectors })
}

/// Unitary `W` (as `[w00, w01, w10, w11]`) with `W^dagger H W` diagonal for
/// the 2x2 Hermitian block `H = [[app, b], [conj b, aqq]]`.
///
/// With `b = |b| e^{i phi}`, `H = P R L R^T P^dagger` for `P = diag(1, e^{-i phi})`
/// and a real Givens rotation `R` chosen with `|angle| <= pi/4`; `W = P R`.
pub(crate) fn jacobi_rotation(app: f64, aqq: f64, b: Complex64) -> Option<[Complex64; 4]> {
    let b_abs = b.norm();
    if b_abs == 0.0 || !b_abs.is_normal() {
        return None;
    }
    let tau = (aqq - app) / (2.0 * b_abs);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = b.conj() / b_abs;
    Some([
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        -phase * s,
        phase * c,
    ])
}

/// `M <- M W` restricted to columns `p` and `q`.
pub(crate) fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, w: &[Complex64; 4]) {
    for k in 0..m.rows() {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = mp * w[0] + mq * w[2];
        m[(k, q)] = mp * w[1] + mq * w[3];
    }
}

/// `M <- W^dagger M` restricted to rows `p` and `q`.
fn rotate_rows(m: &mut ComplexMatrix, p: usize, q: usize, w: &[Complex64; 4]) {
    for k in 0..m.cols() {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = w[0].conj() * mp + w[2].conj() * mq;
        m[(q, k)] = w[1].conj() * mp + w[3].conj() * mq;
    }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let zero = Complex64::new(0.0, 0.0);
    let Some(w) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, a[(p, q)]) else {
        a[(p, q)] = zero;
        a[(q, p)] = zero;
        return;
    };
    rotate_columns(a, p, q, &w);
    rotate_rows(a, p, q, &w);
    a[(p, q)] = zero;
    a[(q, p)] = zero;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    rotate_columns(v, p, q, &w);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_sorted() {
        let eig = herm_eig(&ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(eig.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn sigma_x_eigenvalues() {
        let x = ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let eig = herm_eig(&x).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!(eig.reconstruct().approx_eq(&x, 1e-14));
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let eig = herm_eig(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(eig.values, vec![1.0; 4]);
        assert!(eig.vectors.is_unitary(1e-14));
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.5, -1.0), c(0.0, 0.3)],
            vec![c(0.5, 1.0), c(-1.0, 0.0), c(1.2, 0.0)],
            vec![c(0.0, -0.3), c(1.2, 0.0), c(0.7, 0.0)],
        ])
        .unwrap();
        let eig = herm_eig(&m).unwrap();
        assert!(eig.reconstruct().approx_eq(&m, 1e-13));
        assert!(eig.vectors.is_unitary(1e-13));
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn tiny_asymmetry_is_repaired() {
        let m = ComplexMatrix::from_real(&[&[1.0, 0.5 + 1e-12], &[0.5, 2.0]]).unwrap();
        assert!(herm_eig(&m).is_ok());
    }

    #[test]
    fn eigenvectors_have_positive_leading_entry() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(3.0, 0.0)]])
            .unwrap();
        let eig = herm_eig(&m).unwrap();
        for k in 0..2 {
            let col = eig.vector(k);
            let idx = leading_index(&col).unwrap();
            assert!(col[idx].im.abs() < 1e-15 && col[idx].re > 0.0);
        }
    }
}
