use super::eig::herm_eig;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues below `-PSD_TOL * max(1, largest |eigenvalue|)` reject a matrix
/// declared positive semidefinite; smaller negative values are clamped to 0.
pub const PSD_TOL: f64 = 1e-10;

/// Eigenvalues at or below this fraction of the largest one count as zero
/// when inverting.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

fn checked_psd(m: &ComplexMatrix) -> Result<super::eig::HermEig> {
    let eig = herm_eig(m)?;
    let scale = eig.values.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let min = eig.values[0];
    if min < -PSD_TOL * scale {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    Ok(eig)
}

/// Principal square root of a Hermitian PSD matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = checked_psd(m)?;
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()))
}

/// Inverse principal square root of a Hermitian positive definite matrix.
///
/// Fails with [`Error::SingularState`] when the smallest eigenvalue is at or
/// below `SINGULARITY_THRESHOLD` times the largest.
pub fn psd_inv_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = checked_psd(m)?;
    let max = *eig.values.last().expect("non-empty spectrum");
    let min = eig.values[0];
    if max <= 0.0 || min <= SINGULARITY_THRESHOLD * max {
        return Err(Error::SingularState { min_eigenvalue: min });
    }
    Ok(eig.reconstruct_with(|x| 1.0 / x.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_sqrt() {
        let r = psd_sqrt(&ComplexMatrix::from_real_diag(&[4.0, 9.0])).unwrap();
        assert!(r.approx_eq(&ComplexMatrix::from_real_diag(&[2.0, 3.0]), 1e-15));
    }

    #[test]
    fn maximally_mixed_sqrt() {
        for n in 1..6 {
            let m = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
            let r = psd_sqrt(&m).unwrap();
            let expected = ComplexMatrix::identity(n).scale_real(1.0 / (n as f64).sqrt());
            assert!(r.approx_eq(&expected, 1e-14));
        }
    }

    #[test]
    fn inverse_sqrt_of_pure_state_is_singular() {
        let pure = ComplexMatrix::basis_projector(2, 0);
        assert!(matches!(psd_inv_sqrt(&pure), Err(Error::SingularState { .. })));
    }

    #[test]
    fn inverse_sqrt_of_full_rank() {
        let m = ComplexMatrix::from_real(&[&[2.0, 0.5], &[0.5, 1.0]]).unwrap();
        let inv = psd_inv_sqrt(&m).unwrap();
        let root = psd_sqrt(&m).unwrap();
        assert!((&inv * &root).approx_eq(&ComplexMatrix::identity(2), 1e-13));
    }

    #[test]
    fn negative_matrix_rejected() {
        let m = ComplexMatrix::from_real_diag(&[1.0, -0.5]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn roundoff_negative_clamped() {
        let m = ComplexMatrix::from_real_diag(&[1.0, -1e-14]);
        let r = psd_sqrt(&m).unwrap();
        assert_eq!(r[(1, 1)].re, 0.0);
    }
}
