//! Quantum channels in Kraus form and their algebra.
//!
//! Index conventions, used everywhere in the crate:
//!
//! * Operators are vectorized row-major: `vec(A)[a*N + i] = A[a][i]`.
//! * The Choi matrix is `D = sum_{ij} Phi(|i><j|) (x) |i><j|`, i.e.
//!   `N (Phi (x) 1)|psi+><psi+|` with the channel acting on the first factor.
//!   Equivalently `D = sum_k vec(A_k) vec(A_k)^dagger`, so a Choi eigenvector
//!   reshaped row-major is a Kraus operator.
//! * The superoperator acting on row-major vectorized states is
//!   `S = sum_k A_k (x) conj(A_k)`.
//!
//! Two channels are equal when their Choi matrices are; Kraus lists are never
//! compared directly.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numkernel::{herm_eig, ComplexMatrix, Complex64};

/// Tolerance for the channel predicates (trace preservation, unitality,
/// self-duality) and for channel equality.
pub const CHANNEL_TOL: f64 = 1e-9;

/// Tolerance for validating a density matrix.
pub const STATE_TOL: f64 = 1e-10;

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tol(m, STATE_TOL)
    }

    /// Validates `m` with a custom tolerance. The stored matrix is hermitized.
    pub fn with_tol(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidState(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let defect = m.hermitian_defect();
        if defect > tol {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:.3e})")));
        }
        let m = m.hermitize();
        let tr = m.trace().re;
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = herm_eig(&m)?.values[0];
        if min < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self(m))
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        Self::new(ComplexMatrix::outer(psi).scale_real(1.0 / norm))
    }

    /// Computational basis state `|i><i|`.
    pub fn basis(n: usize, i: usize) -> Self {
        Self(ComplexMatrix::basis_projector(n, i))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self(ComplexMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Choi (dynamical) matrix of a channel on an `N`-level system.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub dim: usize,
    pub matrix: ComplexMatrix,
}

impl ChoiMatrix {
    /// Sorted (ascending) eigenvalues.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(herm_eig(&self.matrix)?.values)
    }
}

/// A completely positive map given by an ordered list of Kraus operators.
///
/// Construction only checks shapes; whether the map is trace preserving is a
/// predicate ([`QuantumChannel::is_trace_preserving`]) because non-trace-
/// preserving maps (the dual of a non-unital channel) are legitimate objects
/// to inspect.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidArgument("a channel needs at least one Kraus operator".into()))?;
        let dim = first.rows();
        for (i, k) in kraus.iter().enumerate() {
            if k.rows() != dim || k.cols() != dim {
                return Err(Error::dims(
                    format!("{dim}x{dim}"),
                    format!("{}x{} (Kraus operator {i})", k.rows(), k.cols()),
                ));
            }
        }
        Ok(Self { dim, kraus })
    }

    /// Like [`QuantumChannel::new`] but also requires `sum A^dagger A = 1`
    /// within `tol` (Frobenius).
    pub fn trace_preserving(kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let ch = Self::new(kraus)?;
        let residual = ch.trace_preservation_residual();
        if residual > tol {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(ch)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dim: n,
            kraus: vec![ComplexMatrix::identity(n)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn kraus_count(&self) -> usize {
        self.kraus.len()
    }

    pub fn into_kraus(self) -> Vec<ComplexMatrix> {
        self.kraus
    }

    /// `sum_k A_k rho A_k^dagger` for an arbitrary operator `rho`.
    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::dims(
                format!("{0}x{0}", self.dim),
                format!("{}x{}", rho.rows(), rho.cols()),
            ));
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for a in &self.kraus {
            out = &out + &(&(a * rho) * &a.dagger());
        }
        Ok(out)
    }

    /// Applies the channel to a state. The output is validated as a density
    /// matrix at tolerance `1e-9`, so a non-trace-preserving map fails here.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_matrix(rho.matrix())?;
        DensityMatrix::with_tol(out, CHANNEL_TOL)
    }

    pub fn choi(&self) -> ChoiMatrix {
        let n = self.dim;
        let mut d = ComplexMatrix::zeros(n * n, n * n);
        for a in &self.kraus {
            let v = a.as_slice();
            for r in 0..n * n {
                if v[r] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n * n {
                    d[(r, c)] += v[r] * v[c].conj();
                }
            }
        }
        ChoiMatrix { dim: n, matrix: d }
    }

    /// Superoperator matrix acting on row-major vectorized operators.
    pub fn superoperator(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut s = ComplexMatrix::zeros(n * n, n * n);
        for a in &self.kraus {
            s = &s + &a.kron(&a.conj());
        }
        s
    }

    /// Eigenvalues of the Choi matrix, descending, with the zero weights
    /// dropped (the `d_i` of the canonical form).
    pub fn canonical_weights(&self) -> Result<Vec<f64>> {
        Ok(self
            .canonical_kraus()?
            .kraus
            .iter()
            .map(|k| k.frobenius_norm().powi(2))
            .collect())
    }

    /// Canonical Kraus form: trace-orthogonal operators built from the Choi
    /// eigendecomposition, ordered by weight `d_i = ||A_i||^2` descending.
    ///
    /// Eigenvalues at or below `1e-10 * N` are dropped. Ties (weights within
    /// `1e-9`) are ordered by lexicographic comparison of the entries, real
    /// part first. Each operator carries the phase of its normalized Choi
    /// eigenvector, i.e. its first largest-modulus entry is real positive.
    pub fn canonical_kraus(&self) -> Result<Self> {
        let n = self.dim;
        let eig = herm_eig(&self.choi().matrix)?;
        let cutoff = 1e-10 * n as f64;

        let mut ops: Vec<(f64, ComplexMatrix)> = eig
            .values
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d > cutoff)
            .map(|(i, &d)| {
                let v = eig.vector(i);
                let op = ComplexMatrix::from_row_major(n, n, &v)
                    .expect("eigenvector has N^2 entries")
                    .scale_real(d.sqrt());
                (d, op)
            })
            .collect();

        order_by_weight(&mut ops);

        let kraus = if ops.is_empty() {
            vec![ComplexMatrix::zeros(n, n)]
        } else {
            ops.into_iter().map(|(_, op)| op).collect()
        };
        Ok(Self { dim: n, kraus })
    }

    /// The dual map, with every Kraus operator daggered.
    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            kraus: self.kraus.iter().map(ComplexMatrix::dagger).collect(),
        }
    }

    /// Frobenius norm of `sum A^dagger A - 1`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for a in &self.kraus {
            sum = &sum + &(&a.dagger() * a);
        }
        sum.distance(&ComplexMatrix::identity(self.dim))
    }

    /// Frobenius norm of `sum A A^dagger - 1`.
    pub fn unitality_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for a in &self.kraus {
            sum = &sum + &(a * &a.dagger());
        }
        sum.distance(&ComplexMatrix::identity(self.dim))
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.is_trace_preserving_tol(CHANNEL_TOL)
    }

    pub fn is_trace_preserving_tol(&self, tol: f64) -> bool {
        self.trace_preservation_residual() <= tol
    }

    pub fn is_unital(&self) -> bool {
        self.is_unital_tol(CHANNEL_TOL)
    }

    pub fn is_unital_tol(&self, tol: f64) -> bool {
        self.unitality_residual() <= tol
    }

    pub fn is_bistochastic(&self) -> bool {
        self.is_trace_preserving() && self.is_unital()
    }

    /// Whether the dual map equals the map itself (Choi comparison).
    pub fn is_selfdual(&self) -> bool {
        self.is_selfdual_tol(CHANNEL_TOL)
    }

    pub fn is_selfdual_tol(&self, tol: f64) -> bool {
        channels_equal(self, &self.dual(), tol).unwrap_or(false)
    }
}

fn lexicographic(a: &ComplexMatrix, b: &ComplexMatrix) -> Ordering {
    for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Sorts by weight descending; runs of weights within `1e-9` of the first
/// weight of the run are ordered lexicographically instead.
pub(crate) fn order_by_weight(ops: &mut [(f64, ComplexMatrix)]) {
    ops.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut start = 0;
    while start < ops.len() {
        let head = ops[start].0;
        let mut end = start + 1;
        while end < ops.len() && head - ops[end].0 <= 1e-9 {
            end += 1;
        }
        ops[start..end].sort_by(|a, b| lexicographic(&a.1, &b.1));
        start = end;
    }
}

/// `phi2 o phi1`: first `phi1`, then `phi2`. The Kraus list is every product
/// `B_j A_i`, ordered with `phi1`'s index running fastest.
pub fn compose(phi2: &QuantumChannel, phi1: &QuantumChannel) -> Result<QuantumChannel> {
    if phi1.dim != phi2.dim {
        return Err(Error::dims(phi2.dim, phi1.dim));
    }
    let kraus = phi2
        .kraus
        .iter()
        .flat_map(|b| phi1.kraus.iter().map(move |a| b * a))
        .collect();
    QuantumChannel::new(kraus)
}

/// Frobenius distance between Choi matrices.
pub fn choi_distance(phi1: &QuantumChannel, phi2: &QuantumChannel) -> Result<f64> {
    if phi1.dim != phi2.dim {
        return Err(Error::dims(phi1.dim, phi2.dim));
    }
    Ok(phi1.choi().matrix.distance(&phi2.choi().matrix))
}

/// Channel equality: Choi matrices agree entrywise within `tol`.
pub fn channels_equal(phi1: &QuantumChannel, phi2: &QuantumChannel, tol: f64) -> Result<bool> {
    if phi1.dim != phi2.dim {
        return Err(Error::dims(phi1.dim, phi2.dim));
    }
    let diff = &phi1.choi().matrix - &phi2.choi().matrix;
    Ok(diff.max_abs() <= tol)
}

/// Whether the sorted Choi spectra agree within `tol`; a necessary condition
/// for unitary equivalence.
pub fn choi_spectra_equal(phi1: &QuantumChannel, phi2: &QuantumChannel, tol: f64) -> Result<bool> {
    if phi1.dim != phi2.dim {
        return Err(Error::dims(phi1.dim, phi2.dim));
    }
    let s1 = phi1.choi().spectrum()?;
    let s2 = phi2.choi().spectrum()?;
    Ok(s1.iter().zip(&s2).all(|(a, b)| (a - b).abs() <= tol))
}
