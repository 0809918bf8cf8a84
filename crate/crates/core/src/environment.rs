//! Environmental (Stinespring) representations
//! `Phi(rho) = Tr_B[U (rho (x) sigma) U^dagger]` and their time inversion.
//!
//! The antiunitary time inversion is complex conjugation in the computational
//! product basis, so `Theta U^dagger Theta^-1 = U^T` and
//! `Theta sigma Theta^-1 = conj(sigma)`. The environmental reversal depends
//! on the representation, which is why [`environmental_reverse`] takes one
//! rather than a channel.

use crate::channel::{DensityMatrix, QuantumChannel};
use crate::error::{Error, Result};
use crate::numkernel::{complete_orthonormal, ComplexMatrix, Subsystem};

/// Unitarity tolerance for a representation.
pub const REPRESENTATION_TOL: f64 = 1e-10;

/// System `A` of dimension `dim_a` coupled to an environment `B` of dimension
/// `dim_b` by `u`, the environment starting in `sigma`. Product indices are
/// `a * dim_b + b`.
#[derive(Debug, Clone)]
pub struct EnvironmentalRepresentation {
    pub dim_a: usize,
    pub dim_b: usize,
    pub u: ComplexMatrix,
    pub sigma: DensityMatrix,
}

impl EnvironmentalRepresentation {
    pub fn new(dim_a: usize, dim_b: usize, u: ComplexMatrix, sigma: DensityMatrix) -> Result<Self> {
        let n = dim_a * dim_b;
        if u.rows() != n || u.cols() != n {
            return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", u.rows(), u.cols())));
        }
        if sigma.dim() != dim_b {
            return Err(Error::dims(dim_b, sigma.dim()));
        }
        let deviation = u.unitarity_defect();
        if deviation > REPRESENTATION_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { dim_a, dim_b, u, sigma })
    }

    /// `Tr_B[u (rho (x) sigma) u^dagger]`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim_a || rho.cols() != self.dim_a {
            return Err(Error::dims(self.dim_a, rho.rows()));
        }
        let joint = rho.kron(self.sigma.matrix());
        let evolved = &(&self.u * &joint) * &self.u.dagger();
        evolved.partial_trace(self.dim_a, self.dim_b, Subsystem::A)
    }

    /// Kraus operators `sqrt(s_j) (1 (x) <i|) u (1 (x) |e_j>)` over the
    /// eigenpairs `(s_j, e_j)` of `sigma` and environment basis states `i`.
    pub fn to_channel(&self) -> Result<QuantumChannel> {
        kraus_of(&self.u, self.sigma.matrix(), self.dim_a, self.dim_b)
    }
}

fn kraus_of(u: &ComplexMatrix, sigma: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<QuantumChannel> {
    let eig = crate::numkernel::herm_eig(sigma)?;
    let mut kraus = Vec::new();
    for (j, &weight) in eig.values.iter().enumerate() {
        if weight <= 1e-15 {
            continue;
        }
        let e = eig.vector(j);
        let amp = weight.sqrt();
        for i in 0..dim_b {
            kraus.push(ComplexMatrix::from_fn(dim_a, dim_a, |a, b| {
                (0..dim_b)
                    .map(|k| u[(a * dim_b + i, b * dim_b + k)] * e[k])
                    .sum::<crate::numkernel::Complex64>()
                    * amp
            }));
        }
    }
    QuantumChannel::new(kraus)
}

/// Stinespring dilation with the environment in `|0><0|`.
///
/// The environment has the dimension of the canonical Kraus rank `k`. The
/// isometry `V|psi> = sum_i A_i|psi> (x) |i>` fills the columns
/// `j * k` of `u`; the remaining columns come from Gram-Schmidt against the
/// standard basis in index order.
pub fn stinespring(phi: &QuantumChannel) -> Result<EnvironmentalRepresentation> {
    let residual = phi.trace_preservation_residual();
    if residual > crate::channel::CHANNEL_TOL {
        return Err(Error::NotTracePreserving { residual });
    }
    let canon = phi.canonical_kraus()?;
    let n = phi.dim();
    let k = canon.kraus_count();
    let total = n * k;

    let mut u = ComplexMatrix::zeros(total, total);
    let mut filled = Vec::with_capacity(n);
    for j in 0..n {
        let col = j * k;
        for (i, a) in canon.kraus().iter().enumerate() {
            for r in 0..n {
                u[(r * k + i, col)] = a[(r, j)];
            }
        }
        filled.push(col);
    }
    complete_orthonormal(&mut u, &filled);

    EnvironmentalRepresentation::new(n, k, u, DensityMatrix::basis(k, 0))
}

/// `Phi^{R_E}(rho) = Tr_B[U~ (rho (x) sigma~) U~^dagger]` with `U~ = U^T` and
/// `sigma~ = conj(sigma)`.
pub fn environmental_reverse(rep: &EnvironmentalRepresentation) -> Result<QuantumChannel> {
    kraus_of(&rep.u.transpose(), &rep.sigma.matrix().conj(), rep.dim_a, rep.dim_b)
}

/// The time-inverted representation itself (`U^T`, `conj(sigma)`).
pub fn time_inverted(rep: &EnvironmentalRepresentation) -> Result<EnvironmentalRepresentation> {
    EnvironmentalRepresentation::new(
        rep.dim_a,
        rep.dim_b,
        rep.u.transpose(),
        DensityMatrix::with_tol(rep.sigma.matrix().conj(), 1e-9)?,
    )
}
