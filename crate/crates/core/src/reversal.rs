//! Time reversals of quantum channels.
//!
//! Five constructions are available through [`reverse`]:
//!
//! | method | Kraus operators of the reversed map | defined when |
//! |---|---|---|
//! | [`ReversalMethod::Essential`] | `{A_1^dagger, Y A_2 Y, ..., Y A_k Y}`, `Y = V_2 V_1^dagger` | always |
//! | [`ReversalMethod::DualBistochastic`] | `{A_i^dagger}` | the channel is unital |
//! | [`ReversalMethod::Crooks`] | `{rho^1/2 A_i^dagger rho^-1/2}` | the invariant state is unique and invertible |
//! | [`ReversalMethod::TwoKraus`] | `{A_l^dagger, sqrt(1 - A_l A_l^dagger)}` | exactly two Kraus operators |
//! | [`ReversalMethod::Environmental`] | see [`crate::environment`] | always |
//!
//! The essential reversal is built on the [`essential_map`]: the canonical
//! Kraus operators are ordered by norm, the leading one is decomposed as
//! `A_1 = V_1 E V_2^dagger`, and every operator is rotated to
//! `B_i = V_1^dagger A_i V_2`. The channel is then
//! `Psi_{V_1^dagger} o Phi_hat o Psi_{V_2}` and its reversal swaps the outer
//! unitaries: `Psi_{V_2} o Phi_hat o Psi_{V_1^dagger}`.
//!
//! When the Choi spectrum or the singular values of `A_1` are degenerate the
//! decomposition is not unique; the choices made here are deterministic
//! conventions.

use std::fmt;
use std::str::FromStr;

use crate::channel::{compose, DensityMatrix, QuantumChannel, CHANNEL_TOL};
use crate::environment::{environmental_reverse, stinespring};
use crate::error::{Error, Result};
use crate::numkernel::{
    leading_index, psd_inv_sqrt, psd_sqrt, svd, ComplexMatrix, Complex64,
};
use crate::zoo::unitary_channel;

/// Singular values of the leading operator closer than this (relative to the
/// largest) make it proportional to a unitary.
const UNITARY_PROPORTIONAL_TOL: f64 = 1e-10;

/// Eigenvalues of the superoperator within this distance of 1 span the
/// fixed-point space.
pub const FIXED_POINT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReversalMethod {
    /// Intrinsic reversal through the essential map.
    Essential,
    /// The dual map; only for unital channels.
    DualBistochastic,
    /// Conjugation by the invariant state; needs an invertible one.
    Crooks,
    /// For two-operator channels, with the given operator as the leading one.
    TwoKraus { leading: usize },
    /// Time inversion of a Stinespring dilation.
    Environmental,
}

impl fmt::Display for ReversalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReversalMethod::Essential => write!(f, "essential"),
            ReversalMethod::DualBistochastic => write!(f, "dual"),
            ReversalMethod::Crooks => write!(f, "crooks"),
            ReversalMethod::TwoKraus { leading } => write!(f, "two-kraus(leading={leading})"),
            ReversalMethod::Environmental => write!(f, "environmental"),
        }
    }
}

impl FromStr for ReversalMethod {
    type Err = Error;

    /// Parses `essential`, `dual`, `crooks`, `environmental` and
    /// `two-kraus` / `two-kraus:<leading>` (leading defaults to 0).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "essential" => Ok(Self::Essential),
            "dual" | "dual-bistochastic" => Ok(Self::DualBistochastic),
            "crooks" => Ok(Self::Crooks),
            "environmental" => Ok(Self::Environmental),
            "two-kraus" => Ok(Self::TwoKraus { leading: 0 }),
            other => match other.strip_prefix("two-kraus:") {
                Some(idx) => idx
                    .parse()
                    .map(|leading| Self::TwoKraus { leading })
                    .map_err(|_| Error::InvalidArgument(format!("bad leading index '{idx}'"))),
                None => Err(Error::InvalidArgument(format!("unknown reversal method '{other}'"))),
            },
        }
    }
}

/// `Phi = Psi_{V_1} o Phi_hat o Psi_{V_2^dagger}` together with the Kraus
/// list it was derived from.
#[derive(Debug, Clone)]
pub struct EssentialDecomposition {
    /// The essential map; its first Kraus operator is `E`, diagonal with
    /// nonnegative descending entries.
    pub essential: QuantumChannel,
    pub v1: ComplexMatrix,
    pub v2: ComplexMatrix,
    /// Canonical Kraus operators of the input, norm-ordered, with the leading
    /// one rephased as used for the decomposition.
    pub ordered: QuantumChannel,
}

impl EssentialDecomposition {
    /// The diagonal of `E`.
    pub fn leading_singulars(&self) -> Vec<f64> {
        self.essential.kraus()[0].diagonal().iter().map(|z| z.re).collect()
    }

    /// `Psi_{V_1} o Phi_hat o Psi_{V_2^dagger}`, which should equal the
    /// original channel.
    pub fn reconstruct(&self) -> Result<QuantumChannel> {
        let outer = unitary_channel(&self.v1)?;
        let inner = unitary_channel(&self.v2.dagger())?;
        compose(&outer, &compose(&self.essential, &inner)?)
    }

    /// `Psi_{V_2} o Phi_hat o Psi_{V_1^dagger}`, the essential reversal in
    /// composition form.
    pub fn reversed_by_composition(&self) -> Result<QuantumChannel> {
        let outer = unitary_channel(&self.v2)?;
        let inner = unitary_channel(&self.v1.dagger())?;
        compose(&outer, &compose(&self.essential, &inner)?)
    }

    /// `{A_1^dagger, Y A_2 Y, ..., Y A_k Y}` with `Y = V_2 V_1^dagger`.
    pub fn reversed(&self) -> QuantumChannel {
        let y = &self.v2 * &self.v1.dagger();
        let kraus = self
            .ordered
            .kraus()
            .iter()
            .enumerate()
            .map(|(i, a)| if i == 0 { a.dagger() } else { &(&y * a) * &y })
            .collect();
        QuantumChannel::new(kraus).expect("same shapes as the input")
    }
}

/// Common phase for a singular pair `(u, v)` that makes `u_k v_m` real
/// positive (`k`, `m` the leading indices) and `Re(u_k) > 0`. The rule is
/// symmetric under exchanging `u` and `v`, which is what the decomposition of
/// `A^dagger` does to the pairs of `A`.
fn pair_phase(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let (Some(k), Some(m)) = (leading_index(u), leading_index(v)) else {
        return Complex64::new(1.0, 0.0);
    };
    let prod = u[k] * v[m];
    if prod.norm() == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut phase = Complex64::from_polar(1.0, -prod.arg() / 2.0);
    let uk = u[k] * phase;
    if uk.re < 0.0 || (uk.re == 0.0 && uk.im < 0.0) {
        phase = -phase;
    }
    phase
}

/// Essential map of a channel.
///
/// The canonical Kraus form is computed first (so any Kraus list of the same
/// map gives the same result). The leading operator is rephased so that its
/// trace is real and positive, then decomposed by SVD. If it is proportional
/// to a unitary, `V_1` is that unitary (its polar factor) and `V_2 = 1`.
/// Otherwise singular pairs get the phase of [`pair_phase`].
pub fn essential_map(phi: &QuantumChannel) -> Result<EssentialDecomposition> {
    let n = phi.dim();
    let mut ordered = phi.canonical_kraus()?.into_kraus();

    let tr = ordered[0].trace();
    if tr.norm() > 1e-12 * ordered[0].frobenius_norm().max(1e-300) {
        let phase = tr.conj() / tr.norm();
        ordered[0] = ordered[0].scale(phase);
    }

    let dec = svd(&ordered[0])?;
    let s_max = dec.singulars[0];
    let s_min = dec.singulars[n - 1];

    let (v1, v2) = if s_max > 0.0 && s_max - s_min <= UNITARY_PROPORTIONAL_TOL * s_max {
        (&dec.left * &dec.right.dagger(), ComplexMatrix::identity(n))
    } else {
        let mut left = dec.left.clone();
        let mut right = dec.right.clone();
        for j in 0..n {
            let u = left.column(j);
            let v = right.column(j);
            let ph = pair_phase(&u, &v);
            left.set_column(j, &u.iter().map(|z| z * ph).collect::<Vec<_>>());
            right.set_column(j, &v.iter().map(|z| z * ph).collect::<Vec<_>>());
        }
        (left, right)
    };

    let e = ComplexMatrix::from_real_diag(&dec.singulars);
    let v1_dag = v1.dagger();
    let kraus: Vec<ComplexMatrix> = ordered
        .iter()
        .enumerate()
        .map(|(i, a)| if i == 0 { e.clone() } else { &(&v1_dag * a) * &v2 })
        .collect();

    Ok(EssentialDecomposition {
        essential: QuantumChannel::new(kraus)?,
        v1,
        v2,
        ordered: QuantumChannel::new(ordered)?,
    })
}

/// Reverses a trace-preserving channel with the given method.
pub fn reverse(phi: &QuantumChannel, method: ReversalMethod) -> Result<QuantumChannel> {
    let residual = phi.trace_preservation_residual();
    if residual > CHANNEL_TOL {
        return Err(Error::NotTracePreserving { residual });
    }
    match method {
        ReversalMethod::Essential => Ok(essential_map(phi)?.reversed()),
        ReversalMethod::DualBistochastic => {
            let residual = phi.unitality_residual();
            if residual > CHANNEL_TOL {
                return Err(Error::NotUnital { residual });
            }
            Ok(phi.dual())
        }
        ReversalMethod::Crooks => crooks_reverse(phi),
        ReversalMethod::TwoKraus { leading } => two_kraus_reverse(phi, leading),
        ReversalMethod::Environmental => environmental_reverse(&stinespring(phi)?),
    }
}

fn crooks_reverse(phi: &QuantumChannel) -> Result<QuantumChannel> {
    let rho = invariant_state(phi)?;
    let root = psd_sqrt(rho.matrix())?;
    let inv_root = psd_inv_sqrt(rho.matrix())?;
    let kraus = phi
        .kraus()
        .iter()
        .map(|a| &(&root * &a.dagger()) * &inv_root)
        .collect();
    QuantumChannel::new(kraus)
}

fn two_kraus_reverse(phi: &QuantumChannel, leading: usize) -> Result<QuantumChannel> {
    if phi.kraus_count() != 2 {
        return Err(Error::WrongKrausCount { found: phi.kraus_count() });
    }
    if leading > 1 {
        return Err(Error::LeadingIndexOutOfRange { index: leading, count: 2 });
    }
    let a = &phi.kraus()[leading];
    let complement = &ComplexMatrix::identity(phi.dim()) - &(a * &a.dagger());
    let second = psd_sqrt(&complement.hermitize())?;
    QuantumChannel::new(vec![a.dagger(), second])
}

/// The fixed point `rho = Phi(rho)` of a trace-preserving channel.
///
/// The null space of `S - 1` (with `S` the superoperator on row-major
/// vectorized operators) is read off its SVD; singular values at or below
/// [`FIXED_POINT_TOL`] count towards the fixed-point space. The null vector
/// is reshaped, divided by its trace, hermitized and renormalized.
pub fn invariant_state(phi: &QuantumChannel) -> Result<DensityMatrix> {
    let residual = phi.trace_preservation_residual();
    if residual > CHANNEL_TOL {
        return Err(Error::NotTracePreserving { residual });
    }
    let n = phi.dim();
    let generator = &phi.superoperator() - &ComplexMatrix::identity(n * n);
    let dec = svd(&generator)?;
    let dimension = dec.singulars.iter().filter(|&&s| s <= FIXED_POINT_TOL).count();
    if dimension > 1 {
        return Err(Error::NonUniqueFixedPoint { dimension });
    }
    let null = dec.right.column(n * n - 1);
    let x = ComplexMatrix::from_row_major(n, n, &null)?;
    let tr = x.trace();
    if tr.norm() < 1e-12 {
        return Err(Error::InvalidState("fixed point has zero trace".into()));
    }
    let x = x.scale(tr.inv()).hermitize();
    let x = x.scale_real(1.0 / x.trace().re);
    DensityMatrix::with_tol(x, FIXED_POINT_TOL)
}
