//! Named channels and seeded random generators.
//!
//! The random ensembles are fixed: ChaCha8 seeded with `seed_from_u64`,
//! standard normal draws through `rand_distr`, entries drawn row by row with
//! the real part first. Changing any of that changes every seeded fixture, so
//! treat it as part of the public contract.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::channel::{DensityMatrix, QuantumChannel};
use crate::error::{Error, Result};
use crate::numkernel::{c64, herm_eig, ComplexMatrix, Complex64};

/// Unitarity tolerance (Frobenius) for [`unitary_channel`].
pub const UNITARY_TOL: f64 = 1e-10;

/// One of the four single-qubit Pauli operators, `I` being the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

pub const STANDARD_PAULI_ORDER: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

impl Pauli {
    pub fn matrix(self) -> ComplexMatrix {
        let (o, l, i) = (c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 1.0));
        let rows = match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        };
        ComplexMatrix::from_fn(2, 2, |r, c| rows[r][c])
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Vertex of the regular tetrahedron used for simplex coordinates.
    pub fn vertex(self) -> [f64; 3] {
        match self {
            Pauli::I => [1.0, 1.0, 1.0],
            Pauli::X => [1.0, -1.0, -1.0],
            Pauli::Y => [-1.0, 1.0, -1.0],
            Pauli::Z => [-1.0, -1.0, 1.0],
        }
    }
}

impl std::str::FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" | "ID" => Ok(Pauli::I),
            "X" => Ok(Pauli::X),
            "Y" => Ok(Pauli::Y),
            "Z" => Ok(Pauli::Z),
            other => Err(Error::InvalidArgument(format!("unknown Pauli operator '{other}'"))),
        }
    }
}

/// Probabilities attached to a permutation of `{I, X, Y, Z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannelSpec {
    probs: [f64; 4],
    ops: [Pauli; 4],
}

impl PauliChannelSpec {
    pub fn new(probs: [f64; 4], ops: [Pauli; 4]) -> Result<Self> {
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbabilities(format!("entry {p} is negative or not finite")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProbabilities(format!("entries sum to {total}, not 1")));
        }
        let mut sorted = ops;
        sorted.sort();
        if sorted != STANDARD_PAULI_ORDER {
            return Err(Error::InvalidProbabilities(format!(
                "operators {ops:?} are not a permutation of I, X, Y, Z"
            )));
        }
        Ok(Self { probs, ops })
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    pub fn ops(&self) -> [Pauli; 4] {
        self.ops
    }

    /// Weights indexed by `I, X, Y, Z`.
    pub fn weights(&self) -> [f64; 4] {
        let mut w = [0.0; 4];
        for (p, op) in self.probs.iter().zip(self.ops) {
            w[op.index()] = *p;
        }
        w
    }
}

/// `rho -> sum_j p_j s_j rho s_j`; operators with zero probability are left
/// out of the Kraus list.
pub fn pauli_channel(spec: &PauliChannelSpec) -> QuantumChannel {
    let kraus: Vec<ComplexMatrix> = spec
        .probs
        .iter()
        .zip(spec.ops)
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, op)| op.matrix().scale_real(p.sqrt()))
        .collect();
    QuantumChannel::new(kraus).expect("Pauli operators are 2x2 and at least one p is positive")
}

/// Single-qubit decay `|1> -> |0>` with probability `p`. The Kraus list is
/// `{[[0, sqrt p], [0, 0]], diag(1, sqrt(1-p))}` in that order, zero jump
/// operator included when `p = 0`.
pub fn decaying_channel(p: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("decay probability {p} outside [0, 1]")));
    }
    let jump = ComplexMatrix::from_real(&[&[0.0, p.sqrt()], &[0.0, 0.0]])?;
    let stay = ComplexMatrix::from_real_diag(&[1.0, (1.0 - p).sqrt()]);
    QuantumChannel::new(vec![jump, stay])
}

/// Maximally depolarizing channel `rho -> Tr(rho) 1/N`, with the `N^2` Kraus
/// operators `|i><j| / sqrt N`.
pub fn depolarizing_channel(n: usize) -> Result<QuantumChannel> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let mut kraus = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut a = ComplexMatrix::zeros(n, n);
            a[(i, j)] = c64(scale, 0.0);
            kraus.push(a);
        }
    }
    QuantumChannel::new(kraus)
}

pub fn unitary_channel(u: &ComplexMatrix) -> Result<QuantumChannel> {
    let deviation = u.unitarity_defect();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    QuantumChannel::new(vec![u.clone()])
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re, im)
    })
}

/// Modified Gram-Schmidt on the columns, applied twice.
fn orthonormalize_columns(m: &mut ComplexMatrix) -> Result<()> {
    let (rows, cols) = (m.rows(), m.cols());
    for j in 0..cols {
        let mut v = m.column(j);
        for _ in 0..2 {
            for k in 0..j {
                let b = m.column(k);
                let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(&b) {
                    *vi -= overlap * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return Err(Error::InvalidArgument(format!(
                "degenerate Gaussian draw in a {rows}x{cols} orthonormalization"
            )));
        }
        let v: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        m.set_column(j, &v);
    }
    Ok(())
}

/// Random channel with `k` Kraus operators: a Gaussian `(n k) x n` matrix is
/// orthonormalized into an isometry and cut into `k` stacked `n x n` blocks.
pub fn random_channel(n: usize, k: usize, seed: u64) -> Result<QuantumChannel> {
    if n == 0 || k == 0 || k > n * n {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and 1 <= k <= n^2, got n = {n}, k = {k}"
        )));
    }
    let mut w = gaussian(&mut rng(seed), n * k, n);
    orthonormalize_columns(&mut w)?;
    let kraus = (0..k)
        .map(|i| ComplexMatrix::from_fn(n, n, |r, c| w[(i * n + r, c)]))
        .collect();
    QuantumChannel::new(kraus)
}

/// Haar-random unitary: Gram-Schmidt (QR with positive `R` diagonal) of a
/// complex Gaussian matrix.
pub fn random_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut g = gaussian(&mut rng(seed), n, n);
    orthonormalize_columns(&mut g)?;
    Ok(g)
}

/// Random mixture of `n + 1` random unitary conjugations with exponential
/// (flat Dirichlet) weights.
pub fn random_bistochastic(n: usize, seed: u64) -> Result<QuantumChannel> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut r = rng(seed);
    let m = n + 1;
    let draws: Vec<f64> = (0..m).map(|_| r.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    let unitary_seeds: Vec<u64> = (0..m).map(|_| r.random()).collect();
    let kraus = draws
        .iter()
        .zip(unitary_seeds)
        .map(|(w, s)| Ok(random_unitary(n, s)?.scale_real((w / total).sqrt())))
        .collect::<Result<Vec<_>>>()?;
    QuantumChannel::new(kraus)
}

/// Random mixed state `G G^dagger / Tr(G G^dagger)` for a Gaussian `G`.
pub fn random_density(n: usize, seed: u64) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let g = gaussian(&mut rng(seed), n, n);
    let m = &g * &g.dagger();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr))
}

/// Random Hermitian observable with ground energy 0 and spectral width 1: a
/// GUE draw, shifted and rescaled. For `n = 1` the zero matrix.
pub fn random_hamiltonian(n: usize, seed: u64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let g = gaussian(&mut rng(seed), n, n);
    let h = (&g + &g.dagger()).scale_real(0.5);
    let eig = herm_eig(&h)?;
    let lo = eig.values[0];
    let hi = *eig.values.last().expect("non-empty");
    if n == 1 || hi - lo <= 0.0 {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let shifted = &h - &ComplexMatrix::identity(n).scale_real(lo);
    Ok(shifted.scale_real(1.0 / (hi - lo)).hermitize())
}

/// Pauli weights `w_s = sum_k |Tr(s A_k)|^2 / 4` of a qubit channel, indexed
/// `I, X, Y, Z`. For a Pauli channel these are its probabilities.
pub fn pauli_weights(phi: &QuantumChannel) -> Result<[f64; 4]> {
    if phi.dim() != 2 {
        return Err(Error::dims(2, phi.dim()));
    }
    let mut w = [0.0; 4];
    for op in STANDARD_PAULI_ORDER {
        let s = op.matrix();
        w[op.index()] = phi
            .kraus()
            .iter()
            .map(|a| (&s * a).trace().norm_sqr() / 4.0)
            .sum();
    }
    Ok(w)
}

/// Cartesian position of a Pauli channel in the regular tetrahedron with
/// vertices `I = (1,1,1)`, `X = (1,-1,-1)`, `Y = (-1,1,-1)`, `Z = (-1,-1,1)`.
/// The maximally depolarizing channel sits at the origin.
pub fn pauli_simplex_coordinates(spec: &PauliChannelSpec) -> [f64; 3] {
    weights_simplex_coordinates(spec.weights())
}

/// Tetrahedron position of weights indexed `I, X, Y, Z`, e.g. the output of
/// [`pauli_weights`].
pub fn weights_simplex_coordinates(weights: [f64; 4]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (w, op) in weights.iter().zip(STANDARD_PAULI_ORDER) {
        for (o, v) in out.iter_mut().zip(op.vertex()) {
            *o += w * v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::channels_equal;

    #[test]
    fn pauli_identity_spec() {
        let spec = PauliChannelSpec::new([1.0, 0.0, 0.0, 0.0], STANDARD_PAULI_ORDER).unwrap();
        let phi = pauli_channel(&spec);
        assert!(channels_equal(&phi, &QuantumChannel::identity(2), 1e-15).unwrap());
        assert_eq!(pauli_simplex_coordinates(&spec), Pauli::I.vertex());
    }

    #[test]
    fn uniform_pauli_is_depolarizing() {
        let spec = PauliChannelSpec::new([0.25; 4], STANDARD_PAULI_ORDER).unwrap();
        let phi = pauli_channel(&spec);
        assert!(phi.choi().matrix.approx_eq(&ComplexMatrix::identity(4).scale_real(0.5), 1e-15));
        assert_eq!(pauli_simplex_coordinates(&spec), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn pauli_channels_are_bistochastic() {
        let spec = PauliChannelSpec::new([0.1, 0.2, 0.3, 0.4], [Pauli::Z, Pauli::I, Pauli::Y, Pauli::X]).unwrap();
        assert!(pauli_channel(&spec).is_bistochastic());
        let w = pauli_weights(&pauli_channel(&spec)).unwrap();
        for (got, want) in w.iter().zip(spec.weights()) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_spec_validation() {
        assert!(PauliChannelSpec::new([0.5, 0.5, 0.1, 0.0], STANDARD_PAULI_ORDER).is_err());
        assert!(PauliChannelSpec::new([1.1, -0.1, 0.0, 0.0], STANDARD_PAULI_ORDER).is_err());
        assert!(PauliChannelSpec::new([0.25; 4], [Pauli::I, Pauli::I, Pauli::Y, Pauli::Z]).is_err());
    }

    #[test]
    fn decaying_edge_cases() {
        let p0 = decaying_channel(0.0).unwrap().canonical_kraus().unwrap();
        assert!(channels_equal(&p0, &QuantumChannel::identity(2), 1e-14).unwrap());

        let full = decaying_channel(1.0).unwrap();
        let out = full.apply(&DensityMatrix::basis(2, 1)).unwrap();
        assert!(out.matrix().approx_eq(&ComplexMatrix::basis_projector(2, 0), 1e-15));

        let d = decaying_channel(0.36).unwrap();
        assert_eq!(d.kraus()[0][(0, 1)].re, 0.6);
        assert_eq!(d.kraus()[1][(1, 1)].re, 0.8);
        assert_eq!(d.kraus()[1][(0, 0)].re, 1.0);

        assert!(decaying_channel(1.5).is_err());
        assert!(decaying_channel(-0.1).is_err());
    }

    #[test]
    fn decaying_is_non_unital_for_positive_p() {
        for p in [1e-6, 0.1, 0.5, 1.0] {
            assert!(!decaying_channel(p).unwrap().is_unital());
        }
    }

    #[test]
    fn depolarizing_rank_and_action() {
        let phi = depolarizing_channel(3).unwrap();
        assert_eq!(phi.canonical_kraus().unwrap().kraus_count(), 9);
        let rho = random_density(3, 4).unwrap();
        assert!(phi
            .apply(&rho)
            .unwrap()
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(3).matrix(), 1e-15));
    }

    #[test]
    fn unitary_channel_rank_one() {
        let u = random_unitary(3, 1).unwrap();
        assert_eq!(unitary_channel(&u).unwrap().canonical_kraus().unwrap().kraus_count(), 1);
        let id = unitary_channel(&ComplexMatrix::identity(2)).unwrap();
        assert!(channels_equal(&id, &QuantumChannel::identity(2), 0.0).unwrap());
        assert!(matches!(
            unitary_channel(&ComplexMatrix::from_real_diag(&[1.0, 0.5])),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn random_generators_are_valid_and_deterministic() {
        let phi = random_channel(2, 4, 7).unwrap();
        assert!(phi.is_trace_preserving_tol(1e-12));
        assert_eq!(phi, random_channel(2, 4, 7).unwrap());
        assert_ne!(phi, random_channel(2, 4, 8).unwrap());

        let b = random_bistochastic(3, 1).unwrap();
        assert!(b.is_bistochastic());
        assert_eq!(b, random_bistochastic(3, 1).unwrap());

        let u = random_unitary(4, 3).unwrap();
        assert!(u.is_unitary(1e-13));

        let h = random_hamiltonian(4, 2).unwrap();
        let eig = herm_eig(&h).unwrap();
        assert!(eig.values[0].abs() < 1e-14);
        assert!((eig.values[3] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_channel_rejects_bad_rank() {
        assert!(random_channel(2, 5, 0).is_err());
        assert!(random_channel(2, 0, 0).is_err());
        assert!(random_channel(0, 1, 0).is_err());
    }

    #[test]
    fn random_channel_rank_bounded() {
        for seed in 0..10 {
            let phi = random_channel(2, 4, seed).unwrap();
            assert!(phi.canonical_kraus().unwrap().kraus_count() <= 4);
        }
    }
}
