//! Two-point-measurement statistics and fluctuation relations.
//!
//! The forward protocol prepares an eigenstate `|a>` of the initial
//! observable, applies `Phi` and measures the final observable; the reversed
//! protocol prepares `|o>`, applies the reversed map and measures the initial
//! observable. Entropy production is
//! `dS[a,o] = ln(<o|Phi(|a><a|)|o> / <a|Phi^R(|o><o|)|a>)` and work is
//! `dW[a,o] = (E_o - E_a) + dS[a,o] / beta`.
//!
//! Because both maps are trace preserving, the Jarzynski and Crooks relations
//! built from these quantities hold identically; [`jarzynski_check`] and
//! [`crooks_check`] report the numerical residuals.

#![allow(clippy::needless_range_loop)]

use crate::channel::{DensityMatrix, QuantumChannel, CHANNEL_TOL};
use crate::error::{Error, Result};
use crate::numkernel::{herm_eig, ComplexMatrix, Complex64, HermEig};

/// Probabilities at or below this value count as zero.
pub const ZERO_PROBABILITY: f64 = 1e-14;

/// Default merging tolerance for work values.
pub const DEFAULT_BIN_TOL: f64 = 1e-9;

/// Hermiticity tolerance (Frobenius) for measured observables.
pub const OBSERVABLE_TOL: f64 = 1e-10;

/// The initial and final measured observables and the inverse temperature.
///
/// Eigenbases come from [`herm_eig`], so degenerate observables get a
/// deterministic (convention-dependent) basis.
#[derive(Debug, Clone)]
pub struct MeasurementPair {
    initial: HermEig,
    final_: HermEig,
    beta: f64,
}

impl MeasurementPair {
    pub fn new(hi: &ComplexMatrix, hf: &ComplexMatrix, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidArgument(format!("inverse temperature {beta} must be positive")));
        }
        if hi.rows() != hf.rows() {
            return Err(Error::dims(hi.rows(), hf.rows()));
        }
        for (name, h) in [("initial", hi), ("final", hf)] {
            let defect = h.hermitian_defect();
            if defect > OBSERVABLE_TOL {
                return Err(Error::InvalidArgument(format!(
                    "{name} observable is not Hermitian (defect {defect:.3e})"
                )));
            }
        }
        Ok(Self {
            initial: herm_eig(hi)?,
            final_: herm_eig(hf)?,
            beta,
        })
    }

    /// Observables diagonal in the computational basis.
    pub fn diagonal(initial: &[f64], final_: &[f64], beta: f64) -> Result<Self> {
        Self::new(
            &ComplexMatrix::from_real_diag(initial),
            &ComplexMatrix::from_real_diag(final_),
            beta,
        )
    }

    pub fn dim(&self) -> usize {
        self.initial.values.len()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `E_a`, ascending.
    pub fn initial_energies(&self) -> &[f64] {
        &self.initial.values
    }

    /// `E_o`, ascending.
    pub fn final_energies(&self) -> &[f64] {
        &self.final_.values
    }

    pub fn initial_state(&self, a: usize) -> Vec<Complex64> {
        self.initial.vector(a)
    }

    pub fn final_state(&self, o: usize) -> Vec<Complex64> {
        self.final_.vector(o)
    }

    /// `ln Z_f - ln Z_i = -beta dF`.
    pub fn log_partition_ratio(&self) -> f64 {
        log_partition(&self.final_.values, self.beta) - log_partition(&self.initial.values, self.beta)
    }

    /// Free-energy difference `dF = -ln(Z_f / Z_i) / beta`.
    pub fn delta_f(&self) -> f64 {
        -self.log_partition_ratio() / self.beta
    }

    /// `<a|rho_i|a>` for the initial Gibbs state.
    pub fn initial_populations(&self) -> Vec<f64> {
        boltzmann(&self.initial.values, self.beta)
    }

    /// `<o|rho_f|o>` for the final Gibbs state.
    pub fn final_populations(&self) -> Vec<f64> {
        boltzmann(&self.final_.values, self.beta)
    }
}

fn log_partition(energies: &[f64], beta: f64) -> f64 {
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    -beta * e0 + energies.iter().map(|e| (-beta * (e - e0)).exp()).sum::<f64>().ln()
}

fn boltzmann(energies: &[f64], beta: f64) -> Vec<f64> {
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = energies.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

/// Gibbs state `exp(-beta h) / Z`.
pub fn gibbs(h: &ComplexMatrix, beta: f64) -> Result<DensityMatrix> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidArgument(format!("inverse temperature {beta} must be positive")));
    }
    let eig = herm_eig(h)?;
    let p = boltzmann(&eig.values, beta);
    let n = p.len();
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        (0..n).map(|k| eig.vectors[(r, k)] * p[k] * eig.vectors[(c, k)].conj()).sum()
    });
    DensityMatrix::new(m)
}

/// Forward and backward transition probabilities, both indexed `[a][o]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    /// `<o|Phi(|a><a|)|o>`.
    pub forward: Vec<Vec<f64>>,
    /// `<a|Phi^R(|o><o|)|a>`.
    pub backward: Vec<Vec<f64>>,
}

impl TransitionTable {
    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    /// Largest deviation of a forward row sum or backward column sum from 1.
    pub fn normalization_defect(&self) -> f64 {
        let n = self.dim();
        let rows = self.forward.iter().map(|r| (r.iter().sum::<f64>() - 1.0).abs());
        let cols = (0..n).map(|o| ((0..n).map(|a| self.backward[a][o]).sum::<f64>() - 1.0).abs());
        rows.chain(cols).fold(0.0, f64::max)
    }
}

fn amplitude(bra: &[Complex64], op: &ComplexMatrix, ket: &[Complex64]) -> Complex64 {
    let n = ket.len();
    (0..n)
        .map(|r| bra[r].conj() * (0..n).map(|c| op[(r, c)] * ket[c]).sum::<Complex64>())
        .sum()
}

fn require_trace_preserving(phi: &QuantumChannel) -> Result<()> {
    let residual = phi.trace_preservation_residual();
    if residual > CHANNEL_TOL {
        return Err(Error::NotTracePreserving { residual });
    }
    Ok(())
}

pub fn transition_table(
    phi: &QuantumChannel,
    phi_r: &QuantumChannel,
    pair: &MeasurementPair,
) -> Result<TransitionTable> {
    let n = pair.dim();
    if phi.dim() != n || phi_r.dim() != n {
        return Err(Error::dims(n, if phi.dim() != n { phi.dim() } else { phi_r.dim() }));
    }
    require_trace_preserving(phi)?;
    require_trace_preserving(phi_r)?;

    let a_states: Vec<_> = (0..n).map(|a| pair.initial_state(a)).collect();
    let o_states: Vec<_> = (0..n).map(|o| pair.final_state(o)).collect();

    let cell = |ch: &QuantumChannel, bra: &[Complex64], ket: &[Complex64]| -> f64 {
        ch.kraus().iter().map(|k| amplitude(bra, k, ket).norm_sqr()).sum()
    };
    let forward = (0..n)
        .map(|a| (0..n).map(|o| cell(phi, &o_states[o], &a_states[a])).collect())
        .collect();
    let backward = (0..n)
        .map(|a| (0..n).map(|o| cell(phi_r, &a_states[a], &o_states[o])).collect())
        .collect();
    Ok(TransitionTable { forward, backward })
}

/// Entropy production `ln(forward / backward)` for one transition.
///
/// `+inf` when only the backward probability vanishes, `-inf` when only the
/// forward one does, [`Error::UndefinedTransition`] when both do.
pub fn entropy_production(table: &TransitionTable, a: usize, o: usize) -> Result<f64> {
    let n = table.dim();
    if a >= n || o >= n {
        return Err(Error::InvalidArgument(format!("transition ({a}, {o}) out of range for {n} levels")));
    }
    let f = table.forward[a][o];
    let b = table.backward[a][o];
    match (f > ZERO_PROBABILITY, b > ZERO_PROBABILITY) {
        (false, false) => Err(Error::UndefinedTransition { a, o }),
        (true, false) => Ok(f64::INFINITY),
        (false, true) => Ok(f64::NEG_INFINITY),
        (true, true) => Ok((f / b).ln()),
    }
}

/// `dW[a,o] = (E_o - E_a) + dS[a,o] / beta`; infinite with `dS`.
pub fn work(pair: &MeasurementPair, table: &TransitionTable, a: usize, o: usize) -> Result<f64> {
    let ds = entropy_production(table, a, o)?;
    let de = pair.final_energies()[o] - pair.initial_energies()[a];
    if ds.is_infinite() {
        return Ok(ds);
    }
    Ok(de + ds / pair.beta())
}

/// Result of [`jarzynski_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JarzynskiCheck {
    /// `sum_{a,o} <a|rho_i|a> e^{beta E_a} backward(a,o) e^{-beta E_o}`.
    pub lhs: f64,
    /// `Z_f / Z_i`.
    pub rhs: f64,
    pub residual: f64,
    /// `<e^{-beta dW}>` over the forward process, with `e^{-beta inf} = 0`.
    /// Differs from `rhs` exactly when some transition is possible backward
    /// but not forward.
    pub exp_work_average: f64,
}

pub fn jarzynski_check(
    phi: &QuantumChannel,
    phi_r: &QuantumChannel,
    pair: &MeasurementPair,
) -> Result<JarzynskiCheck> {
    let table = transition_table(phi, phi_r, pair)?;
    Ok(jarzynski_from_table(&table, pair))
}

pub fn jarzynski_from_table(table: &TransitionTable, pair: &MeasurementPair) -> JarzynskiCheck {
    let n = pair.dim();
    let beta = pair.beta();
    let ei = pair.initial_energies();
    let ef = pair.final_energies();
    let ei0 = ei.iter().copied().fold(f64::INFINITY, f64::min);
    let ef0 = ef.iter().copied().fold(f64::INFINITY, f64::min);
    let p = pair.initial_populations();

    // Energies are shifted by their ground values; the common factor
    // e^{beta (Ei0 - Ef0)} is applied once at the end.
    let mut shifted = 0.0;
    let mut average = 0.0;
    for a in 0..n {
        let up = p[a] * (beta * (ei[a] - ei0)).exp();
        for o in 0..n {
            let down = (-beta * (ef[o] - ef0)).exp();
            shifted += up * table.backward[a][o] * down;
            let f = table.forward[a][o];
            if f > ZERO_PROBABILITY {
                if let Ok(w) = work(pair, table, a, o) {
                    average += p[a] * f * (-beta * w).exp();
                }
            }
        }
    }
    let lhs = shifted * (beta * (ei0 - ef0)).exp();
    let rhs = pair.log_partition_ratio().exp();
    JarzynskiCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        exp_work_average: average,
    }
}

/// Discrete distribution of work values; atoms closer than the binning
/// tolerance are merged. Infinite values are kept as their own atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkDistribution {
    /// `(work, weight)`, sorted by work.
    pub atoms: Vec<(f64, f64)>,
}

impl WorkDistribution {
    pub fn from_atoms(mut atoms: Vec<(f64, f64)>, tol: f64) -> Self {
        atoms.retain(|&(_, w)| w > 0.0);
        atoms.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        let mut last_x = f64::NAN;
        for (x, w) in atoms {
            match merged.last_mut() {
                Some(bin) if x == last_x || (x.is_finite() && (x - last_x) < tol) => bin.1 += w,
                _ => merged.push((x, w)),
            }
            last_x = x;
        }
        Self { atoms: merged }
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }
}

/// `P^F`: atoms `(dW[a,o], <a|rho_i|a> forward(a,o))`.
pub fn forward_work_distribution(table: &TransitionTable, pair: &MeasurementPair, tol: f64) -> WorkDistribution {
    let p = pair.initial_populations();
    let mut atoms = Vec::new();
    for a in 0..pair.dim() {
        for o in 0..pair.dim() {
            let f = table.forward[a][o];
            if f > ZERO_PROBABILITY {
                let w = work(pair, table, a, o).expect("forward probability is positive");
                atoms.push((w, p[a] * f));
            }
        }
    }
    WorkDistribution::from_atoms(atoms, tol)
}

/// `P^R`: atoms `(-dW[a,o], <o|rho_f|o> backward(a,o))`.
pub fn reversed_work_distribution(table: &TransitionTable, pair: &MeasurementPair, tol: f64) -> WorkDistribution {
    let q = pair.final_populations();
    let mut atoms = Vec::new();
    for a in 0..pair.dim() {
        for o in 0..pair.dim() {
            let b = table.backward[a][o];
            if b > ZERO_PROBABILITY {
                let w = work(pair, table, a, o).expect("backward probability is positive");
                atoms.push((-w, q[o] * b));
            }
        }
    }
    WorkDistribution::from_atoms(atoms, tol)
}

/// One work bin of the Crooks comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrooksBin {
    /// Work value of the bin (its smallest atom); `+inf` for the bin of
    /// transitions impossible in reverse.
    pub work: f64,
    /// `P^F(x)`.
    pub forward: f64,
    /// `P^R(-x)`.
    pub reversed: f64,
    /// `|P^R(-x) - sum over atoms of e^{-beta (x_atom - dF)} P^F(x_atom)|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrooksCheck {
    pub bins: Vec<CrooksBin>,
    pub delta_f: f64,
    /// Transitions with `dW = +inf` (possible forward, impossible in reverse).
    /// Their forward weight sits in the `+inf` bin with zero reversed partner.
    pub infinite_work_atoms: Vec<(usize, usize)>,
    /// Reversed weight of transitions impossible in the forward direction
    /// (`dW = -inf`); the relation says nothing about them, so they are left
    /// out of the bins.
    pub excluded_reversed_weight: f64,
}

impl CrooksCheck {
    pub fn max_residual(&self) -> f64 {
        self.bins.iter().map(|b| b.residual).fold(0.0, f64::max)
    }
}

pub fn crooks_check(
    phi: &QuantumChannel,
    phi_r: &QuantumChannel,
    pair: &MeasurementPair,
    bin_tol: f64,
) -> Result<CrooksCheck> {
    let table = transition_table(phi, phi_r, pair)?;
    Ok(crooks_from_table(&table, pair, bin_tol))
}

pub fn crooks_from_table(table: &TransitionTable, pair: &MeasurementPair, bin_tol: f64) -> CrooksCheck {
    let n = pair.dim();
    let beta = pair.beta();
    let log_ratio = pair.log_partition_ratio();
    let p = pair.initial_populations();
    let q = pair.final_populations();

    // (x, forward weight, reversed weight, predicted reversed weight)
    let mut finite: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut infinite_work_atoms = Vec::new();
    let mut infinite_forward = 0.0;
    let mut excluded_reversed_weight = 0.0;

    for a in 0..n {
        for o in 0..n {
            let f = table.forward[a][o];
            let b = table.backward[a][o];
            let pf = p[a] * f;
            let pr = q[o] * b;
            match work(pair, table, a, o) {
                Ok(x) if x.is_finite() => {
                    // e^{-beta (x - dF)} = e^{-beta x - ln(Z_f / Z_i)}
                    let predicted = (-beta * x - log_ratio).exp() * pf;
                    finite.push((x, pf, pr, predicted));
                }
                Ok(x) if x > 0.0 => {
                    infinite_work_atoms.push((a, o));
                    infinite_forward += pf;
                }
                Ok(_) => excluded_reversed_weight += pr,
                Err(_) => {}
            }
        }
    }

    finite.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut bins: Vec<(CrooksBin, f64)> = Vec::new();
    let mut last_x = f64::NAN;
    for (x, pf, pr, predicted) in finite {
        match bins.last_mut() {
            Some((bin, pred)) if (x - last_x) < bin_tol => {
                bin.forward += pf;
                bin.reversed += pr;
                *pred += predicted;
            }
            _ => bins.push((
                CrooksBin {
                    work: x,
                    forward: pf,
                    reversed: pr,
                    residual: 0.0,
                },
                predicted,
            )),
        }
        last_x = x;
    }
    let mut bins: Vec<CrooksBin> = bins
        .into_iter()
        .map(|(mut bin, predicted)| {
            bin.residual = (bin.reversed - predicted).abs();
            bin
        })
        .collect();
    if !infinite_work_atoms.is_empty() {
        bins.push(CrooksBin {
            work: f64::INFINITY,
            forward: infinite_forward,
            reversed: 0.0,
            residual: 0.0,
        });
    }

    CrooksCheck {
        bins,
        delta_f: pair.delta_f(),
        infinite_work_atoms,
        excluded_reversed_weight,
    }
}
