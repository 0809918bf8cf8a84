// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Runs as part of `cargo test` (harness = false).

use std::process::{Command, ExitCode};

use chanrev::channel::{choi_distance, compose, QuantumChannel};
use chanrev::cli::files;
use chanrev::environment::{environmental_reverse, stinespring};
use chanrev::numkernel::{c64, ComplexMatrix};
use chanrev::reversal::{essential_map, reverse, ReversalMethod};
use chanrev::thermo::{
    crooks_from_table, entropy_production, jarzynski_from_table, transition_table, MeasurementPair,
    DEFAULT_BIN_TOL,
};
use chanrev::zoo::{self, Pauli, PauliChannelSpec};
use chanrev::Error;

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(worst: f64, tol: f64, what: &str) -> Outcome {
    Outcome {
        pass: worst < tol,
        detail: format!("{what}: max {worst:.3e} (tol {tol:.0e})"),
    }
}

fn failed(detail: String) -> Outcome {
    Outcome { pass: false, detail }
}

type Check = fn() -> Result<Outcome, Error>;

fn decaying_reversal() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for p in [0.1, 0.36, 0.9, 1.0] {
        let rev = reverse(&zoo::decaying_channel(p)?, ReversalMethod::TwoKraus { leading: 0 })?;
        let up = ComplexMatrix::from_real(&[&[0.0, 0.0], &[p.sqrt(), 0.0]])?;
        let stay = ComplexMatrix::from_real_diag(&[(1.0 - p).sqrt(), 1.0]);
        if rev.kraus_count() != 2 {
            return Ok(failed(format!("p = {p}: {} operators", rev.kraus_count())));
        }
        for (a, b) in rev.kraus()[0].as_slice().iter().zip(up.as_slice()) {
            worst = worst.max((a - b).norm());
        }
        for (a, b) in rev.kraus()[1].as_slice().iter().zip(stay.as_slice()) {
            worst = worst.max((a - b).norm());
        }
    }
    Ok(within(worst, 1e-12, "p in {0.1, 0.36, 0.9, 1}, entrywise"))
}

const METHODS: [ReversalMethod; 5] = [
    ReversalMethod::Essential,
    ReversalMethod::DualBistochastic,
    ReversalMethod::Crooks,
    ReversalMethod::TwoKraus { leading: 0 },
    ReversalMethod::Environmental,
];

/// 100 (channel, method, observables, beta) tuples for which the method is
/// defined, with the reversed channel and measurement pair.
fn fluctuation_tuples() -> Result<Vec<(QuantumChannel, QuantumChannel, MeasurementPair)>, Error> {
    let mut tuples = Vec::new();
    let mut seed = 1000u64;
    while tuples.len() < 100 {
        seed += 1;
        let n = 2 + (seed % 3) as usize;
        let method = METHODS[(seed % 5) as usize];
        let phi = match method {
            ReversalMethod::DualBistochastic => zoo::random_bistochastic(n, seed)?,
            ReversalMethod::TwoKraus { .. } => zoo::random_channel(n, 2, seed)?,
            _ => zoo::random_channel(n, 1 + (seed / 5 % 4) as usize, seed)?,
        };
        let Ok(rev) = reverse(&phi, method) else { continue };
        let beta = 0.1 + 9.9 * ((seed * 7919) % 1000) as f64 / 999.0;
        let pair = MeasurementPair::new(
            &zoo::random_hamiltonian(n, seed ^ 0xa5a5)?,
            &zoo::random_hamiltonian(n, seed ^ 0x5a5a)?,
            beta,
        )?;
        tuples.push((phi, rev, pair));
    }
    Ok(tuples)
}

fn jarzynski() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for (phi, rev, pair) in fluctuation_tuples()? {
        let table = transition_table(&phi, &rev, &pair)?;
        worst = worst.max(jarzynski_from_table(&table, &pair).residual);
    }
    Ok(within(worst, 1e-9, "100 tuples, |lhs - Z_f/Z_i|"))
}

fn crooks() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for (phi, rev, pair) in fluctuation_tuples()? {
        let table = transition_table(&phi, &rev, &pair)?;
        worst = worst.max(crooks_from_table(&table, &pair, DEFAULT_BIN_TOL).max_residual());
    }
    Ok(within(worst, 1e-9, "100 tuples, per-bin residual"))
}

fn bistochastic_entropy() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let n = 2 + (seed % 3) as usize;
        let phi = zoo::random_bistochastic(n, 2000 + seed)?;
        let rev = reverse(&phi, ReversalMethod::DualBistochastic)?;
        let pair = MeasurementPair::new(
            &zoo::random_hamiltonian(n, seed)?,
            &zoo::random_hamiltonian(n, seed + 77)?,
            1.0,
        )?;
        let table = transition_table(&phi, &rev, &pair)?;
        for a in 0..n {
            for o in 0..n {
                if let Ok(ds) = entropy_production(&table, a, o) {
                    if ds.is_finite() {
                        worst = worst.max(ds.abs());
                    }
                }
            }
        }
    }
    Ok(within(worst, 1e-10, "50 channels, finite |dS|"))
}

fn involution() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let n = 2 + (seed % 2) as usize;
        let phi = zoo::random_channel(n, 1 + (seed / 2 % 4) as usize, 3000 + seed)?;
        let twice = reverse(&reverse(&phi, ReversalMethod::Essential)?, ReversalMethod::Essential)?;
        worst = worst.max(choi_distance(&twice, &phi)?);
    }
    Ok(within(worst, 1e-8, "100 channels, N in {2,3}, Choi distance"))
}

fn unitary_case() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let n = 2 + (seed % 4) as usize;
        let psi = zoo::unitary_channel(&zoo::random_unitary(n, 4000 + seed)?)?;
        let id = QuantumChannel::identity(n);
        let undo = compose(&reverse(&psi, ReversalMethod::Essential)?, &psi)?;
        worst = worst.max(choi_distance(&undo, &id)?);
        worst = worst.max(choi_distance(&essential_map(&psi)?.essential, &id)?);
    }
    Ok(within(worst, 1e-10, "20 unitaries, R(Psi) o Psi and essential map vs identity"))
}

fn crooks_consistency() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let phi = zoo::random_bistochastic(2 + (seed % 3) as usize, 5000 + seed)?;
        let a = reverse(&phi, ReversalMethod::Crooks)?;
        let b = reverse(&phi, ReversalMethod::DualBistochastic)?;
        worst = worst.max(choi_distance(&a, &b)?);
    }
    for p in [0.1, 0.36, 0.9, 1.0] {
        match reverse(&zoo::decaying_channel(p)?, ReversalMethod::Crooks) {
            Err(Error::SingularState { .. }) => {}
            other => return Ok(failed(format!("decaying p = {p}: expected SingularState, got {other:?}"))),
        }
    }
    let mut out = within(worst, 1e-8, "20 bistochastic, Crooks vs dual");
    out.detail.push_str("; decaying p > 0 raises SingularState");
    Ok(out)
}

fn pauli_structure() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let mut raw = [0.0; 4];
        for (i, x) in raw.iter_mut().enumerate() {
            *x = 0.01 + ((seed * 31 + i as u64 * 17) * 2654435761 % 1000) as f64 / 1000.0;
        }
        let total: f64 = raw.iter().sum();
        let mut probs = raw.map(|x| x / total);
        probs[3] = 1.0 - probs[0] - probs[1] - probs[2];
        let mut ops = zoo::STANDARD_PAULI_ORDER;
        ops.rotate_left((seed % 4) as usize);
        if seed % 3 == 0 {
            ops.swap(1, 2);
        }
        let spec = PauliChannelSpec::new(probs, ops)?;
        let dec = essential_map(&zoo::pauli_channel(&spec))?;
        let w = zoo::pauli_weights(&dec.essential)?;
        let mut sorted = probs;
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut rest = [w[1], w[2], w[3]];
        rest.sort_by(|a, b| b.total_cmp(a));
        worst = worst.max((w[Pauli::I.index()] - sorted[0]).abs());
        for (x, y) in rest.iter().zip(&sorted[1..]) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(within(worst, 1e-9, "100 specs, weight on I = max p, others a permutation"))
}

fn composition_spectrum() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let n = 2 + (seed % 2) as usize;
        let phi = zoo::random_channel(n, 1 + (seed / 2 % 4) as usize, 6000 + seed)?;
        let hat = essential_map(&phi)?.essential;
        let a = compose(&reverse(&phi, ReversalMethod::Essential)?, &phi)?.choi().spectrum()?;
        let b = compose(&hat, &hat)?.choi().spectrum()?;
        for (x, y) in a.iter().zip(&b) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(within(worst, 1e-8, "50 channels, sorted Choi spectra"))
}

fn stinespring_faithfulness() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let n = 2 + (seed % 3) as usize;
        let phi = zoo::random_channel(n, 1 + (seed % 4) as usize, 7000 + seed)?;
        let rep = stinespring(&phi)?;
        for s in 0..10 {
            let rho = zoo::random_density(n, seed * 10 + s)?;
            let direct = phi.apply(&rho)?;
            worst = worst.max(rep.apply(rho.matrix())?.distance(direct.matrix()));
        }
        if !environmental_reverse(&rep)?.is_trace_preserving() {
            return Ok(failed(format!("seed {seed}: environmental reversal not trace preserving")));
        }
    }
    let mut out = within(worst, 1e-9, "50 channels x 10 states");
    out.detail.push_str("; R_E trace preserving");
    Ok(out)
}

fn canonical_form() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let n = 2 + (seed % 3) as usize;
        let phi = zoo::random_channel(n, 1 + (seed % 4) as usize, 8000 + seed)?;
        let canon = phi.canonical_kraus()?;
        let ops = canon.kraus();
        for i in 0..ops.len() {
            for j in 0..ops.len() {
                if i != j {
                    worst = worst.max(ops[i].hs_inner(&ops[j]).norm());
                }
            }
        }
        worst = worst.max(choi_distance(&canon, &phi)?);
    }
    Ok(within(worst, 1e-9, "100 channels, |Tr A_i A_j^dagger| and Choi distance"))
}

fn cli_contract() -> Result<Outcome, Error> {
    let dir = std::env::temp_dir().join(format!("chanrev-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
    let bin = env!("CARGO_BIN_EXE_chanrev");

    let mut problems = Vec::new();
    for seed in 0..30u64 {
        let n = 1 + (seed % 4) as usize;
        let mut phi = zoo::random_channel(n, (1 + (seed % 3) as usize).min(n * n), 9000 + seed)?;
        if seed % 5 == 0 {
            // Negative zero and an extreme exponent.
            let k = phi.into_kraus();
            let mut a = k[0].clone();
            a[(0, 0)] += c64(1e-300, -0.0);
            phi = QuantumChannel::new(std::iter::once(a).chain(k.into_iter().skip(1)).collect())?;
        }
        let text = files::format_channel(&phi);
        let path = dir.join(format!("c{seed}.json"));
        std::fs::write(&path, &text).map_err(io)?;
        let copy = dir.join(format!("c{seed}-copy.json"));
        let back = files::read_channel(&path, 1e-6).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        std::fs::write(&copy, files::format_channel(&back)).map_err(io)?;
        if std::fs::read(&copy).map_err(io)? != text.as_bytes() {
            problems.push(format!("seed {seed}: round trip changed bytes"));
        }
    }
    let zoo_out = Command::new(bin).args(["zoo", "random", "--n", "3", "--k", "2", "--seed", "5"]).output().map_err(io)?;
    let zoo_text = String::from_utf8_lossy(&zoo_out.stdout).to_string();
    let reparsed = files::parse_channel(&zoo_text, files::FILE_TOL).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    if files::format_channel(&reparsed) != zoo_text {
        problems.push("zoo output not canonical".into());
    }

    let dec = dir.join("decaying.json");
    std::fs::write(&dec, files::format_channel(&zoo::decaying_channel(0.36)?)).map_err(io)?;
    let dec = dec.to_str().expect("UTF-8 temp path").to_string();
    for (method, want) in [("two-kraus", 0), ("crooks", 4), ("dual", 4)] {
        let out = Command::new(bin)
            .args(["reverse", &dec, "--method", method, "--leading", "0"])
            .output()
            .map_err(io)?;
        if out.status.code() != Some(want) {
            problems.push(format!("{method}: exit {:?}, expected {want}", out.status.code()));
        }
        if method == "crooks" && !String::from_utf8_lossy(&out.stderr).contains("invariant state not invertible") {
            problems.push("crooks message does not mention the singular invariant state".into());
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(if problems.is_empty() {
        Outcome {
            pass: true,
            detail: "30 byte-identical round trips; decaying exits two-kraus 0, crooks 4, dual 4".into(),
        }
    } else {
        failed(problems.join("; "))
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 12] = [
        ("decaying-channel reversal", decaying_reversal),
        ("Jarzynski identity", jarzynski),
        ("Crooks identity", crooks),
        ("bistochastic zero entropy", bistochastic_entropy),
        ("essential involution", involution),
        ("unitary case", unitary_case),
        ("Crooks-reversal consistency", crooks_consistency),
        ("essential Pauli structure", pauli_structure),
        ("composition spectrum", composition_spectrum),
        ("Stinespring faithfulness", stinespring_faithfulness),
        ("canonical form", canonical_form),
        ("CLI contract", cli_contract),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check().unwrap_or_else(|e| failed(format!("error: {e}")));
        if !outcome.pass {
            failures += 1;
        }
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("AC{:02} {tag}  {name:<28} {}", i + 1, outcome.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
