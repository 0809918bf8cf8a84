// Two-point measurement statistics, entropy production and the Jarzynski
// and Crooks relations.
//
// Run with `cargo run --example fluctuation_relations`.

use chanrev::reversal::{reverse, ReversalMethod};
use chanrev::thermo::{
    crooks_check, entropy_production, forward_work_distribution, jarzynski_check, transition_table,
    MeasurementPair, DEFAULT_BIN_TOL,
};
use chanrev::zoo;

fn main() -> chanrev::Result<()> {
    let phi = zoo::decaying_channel(0.36)?;
    let rev = reverse(&phi, ReversalMethod::TwoKraus { leading: 0 })?;
    let pair = MeasurementPair::diagonal(&[0.0, 1.0], &[0.0, 1.0], 1.0)?;
    let table = transition_table(&phi, &rev, &pair)?;
    println!("decaying channel, two-Kraus reversal, beta = 1");
    println!("  forward  {:?}", table.forward);
    println!("  backward {:?}", table.backward);
    for a in 0..2 {
        for o in 0..2 {
            match entropy_production(&table, a, o) {
                Ok(ds) => println!("  dS[{a},{o}] = {ds:.6}"),
                Err(e) => println!("  dS[{a},{o}]: {e}"),
            }
        }
    }
    let j = jarzynski_check(&phi, &rev, &pair)?;
    println!("  Jarzynski: lhs {:.15} rhs {:.15} residual {:.1e}", j.lhs, j.rhs, j.residual);

    // A generic example with non-commuting observables.
    let phi = zoo::random_channel(3, 2, 42)?;
    let rev = reverse(&phi, ReversalMethod::Essential)?;
    let hi = zoo::random_hamiltonian(3, 1)?;
    let hf = zoo::random_hamiltonian(3, 2)?;
    let pair = MeasurementPair::new(&hi, &hf, 2.0)?;
    let j = jarzynski_check(&phi, &rev, &pair)?;
    println!("\nrandom 3-level channel, essential reversal, beta = 2");
    println!(
        "  Jarzynski: lhs {:.15} Z_f/Z_i {:.15} residual {:.1e}, <exp(-beta dW)> {:.15}",
        j.lhs, j.rhs, j.residual, j.exp_work_average
    );
    let table = transition_table(&phi, &rev, &pair)?;
    let pf = forward_work_distribution(&table, &pair, DEFAULT_BIN_TOL);
    println!("  forward work distribution ({} atoms):", pf.atoms.len());
    for (w, p) in &pf.atoms {
        println!("    W = {w:>10.6}  P = {p:.6}");
    }
    let c = crooks_check(&phi, &rev, &pair, DEFAULT_BIN_TOL)?;
    println!("  Crooks: dF = {:.6}, max bin residual {:.1e}", c.delta_f, c.max_residual());

    // Bistochastic channel with its dual: no entropy is produced.
    let phi = zoo::random_bistochastic(3, 8)?;
    let rev = reverse(&phi, ReversalMethod::DualBistochastic)?;
    let table = transition_table(&phi, &rev, &pair)?;
    let worst = (0..3)
        .flat_map(|a| (0..3).map(move |o| (a, o)))
        .filter_map(|(a, o)| entropy_production(&table, a, o).ok())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    println!("\nbistochastic channel with dual reversal: max |dS| = {worst:.1e}");
    Ok(())
}
