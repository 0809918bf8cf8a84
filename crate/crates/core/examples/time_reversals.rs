// The five reversal constructions side by side.
//
// Run with `cargo run --example time_reversals`.

use chanrev::channel::{choi_distance, compose};
use chanrev::reversal::{essential_map, invariant_state, reverse, ReversalMethod};
use chanrev::zoo;
use chanrev::QuantumChannel;

const METHODS: [ReversalMethod; 5] = [
    ReversalMethod::Essential,
    ReversalMethod::DualBistochastic,
    ReversalMethod::Crooks,
    ReversalMethod::TwoKraus { leading: 0 },
    ReversalMethod::Environmental,
];

fn survey(label: &str, phi: &QuantumChannel) -> chanrev::Result<()> {
    println!("{label}");
    for method in METHODS {
        match reverse(phi, method) {
            Ok(rev) => {
                let twice = reverse(&rev, method);
                let back = twice.map(|t| choi_distance(&t, phi));
                match back {
                    Ok(Ok(d)) => println!("  {method:<22} ok, ||D(R(R(Phi))) - D(Phi)|| = {d:.2e}"),
                    _ => println!("  {method:<22} ok, second application undefined"),
                }
            }
            Err(e) => println!("  {method:<22} {e}"),
        }
    }
    Ok(())
}

fn main() -> chanrev::Result<()> {
    let dec = zoo::decaying_channel(0.36)?;
    survey("decaying channel, p = 0.36", &dec)?;
    let rev = reverse(&dec, ReversalMethod::TwoKraus { leading: 0 })?;
    for (i, k) in rev.kraus().iter().enumerate() {
        println!("  two-kraus reversal, operator {i}: {k:?}");
    }
    println!(
        "  invariant states: forward {:?}, reversed {:?}",
        invariant_state(&dec)?.matrix().diagonal(),
        invariant_state(&rev)?.matrix().diagonal()
    );

    survey("\nrandom bistochastic qubit channel", &zoo::random_bistochastic(2, 3)?)?;
    survey("\nrandom 3-level channel, 3 Kraus operators", &zoo::random_channel(3, 3, 11)?)?;

    // Unitary evolution: the essential reversal undoes it exactly.
    let u = zoo::random_unitary(3, 5)?;
    let psi = zoo::unitary_channel(&u)?;
    let undo = compose(&reverse(&psi, ReversalMethod::Essential)?, &psi)?;
    println!(
        "\nunitary: ||D(R(Psi) o Psi) - D(id)|| = {:.2e}, essential map is the identity: {}",
        choi_distance(&undo, &QuantumChannel::identity(3))?,
        choi_distance(&essential_map(&psi)?.essential, &QuantumChannel::identity(3))? < 1e-10
    );

    // The spectrum of R(Phi) o Phi matches that of Phi_hat composed with itself.
    let phi = zoo::random_channel(2, 2, 3)?;
    let hat = essential_map(&phi)?.essential;
    let lhs = compose(&reverse(&phi, ReversalMethod::Essential)?, &phi)?.choi().spectrum()?;
    let rhs = compose(&hat, &hat)?.choi().spectrum()?;
    println!("\nChoi spectra of R(Phi) o Phi and Phi_hat^2:\n  {lhs:.6?}\n  {rhs:.6?}");
    Ok(())
}
