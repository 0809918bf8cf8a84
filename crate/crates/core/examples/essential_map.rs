// Essential maps of Pauli channels and their place in the probability
// tetrahedron.
//
// The essential map moves the largest probability onto the identity. The
// three remaining weights stay on `X`, `Y`, `Z` in some order, so every
// essential map lands in the part of the tetrahedron where the identity
// weight dominates.
//
// Run with `cargo run --example essential_map`.

use chanrev::reversal::essential_map;
use chanrev::zoo::{self, Pauli, PauliChannelSpec};

fn show(label: &str, probs: [f64; 4], ops: [Pauli; 4]) -> chanrev::Result<()> {
    let spec = PauliChannelSpec::new(probs, ops)?;
    let phi = zoo::pauli_channel(&spec);
    let dec = essential_map(&phi)?;
    let weights = zoo::pauli_weights(&dec.essential)?;
    let before = zoo::pauli_simplex_coordinates(&spec);
    let after = zoo::weights_simplex_coordinates(weights);
    println!("{label}");
    println!("  weights on I, X, Y, Z before: {:?}", spec.weights());
    println!("  weights on I, X, Y, Z after:  {:.6?}", weights);
    println!("  leading singular values:      {:.6?}", dec.leading_singulars());
    println!("  simplex point {:.3?} -> {:.3?}", before, after);
    Ok(())
}

fn main() -> chanrev::Result<()> {
    use Pauli::*;
    show("dominant bit flip", [0.4, 0.3, 0.2, 0.1], [X, I, Z, Y])?;
    show("already essential", [0.7, 0.1, 0.1, 0.1], [I, X, Y, Z])?;
    show("pure Y rotation", [1.0, 0.0, 0.0, 0.0], [Y, I, X, Z])?;
    show("uniform twirl", [0.25; 4], [I, X, Y, Z])?;

    // A non-Pauli example: the decaying channel is already essential.
    let dec = essential_map(&zoo::decaying_channel(0.36)?)?;
    println!("\ndecaying channel: E = diag{:?}", dec.leading_singulars());
    Ok(())
}
