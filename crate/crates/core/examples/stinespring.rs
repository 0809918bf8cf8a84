// Stinespring dilations and the environmental reversal.
//
// Run with `cargo run --example stinespring`.

use chanrev::channel::{choi_distance, compose};
use chanrev::environment::{environmental_reverse, stinespring};
use chanrev::zoo;
use chanrev::{ComplexMatrix, QuantumChannel};

fn main() -> chanrev::Result<()> {
    let dec = zoo::decaying_channel(0.36)?;
    let rep = stinespring(&dec)?;
    println!(
        "decaying channel: environment dimension {}, joint unitary {}x{}",
        rep.dim_b,
        rep.u.rows(),
        rep.u.cols()
    );
    let rho = zoo::random_density(2, 1)?;
    let direct = dec.apply(&rho)?;
    let dilated = rep.apply(rho.matrix())?;
    println!("  ||Phi(rho) - Tr_B[U (rho x sigma) U^dagger]|| = {:.2e}", direct.matrix().distance(&dilated));

    let rev = environmental_reverse(&rep)?;
    println!("  environmental reversal trace preserving: {}", rev.is_trace_preserving());
    for (i, k) in rev.kraus().iter().enumerate() {
        println!("  operator {i}: {k:?}");
    }

    // Closed system: the reversed evolution, sandwiched by time inversion,
    // returns the initial state.
    let u = zoo::random_unitary(2, 9)?;
    let closed = zoo::unitary_channel(&u)?;
    let rev = environmental_reverse(&stinespring(&closed)?)?;
    let later = closed.apply(&rho)?;
    let recovered = rev.apply_matrix(&later.matrix().conj())?.conj();
    println!(
        "\nclosed system: ||Theta R_E(Theta Psi(rho)) - rho|| = {:.2e}",
        recovered.distance(rho.matrix())
    );
    let (c, s) = (0.6, 0.8);
    let rotation = zoo::unitary_channel(&ComplexMatrix::from_real(&[&[c, -s], &[s, c]])?)?;
    let undo = compose(&environmental_reverse(&stinespring(&rotation)?)?, &rotation)?;
    println!(
        "real rotation: ||D(R_E(Psi) o Psi) - D(id)|| = {:.2e}",
        choi_distance(&undo, &QuantumChannel::identity(2))?
    );

    // Open systems: even for a real dilation of a bistochastic channel, R_E
    // and the dual need not coincide. R_E reads its Kraus operators off
    // columns of U that the dilation fills by completion.
    let pauli = zoo::pauli_channel(&zoo::PauliChannelSpec::new(
        [0.5, 0.3, 0.0, 0.2],
        zoo::STANDARD_PAULI_ORDER,
    )?);
    let rep = stinespring(&pauli)?;
    let real = rep.u.map(|z| chanrev::numkernel::c64(0.0, z.im)).max_abs() < 1e-14;
    let gap = choi_distance(&environmental_reverse(&rep)?, &pauli.dual())?;
    println!("\nPauli channel (I, X, Z): dilation real {real}, ||D(R_E) - D(dual)|| = {gap:.3e}");

    let id = ComplexMatrix::identity(2);
    let dephase = QuantumChannel::new(vec![
        id.scale_real(0.8f64.sqrt()),
        zoo::Pauli::Z.matrix().scale_real(0.2f64.sqrt()),
    ])?;
    let gap = choi_distance(&environmental_reverse(&stinespring(&dephase)?)?, &dephase.dual())?;
    println!("dephasing channel: ||D(R_E) - D(dual)|| = {gap:.3e}");
    Ok(())
}
