// Build a few channels, look at their Choi matrices and canonical Kraus
// forms, and test the usual predicates.
//
// Run with `cargo run --example channel_basics`.

use chanrev::channel::compose;
use chanrev::numkernel::c64;
use chanrev::zoo;
use chanrev::{ComplexMatrix, DensityMatrix, QuantumChannel};

fn main() -> chanrev::Result<()> {
    let dec = zoo::decaying_channel(0.36)?;
    println!("decaying channel, p = 0.36");
    println!("  Kraus operators: {}", dec.kraus_count());
    println!("  Choi spectrum:   {:?}", dec.choi().spectrum()?);
    println!("  canonical d_i:   {:?}", dec.canonical_weights()?);
    println!(
        "  trace preserving {}, unital {}, selfdual {}",
        dec.is_trace_preserving(),
        dec.is_unital(),
        dec.is_selfdual()
    );

    // The excited state decays with probability p.
    let excited = DensityMatrix::basis(2, 1);
    let out = dec.apply(&excited)?;
    println!("  Phi(|1><1|) diagonal: {:?}", out.matrix().diagonal());

    // Canonical Kraus operators are trace-orthogonal.
    let canon = dec.canonical_kraus()?;
    let (a, b) = (&canon.kraus()[0], &canon.kraus()[1]);
    println!("  |Tr A1 A2^dagger| = {:.2e}", a.hs_inner(b).norm());

    // A redundant Kraus list gives the same map.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let split: Vec<ComplexMatrix> = dec
        .kraus()
        .iter()
        .flat_map(|k| [k.scale_real(h), k.scale(c64(0.0, h))])
        .collect();
    let redundant = QuantumChannel::new(split)?;
    println!(
        "  4-operator copy, Choi distance {:.2e}, canonical rank {}",
        chanrev::channel::choi_distance(&dec, &redundant)?,
        redundant.canonical_kraus()?.kraus_count()
    );

    let pauli = zoo::pauli_channel(&zoo::PauliChannelSpec::new(
        [0.4, 0.3, 0.2, 0.1],
        zoo::STANDARD_PAULI_ORDER,
    )?);
    println!("\nPauli channel p = (0.4, 0.3, 0.2, 0.1)");
    println!("  canonical d_i: {:?}", pauli.canonical_weights()?);
    println!(
        "  bistochastic {}, selfdual {}",
        pauli.is_bistochastic(),
        pauli.is_selfdual()
    );

    // Decay twice: the excited population survives with (1 - p)^2.
    let twice = compose(&dec, &dec)?;
    let pop = twice.apply(&excited)?.matrix()[(1, 1)].re;
    println!("\ndecaying twice: excited population {pop:.4} (expected {:.4})", 0.64f64 * 0.64);

    let phi = zoo::random_channel(3, 2, 7)?;
    let dual = phi.dual();
    println!(
        "\nrandom 3-level channel: dual is unital {}, dual trace preserving {}",
        dual.is_unital(),
        dual.is_trace_preserving()
    );
    Ok(())
}
