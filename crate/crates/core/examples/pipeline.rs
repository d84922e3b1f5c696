//! Generate a basis, check unbiasedness, sample a seeded coin stream, and
//! test it for normality — the README walkthrough.

use beamsplit_core::extract::borel_normality_test;
use beamsplit_core::schwinger::{schwinger_basis, unbiased_check, Basis};
use beamsplit_core::sim::{sample_bits, GapModel, GapSourceConfig};

fn main() -> beamsplit_core::Result<()> {
    let basis = schwinger_basis(8)?;
    assert!(unbiased_check(&Basis::Phases(basis), &Basis::Standard(8))?.passed);

    let stream = sample_bits(&GapSourceConfig {
        model: GapModel::BeamSplitter {
            ports: 2,
            input_port: 0,
        },
        seed: 7,
        length: 1 << 20,
    })?;
    assert!(borel_normality_test(&stream)?.passed);
    println!("generated, sampled and tested {} bits", stream.len());
    Ok(())
}
