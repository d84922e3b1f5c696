//! Beam splitters as unitaries on single-quantum states, and seeded sampling
//! of the classical "gap" bit sources.
//!
//! An `n`-port lossless splitter is the normalized form of a complex Hadamard
//! matrix, which turns any basis-state input into an equal-weight
//! superposition of all output ports. Sampling an output port per quantum
//! yields the coded `0`/`1` (or `0..n-1`) streams; the two Bernoulli sources
//! model outcome coding for symmetry-breaking and spontaneous-emission gaps,
//! which carry no quantitative microphysics beyond their bias.

use crate::error::{Error, Result};
use crate::mat::{PhaseMatrix, StateVector, UnitaryDense};
use crate::report::TestReport;
use crate::rng::SplitMix64;
use crate::schwinger::{is_complex_hadamard, schwinger_basis};
use crate::stream::{BitStream, StreamMeta};
use crate::{TOL, TOL_TIGHT};

/// An `n`-port beam splitter backed by a verified unitary.
#[derive(Clone, Debug)]
pub struct BeamSplitter {
    n: usize,
    unitary: UnitaryDense,
}

impl BeamSplitter {
    /// The modeled construction: normalize a complex Hadamard matrix.
    pub fn from_phase_matrix(p: &PhaseMatrix) -> Result<BeamSplitter> {
        if !is_complex_hadamard(p) {
            return Err(Error::NotComplexHadamard);
        }
        let unitary = p.to_unitary(true);
        debug_assert!(unitary.is_unitary(TOL));
        Ok(BeamSplitter {
            n: p.order(),
            unitary,
        })
    }

    /// Wraps an arbitrary unitary (the identity, say). Ports built this way
    /// need not split anything evenly; the unitarity check still applies.
    pub fn from_unitary(unitary: UnitaryDense) -> Result<BeamSplitter> {
        let defect = unitary.unitarity_defect();
        if defect > TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(BeamSplitter {
            n: unitary.dim(),
            unitary,
        })
    }

    pub fn ports(&self) -> usize {
        self.n
    }

    pub fn unitary(&self) -> &UnitaryDense {
        &self.unitary
    }

    /// Output-port probabilities `|U_{j,input}|^2` for a quantum entering at
    /// `input_port`; sums to 1 within 1e-12 for a unitary.
    pub fn output_distribution(&self, input_port: usize) -> Result<Vec<f64>> {
        if input_port >= self.n {
            return Err(Error::InvalidParameter(format!(
                "input port {input_port} out of range for {} ports",
                self.n
            )));
        }
        let dist: Vec<f64> = (0..self.n)
            .map(|j| self.unitary.entry(j, input_port).norm_sqr())
            .collect();
        debug_assert!((dist.iter().sum::<f64>() - 1.0).abs() <= TOL_TIGHT * self.n as f64);
        Ok(dist)
    }

    /// Serial composition with the reversed splitter must reconstruct `v`.
    pub fn mach_zehnder(&self, v: &StateVector) -> Result<TestReport> {
        mach_zehnder_check(&self.unitary, v)
    }
}

/// Applies `U` then `U^dagger` and reports whether the state came back:
/// passes iff `|U^dagger (U v) - v| <= 1e-9`.
pub fn mach_zehnder_check(u: &UnitaryDense, v: &StateVector) -> Result<TestReport> {
    let forward = u.apply(v)?;
    let back = u.adjoint().apply(&forward)?;
    let residual = back.distance(v)?;
    let mut report = TestReport::new("mach-zehnder", "residual");
    report.push("roundtrip", residual, residual, residual <= TOL);
    Ok(report)
}

/// The simulated gap models, with outcomes coded as stream symbols.
#[derive(Clone, Debug)]
pub enum GapModel {
    /// A quantum enters `input_port` of an `n`-port splitter built from the
    /// order-`n` basis of [`schwinger_basis`]; the sampled exit port is the
    /// symbol.
    BeamSplitter { ports: usize, input_port: usize },
    /// A balanced configuration tips one way or the other; `bias` is the
    /// probability of symbol 1 (default one half).
    SymmetryBreak { bias: f64 },
    /// Per time step, a photon is emitted (symbol 1) with this probability.
    Emission { probability: f64 },
}

impl GapModel {
    /// Compact tag used in stream headers.
    pub fn describe(&self) -> String {
        match self {
            GapModel::BeamSplitter { ports, input_port } => {
                format!("beamsplitter(n={ports},port={input_port})")
            }
            GapModel::SymmetryBreak { bias } => format!("symmetry(p={bias})"),
            GapModel::Emission { probability } => format!("emission(p={probability})"),
        }
    }
}

/// A seeded sampling request.
#[derive(Clone, Debug)]
pub struct GapSourceConfig {
    pub model: GapModel,
    pub seed: u64,
    pub length: usize,
}

impl GapSourceConfig {
    pub fn symmetry_default_bias(seed: u64, length: usize) -> GapSourceConfig {
        GapSourceConfig {
            model: GapModel::SymmetryBreak { bias: 0.5 },
            seed,
            length,
        }
    }
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "{what} must be in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Draws `cfg.length` symbols, bit-exact reproducibly for a given
/// `(model, parameters, seed, length)`.
///
/// Beam-splitter symbols come from inverse-CDF sampling of the output
/// distribution; the Bernoulli models compare one uniform draw per step
/// against their probability.
pub fn sample_bits(cfg: &GapSourceConfig) -> Result<BitStream> {
    let mut rng = SplitMix64::new(cfg.seed);
    let symbols;
    let alphabet;
    match &cfg.model {
        GapModel::BeamSplitter { ports, input_port } => {
            let splitter = BeamSplitter::from_phase_matrix(&schwinger_basis(*ports)?)?;
            let dist = splitter.output_distribution(*input_port)?;
            alphabet = (*ports as u32).max(2);
            symbols = (0..cfg.length)
                .map(|_| {
                    let u = rng.next_f64();
                    let mut acc = 0.0;
                    let mut drawn = *ports - 1;
                    for (j, p) in dist.iter().enumerate() {
                        acc += p;
                        if u < acc {
                            drawn = j;
                            break;
                        }
                    }
                    drawn as u8
                })
                .collect();
        }
        GapModel::SymmetryBreak { bias } => {
            check_probability(*bias, "bias")?;
            alphabet = 2;
            symbols = bernoulli(&mut rng, *bias, cfg.length);
        }
        GapModel::Emission { probability } => {
            check_probability(*probability, "emission probability")?;
            alphabet = 2;
            symbols = bernoulli(&mut rng, *probability, cfg.length);
        }
    }
    let stream = BitStream::from_symbols(alphabet, symbols)?;
    Ok(stream.with_meta(StreamMeta {
        model: cfg.model.describe(),
        seed: cfg.seed,
        length: cfg.length,
    }))
}

fn bernoulli(rng: &mut SplitMix64, p: f64, length: usize) -> Vec<u8> {
    (0..length)
        .map(|_| if rng.next_f64() < p { 1 } else { 0 })
        .collect()
}
