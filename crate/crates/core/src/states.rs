//! Three-qubit pure states: explicit construction, the three boundary
//! families, and reproducible Haar-random sampling.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::C64;
use crate::tolerance::STRUCTURAL;
use crate::{Error, Result};

/// A normalized vector of eight amplitudes, index `4a + 2b + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState3 {
    amplitudes: [C64; 8],
}

fn check_finite(amplitudes: &[C64; 8]) -> Result<()> {
    match amplitudes
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(index) => Err(Error::NonFiniteAmplitude { index }),
        None => Ok(()),
    }
}

fn norm_sqr(amplitudes: &[C64; 8]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum()
}

impl PureState3 {
    /// Accepts amplitudes that are already normalized within 1e-12, without
    /// rescaling them.
    pub fn from_normalized(amplitudes: [C64; 8]) -> Result<Self> {
        check_finite(&amplitudes)?;
        let deviation = (norm_sqr(&amplitudes) - 1.0).abs();
        if deviation > STRUCTURAL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.amplitudes
    }

    pub fn norm_deviation(&self) -> f64 {
        (norm_sqr(&self.amplitudes) - 1.0).abs()
    }
}

/// A state produced by [`make_state`] together with the factor that was
/// applied to the input amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedState {
    pub state: PureState3,
    pub factor: f64,
}

/// Normalizes arbitrary nonzero amplitudes.
pub fn make_state(amplitudes: [C64; 8]) -> Result<NormalizedState> {
    check_finite(&amplitudes)?;
    let norm = norm_sqr(&amplitudes).sqrt();
    if norm == 0.0 {
        return Err(Error::DegenerateState);
    }
    let factor = 1.0 / norm;
    let mut scaled = amplitudes;
    for z in scaled.iter_mut() {
        *z /= norm;
    }
    Ok(NormalizedState {
        state: PureState3 { amplitudes: scaled },
        factor,
    })
}

fn real_state(entries: &[(usize, f64)]) -> PureState3 {
    let mut amplitudes = [C64::new(0.0, 0.0); 8];
    for &(i, v) in entries {
        amplitudes[i] = C64::new(v, 0.0);
    }
    PureState3 { amplitudes }
}

/// Generalized GHZ state `cos α |000⟩ + sin α |111⟩`.
pub fn psi_alpha(alpha: f64) -> PureState3 {
    let (s, c) = alpha.sin_cos();
    real_state(&[(0, c), (7, s)])
}

/// `(|000⟩ + m(|010⟩ + |101⟩) + |111⟩) / √(2 + 2m²)` for `m ∈ [0, 1]`.
///
/// `m = 0` is the GHZ state; `m = 1` belongs to the W class.
pub fn psi_m(m: f64) -> Result<PureState3> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::ParameterRange {
            name: "m",
            value: m,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let n = 1.0 / (2.0 + 2.0 * m * m).sqrt();
    Ok(real_state(&[(0, n), (2, m * n), (5, m * n), (7, n)]))
}

/// Biseparable family `cos θ |001⟩ + sin θ |100⟩`: qubit B is in `|0⟩`
/// and A, C share an entangled pair.
pub fn psi_theta(theta: f64) -> PureState3 {
    let (s, c) = theta.sin_cos();
    real_state(&[(1, c), (4, s)])
}

/// One of the three single-parameter boundary families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Alpha,
    M,
    Theta,
}

impl Family {
    /// Closed parameter interval the family is drawn over.
    pub fn domain(self) -> (f64, f64) {
        match self {
            Family::Alpha | Family::Theta => (0.0, std::f64::consts::FRAC_PI_2),
            Family::M => (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryParam {
    family: Family,
    value: f64,
}

impl BoundaryParam {
    pub fn new(family: Family, value: f64) -> Result<Self> {
        if family == Family::M && !(0.0..=1.0).contains(&value) {
            return Err(Error::ParameterRange {
                name: "m",
                value,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self { family, value })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn state(&self) -> PureState3 {
        match self.family {
            Family::Alpha => psi_alpha(self.value),
            Family::Theta => psi_theta(self.value),
            // range checked in `new`
            Family::M => psi_m(self.value).expect("m in [0, 1]"),
        }
    }
}

/// Seed and size of a Haar ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    seed: u64,
    count: usize,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyEnsemble);
        }
        Ok(Self { seed, count })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// Identity of the random stream, recorded in every output artifact.
pub const RNG_ALGORITHM: &str = "chacha20(key=seed_from_u64(seed),stream=sample_index)+box_muller";

/// Random access to the Haar ensemble for one seed.
///
/// Sample `i` is drawn from ChaCha20 stream `i` under a key derived from the
/// seed, so any worker can produce any sample independently of how the
/// index range is partitioned.
#[derive(Debug, Clone)]
pub struct HaarStream {
    base: ChaCha20Rng,
}

impl HaarStream {
    pub fn new(seed: u64) -> Self {
        Self {
            base: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn state(&self, index: u64) -> PureState3 {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        rng.set_word_pos(0);
        loop {
            let mut amplitudes = [C64::new(0.0, 0.0); 8];
            for z in amplitudes.iter_mut() {
                let (re, im) = box_muller(&mut rng);
                *z = C64::new(re, im);
            }
            // the all-zero draw has probability zero; redraw if it happens
            if let Ok(n) = make_state(amplitudes) {
                return n.state;
            }
        }
    }
}

/// Uniform in `(0, 1]` from the top 53 bits.
fn open_unit(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `[0, 1)` from the top 53 bits.
fn half_open_unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Two independent standard normals.
fn box_muller(rng: &mut impl RngCore) -> (f64, f64) {
    let u1 = open_unit(rng);
    let u2 = half_open_unit(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    (r * c, r * s)
}

/// Iterator over the `count` states of an ensemble, in index order.
#[derive(Debug, Clone)]
pub struct HaarSampler {
    stream: HaarStream,
    next: u64,
    end: u64,
}

impl Iterator for HaarSampler {
    type Item = PureState3;

    fn next(&mut self) -> Option<PureState3> {
        if self.next >= self.end {
            return None;
        }
        let s = self.stream.state(self.next);
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for HaarSampler {}

pub fn haar_sample(config: SamplerConfig) -> HaarSampler {
    HaarSampler {
        stream: HaarStream::new(config.seed),
        next: 0,
        end: config.count as u64,
    }
}
