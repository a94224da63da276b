//! Fixed-size complex linear algebra for three-qubit marginals.
//!
//! Basis convention: amplitude index `i = 4a + 2b + c`, so qubit A is the
//! most significant bit. Two-qubit marginals keep the label order of the
//! pair (`AB`, `AC`, `BC`) with the first qubit as the more significant bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::states::PureState3;
use crate::tolerance::{DERIVED, STRUCTURAL};
use crate::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Pauli matrices σ₁, σ₂, σ₃.
pub const PAULI: [[[C64; 2]; 2]; 3] = [
    [[ZERO, ONE], [ONE, ZERO]],
    [[ZERO, C64::new(0.0, -1.0)], [I, ZERO]],
    [[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Bit position of this qubit inside an amplitude index.
    pub const fn shift(self) -> usize {
        match self {
            Qubit::A => 2,
            Qubit::B => 1,
            Qubit::C => 0,
        }
    }

    /// The two-qubit pair made of the other two qubits.
    pub const fn complement(self) -> Pair {
        match self {
            Qubit::A => Pair::BC,
            Qubit::B => Pair::AC,
            Qubit::C => Pair::AB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    pub const fn qubits(self) -> (Qubit, Qubit) {
        match self {
            Pair::AB => (Qubit::A, Qubit::B),
            Pair::AC => (Qubit::A, Qubit::C),
            Pair::BC => (Qubit::B, Qubit::C),
        }
    }

    /// The qubit left out of the pair.
    pub const fn complement(self) -> Qubit {
        match self {
            Pair::AB => Qubit::C,
            Pair::AC => Qubit::B,
            Pair::BC => Qubit::A,
        }
    }
}

/// A single-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    entries: [[C64; 2]; 2],
}

/// A two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    entries: [[C64; 4]; 4],
}

fn hermitian_deviation<const N: usize>(m: &[[C64; N]; N]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    worst
}

fn trace<const N: usize>(m: &[[C64; N]; N]) -> C64 {
    (0..N).map(|i| m[i][i]).sum()
}

fn validate<const N: usize>(m: &[[C64; N]; N]) -> Result<()> {
    for (idx, z) in m.iter().flatten().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFiniteAmplitude { index: idx });
        }
    }
    let dev = hermitian_deviation(m);
    if dev > STRUCTURAL {
        return Err(Error::NotHermitian(dev));
    }
    let tr = trace(m);
    if (tr.re - 1.0).abs() > STRUCTURAL || tr.im.abs() > STRUCTURAL {
        return Err(Error::InvalidTrace(tr.re));
    }
    Ok(())
}

impl DensityMatrix2 {
    /// Validates Hermiticity, unit trace and `det >= -1e-12`.
    pub fn new(entries: [[C64; 2]; 2]) -> Result<Self> {
        validate(&entries)?;
        let rho = Self { entries };
        let det = rho.det();
        if det < -STRUCTURAL {
            return Err(Error::NotPositive(det));
        }
        Ok(rho)
    }

    pub fn entries(&self) -> &[[C64; 2]; 2] {
        &self.entries
    }

    /// Real determinant `ρ00 ρ11 − |ρ01|²` of the Hermitian matrix.
    pub fn det(&self) -> f64 {
        let e = &self.entries;
        e[0][0].re * e[1][1].re - e[0][1].norm_sqr()
    }

    pub fn trace(&self) -> f64 {
        trace(&self.entries).re
    }

    /// Bloch vector `r_i = Tr(ρ σ_i)`, so that `Tr ρ² = (1 + |r|²)/2`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let mut r = [0.0; 3];
        for (k, sigma) in PAULI.iter().enumerate() {
            let mut acc = ZERO;
            for a in 0..2 {
                for b in 0..2 {
                    acc += self.entries[a][b] * sigma[b][a];
                }
            }
            r[k] = acc.re;
        }
        r
    }
}

impl DensityMatrix4 {
    /// Validates Hermiticity and unit trace.
    pub fn new(entries: [[C64; 4]; 4]) -> Result<Self> {
        validate(&entries)?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[[C64; 4]; 4] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        trace(&self.entries).re
    }

    /// Reduced state of the first qubit of the pair.
    pub fn trace_second(&self) -> DensityMatrix2 {
        let mut out = [[ZERO; 2]; 2];
        for (x, row) in out.iter_mut().enumerate() {
            for (xp, slot) in row.iter_mut().enumerate() {
                *slot = (0..2).map(|y| self.entries[2 * x + y][2 * xp + y]).sum();
            }
        }
        DensityMatrix2 { entries: out }
    }

    /// Reduced state of the second qubit of the pair.
    pub fn trace_first(&self) -> DensityMatrix2 {
        let mut out = [[ZERO; 2]; 2];
        for (y, row) in out.iter_mut().enumerate() {
            for (yp, slot) in row.iter_mut().enumerate() {
                *slot = (0..2).map(|x| self.entries[2 * x + y][2 * x + yp]).sum();
            }
        }
        DensityMatrix2 { entries: out }
    }
}

/// `Tr ρ²`, evaluated as the squared Frobenius norm of the Hermitian matrix.
pub trait Purity {
    fn purity(&self) -> f64;
}

impl Purity for DensityMatrix2 {
    fn purity(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }
}

impl Purity for DensityMatrix4 {
    fn purity(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }
}

pub fn purity<M: Purity>(rho: &M) -> f64 {
    rho.purity()
}

/// Sum of `ψ_i ψ_j*` over all index pairs that agree outside `kept`.
/// `kept` lists qubits from most to least significant in the output index.
fn reduce<const N: usize>(state: &PureState3, kept: &[Qubit]) -> [[C64; N]; N] {
    let amps = state.amplitudes();
    let mask: usize = kept.iter().map(|q| 1 << q.shift()).sum();
    let local = |i: usize| {
        kept.iter()
            .fold(0usize, |acc, q| (acc << 1) | ((i >> q.shift()) & 1))
    };
    let mut out = [[ZERO; N]; N];
    for i in 0..8 {
        for j in 0..8 {
            if i & !mask == j & !mask {
                out[local(i)][local(j)] += amps[i] * amps[j].conj();
            }
        }
    }
    out
}

/// `ρ_keep = Tr_rest |ψ⟩⟨ψ|` for a single qubit.
pub fn partial_trace_single(state: &PureState3, keep: Qubit) -> DensityMatrix2 {
    DensityMatrix2 {
        entries: reduce::<2>(state, &[keep]),
    }
}

/// Two-qubit marginal for `keep`, first qubit of the label most significant.
pub fn partial_trace_pair(state: &PureState3, keep: Pair) -> DensityMatrix4 {
    let (x, y) = keep.qubits();
    DensityMatrix4 {
        entries: reduce::<4>(state, &[x, y]),
    }
}

/// Eigenvalues of a qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalSpectrum {
    pub lambda_major: f64,
    pub lambda_minor: f64,
}

/// Closed-form spectrum `λ± = ½(1 ± √(1 − 4 det ρ))`.
pub fn spectrum2(rho: &DensityMatrix2) -> Result<MarginalSpectrum> {
    let det = rho.det();
    if det < -STRUCTURAL {
        return Err(Error::NotPositive(det));
    }
    let det = crate::tolerance::clamp_bounded("det", det, 0.0, 0.25)?;
    let disc = (1.0 - 4.0 * det).max(0.0).sqrt();
    let lambda_minor = 0.5 * (1.0 - disc);
    Ok(MarginalSpectrum {
        lambda_major: 1.0 - lambda_minor,
        lambda_minor,
    })
}

/// Two-qubit Pauli correlations `t_ij = Tr(ρ (σ_i ⊗ σ_j))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    /// `Tr(TᵀT)`, the sum of squared entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.t.iter().flatten().map(|x| x * x).sum()
    }
}

pub fn correlation_matrix(rho: &DensityMatrix4) -> Result<CorrelationMatrix> {
    let e = &rho.entries;
    let mut t = [[0.0; 3]; 3];
    for (i, si) in PAULI.iter().enumerate() {
        for (j, sj) in PAULI.iter().enumerate() {
            let mut acc = ZERO;
            for k in 0..4 {
                for l in 0..4 {
                    // (σ_i ⊗ σ_j)[l][k]
                    let op = si[l >> 1][k >> 1] * sj[l & 1][k & 1];
                    if op != ZERO {
                        acc += e[k][l] * op;
                    }
                }
            }
            if acc.im.abs() > DERIVED {
                return Err(Error::NotHermitian(acc.im.abs()));
            }
            t[i][j] = acc.re;
        }
    }
    Ok(CorrelationMatrix { t })
}
