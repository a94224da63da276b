//! The five resource measures of a three-qubit pure state.
//!
//! Entanglement (GGM, GMC, concurrence fill) and first-order coherence only
//! need the three single-qubit marginals. Steering needs the two-qubit
//! correlation matrices.

use serde::{Deserialize, Serialize};

use crate::linalg::{
    correlation_matrix, partial_trace_pair, partial_trace_single, purity, spectrum2,
    DensityMatrix2, Pair, Qubit,
};
use crate::states::PureState3;
use crate::tolerance::{clamp_bounded, STRUCTURAL};
use crate::{Error, Result};

/// One value per qubit, in A, B, C order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerQubit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PerQubit {
    pub fn get(&self, q: Qubit) -> f64 {
        match q {
            Qubit::A => self.a,
            Qubit::B => self.b,
            Qubit::C => self.c,
        }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn min(&self) -> f64 {
        self.a.min(self.b).min(self.c)
    }

    pub fn max(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    fn try_from_fn(mut f: impl FnMut(Qubit) -> Result<f64>) -> Result<Self> {
        Ok(Self {
            a: f(Qubit::A)?,
            b: f(Qubit::B)?,
            c: f(Qubit::C)?,
        })
    }
}

/// One value per qubit pair, in AB, AC, BC order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerPair {
    pub ab: f64,
    pub ac: f64,
    pub bc: f64,
}

impl PerPair {
    pub fn get(&self, p: Pair) -> f64 {
        match p {
            Pair::AB => self.ab,
            Pair::AC => self.ac,
            Pair::BC => self.bc,
        }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.ab, self.ac, self.bc]
    }

    pub fn max(&self) -> f64 {
        self.ab.max(self.ac).max(self.bc)
    }

    fn try_from_fn(mut f: impl FnMut(Pair) -> Result<f64>) -> Result<Self> {
        Ok(Self {
            ab: f(Pair::AB)?,
            ac: f(Pair::AC)?,
            bc: f(Pair::BC)?,
        })
    }
}

/// All measures of one state plus the intermediate quantities they share.
///
/// `sides` holds the squared one-vs-rest concurrences `C²_{i(jk)}`, which
/// are the side lengths of the concurrence triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceProfile {
    pub ggm: f64,
    pub gmc: f64,
    pub fill: f64,
    pub coherence: f64,
    pub steering_max: f64,
    pub sides: PerQubit,
    pub half_perimeter: f64,
    pub steering_pairs: PerPair,
    pub marginal_purities: PerQubit,
    pub pair_purities: PerPair,
}

struct Marginals([DensityMatrix2; 3]);

impl Marginals {
    fn of(state: &PureState3) -> Self {
        Self(Qubit::ALL.map(|q| partial_trace_single(state, q)))
    }

    fn get(&self, q: Qubit) -> &DensityMatrix2 {
        &self.0[q as usize]
    }

    fn purities(&self) -> PerQubit {
        let [a, b, c] = self.0.each_ref().map(purity);
        PerQubit { a, b, c }
    }

    fn sides(&self) -> Result<PerQubit> {
        PerQubit::try_from_fn(|q| {
            let det = self.get(q).det();
            if det < -STRUCTURAL {
                return Err(Error::NotPositive(det));
            }
            clamp_bounded("C²_i(jk)", 4.0 * det, 0.0, 1.0)
        })
    }

    fn ggm(&self) -> Result<f64> {
        let minors = PerQubit::try_from_fn(|q| Ok(spectrum2(self.get(q))?.lambda_minor))?;
        Ok(minors.min())
    }
}

/// `min_i √(4 det ρ_i)`, equal to `min_i √(2(1 − Tr ρ_i²))` for qubits but
/// free of the cancellation in `1 − Tr ρ²` when a marginal is pure.
fn gmc_from_sides(sides: &PerQubit) -> f64 {
    sides.min().sqrt()
}

fn coherence_from_purities(purities: &PerQubit) -> Result<f64> {
    let sq = PerQubit::try_from_fn(|q| {
        clamp_bounded("2 Tr ρ² - 1", 2.0 * purities.get(q) - 1.0, 0.0, 1.0)
    })?;
    Ok(((sq.a + sq.b + sq.c) / 3.0).sqrt())
}

/// Half-perimeter `Q = (a + b + c)/2` of the concurrence triangle.
pub fn half_perimeter(sides: &PerQubit) -> f64 {
    0.5 * (sides.a + sides.b + sides.c)
}

/// `[(16/3) Q (Q−a)(Q−b)(Q−c)]^{1/4}`.
///
/// A factor `Q − side` in `[-1e-12, 0)` is treated as an exactly degenerate
/// triangle; anything more negative is a triangle-inequality violation.
pub fn fill_from_sides(sides: &PerQubit) -> Result<f64> {
    let q = half_perimeter(sides);
    let mut product = 16.0 / 3.0 * q;
    for side in sides.to_array() {
        let factor = q - side;
        if factor < -STRUCTURAL {
            return Err(Error::TriangleViolation(factor));
        }
        product *= factor.max(0.0);
    }
    clamp_bounded("concurrence fill", product.sqrt().sqrt(), 0.0, 1.0)
}

/// Generalized geometric measure: the smallest minor eigenvalue over the
/// three single-qubit marginals.
pub fn ggm(state: &PureState3) -> Result<f64> {
    Marginals::of(state).ggm()
}

/// Genuinely multipartite concurrence `min_i √(2(1 − Tr ρ_i²))`.
pub fn gmc(state: &PureState3) -> Result<f64> {
    Ok(gmc_from_sides(&Marginals::of(state).sides()?))
}

/// Squared one-vs-rest concurrences `(a, b, c) = 4 (det ρ_A, det ρ_B, det ρ_C)`.
pub fn one_vs_rest_concurrences(state: &PureState3) -> Result<PerQubit> {
    Marginals::of(state).sides()
}

pub fn concurrence_fill(state: &PureState3) -> Result<f64> {
    fill_from_sides(&one_vs_rest_concurrences(state)?)
}

/// Root-mean-square of the per-qubit coherences `√(2 Tr ρ_i² − 1)`.
pub fn first_order_coherence(state: &PureState3) -> Result<f64> {
    coherence_from_purities(&Marginals::of(state).purities())
}

/// Three-setting linear steering value `Tr(TᵀT)` of a pair's reduced state.
pub fn steering_pair(state: &PureState3, pair: Pair) -> Result<f64> {
    Ok(correlation_matrix(&partial_trace_pair(state, pair))?.frobenius_sq())
}

/// `4 Tr ρ_k² − 2 Tr ρ_i² − 2 Tr ρ_j² + 1` for the pair `(i, j)` and its
/// complement `k`. Equals [`steering_pair`] on pure states only; kept as an
/// independent check of the Pauli-trace path.
pub fn steering_pair_via_purities(state: &PureState3, pair: Pair) -> f64 {
    let p = Marginals::of(state).purities();
    let (i, j) = pair.qubits();
    4.0 * p.get(pair.complement()) - 2.0 * p.get(i) - 2.0 * p.get(j) + 1.0
}

pub fn steering_max(state: &PureState3) -> Result<f64> {
    Ok(PerPair::try_from_fn(|p| steering_pair(state, p))?.max())
}

/// Evaluates every measure in one pass over the marginals.
pub fn profile(state: &PureState3) -> Result<ResourceProfile> {
    let marginals = Marginals::of(state);
    let purities = marginals.purities();
    let sides = marginals.sides()?;
    let pairs = Pair::ALL.map(|p| partial_trace_pair(state, p));
    let steering_pairs =
        PerPair::try_from_fn(|p| Ok(correlation_matrix(&pairs[p as usize])?.frobenius_sq()))?;
    let pair_purities = PerPair::try_from_fn(|p| Ok(purity(&pairs[p as usize])))?;
    Ok(ResourceProfile {
        ggm: marginals.ggm()?,
        gmc: gmc_from_sides(&sides),
        fill: fill_from_sides(&sides)?,
        coherence: coherence_from_purities(&purities)?,
        steering_max: steering_pairs.max(),
        sides,
        half_perimeter: half_perimeter(&sides),
        steering_pairs,
        marginal_purities: purities,
        pair_purities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::states::{make_state, psi_alpha, psi_m, psi_theta};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const EPS: f64 = 1e-12;

    fn ket000() -> PureState3 {
        psi_alpha(0.0)
    }

    fn ghz() -> PureState3 {
        psi_alpha(FRAC_PI_4)
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn ggm_examples() {
        assert!(close(ggm(&ghz()).unwrap(), 0.5, EPS));
        assert_eq!(ggm(&ket000()).unwrap(), 0.0);
        assert!(close(ggm(&psi_theta(FRAC_PI_4)).unwrap(), 0.0, EPS));
    }

    #[test]
    fn gmc_examples() {
        for k in 0..=20 {
            let alpha = k as f64 / 20.0 * FRAC_PI_2;
            let (s, c) = alpha.sin_cos();
            let want = (2.0 * (1.0 - c.powi(4) - s.powi(4))).sqrt();
            assert!(close(gmc(&psi_alpha(alpha)).unwrap(), want, 1e-10));

            let m = k as f64 / 20.0;
            let want = (1.0 - m * m) / (1.0 + m * m);
            assert!(close(gmc(&psi_m(m).unwrap()).unwrap(), want, 1e-10));
        }
        assert!(close(gmc(&psi_m(1.0).unwrap()).unwrap(), 0.0, 1e-10));
    }

    #[test]
    fn side_examples() {
        let s = one_vs_rest_concurrences(&ghz()).unwrap();
        for v in s.to_array() {
            assert!(close(v, 1.0, EPS));
        }
        assert_eq!(
            one_vs_rest_concurrences(&ket000()).unwrap().to_array(),
            [0.0; 3]
        );
        let s = one_vs_rest_concurrences(&psi_theta(FRAC_PI_4)).unwrap();
        assert!(close(s.a, 1.0, EPS) && close(s.b, 0.0, EPS) && close(s.c, 1.0, EPS));
    }

    #[test]
    fn fill_examples() {
        for k in 0..=20 {
            let alpha = k as f64 / 20.0 * FRAC_PI_2;
            let want = (2.0 * alpha).sin().powi(2);
            assert!(close(
                concurrence_fill(&psi_alpha(alpha)).unwrap(),
                want,
                1e-10
            ));

            let m = k as f64 / 20.0;
            let m2 = m * m;
            let want = (1.0 - m2)
                * ((1.0 + 6.0 * m2 + m2 * m2) * (3.0 + 2.0 * m2 + 3.0 * m2 * m2)).powf(0.25)
                / (3f64.powf(0.25) * (1.0 + m2).powi(2));
            assert!(close(
                concurrence_fill(&psi_m(m).unwrap()).unwrap(),
                want,
                1e-10
            ));

            // biseparable: one side vanishes and the other two coincide
            let f = concurrence_fill(&psi_theta(alpha)).unwrap();
            assert_eq!(f, 0.0);
        }
    }

    #[test]
    fn fill_rejects_broken_triangle() {
        let sides = PerQubit {
            a: 1.0,
            b: 0.1,
            c: 0.1,
        };
        assert!(matches!(
            fill_from_sides(&sides),
            Err(Error::TriangleViolation(_))
        ));
        // within the clamp collar the triangle counts as degenerate
        let sides = PerQubit {
            a: 1.0 + 1e-13,
            b: 0.5,
            c: 0.5,
        };
        assert_eq!(fill_from_sides(&sides).unwrap(), 0.0);
    }

    #[test]
    fn coherence_examples() {
        for k in 0..=20 {
            let t = k as f64 / 20.0 * FRAC_PI_2;
            assert!(close(
                first_order_coherence(&psi_alpha(t)).unwrap(),
                (2.0 * t).cos().abs(),
                1e-10
            ));
            let want = ((2.0 + (4.0 * t).cos()) / 3.0).sqrt();
            assert!(close(
                first_order_coherence(&psi_theta(t)).unwrap(),
                want,
                1e-10
            ));

            let m = k as f64 / 20.0;
            let want = 2.0 * m / (3f64.sqrt() * (1.0 + m * m));
            assert!(close(
                first_order_coherence(&psi_m(m).unwrap()).unwrap(),
                want,
                1e-10
            ));
        }
    }

    #[test]
    fn steering_pair_examples() {
        assert!(close(steering_pair(&ghz(), Pair::AB).unwrap(), 1.0, EPS));
        assert!(close(
            steering_pair(&psi_theta(FRAC_PI_4), Pair::AC).unwrap(),
            3.0,
            EPS
        ));
        for p in Pair::ALL {
            assert_eq!(steering_pair(&ket000(), p).unwrap(), 1.0);
        }
    }

    #[test]
    fn steering_max_examples() {
        for k in 0..=20 {
            let m = k as f64 / 20.0;
            let m2 = m * m;
            let want = (1.0 + 10.0 * m2 + m2 * m2) / (1.0 + m2).powi(2);
            assert!(close(
                steering_max(&psi_m(m).unwrap()).unwrap(),
                want,
                1e-10
            ));

            let t = k as f64 / 20.0 * FRAC_PI_2;
            assert!(close(
                steering_max(&psi_theta(t)).unwrap(),
                2.0 - (4.0 * t).cos(),
                1e-10
            ));
        }
        assert!(close(steering_max(&psi_m(1.0).unwrap()).unwrap(), 3.0, EPS));
    }

    #[test]
    fn profile_examples() {
        let p = profile(&ghz()).unwrap();
        assert!(close(p.ggm, 0.5, EPS) && close(p.gmc, 1.0, EPS) && close(p.fill, 1.0, EPS));
        assert!(close(p.coherence, 0.0, 1e-7) && close(p.steering_max, 1.0, EPS));

        let p = profile(&ket000()).unwrap();
        assert_eq!(
            (p.ggm, p.gmc, p.fill, p.coherence, p.steering_max),
            (0.0, 0.0, 0.0, 1.0, 1.0)
        );

        let p = profile(&psi_m(1.0).unwrap()).unwrap();
        assert!(close(p.ggm, 0.0, EPS) && close(p.gmc, 0.0, EPS) && close(p.fill, 0.0, EPS));
        assert!(close(p.coherence, 1.0 / 3f64.sqrt(), EPS));
        assert!(close(p.steering_max, 3.0, EPS));
    }

    #[test]
    fn profile_matches_individual_measures() {
        let s = make_state([
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.4),
            C64::new(0.0, 0.2),
            C64::new(0.5, -0.1),
            C64::new(0.1, 0.1),
            C64::new(-0.3, 0.0),
            C64::new(0.2, 0.3),
            C64::new(0.1, -0.4),
        ])
        .unwrap()
        .state;
        let p = profile(&s).unwrap();
        assert_eq!(p.ggm, ggm(&s).unwrap());
        assert_eq!(p.gmc, gmc(&s).unwrap());
        assert_eq!(p.fill, concurrence_fill(&s).unwrap());
        assert_eq!(p.coherence, first_order_coherence(&s).unwrap());
        assert_eq!(p.steering_max, steering_max(&s).unwrap());
        assert_eq!(p.sides, one_vs_rest_concurrences(&s).unwrap());
        for pair in Pair::ALL {
            assert_eq!(p.steering_pairs.get(pair), steering_pair(&s, pair).unwrap());
            assert!(close(
                p.steering_pairs.get(pair),
                steering_pair_via_purities(&s, pair),
                1e-12
            ));
        }
        assert_eq!(p.steering_max, p.steering_pairs.max());
        assert!(close(
            p.half_perimeter,
            (p.sides.a + p.sides.b + p.sides.c) / 2.0,
            1e-15
        ));
    }
}
