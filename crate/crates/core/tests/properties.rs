use num_complex::Complex64 as C;
use proptest::prelude::*;
use tripartite::io::ensemble_profiles;
use tripartite::relations::{evaluate_profile, verify_ensemble, verify_profiles, RelationId};
use tripartite::states::HaarStream;
use tripartite::{make_state, profile, PureState3, SamplerConfig};

fn arb_state() -> impl Strategy<Value = PureState3> {
    proptest::array::uniform16(-1.0f64..1.0).prop_filter_map("nonzero", |raw| {
        let amps = std::array::from_fn(|i| C::new(raw[2 * i], raw[2 * i + 1]));
        make_state(amps).ok().map(|n| n.state)
    })
}

fn su2(a: f64, b: f64, c: f64) -> [[C; 2]; 2] {
    let (sa, ca) = a.sin_cos();
    let e = |t: f64| C::from_polar(1.0, t);
    [[e(b) * ca, e(c) * sa], [-e(-c) * sa, e(-b) * ca]]
}

fn apply_local(state: &PureState3, qubit: usize, u: [[C; 2]; 2]) -> PureState3 {
    let a = state.amplitudes();
    let shift = 2 - qubit;
    let amps = std::array::from_fn(|i| {
        let row = (i >> shift) & 1;
        let base = i & !(1 << shift);
        u[row][0] * a[base] + u[row][1] * a[base | (1 << shift)]
    });
    make_state(amps).unwrap().state
}

/// Relabels qubits so that new qubit `k` is old qubit `perm[k]`.
fn permute(state: &PureState3, perm: [usize; 3]) -> PureState3 {
    let a = state.amplitudes();
    let amps = std::array::from_fn(|i| {
        let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
        let mut old = [0; 3];
        for k in 0..3 {
            old[perm[k]] = bits[k];
        }
        a[old[0] << 2 | old[1] << 1 | old[2]]
    });
    PureState3::from_normalized(amps).unwrap()
}

proptest! {
    #[test]
    fn measures_stay_in_range(state in arb_state()) {
        let p = profile(&state).unwrap();
        prop_assert!((0.0..=0.5).contains(&p.ggm));
        for v in [p.gmc, p.fill, p.coherence] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert!((1.0 - 1e-12..=3.0 + 1e-9).contains(&p.steering_max));
    }

    #[test]
    fn every_relation_holds(state in arb_state()) {
        let p = profile(&state).unwrap();
        for e in evaluate_profile(&p, 1e-9) {
            prop_assert!(e.passes(1e-9), "{} = {}", e.id, e.value);
        }
    }

    #[test]
    fn local_unitaries_leave_measures_unchanged(
        state in arb_state(),
        qubit in 0usize..3,
        a in 0.0f64..6.3,
        b in 0.0f64..6.3,
        c in 0.0f64..6.3,
    ) {
        let p = profile(&state).unwrap();
        let q = profile(&apply_local(&state, qubit, su2(a, b, c))).unwrap();
        prop_assert!((p.ggm - q.ggm).abs() < 1e-10);
        prop_assert!((p.gmc * p.gmc - q.gmc * q.gmc).abs() < 1e-10);
        prop_assert!((p.fill.powi(4) - q.fill.powi(4)).abs() < 1e-10);
        prop_assert!((p.coherence - q.coherence).abs() < 1e-10);
        prop_assert!((p.steering_max - q.steering_max).abs() < 1e-10);
    }

    #[test]
    fn qubit_relabeling_permutes_sides(state in arb_state(), which in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let perm = perms[which];
        let p = profile(&state).unwrap();
        let q = profile(&permute(&state, perm)).unwrap();
        let old = p.sides.to_array();
        let new = q.sides.to_array();
        for k in 0..3 {
            prop_assert!((new[k] - old[perm[k]]).abs() < 1e-12);
        }
        prop_assert!((p.fill - q.fill).abs() < 1e-12);
        prop_assert!((p.steering_max - q.steering_max).abs() < 1e-12);
    }
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let config = SamplerConfig::new(11, 3_000).unwrap();
    let parallel = verify_ensemble(config, 1e-9).unwrap();
    let stream = HaarStream::new(11);
    let states: Vec<PureState3> = (0..3_000).map(|i| stream.state(i)).collect();
    let profiles: Vec<_> = states.iter().map(|s| profile(s).unwrap()).collect();
    let sequential = verify_profiles(states.iter().zip(&profiles), 1e-9).unwrap();
    for id in RelationId::ALL {
        let (a, b) = (parallel.get(id), sequential.get(id));
        assert_eq!(a.statistic, b.statistic, "{id}");
        assert_eq!(a.n_applicable, b.n_applicable, "{id}");
        let ai: Vec<u64> = a.worst.iter().map(|w| w.index).collect();
        let bi: Vec<u64> = b.worst.iter().map(|w| w.index).collect();
        assert_eq!(ai, bi, "{id}");
    }
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn independent_seeds_give_consistent_distributions() {
    let run = |seed| ensemble_profiles(SamplerConfig::new(seed, 20_000).unwrap()).unwrap();
    let (a, b) = (run(1), run(2));
    let stats: [fn(&tripartite::ResourceProfile) -> f64; 4] =
        [|p| p.gmc, |p| p.fill, |p| p.coherence, |p| p.steering_max];
    for f in stats {
        let (ma, sa) = mean_and_se(&a.iter().map(f).collect::<Vec<_>>());
        let (mb, sb) = mean_and_se(&b.iter().map(f).collect::<Vec<_>>());
        assert!(
            (ma - mb).abs() < 5.0 * (sa * sa + sb * sb).sqrt(),
            "{ma} vs {mb}"
        );
    }
    let purity: Vec<f64> = a.iter().map(|p| p.marginal_purities.a).collect();
    let (m, se) = mean_and_se(&purity);
    assert!((m - 2.0 / 3.0).abs() < 5.0 * se, "mean purity {m}");
}
