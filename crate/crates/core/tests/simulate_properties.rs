use affine_tail::bounds::{theorem1_rhs, theorem1_threshold};
use affine_tail::simulate::{
    binomial_band, enumerate_exact_many, estimate_tail_many, generate, trial_rng, History, Kernel, ProcessSpec,
    TailProbe, DEFAULT_LEVEL,
};
use affine_tail::TheoremQuery;
use proptest::prelude::*;
use rand::Rng;

fn battery_index() -> impl Strategy<Value = ProcessSpec> {
    (0..6usize).prop_map(|i| ProcessSpec::battery()[i])
}

fn history() -> impl Strategy<Value = History> {
    (0u64..200, 0.0..1.0f64, 0.0..1.0f64).prop_map(|(m, s, mu)| History {
        m,
        sum: (s * m as f64).round(),
        mean_sum: mu * m as f64,
        deviation: (mu - s) * m as f64,
    })
}

proptest! {
    #[test]
    fn kernel_mean_is_conditional_mean(spec in battery_index(), h in history()) {
        let mu = spec.cond_mean(&h);
        prop_assert!((0.0..=1.0).contains(&mu));
        let k = spec.kernel(mu);
        prop_assert!((k.mean() - mu).abs() <= 1e-15, "{spec}: {k:?} vs {mu}");
        if let Kernel::Two(atoms) = k {
            prop_assert!(atoms.iter().all(|&(v, p)| (0.0..=1.0).contains(&v) && p >= 0.0));
            prop_assert!((atoms[0].1 + atoms[1].1 - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn trajectories_stay_in_range(spec in battery_index(), n in 1u64..300, seed in any::<u64>()) {
        let t = generate(&spec, n, seed).unwrap();
        prop_assert!(t.samples.iter().all(|x| (0.0..=1.0).contains(x)));
        prop_assert!((-1.0..=1.0).contains(&t.bias()));
        prop_assert!((-1.0..=1.0).contains(&t.predicted_bias()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn estimate_independent_of_workers(spec in battery_index(), seed in any::<u64>()) {
        let q = TheoremQuery::new(20, 0.2, 0.5).unwrap();
        let probe = TailProbe { threshold: theorem1_threshold(&q), bound: theorem1_rhs(&q).unwrap() };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
                estimate_tail_many(&spec, 20, 2000, &[probe], seed, DEFAULT_LEVEL).unwrap()
            })
        };
        let one = run(1);
        prop_assert_eq!(&one, &run(4));
        let e = one[0];
        prop_assert!(e.violations <= e.trials);
        prop_assert_eq!(e.freq, e.violations as f64 / e.trials as f64);
    }
}

#[test]
fn empirical_step_means_within_four_standard_errors() {
    let draws = 1_000_000;
    let mut rng = trial_rng(7);
    for spec in ProcessSpec::battery() {
        for mu in [0.0f64, 0.05, 0.3, 0.5, 0.8, 0.95, 1.0] {
            let k = match spec {
                // the two-point kernel is only defined for c <= min(mu, 1 - mu)
                ProcessSpec::TwoPoint { c, .. } if c > mu.min(1.0 - mu) => continue,
                ProcessSpec::PointMass { .. } => ProcessSpec::PointMass { mu }.kernel(mu),
                _ => spec.kernel(mu),
            };
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..draws {
                let x = k.draw(rng.gen::<f64>());
                sum += x;
                sq += x * x;
            }
            let mean = sum / draws as f64;
            let var = (sq / draws as f64 - mean * mean).max(0.0);
            let se = (var / draws as f64).sqrt();
            assert!(
                (mean - mu).abs() <= 4.0 * se + 1e-12,
                "{spec} at mu = {mu}: {mean} (se {se})"
            );
        }
    }
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    let trials = 20_000;
    let cases: Vec<(f64, f64)> = vec![(0.0, 0.5), (0.5, 1.0), (-0.5, 1.0), (0.0, 0.1)];
    for (i, spec) in ProcessSpec::battery().into_iter().enumerate() {
        for n in [4u64, 8, 12] {
            let qs: Vec<TheoremQuery> = cases
                .iter()
                .map(|&(a, b)| TheoremQuery::new(n, a, b).unwrap())
                .collect();
            let thrs: Vec<_> = qs.iter().map(theorem1_threshold).collect();
            let exact = enumerate_exact_many(&spec, n, &thrs).unwrap();
            let probes: Vec<TailProbe> = qs
                .iter()
                .zip(&thrs)
                .map(|(q, t)| TailProbe {
                    threshold: *t,
                    bound: theorem1_rhs(q).unwrap(),
                })
                .collect();
            let ests = estimate_tail_many(&spec, n, trials, &probes, 500 + i as u64 * 31 + n, DEFAULT_LEVEL).unwrap();
            for ((e, x), q) in ests.iter().zip(&exact).zip(&qs) {
                let (lo, hi) = binomial_band(x.exact_prob, trials, 0.999);
                assert!(
                    (lo..=hi).contains(&e.violations),
                    "{spec} n={n} a={} b={}: {} violations outside [{lo}, {hi}] around {}",
                    q.a,
                    q.b,
                    e.violations,
                    x.exact_prob
                );
            }
        }
    }
}
