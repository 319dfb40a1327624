use cesaro::averages::{final_value_z, periodic_average};
use cesaro::catalog::{coefficients_from_transform, periodic_transform, synthesize, transform_of, ExpPolyTerm, SignalSpec, TimeDomain};
use cesaro::{Complex, Domain, RationalTransform, Tolerances};
use proptest::prelude::*;

fn real_term() -> impl Strategy<Value = Vec<ExpPolyTerm>> {
    (-2.0..2.0f64, -0.95..0.95f64, 0u32..=2).prop_map(|(a, p, k)| vec![ExpPolyTerm::real(a, p, k)])
}

fn conjugate_pair() -> impl Strategy<Value = Vec<ExpPolyTerm>> {
    (-1.0..1.0f64, -1.0..1.0f64, 0.3..1.0f64, 0.1..3.0f64, 0u32..=1).prop_map(|(re, im, r, theta, k)| {
        let a = Complex::new(re, im);
        let p = Complex::from_polar(r, theta);
        vec![ExpPolyTerm::new(a, p, k), ExpPolyTerm::new(a.conj(), p.conj(), k)]
    })
}

fn discrete_spec() -> impl Strategy<Value = SignalSpec> {
    // Clusters of high-order poles make the power series ill-conditioned; keep bases apart.
    (prop::collection::vec(real_term(), 0..=3), prop::collection::vec(conjugate_pair(), 0..=2))
        .prop_map(|(a, b)| a.into_iter().chain(b).flatten().collect::<Vec<_>>())
        .prop_filter("bases too close", |terms| {
            terms.iter().enumerate().all(|(i, t)| {
                terms[..i].iter().all(|u| u.base == t.base.conj() || (u.base - t.base).norm() >= 0.2)
            })
        })
        .prop_map(|terms| SignalSpec::terms(TimeDomain::Discrete, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_of_the_transform_is_the_signal(spec in discrete_spec()) {
        let direct = synthesize(&spec, 64, 1.0).unwrap();
        let series = coefficients_from_transform(&transform_of(&spec).unwrap(), 64).unwrap();
        for (n, (x, y)) in direct.iter().zip(&series).enumerate() {
            prop_assert!((x - y).abs() <= 1e-8 * x.abs().max(1.0), "n = {n}: {x} vs {y}");
        }
    }

    #[test]
    fn json_round_trip(spec in discrete_spec()) {
        let back = SignalSpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(synthesize(&back, 32, 1.0).unwrap(), synthesize(&spec, 32, 1.0).unwrap());
    }

    #[test]
    fn periodic_series_repeats_the_pattern(pattern in prop::collection::vec(-1.0..1.0f64, 1..=12)) {
        let series = coefficients_from_transform(&periodic_transform(&pattern).unwrap(), 5 * pattern.len()).unwrap();
        for (n, x) in series.iter().enumerate() {
            prop_assert!((x - pattern[n % pattern.len()]).abs() <= 1e-12);
        }
    }

    #[test]
    fn constant_pattern_is_a_scaled_step(c in -5.0..5.0f64, len in 1usize..=6) {
        let periodic = periodic_transform(&vec![c; len]).unwrap();
        let step = RationalTransform::from_coeffs(&[0.0, c], &[-1.0, 1.0], Domain::Z).unwrap();
        let probes = [Complex::new(1.5, 0.5), Complex::new(-2.0, 1.0), Complex::new(0.0, 3.0)];
        prop_assert!(periodic.agrees_with(&step, &probes, 1e-12));
        prop_assert!((periodic_average(&vec![c; len]).unwrap() - c).abs() <= 1e-12 * c.abs().max(1.0));
    }

    #[test]
    fn zero_padded_pattern_mean(c in -1.0..1.0f64, zeros in 0usize..=8) {
        let mut pattern = vec![c];
        pattern.extend(std::iter::repeat_n(0.0, zeros));
        let v = final_value_z(&periodic_transform(&pattern).unwrap(), &Tolerances::default()).unwrap();
        prop_assert!((v.value.unwrap() - c / (zeros + 1) as f64).abs() <= 1e-9);
    }
}
