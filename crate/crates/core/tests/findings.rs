mod oracle;

use proptest::prelude::*;
use q4eda_core::convert::{detect_pattern, detect_trend, find_peaks, pattern_factor, ConverterConfig, Pattern, Trend};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn same_trend(a: Trend, b: oracle::Trend) -> bool {
    matches!(
        (a, b),
        (Trend::Ascending, oracle::Trend::Up)
            | (Trend::Descending, oracle::Trend::Down)
            | (Trend::Neutral, oracle::Trend::Flat)
    )
}

fn same_shape(a: Pattern, b: oracle::Shape) -> bool {
    matches!(
        (a, b),
        (Pattern::Stable, oracle::Shape::Stable)
            | (Pattern::Peak, oracle::Shape::Peak)
            | (Pattern::Valley, oracle::Shape::Valley)
            | (Pattern::Unstable, oracle::Shape::Unstable)
    )
}

#[test]
fn suite_matches_oracle() {
    let cfg = ConverterConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let suite = oracle::finding_suite(&mut rng);
    let mut seen = std::collections::HashSet::new();
    for (name, x) in &suite {
        let p = detect_pattern(x, &cfg);
        assert!(same_trend(detect_trend(x, &cfg), oracle::trend(x)), "{name}");
        assert!(same_shape(p.pattern, oracle::shape(x)), "{name}: {:?}", p);
        seen.insert(p.pattern);
    }
    // the suite exercises every class
    assert_eq!(seen.len(), 4);
}

fn series() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-20.0..20.0f64, 1..40)
}

proptest! {
    #[test]
    fn peaks_match_oracle(x in series()) {
        let got: Vec<(usize, f64, f64)> =
            find_peaks(&x, 0.5).iter().map(|p| (p.index, p.prominence, p.width)).collect();
        let want = oracle::peaks(&x);
        prop_assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            prop_assert_eq!(g.0, w.0);
            prop_assert!((g.1 - w.1).abs() < 1e-9 && (g.2 - w.2).abs() < 1e-9, "{:?} {:?}", g, w);
        }
    }

    #[test]
    fn pattern_factor_antisymmetric(x in series()) {
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        prop_assert!((pattern_factor(&x, 0.5) + pattern_factor(&neg, 0.5)).abs() < 1e-9);
    }

    #[test]
    fn classification_matches_oracle(x in series()) {
        let cfg = ConverterConfig::default();
        prop_assert!(same_trend(detect_trend(&x, &cfg), oracle::trend(&x)));
        prop_assert!(same_shape(detect_pattern(&x, &cfg).pattern, oracle::shape(&x)));
    }

    #[test]
    fn shifting_keeps_the_pattern(x in series(), shift in -100.0..100.0f64) {
        let cfg = ConverterConfig::default();
        let moved: Vec<f64> = x.iter().map(|v| v + shift).collect();
        prop_assert!((pattern_factor(&x, 0.5) - pattern_factor(&moved, 0.5)).abs() < 1e-6);
        prop_assert_eq!(detect_trend(&x, &cfg), detect_trend(&moved, &cfg));
    }
}
