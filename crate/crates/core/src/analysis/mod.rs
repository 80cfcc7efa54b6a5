//! Group comparisons: topic similarity to the whole community, word
//! frequency factors, and topic-weight correlation with a price series.

mod correlation;
mod similarity;
pub mod stats;
mod timeseries;

pub use correlation::{windowed_correlation, CorrelationResult, DateWindow};
pub use similarity::{cosine_similarity, group_similarity, SimilarityReport, TopicMatch};
pub use stats::{pearson_r, Pearson};
pub use timeseries::{
    min_max_scale, rolling_mean, topic_weight_series, PriceSeries, TopicTimeSeries,
    DEFAULT_WINDOW_DAYS,
};

use crate::{Error, Result};

/// How much larger the majority share of a word is than the leaders',
/// as a factor: `maj_pct / op_pct - 1`.
pub fn relative_difference(op_pct: f64, maj_pct: f64) -> Result<f64> {
    if op_pct == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    if !(op_pct > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "opinion-leader percentage must be positive, got {op_pct}"
        )));
    }
    Ok(maj_pct / op_pct - 1.0)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn price_row() {
        let f = relative_difference(0.85, 1.89).unwrap();
        assert!((f - 1.2235294117647058).abs() < 1e-12);
        assert_eq!((f * 100.0).round() / 100.0, 1.22);
    }

    #[test]
    fn core_row() {
        let f = relative_difference(0.07, 0.02).unwrap();
        assert!((f - (-0.7142857142857143)).abs() < 1e-12);
    }

    #[test]
    fn equal_percentages() {
        assert_eq!(relative_difference(0.4, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn zero_baseline() {
        assert!(matches!(relative_difference(0.0, 1.0), Err(Error::ZeroBaseline)));
        assert!(relative_difference(-1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn factor_round_trip(a in 1e-6f64..100.0, f in -0.999f64..50.0) {
            let got = relative_difference(a, a * (1.0 + f)).unwrap();
            prop_assert!((got - f).abs() < 1e-9);
        }
    }
}
