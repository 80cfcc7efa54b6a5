use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::stats::pearson_r;
use super::timeseries::{PriceSeries, TopicTimeSeries};
use crate::{Error, Result};

/// Inclusive range of calendar days.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DateWindow {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateWindow {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if end < start {
            return Err(Error::InvalidArgument(format!("window ends ({end}) before it starts ({start})")));
        }
        Ok(DateWindow { start, end })
    }

    pub fn contains(&self, day: NaiveDate) -> bool {
        self.start <= day && day <= self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub window: DateWindow,
    pub r: f64,
    pub p_value: f64,
    pub n: usize,
}

/// Correlates the smoothed topic weights with the price inside each window,
/// pairing values by day. A window that fails does not stop the others.
pub fn windowed_correlation(
    ts: &TopicTimeSeries,
    prices: &PriceSeries,
    windows: &[DateWindow],
) -> Vec<Result<CorrelationResult>> {
    windows
        .iter()
        .map(|&window| {
            let (x, y): (Vec<f64>, Vec<f64>) = ts
                .smoothed
                .iter()
                .filter(|(day, _)| window.contains(*day))
                .filter_map(|&(day, w)| prices.get(day).map(|p| (w, p)))
                .unzip();
            if x.len() < 3 {
                return Err(Error::InsufficientOverlap(x.len()));
            }
            let p = pearson_r(&x, &y)?;
            Ok(CorrelationResult {
                window,
                r: p.r,
                p_value: p.p_value,
                n: p.n,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn day(n: i64) -> NaiveDate {
        NaiveDate::from_ymd_opt(2018, 1, 1).unwrap() + chrono::Duration::days(n)
    }

    fn series(points: Vec<(NaiveDate, f64)>) -> TopicTimeSeries {
        TopicTimeSeries {
            topic: 0,
            raw: points.clone(),
            window_days: 1,
            smoothed: points,
        }
    }

    #[test]
    fn affine_price_gives_unit_r() {
        let ts = series((0..20).map(|i| (day(i), ((i * 7) % 5) as f64 / 10.0)).collect());
        let prices = PriceSeries::new(ts.smoothed.iter().map(|&(d, w)| (d, 300.0 * w + 1000.0)).collect()).unwrap();
        let w = DateWindow::new(day(2), day(15)).unwrap();
        let out = windowed_correlation(&ts, &prices, &[w]);
        let res = out[0].as_ref().unwrap();
        assert!((res.r - 1.0).abs() < 1e-12);
        assert_eq!(res.n, 14);
    }

    #[test]
    fn disjoint_ranges_fail_per_window() {
        let ts = series((0..10).map(|i| (day(i), i as f64)).collect());
        let prices = PriceSeries::new((100..110).map(|i| (day(i), 5.0 + i as f64)).collect()).unwrap();
        let ok = DateWindow::new(day(0), day(200)).unwrap();
        let out = windowed_correlation(&ts, &prices, &[DateWindow::new(day(0), day(9)).unwrap(), ok]);
        assert!(matches!(out[0], Err(Error::InsufficientOverlap(0))));
        assert!(matches!(out[1], Err(Error::InsufficientOverlap(0))));
    }

    #[test]
    fn only_shared_days_pair_up() {
        let ts = series(vec![(day(0), 1.0), (day(1), 2.0), (day(3), 3.0), (day(4), 5.0)]);
        let prices = PriceSeries::new(vec![(day(0), 10.0), (day(2), 11.0), (day(3), 30.0), (day(4), 50.0)]).unwrap();
        let out = windowed_correlation(&ts, &prices, &[DateWindow::new(day(0), day(4)).unwrap()]);
        let res = out[0].as_ref().unwrap();
        assert_eq!(res.n, 3);
        assert!((res.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_window_rejected() {
        assert!(DateWindow::new(day(3), day(1)).is_err());
    }
}
