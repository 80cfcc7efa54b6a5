use std::collections::BTreeMap;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::topics::TopicModel;
use crate::{Error, Result};

pub const DEFAULT_WINDOW_DAYS: usize = 60;

/// Daily closing prices, strictly increasing by day, all positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    points: Vec<(NaiveDate, f64)>,
}

#[derive(Deserialize)]
struct PriceRow {
    date: NaiveDate,
    close: f64,
}

impl PriceSeries {
    pub fn new(points: Vec<(NaiveDate, f64)>) -> Result<Self> {
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidPrices(format!(
                "days must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
        if let Some((day, p)) = points.iter().find(|(_, p)| !(*p > 0.0 && p.is_finite())) {
            return Err(Error::InvalidPrices(format!("price {p} on {day} is not positive")));
        }
        Ok(PriceSeries { points })
    }

    /// Reads a `date,close` CSV. Rows may come in any order.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut rdr = csv::Reader::from_reader(file);
        let mut points = Vec::new();
        for row in rdr.deserialize::<PriceRow>() {
            let row = row.map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
            points.push((row.date, row.close));
        }
        points.sort_by_key(|p| p.0);
        Self::new(points).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn points(&self) -> &[(NaiveDate, f64)] {
        &self.points
    }

    pub fn get(&self, day: NaiveDate) -> Option<f64> {
        self.points
            .binary_search_by_key(&day, |p| p.0)
            .ok()
            .map(|i| self.points[i].1)
    }
}

/// Daily mean weight of one topic, with its trailing rolling mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicTimeSeries {
    pub topic: usize,
    /// Days with at least one document.
    pub raw: Vec<(NaiveDate, f64)>,
    pub window_days: usize,
    pub smoothed: Vec<(NaiveDate, f64)>,
}

impl TopicTimeSeries {
    /// Smoothed values mapped onto `[0, 1]`, for plotting.
    pub fn scaled(&self) -> Vec<(NaiveDate, f64)> {
        let values: Vec<f64> = self.smoothed.iter().map(|p| p.1).collect();
        self.smoothed
            .iter()
            .zip(min_max_scale(&values))
            .map(|(p, v)| (p.0, v))
            .collect()
    }
}

/// Mean of the values whose day lies in `(t - window_days, t]`, for every
/// day `t` in the series. Missing days are simply absent from the mean.
pub fn rolling_mean(series: &[(NaiveDate, f64)], window_days: usize) -> Vec<(NaiveDate, f64)> {
    let mut out = Vec::with_capacity(series.len());
    let mut start = 0;
    let mut sum = 0.0;
    for (i, &(day, value)) in series.iter().enumerate() {
        sum += value;
        while (day - series[start].0).num_days() >= window_days as i64 {
            sum -= series[start].1;
            start += 1;
        }
        // Recompute rather than trust a long-running difference of sums.
        let mean = if i - start < 64 {
            series[start..=i].iter().map(|p| p.1).sum::<f64>() / (i - start + 1) as f64
        } else {
            sum / (i - start + 1) as f64
        };
        out.push((day, mean));
    }
    out
}

/// Maps values linearly onto `[0, 1]`; a constant series maps to zeros.
/// Spreads within a few ulps of the magnitude count as constant, since
/// averaging equal values need not reproduce them exactly.
pub fn min_max_scale(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let flat = !(span > 1e-12 * lo.abs().max(hi.abs()));
    values
        .iter()
        .map(|v| if flat { 0.0 } else { (v - lo) / span })
        .collect()
}

/// Daily mean of `theta[d][topic]` over the documents dated that day,
/// smoothed with a trailing `window_days` calendar window.
pub fn topic_weight_series(
    model: &TopicModel,
    docs: &[Document],
    topic: usize,
    window_days: usize,
) -> Result<TopicTimeSeries> {
    if topic >= model.num_topics() {
        return Err(Error::TopicOutOfRange {
            index: topic,
            k: model.num_topics(),
        });
    }
    if docs.len() != model.theta.len() {
        return Err(Error::LengthMismatch(docs.len(), model.theta.len()));
    }
    if window_days == 0 {
        return Err(Error::InvalidArgument("window_days must be at least 1".into()));
    }
    let mut daily: BTreeMap<NaiveDate, (f64, usize)> = BTreeMap::new();
    for (doc, theta) in docs.iter().zip(&model.theta) {
        let e = daily.entry(doc.date).or_insert((0.0, 0));
        e.0 += theta[topic];
        e.1 += 1;
    }
    let raw: Vec<(NaiveDate, f64)> = daily
        .into_iter()
        .map(|(day, (sum, n))| (day, sum / n as f64))
        .collect();
    let smoothed = rolling_mean(&raw, window_days);
    Ok(TopicTimeSeries {
        topic,
        raw,
        window_days,
        smoothed,
    })
}
