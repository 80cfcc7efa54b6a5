use serde::{Deserialize, Serialize};

use crate::topics::TopicModel;
use crate::{Error, Result};

/// `u.v / (|u| |v|)`, clamped to `[0, 1]` when both inputs are
/// non-negative and to `[-1, 1]` otherwise.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum();
    let nv: f64 = v.iter().map(|b| b * b).sum();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    // sqrt(a * a) == a in IEEE arithmetic, so identical inputs give exactly 1.
    let mut denom = (nu * nv).sqrt();
    if !denom.is_normal() {
        denom = nu.sqrt() * nv.sqrt();
    }
    let lower = if u.iter().chain(v).all(|&x| x >= 0.0) {
        0.0
    } else {
        -1.0
    };
    Ok((dot / denom).clamp(lower, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicMatch {
    pub community_topic: usize,
    pub best_group_topic: usize,
    pub similarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    pub per_topic: Vec<TopicMatch>,
    pub average: f64,
}

/// Matches every community topic to its most similar group topic.
///
/// Several community topics may pick the same group topic; the first
/// group topic wins ties.
pub fn group_similarity(community: &TopicModel, group: &TopicModel) -> Result<SimilarityReport> {
    if community.vocabulary != group.vocabulary {
        return Err(Error::VocabularyMismatch);
    }
    if group.phi.is_empty() || community.phi.is_empty() {
        return Err(Error::InvalidArgument("model has no topics".into()));
    }
    let mut per_topic = Vec::with_capacity(community.phi.len());
    for (k, row) in community.phi.iter().enumerate() {
        let mut best = (0, f64::NEG_INFINITY);
        for (j, other) in group.phi.iter().enumerate() {
            let s = cosine_similarity(row, other)?;
            if s > best.1 {
                best = (j, s);
            }
        }
        per_topic.push(TopicMatch {
            community_topic: k,
            best_group_topic: best.0,
            similarity: best.1,
        });
    }
    let average = per_topic.iter().map(|m| m.similarity).sum::<f64>() / per_topic.len() as f64;
    Ok(SimilarityReport { per_topic, average })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Vocabulary;
    use crate::topics::LdaConfig;

    fn model(phi: Vec<Vec<f64>>) -> TopicModel {
        let v = phi[0].len();
        TopicModel {
            config: LdaConfig::new(phi.len(), 0),
            vocabulary: Vocabulary::from_terms((0..v).map(|i| format!("w{i:02}"))),
            phi,
            theta: vec![],
            log_likelihood_trace: vec![],
        }
    }

    #[test]
    fn cosine_trivials() {
        assert_eq!(cosine_similarity(&[0.2, 0.3, 0.5], &[0.2, 0.3, 0.5]).unwrap(), 1.0);
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let s = cosine_similarity(&[1.0, 1.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!((s - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(cosine_similarity(&[1.0, 2.0], &[-1.0, -2.0]).unwrap(), -1.0);
    }

    #[test]
    fn cosine_errors() {
        assert!(matches!(cosine_similarity(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::ZeroVector)));
        assert!(matches!(cosine_similarity(&[1.0], &[1.0, 0.0]), Err(Error::LengthMismatch(1, 2))));
    }

    #[test]
    fn permuted_topics_match_exactly() {
        let c = model(vec![vec![0.7, 0.2, 0.1], vec![0.1, 0.1, 0.8], vec![0.3, 0.4, 0.3]]);
        let g = model(vec![c.phi[2].clone(), c.phi[0].clone(), c.phi[1].clone()]);
        let r = group_similarity(&c, &g).unwrap();
        assert_eq!(r.average, 1.0);
        let picks: Vec<usize> = r.per_topic.iter().map(|m| m.best_group_topic).collect();
        assert_eq!(picks, [1, 2, 0]);
    }

    #[test]
    fn single_group_topic_shared_by_both() {
        let c = model(vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]]);
        let g = model(vec![vec![0.5, 0.5, 0.0, 0.0]]);
        let r = group_similarity(&c, &g).unwrap();
        for m in &r.per_topic {
            assert_eq!(m.best_group_topic, 0);
            assert!((m.similarity - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
        assert!((r.average - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn vocabulary_mismatch() {
        let c = model(vec![vec![0.5, 0.5]]);
        let g = model(vec![vec![0.2, 0.3, 0.5]]);
        assert!(matches!(group_similarity(&c, &g), Err(Error::VocabularyMismatch)));
    }
}
