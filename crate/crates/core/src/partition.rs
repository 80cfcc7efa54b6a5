//! Opinion leaders versus majority users.
//!
//! Users are ranked by authority (descending, ties by user id) and the
//! shortest prefix whose cumulative share of total authority reaches the
//! threshold forms the opinion-leader group. Everyone else is a majority
//! user.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::HitsScores;
use crate::{Error, Result};

pub const DEFAULT_THRESHOLD: f64 = 0.80;

/// Slack on the cumulative-share comparison. Prefix sums of values that
/// add up to the threshold in exact arithmetic (ten users at 0.1, say) can
/// land one ulp short of it.
const SHARE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Leader,
    Majority,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Leader => "leader",
            Group::Majority => "majority",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// Opinion leaders by descending authority.
    pub leaders: Vec<String>,
    pub majority: BTreeSet<String>,
    pub threshold: f64,
    pub leader_authority_share: f64,
    pub leader_fraction: f64,
}

impl Partition {
    pub fn group_of(&self, user: &str) -> Option<Group> {
        if self.majority.contains(user) {
            Some(Group::Majority)
        } else if self.leaders.iter().any(|l| l == user) {
            Some(Group::Leader)
        } else {
            None
        }
    }

    pub fn leader_set(&self) -> BTreeSet<&str> {
        self.leaders.iter().map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.leaders.len() + self.majority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Users ordered by authority descending, ties broken by id ascending.
fn ranked(scores: &HitsScores) -> Vec<(&str, f64)> {
    let mut users: Vec<(&str, f64)> = scores
        .authority
        .iter()
        .map(|(u, &a)| (u.as_str(), a))
        .collect();
    users.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(b.0))
    });
    users
}

/// Splits users at the smallest authority prefix holding `threshold` of the total.
///
/// A threshold of 1 makes every user a leader, including users with zero
/// authority.
pub fn partition_by_authority(scores: &HitsScores, threshold: f64) -> Result<Partition> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    if scores.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let ranked = ranked(scores);
    let total: f64 = ranked.iter().map(|(_, a)| a).sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateAuthority);
    }

    let mut cut = ranked.len();
    let mut cumulative = 0.0;
    if threshold < 1.0 {
        for (i, (_, a)) in ranked.iter().enumerate() {
            cumulative += a;
            if cumulative / total >= threshold - SHARE_EPS {
                cut = i + 1;
                break;
            }
        }
    }
    let leaders: Vec<String> = ranked[..cut].iter().map(|(u, _)| u.to_string()).collect();
    let majority: BTreeSet<String> = ranked[cut..].iter().map(|(u, _)| u.to_string()).collect();
    let leader_total: f64 = ranked[..cut].iter().map(|(_, a)| a).sum();
    Ok(Partition {
        leader_fraction: leaders.len() as f64 / ranked.len() as f64,
        leader_authority_share: leader_total / total,
        leaders,
        majority,
        threshold,
    })
}

/// Rounds to four decimal places, the precision partition summaries use.
pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

/// Fraction of users who are opinion leaders, to four decimal places.
///
/// ```
/// use influencer_topics::partition::leader_fraction;
/// // 2559 leaders among 355,139 users is 0.72%.
/// assert_eq!(leader_fraction(2559, 355_139), 0.0072);
/// ```
pub fn leader_fraction(n_leaders: usize, n_users: usize) -> f64 {
    if n_users == 0 {
        return 0.0;
    }
    round4(n_leaders as f64 / n_users as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub n_leaders: usize,
    pub n_majority: usize,
    pub leader_fraction: f64,
    pub leader_authority_share: f64,
}

pub fn partition_stats(partition: &Partition, scores: &HitsScores) -> PartitionStats {
    let total: f64 = scores.authority.values().sum();
    let leader_total: f64 = partition
        .leaders
        .iter()
        .filter_map(|u| scores.authority.get(u))
        .sum();
    let share = if total > 0.0 { leader_total / total } else { 0.0 };
    PartitionStats {
        n_leaders: partition.leaders.len(),
        n_majority: partition.majority.len(),
        leader_fraction: leader_fraction(partition.leaders.len(), partition.len()),
        leader_authority_share: round4(share),
    }
}

/// Authorities by rank for plotting, with a floored copy for log axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorityDistribution {
    pub linear: Vec<(usize, f64)>,
    /// Same series with zeros raised to the smallest positive normal `f64`.
    pub log_floor: Vec<(usize, f64)>,
}

pub fn authority_distribution(scores: &HitsScores) -> AuthorityDistribution {
    let linear: Vec<(usize, f64)> = ranked(scores)
        .into_iter()
        .enumerate()
        .map(|(i, (_, a))| (i, a))
        .collect();
    let log_floor = linear
        .iter()
        .map(|&(i, a)| (i, a.max(f64::MIN_POSITIVE)))
        .collect();
    AuthorityDistribution { linear, log_floor }
}

/// One CSV row per user: `rank,user_id,authority,cumulative_share,group`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub rank: usize,
    pub user_id: String,
    pub authority: f64,
    pub cumulative_share: f64,
    pub group: Group,
}

pub fn rank_table(scores: &HitsScores, partition: &Partition) -> Vec<RankRow> {
    let ranked = ranked(scores);
    let total: f64 = ranked.iter().map(|(_, a)| a).sum();
    let leaders = partition.leader_set();
    let mut cumulative = 0.0;
    ranked
        .into_iter()
        .enumerate()
        .map(|(rank, (user, a))| {
            cumulative += a;
            RankRow {
                rank,
                user_id: user.to_string(),
                authority: a,
                cumulative_share: if total > 0.0 { cumulative / total } else { 0.0 },
                group: if leaders.contains(user) {
                    Group::Leader
                } else {
                    Group::Majority
                },
            }
        })
        .collect()
}
