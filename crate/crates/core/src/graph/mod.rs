//! User interaction graph and HITS link analysis.

mod export;
mod hits;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{RawTweet, TweetKind};
use crate::{Error, Result};

pub use export::{export_gexf, write_gexf, write_scores_csv};
pub use hits::{hits, HitsParams, HitsScores, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Interaction type carried by an edge. Only used for export; HITS treats
/// both kinds the same.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Comment,
    Retweet,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Comment => "comment",
            EdgeKind::Retweet => "retweet",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub kind: EdgeKind,
}

/// Interactions that did not become edges, by reason.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedInteractions {
    /// Parent tweet not in the corpus.
    pub missing_parent: usize,
    /// Acting or receiving user has no post.
    pub non_posting_user: usize,
    pub self_loops: usize,
    /// Repeats of an existing (source, target, kind) edge.
    pub duplicates: usize,
}

/// Simple directed graph over posting users.
///
/// Node `i` is the `i`-th user id in lexicographic order. Edges are unique
/// per (source, target, kind) and never loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct InteractionGraph {
    nodes: Vec<String>,
    edges: BTreeSet<(usize, usize, EdgeKind)>,
    dropped: DroppedInteractions,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    dropped: DroppedInteractions,
}

impl TryFrom<GraphRepr> for InteractionGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = InteractionGraph::from_edges(r.nodes, r.edges)?;
        g.dropped = r.dropped;
        Ok(g)
    }
}

impl From<InteractionGraph> for GraphRepr {
    fn from(g: InteractionGraph) -> Self {
        GraphRepr {
            edges: g.edges().collect(),
            nodes: g.nodes,
            dropped: g.dropped,
        }
    }
}

impl InteractionGraph {
    /// Builds a graph from explicit nodes and edges.
    ///
    /// Duplicate nodes and edges collapse. Self-loops and edges touching
    /// unknown nodes are errors.
    pub fn from_edges<N, S, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = Edge>,
    {
        let set: BTreeSet<String> = nodes.into_iter().map(Into::into).collect();
        let nodes: Vec<String> = set.into_iter().collect();
        let index: HashMap<&str, usize> =
            nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut out = BTreeSet::new();
        for e in edges {
            let (Some(&s), Some(&t)) = (index.get(e.source.as_str()), index.get(e.target.as_str()))
            else {
                return Err(Error::InvalidArgument(format!(
                    "edge {} -> {} references an unknown node",
                    e.source, e.target
                )));
            };
            if s == t {
                return Err(Error::InvalidArgument(format!("self-loop on {}", e.source)));
            }
            out.insert((s, t, e.kind));
        }
        Ok(InteractionGraph {
            nodes,
            edges: out,
            dropped: DroppedInteractions::default(),
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of distinct (source, target, kind) edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|&(s, t, kind)| Edge {
            source: self.nodes[s].clone(),
            target: self.nodes[t].clone(),
            kind,
        })
    }

    pub fn index_of(&self, user: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(user)).ok()
    }

    pub fn dropped(&self) -> DroppedInteractions {
        self.dropped
    }

    /// Distinct (source, target) pairs, kinds collapsed, in index order.
    pub(crate) fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self.edges.iter().map(|&(s, t, _)| (s, t)).collect();
        arcs.dedup();
        arcs
    }

    pub fn stats(&self) -> GraphStats {
        let arcs = self.arcs();
        let mut touched = vec![false; self.nodes.len()];
        for &(s, t) in &arcs {
            touched[s] = true;
            touched[t] = true;
        }
        GraphStats {
            nodes: self.nodes.len(),
            edges: self.edges.len(),
            comment_edges: self.edges.iter().filter(|e| e.2 == EdgeKind::Comment).count(),
            retweet_edges: self.edges.iter().filter(|e| e.2 == EdgeKind::Retweet).count(),
            distinct_arcs: arcs.len(),
            isolated_nodes: touched.iter().filter(|t| !**t).count(),
            dropped: self.dropped,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub comment_edges: usize,
    pub retweet_edges: usize,
    pub distinct_arcs: usize,
    pub isolated_nodes: usize,
    pub dropped: DroppedInteractions,
}

/// Builds the interaction graph: one node per user with at least one post,
/// one edge `i -> j` when user `i` comments on or retweets a tweet by `j`.
pub fn build_graph(tweets: &[RawTweet]) -> InteractionGraph {
    let posters: BTreeSet<&str> = tweets
        .iter()
        .filter(|t| t.kind == TweetKind::Post)
        .map(|t| t.user_id.as_str())
        .collect();
    let author: HashMap<&str, &str> = tweets
        .iter()
        .map(|t| (t.id.as_str(), t.user_id.as_str()))
        .collect();

    let nodes: Vec<String> = posters.iter().map(|s| s.to_string()).collect();
    let mut dropped = DroppedInteractions::default();
    let mut edges = BTreeSet::new();
    for t in tweets {
        let kind = match t.kind {
            TweetKind::Post => continue,
            TweetKind::Comment => EdgeKind::Comment,
            TweetKind::Retweet => EdgeKind::Retweet,
        };
        let Some(&target) = t.parent_id.as_deref().and_then(|p| author.get(p)) else {
            dropped.missing_parent += 1;
            continue;
        };
        let source = t.user_id.as_str();
        if source == target {
            dropped.self_loops += 1;
            continue;
        }
        let (Ok(s), Ok(d)) = (
            nodes.binary_search_by(|n| n.as_str().cmp(source)),
            nodes.binary_search_by(|n| n.as_str().cmp(target)),
        ) else {
            dropped.non_posting_user += 1;
            continue;
        };
        if !edges.insert((s, d, kind)) {
            dropped.duplicates += 1;
        }
    }
    InteractionGraph {
        nodes,
        edges,
        dropped,
    }
}
