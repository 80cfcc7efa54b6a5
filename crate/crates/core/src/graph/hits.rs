use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::InteractionGraph;
use crate::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HitsParams {
    pub max_iter: usize,
    /// Per-node tolerance; the stopping rule compares the summed L1 change
    /// of both vectors against `tol * N`.
    pub tol: f64,
}

impl Default for HitsParams {
    fn default() -> Self {
        HitsParams {
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
        }
    }
}

/// Authority and hub scores, each L1-normalized to sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitsScores {
    pub authority: BTreeMap<String, f64>,
    pub hub: BTreeMap<String, f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl HitsScores {
    pub fn len(&self) -> usize {
        self.authority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.authority.is_empty()
    }
}

fn normalize_l1(v: &mut [f64]) {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        v.iter_mut().for_each(|x| *x /= sum);
    }
}

/// Runs HITS by power iteration.
///
/// Starting from uniform vectors, each round sets every authority to the
/// sum of its in-neighbours' hub scores, normalizes, then sets every hub to
/// the sum of its out-neighbours' fresh authority scores and normalizes.
/// An edgeless graph is its own fixed point: uniform scores, converged.
pub fn hits(graph: &InteractionGraph, params: HitsParams) -> Result<HitsScores> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let arcs = graph.arcs();
    let uniform = 1.0 / n as f64;
    let mut auth = vec![uniform; n];
    let mut hub = vec![uniform; n];
    let mut iterations = 0;
    let mut converged = arcs.is_empty();

    if !converged {
        let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(s, t) in &arcs {
            outgoing[s].push(t);
            incoming[t].push(s);
        }
        let mut next_auth = vec![0.0; n];
        let mut next_hub = vec![0.0; n];
        while iterations < params.max_iter {
            iterations += 1;
            for (v, a) in next_auth.iter_mut().enumerate() {
                // fold from +0.0: an empty f64 sum is -0.0
                *a = incoming[v].iter().fold(0.0, |acc, &u| acc + hub[u]);
            }
            normalize_l1(&mut next_auth);
            for (u, h) in next_hub.iter_mut().enumerate() {
                *h = outgoing[u].iter().fold(0.0, |acc, &w| acc + next_auth[w]);
            }
            normalize_l1(&mut next_hub);

            let delta: f64 = auth
                .iter()
                .zip(&next_auth)
                .chain(hub.iter().zip(&next_hub))
                .map(|(old, new)| (old - new).abs())
                .sum();
            std::mem::swap(&mut auth, &mut next_auth);
            std::mem::swap(&mut hub, &mut next_hub);
            if delta < params.tol * n as f64 {
                converged = true;
                break;
            }
        }
    }

    let nodes = graph.nodes();
    Ok(HitsScores {
        authority: nodes.iter().cloned().zip(auth).collect(),
        hub: nodes.iter().cloned().zip(hub).collect(),
        iterations,
        converged,
    })
}
