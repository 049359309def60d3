use std::collections::HashSet;

use super::{Weight, WeightedGraph};
use crate::error::{Error, Result};

/// Correspondence between a graph and its shrunk version.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkMap {
    /// New id of every old node.
    pub old_to_new: Vec<usize>,
    /// New id of each shrunk component, in input order.
    pub comp_nodes: Vec<usize>,
    /// Inserted intermediate nodes with the old edge each one subdivides.
    pub intermediates: Vec<(usize, usize)>,
    /// For every old edge, the new edge ids that replace it (empty if deleted).
    pub edge_images: Vec<Vec<usize>>,
}

/// Replaces each node set by a single node.
///
/// Edges inside a set are deleted. A boundary edge that would duplicate an
/// existing one is subdivided by an `Inf`-weight node whose two half-edges
/// both keep the original edge weight, so the result stays simple and both
/// node and edge cut values are preserved. Shrunk nodes get `Inf` weight.
pub fn shrink_components(
    g: &WeightedGraph,
    comps: &[Vec<usize>],
) -> Result<(WeightedGraph, ShrinkMap)> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::InvalidInstance(format!("component {i} is empty")));
        }
        for &v in c {
            if v >= n {
                return Err(Error::InvalidInstance(format!("node {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::InvalidInstance(format!(
                    "node {v} appears in two components"
                )));
            }
            owner[v] = i;
        }
        if !g.induces_connected(c) {
            return Err(Error::DisconnectedComponent { index: i });
        }
    }

    let mut old_to_new = vec![usize::MAX; n];
    let mut comp_nodes = vec![usize::MAX; comps.len()];
    let mut weights = Vec::new();
    for v in 0..n {
        let c = owner[v];
        if c == usize::MAX {
            old_to_new[v] = weights.len();
            weights.push(g.node_weight(v));
        } else {
            if comp_nodes[c] == usize::MAX {
                comp_nodes[c] = weights.len();
                weights.push(Weight::Inf);
            }
            old_to_new[v] = comp_nodes[c];
        }
    }

    let mut edges = Vec::new();
    let mut present = HashSet::new();
    let mut intermediates = Vec::new();
    let mut edge_images = vec![Vec::new(); g.m()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (old_to_new[u], old_to_new[v]);
        if a == b {
            continue;
        }
        let key = if g.is_directed() {
            (a, b)
        } else {
            (a.min(b), a.max(b))
        };
        let w = g.edge_weight(e);
        if present.insert(key) {
            edge_images[e].push(edges.len());
            edges.push((a, b, w));
        } else {
            let m = weights.len();
            weights.push(Weight::Inf);
            intermediates.push((m, e));
            edge_images[e].extend([edges.len(), edges.len() + 1]);
            edges.push((a, m, w));
            edges.push((m, b, w));
        }
    }
    let shrunk = WeightedGraph::new(g.is_directed(), weights, edges)?;
    Ok((
        shrunk,
        ShrinkMap {
            old_to_new,
            comp_nodes,
            intermediates,
            edge_images,
        },
    ))
}
