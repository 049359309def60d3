//! DIMACS-like edge lists.
//!
//! ```text
//! c comment
//! p edge 4 3        (or `p arc` for a directed graph)
//! n 2 5             node 2 gets weight 5 (nodes are 1-based, default weight 1)
//! e 1 2 3           edge 1-2 with weight 3 (default 1, `INF` allowed)
//! ```

use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

fn perr(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        msg: msg.into(),
    }
}

/// Tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<WeightedGraph> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut node_weights: Vec<Weight> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let toks = tokens(raw);
        let Some(&(col, tag)) = toks.first() else {
            continue;
        };
        let num = |k: usize, what: &str| -> Result<usize> {
            let &(c, t) = toks
                .get(k)
                .ok_or_else(|| perr(ln, raw.len() + 1, format!("missing {what}")))?;
            t.parse::<usize>()
                .map_err(|_| perr(ln, c, format!("expected {what}, found {t:?}")))
        };
        let weight = |k: usize| -> Result<Weight> {
            match toks.get(k) {
                None => Ok(Weight::Finite(1)),
                Some(&(_, "INF")) => Ok(Weight::Inf),
                Some(&(c, t)) => match t.parse::<u64>() {
                    Ok(0) | Err(_) => Err(perr(
                        ln,
                        c,
                        format!("expected a positive weight or INF, found {t:?}"),
                    )),
                    Ok(w) => Ok(Weight::Finite(w)),
                },
            }
        };
        let node = |k: usize, n: usize| -> Result<usize> {
            let v = num(k, "node id")?;
            if v == 0 || v > n {
                return Err(perr(ln, toks[k].0, format!("node {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(perr(ln, col, "second problem line"));
                }
                let directed = match toks.get(1) {
                    Some(&(_, "edge")) | Some(&(_, "cut")) => false,
                    Some(&(_, "arc")) => true,
                    Some(&(c, t)) => return Err(perr(ln, c, format!("unknown format {t:?}"))),
                    None => return Err(perr(ln, raw.len() + 1, "missing format")),
                };
                let n = num(2, "node count")?;
                let m = num(3, "edge count")?;
                node_weights = vec![Weight::Finite(1); n];
                header = Some((directed, n, m));
            }
            "n" | "e" | "a" => {
                let Some((directed, n, _)) = header else {
                    return Err(perr(ln, col, "data before the problem line"));
                };
                if tag == "n" {
                    let v = node(1, n)?;
                    node_weights[v] = weight(2)?;
                } else {
                    if (tag == "a") != directed {
                        return Err(perr(
                            ln,
                            col,
                            format!("`{tag}` line does not match the problem format"),
                        ));
                    }
                    edges.push((node(1, n)?, node(2, n)?, weight(3)?, ln));
                }
            }
            other => return Err(perr(ln, col, format!("unknown line type {other:?}"))),
        }
    }
    let (directed, _, m) = header.ok_or_else(|| perr(1, 1, "missing problem line"))?;
    if edges.len() != m {
        return Err(perr(
            text.lines().count().max(1),
            1,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let plain: Vec<_> = edges.iter().map(|&(u, v, w, _)| (u, v, w)).collect();
    WeightedGraph::new(directed, node_weights, plain).map_err(|e| match e {
        Error::InvalidGraph(msg) => {
            // Point at the offending edge line when the message names an edge.
            let line = edges
                .iter()
                .find(|&&(u, v, _, _)| {
                    msg.contains(&format!("({u},{v})")) || msg.contains(&format!("node {u}"))
                })
                .map_or(1, |e| e.3);
            perr(line, 1, msg)
        }
        other => other,
    })
}

/// Writes a graph in the same format (1-based ids, weights always explicit).
pub fn write_dimacs(g: &WeightedGraph) -> String {
    let mut s = format!(
        "p {} {} {}\n",
        if g.is_directed() { "arc" } else { "edge" },
        g.n(),
        g.m()
    );
    for v in 0..g.n() {
        if g.node_weight(v) != Weight::Finite(1) {
            s.push_str(&format!("n {} {}\n", v + 1, g.node_weight(v)));
        }
    }
    let tag = if g.is_directed() { 'a' } else { 'e' };
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        s.push_str(&format!("{tag} {} {} {}\n", u + 1, v + 1, g.edge_weight(e)));
    }
    s
}
