//! Planarity testing and combinatorial embeddings.
//!
//! Each biconnected block is embedded by path addition (Demoucron, Malgrange
//! and Pertuiset): start from a cycle, repeatedly pick the bridge fragment
//! with the fewest admissible faces and draw one of its paths into a face.
//! Block rotations are then merged at cut vertices and faces are traced.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A rotation system with its faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarEmbedding {
    pub graph: WeightedGraph,
    /// Neighbours of each node in cyclic order.
    pub rotation: Vec<Vec<usize>>,
    /// Face boundaries as dart sequences `(u, v)`.
    pub faces: Vec<Vec<(usize, usize)>>,
    pub outer_face: usize,
}

impl PlanarEmbedding {
    /// Builds an embedding from a rotation system, tracing faces.
    pub fn from_rotation(graph: WeightedGraph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let faces = trace_faces(&rotation);
        let (n, m, f) = (graph.n() as i64, graph.m() as i64, faces.len() as i64);
        if n - m + f != 2 {
            return Err(Error::NotPlanar);
        }
        let outer_face = (0..faces.len())
            .max_by_key(|&i| (faces[i].len(), std::cmp::Reverse(i)))
            .unwrap_or(0);
        Ok(PlanarEmbedding {
            graph,
            rotation,
            faces,
            outer_face,
        })
    }

    /// Nodes along a face walk (a node repeats if the walk revisits it).
    pub fn face_nodes(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&(u, _)| u).collect()
    }

    /// Faces whose boundary touches `v`.
    pub fn faces_of(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].iter().any(|&(u, _)| u == v))
            .collect()
    }

    /// Rotation expressed as edge ids.
    pub fn rotation_edges(&self, v: usize) -> Vec<usize> {
        self.rotation[v]
            .iter()
            .map(|&u| {
                self.graph
                    .find_edge(v, u)
                    .expect("rotation follows the graph")
            })
            .collect()
    }

    /// Every edge appears twice across all face walks, once per direction.
    pub fn is_consistent(&self) -> bool {
        let mut seen = HashSet::new();
        for f in &self.faces {
            for &d in f {
                if !seen.insert(d) {
                    return false;
                }
            }
        }
        seen.len() == 2 * self.graph.m()
            && self
                .graph
                .edges()
                .iter()
                .all(|&(u, v)| seen.contains(&(u, v)) && seen.contains(&(v, u)))
    }
}

/// Faces of a rotation system: the dart after `(u, v)` is `(v, w)` where `w`
/// follows `u` in the rotation at `v`.
fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = rotation.len();
    let mut pos: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for v in 0..n {
        for (i, &u) in rotation[v].iter().enumerate() {
            pos[v].insert(u, i);
        }
    }
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = Vec::new();
    for u in 0..n {
        for &v in &rotation[u] {
            if used.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                face.push((a, b));
                let r = &rotation[b];
                let w = r[(pos[b][&a] + 1) % r.len()];
                a = b;
                b = w;
            }
            faces.push(face);
        }
    }
    if faces.is_empty() {
        faces.push(Vec::new());
    }
    faces
}

/// Planar embedding of a connected undirected graph.
pub fn build_embedding(g: &WeightedGraph) -> Result<PlanarEmbedding> {
    if g.is_directed() {
        return Err(Error::InvalidGraph(
            "embedding needs an undirected graph".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::InvalidGraph(
            "embedding needs a connected graph".into(),
        ));
    }
    let n = g.n();
    let m = g.m();
    if n >= 3 && m > 3 * n - 6 {
        return Err(Error::NotPlanar);
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let rot = embed_block(g, &block)?;
        // Each block occupies one contiguous segment of the rotation at shared nodes.
        for (v, order) in rot {
            rotation[v].extend(order);
        }
    }
    PlanarEmbedding::from_rotation(g.clone(), rotation)
}

/// Edge sets of the biconnected components.
fn blocks(g: &WeightedGraph) -> Vec<Vec<usize>> {
    struct St<'a> {
        g: &'a WeightedGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    fn dfs(s: &mut St, u: usize, parent_edge: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for &(v, e) in s.g.neighbors(u) {
            if e == parent_edge {
                continue;
            }
            if s.disc[v] == 0 {
                s.stack.push(e);
                dfs(s, v, e);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(x) = s.stack.pop() {
                        block.push(x);
                        if x == e {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[v] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = g.n();
    let mut s = St {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

/// Rotation at every node of one biconnected block.
fn embed_block(g: &WeightedGraph, block: &[usize]) -> Result<Vec<(usize, Vec<usize>)>> {
    if block.len() == 1 {
        let (u, v) = g.endpoints(block[0]);
        return Ok(vec![(u, vec![v]), (v, vec![u])]);
    }
    // Local adjacency restricted to the block.
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in block {
        let (u, v) = g.endpoints(e);
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut nodes: Vec<usize> = adj.keys().copied().collect();
    nodes.sort_unstable();
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    let cycle = find_cycle(&adj, nodes[0]);
    let mut in_h: HashSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];

    while h_edges.len() < block.len() {
        let frags = fragments(&adj, &in_h, &h_edges);
        let mut choice: Option<(usize, usize, usize)> = None; // (admissible count, fragment, face)
        for (fi, frag) in frags.iter().enumerate() {
            let adm: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            if adm.is_empty() {
                return Err(Error::NotPlanar);
            }
            if choice.map_or(true, |c| adm.len() < c.0) {
                choice = Some((adm.len(), fi, adm[0]));
            }
        }
        let (_, fi, f) = choice.expect("some fragment remains");
        let path = fragment_path(&adj, &in_h, &frags[fi]);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        in_h.extend(path.iter().copied());
        let face = faces.swap_remove(f);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    // Oriented faces give the rotation: in a face walk u, v, w the successor of u around v is w.
    let mut succ: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
    for f in &faces {
        let len = f.len();
        for i in 0..len {
            let (u, v, w) = (f[i], f[(i + 1) % len], f[(i + 2) % len]);
            succ.entry(v).or_default().insert(u, w);
        }
    }
    let mut out = Vec::new();
    for &v in &nodes {
        let s = &succ[&v];
        let start = adj[&v][0];
        let mut order = vec![start];
        let mut cur = s[&start];
        while cur != start {
            order.push(cur);
            cur = s[&cur];
        }
        if order.len() != adj[&v].len() {
            return Err(Error::NotPlanar);
        }
        out.push((v, order));
    }
    Ok(out)
}

fn find_cycle(adj: &HashMap<usize, Vec<usize>>, start: usize) -> Vec<usize> {
    // Iterative DFS; the first back edge closes a cycle along the tree path.
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut depth: HashMap<usize, usize> = HashMap::new();
    let mut stack = vec![(start, usize::MAX)];
    while let Some((u, p)) = stack.pop() {
        if depth.contains_key(&u) {
            continue;
        }
        depth.insert(u, if p == usize::MAX { 0 } else { depth[&p] + 1 });
        parent.insert(u, p);
        for &v in &adj[&u] {
            if v == p {
                continue;
            }
            if let Some(&dv) = depth.get(&v) {
                if dv < depth[&u] {
                    let mut cyc = vec![u];
                    let mut x = u;
                    while x != v {
                        x = parent[&x];
                        cyc.push(x);
                    }
                    return cyc;
                }
            } else {
                stack.push((v, u));
            }
        }
    }
    unreachable!("a block with two or more edges contains a cycle")
}

struct Fragment {
    /// Interior nodes (empty for a chord).
    interior: Vec<usize>,
    attachments: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(
    adj: &HashMap<usize, Vec<usize>>,
    in_h: &HashSet<usize>,
    h_edges: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut out = Vec::new();
    let mut nodes: Vec<usize> = adj.keys().copied().collect();
    nodes.sort_unstable();
    for &u in &nodes {
        if in_h.contains(&u) {
            for &v in &adj[&u] {
                if u < v && in_h.contains(&v) && !h_edges.contains(&key(u, v)) {
                    out.push(Fragment {
                        interior: Vec::new(),
                        attachments: vec![u, v],
                        chord: Some((u, v)),
                    });
                }
            }
        }
    }
    let mut seen: HashSet<usize> = HashSet::new();
    for &s in &nodes {
        if in_h.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut interior = vec![s];
        let mut att = HashSet::new();
        seen.insert(s);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[&u] {
                if in_h.contains(&v) {
                    att.insert(v);
                } else if seen.insert(v) {
                    interior.push(v);
                    q.push_back(v);
                }
            }
        }
        let mut attachments: Vec<usize> = att.into_iter().collect();
        attachments.sort_unstable();
        out.push(Fragment {
            interior,
            attachments,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachments.
fn fragment_path(
    adj: &HashMap<usize, Vec<usize>>,
    in_h: &HashSet<usize>,
    frag: &Fragment,
) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments[0];
    let interior: HashSet<usize> = frag.interior.iter().copied().collect();
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut q = VecDeque::new();
    for &v in &adj[&a] {
        if interior.contains(&v) && !parent.contains_key(&v) {
            parent.insert(v, a);
            q.push_back(v);
        }
    }
    while let Some(u) = q.pop_front() {
        for &v in &adj[&u] {
            if in_h.contains(&v) && v != a {
                let mut path = vec![v, u];
                let mut x = u;
                while parent[&x] != a {
                    x = parent[&x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if interior.contains(&v) && !parent.contains_key(&v) {
                parent.insert(v, u);
                q.push_back(v);
            }
        }
    }
    unreachable!("fragments of a block have two attachments")
}

/// Splits an oriented face cycle along a path joining two of its nodes.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let len = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let arc = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut k = from;
        while k != to {
            k = (k + 1) % len;
            out.push(face[k]);
        }
        out
    };
    let inner = &path[1..path.len() - 1];
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}
