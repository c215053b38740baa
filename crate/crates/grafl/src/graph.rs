//! Graph ingestion, dual-CSR adjacency, neighborhood queries and k-core
//! decomposition.
//!
//! A [`Graph`] is immutable after construction: every query below is
//! read-only and safe to call from any number of concurrent workers.
//!
//! Undirected inputs are stored as two directed arcs sharing one edge id, so
//! a node's out-list always holds its full neighborhood and in/out/total
//! degree coincide.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GraflError, Result};

/// Which arcs a neighborhood query follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "out")]
    Out,
    #[serde(rename = "in")]
    In,
    #[serde(rename = "all")]
    All,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::Out => "out",
            Direction::In => "in",
            Direction::All => "all",
        };
        write!(f, "{s}")
    }
}

/// The unit a feature value attaches to: a node or an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    #[serde(rename = "node")]
    Node,
    #[serde(rename = "edge")]
    Edge,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Node => write!(f, "node"),
            ElementKind::Edge => write!(f, "edge"),
        }
    }
}

/// A node or edge identified by its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphElement {
    pub kind: ElementKind,
    pub index: usize,
}

impl GraphElement {
    pub fn node(index: usize) -> Self {
        GraphElement {
            kind: ElementKind::Node,
            index,
        }
    }

    pub fn edge(index: usize) -> Self {
        GraphElement {
            kind: ElementKind::Edge,
            index,
        }
    }
}

/// An `ell`-hop neighborhood selector. `hops` must be >= 1.
///
/// On undirected graphs all three directions select the same set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NeighborhoodSelector {
    #[serde(rename = "dir")]
    pub direction: Direction,
    pub hops: u32,
}

impl NeighborhoodSelector {
    pub fn new(direction: Direction, hops: u32) -> Result<Self> {
        if hops < 1 {
            return Err(GraflError::Config(
                "neighborhood selector requires hops >= 1".into(),
            ));
        }
        Ok(NeighborhoodSelector { direction, hops })
    }

    pub fn one_hop(direction: Direction) -> Self {
        NeighborhoodSelector {
            direction,
            hops: 1,
        }
    }
}

/// Immutable directed (optionally weighted/attributed) graph in dual CSR
/// form with an edge index.
///
/// Invariants:
/// - `out_*` and `in_*` describe the same arc set; every arc appears exactly
///   once in each direction's CSR.
/// - An undirected edge is stored as two opposite arcs sharing one edge id;
///   neighborhood queries never report the same edge id twice per query.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    directed: bool,
    out_offsets: Vec<usize>,
    out_nbrs: Vec<u32>,
    out_eids: Vec<u32>,
    in_offsets: Vec<usize>,
    in_nbrs: Vec<u32>,
    in_eids: Vec<u32>,
    /// Edge id -> endpoints as first seen (`src, dst`).
    endpoints: Vec<(u32, u32)>,
    weights: Option<Vec<f64>>,
    node_labels: Vec<String>,
    node_attrs: Vec<(String, Vec<f64>)>,
    edge_attrs: Vec<(String, Vec<f64>)>,
}

impl Graph {
    /// Build a graph from `(src, dst)` pairs over nodes `0..n`.
    ///
    /// Duplicate pairs collapse to one edge; for undirected graphs `(u,v)`
    /// and `(v,u)` are the same pair. Self-loops are kept.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], directed: bool) -> Result<Self> {
        let weighted: Vec<(u32, u32, f64)> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::build(n, &weighted, directed, false, None)
    }

    /// Like [`Graph::from_edges`] but with per-edge weights; duplicate pairs
    /// sum their weights.
    pub fn from_weighted_edges(
        n: usize,
        edges: &[(u32, u32, f64)],
        directed: bool,
    ) -> Result<Self> {
        Self::build(n, edges, directed, true, None)
    }

    fn build(
        n: usize,
        edges: &[(u32, u32, f64)],
        directed: bool,
        weighted: bool,
        node_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        // Collapse duplicate pairs, keeping first-appearance edge order.
        let mut index: HashMap<(u32, u32), usize> = HashMap::with_capacity(edges.len());
        let mut endpoints: Vec<(u32, u32)> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for &(u, v, w) in edges {
            if (u as usize) >= n || (v as usize) >= n {
                return Err(GraflError::OutOfBounds {
                    kind: "node",
                    index: u.max(v) as usize,
                    len: n,
                });
            }
            let key = if directed || u <= v { (u, v) } else { (v, u) };
            match index.get(&key) {
                Some(&e) => weights[e] += w,
                None => {
                    index.insert(key, endpoints.len());
                    endpoints.push((u, v));
                    weights.push(w);
                }
            }
        }
        let m = endpoints.len();

        // Arc lists. Undirected edges get a mirror arc with the same id,
        // except self-loops which stay single.
        let mut out_deg = vec![0usize; n];
        let mut in_deg = vec![0usize; n];
        let mut arcs: Vec<(u32, u32, u32)> = Vec::with_capacity(if directed { m } else { 2 * m });
        for (e, &(u, v)) in endpoints.iter().enumerate() {
            arcs.push((u, v, e as u32));
            if !directed && u != v {
                arcs.push((v, u, e as u32));
            }
        }
        for &(u, v, _) in &arcs {
            out_deg[u as usize] += 1;
            in_deg[v as usize] += 1;
        }

        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for v in 0..n {
            out_offsets[v + 1] = out_offsets[v] + out_deg[v];
            in_offsets[v + 1] = in_offsets[v] + in_deg[v];
        }
        let total_arcs = arcs.len();
        let mut out_nbrs = vec![0u32; total_arcs];
        let mut out_eids = vec![0u32; total_arcs];
        let mut in_nbrs = vec![0u32; total_arcs];
        let mut in_eids = vec![0u32; total_arcs];
        let mut out_pos = out_offsets.clone();
        let mut in_pos = in_offsets.clone();
        for &(u, v, e) in &arcs {
            let p = out_pos[u as usize];
            out_nbrs[p] = v;
            out_eids[p] = e;
            out_pos[u as usize] += 1;
            let q = in_pos[v as usize];
            in_nbrs[q] = u;
            in_eids[q] = e;
            in_pos[v as usize] += 1;
        }
        // Sort each adjacency list by (neighbor, edge id) for determinism
        // and binary-search adjacency tests.
        for v in 0..n {
            sort_adj(
                &mut out_nbrs[out_offsets[v]..out_offsets[v + 1]],
                &mut out_eids[out_offsets[v]..out_offsets[v + 1]],
            );
            sort_adj(
                &mut in_nbrs[in_offsets[v]..in_offsets[v + 1]],
                &mut in_eids[in_offsets[v]..in_offsets[v + 1]],
            );
        }

        let node_labels =
            node_labels.unwrap_or_else(|| (0..n).map(|v| v.to_string()).collect());

        Ok(Graph {
            n,
            m,
            directed,
            out_offsets,
            out_nbrs,
            out_eids,
            in_offsets,
            in_nbrs,
            in_eids,
            endpoints,
            weights: if weighted { Some(weights) } else { None },
            node_labels,
            node_attrs: Vec::new(),
            edge_attrs: Vec::new(),
        })
    }

    /// Load a graph from an edge-list text file.
    ///
    /// Each non-comment line is `src dst [weight]`, whitespace-separated;
    /// `#`-prefixed lines are ignored. Node ids are arbitrary tokens,
    /// densely re-indexed in first-appearance order. Duplicate pairs
    /// collapse to one edge (weights summed); self-loops are kept.
    pub fn load_edge_list<P: AsRef<Path>>(path: P, directed: bool, weighted: bool) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_edge_list(&text, directed, weighted)
    }

    /// Parse an edge list from a string; see [`Graph::load_edge_list`].
    pub fn parse_edge_list(text: &str, directed: bool, weighted: bool) -> Result<Self> {
        fn intern<'t>(
            ids: &mut HashMap<&'t str, u32>,
            labels: &mut Vec<String>,
            tok: &'t str,
        ) -> u32 {
            if let Some(&id) = ids.get(tok) {
                return id;
            }
            let id = labels.len() as u32;
            labels.push(tok.to_string());
            ids.insert(tok, id);
            id
        }

        let mut ids: HashMap<&str, u32> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(u32, u32, f64)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let (Some(a), Some(b)) = (toks.next(), toks.next()) else {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("expected `src dst [weight]`, got `{line}`"),
                });
            };
            let wtok = toks.next();
            if toks.next().is_some() {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("too many columns in `{line}`"),
                });
            }
            let w = if weighted {
                let Some(wtok) = wtok else {
                    return Err(GraflError::Parse {
                        line: lineno + 1,
                        msg: "weighted graph requires a weight column".into(),
                    });
                };
                wtok.parse::<f64>().map_err(|_| GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("invalid weight `{wtok}`"),
                })?
            } else {
                1.0
            };
            let u = intern(&mut ids, &mut labels, a);
            let v = intern(&mut ids, &mut labels, b);
            edges.push((u, v, w));
        }
        let n = labels.len();
        Self::build(n, &edges, directed, weighted, Some(labels))
    }

    /// Attach node attributes from a file: a header line of column names,
    /// then `node_id v1 v2 ...` per line. Nodes without a line keep 0.0.
    pub fn load_node_attributes<P: AsRef<Path>>(&mut self, path: P) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.parse_node_attributes(&text)
    }

    pub fn parse_node_attributes(&mut self, text: &str) -> Result<()> {
        let lookup = self.label_lookup();
        let mut lines = text.lines().enumerate();
        let names = loop {
            match lines.next() {
                Some((_, raw)) if raw.trim().is_empty() || raw.trim_start().starts_with('#') => {}
                Some((_, raw)) => {
                    break raw
                        .split_whitespace()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                }
                None => return Ok(()),
            }
        };
        let mut cols: Vec<Vec<f64>> = vec![vec![0.0; self.n]; names.len()];
        for (lineno, raw) in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != names.len() + 1 {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("expected node_id plus {} values", names.len()),
                });
            }
            let Some(&v) = lookup.get(toks[0]) else {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown node id `{}`", toks[0]),
                });
            };
            for (c, tok) in toks[1..].iter().enumerate() {
                cols[c][v as usize] = tok.parse::<f64>().map_err(|_| GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("invalid value `{tok}`"),
                })?;
            }
        }
        for (name, col) in names.into_iter().zip(cols) {
            self.node_attrs.push((name, col));
        }
        Ok(())
    }

    /// Attach edge attributes: header of column names, then `src dst v1 ...`.
    pub fn load_edge_attributes<P: AsRef<Path>>(&mut self, path: P) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.parse_edge_attributes(&text)
    }

    pub fn parse_edge_attributes(&mut self, text: &str) -> Result<()> {
        let lookup = self.label_lookup();
        let edge_index = self.edge_lookup();
        let mut lines = text.lines().enumerate();
        let names = loop {
            match lines.next() {
                Some((_, raw)) if raw.trim().is_empty() || raw.trim_start().starts_with('#') => {}
                Some((_, raw)) => {
                    break raw
                        .split_whitespace()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                }
                None => return Ok(()),
            }
        };
        let mut cols: Vec<Vec<f64>> = vec![vec![0.0; self.m]; names.len()];
        for (lineno, raw) in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != names.len() + 2 {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("expected src dst plus {} values", names.len()),
                });
            }
            let (Some(&u), Some(&v)) = (lookup.get(toks[0]), lookup.get(toks[1])) else {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown endpoint in `{} {}`", toks[0], toks[1]),
                });
            };
            let key = if self.directed || u <= v { (u, v) } else { (v, u) };
            let Some(&e) = edge_index.get(&key) else {
                return Err(GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("no such edge `{} {}`", toks[0], toks[1]),
                });
            };
            for (c, tok) in toks[2..].iter().enumerate() {
                cols[c][e as usize] = tok.parse::<f64>().map_err(|_| GraflError::Parse {
                    line: lineno + 1,
                    msg: format!("invalid value `{tok}`"),
                })?;
            }
        }
        for (name, col) in names.into_iter().zip(cols) {
            self.edge_attrs.push((name, col));
        }
        Ok(())
    }

    fn label_lookup(&self) -> HashMap<&str, u32> {
        self.node_labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect()
    }

    fn edge_lookup(&self) -> HashMap<(u32, u32), u32> {
        self.endpoints
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| {
                let key = if self.directed || u <= v { (u, v) } else { (v, u) };
                (key, e as u32)
            })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn node_attrs(&self) -> &[(String, Vec<f64>)] {
        &self.node_attrs
    }

    pub fn edge_attrs(&self) -> &[(String, Vec<f64>)] {
        &self.edge_attrs
    }

    pub fn push_node_attr(&mut self, name: String, col: Vec<f64>) -> Result<()> {
        if col.len() != self.n {
            return Err(GraflError::LengthMismatch(format!(
                "node attribute `{name}` has {} values for {} nodes",
                col.len(),
                self.n
            )));
        }
        self.node_attrs.push((name, col));
        Ok(())
    }

    pub fn push_edge_attr(&mut self, name: String, col: Vec<f64>) -> Result<()> {
        if col.len() != self.m {
            return Err(GraflError::LengthMismatch(format!(
                "edge attribute `{name}` has {} values for {} edges",
                col.len(),
                self.m
            )));
        }
        self.edge_attrs.push((name, col));
        Ok(())
    }

    /// Endpoints `(src, dst)` of an edge id.
    pub fn endpoints(&self, e: usize) -> (u32, u32) {
        self.endpoints[e]
    }

    pub fn element_count(&self, kind: ElementKind) -> usize {
        match kind {
            ElementKind::Node => self.n,
            ElementKind::Edge => self.m,
        }
    }

    /// Out-neighbors of `v` as parallel `(node, edge id)` slices, sorted by
    /// node id.
    pub fn out_slice(&self, v: usize) -> (&[u32], &[u32]) {
        let r = self.out_offsets[v]..self.out_offsets[v + 1];
        (&self.out_nbrs[r.clone()], &self.out_eids[r])
    }

    pub fn in_slice(&self, v: usize) -> (&[u32], &[u32]) {
        let r = self.in_offsets[v]..self.in_offsets[v + 1];
        (&self.in_nbrs[r.clone()], &self.in_eids[r])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    /// Total degree: `in + out` for directed graphs; the shared degree for
    /// undirected graphs (where in = out by construction).
    pub fn total_degree(&self, v: usize) -> usize {
        if self.directed {
            self.in_degree(v) + self.out_degree(v)
        } else {
            self.out_degree(v)
        }
    }

    pub fn weighted_out_degree(&self, v: usize) -> f64 {
        let Some(w) = &self.weights else { return 0.0 };
        let (_, eids) = self.out_slice(v);
        eids.iter().map(|&e| w[e as usize]).sum()
    }

    pub fn weighted_in_degree(&self, v: usize) -> f64 {
        let Some(w) = &self.weights else { return 0.0 };
        let (_, eids) = self.in_slice(v);
        eids.iter().map(|&e| w[e as usize]).sum()
    }

    pub fn weighted_total_degree(&self, v: usize) -> f64 {
        if self.directed {
            self.weighted_in_degree(v) + self.weighted_out_degree(v)
        } else {
            self.weighted_out_degree(v)
        }
    }

    fn check_element(&self, e: GraphElement) -> Result<()> {
        let len = self.element_count(e.kind);
        if e.index >= len {
            return Err(GraflError::OutOfBounds {
                kind: match e.kind {
                    ElementKind::Node => "node",
                    ElementKind::Edge => "edge",
                },
                index: e.index,
                len,
            });
        }
        Ok(())
    }

    /// All elements within `sel.hops` of `e` (same kind as `e`), excluding
    /// `e` itself, in ascending-id order.
    ///
    /// Node neighborhoods follow arcs in the selector's direction. Edge
    /// neighborhoods expand in the line-graph sense: for an edge `(v,u)`,
    /// out-neighbor edges are arcs leaving `{v,u}` and in-neighbor edges are
    /// arcs entering `{v,u}`; self-loops are never edge neighbors.
    pub fn neighbors(&self, e: GraphElement, sel: NeighborhoodSelector) -> Result<Vec<GraphElement>> {
        self.check_element(e)?;
        let ids = match e.kind {
            ElementKind::Node => self.node_neighborhood(e.index, sel),
            ElementKind::Edge => self.edge_neighborhood(e.index, sel),
        };
        Ok(ids
            .into_iter()
            .map(|i| GraphElement {
                kind: e.kind,
                index: i as usize,
            })
            .collect())
    }

    /// Node ids within `sel.hops` of `v`, excluding `v`, sorted ascending.
    pub fn node_neighborhood(&self, v: usize, sel: NeighborhoodSelector) -> Vec<u32> {
        let mut out = Vec::new();
        if sel.hops == 1 {
            match sel.direction {
                Direction::Out => {
                    out.extend_from_slice(self.out_slice(v).0);
                }
                Direction::In => {
                    out.extend_from_slice(self.in_slice(v).0);
                }
                Direction::All => {
                    out.extend_from_slice(self.out_slice(v).0);
                    out.extend_from_slice(self.in_slice(v).0);
                }
            }
            out.sort_unstable();
            out.dedup();
            out.retain(|&u| u as usize != v);
            return out;
        }
        // BFS to depth hops.
        let mut dist: HashMap<u32, u32> = HashMap::new();
        dist.insert(v as u32, 0);
        let mut frontier = vec![v as u32];
        for d in 1..=sel.hops {
            let mut next = Vec::new();
            for &u in &frontier {
                let mut push = |w: u32| {
                    if !dist.contains_key(&w) {
                        dist.insert(w, d);
                        next.push(w);
                    }
                };
                match sel.direction {
                    Direction::Out => self.out_slice(u as usize).0.iter().for_each(|&w| push(w)),
                    Direction::In => self.in_slice(u as usize).0.iter().for_each(|&w| push(w)),
                    Direction::All => {
                        self.out_slice(u as usize).0.iter().for_each(|&w| push(w));
                        self.in_slice(u as usize).0.iter().for_each(|&w| push(w));
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let mut out: Vec<u32> = dist.into_keys().filter(|&u| u as usize != v).collect();
        out.sort_unstable();
        out
    }

    /// Edge ids within `sel.hops` line-graph hops of edge `e`, excluding `e`
    /// and self-loops, sorted ascending.
    pub fn edge_neighborhood(&self, e: usize, sel: NeighborhoodSelector) -> Vec<u32> {
        let mut seen: HashMap<u32, ()> = HashMap::new();
        seen.insert(e as u32, ());
        let mut frontier = vec![e as u32];
        let mut collected: Vec<u32> = Vec::new();
        for _ in 0..sel.hops {
            let mut next = Vec::new();
            for &f in &frontier {
                let (a, b) = self.endpoints[f as usize];
                let mut visit = |g: u32| {
                    let (s, t) = self.endpoints[g as usize];
                    if s == t {
                        return; // self-loops never join edge neighborhoods
                    }
                    if seen.insert(g, ()).is_none() {
                        collected.push(g);
                        next.push(g);
                    }
                };
                let mut scan_endpoint = |x: u32| match sel.direction {
                    Direction::Out => {
                        for &g in self.out_slice(x as usize).1 {
                            visit(g);
                        }
                    }
                    Direction::In => {
                        for &g in self.in_slice(x as usize).1 {
                            visit(g);
                        }
                    }
                    Direction::All => {
                        for &g in self.out_slice(x as usize).1 {
                            visit(g);
                        }
                        for &g in self.in_slice(x as usize).1 {
                            visit(g);
                        }
                    }
                };
                scan_endpoint(a);
                if b != a {
                    scan_endpoint(b);
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        collected.sort_unstable();
        collected
    }

    /// Per-node core numbers from standard peeling on the undirected simple
    /// skeleton (parallel arcs merged, self-loops ignored).
    pub fn kcore_numbers(&self) -> Vec<u32> {
        let adj = self.skeleton_adjacency();
        let n = self.n;
        if n == 0 {
            return Vec::new();
        }
        let mut degree: Vec<usize> = adj.iter().map(|a| a.len()).collect();
        let max_deg = degree.iter().copied().max().unwrap_or(0);
        // Bucket sort nodes by degree.
        let mut bin_start = vec![0usize; max_deg + 2];
        for &d in &degree {
            bin_start[d + 1] += 1;
        }
        for i in 1..bin_start.len() {
            bin_start[i] += bin_start[i - 1];
        }
        let mut pos = vec![0usize; n];
        let mut order = vec![0usize; n];
        {
            let mut fill = bin_start.clone();
            for v in 0..n {
                let d = degree[v];
                order[fill[d]] = v;
                pos[v] = fill[d];
                fill[d] += 1;
            }
        }
        let mut bin = bin_start;
        let mut core = vec![0u32; n];
        for i in 0..n {
            let v = order[i];
            core[v] = degree[v] as u32;
            for &u in &adj[v] {
                let u = u as usize;
                if degree[u] > degree[v] {
                    // Swap u toward the front of its bucket and shrink it.
                    let du = degree[u];
                    let pu = pos[u];
                    let pw = bin[du];
                    let w = order[pw];
                    if u != w {
                        order.swap(pu, pw);
                        pos[u] = pw;
                        pos[w] = pu;
                    }
                    bin[du] += 1;
                    degree[u] -= 1;
                }
            }
        }
        core
    }

    /// Per-edge core numbers: min of the endpoint core numbers.
    pub fn edge_core_numbers(&self, node_cores: &[u32]) -> Vec<u32> {
        self.endpoints
            .iter()
            .map(|&(u, v)| node_cores[u as usize].min(node_cores[v as usize]))
            .collect()
    }

    /// Undirected simple adjacency (sorted, deduplicated, self-loops
    /// dropped). Used by k-core peeling and orbit counting.
    pub fn skeleton_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for v in 0..self.n {
            let (outs, _) = self.out_slice(v);
            let (ins, _) = self.in_slice(v);
            let a = &mut adj[v];
            a.extend_from_slice(outs);
            a.extend_from_slice(ins);
            a.sort_unstable();
            a.dedup();
            a.retain(|&u| u as usize != v);
        }
        adj
    }
}

fn sort_adj(nbrs: &mut [u32], eids: &mut [u32]) {
    let mut idx: Vec<usize> = (0..nbrs.len()).collect();
    idx.sort_unstable_by_key(|&i| (nbrs[i], eids[i]));
    let sorted_n: Vec<u32> = idx.iter().map(|&i| nbrs[i]).collect();
    let sorted_e: Vec<u32> = idx.iter().map(|&i| eids[i]).collect();
    nbrs.copy_from_slice(&sorted_n);
    eids.copy_from_slice(&sorted_e);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3_directed() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)], true).unwrap()
    }

    #[test]
    fn load_triangle() {
        let g = Graph::parse_edge_list("0 1\n1 2\n2 0", true, false).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_directed());
    }

    #[test]
    fn duplicate_edges_collapse_and_sum_weights() {
        let g = Graph::parse_edge_list("a b 2.0\na b 3.0", true, true).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weights().unwrap()[0], 5.0);
        assert_eq!(g.node_labels(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn undirected_reverse_duplicates_collapse() {
        let g = Graph::parse_edge_list("a b 1.0\nb a 2.0", false, true).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weights().unwrap()[0], 3.0);
    }

    #[test]
    fn empty_file() {
        let g = Graph::parse_edge_list("", true, false).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.kcore_numbers().is_empty());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = Graph::parse_edge_list("# header\n\n0 1\n# mid\n1 2\n", true, false).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = Graph::parse_edge_list("0 1\nbroken", true, false).unwrap_err();
        match err {
            GraflError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_weight_column_errors() {
        let err = Graph::parse_edge_list("0 1", true, true).unwrap_err();
        assert!(matches!(err, GraflError::Parse { line: 1, .. }));
    }

    #[test]
    fn triangle_node_neighbors_all() {
        let g = Graph::parse_edge_list("0 1\n1 2\n2 0", true, false).unwrap();
        let ns = g
            .neighbors(
                GraphElement::node(0),
                NeighborhoodSelector::one_hop(Direction::All),
            )
            .unwrap();
        let ids: Vec<usize> = ns.iter().map(|e| e.index).collect();
        assert_eq!(ids, vec![1, 2]);
    }

    #[test]
    fn path_edge_out_neighbors() {
        let g = path3_directed();
        // edge 0 = (0,1); its out-neighbor edges are arcs leaving {0,1}.
        let ns = g
            .neighbors(
                GraphElement::edge(0),
                NeighborhoodSelector::one_hop(Direction::Out),
            )
            .unwrap();
        let ids: Vec<usize> = ns.iter().map(|e| e.index).collect();
        assert_eq!(ids, vec![1]); // edge 1 = (1,2)
    }

    #[test]
    fn node_bfs_two_hops() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], true).unwrap();
        let sel = NeighborhoodSelector::new(Direction::Out, 2).unwrap();
        let ns = g.neighbors(GraphElement::node(0), sel).unwrap();
        let ids: Vec<usize> = ns.iter().map(|e| e.index).collect();
        assert_eq!(ids, vec![1, 2]);
    }

    #[test]
    fn undirected_directions_collapse() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (2, 3)], false).unwrap();
        for hops in 1..=2 {
            for idx in 0..4 {
                let base = g.node_neighborhood(
                    idx,
                    NeighborhoodSelector::new(Direction::All, hops).unwrap(),
                );
                for dir in [Direction::Out, Direction::In] {
                    let got =
                        g.node_neighborhood(idx, NeighborhoodSelector::new(dir, hops).unwrap());
                    assert_eq!(got, base);
                }
            }
            for e in 0..3 {
                let base = g.edge_neighborhood(
                    e,
                    NeighborhoodSelector::new(Direction::All, hops).unwrap(),
                );
                for dir in [Direction::Out, Direction::In] {
                    let got =
                        g.edge_neighborhood(e, NeighborhoodSelector::new(dir, hops).unwrap());
                    assert_eq!(got, base);
                }
            }
        }
    }

    #[test]
    fn edge_neighborhood_never_repeats_ids_undirected() {
        // Triangle: both endpoints of an edge see the other two edges.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)], false).unwrap();
        let ns = g.edge_neighborhood(0, NeighborhoodSelector::one_hop(Direction::All));
        assert_eq!(ns, vec![1, 2]);
    }

    #[test]
    fn self_loop_degree_and_exclusion() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)], true).unwrap();
        assert_eq!(g.out_degree(0), 2);
        assert_eq!(g.in_degree(0), 1);
        // Self-loop edge 0 is excluded from edge neighborhoods.
        let ns = g.edge_neighborhood(1, NeighborhoodSelector::one_hop(Direction::All));
        assert!(ns.is_empty());
        // Node 0 is not its own neighbor.
        let ns = g.node_neighborhood(0, NeighborhoodSelector::one_hop(Direction::Out));
        assert_eq!(ns, vec![1]);
    }

    #[test]
    fn out_of_bounds_element_errors() {
        let g = path3_directed();
        let err = g
            .neighbors(
                GraphElement::node(9),
                NeighborhoodSelector::one_hop(Direction::All),
            )
            .unwrap_err();
        assert!(matches!(err, GraflError::OutOfBounds { .. }));
    }

    #[test]
    fn kcore_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)], false).unwrap();
        assert_eq!(g.kcore_numbers(), vec![2, 2, 2]);
    }

    #[test]
    fn kcore_star() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], false).unwrap();
        assert_eq!(g.kcore_numbers(), vec![1; 5]);
    }

    #[test]
    fn kcore_k4_plus_pendant() {
        let mut edges = vec![(4, 0)];
        for u in 0..4u32 {
            for v in (u + 1)..4 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(5, &edges, false).unwrap();
        let cores = g.kcore_numbers();
        assert_eq!(cores, vec![3, 3, 3, 3, 1]);
        let ec = g.edge_core_numbers(&cores);
        assert_eq!(ec[0], 1); // pendant edge
    }

    #[test]
    fn degree_matches_neighbor_count_on_simple_graphs() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4)], true).unwrap();
        for v in 0..5 {
            assert_eq!(
                g.node_neighborhood(v, NeighborhoodSelector::one_hop(Direction::Out))
                    .len(),
                g.out_degree(v)
            );
            assert_eq!(
                g.node_neighborhood(v, NeighborhoodSelector::one_hop(Direction::In))
                    .len(),
                g.in_degree(v)
            );
        }
    }

    #[test]
    fn total_out_degree_equals_arc_count_directed() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], true).unwrap();
        let total_out: usize = (0..4).map(|v| g.out_degree(v)).sum();
        let total_in: usize = (0..4).map(|v| g.in_degree(v)).sum();
        assert_eq!(total_out, g.edge_count());
        assert_eq!(total_in, g.edge_count());
    }

    #[test]
    fn node_attributes_parse() {
        let mut g = Graph::parse_edge_list("a b\nb c", false, false).unwrap();
        g.parse_node_attributes("age score\na 30 1.5\nc 20 0.5").unwrap();
        assert_eq!(g.node_attrs().len(), 2);
        assert_eq!(g.node_attrs()[0].0, "age");
        assert_eq!(g.node_attrs()[0].1, vec![30.0, 0.0, 20.0]);
    }

    #[test]
    fn edge_attributes_parse() {
        let mut g = Graph::parse_edge_list("a b\nb c", false, false).unwrap();
        g.parse_edge_attributes("cost\nb a 4.0").unwrap();
        assert_eq!(g.edge_attrs()[0].1, vec![4.0, 0.0]);
        let err = g.parse_edge_attributes("cost\na c 1.0").unwrap_err();
        assert!(matches!(err, GraflError::Parse { .. }));
    }
}
