//! Finite simple graphs, their associated 3-uniform hypergraphs, the graph
//! text format, and brute-force canonical forms for small graphs.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text;

/// Canonicalization permutes at most this many non-isolated vertices.
pub const CANONICAL_VERTEX_CAP: usize = 10;

pub type Edge = (usize, usize);

/// A finite simple graph on vertices `0..num_vertices`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. The
/// position of an edge in that order is its *rank*.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `u < v`. Self-loops,
    /// duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(Error::VertexOutOfRange { vertex: w, num_vertices });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph { num_vertices, edges: list })
    }

    pub fn edgeless(num_vertices: usize) -> Self {
        Graph { num_vertices, edges: Vec::new() }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `|V| + |E|`, the number of elements a strong set-coloring must label.
    pub fn order_plus_size(&self) -> usize {
        self.num_vertices + self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_rank(u, v).is_some()
    }

    /// Position of edge `uv` in canonical order.
    pub fn edge_rank(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Hypergraph point index of a vertex or an edge (`|V| + rank`).
    pub fn edge_point(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_rank(u, v).map(|k| self.num_vertices + k)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Connected in the usual sense; the graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.num_vertices
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..num_vertices`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.num_vertices, "permutation length");
        Graph::new(self.num_vertices, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling by a permutation keeps the graph simple")
    }

    /// The associated 3-uniform hypergraph: one triple `{u, v, uv}` per edge.
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph {
            num_points: self.order_plus_size(),
            triples: self
                .edges
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| [u, v, self.num_vertices + k])
                .collect(),
        }
    }

    /// Renders the graph in the text format read by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("graph {} {}\n", self.num_vertices, self.edges.len());
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    /// Single-line form `graph V E u-v ...`, used in enumeration listings.
    pub fn to_compact(&self) -> String {
        let mut out = format!("graph {} {}", self.num_vertices, self.edges.len());
        for &(u, v) in &self.edges {
            write!(out, " {u}-{v}").unwrap();
        }
        out
    }

    /// Parses the graph text format:
    ///
    /// ```text
    /// # comment
    /// graph <num_vertices> <num_edges>
    /// e <u> <v>
    /// ```
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text::lines(text);
        let header = lines.next().ok_or_else(|| text::missing_header(text, "graph"))?;
        header.expect("graph", 3)?;
        let num_vertices: usize = header.field(1, "vertex count")?;
        let num_edges: usize = header.field(2, "edge count")?;

        let mut edges: Vec<Edge> = Vec::with_capacity(num_edges);
        let mut seen = HashSet::with_capacity(num_edges);
        for line in lines {
            if edges.len() == num_edges {
                return Err(line.err(format!("more than the declared {num_edges} edges")));
            }
            line.expect("e", 3)?;
            let u: usize = line.field(1, "vertex")?;
            let v: usize = line.field(2, "vertex")?;
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(line.err(format!("vertex {w} out of range 0..{num_vertices}")));
                }
            }
            if u == v {
                return Err(line.err(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(line.err(format!("duplicate edge {u}-{v}")));
            }
            edges.push((u, v));
        }
        if edges.len() != num_edges {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {num_edges} edges, found {}", edges.len()),
            ));
        }
        Graph::new(num_vertices, edges)
    }

    /// Canonical representative of the isomorphism class: the lexicographically
    /// least sorted edge list over all relabelings of the vertices.
    ///
    /// In that minimum the non-isolated vertices always occupy the lowest
    /// labels, so only those are permuted; there may be at most
    /// [`CANONICAL_VERTEX_CAP`] of them.
    pub fn canonical_form(&self) -> Result<Graph> {
        let deg = self.degrees();
        let active: Vec<usize> = (0..self.num_vertices).filter(|&v| deg[v] > 0).collect();
        if active.len() > CANONICAL_VERTEX_CAP {
            return Err(Error::Unsupported(format!(
                "canonical form of a graph with {} non-isolated vertices (cap {CANONICAL_VERTEX_CAP})",
                active.len()
            )));
        }
        let mut local = vec![usize::MAX; self.num_vertices];
        for (i, &v) in active.iter().enumerate() {
            local[v] = i;
        }
        let k = active.len();
        let mut adj = vec![vec![false; k]; k];
        for &(u, v) in &self.edges {
            adj[local[u]][local[v]] = true;
            adj[local[v]][local[u]] = true;
        }
        let mut search = CanonSearch::new(adj, self.edges.len());
        search.run();
        let edges = search.best.expect("the search always reaches a leaf");
        Ok(Graph { num_vertices: self.num_vertices, edges })
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}

/// Branch and bound over label assignments for [`Graph::canonical_form`].
///
/// Labels are handed out in increasing order. After labels `0..k` are placed,
/// a prefix of the final sorted edge list is fixed, and the next entry is
/// bounded below; branches whose bound exceeds the best list are cut.
/// Unassigned twins (same neighbourhood apart from each other) are
/// interchangeable, so only one of each twin class is tried per level.
struct CanonSearch {
    adj: Vec<Vec<bool>>,
    twins: Vec<Vec<bool>>,
    num_edges: usize,
    order: Vec<usize>,
    label: Vec<Option<usize>>,
    best: Option<Vec<Edge>>,
}

impl CanonSearch {
    fn new(adj: Vec<Vec<bool>>, num_edges: usize) -> Self {
        let k = adj.len();
        let twins = (0..k)
            .map(|x| {
                (0..k)
                    .map(|y| x != y && (0..k).all(|z| z == x || z == y || adj[x][z] == adj[y][z]))
                    .collect()
            })
            .collect();
        CanonSearch { adj, twins, num_edges, order: Vec::new(), label: vec![None; k], best: None }
    }

    fn run(&mut self) {
        let depth = self.order.len();
        let (prefix, next) = self.bound();
        if let Some(best) = &self.best {
            match prefix.as_slice().cmp(&best[..prefix.len()]) {
                Ordering::Greater => return,
                Ordering::Equal => match next {
                    Some(lb) if lb > best[prefix.len()] => return,
                    None => return,
                    _ => {}
                },
                Ordering::Less => {}
            }
        }
        if depth == self.adj.len() {
            self.best = Some(prefix);
            return;
        }

        let k = self.adj.len();
        let degree = |x: usize| self.adj[x].iter().filter(|&&b| b).count();
        let mut candidates: Vec<usize> = (0..k).filter(|&x| self.label[x].is_none()).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(degree(x)), x));
        let mut tried: Vec<usize> = Vec::new();
        for x in candidates {
            if tried.iter().any(|&t| self.twins[t][x]) {
                continue;
            }
            tried.push(x);
            self.label[x] = Some(depth);
            self.order.push(x);
            self.run();
            self.order.pop();
            self.label[x] = None;
        }
    }

    /// Fixed prefix of the relabeled edge list, and a lower bound on the
    /// entry that follows it (`None` when the list is complete).
    fn bound(&self) -> (Vec<Edge>, Option<Edge>) {
        let depth = self.order.len();
        let mut prefix = Vec::with_capacity(self.num_edges);
        for (i, &x) in self.order.iter().enumerate() {
            let mut known = Vec::new();
            let mut unknown = 0;
            for (y, &adjacent) in self.adj[x].iter().enumerate() {
                if !adjacent {
                    continue;
                }
                match self.label[y] {
                    Some(j) if j > i => known.push(j),
                    Some(_) => {}
                    None => unknown += 1,
                }
            }
            known.sort_unstable();
            prefix.extend(known.into_iter().map(|j| (i, j)));
            if unknown > 0 {
                return (prefix, Some((i, depth)));
            }
        }
        if prefix.len() == self.num_edges {
            (prefix, None)
        } else {
            (prefix, Some((depth, depth + 1)))
        }
    }
}

/// All graphs with `num_vertices` vertices and `num_edges` edges, one
/// canonical representative per isomorphism class, sorted.
///
/// Classes are grown one edge at a time from the edgeless graph and
/// deduplicated by canonical form.
pub fn nonisomorphic_graphs(num_vertices: usize, num_edges: usize) -> Result<Vec<Graph>> {
    let pairs = num_vertices * num_vertices.saturating_sub(1) / 2;
    if num_edges > pairs {
        return Ok(Vec::new());
    }
    if num_vertices.min(2 * num_edges) > CANONICAL_VERTEX_CAP {
        return Err(Error::Unsupported(format!(
            "enumerating {num_edges}-edge graphs on {num_vertices} vertices"
        )));
    }
    let mut level = vec![Graph::edgeless(num_vertices)];
    for _ in 0..num_edges {
        let mut next = HashSet::new();
        for g in &level {
            // Canonical graphs put isolated vertices last; any two of them are
            // interchangeable, so the first two stand for all.
            let active = g.degrees().iter().filter(|&&d| d > 0).count();
            let span = (active + 2).min(num_vertices);
            for u in 0..span {
                for v in u + 1..span {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut edges = g.edges.clone();
                    edges.push((u, v));
                    let h = Graph::new(num_vertices, edges)?;
                    next.insert(h.canonical_form()?);
                }
            }
        }
        level = next.into_iter().collect();
    }
    level.sort();
    Ok(level)
}

/// 3-uniform hypergraph on points `0..num_points`.
///
/// For graphs, vertex `v` is point `v` and the edge of rank `k` is point
/// `|V| + k`; each triple is `[u, v, |V| + k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub num_points: usize,
    pub triples: Vec<[usize; 3]>,
}

impl From<&Graph> for Hypergraph {
    fn from(g: &Graph) -> Self {
        g.hypergraph()
    }
}
