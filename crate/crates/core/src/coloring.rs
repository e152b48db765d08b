//! Strong set-coloring certificates: the verifier, construction from a
//! packing realization, and the star family of positive instances.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::gf2::{parse_hex, ColorVector, Dimension};
use crate::graph::{Edge, Graph};
use crate::steiner::{PackingEmbedding, Point};
use crate::text;

/// A vertex or an edge of a graph, i.e. a point of its associated hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Edge(usize, usize),
}

impl Element {
    /// Element at hypergraph point index `z`.
    pub fn at(g: &Graph, z: usize) -> Element {
        if z < g.num_vertices() {
            Element::Vertex(z)
        } else {
            let (u, v) = g.edges()[z - g.num_vertices()];
            Element::Edge(u, v)
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Edge(u, v) => write!(f, "edge {u}-{v}"),
        }
    }
}

/// A total labeling of `V ∪ E` by nonzero vectors of F₂ⁿ.
///
/// Edge labels are indexed by edge rank in the graph's canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    dim: Dimension,
    vertex_labels: Vec<ColorVector>,
    edge_labels: Vec<ColorVector>,
}

impl Coloring {
    pub fn new(dim: Dimension, vertex_labels: Vec<ColorVector>, edge_labels: Vec<ColorVector>) -> Result<Self> {
        for label in vertex_labels.iter().chain(&edge_labels) {
            if label.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim.get(), right: label.dim().get() });
            }
        }
        Ok(Coloring { dim, vertex_labels, edge_labels })
    }

    /// Builds a coloring from raw bitmasks, one per hypergraph point.
    pub fn from_point_bits(g: &Graph, dim: Dimension, bits: &[u32]) -> Result<Self> {
        if bits.len() != g.order_plus_size() {
            return Err(Error::SizeMismatch { expected: g.order_plus_size(), found: bits.len() });
        }
        let labels = bits
            .iter()
            .map(|&b| ColorVector::new(b, dim))
            .collect::<Result<Vec<_>>>()?;
        let mut vertex_labels = labels;
        let edge_labels = vertex_labels.split_off(g.num_vertices());
        Ok(Coloring { dim, vertex_labels, edge_labels })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn vertex_labels(&self) -> &[ColorVector] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[ColorVector] {
        &self.edge_labels
    }

    /// Label of hypergraph point `z`: vertices first, then edges by rank.
    pub fn label(&self, z: usize) -> ColorVector {
        match z.checked_sub(self.vertex_labels.len()) {
            None => self.vertex_labels[z],
            Some(k) => self.edge_labels[k],
        }
    }

    /// Certificate text: `coloring <n>`, `v <id> <hex>` lines, then `e <u> <v> <hex>` lines.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::with_capacity(12 * (self.vertex_labels.len() + self.edge_labels.len()) + 16);
        writeln!(out, "coloring {}", self.dim).unwrap();
        for (v, label) in self.vertex_labels.iter().enumerate() {
            writeln!(out, "v {v} {}", label.to_hex()).unwrap();
        }
        for (&(u, v), label) in g.edges().iter().zip(&self.edge_labels) {
            writeln!(out, "e {u} {v} {}", label.to_hex()).unwrap();
        }
        out
    }

    /// Reads a certificate for `g`. Every vertex and edge of `g` must be
    /// labeled exactly once; lines may appear in any order.
    pub fn parse(text: &str, g: &Graph) -> Result<Self> {
        let mut lines = text::lines(text);
        let header = lines.next().ok_or_else(|| text::missing_header(text, "coloring"))?;
        header.expect("coloring", 2)?;
        let dim = Dimension::new(header.field(1, "dimension")?).map_err(|e| e.at_line(header.number))?;

        let mut slots: Vec<Option<ColorVector>> = vec![None; g.order_plus_size()];
        for line in lines {
            let (z, hex) = match line.tokens[0] {
                "v" => {
                    line.expect("v", 3)?;
                    let v: usize = line.field(1, "vertex")?;
                    if v >= g.num_vertices() {
                        return Err(line.err(format!("vertex {v} is not in the graph")));
                    }
                    (v, line.tokens[2])
                }
                "e" => {
                    line.expect("e", 4)?;
                    let (u, v): (usize, usize) = (line.field(1, "vertex")?, line.field(2, "vertex")?);
                    let z = g
                        .edge_point(u, v)
                        .ok_or_else(|| line.err(format!("{u}-{v} is not an edge of the graph")))?;
                    (z, line.tokens[3])
                }
                other => return Err(line.err(format!("unexpected record '{other}'"))),
            };
            let label = ColorVector::from_hex(hex, dim).map_err(|e| e.at_line(line.number))?;
            if slots[z].replace(label).is_some() {
                return Err(line.err(format!("{} labeled twice", Element::at(g, z))));
            }
        }
        if let Some(z) = slots.iter().position(Option::is_none) {
            return Err(Error::Input(format!("no label for {}", Element::at(g, z))));
        }
        let mut vertex_labels: Vec<ColorVector> = slots.into_iter().map(Option::unwrap).collect();
        let edge_labels = vertex_labels.split_off(g.num_vertices());
        Ok(Coloring { dim, vertex_labels, edge_labels })
    }
}

/// Why a coloring is not a strong set-coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `|V| + |E| ≠ 2ⁿ − 1`.
    Size { elements: usize, n: u32 },
    /// Two elements share a label, so the labeling is not a bijection.
    Duplicate { first: Element, second: Element, label: ColorVector },
    /// `f(uv) ≠ f(u) ⊕ f(v)`.
    EdgeRule { edge: Edge, expected: u32, found: ColorVector },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Size { elements, n } => write!(
                f,
                "size: |V|+|E| = {elements} but 2^{n}-1 = {}",
                (1u64 << n) - 1
            ),
            Rejection::Duplicate { first, second, label } => {
                write!(f, "duplicate label {} on {first} and {second}", label.to_hex())
            }
            Rejection::EdgeRule { edge: (u, v), expected, found } => write!(
                f,
                "edge rule: f({u}{v}) = {} but f({u}) xor f({v}) = {expected:x}",
                found.to_hex()
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Checks that `c` is a strong set-coloring of `g`.
///
/// Conditions are tested in order: the counting condition, pairwise distinct
/// labels (vertices ascending, then edges in canonical order), and the
/// symmetric-difference rule on each edge. The first failure is reported.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<Verdict> {
    if c.vertex_labels.len() != g.num_vertices() || c.edge_labels.len() != g.num_edges() {
        return Err(Error::Input(format!(
            "coloring labels {} vertices and {} edges, graph has {} and {}",
            c.vertex_labels.len(),
            c.edge_labels.len(),
            g.num_vertices(),
            g.num_edges()
        )));
    }
    let total = g.order_plus_size();
    if total != c.dim.universe_size() {
        return Ok(Verdict::Reject(Rejection::Size { elements: total, n: c.dim.get() }));
    }
    if let Some((first, second, _)) = first_duplicate(total, |z| c.label(z).bits()) {
        return Ok(Verdict::Reject(Rejection::Duplicate {
            first: Element::at(g, first),
            second: Element::at(g, second),
            label: c.label(second),
        }));
    }
    for (&(u, v), &found) in g.edges().iter().zip(&c.edge_labels) {
        let expected = c.vertex_labels[u].bits() ^ c.vertex_labels[v].bits();
        if found.bits() != expected {
            return Ok(Verdict::Reject(Rejection::EdgeRule { edge: (u, v), expected, found }));
        }
    }
    Ok(Verdict::Accept)
}

/// First pair of points with equal labels, scanning `0..count`. Labels must be
/// at most `count` (they lie in `1..=2ⁿ−1` and `count = 2ⁿ−1`).
fn first_duplicate(count: usize, label: impl Fn(usize) -> u32) -> Option<(usize, usize, u32)> {
    let mut seen = vec![0u64; (count + 1).div_ceil(64)];
    for z in 0..count {
        let bits = label(z);
        let (word, bit) = (bits as usize / 64, bits % 64);
        if seen[word] >> bit & 1 == 1 {
            let first = (0..z).find(|&y| label(y) == bits).expect("an earlier point set this bit");
            return Some((first, z, bits));
        }
        seen[word] |= 1 << bit;
    }
    None
}

/// The coordinatisation Λ from STS points to vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lambda {
    Identity,
    /// `table[p]` is Λ(p); index 0 is unused. Zero entries are representable
    /// so that malformed inputs can be reported rather than rejected on load.
    Table(Vec<u32>),
}

impl Lambda {
    #[inline]
    fn apply(&self, p: Point) -> u32 {
        match self {
            Lambda::Identity => p,
            Lambda::Table(table) => table[p as usize],
        }
    }
}

/// Input of the construction: an embedding ι of `V ∪ E` (as hypergraph point
/// indices) into the STS points, and a coordinatisation Λ of those points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingRealization {
    pub dim: Dimension,
    pub iota: Vec<Point>,
    pub lambda: Lambda,
}

impl PackingRealization {
    pub fn identity(dim: Dimension, iota: Vec<Point>) -> Self {
        PackingRealization { dim, iota, lambda: Lambda::Identity }
    }

    pub fn from_embedding(dim: Dimension, emb: PackingEmbedding) -> Self {
        PackingRealization::identity(dim, emb.iota)
    }

    /// Sets `Λ(p) = value`, materializing the identity table first if needed.
    pub fn set_lambda(&mut self, p: Point, value: u32) {
        if let Lambda::Identity = self.lambda {
            self.lambda = Lambda::Table((0..=self.dim.mask()).collect());
        }
        if let Lambda::Table(table) = &mut self.lambda {
            table[p as usize] = value;
        }
    }

    pub fn lambda_of(&self, p: Point) -> u32 {
        self.lambda.apply(p)
    }

    /// Realization text: `realization <n>`, `v <id> <point>`, `e <u> <v> <point>`,
    /// and `lambda <point> <hex>` for every entry that differs from the identity.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = format!("realization {}\n", self.dim);
        for (z, p) in self.iota.iter().enumerate() {
            match Element::at(g, z) {
                Element::Vertex(v) => writeln!(out, "v {v} {p}").unwrap(),
                Element::Edge(u, v) => writeln!(out, "e {u} {v} {p}").unwrap(),
            }
        }
        if let Lambda::Table(table) = &self.lambda {
            for (p, &value) in table.iter().enumerate().skip(1) {
                if value != p as u32 {
                    writeln!(out, "lambda {p} {value:x}").unwrap();
                }
            }
        }
        out
    }

    /// Reads a realization for `g`. Points of Λ not listed keep their
    /// identity coordinates; with no `lambda` lines Λ is the identity.
    pub fn parse(text: &str, g: &Graph) -> Result<Self> {
        let mut lines = text::lines(text);
        let header = lines.next().ok_or_else(|| text::missing_header(text, "realization"))?;
        header.expect("realization", 2)?;
        let dim = Dimension::new(header.field(1, "dimension")?).map_err(|e| e.at_line(header.number))?;
        let point = |line: &text::Line, index: usize| -> Result<Point> {
            let p: Point = line.field(index, "point")?;
            if !dim.contains(p) {
                return Err(line.err(format!("point {p} out of range 1..={}", dim.mask())));
            }
            Ok(p)
        };

        let mut slots: Vec<Option<Point>> = vec![None; g.order_plus_size()];
        let mut realization = PackingRealization::identity(dim, Vec::new());
        let mut lambda_seen = std::collections::HashSet::new();
        for line in lines {
            let (z, p) = match line.tokens[0] {
                "v" => {
                    line.expect("v", 3)?;
                    let v: usize = line.field(1, "vertex")?;
                    if v >= g.num_vertices() {
                        return Err(line.err(format!("vertex {v} is not in the graph")));
                    }
                    (v, point(&line, 2)?)
                }
                "e" => {
                    line.expect("e", 4)?;
                    let (u, v): (usize, usize) = (line.field(1, "vertex")?, line.field(2, "vertex")?);
                    let z = g
                        .edge_point(u, v)
                        .ok_or_else(|| line.err(format!("{u}-{v} is not an edge of the graph")))?;
                    (z, point(&line, 3)?)
                }
                "lambda" => {
                    line.expect("lambda", 3)?;
                    let p = point(&line, 1)?;
                    let value = parse_hex(line.tokens[2])
                        .filter(|&x| x <= dim.mask())
                        .ok_or_else(|| line.err(format!("invalid vector '{}'", line.tokens[2])))?;
                    if !lambda_seen.insert(p) {
                        return Err(line.err(format!("lambda given twice for point {p}")));
                    }
                    realization.set_lambda(p, value);
                    continue;
                }
                other => return Err(line.err(format!("unexpected record '{other}'"))),
            };
            if slots[z].replace(p).is_some() {
                return Err(line.err(format!("{} placed twice", Element::at(g, z))));
            }
        }
        if let Some(z) = slots.iter().position(Option::is_none) {
            return Err(Error::Input(format!("no point given for {}", Element::at(g, z))));
        }
        realization.iota = slots.into_iter().map(Option::unwrap).collect();
        Ok(realization)
    }
}

/// Failure classes of the construction, each carrying the offending element.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PackingFailure {
    #[error("F1: |V|+|E| = {elements}, and {} is not a power of two", elements + 1)]
    NotPowerOfTwo { elements: usize },

    #[error("F2: {element} is sent to the zero vector (point {point})")]
    ZeroVector { element: Element, point: Point },

    #[error("F3: inconsistent embedding/labeling at edge {}-{}: label {found:x}, expected {expected:x}", edge.0, edge.1)]
    InconsistentEdge { edge: Edge, expected: u32, found: u32 },

    #[error("F4: {first} and {second} both receive {label:x}")]
    DuplicateLabel { first: Element, second: Element, label: u32 },
}

impl PackingFailure {
    pub fn class(&self) -> &'static str {
        match self {
            PackingFailure::NotPowerOfTwo { .. } => "F1",
            PackingFailure::ZeroVector { .. } => "F2",
            PackingFailure::InconsistentEdge { .. } => "F3",
            PackingFailure::DuplicateLabel { .. } => "F4",
        }
    }
}

/// Builds a strong set-coloring from a packing realization in `O(|V| + |E|)`.
///
/// `f(z)` is the subset whose indicator vector is `Λ(ι(z))`. Fails with F1
/// when `|V| + |E| + 1` is not a power of two, F2 on a zero vector, F3 when
/// an edge breaks `Λ(ι(uv)) = Λ(ι(u)) ⊕ Λ(ι(v))`, and F4 when two elements
/// receive the same vector (non-injective ι or Λ).
pub fn color_from_packing(g: &Graph, pr: &PackingRealization) -> Result<Coloring> {
    let total = g.order_plus_size();
    let dim = match Dimension::from_universe(total) {
        Some(dim) => dim,
        None if (total + 1).is_power_of_two() && total > 0 => {
            return Err(Error::Unsupported(format!("{total} elements exceed the dimension cap")));
        }
        None => return Err(PackingFailure::NotPowerOfTwo { elements: total }.into()),
    };
    if dim != pr.dim {
        return Err(Error::Input(format!(
            "realization is over F2^{} but |V|+|E| = {total} needs n = {dim}",
            pr.dim
        )));
    }
    if pr.iota.len() != total {
        return Err(Error::SizeMismatch { expected: total, found: pr.iota.len() });
    }
    if let Lambda::Table(table) = &pr.lambda {
        if table.len() != total + 1 {
            return Err(Error::Input(format!("lambda table has {} entries, expected {}", table.len(), total + 1)));
        }
    }

    let mask = dim.mask();
    let nv = g.num_vertices();
    let mut vertex_labels = Vec::with_capacity(nv);
    let mut edge_labels = Vec::with_capacity(g.num_edges());
    for (z, &p) in pr.iota.iter().enumerate() {
        if p == 0 || p > mask {
            return Err(Error::Input(format!("{} is sent to {p}, not a point", Element::at(g, z))));
        }
        let v = pr.lambda.apply(p);
        if v == 0 {
            return Err(PackingFailure::ZeroVector { element: Element::at(g, z), point: p }.into());
        }
        let label = ColorVector::new(v, dim)
            .map_err(|_| Error::Input(format!("lambda({p}) = {v:x} is not a vector of F2^{dim}")))?;
        if z < nv {
            vertex_labels.push(label);
        } else {
            edge_labels.push(label);
        }
    }

    for (&(u, v), found) in g.edges().iter().zip(&edge_labels) {
        let expected = vertex_labels[u].bits() ^ vertex_labels[v].bits();
        if found.bits() != expected {
            return Err(PackingFailure::InconsistentEdge { edge: (u, v), expected, found: found.bits() }.into());
        }
    }

    let coloring = Coloring { dim, vertex_labels, edge_labels };
    if let Some((first, second, label)) = first_duplicate(total, |z| coloring.label(z).bits()) {
        return Err(PackingFailure::DuplicateLabel {
            first: Element::at(g, first),
            second: Element::at(g, second),
            label,
        }
        .into());
    }
    Ok(coloring)
}

/// The star K₁,L with `L = 2ⁿ⁻¹ − 1` and an identity-Λ realization: the
/// center sits on point 1 and leaf `i` with its edge on the pair `{2i, 2i+1}`.
pub fn make_star_realization(dim: Dimension) -> (Graph, PackingRealization) {
    let leaves = (1usize << (dim.get() - 1)) - 1;
    let g = Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("stars are simple");
    let mut iota = Vec::with_capacity(2 * leaves + 1);
    iota.push(1);
    iota.extend((1..=leaves).map(|i| 2 * i as Point));
    iota.extend((1..=leaves).map(|i| 2 * i as Point + 1));
    (g, PackingRealization::identity(dim, iota))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn k2() -> Graph {
        Graph::new(2, [(0, 1)]).unwrap()
    }

    fn coloring(g: &Graph, n: u32, bits: &[u32]) -> Coloring {
        Coloring::from_point_bits(g, dim(n), bits).unwrap()
    }

    /// Materializes every label as a color set and every nonempty subset of X,
    /// then compares them as multisets.
    fn exhaustive_accepts(g: &Graph, c: &Coloring) -> bool {
        let n = c.dim().get();
        let labels: Vec<BTreeSet<u32>> = (0..g.order_plus_size()).map(|z| c.label(z).to_subset()).collect();
        let mut all_subsets: Vec<BTreeSet<u32>> = (1u32..1 << n)
            .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
            .collect();
        let mut sorted = labels.clone();
        sorted.sort();
        all_subsets.sort();
        if sorted != all_subsets {
            return false;
        }
        g.edges().iter().enumerate().all(|(k, &(u, v))| {
            let sd: BTreeSet<u32> = labels[u].symmetric_difference(&labels[v]).copied().collect();
            labels[g.num_vertices() + k] == sd
        })
    }

    #[test]
    fn verify_examples() {
        let g = k2();
        assert_eq!(verify_coloring(&g, &coloring(&g, 2, &[1, 2, 3])).unwrap(), Verdict::Accept);
        assert_eq!(
            verify_coloring(&g, &coloring(&g, 2, &[1, 2, 1])).unwrap(),
            Verdict::Reject(Rejection::Duplicate {
                first: Element::Vertex(0),
                second: Element::Edge(0, 1),
                label: ColorVector::new(1, dim(2)).unwrap(),
            })
        );
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            verify_coloring(&p3, &coloring(&p3, 3, &[1, 2, 4, 3, 6])).unwrap(),
            Verdict::Reject(Rejection::Size { elements: 5, n: 3 })
        );
    }

    #[test]
    fn verify_reports_edge_rule_and_shape_errors() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(verify_coloring(&g, &coloring(&g, 3, &[1, 2, 4, 7, 3, 5, 6])).unwrap().is_accept());
        assert_eq!(
            verify_coloring(&g, &coloring(&g, 3, &[1, 2, 4, 7, 5, 3, 6])).unwrap(),
            Verdict::Reject(Rejection::EdgeRule {
                edge: (0, 1),
                expected: 3,
                found: ColorVector::new(5, dim(3)).unwrap(),
            })
        );
        let short = Coloring::new(dim(2), vec![], vec![]).unwrap();
        assert!(verify_coloring(&k2(), &short).is_err());
        let mixed = Coloring::new(dim(2), vec![ColorVector::new(1, dim(3)).unwrap()], vec![]);
        assert!(matches!(mixed, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn verify_matches_exhaustive_checker() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=4u32 {
            let total = (1usize << n) - 1;
            for a in 1..=total {
                let b = total - a;
                if b > a * (a - 1) / 2 || a > 10 {
                    continue;
                }
                for g in crate::graph::nonisomorphic_graphs(a, b).unwrap().into_iter().take(8) {
                    for _ in 0..40 {
                        // Mix permutations of the full universe with arbitrary labelings.
                        let bits: Vec<u32> = if rng.gen_bool(0.5) {
                            use rand::seq::SliceRandom;
                            let mut all: Vec<u32> = (1..=total as u32).collect();
                            all.shuffle(&mut rng);
                            all
                        } else {
                            (0..total).map(|_| rng.gen_range(1..=total as u32)).collect()
                        };
                        let c = coloring(&g, n, &bits);
                        assert_eq!(verify_coloring(&g, &c).unwrap().is_accept(), exhaustive_accepts(&g, &c));
                    }
                }
            }
        }
        // Every labeling of K2.
        let g = k2();
        for bits in (0..27u32).map(|i| [i % 3 + 1, i / 3 % 3 + 1, i / 9 + 1]) {
            let c = coloring(&g, 2, &bits);
            assert_eq!(verify_coloring(&g, &c).unwrap().is_accept(), exhaustive_accepts(&g, &c), "{bits:?}");
        }
    }

    #[test]
    fn coloring_text_round_trip() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = coloring(&g, 3, &[1, 2, 4, 7, 3, 5, 6]);
        let text = c.to_text(&g);
        assert_eq!(text, "coloring 3\nv 0 1\nv 1 2\nv 2 4\nv 3 7\ne 0 1 3\ne 0 2 5\ne 0 3 6\n");
        assert_eq!(Coloring::parse(&text, &g).unwrap(), c);
        let shuffled = "# cert\ncoloring 3\ne 3 0 6\nv 3 7\ne 0 1 3\nv 0 1\nv 2 4\ne 0 2 5\nv 1 2\n";
        assert_eq!(Coloring::parse(shuffled, &g).unwrap(), c);

        let bad = |s: &str| Coloring::parse(s, &g).unwrap_err().to_string();
        assert!(bad("coloring 3\nv 0 1\n").contains("no label"));
        assert!(bad("coloring 3\nv 0 1\nv 0 2\n").contains("twice"));
        assert!(bad("coloring 3\ne 1 2 3\n").contains("not an edge"));
        assert!(bad("coloring 3\nv 9 1\n").contains("not in the graph"));
        assert!(bad("coloring 3\nv 0 8\n").contains("line 2"));
        assert!(bad("coloring 3\nv 0 0\n").contains("line 2"));
        assert!(bad("coloring 0\n").contains("line 1"));
        assert!(bad("colouring 3\n").contains("expected 'coloring'"));
    }

    #[test]
    fn color_from_packing_examples() {
        let g = k2();
        let pr = PackingRealization::identity(dim(2), vec![1, 2, 3]);
        let c = color_from_packing(&g, &pr).unwrap();
        assert_eq!(c, coloring(&g, 2, &[0b01, 0b10, 0b11]));
        assert!(verify_coloring(&g, &c).unwrap().is_accept());

        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let pr = PackingRealization::identity(dim(3), vec![1, 2, 3, 4, 5]);
        assert_eq!(
            color_from_packing(&p3, &pr),
            Err(Error::Packing(PackingFailure::NotPowerOfTwo { elements: 5 }))
        );

        let pr = PackingRealization::identity(dim(2), vec![1, 2, 2]);
        assert_eq!(
            color_from_packing(&g, &pr),
            Err(Error::Packing(PackingFailure::InconsistentEdge { edge: (0, 1), expected: 3, found: 2 }))
        );
    }

    #[test]
    fn color_from_packing_zero_and_duplicates() {
        let g = k2();
        let mut pr = PackingRealization::identity(dim(2), vec![1, 2, 3]);
        pr.set_lambda(2, 0);
        let err = color_from_packing(&g, &pr).unwrap_err();
        assert_eq!(err, Error::Packing(PackingFailure::ZeroVector { element: Element::Vertex(1), point: 2 }));
        assert!(err.to_string().starts_with("F2"));

        // Non-injective iota that passes every edge check: two isolated
        // vertices on the same point.
        let g = Graph::new(6, [(0, 1)]).unwrap();
        let pr = PackingRealization::identity(dim(3), vec![1, 2, 4, 4, 5, 6, 3]);
        assert_eq!(
            color_from_packing(&g, &pr),
            Err(Error::Packing(PackingFailure::DuplicateLabel {
                first: Element::Vertex(2),
                second: Element::Vertex(3),
                label: 4
            }))
        );

        // Non-injective lambda.
        let mut pr = PackingRealization::identity(dim(3), vec![1, 2, 4, 7, 5, 6, 3]);
        assert!(color_from_packing(&g, &pr).is_ok());
        pr.set_lambda(7, 4);
        assert_eq!(color_from_packing(&g, &pr).unwrap_err().to_string().get(..2), Some("F4"));

        let pr = PackingRealization::identity(dim(2), vec![1, 2, 3]);
        assert!(matches!(color_from_packing(&g, &pr), Err(Error::Input(_))));
        let pr = PackingRealization::identity(dim(3), vec![1, 2, 4, 7, 5, 6]);
        assert!(matches!(color_from_packing(&g, &pr), Err(Error::SizeMismatch { .. })));
        let pr = PackingRealization::identity(dim(3), vec![1, 2, 4, 8, 5, 6, 3]);
        assert!(matches!(color_from_packing(&g, &pr), Err(Error::Input(_))));
        assert!(matches!(
            color_from_packing(&Graph::edgeless(0), &pr),
            Err(Error::Packing(PackingFailure::NotPowerOfTwo { elements: 0 }))
        ));
    }

    #[test]
    fn star_realizations() {
        let (g, pr) = make_star_realization(dim(2));
        assert_eq!(g, k2());
        assert_eq!(pr.iota, vec![1, 2, 3]);

        let (g, pr) = make_star_realization(dim(3));
        assert_eq!(g, Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap());
        let c = color_from_packing(&g, &pr).unwrap();
        let bits: Vec<u32> = (0..7).map(|z| c.label(z).bits()).collect();
        assert_eq!(bits, vec![0b001, 0b010, 0b100, 0b110, 0b011, 0b101, 0b111]);
        assert!(verify_coloring(&g, &c).unwrap().is_accept());
        assert!(exhaustive_accepts(&g, &c));

        for n in 1..=12 {
            let (g, pr) = make_star_realization(dim(n));
            assert_eq!(g.order_plus_size(), (1 << n) - 1);
            let c = color_from_packing(&g, &pr).unwrap();
            assert!(verify_coloring(&g, &c).unwrap().is_accept());
        }
    }

    #[test]
    fn realization_text_round_trip() {
        let (g, mut pr) = make_star_realization(dim(3));
        let text = pr.to_text(&g);
        assert_eq!(text, "realization 3\nv 0 1\nv 1 2\nv 2 4\nv 3 6\ne 0 1 3\ne 0 2 5\ne 0 3 7\n");
        assert_eq!(PackingRealization::parse(&text, &g).unwrap(), pr);
        pr.set_lambda(5, 0);
        let text = pr.to_text(&g);
        assert!(text.ends_with("lambda 5 0\n"));
        assert_eq!(PackingRealization::parse(&text, &g).unwrap(), pr);

        let bad = |s: &str| PackingRealization::parse(s, &g).unwrap_err().to_string();
        assert!(bad("realization 3\nv 0 8\n").contains("out of range"));
        assert!(bad("realization 3\nv 0 1\n").contains("no point"));
        assert!(bad("realization 3\nlambda 1 8\n").contains("invalid vector"));
        assert!(bad("realization 3\nlambda 1 2\nlambda 1 3\n").contains("twice"));
        assert!(bad("realization 3\nq 1\n").contains("unexpected record"));
    }

    /// Every bijection of the 2ⁿ−1 points for small graphs, with identity Λ:
    /// whenever the construction succeeds its output verifies, and it
    /// succeeds exactly when the bijection is a packing embedding.
    #[test]
    fn soundness_over_all_embeddings() {
        use crate::steiner::check_packing_embedding;
        for (n, splits) in [(2u32, vec![(2, 1), (3, 0)]), (3, vec![(4, 3), (5, 2), (6, 1)])] {
            let d = dim(n);
            for (a, b) in splits {
                for g in crate::graph::nonisomorphic_graphs(a, b).unwrap() {
                    let h = g.hypergraph();
                    let mut perm: Vec<u32> = (1..=d.mask()).collect();
                    loop {
                        let pr = PackingRealization::identity(d, perm.clone());
                        let emb = PackingEmbedding { iota: perm.clone() };
                        let is_packing = check_packing_embedding(&h, &emb, d).unwrap();
                        match color_from_packing(&g, &pr) {
                            Ok(c) => {
                                assert!(is_packing);
                                assert!(verify_coloring(&g, &c).unwrap().is_accept());
                            }
                            Err(Error::Packing(f)) => {
                                assert!(!is_packing);
                                assert_eq!(f.class(), "F3");
                            }
                            Err(e) => panic!("{e}"),
                        }
                        if !next_permutation(&mut perm) {
                            break;
                        }
                    }
                }
            }
        }
    }

    fn next_permutation(p: &mut [u32]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn single_lambda_corruption_is_always_detected() {
        for n in 2..=6 {
            let (g, pr) = make_star_realization(dim(n));
            for p in 1..=dim(n).mask() {
                for value in 0..=dim(n).mask() {
                    if value == p {
                        continue;
                    }
                    let mut bad = pr.clone();
                    bad.set_lambda(p, value);
                    match color_from_packing(&g, &bad) {
                        Err(Error::Packing(f)) => assert!(["F2", "F3", "F4"].contains(&f.class())),
                        other => panic!("n={n} p={p} value={value}: {other:?}"),
                    }
                }
            }
        }
    }
}
