//! Deciding strong set-colorability by backtracking over vertex labels, an
//! unpruned enumeration oracle, and enumeration of colorable graphs at small n.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::gf2::Dimension;
use crate::graph::{nonisomorphic_graphs, Graph};

#[derive(Clone, Debug, Default)]
pub struct SearchConfig {
    /// Count every coloring instead of stopping at the first.
    pub find_all: bool,
    /// Fix the first assigned vertex to the vector `1`. GL(n,2) acts
    /// transitively on nonzero vectors and preserves strong set-colorings,
    /// so the verdict is unchanged; counts shrink by a factor of `2ⁿ − 1`.
    pub use_symmetry: bool,
    /// Give up with [`Outcome::Inconclusive`] after this many label attempts.
    pub node_limit: Option<u64>,
    /// Worker threads splitting the root of the search tree; 0 or 1 runs inline.
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Colorable(Coloring),
    /// `|V| + |E|` is not `2ⁿ − 1` for any `n ≥ 1`; no search was run.
    NotColorableSize,
    /// The search space was exhausted.
    NotColorable,
    /// The node limit was hit first.
    Inconclusive,
}

impl Outcome {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Outcome::Colorable(_))
    }

    /// `Some(verdict)` unless inconclusive.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Outcome::Colorable(_) => Some(true),
            Outcome::NotColorable | Outcome::NotColorableSize => Some(false),
            Outcome::Inconclusive => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: Outcome,
    /// Number of strong set-colorings, when `find_all` was set and the search finished.
    pub count: Option<u128>,
    /// Label attempts made.
    pub nodes: u64,
}

/// Decides whether `g` has a strong set-coloring.
///
/// Vertices are labeled in order of descending degree (ties by index). Edge
/// labels are never branched on: once both ends of an edge carry labels the
/// edge label is their XOR, and the branch dies if that vector is taken.
/// When only isolated vertices remain, any assignment of the leftover
/// vectors completes the coloring.
pub fn solve(g: &Graph, cfg: &SearchConfig) -> Result<SolveReport> {
    let total = g.order_plus_size();
    let Some(dim) = Dimension::from_universe(total) else {
        if total > 0 && (total + 1).is_power_of_two() {
            return Err(Error::Unsupported(format!("{total} elements exceed the dimension cap")));
        }
        return Ok(SolveReport { outcome: Outcome::NotColorableSize, count: None, nodes: 0 });
    };

    let plan = Plan::new(g, dim);
    let shared = Shared { nodes: AtomicU64::new(0), stop: AtomicBool::new(false), limit: cfg.node_limit };
    let roots: Vec<u32> = if cfg.use_symmetry { vec![1] } else { (1..=dim.mask()).collect() };

    let results: Vec<WorkerResult> = if cfg.threads > 1 && roots.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Input(format!("cannot start worker threads: {e}")))?;
        pool.install(|| {
            roots
                .par_iter()
                .map(|&root| Worker::new(&plan, &shared, cfg.find_all).run(&[root]))
                .collect()
        })
    } else {
        vec![Worker::new(&plan, &shared, cfg.find_all).run(&roots)]
    };

    let nodes = shared.nodes.load(Ordering::Relaxed);
    let mut solution = None;
    let mut count: u128 = 0;
    let mut hit_limit = false;
    for r in results {
        if solution.is_none() {
            solution = r.solution;
        }
        count = count
            .checked_add(r.count)
            .ok_or_else(|| Error::Unsupported("number of colorings overflows u128".into()))?;
        hit_limit |= r.hit_limit;
        if r.overflow {
            return Err(Error::Unsupported("number of colorings overflows u128".into()));
        }
    }

    let outcome = match solution {
        Some(bits) if !(cfg.find_all && hit_limit) => Outcome::Colorable(Coloring::from_point_bits(g, dim, &bits)?),
        _ if hit_limit => Outcome::Inconclusive,
        _ => Outcome::NotColorable,
    };
    let count = (cfg.find_all && !hit_limit).then_some(count);
    Ok(SolveReport { outcome, count, nodes })
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    limit: Option<u64>,
}

/// Static part of a search: assignment order and, for each position, the
/// edges back to earlier positions.
struct Plan<'g> {
    g: &'g Graph,
    dim: Dimension,
    order: Vec<usize>,
    /// `back[d]`: (earlier vertex, edge rank) for edges from `order[d]` to `order[..d]`.
    back: Vec<Vec<(usize, usize)>>,
    /// First position from which only isolated vertices follow.
    isolated_from: usize,
}

impl<'g> Plan<'g> {
    fn new(g: &'g Graph, dim: Dimension) -> Self {
        let deg = g.degrees();
        let mut order: Vec<usize> = (0..g.num_vertices()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        let mut pos = vec![0; g.num_vertices()];
        for (d, &v) in order.iter().enumerate() {
            pos[v] = d;
        }
        let mut back = vec![Vec::new(); order.len()];
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            let (early, late) = if pos[u] < pos[v] { (u, v) } else { (v, u) };
            back[pos[late]].push((early, k));
        }
        let isolated_from = order.iter().position(|&v| deg[v] == 0).unwrap_or(order.len());
        Plan { g, dim, order, back, isolated_from }
    }
}

#[derive(Default)]
struct WorkerResult {
    solution: Option<Vec<u32>>,
    count: u128,
    hit_limit: bool,
    overflow: bool,
}

enum Flow {
    Continue,
    Stop,
}

struct Worker<'a, 'g> {
    plan: &'a Plan<'g>,
    shared: &'a Shared,
    find_all: bool,
    /// Vertex labels, 0 while unassigned.
    label: Vec<u32>,
    used: Vec<bool>,
    result: WorkerResult,
}

impl<'a, 'g> Worker<'a, 'g> {
    fn new(plan: &'a Plan<'g>, shared: &'a Shared, find_all: bool) -> Self {
        let mut used = vec![false; plan.dim.universe_size() + 1];
        used[0] = true;
        Worker {
            plan,
            shared,
            find_all,
            label: vec![0; plan.g.num_vertices()],
            used,
            result: WorkerResult::default(),
        }
    }

    fn run(mut self, roots: &[u32]) -> WorkerResult {
        self.descend(0, Some(roots));
        self.result
    }

    fn descend(&mut self, depth: usize, roots: Option<&[u32]>) -> Flow {
        if self.shared.stop.load(Ordering::Relaxed) {
            return Flow::Stop;
        }
        // Root candidates are always branched on explicitly so that symmetry
        // breaking and root splitting apply even to an isolated first vertex.
        if depth >= self.plan.isolated_from && !(depth == 0 && roots.is_some_and(|r| r.len() == 1)) {
            return self.complete_with_isolated(depth);
        }
        let v = self.plan.order[depth];
        let width = roots.map_or(self.plan.dim.mask() as usize, <[u32]>::len);
        let mut edge_labels: Vec<u32> = Vec::with_capacity(self.plan.back[depth].len());
        for i in 0..width {
            let x = roots.map_or(i as u32 + 1, |r| r[i]);
            if self.used[x as usize] {
                continue;
            }
            let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if self.shared.limit.is_some_and(|limit| nodes > limit) {
                self.result.hit_limit = true;
                self.shared.stop.store(true, Ordering::Relaxed);
                return Flow::Stop;
            }
            self.used[x as usize] = true;
            edge_labels.clear();
            let mut ok = true;
            for &(w, _) in &self.plan.back[depth] {
                let e = (x ^ self.label[w]) as usize;
                if self.used[e] {
                    ok = false;
                    break;
                }
                self.used[e] = true;
                edge_labels.push(e as u32);
            }
            let flow = if ok {
                self.label[v] = x;
                let flow = self.descend(depth + 1, None);
                self.label[v] = 0;
                flow
            } else {
                Flow::Continue
            };
            for &e in &edge_labels {
                self.used[e as usize] = false;
            }
            self.used[x as usize] = false;
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    /// Positions `depth..` hold isolated vertices: each of the `k!` ways to
    /// hand them the `k` unused vectors is a coloring.
    fn complete_with_isolated(&mut self, depth: usize) -> Flow {
        let remaining = self.plan.order.len() - depth;
        if self.result.solution.is_none() {
            let mut free = (1..self.used.len()).filter(|&x| !self.used[x]);
            let mut label = self.label.clone();
            for &v in &self.plan.order[depth..] {
                label[v] = free.next().expect("counting condition leaves one vector per isolated vertex") as u32;
            }
            let g = self.plan.g;
            let mut bits = label.clone();
            bits.extend(g.edges().iter().map(|&(u, v)| label[u] ^ label[v]));
            self.result.solution = Some(bits);
        }
        if !self.find_all {
            self.shared.stop.store(true, Ordering::Relaxed);
            return Flow::Stop;
        }
        match factorial(remaining).and_then(|f| self.result.count.checked_add(f)) {
            Some(c) => {
                self.result.count = c;
                Flow::Continue
            }
            None => {
                self.result.overflow = true;
                self.shared.stop.store(true, Ordering::Relaxed);
                Flow::Stop
            }
        }
    }
}

fn factorial(k: usize) -> Option<u128> {
    (1..=k as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

/// Unpruned oracle: tries every injective assignment of nonzero vectors to
/// the vertices and checks the full label multiset at the leaves. Limited to
/// `|V| + |E| ≤ 7`.
pub fn exhaustive_oracle(g: &Graph) -> Result<Option<Coloring>> {
    let total = g.order_plus_size();
    if total > 7 {
        return Err(Error::Unsupported(format!("exhaustive oracle on {total} elements (max 7)")));
    }
    let Some(n) = (1..=3u32).find(|&n| (1usize << n) - 1 == total) else {
        return Ok(None);
    };
    let dim = Dimension::new(n)?;

    fn assign(g: &Graph, total: u32, labels: &mut Vec<u32>) -> bool {
        if labels.len() == g.num_vertices() {
            let mut all = labels.clone();
            all.extend(g.edges().iter().map(|&(u, v)| labels[u] ^ labels[v]));
            all.sort_unstable();
            return all.iter().copied().eq(1..=total);
        }
        for x in 1..=total {
            if labels.contains(&x) {
                continue;
            }
            labels.push(x);
            if assign(g, total, labels) {
                return true;
            }
            labels.pop();
        }
        false
    }

    let mut labels = Vec::with_capacity(g.num_vertices());
    if !assign(g, total as u32, &mut labels) {
        return Ok(None);
    }
    let mut bits = labels.clone();
    bits.extend(g.edges().iter().map(|&(u, v)| labels[u] ^ labels[v]));
    Coloring::from_point_bits(g, dim, &bits).map(Some)
}

/// Every graph with `|V| + |E| = total`, one canonical representative per
/// isomorphism class, ordered by vertex count then edge list.
pub fn graphs_with_total(total: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for a in 0..=total {
        let b = total - a;
        if b > a * a.saturating_sub(1) / 2 {
            continue;
        }
        out.extend(nonisomorphic_graphs(a, b)?);
    }
    Ok(out)
}

/// Canonical representatives of all strongly set-colorable graphs with
/// `|V| + |E| = 2ⁿ − 1`, sorted. Supported for `n ≤ 4`.
pub fn enumerate_colorable(dim: Dimension, connected_only: bool) -> Result<Vec<Graph>> {
    if dim.get() > 4 {
        return Err(Error::Unsupported(format!("enumeration for n = {dim} (max 4)")));
    }
    let candidates: Vec<Graph> = graphs_with_total(dim.universe_size())?
        .into_iter()
        .filter(|g| !connected_only || g.is_connected())
        .collect();
    let cfg = SearchConfig { use_symmetry: true, ..SearchConfig::default() };
    let verdicts = candidates
        .par_iter()
        .map(|g| solve(g, &cfg).map(|r| r.outcome.is_colorable()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates.into_iter().zip(verdicts).filter(|(_, ok)| *ok).map(|(g, _)| g).collect())
}
