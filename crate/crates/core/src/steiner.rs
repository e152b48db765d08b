//! The Steiner triple system S(2,3,2ⁿ−1) as the lines of PG(n−1,2), and
//! packing embeddings of associated hypergraphs into it.
//!
//! Points are the integers `1..2ⁿ`, read directly as coordinate vectors of
//! F₂ⁿ, so `{p, q, r}` is a block exactly when `p ^ q ^ r == 0`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::Dimension;
use crate::graph::Hypergraph;
use crate::text;

pub type Point = u32;
pub type Block = [Point; 3];

/// The unique third point on the line through `p` and `q`.
pub fn third_point(p: Point, q: Point, dim: Dimension) -> Result<Point> {
    for x in [p, q] {
        if !dim.contains(x) {
            return Err(Error::Input(format!("{x} is not a point of PG({}, 2)", dim.get() - 1)));
        }
    }
    if p == q {
        return Err(Error::Input(format!("third_point needs two distinct points, got {p} twice")));
    }
    Ok(p ^ q)
}

/// Block set of a triple system on points `1..=num_points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    dim: Dimension,
    blocks: Vec<Block>,
}

impl TripleSystem {
    /// All lines `{p, q, p ^ q}` of PG(n−1,2), each stored ascending, in
    /// lexicographic order. For `n = 1` there is one point and no blocks.
    pub fn projective(dim: Dimension) -> Self {
        let top = dim.mask();
        let mut blocks = Vec::with_capacity(block_count(dim));
        for p in 1..=top {
            for q in p + 1..=top {
                let r = p ^ q;
                if r > q {
                    blocks.push([p, q, r]);
                }
            }
        }
        TripleSystem { dim, blocks }
    }

    /// Wraps an arbitrary block list. No design property is checked here; see
    /// [`TripleSystem::verify_pair_coverage`].
    pub fn from_blocks(dim: Dimension, blocks: Vec<Block>) -> Self {
        TripleSystem { dim, blocks }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn num_points(&self) -> usize {
        self.dim.universe_size()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Whether `{p, q, r}` is a line of the projective model.
    #[inline]
    pub fn is_block(&self, p: Point, q: Point, r: Point) -> bool {
        p != q && [p, q, r].iter().all(|&x| self.dim.contains(x)) && p ^ q ^ r == 0
    }

    /// True iff every block has three distinct in-range points and every pair
    /// of distinct points lies in exactly one block.
    pub fn verify_pair_coverage(&self) -> bool {
        let v = self.num_points();
        let pairs = v * (v - 1) / 2;
        if self.blocks.len() * 3 != pairs {
            return false;
        }
        // Pair {a, b} with 1 <= a < b <= v maps to a slot of a triangular table.
        let slot = |a: usize, b: usize| (b - 1) * (b - 2) / 2 + (a - 1);
        let mut covered = vec![0u64; pairs.div_ceil(64)];
        for block in &self.blocks {
            let mut pts = block.map(|p| p as usize);
            pts.sort_unstable();
            if pts[0] == 0 || pts[2] > v || pts[0] == pts[1] || pts[1] == pts[2] {
                return false;
            }
            for (a, b) in [(pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2])] {
                let s = slot(a, b);
                if covered[s / 64] >> (s % 64) & 1 == 1 {
                    return false;
                }
                covered[s / 64] |= 1 << (s % 64);
            }
        }
        // `pairs` distinct slots were filled, so every pair is covered.
        true
    }

    /// STS text format: `sts <n> <num_points> <num_blocks>` then `b <p> <q> <r>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * self.blocks.len() + 32);
        writeln!(out, "sts {} {} {}", self.dim, self.num_points(), self.blocks.len()).unwrap();
        for [p, q, r] in &self.blocks {
            writeln!(out, "b {p} {q} {r}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text::lines(text);
        let header = lines.next().ok_or_else(|| text::missing_header(text, "sts"))?;
        header.expect("sts", 4)?;
        let n: u32 = header.field(1, "dimension")?;
        let dim = Dimension::new(n).map_err(|e| e.at_line(header.number))?;
        let num_points: usize = header.field(2, "point count")?;
        if num_points != dim.universe_size() {
            return Err(header.err(format!("point count {num_points} is not 2^{n}-1")));
        }
        let num_blocks: usize = header.field(3, "block count")?;
        let mut blocks = Vec::with_capacity(num_blocks);
        for line in lines {
            line.expect("b", 4)?;
            let mut block = [0; 3];
            for (i, slot) in block.iter_mut().enumerate() {
                *slot = line.field(i + 1, "point")?;
                if !dim.contains(*slot) {
                    return Err(line.err(format!("point {} out of range 1..={num_points}", *slot)));
                }
            }
            blocks.push(block);
        }
        if blocks.len() != num_blocks {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {num_blocks} blocks, found {}", blocks.len()),
            ));
        }
        Ok(TripleSystem { dim, blocks })
    }
}

/// `(2ⁿ−1)(2ⁿ−2)/6`, the number of blocks of S(2,3,2ⁿ−1).
pub fn block_count(dim: Dimension) -> usize {
    let v = dim.universe_size();
    v * (v - 1) / 6
}

/// Injective map ι from hypergraph points to STS points; `iota[z]` is the image of point `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingEmbedding {
    pub iota: Vec<Point>,
}

/// True iff `emb` is a bijection onto `1..2ⁿ` sending every triple of `h` to a block.
pub fn check_packing_embedding(h: &Hypergraph, emb: &PackingEmbedding, dim: Dimension) -> Result<bool> {
    let v = dim.universe_size();
    if h.num_points != v {
        return Err(Error::SizeMismatch { expected: v, found: h.num_points });
    }
    if emb.iota.len() != v {
        return Err(Error::SizeMismatch { expected: v, found: emb.iota.len() });
    }
    let mut seen = vec![false; v + 1];
    for &p in &emb.iota {
        if !dim.contains(p) || std::mem::replace(&mut seen[p as usize], true) {
            return Ok(false);
        }
    }
    Ok(h
        .triples
        .iter()
        .all(|&[a, b, c]| emb.iota[a] ^ emb.iota[b] ^ emb.iota[c] == 0))
}

/// Exhaustive search for a packing embedding of `h` into S(2,3,2ⁿ−1).
///
/// Points are assigned in index order (graph vertices before edge points),
/// lowest free STS point first. Whenever two members of a triple are placed
/// the third is forced to their XOR and propagated.
pub fn find_packing_embedding(h: &Hypergraph, dim: Dimension) -> Result<Option<PackingEmbedding>> {
    let v = dim.universe_size();
    if h.num_points != v {
        return Err(Error::SizeMismatch { expected: v, found: h.num_points });
    }
    for t in &h.triples {
        if t.iter().any(|&z| z >= v) || t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
            return Err(Error::Input(format!("malformed triple {t:?}")));
        }
    }
    let mut incident = vec![Vec::new(); v];
    for (i, t) in h.triples.iter().enumerate() {
        for &z in t {
            incident[z].push(i);
        }
    }
    let mut search = EmbeddingSearch {
        triples: &h.triples,
        incident,
        image: vec![0; v],
        used: vec![false; v + 1],
        trail: Vec::with_capacity(v),
    };
    if search.extend(0) {
        Ok(Some(PackingEmbedding { iota: search.image }))
    } else {
        Ok(None)
    }
}

struct EmbeddingSearch<'a> {
    triples: &'a [[usize; 3]],
    incident: Vec<Vec<usize>>,
    /// 0 marks an unassigned hypergraph point.
    image: Vec<Point>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl EmbeddingSearch<'_> {
    fn extend(&mut self, from: usize) -> bool {
        let Some(z) = (from..self.image.len()).find(|&z| self.image[z] == 0) else {
            return true;
        };
        for p in 1..self.used.len() as Point {
            if self.used[p as usize] {
                continue;
            }
            let mark = self.trail.len();
            if self.place(z, p) && self.extend(z + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    /// Places `z ↦ p` and closes under triple forcing. Returns false on conflict;
    /// the caller rolls back with [`Self::undo`].
    fn place(&mut self, z: usize, p: Point) -> bool {
        let mut pending = vec![(z, p)];
        while let Some((z, p)) = pending.pop() {
            if self.image[z] != 0 {
                if self.image[z] != p {
                    return false;
                }
                continue;
            }
            if self.used[p as usize] {
                return false;
            }
            self.image[z] = p;
            self.used[p as usize] = true;
            self.trail.push(z);
            for &t in &self.incident[z] {
                let [a, b, c] = self.triples[t];
                let placed = [a, b, c].map(|x| self.image[x]);
                match placed.iter().filter(|&&x| x != 0).count() {
                    2 => {
                        let missing = [a, b, c][placed.iter().position(|&x| x == 0).unwrap()];
                        pending.push((missing, placed[0] ^ placed[1] ^ placed[2]));
                    }
                    3 if placed[0] ^ placed[1] ^ placed[2] != 0 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let z = self.trail.pop().unwrap();
            self.used[self.image[z] as usize] = false;
            self.image[z] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    /// Every 3-subset of the points whose coordinates sum to zero.
    fn brute_blocks(n: u32) -> Vec<Block> {
        let top = dim(n).mask();
        let mut out = Vec::new();
        for p in 1..=top {
            for q in p + 1..=top {
                for r in q + 1..=top {
                    if p ^ q ^ r == 0 {
                        out.push([p, q, r]);
                    }
                }
            }
        }
        out
    }

    /// Pair coverage by counting every pair against every block.
    fn brute_pair_coverage(ts: &TripleSystem) -> bool {
        let v = ts.num_points() as Point;
        (1..=v).all(|a| {
            (a + 1..=v).all(|b| ts.blocks().iter().filter(|blk| blk.contains(&a) && blk.contains(&b)).count() == 1)
        })
    }

    #[test]
    fn third_point_examples() {
        assert_eq!(third_point(0b001, 0b010, dim(3)).unwrap(), 0b011);
        assert_eq!(third_point(0b011, 0b101, dim(3)).unwrap(), 0b110);
        for p in 1..=7 {
            for q in 1..=7 {
                if p != q {
                    let r = third_point(p, q, dim(3)).unwrap();
                    assert_eq!(third_point(p, r, dim(3)).unwrap(), q);
                }
            }
        }
        assert!(third_point(3, 3, dim(3)).is_err());
        assert!(third_point(0, 3, dim(3)).is_err());
        assert!(third_point(8, 3, dim(3)).is_err());
    }

    #[test]
    fn generation_matches_enumeration() {
        assert_eq!(TripleSystem::projective(dim(2)).blocks(), &[[1, 2, 3]]);
        let fano = TripleSystem::projective(dim(3));
        assert_eq!(fano.blocks().len(), 7);
        assert_eq!(fano.num_points(), 7);
        for n in 2..=6 {
            assert_eq!(TripleSystem::projective(dim(n)).blocks(), brute_blocks(n).as_slice());
        }
        assert_eq!(TripleSystem::projective(dim(5)).blocks().len(), 155);
        assert!(TripleSystem::projective(dim(1)).blocks().is_empty());
    }

    #[test]
    fn block_count_and_coverage_up_to_ten() {
        for n in 2..=10 {
            let ts = TripleSystem::projective(dim(n));
            let v = (1usize << n) - 1;
            assert_eq!(ts.blocks().len(), v * (v - 1) / 6);
            assert!(ts.verify_pair_coverage(), "n={n}");
            for &[p, q, r] in ts.blocks() {
                assert!(p < q && q < r);
                assert_eq!(third_point(p, q, ts.dim()).unwrap(), r);
            }
        }
    }

    #[test]
    fn pair_coverage_matches_counting_oracle() {
        let fano = TripleSystem::projective(dim(3));
        assert!(brute_pair_coverage(&fano));
        assert!(fano.verify_pair_coverage());
        assert!(TripleSystem::projective(dim(2)).verify_pair_coverage());

        let mut missing = fano.blocks().to_vec();
        missing.remove(3);
        let broken = TripleSystem::from_blocks(dim(3), missing);
        assert!(!broken.verify_pair_coverage());
        assert!(!brute_pair_coverage(&broken));

        // Right block count but one pair covered twice.
        let mut doubled = fano.blocks().to_vec();
        doubled[0] = doubled[1];
        let doubled = TripleSystem::from_blocks(dim(3), doubled);
        assert!(!doubled.verify_pair_coverage());
        assert!(!brute_pair_coverage(&doubled));

        // A different, non-projective labelling is still a Steiner system.
        let relabeled: Vec<Block> = fano
            .blocks()
            .iter()
            .map(|b| b.map(|p| if p == 1 { 2 } else if p == 2 { 1 } else { p }))
            .collect();
        let relabeled = TripleSystem::from_blocks(dim(3), relabeled);
        assert!(relabeled.verify_pair_coverage());

        let out_of_range = TripleSystem::from_blocks(dim(2), vec![[1, 2, 4]]);
        assert!(!out_of_range.verify_pair_coverage());
    }

    #[test]
    fn sts_text_round_trip() {
        let fano = TripleSystem::projective(dim(3));
        let text = fano.to_text();
        assert!(text.starts_with("sts 3 7 7\nb 1 2 3\nb 1 4 5\n"));
        assert_eq!(TripleSystem::parse(&text).unwrap(), fano);
        assert!(TripleSystem::parse("sts 3 8 0\n").is_err());
        assert!(TripleSystem::parse("sts 2 3 1\nb 1 2 4\n").is_err());
        assert!(TripleSystem::parse("sts 2 3 2\nb 1 2 3\n").is_err());
    }

    #[test]
    fn check_embedding_examples() {
        let h = Graph::new(2, [(0, 1)]).unwrap().hypergraph();
        let ok = PackingEmbedding { iota: vec![1, 2, 3] };
        assert!(check_packing_embedding(&h, &ok, dim(2)).unwrap());
        let dup = PackingEmbedding { iota: vec![1, 2, 2] };
        assert!(!check_packing_embedding(&h, &dup, dim(2)).unwrap());
        let swapped = PackingEmbedding { iota: vec![1, 3, 2] };
        assert!(check_packing_embedding(&h, &swapped, dim(2)).unwrap());
        assert!(matches!(
            check_packing_embedding(&h, &ok, dim(3)),
            Err(Error::SizeMismatch { expected: 7, found: 3 })
        ));
        let short = PackingEmbedding { iota: vec![1, 2] };
        assert!(check_packing_embedding(&h, &short, dim(2)).is_err());
    }

    /// Tries every bijection from hypergraph points to STS points.
    fn brute_embedding_exists(h: &Hypergraph, d: Dimension) -> bool {
        fn go(h: &Hypergraph, d: Dimension, iota: &mut Vec<Point>, used: &mut [bool]) -> bool {
            if iota.len() == h.num_points {
                return check_packing_embedding(h, &PackingEmbedding { iota: iota.clone() }, d).unwrap();
            }
            for p in 1..used.len() {
                if !used[p] {
                    used[p] = true;
                    iota.push(p as Point);
                    let found = go(h, d, iota, used);
                    iota.pop();
                    used[p] = false;
                    if found {
                        return true;
                    }
                }
            }
            false
        }
        go(h, d, &mut Vec::new(), &mut vec![false; d.universe_size() + 1])
    }

    #[test]
    fn find_embedding_examples() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap().hypergraph();
        let emb = find_packing_embedding(&k2, dim(2)).unwrap().unwrap();
        assert_eq!(emb.iota, vec![1, 2, 3]);
        assert!(check_packing_embedding(&k2, &emb, dim(2)).unwrap());

        // Of the 3! bijections for K2, exactly those sending the vertices to
        // two points (any order) work: all 6 do, since every triple is the one block.
        let count = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]
            .iter()
            .filter(|iota| {
                check_packing_embedding(&k2, &PackingEmbedding { iota: iota.to_vec() }, dim(2)).unwrap()
            })
            .count();
        assert_eq!(count, 6);

        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap().hypergraph();
        assert_eq!(find_packing_embedding(&p4, dim(3)).unwrap(), None);
        assert!(!brute_embedding_exists(&p4, dim(3)));

        let empty = Graph::edgeless(3).hypergraph();
        assert_eq!(find_packing_embedding(&empty, dim(2)).unwrap().unwrap().iota, vec![1, 2, 3]);

        assert!(matches!(
            find_packing_embedding(&p4, dim(2)),
            Err(Error::SizeMismatch { expected: 3, found: 7 })
        ));
    }

    #[test]
    fn find_embedding_agrees_with_bijection_enumeration() {
        for (a, b) in [(4, 3), (5, 2), (6, 1), (7, 0)] {
            for g in crate::graph::nonisomorphic_graphs(a, b).unwrap() {
                let h = g.hypergraph();
                let found = find_packing_embedding(&h, dim(3)).unwrap();
                if let Some(emb) = &found {
                    assert!(check_packing_embedding(&h, emb, dim(3)).unwrap());
                }
                assert_eq!(found.is_some(), brute_embedding_exists(&h, dim(3)), "{g:?}");
            }
        }
    }
}
