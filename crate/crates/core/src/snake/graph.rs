use crate::algebra::{fy, x, Generator, Monomial};
use crate::quiver::{build_quiver, HeightFunction, QuiverError, Vertex};
use serde::Serialize;
use std::collections::{BTreeMap, HashSet, VecDeque};

pub type Point = (i32, i32);

/// Unit segment between two lattice points, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub a: Point,
    pub b: Point,
}

impl Edge {
    pub fn new(p: Point, q: Point) -> Edge {
        if p < q {
            Edge { a: p, b: q }
        } else {
            Edge { a: q, b: p }
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.a.0 == self.b.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    N,
    E,
    S,
    W,
}

pub fn side(tile: Point, s: Side) -> Edge {
    let (x, y) = tile;
    match s {
        Side::S => Edge::new((x, y), (x + 1, y)),
        Side::N => Edge::new((x, y + 1), (x + 1, y + 1)),
        Side::W => Edge::new((x, y), (x, y + 1)),
        Side::E => Edge::new((x + 1, y), (x + 1, y + 1)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    East,
    North,
}

/// Perfect matching stored as sorted edge indices, plus its enclosed tiles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    pub edges: Vec<usize>,
    /// `enclosed[t]` is true when tile `t` lies inside `P ⊖ P₋`.
    pub enclosed: Vec<bool>,
}

/// A snake graph: unit tiles glued along east or north steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnakeGraph {
    tiles: Vec<Point>,
    tile_labels: Vec<u32>,
    edges: Vec<Edge>,
    edge_labels: Vec<Option<u32>>,
    minimal: Vec<usize>,
}

impl SnakeGraph {
    /// Generic constructor. `minimal` picks `P₋` among the two boundary matchings:
    /// it must contain the given side of the first tile.
    pub fn from_parts(
        tiles: Vec<Point>,
        tile_labels: Vec<u32>,
        labels: &BTreeMap<Edge, u32>,
        minimal_side: Side,
    ) -> SnakeGraph {
        let mut g = Self::bare(tiles, tile_labels, labels);
        let target = g.edge_index(side(g.tiles[0], minimal_side)).expect("side of first tile");
        let (a, b) = g.boundary_matchings();
        g.minimal = if a.contains(&target) { a } else { b };
        g
    }

    fn bare(tiles: Vec<Point>, tile_labels: Vec<u32>, labels: &BTreeMap<Edge, u32>) -> SnakeGraph {
        assert!(!tiles.is_empty() && tiles.len() == tile_labels.len());
        let mut edges: Vec<Edge> =
            tiles.iter().flat_map(|&t| [Side::S, Side::N, Side::W, Side::E].map(|s| side(t, s))).collect();
        edges.sort();
        edges.dedup();
        let edge_labels = edges.iter().map(|e| labels.get(e).copied()).collect();
        SnakeGraph { tiles, tile_labels, edges, edge_labels, minimal: Vec::new() }
    }

    pub fn tiles(&self) -> &[Point] {
        &self.tiles
    }

    pub fn tile_labels(&self) -> &[u32] {
        &self.tile_labels
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_label(&self, e: usize) -> Option<u32> {
        self.edge_labels[e]
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn side_index(&self, t: usize, s: Side) -> usize {
        self.edge_index(side(self.tiles[t], s)).unwrap()
    }

    /// Step from tile `t` to tile `t+1`.
    pub fn step(&self, t: usize) -> Step {
        let (a, b) = (self.tiles[t], self.tiles[t + 1]);
        if b == (a.0 + 1, a.1) {
            Step::East
        } else {
            Step::North
        }
    }

    pub fn steps(&self) -> Vec<Step> {
        (0..self.len() - 1).map(|t| self.step(t)).collect()
    }

    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.edges.iter().flat_map(|e| [e.a, e.b]).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_boundary(&self, e: usize) -> bool {
        let e = self.edges[e];
        self.tiles.iter().filter(|&&t| [Side::S, Side::N, Side::W, Side::E].iter().any(|&s| side(t, s) == e)).count()
            == 1
    }

    /// The two perfect matchings using only boundary edges; the first contains `S` of tile 0.
    pub fn boundary_matchings(&self) -> (Vec<usize>, Vec<usize>) {
        let bnd: Vec<usize> = (0..self.edges.len()).filter(|&e| self.is_boundary(e)).collect();
        let mut adj: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for &e in &bnd {
            adj.entry(self.edges[e].a).or_default().push(e);
            adj.entry(self.edges[e].b).or_default().push(e);
        }
        let start = self.side_index(0, Side::S);
        let mut order = vec![start];
        let mut at = self.edges[start].b;
        let mut prev = start;
        loop {
            let next = *adj[&at].iter().find(|&&e| e != prev).unwrap();
            if next == start {
                break;
            }
            order.push(next);
            let e = self.edges[next];
            at = if e.a == at { e.b } else { e.a };
            prev = next;
        }
        let mut a: Vec<usize> = order.iter().step_by(2).copied().collect();
        let mut b: Vec<usize> = order.iter().skip(1).step_by(2).copied().collect();
        a.sort();
        b.sort();
        (a, b)
    }

    /// Minimal matching `P₋`.
    pub fn minimal_edges(&self) -> &[usize] {
        &self.minimal
    }

    /// Maximal matching `P₊`: the other boundary matching.
    pub fn maximal_edges(&self) -> Vec<usize> {
        let (a, b) = self.boundary_matchings();
        if a == self.minimal {
            b
        } else {
            a
        }
    }

    /// Side of the first tile contained in `P₋` (`W` or `S`).
    pub fn anchor(&self) -> Side {
        if self.minimal.contains(&self.side_index(0, Side::W)) {
            Side::W
        } else {
            Side::S
        }
    }

    pub fn minimal_matching(&self) -> Matching {
        Matching { edges: self.minimal.clone(), enclosed: vec![false; self.len()] }
    }

    pub fn maximal_matching(&self) -> Matching {
        let edges = self.maximal_edges();
        let enclosed = self.enclosed_tiles(&edges);
        Matching { edges, enclosed }
    }

    /// Tiles inside the cycles of `P ⊖ P₋`, by ray casting to the west.
    pub fn enclosed_tiles(&self, p: &[usize]) -> Vec<bool> {
        let diff: Vec<Edge> = p
            .iter()
            .filter(|e| !self.minimal.contains(e))
            .chain(self.minimal.iter().filter(|e| !p.contains(e)))
            .map(|&e| self.edges[e])
            .collect();
        self.tiles
            .iter()
            .map(|&(tx, ty)| diff.iter().filter(|e| e.is_vertical() && e.a.0 <= tx && e.a.1 == ty).count() % 2 == 1)
            .collect()
    }

    /// Tile `t` can be turned when `P` holds two opposite sides of it.
    fn turn(&self, p: &[usize], t: usize) -> Option<Vec<usize>> {
        let [s, n, w, e] = [Side::S, Side::N, Side::W, Side::E].map(|s| self.side_index(t, s));
        let has = |k: usize| p.binary_search(&k).is_ok();
        let (drop, add) = if has(s) && has(n) {
            ([s, n], [w, e])
        } else if has(w) && has(e) {
            ([w, e], [s, n])
        } else {
            return None;
        };
        let mut q: Vec<usize> = p.iter().copied().filter(|k| !drop.contains(k)).collect();
        q.extend(add);
        q.sort();
        Some(q)
    }

    /// All perfect matchings, by breadth-first search over tile turns from `P₋`.
    ///
    /// Each turn toggles one tile of the enclosed set.
    pub fn matchings(&self) -> Vec<Matching> {
        let start = self.minimal_matching();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(start.edges.clone());
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(m) = queue.pop_front() {
            for t in 0..self.len() {
                if let Some(q) = self.turn(&m.edges, t) {
                    if seen.insert(q.clone()) {
                        let mut enclosed = m.enclosed.clone();
                        enclosed[t] = !enclosed[t];
                        queue.push_back(Matching { edges: q, enclosed });
                    }
                }
            }
            out.push(m);
        }
        out
    }

    /// Weight `x(P)`: product of the labels of matched edges.
    pub fn x_weight(&self, p: &Matching) -> Monomial {
        Monomial::from_pairs(p.edges.iter().filter_map(|&e| self.edge_labels[e].map(|l| (x(l), 1))))
    }

    /// Height `y(P)`: product of `y_τ` over enclosed tiles.
    pub fn y_weight(&self, p: &Matching) -> Monomial {
        Monomial::from_pairs(p.enclosed.iter().zip(&self.tile_labels).filter(|(e, _)| **e).map(|(_, &l)| (fy(l), 1)))
    }

    /// Contiguous sub-snake of tiles `range`, with `P₋` inherited from this graph.
    pub fn sub(&self, range: std::ops::Range<usize>) -> SnakeGraph {
        let tiles = self.tiles[range.clone()].to_vec();
        let labels: BTreeMap<Edge, u32> =
            self.edges.iter().zip(&self.edge_labels).filter_map(|(e, l)| l.map(|l| (*e, l))).collect();
        let mut g = Self::bare(tiles, self.tile_labels[range].to_vec(), &labels);
        let (a, b) = g.boundary_matchings();
        let parent: HashSet<Edge> = self.minimal.iter().map(|&e| self.edges[e]).collect();
        let score = |m: &Vec<usize>| m.iter().filter(|&&e| parent.contains(&g.edges[e])).count();
        g.minimal = if score(&a) >= score(&b) { a } else { b };
        g
    }

    /// Rotation by 180 degrees with the tile order reversed; labels and `P₋` follow.
    pub fn reverse(&self) -> SnakeGraph {
        let (mx, my) = *self.tiles.last().unwrap();
        let map = |p: Point| (mx + 1 - p.0, my + 1 - p.1);
        self.transform(map, true)
    }

    /// Reflection in the diagonal `y = x`, keeping the tile order.
    pub fn transpose(&self) -> SnakeGraph {
        self.transform(|p: Point| (p.1, p.0), false)
    }

    fn transform(&self, map: impl Fn(Point) -> Point, reverse: bool) -> SnakeGraph {
        let mut tiles: Vec<Point> = self
            .tiles
            .iter()
            .map(|&(x, y)| {
                let (a, b) = (map((x, y)), map((x + 1, y + 1)));
                (a.0.min(b.0), a.1.min(b.1))
            })
            .collect();
        let mut tl = self.tile_labels.clone();
        if reverse {
            tiles.reverse();
            tl.reverse();
        }
        let labels: BTreeMap<Edge, u32> = self
            .edges
            .iter()
            .zip(&self.edge_labels)
            .filter_map(|(e, l)| l.map(|l| (Edge::new(map(e.a), map(e.b)), l)))
            .collect();
        let mut g = Self::bare(tiles, tl, &labels);
        let mut minimal: Vec<usize> = self
            .minimal
            .iter()
            .map(|&e| g.edge_index(Edge::new(map(self.edges[e].a), map(self.edges[e].b))).unwrap())
            .collect();
        minimal.sort();
        g.minimal = minimal;
        g
    }
}

/// Snake graph `G_{i,j}` attached to an interval of `Q_ξ`.
pub fn build_snake_graph(h: &HeightFunction, i: usize, j: usize) -> Result<SnakeGraph, QuiverError> {
    h.check_interval(i, j)?;
    let d = j - i + 1;
    let mut tiles = vec![(0, 0)];
    let mut steps: Vec<Step> = Vec::new();
    for t in 1..d {
        let l = i + t;
        let s = if t == 1 {
            Step::East
        } else if h.is_source_or_sink(l - 1) {
            steps[t - 2]
        } else {
            match steps[t - 2] {
                Step::East => Step::North,
                Step::North => Step::East,
            }
        };
        steps.push(s);
        let (px, py) = tiles[t - 1];
        tiles.push(match s {
            Step::East => (px + 1, py),
            Step::North => (px, py + 1),
        });
    }
    let mut labels = BTreeMap::new();
    for t in 0..d - 1 {
        let l = (i + t) as u32;
        let (a, b) = match steps[t] {
            Step::East => (Side::N, Side::S),
            Step::North => (Side::E, Side::W),
        };
        labels.insert(side(tiles[t], a), l + 1);
        labels.insert(side(tiles[t + 1], b), l);
    }
    let q = build_quiver(h);
    let w = d > 1 && q.has_arrow(Vertex::Mutable(i as u32 + 1), Vertex::Mutable(i as u32));
    let tile_labels = (i..=j).map(|l| l as u32).collect();
    Ok(SnakeGraph::from_parts(tiles, tile_labels, &labels, if w { Side::W } else { Side::S }))
}

/// Product of the formal variables of every tile, `y_i ⋯ y_j`.
pub fn all_tiles(g: &SnakeGraph) -> Monomial {
    Monomial::from_pairs(g.tile_labels().iter().map(|&l| (Generator::FormalY(l), 1)))
}
