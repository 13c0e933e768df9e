use std::collections::{HashMap, VecDeque};

use crate::action::{Letter, MarkedAction, RayPoint, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchreierError {
    #[error("basepoint {point} is not in X_{ray_count}")]
    InvalidBasepoint { point: RayPoint, ray_count: u32 },
    #[error("vertex {0} is not in the ball")]
    UnknownVertex(RayPoint),
    #[error("malformed ball: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(String),
}

/// Directed labelled edge `source -> source . generator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallEdge {
    pub source: usize,
    pub generator: usize,
    pub target: usize,
}

/// Path distance inside a ball. `exact` is set when every geodesic of the
/// full Schreier graph between the two vertices is guaranteed to lie inside
/// the ball, i.e. `sphere(u) + sphere(v) + value <= 2 * radius`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallDistance {
    pub value: u32,
    pub exact: bool,
}

/// The radius-`R` ball around a basepoint in the Schreier graph of a marked
/// action.
///
/// Vertices are the acted-on points, indexed in `(ray, position)` order.
/// Edge `(u, s, v)` is present iff `u . s = v` and both ends are in the ball,
/// so every vertex below the outer sphere carries all of its edges.
#[derive(Debug, Clone)]
pub struct BallGraph {
    basepoint: RayPoint,
    radius: u32,
    labels: Vec<String>,
    vertices: Vec<RayPoint>,
    spheres: Vec<u32>,
    edges: Vec<BallEdge>,
    index: HashMap<RayPoint, usize>,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
    simple: Vec<Vec<usize>>,
}

pub fn build_ball(
    action: &MarkedAction,
    basepoint: RayPoint,
    radius: u32,
) -> Result<BallGraph, SchreierError> {
    if !basepoint.is_valid_for(action.ray_count()) {
        return Err(SchreierError::InvalidBasepoint {
            point: basepoint,
            ray_count: action.ray_count(),
        });
    }
    let gens = action.generators().len();
    let letters: Vec<Letter> = (0..gens)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();

    let mut dist: HashMap<RayPoint, u32> = HashMap::from([(basepoint, 0)]);
    let mut queue = VecDeque::from([basepoint]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d == radius {
            continue;
        }
        for &l in &letters {
            let q = action.act_letter(p, l);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(q) {
                e.insert(d + 1);
                queue.push_back(q);
            }
        }
    }

    let mut vertices: Vec<RayPoint> = dist.keys().copied().collect();
    vertices.sort_unstable();
    let spheres = vertices.iter().map(|p| dist[p]).collect();
    let index: HashMap<RayPoint, usize> =
        vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (u, &p) in vertices.iter().enumerate() {
        for g in 0..gens {
            let q = action.act_letter(p, Letter::new(g, false));
            if let Some(&v) = index.get(&q) {
                edges.push(BallEdge {
                    source: u,
                    generator: g,
                    target: v,
                });
            }
        }
    }
    Ok(BallGraph::assemble(
        basepoint,
        radius,
        action.labels(),
        vertices,
        spheres,
        edges,
    ))
}

impl BallGraph {
    pub(crate) fn assemble(
        basepoint: RayPoint,
        radius: u32,
        labels: Vec<String>,
        vertices: Vec<RayPoint>,
        spheres: Vec<u32>,
        mut edges: Vec<BallEdge>,
    ) -> Self {
        let n = vertices.len();
        let gens = labels.len();
        let index = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        edges.sort_by(|a, b| {
            (a.source, &labels[a.generator], a.target).cmp(&(
                b.source,
                &labels[b.generator],
                b.target,
            ))
        });
        let mut out = vec![vec![None; gens]; n];
        let mut inc = vec![vec![None; gens]; n];
        let mut simple = vec![Vec::new(); n];
        for e in &edges {
            out[e.source][e.generator] = Some(e.target);
            inc[e.target][e.generator] = Some(e.source);
            if e.source != e.target {
                simple[e.source].push(e.target);
                simple[e.target].push(e.source);
            }
        }
        for adj in &mut simple {
            adj.sort_unstable();
            adj.dedup();
        }
        Self {
            basepoint,
            radius,
            labels,
            vertices,
            spheres,
            edges,
            index,
            out,
            inc,
            simple,
        }
    }

    pub fn basepoint(&self) -> RayPoint {
        self.basepoint
    }

    pub fn basepoint_index(&self) -> usize {
        self.index[&self.basepoint]
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> &[RayPoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[BallEdge] {
        &self.edges
    }

    pub fn spheres(&self) -> &[u32] {
        &self.spheres
    }

    pub fn sphere_of(&self, v: usize) -> u32 {
        self.spheres[v]
    }

    pub fn index_of(&self, p: RayPoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Neighbours in the simplified view: no loops, no parallel edges, no
    /// orientation.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.simple[v]
    }

    /// `v . letter` if that edge lies in the ball.
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        if letter.inverse {
            self.inc[v][letter.generator]
        } else {
            self.out[v][letter.generator]
        }
    }

    /// Follows `word` from `v` along ball edges; `None` once it leaves the ball.
    pub fn follow(&self, v: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(v, |u, &l| self.step(u, l))
    }

    /// BFS distances from `source` in the simplified view.
    pub fn distances_from(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.simple[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices within ball distance `limit` of `source` (including it).
    pub fn within(&self, source: usize, limit: u32) -> Vec<usize> {
        let mut seen = HashMap::from([(source, 0u32)]);
        let mut queue = VecDeque::from([source]);
        let mut found = vec![source];
        while let Some(u) = queue.pop_front() {
            let d = seen[&u];
            if d == limit {
                continue;
            }
            for &w in &self.simple[u] {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(d + 1);
                    found.push(w);
                    queue.push_back(w);
                }
            }
        }
        found.sort_unstable();
        found
    }

    pub fn graph_distance(&self, u: usize, v: usize) -> Option<BallDistance> {
        let value = self.distances_from(u)[v]?;
        let exact = self.spheres[u] + self.spheres[v] + value <= 2 * self.radius;
        Some(BallDistance { value, exact })
    }

    /// Same as [`graph_distance`](Self::graph_distance) but addressed by point;
    /// points outside the ball are unreachable.
    pub fn point_distance(&self, u: RayPoint, v: RayPoint) -> Option<BallDistance> {
        let (u, v) = (self.index_of(u)?, self.index_of(v)?);
        self.graph_distance(u, v)
    }
}
