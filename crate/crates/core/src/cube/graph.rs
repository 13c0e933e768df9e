use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CubeError;

/// Simple undirected graph with labelled vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored as `(min, max)`, sorted and deduplicated.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, CubeError> {
        let n = labels.len();
        let mut stored = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(CubeError::VertexOutOfRange {
                    vertex: u.max(v),
                    count: n,
                });
            }
            if u == v {
                return Err(CubeError::SelfLoop(u));
            }
            stored.push((u.min(v), u.max(v)));
        }
        stored.sort_unstable();
        stored.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &stored {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Self {
            labels,
            edges: stored,
            adjacency,
        })
    }

    /// Vertices labelled by their index.
    pub fn unlabelled(n: usize, edges: &[(usize, usize)]) -> Result<Self, CubeError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// All-pairs distances; errors on a disconnected graph.
    pub fn distance_matrix(&self) -> Result<Vec<Vec<u32>>, CubeError> {
        (0..self.vertex_count())
            .into_par_iter()
            .map(|s| {
                self.distances_from(s)
                    .into_iter()
                    .collect::<Option<Vec<u32>>>()
                    .ok_or(CubeError::Disconnected)
            })
            .collect()
    }

    /// The metric interval `I(u, v) = {x : d(u,x) + d(x,v) = d(u,v)}`.
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        let du = self.distances_from(u);
        let dv = self.distances_from(v);
        let Some(d) = du[v] else {
            return Vec::new();
        };
        (0..self.vertex_count())
            .filter(|&x| matches!((du[x], dv[x]), (Some(a), Some(b)) if a + b == d))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            vertices: self.labels.clone(),
            edges: self.edges.clone(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CubeError> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| CubeError::Json(e.to_string()))?;
        Self::new(doc.vertices, &doc.edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum MedianVerdict {
    Median,
    /// First triple in lexicographic order whose three intervals do not meet
    /// in exactly one vertex.
    Fails {
        triple: [usize; 3],
        medians: usize,
    },
}

/// Exhaustive triple check of the median axiom. Intervals are held as
/// bitsets, so memory grows as `n^3 / 8` bytes.
pub fn is_median(graph: &Graph) -> Result<MedianVerdict, CubeError> {
    let n = graph.vertex_count();
    let dist = graph.distance_matrix()?;
    let words = n.div_ceil(64);
    let intervals: Vec<Vec<u64>> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (u, v) = (k / n, k % n);
            let mut bits = vec![0u64; words];
            for x in 0..n {
                if dist[u][x] + dist[x][v] == dist[u][v] {
                    bits[x / 64] |= 1 << (x % 64);
                }
            }
            bits
        })
        .collect();
    let interval = |u: usize, v: usize| &intervals[u * n + v];
    let failure = (0..n).into_par_iter().find_map_first(|u| {
        for v in u..n {
            for w in v..n {
                let (a, b, c) = (interval(u, v), interval(v, w), interval(u, w));
                let medians: u32 = (0..words).map(|i| (a[i] & b[i] & c[i]).count_ones()).sum();
                if medians != 1 {
                    return Some(MedianVerdict::Fails {
                        triple: [u, v, w],
                        medians: medians as usize,
                    });
                }
            }
        }
        None
    });
    Ok(failure.unwrap_or(MedianVerdict::Median))
}

/// A graph that has passed [`is_median`], with its distance matrix.
#[derive(Debug, Clone)]
pub struct MedianGraph {
    graph: Graph,
    dist: Vec<Vec<u32>>,
}

impl MedianGraph {
    pub fn new(graph: Graph) -> Result<Self, CubeError> {
        if graph.vertex_count() == 0 {
            return Err(CubeError::Empty);
        }
        match is_median(&graph)? {
            MedianVerdict::Median => {}
            MedianVerdict::Fails { triple, medians } => {
                return Err(CubeError::NotMedian { triple, medians })
            }
        }
        let dist = graph.distance_matrix()?;
        Ok(Self { graph, dist })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }

    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&x| self.dist[u][x] + self.dist[x][v] == self.dist[u][v])
            .collect()
    }
}

pub fn path_graph(edges: usize) -> Graph {
    let e: Vec<(usize, usize)> = (0..edges).map(|i| (i, i + 1)).collect();
    Graph::unlabelled(edges + 1, &e).expect("path is well formed")
}

/// The `n`-cube; vertex labels are bit strings, most significant bit first.
pub fn cube_graph(n: u32) -> Graph {
    let count = 1usize << n;
    let mut edges = Vec::new();
    for v in 0..count {
        for b in 0..n {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let labels = (0..count)
        .map(|v| {
            (0..n)
                .rev()
                .map(|b| if v >> b & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect();
    Graph::new(labels, &edges).expect("cube is well formed")
}

pub fn tripod() -> Graph {
    spider(3, 1)
}

/// `legs` paths of `length` edges glued at a centre (vertex 0). Leg `a`
/// occupies vertices `1 + a*length ..= (a+1)*length`, centre side first.
pub fn spider(legs: usize, length: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..legs {
        let first = 1 + a * length;
        edges.push((0, first));
        for k in 1..length {
            edges.push((first + k - 1, first + k));
        }
    }
    Graph::unlabelled(1 + legs * length, &edges).expect("spider is well formed")
}

pub fn cycle_graph(n: usize) -> Graph {
    let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::unlabelled(n, &e).expect("cycle is well formed")
}
