//! Narrowness witnesses at a fixed scale.
//!
//! Within the annulus `A = B(R) - B(r)` a witness is a mu-coarsely connected
//! vertex set that reaches both the inner band `r < d <= r + mu` and the
//! outer band `R - mu < d <= R`. Every witness contains a mu-chain from the
//! inner band to the outer band and any such chain is itself a witness, so
//! the largest family of pairwise disjoint witnesses is the largest family of
//! vertex-disjoint band-to-band paths in the mu-graph on `A`. By Menger's
//! theorem that equals the smallest vertex set meeting every such path; the
//! report carries one of those cuts as the maximality certificate.

use std::collections::VecDeque;

use serde::Serialize;

use super::components::{coarse_components, mu_adjacency};
use super::CoarseError;
use crate::action::RayPoint;
use crate::schreier::BallGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessMethod {
    /// Unit-capacity max-flow with a min vertex cut as certificate.
    MaxFlowMinCut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NarrownessReport {
    pub mu: u32,
    pub inner_radius: u32,
    pub outer_radius: u32,
    pub witness_count: usize,
    pub witnesses: Vec<Vec<RayPoint>>,
    /// Vertices meeting every band-to-band mu-chain; `|certificate| = witness_count`.
    pub certificate: Vec<RayPoint>,
    pub method: WitnessMethod,
    /// Number of mu-coarse components of the annulus, for context.
    pub annulus_components: usize,
}

struct FlowEdge {
    to: usize,
    cap: u32,
    original: u32,
}

struct FlowNetwork {
    edges: Vec<FlowEdge>,
    adjacency: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        self.adjacency[from].push(self.edges.len());
        self.edges.push(FlowEdge {
            to,
            cap,
            original: cap,
        });
        self.adjacency[to].push(self.edges.len());
        self.edges.push(FlowEdge {
            to: from,
            cap: 0,
            original: 0,
        });
    }

    /// Residual BFS; returns the predecessor edge of every reached node.
    fn residual_bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut pred = vec![None; self.adjacency.len()];
        let mut seen = vec![false; self.adjacency.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adjacency[u] {
                let to = self.edges[e].to;
                if self.edges[e].cap > 0 && !seen[to] {
                    seen[to] = true;
                    pred[to] = Some(e);
                    queue.push_back(to);
                }
            }
        }
        pred
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        loop {
            let pred = self.residual_bfs(source);
            if pred[sink].is_none() {
                return flow;
            }
            let mut node = sink;
            while node != source {
                let e = pred[node].expect("path edge");
                self.edges[e].cap -= 1;
                self.edges[e ^ 1].cap += 1;
                node = self.edges[e ^ 1].to;
            }
            flow += 1;
        }
    }

    fn carries_flow(&self, e: usize) -> bool {
        self.edges[e].original > 0 && self.edges[e].cap < self.edges[e].original
    }
}

pub fn narrowness_profile(
    ball: &BallGraph,
    mu: u32,
    inner_radius: u32,
) -> Result<NarrownessReport, CoarseError> {
    if mu == 0 {
        return Err(CoarseError::ZeroMu);
    }
    let outer = ball.radius();
    if inner_radius + mu >= outer {
        return Err(CoarseError::RadiusTooSmall {
            inner: inner_radius,
            needed: inner_radius + mu,
            radius: outer,
        });
    }
    let annulus: Vec<usize> = (0..ball.vertex_count())
        .filter(|&v| ball.sphere_of(v) > inner_radius)
        .collect();
    let near = mu_adjacency(ball, &annulus, mu);
    let in_inner = |v: usize| ball.sphere_of(v) <= inner_radius + mu;
    let in_outer = |v: usize| ball.sphere_of(v) + mu > outer;

    let m = annulus.len();
    let (source, sink) = (2 * m, 2 * m + 1);
    // only the split edges in_k -> out_k may be cut
    let unbounded = m as u32 + 1;
    let mut net = FlowNetwork::new(2 * m + 2);
    for (k, &v) in annulus.iter().enumerate() {
        net.add_edge(2 * k, 2 * k + 1, 1);
        if in_inner(v) {
            net.add_edge(source, 2 * k, unbounded);
        }
        if in_outer(v) {
            net.add_edge(2 * k + 1, sink, unbounded);
        }
        for &j in &near[k] {
            net.add_edge(2 * k + 1, 2 * j, unbounded);
        }
    }
    let witness_count = net.max_flow(source, sink);

    let mut witnesses = Vec::with_capacity(witness_count);
    for &e in &net.adjacency[source] {
        if !net.carries_flow(e) {
            continue;
        }
        let mut path = Vec::new();
        let mut node = net.edges[e].to;
        while node != sink {
            let k = node / 2;
            path.push(ball.vertices()[annulus[k]]);
            node = net.adjacency[2 * k + 1]
                .iter()
                .copied()
                .find(|&f| net.carries_flow(f))
                .map(|f| net.edges[f].to)
                .expect("unit flow leaves every vertex it enters");
        }
        path.sort_unstable();
        witnesses.push(path);
    }
    witnesses.sort();

    let reached = net.residual_bfs(source);
    let reachable = |node: usize| node == source || reached[node].is_some();
    let certificate: Vec<RayPoint> = (0..m)
        .filter(|&k| reachable(2 * k) && !reachable(2 * k + 1))
        .map(|k| ball.vertices()[annulus[k]])
        .collect();
    debug_assert_eq!(certificate.len(), witness_count);

    let annulus_components = coarse_components(ball, &annulus, mu)?.len();
    Ok(NarrownessReport {
        mu,
        inner_radius,
        outer_radius: outer,
        witness_count,
        witnesses,
        certificate,
        method: WitnessMethod::MaxFlowMinCut,
        annulus_components,
    })
}

impl NarrownessReport {
    /// Re-checks the report against the ball without reusing the flow: the
    /// witnesses are disjoint, mu-coarsely connected and touch both bands, and
    /// removing the certificate leaves no mu-chain between the bands.
    pub fn verify(&self, ball: &BallGraph) -> Result<(), String> {
        let (r, big_r, mu) = (self.inner_radius, self.outer_radius, self.mu);
        let locate = |p: &RayPoint| {
            ball.index_of(*p)
                .filter(|&v| ball.sphere_of(v) > r)
                .ok_or_else(|| format!("{p} is not in the annulus"))
        };
        let mut used = vec![false; ball.vertex_count()];
        for w in &self.witnesses {
            let members = w.iter().map(locate).collect::<Result<Vec<_>, _>>()?;
            for &v in &members {
                if std::mem::replace(&mut used[v], true) {
                    return Err(format!("witnesses overlap at {}", ball.vertices()[v]));
                }
            }
            if !members.iter().any(|&v| ball.sphere_of(v) <= r + mu) {
                return Err("witness misses the inner band".into());
            }
            if !members.iter().any(|&v| ball.sphere_of(v) + mu > big_r) {
                return Err("witness misses the outer band".into());
            }
            let pieces = coarse_components(ball, &members, mu).map_err(|e| e.to_string())?;
            if pieces.len() != 1 {
                return Err(format!("witness splits into {} pieces", pieces.len()));
            }
        }
        if self.witnesses.len() != self.witness_count {
            return Err("witness list length differs from witness_count".into());
        }
        if self.certificate.len() != self.witness_count {
            return Err("certificate size differs from witness_count".into());
        }
        let mut blocked = vec![false; ball.vertex_count()];
        for p in &self.certificate {
            blocked[locate(p)?] = true;
        }
        let open: Vec<usize> = (0..ball.vertex_count())
            .filter(|&v| ball.sphere_of(v) > r && !blocked[v])
            .collect();
        let mut seen = vec![false; ball.vertex_count()];
        let mut queue: VecDeque<usize> = open
            .iter()
            .copied()
            .filter(|&v| ball.sphere_of(v) <= r + mu)
            .collect();
        for &v in &queue {
            seen[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            if ball.sphere_of(v) + mu > big_r {
                return Err(format!(
                    "chain from the inner band reaches {} avoiding the certificate",
                    ball.vertices()[v]
                ));
            }
            for w in ball.within(v, mu) {
                if !seen[w] && !blocked[w] && ball.sphere_of(w) > r {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        Ok(())
    }
}
