//! Finite windows onto a median graph with a `Z`-action.
//!
//! The action is given by one partial map `sigma` on the window. Queries
//! about powers of `sigma` report whether the answer was fully visible in the
//! window rather than extrapolating past its edge.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::graph::{Graph, MedianGraph};
use super::hyperplane::{hyperplanes, relation, Hyperplane, Relation, Sign};
use super::CubeError;

#[derive(Debug, Clone)]
pub struct WindowedShiftComplex {
    graph: MedianGraph,
    sigma: Vec<Option<usize>>,
    sigma_inv: Vec<Option<usize>>,
    interior: Vec<bool>,
    hyperplanes: Vec<Hyperplane>,
    edge_class: HashMap<(usize, usize), usize>,
    /// `forward[h] = (k, s)`: `sigma(h) = k` and `sigma(h+) = k^s`.
    forward: Vec<Option<(usize, Sign)>>,
    backward: Vec<Option<(usize, Sign)>>,
    period: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SkewerVerdict {
    /// `sigma^n h^d ⊊ h^d`.
    Skewers {
        power: u32,
        direction: Sign,
    },
    StabilisesPower {
        power: u32,
    },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricDifference {
    pub members: Vec<usize>,
    /// Both hyperplanes and every hyperplane crossing either lie inside the
    /// interior.
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub value: i64,
    /// Every hyperplane counted, and both `h` and its image, lie inside the
    /// interior. When false the value is a window-limited estimate.
    pub verified: bool,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl WindowedShiftComplex {
    pub fn new(
        graph: MedianGraph,
        sigma: Vec<Option<usize>>,
        period: Option<String>,
    ) -> Result<Self, CubeError> {
        let n = graph.vertex_count();
        if sigma.len() != n {
            return Err(CubeError::SigmaLength {
                got: sigma.len(),
                expected: n,
            });
        }
        let mut sigma_inv = vec![None; n];
        for (v, image) in sigma.iter().enumerate() {
            if let Some(w) = *image {
                if w >= n {
                    return Err(CubeError::VertexOutOfRange {
                        vertex: w,
                        count: n,
                    });
                }
                if sigma_inv[w].replace(v).is_some() {
                    return Err(CubeError::ShiftNotInjective(w));
                }
            }
        }
        let interior: Vec<bool> = (0..n)
            .map(|v| sigma[v].is_some() && sigma_inv[v].is_some())
            .collect();
        for &(u, v) in graph.graph().edges() {
            if interior[u] && interior[v] {
                let (a, b) = (sigma[u].unwrap_or(u), sigma[v].unwrap_or(v));
                if !graph.graph().has_edge(a, b) {
                    return Err(CubeError::ShiftBreaksAdjacency(u, v));
                }
            }
        }
        let hyperplanes = hyperplanes(&graph);
        let mut edge_class = HashMap::new();
        for h in &hyperplanes {
            for &(u, v) in &h.edges {
                edge_class.insert(edge_key(u, v), h.id);
            }
        }
        let transport = |map: &[Option<usize>]| -> Result<Vec<Option<(usize, Sign)>>, CubeError> {
            hyperplanes
                .iter()
                .map(|h| {
                    let mut image: Option<(usize, Sign)> = None;
                    for &(u, v) in &h.edges {
                        if !(interior[u] && interior[v]) {
                            continue;
                        }
                        let (Some(a), Some(b)) = (map[u], map[v]) else {
                            continue;
                        };
                        let k = edge_class[&edge_key(a, b)];
                        let plus_end = if h.is_plus(u) { a } else { b };
                        let s = if hyperplanes[k].is_plus(plus_end) {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        };
                        match image {
                            None => image = Some((k, s)),
                            Some(prev) if prev == (k, s) => {}
                            Some(_) => return Err(CubeError::ShiftSplitsHyperplane(h.id)),
                        }
                    }
                    Ok(image)
                })
                .collect()
        };
        let forward = transport(&sigma)?;
        let backward = transport(&sigma_inv)?;
        Ok(Self {
            graph,
            sigma,
            sigma_inv,
            interior,
            hyperplanes,
            edge_class,
            forward,
            backward,
            period,
        })
    }

    pub fn graph(&self) -> &MedianGraph {
        &self.graph
    }

    pub fn sigma(&self) -> &[Option<usize>] {
        &self.sigma
    }

    pub fn sigma_inverse(&self) -> &[Option<usize>] {
        &self.sigma_inv
    }

    pub fn period(&self) -> Option<&str> {
        self.period.as_deref()
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, id: usize) -> Result<&Hyperplane, CubeError> {
        self.hyperplanes
            .get(id)
            .ok_or(CubeError::UnknownHyperplane(id))
    }

    /// The hyperplane dual to the edge between the vertices labelled `u`, `v`.
    pub fn hyperplane_at(&self, u: &str, v: &str) -> Result<usize, CubeError> {
        let labels = self.graph.graph().labels();
        let find = |l: &str| labels.iter().position(|x| x == l);
        let unknown = || CubeError::UnknownEdge(format!("{u}~{v}"));
        let (a, b) = (find(u).ok_or_else(unknown)?, find(v).ok_or_else(unknown)?);
        self.edge_class
            .get(&edge_key(a, b))
            .copied()
            .ok_or_else(unknown)
    }

    /// Every vertex of the support lies in the interior.
    pub fn is_resolved(&self, h: usize) -> bool {
        self.hyperplanes[h]
            .support
            .iter()
            .all(|&v| self.interior[v])
    }

    /// `sigma^n(h)` and the halfspace of it that `h+` is carried to.
    pub fn power(&self, h: usize, n: i64) -> Option<(usize, Sign)> {
        let table = if n >= 0 {
            &self.forward
        } else {
            &self.backward
        };
        let mut current = (h, Sign::Plus);
        for _ in 0..n.unsigned_abs() {
            let (k, s) = table[current.0]?;
            current = (k, if current.1 == Sign::Plus { s } else { s.flip() });
        }
        Some(current)
    }

    /// Some edge of `h` has both endpoints in the interior, so `sigma(h)` and
    /// `sigma^-1(h)` can be read off.
    pub fn meets_interior(&self, h: usize) -> bool {
        self.hyperplanes[h]
            .edges
            .iter()
            .any(|&(u, v)| self.interior[u] && self.interior[v])
    }

    /// Looks for the first `n <= max_power` with `sigma^n h = h` or with a
    /// strict halfspace containment `sigma^n h^d ⊊ h^d`. Containments are only
    /// read when both hyperplanes are resolved; stabilisation needs just one
    /// edge of `h` carried back into `h`.
    pub fn skewer_check(&self, h: usize, max_power: u32) -> Result<SkewerVerdict, CubeError> {
        if max_power == 0 {
            return Err(CubeError::ZeroPower);
        }
        self.hyperplane(h)?;
        if !self.meets_interior(h) {
            return Err(CubeError::NotResolved(h));
        }
        let base = &self.hyperplanes[h];
        for n in 1..=max_power {
            let Some((k, s)) = self.power(h, n as i64) else {
                return Ok(SkewerVerdict::Inconclusive);
            };
            if k == h {
                return Ok(SkewerVerdict::StabilisesPower { power: n });
            }
            if !self.is_resolved(h) || !self.is_resolved(k) {
                return Ok(SkewerVerdict::Inconclusive);
            }
            match relation(&self.hyperplanes[k], base)?.containment() {
                Some((x, Sign::Plus)) if x == s => {
                    return Ok(SkewerVerdict::Skewers {
                        power: n,
                        direction: Sign::Plus,
                    })
                }
                Some((x, Sign::Minus)) if x == s.flip() => {
                    return Ok(SkewerVerdict::Skewers {
                        power: n,
                        direction: Sign::Minus,
                    })
                }
                _ => {}
            }
        }
        Ok(SkewerVerdict::Inconclusive)
    }

    /// `H(h)`: hyperplanes crossing `h`, not counting `h`.
    pub fn crossing_set(&self, h: usize) -> Result<BTreeSet<usize>, CubeError> {
        let base = self.hyperplane(h)?;
        Ok(self
            .hyperplanes
            .iter()
            .filter(|k| k.id != h && relation(base, k) == Ok(Relation::Cross))
            .map(|k| k.id)
            .collect())
    }

    /// `H(h) Δ H(sigma^p h)`.
    pub fn hyperplane_symdiff(&self, h: usize, p: i64) -> Result<SymmetricDifference, CubeError> {
        self.hyperplane(h)?;
        let (k, _) = self.power(h, p).ok_or(CubeError::ImageOutsideWindow {
            hyperplane: h,
            power: p,
        })?;
        let (a, b) = (self.crossing_set(h)?, self.crossing_set(k)?);
        let members: Vec<usize> = a.symmetric_difference(&b).copied().collect();
        let verified = self.is_resolved(h)
            && self.is_resolved(k)
            && a.iter().chain(&b).all(|&x| self.is_resolved(x));
        Ok(SymmetricDifference { members, verified })
    }

    /// Least `|n1 - n2|` with `k` separating `sigma^n1 h` from `sigma^n2 h`,
    /// over `|n1|, |n2| <= max_power`; 0 when `k` separates no pair.
    pub fn separation_index(&self, k: usize, h: usize, max_power: u32) -> Result<u32, CubeError> {
        let wall = self.hyperplane(k)?;
        self.hyperplane(h)?;
        let bound = max_power as i64;
        let mut images = Vec::new();
        for n in -bound..=bound {
            match self.power(h, n) {
                Some((img, _)) if self.is_resolved(img) => images.push((n, img)),
                _ => {
                    return Err(CubeError::ImageOutsideWindow {
                        hyperplane: h,
                        power: n,
                    })
                }
            }
        }
        let mut best: Option<u32> = None;
        for (i, &(n1, a)) in images.iter().enumerate() {
            for &(n2, b) in &images[i + 1..] {
                if wall.separates(&self.hyperplanes[a], &self.hyperplanes[b]) {
                    let gap = (n2 - n1).unsigned_abs() as u32;
                    best = Some(best.map_or(gap, |g| g.min(gap)));
                }
            }
        }
        Ok(best.unwrap_or(0))
    }

    /// `tr(g) = |M+ - g^-1 M+| - |g^-1 M+ - M+|` for `g = sigma^p`, where
    /// `M+` is the set of hyperplanes whose support lies in `h+`.
    pub fn transfer(&self, h: usize, p: i64) -> Result<Transfer, CubeError> {
        self.hyperplane(h)?;
        let (j, s) = self.power(h, -p).ok_or(CubeError::ImageOutsideWindow {
            hyperplane: h,
            power: -p,
        })?;
        let base = &self.hyperplanes[h];
        let moved = &self.hyperplanes[j];
        let in_base = |k: &Hyperplane| base.side_of(&k.support) == Some(Sign::Plus);
        let in_moved = |k: &Hyperplane| moved.side_of(&k.support) == Some(s);
        let lost: Vec<usize> = self
            .hyperplanes
            .iter()
            .filter(|k| in_base(k) && !in_moved(k))
            .map(|k| k.id)
            .collect();
        let gained: Vec<usize> = self
            .hyperplanes
            .iter()
            .filter(|k| in_moved(k) && !in_base(k))
            .map(|k| k.id)
            .collect();
        let verified = self.is_resolved(h)
            && self.is_resolved(j)
            && lost.iter().chain(&gained).all(|&k| self.is_resolved(k));
        Ok(Transfer {
            value: lost.len() as i64 - gained.len() as i64,
            verified,
        })
    }
}

fn grid_window(points: Vec<(i64, i64)>, shift: (i64, i64), period: String) -> WindowedShiftComplex {
    let index: HashMap<(i64, i64), usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        for q in [(x + 1, y), (x, y + 1)] {
            if let Some(&j) = index.get(&q) {
                edges.push((i, j));
            }
        }
    }
    let labels = points.iter().map(|(x, y)| format!("({x},{y})")).collect();
    let graph = Graph::new(labels, &edges).expect("grid edges are in range");
    let sigma = points
        .iter()
        .map(|&(x, y)| index.get(&(x + shift.0, y + shift.1)).copied())
        .collect();
    let median = MedianGraph::new(graph).expect("window is a median graph");
    WindowedShiftComplex::new(median, sigma, Some(period)).expect("shift is consistent")
}

/// Vertices `-n..=n` of the integer line, `sigma(x) = x + 1`.
pub fn line_window(n: u32) -> WindowedShiftComplex {
    let n = n as i64;
    let count = (2 * n + 1) as usize;
    let edges: Vec<(usize, usize)> = (1..count).map(|i| (i - 1, i)).collect();
    let labels = (-n..=n).map(|x| x.to_string()).collect();
    let graph = Graph::new(labels, &edges).expect("line is well formed");
    let sigma = (0..count)
        .map(|i| (i + 1 < count).then_some(i + 1))
        .collect();
    let median = MedianGraph::new(graph).expect("a path is median");
    WindowedShiftComplex::new(median, sigma, Some("translation by 1".into()))
        .expect("shift is consistent")
}

/// The unit squares along the diagonal: `(x, y)` with `-1 <= x - y <= 2`
/// and `|x|, |y| <= n`, `sigma(x, y) = (x + 1, y + 1)`.
pub fn staircase_window(n: u32) -> WindowedShiftComplex {
    let n = n as i64;
    let mut points = Vec::new();
    for x in -n..=n {
        for y in -n..=n {
            if (-1..=2).contains(&(x - y)) {
                points.push((x, y));
            }
        }
    }
    grid_window(points, (1, 1), "diagonal translation by (1,1)".into())
}

/// Two rails `(x, 0)`, `(x, 1)` for `|x| <= n` joined by rungs,
/// `sigma(x, j) = (x + shift, j)`.
pub fn ladder_window(n: u32, shift: u32) -> WindowedShiftComplex {
    let n = n as i64;
    let points = (-n..=n).flat_map(|x| [(x, 0), (x, 1)]).collect();
    grid_window(points, (shift as i64, 0), format!("translation by {shift}"))
}
