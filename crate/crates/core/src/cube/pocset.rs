//! Poc-sets and their dual cube complexes.
//!
//! Halfspace `2w` is the wall's `A`, halfspace `2w + 1` its complement `A*`.

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use super::CubeError;

/// Largest wall count the dual enumeration accepts.
pub const MAX_DUAL_WALLS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PocSet {
    walls: usize,
    /// `order[a][b]` is `a <= b`.
    order: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PocSetJson {
    walls: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relations: Option<Vec<(usize, usize)>>,
}

pub fn complement(a: usize) -> usize {
    a ^ 1
}

impl PocSet {
    /// Validates an explicit order matrix over the `2 * walls` halfspaces.
    pub fn from_matrix(walls: usize, order: Vec<Vec<bool>>) -> Result<Self, CubeError> {
        let m = 2 * walls;
        if order.len() != m || order.iter().any(|row| row.len() != m) {
            return Err(CubeError::PocSetAxiom(format!(
                "order matrix must be {m} x {m}"
            )));
        }
        for a in 0..m {
            if !order[a][a] {
                return Err(CubeError::PocSetAxiom(format!("{a} <= {a} missing")));
            }
            if order[a][complement(a)] {
                return Err(CubeError::PocSetAxiom(format!(
                    "{a} <= {} (a halfspace below its complement)",
                    complement(a)
                )));
            }
            for b in 0..m {
                if a != b && order[a][b] && order[b][a] {
                    return Err(CubeError::PocSetAxiom(format!(
                        "{a} and {b} are mutually below each other"
                    )));
                }
                if order[a][b] != order[complement(b)][complement(a)] {
                    return Err(CubeError::PocSetAxiom(format!(
                        "{a} <= {b} does not match {} <= {}",
                        complement(b),
                        complement(a)
                    )));
                }
                for c in 0..m {
                    if order[a][b] && order[b][c] && !order[a][c] {
                        return Err(CubeError::PocSetAxiom(format!(
                            "{a} <= {b} <= {c} but not {a} <= {c}"
                        )));
                    }
                }
            }
        }
        Ok(Self { walls, order })
    }

    /// Closes the given `a <= b` pairs under reflexivity, complementation and
    /// transitivity, then validates.
    pub fn from_relations(walls: usize, relations: &[(usize, usize)]) -> Result<Self, CubeError> {
        let m = 2 * walls;
        let mut order = vec![vec![false; m]; m];
        for (a, row) in order.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= m || b >= m {
                return Err(CubeError::PocSetAxiom(format!(
                    "halfspace {} out of range",
                    a.max(b)
                )));
            }
            order[a][b] = true;
            order[complement(b)][complement(a)] = true;
        }
        for k in 0..m {
            let through = order[k].clone();
            for row in order.iter_mut().filter(|row| row[k]) {
                for (cell, &kb) in row.iter_mut().zip(&through) {
                    *cell |= kb;
                }
            }
        }
        Self::from_matrix(walls, order)
    }

    /// `k` walls with no relations between them.
    pub fn crossing(k: usize) -> Self {
        Self::from_relations(k, &[]).expect("free poc-set")
    }

    /// `A_0 <= A_1 <= ... <= A_(k-1)`.
    pub fn chain(k: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..k).map(|w| (2 * (w - 1), 2 * w)).collect();
        Self::from_relations(k, &rel).expect("chain poc-set")
    }

    pub fn walls(&self) -> usize {
        self.walls
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    /// Walls are transverse when no halfspace of one is comparable with a
    /// halfspace of the other.
    pub fn transverse(&self, v: usize, w: usize) -> bool {
        v != w
            && [2 * v, 2 * v + 1].iter().all(|&a| {
                [2 * w, 2 * w + 1]
                    .iter()
                    .all(|&b| !self.le(a, b) && !self.le(b, a))
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PocSetJson {
            walls: self.walls,
            order: Some(self.order.clone()),
            relations: None,
        })
        .expect("poc-set serializes")
    }

    /// Accepts either an `order` matrix or a `relations` list of `[a, b]`
    /// pairs meaning `a <= b`.
    pub fn from_json(text: &str) -> Result<Self, CubeError> {
        let doc: PocSetJson =
            serde_json::from_str(text).map_err(|e| CubeError::Json(e.to_string()))?;
        match (doc.order, doc.relations) {
            (Some(order), None) => Self::from_matrix(doc.walls, order),
            (None, relations) => Self::from_relations(doc.walls, &relations.unwrap_or_default()),
            (Some(_), Some(_)) => Err(CubeError::Json(
                "give either `order` or `relations`, not both".into(),
            )),
        }
    }
}

/// Consistent orientations and the graph joining those that differ on one
/// wall. Bit `w` of an orientation is set when `A_w` (rather than `A_w*`)
/// is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualComplex {
    pub graph: Graph,
    pub orientations: Vec<u32>,
    pub connected: bool,
}

pub fn dual_cube_complex(p: &PocSet) -> Result<DualComplex, CubeError> {
    let walls = p.walls();
    if walls > MAX_DUAL_WALLS {
        return Err(CubeError::TooManyWalls {
            walls,
            max: MAX_DUAL_WALLS,
        });
    }
    let chosen = |mask: u32, w: usize| if mask >> w & 1 == 1 { 2 * w } else { 2 * w + 1 };
    // an orientation is inconsistent when X <= Y* with X and Y both chosen
    let clashes = |x: usize, y: usize| p.le(x, complement(y));

    let mut orientations = Vec::new();
    let mut stack = vec![(0usize, 0u32)];
    while let Some((w, mask)) = stack.pop() {
        if w == walls {
            orientations.push(mask);
            continue;
        }
        for bit in [0u32, 1] {
            let next = mask | bit << w;
            let x = chosen(next, w);
            if (0..w).all(|v| {
                let y = chosen(next, v);
                !clashes(x, y) && !clashes(y, x)
            }) {
                stack.push((w + 1, next));
            }
        }
    }
    orientations.sort_unstable();

    let mut edges = Vec::new();
    for (i, &o) in orientations.iter().enumerate() {
        for w in 0..walls {
            let other = o ^ (1 << w);
            if other > o {
                if let Ok(j) = orientations.binary_search(&other) {
                    edges.push((i, j));
                }
            }
        }
    }
    let labels = orientations
        .iter()
        .map(|&o| {
            (0..walls)
                .map(|w| if o >> w & 1 == 1 { '+' } else { '-' })
                .collect()
        })
        .collect();
    let graph = Graph::new(labels, &edges)?;
    let connected = graph.is_connected();
    Ok(DualComplex {
        graph,
        orientations,
        connected,
    })
}
