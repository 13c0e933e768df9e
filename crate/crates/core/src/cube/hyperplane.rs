use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::graph::MedianGraph;
use super::CubeError;

/// An edge class of a median graph together with the two halfspaces it
/// bounds. `minus` is the halfspace holding vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub id: usize,
    pub edges: Vec<(usize, usize)>,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    /// Union of the endpoints of `edges`.
    pub support: Vec<usize>,
    #[serde(skip)]
    side: Vec<bool>,
}

impl Hyperplane {
    /// `true` when `v` lies in the plus halfspace.
    pub fn is_plus(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn halfspace(&self, sign: Sign) -> &[usize] {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    /// Which halfspace `vertices` lies in, if it lies in one.
    pub fn side_of(&self, vertices: &[usize]) -> Option<Sign> {
        let first = *vertices.first()?;
        let s = self.side[first];
        vertices.iter().all(|&v| self.side[v] == s).then_some(if s {
            Sign::Plus
        } else {
            Sign::Minus
        })
    }

    /// Does this hyperplane separate the supports of `k` and `l`?
    pub fn separates(&self, k: &Hyperplane, l: &Hyperplane) -> bool {
        matches!(
            (self.side_of(&k.support), self.side_of(&l.support)),
            (Some(a), Some(b)) if a != b
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Splits the edges of a median graph into parallelism classes.
pub fn hyperplanes(g: &MedianGraph) -> Vec<Hyperplane> {
    let n = g.vertex_count();
    let mut classes: BTreeMap<Vec<bool>, Vec<(usize, usize)>> = BTreeMap::new();
    let mut first_seen: Vec<Vec<bool>> = Vec::new();
    for &(u, v) in g.graph().edges() {
        // side[x] is true on the halfspace away from vertex 0
        let near_u: Vec<bool> = (0..n)
            .map(|x| g.distance(x, u) < g.distance(x, v))
            .collect();
        let key = if near_u[0] {
            near_u.iter().map(|b| !b).collect()
        } else {
            near_u
        };
        let entry = classes.entry(key.clone()).or_default();
        if entry.is_empty() {
            first_seen.push(key);
        }
        entry.push((u, v));
    }
    first_seen
        .into_iter()
        .enumerate()
        .map(|(id, side)| {
            let edges = classes.remove(&side).expect("class recorded");
            let mut support: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            support.sort_unstable();
            support.dedup();
            Hyperplane {
                id,
                plus: (0..n).filter(|&x| side[x]).collect(),
                minus: (0..n).filter(|&x| !side[x]).collect(),
                edges,
                support,
                side,
            }
        })
        .collect()
}

/// How two distinct hyperplanes sit: crossing, or `h^X ⊊ k^Y` for the one
/// pair of signs whose complementary quarter is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Cross,
    NestedPlusPlus,
    NestedPlusMinus,
    NestedMinusPlus,
    NestedMinusMinus,
}

impl Relation {
    fn nested(x: Sign, y: Sign) -> Self {
        match (x, y) {
            (Sign::Plus, Sign::Plus) => Relation::NestedPlusPlus,
            (Sign::Plus, Sign::Minus) => Relation::NestedPlusMinus,
            (Sign::Minus, Sign::Plus) => Relation::NestedMinusPlus,
            (Sign::Minus, Sign::Minus) => Relation::NestedMinusMinus,
        }
    }

    /// `(X, Y)` with `h^X ⊊ k^Y`, or `None` for crossing hyperplanes.
    pub fn containment(self) -> Option<(Sign, Sign)> {
        match self {
            Relation::Cross => None,
            Relation::NestedPlusPlus => Some((Sign::Plus, Sign::Plus)),
            Relation::NestedPlusMinus => Some((Sign::Plus, Sign::Minus)),
            Relation::NestedMinusPlus => Some((Sign::Minus, Sign::Plus)),
            Relation::NestedMinusMinus => Some((Sign::Minus, Sign::Minus)),
        }
    }
}

pub fn relation(h: &Hyperplane, k: &Hyperplane) -> Result<Relation, CubeError> {
    if h.side == k.side {
        return Err(CubeError::SameHyperplane(h.id, k.id));
    }
    let quarter_empty = |x: Sign, y: Sign| {
        !h.halfspace(x)
            .iter()
            .any(|&v| k.is_plus(v) == (y == Sign::Plus))
    };
    for x in [Sign::Plus, Sign::Minus] {
        for y in [Sign::Plus, Sign::Minus] {
            // h^x misses k^-y, so h^x sits inside k^y
            if quarter_empty(x, y.flip()) {
                return Ok(Relation::nested(x, y));
            }
        }
    }
    Ok(Relation::Cross)
}

pub fn crosses(h: &Hyperplane, k: &Hyperplane) -> bool {
    matches!(relation(h, k), Ok(Relation::Cross))
}

/// Unordered triples of pairwise disjoint hyperplanes, none separating the
/// other two. With `among`, only hyperplanes with those ids are considered.
pub fn facing_triples(hs: &[Hyperplane], among: Option<&[usize]>) -> Vec<[usize; 3]> {
    let pool: Vec<&Hyperplane> = match among {
        Some(ids) => hs.iter().filter(|h| ids.contains(&h.id)).collect(),
        None => hs.iter().collect(),
    };
    let m = pool.len();
    let mut triples: Vec<[usize; 3]> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let pool = &pool;
            (i + 1..m).flat_map(move |j| {
                (j + 1..m).filter_map(move |l| {
                    let (a, b, c) = (pool[i], pool[j], pool[l]);
                    let disjoint = !crosses(a, b) && !crosses(a, c) && !crosses(b, c);
                    let facing = !a.separates(b, c) && !b.separates(a, c) && !c.separates(a, b);
                    (disjoint && facing).then_some([a.id, b.id, c.id])
                })
            })
        })
        .collect();
    triples.sort_unstable();
    triples
}
