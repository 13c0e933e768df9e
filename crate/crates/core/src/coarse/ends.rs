use serde::Serialize;

use super::CoarseError;
use crate::dsu::DisjointSets;
use crate::schreier::BallGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndsRow {
    pub inner: u32,
    pub outer: u32,
    /// Components of `B(R) - B(r)` (simplified view) that reach `S(R)`.
    pub deep_components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndsProfile {
    pub radius: u32,
    pub rows: Vec<EndsRow>,
}

impl EndsProfile {
    pub fn count(&self, inner: u32) -> Option<usize> {
        self.rows
            .iter()
            .find(|row| row.inner == inner)
            .map(|row| row.deep_components)
    }
}

pub fn ends_profile(ball: &BallGraph, inner_radii: &[u32]) -> Result<EndsProfile, CoarseError> {
    let outer = ball.radius();
    let mut radii = inner_radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let mut rows = Vec::with_capacity(radii.len());
    for r in radii {
        if r + 1 >= outer {
            return Err(CoarseError::RadiusTooSmall {
                inner: r,
                needed: r + 1,
                radius: outer,
            });
        }
        rows.push(EndsRow {
            inner: r,
            outer,
            deep_components: deep_components(ball, r),
        });
    }
    Ok(EndsProfile {
        radius: outer,
        rows,
    })
}

fn deep_components(ball: &BallGraph, inner: u32) -> usize {
    let n = ball.vertex_count();
    let in_annulus = |v: usize| ball.sphere_of(v) > inner;
    let mut sets = DisjointSets::new(n);
    for v in (0..n).filter(|&v| in_annulus(v)) {
        for &w in ball.neighbors(v) {
            if in_annulus(w) {
                sets.union(v, w);
            }
        }
    }
    sets.classes()
        .into_iter()
        .filter(|class| in_annulus(class[0]))
        .filter(|class| class.iter().any(|&v| ball.sphere_of(v) == ball.radius()))
        .count()
}
