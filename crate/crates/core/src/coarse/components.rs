use rayon::prelude::*;

use super::CoarseError;
use crate::dsu::DisjointSets;
use crate::schreier::BallGraph;

/// For each member of `set` (given by position in `set`), the positions of the
/// other members within ball distance `mu`. Distances are measured in the
/// whole ball, not in the subgraph induced by `set`.
pub(crate) fn mu_adjacency(ball: &BallGraph, set: &[usize], mu: u32) -> Vec<Vec<usize>> {
    let mut slot = vec![usize::MAX; ball.vertex_count()];
    for (k, &v) in set.iter().enumerate() {
        slot[v] = k;
    }
    set.par_iter()
        .enumerate()
        .map(|(k, &v)| {
            ball.within(v, mu)
                .into_iter()
                .map(|w| slot[w])
                .filter(|&j| j != usize::MAX && j != k)
                .collect()
        })
        .collect()
}

/// Partition of `vertex_set` into mu-coarsely connected pieces: the
/// transitive closure of "ball distance at most mu". Each piece is sorted and
/// pieces are ordered by their smallest vertex.
pub fn coarse_components(
    ball: &BallGraph,
    vertex_set: &[usize],
    mu: u32,
) -> Result<Vec<Vec<usize>>, CoarseError> {
    if mu == 0 {
        return Err(CoarseError::ZeroMu);
    }
    let mut set = vertex_set.to_vec();
    set.sort_unstable();
    set.dedup();
    let adjacency = mu_adjacency(ball, &set, mu);
    let mut sets = DisjointSets::new(set.len());
    for (k, near) in adjacency.iter().enumerate() {
        for &j in near {
            sets.union(k, j);
        }
    }
    Ok(sets
        .classes()
        .into_iter()
        .map(|class| class.into_iter().map(|k| set[k]).collect())
        .collect())
}
