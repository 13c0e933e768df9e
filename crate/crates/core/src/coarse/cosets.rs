//! Double cosets `H\G/H` for `H` the stabiliser of the basepoint, seen as
//! `H`-orbits on the vertices of a ball (vertex `x0.g` stands for `Hg`).
//!
//! `H` is approximated by the Schreier generators read off a BFS spanning
//! tree of the ball, cut off at a word-length budget `L`. Merges found this
//! way are always genuine; missing merges are possible, which is why classes
//! carry trust flags and a stability check against budget `L + 1`.

use std::collections::HashSet;

use serde::Serialize;

use super::CoarseError;
use crate::action::{Letter, MarkedAction, RayPoint, Word};
use crate::dsu::DisjointSets;
use crate::schreier::{build_ball, BallGraph};

struct SpanningTree {
    paths: Vec<Word>,
    /// `tree_out[v][g]`: the edge `v -g-> v.g` belongs to the tree.
    tree_out: Vec<Vec<bool>>,
}

fn spanning_tree(ball: &BallGraph) -> SpanningTree {
    let n = ball.vertex_count();
    let gens = ball.labels().len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (ball.sphere_of(v), v));
    let mut paths = vec![Word::empty(); n];
    let mut tree_out = vec![vec![false; gens]; n];
    for &v in &order {
        if ball.sphere_of(v) == 0 {
            continue;
        }
        // parent u with u.letter = v, smallest by (u, label, positive first)
        let parent = (0..gens)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .filter_map(|l| {
                let u = ball.step(v, l.inverted())?;
                (ball.sphere_of(u) + 1 == ball.sphere_of(v)).then_some((u, l))
            })
            .min_by(|(u1, l1), (u2, l2)| {
                (u1, &ball.labels()[l1.generator], l1.inverse).cmp(&(
                    u2,
                    &ball.labels()[l2.generator],
                    l2.inverse,
                ))
            })
            .expect("every vertex past the basepoint has a parent one sphere in");
        let (u, l) = parent;
        paths[v] = paths[u].concat(&Word(vec![l]));
        if l.inverse {
            tree_out[v][l.generator] = true;
        } else {
            tree_out[u][l.generator] = true;
        }
    }
    SpanningTree { paths, tree_out }
}

/// Schreier generators `path(u) s path(v)^-1` for the non-tree edges
/// `u -s-> v`, freely reduced and kept when of length at most `budget`.
/// Every word is checked to fix the basepoint inside the ball.
pub fn loop_words(ball: &BallGraph, budget: u32) -> Result<Vec<Word>, CoarseError> {
    if budget > 2 * ball.radius() {
        return Err(CoarseError::BudgetTooLarge {
            budget,
            radius: ball.radius(),
        });
    }
    let tree = spanning_tree(ball);
    let base = ball.basepoint_index();
    let mut seen = HashSet::new();
    let mut words = Vec::new();
    for e in ball.edges() {
        if tree.tree_out[e.source][e.generator] {
            continue;
        }
        let w = tree.paths[e.source]
            .concat(&Word(vec![Letter::new(e.generator, false)]))
            .concat(&tree.paths[e.target].inverse())
            .reduced();
        if w.is_empty() || w.len() > budget as usize || !seen.insert(w.clone()) {
            continue;
        }
        assert_eq!(
            ball.follow(base, &w),
            Some(base),
            "loop word must fix the basepoint"
        );
        words.push(w);
    }
    Ok(words)
}

fn orbit_sets(ball: &BallGraph, words: &[Word]) -> DisjointSets {
    let mut sets = DisjointSets::new(ball.vertex_count());
    for v in 0..ball.vertex_count() {
        for w in words {
            if let Some(u) = ball.follow(v, w) {
                sets.union(v, u);
            }
        }
    }
    sets
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetClass {
    pub members: Vec<RayPoint>,
    pub min_sphere: u32,
    /// Some member lies deep enough (`sphere + L <= R`) for every loop word
    /// to be applied to it without leaving the ball.
    pub trusted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCosetPartition {
    pub radius: u32,
    pub loop_word_budget: u32,
    pub loop_word_count: usize,
    pub classes: Vec<CosetClass>,
    /// The partition is unchanged at budget `L + 1`.
    pub stable: bool,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl DoubleCosetPartition {
    /// Index into `classes` of the class holding ball vertex `v`.
    pub fn class_of_vertex(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_of(&self, ball: &BallGraph, p: RayPoint) -> Option<&CosetClass> {
        ball.index_of(p).map(|v| &self.classes[self.class_of[v]])
    }

    pub fn trusted_class_count(&self) -> usize {
        self.classes.iter().filter(|c| c.trusted).count()
    }
}

fn class_index(ball: &BallGraph, sets: &mut DisjointSets) -> (Vec<Vec<usize>>, Vec<usize>) {
    let classes = sets.classes();
    let mut class_of = vec![0; ball.vertex_count()];
    for (k, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = k;
        }
    }
    (classes, class_of)
}

pub fn double_coset_orbits(
    ball: &BallGraph,
    budget: u32,
) -> Result<DoubleCosetPartition, CoarseError> {
    let radius = ball.radius();
    if budget > radius {
        return Err(CoarseError::BudgetTooLarge { budget, radius });
    }
    let words = loop_words(ball, budget)?;
    let (classes, class_of) = class_index(ball, &mut orbit_sets(ball, &words));
    let wider = loop_words(ball, (budget + 1).min(2 * radius))?;
    let (_, wider_class_of) = class_index(ball, &mut orbit_sets(ball, &wider));
    let stable = class_of == wider_class_of;

    let classes = classes
        .into_iter()
        .map(|members| CosetClass {
            min_sphere: members
                .iter()
                .map(|&v| ball.sphere_of(v))
                .min()
                .unwrap_or(0),
            trusted: members
                .iter()
                .any(|&v| ball.sphere_of(v) + budget <= radius),
            members: members.into_iter().map(|v| ball.vertices()[v]).collect(),
        })
        .collect();
    Ok(DoubleCosetPartition {
        radius,
        loop_word_budget: budget,
        loop_word_count: words.len(),
        classes,
        stable,
        class_of,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    BoundedSoFar,
    GrowingSoFar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommensuratorProbe {
    pub target: RayPoint,
    pub radius: u32,
    pub loop_word_budget: u32,
    /// `(r, |class of x0.g within B(r)|)` for `r = 1..=R`.
    pub image_sizes: Vec<(u32, usize)>,
    pub verdict: ProbeVerdict,
}

/// Probe at the basepoint `(1,1)`.
pub fn commensurator_probe(
    action: &MarkedAction,
    g: &Word,
    radius: u32,
    budget: u32,
) -> Result<CommensuratorProbe, CoarseError> {
    commensurator_probe_at(action, RayPoint::new(1, 1), g, radius, budget)
}

/// Tracks how much of the `H`-orbit of `x0.g` is visible inside `B(r)` as
/// `r` grows. The ball is built with `L` spare spheres so every counted
/// vertex can take every loop word. `GrowingSoFar` means the count still rose
/// over the last quarter of radii.
pub fn commensurator_probe_at(
    action: &MarkedAction,
    basepoint: RayPoint,
    g: &Word,
    radius: u32,
    budget: u32,
) -> Result<CommensuratorProbe, CoarseError> {
    let ball_radius = (radius + budget).max(g.len() as u32);
    let ball = build_ball(action, basepoint, ball_radius)?;
    let target = action.act(basepoint, g);
    let partition = double_coset_orbits(&ball, budget)?;
    let class = partition
        .class_of(&ball, target)
        .expect("x0.g lies within |g| of the basepoint");
    let count = |r: u32| {
        class
            .members
            .iter()
            .filter(|p| ball.index_of(**p).is_some_and(|v| ball.sphere_of(v) <= r))
            .count()
    };
    let image_sizes: Vec<(u32, usize)> = (1..=radius).map(|r| (r, count(r))).collect();
    let verdict = if count(radius) > count(radius - radius.div_ceil(4)) {
        ProbeVerdict::GrowingSoFar
    } else {
        ProbeVerdict::BoundedSoFar
    };
    Ok(CommensuratorProbe {
        target,
        radius,
        loop_word_budget: budget,
        image_sizes,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CosetDistance {
    /// Smallest basepoint distance found in the orbit of `x0.g`.
    Value(u32),
    /// Nothing at distance `<= D` was found; the value is `D + 1`.
    AtLeast(u32),
}

/// Smallest distance from the basepoint to the `H`-orbit of `x0.g`, i.e.
/// `d(H, gH)`, searched up to `D`. Words in `g` index the ball's labels.
pub fn coset_distance_probe(
    ball: &BallGraph,
    g: &Word,
    bound: u32,
    budget: u32,
) -> Result<CosetDistance, CoarseError> {
    let needed = bound + g.len() as u32;
    if ball.radius() <= needed {
        return Err(CoarseError::ProbeRadius {
            length: g.len(),
            bound,
            needed,
            radius: ball.radius(),
        });
    }
    let target = ball
        .follow(ball.basepoint_index(), g)
        .expect("|g| < radius keeps x0.g in the ball");
    let partition = double_coset_orbits(ball, budget)?;
    let best = partition.classes[partition.class_of_vertex(target)].min_sphere;
    Ok(if best <= bound {
        CosetDistance::Value(best)
    } else {
        CosetDistance::AtLeast(bound + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ray: u32, pos: u32) -> RayPoint {
        RayPoint::new(ray, pos)
    }

    fn ball_of(action: &MarkedAction, radius: u32) -> BallGraph {
        build_ball(action, p(1, 1), radius).unwrap()
    }

    #[test]
    fn radius_zero_has_no_loops() {
        let b = ball_of(&MarkedAction::houghton(2).unwrap(), 0);
        assert!(loop_words(&b, 0).unwrap().is_empty());
    }

    #[test]
    fn y2_beta_conjugates_appear() {
        let a = MarkedAction::houghton(2).unwrap();
        let b = ball_of(&a, 4);
        let words: Vec<String> = loop_words(&b, 8)
            .unwrap()
            .iter()
            .map(|w| a.format_word(w))
            .collect();
        // beta is a loop at (1,2), reached by g1^-1
        assert!(words.contains(&"g1^-1 beta g1".to_string()), "{words:?}");
        assert!(
            words.contains(&"g1^-1 g1^-1 beta g1 g1".to_string()),
            "{words:?}"
        );
    }

    #[test]
    fn loop_words_fix_the_basepoint_under_the_action() {
        for a in [
            MarkedAction::houghton(2).unwrap(),
            MarkedAction::houghton(3).unwrap(),
            MarkedAction::houghton_extended(3, &[1, 3, 2]).unwrap(),
        ] {
            let b = ball_of(&a, 5);
            for w in loop_words(&b, 10).unwrap() {
                assert_eq!(a.act(p(1, 1), &w), p(1, 1));
                assert!(a.word_element(&w).unwrap().apply(p(1, 1)).unwrap() == p(1, 1));
            }
        }
        let b = ball_of(&MarkedAction::houghton(2).unwrap(), 3);
        assert!(matches!(
            loop_words(&b, 7),
            Err(CoarseError::BudgetTooLarge { .. })
        ));
    }

    #[test]
    fn houghton_has_two_double_cosets() {
        for n in [2, 3, 4] {
            let b = ball_of(&MarkedAction::houghton(n).unwrap(), 12);
            let part = double_coset_orbits(&b, 6).unwrap();
            assert_eq!(part.classes.len(), 2, "n = {n}");
            assert_eq!(part.classes[0].members, vec![p(1, 1)]);
            assert!(part.classes.iter().all(|c| c.trusted));
            assert!(part.stable);
        }
    }

    #[test]
    fn trivial_action_has_one_class() {
        let b = ball_of(&MarkedAction::trivial(2).unwrap(), 3);
        assert_eq!(b.vertex_count(), 1);
        let part = double_coset_orbits(&b, 0).unwrap();
        assert_eq!(part.classes.len(), 1);
    }

    #[test]
    fn classes_are_closed_under_loop_words() {
        let a = MarkedAction::houghton_extended(3, &[1, 3, 2]).unwrap();
        let b = ball_of(&a, 8);
        for budget in 1..=4 {
            let part = double_coset_orbits(&b, budget).unwrap();
            for w in loop_words(&b, budget).unwrap() {
                for v in 0..b.vertex_count() {
                    if let Some(u) = b.follow(v, &w) {
                        assert_eq!(part.class_of_vertex(u), part.class_of_vertex(v));
                    }
                }
            }
        }
    }

    #[test]
    fn larger_budget_only_merges() {
        for a in [
            MarkedAction::houghton(3).unwrap(),
            MarkedAction::houghton_extended(3, &[1, 3, 2]).unwrap(),
        ] {
            let b = ball_of(&a, 8);
            for budget in 0..8 {
                let fine = double_coset_orbits(&b, budget).unwrap();
                let coarse = double_coset_orbits(&b, budget + 1).unwrap();
                for u in 0..b.vertex_count() {
                    for v in 0..b.vertex_count() {
                        if fine.class_of_vertex(u) == fine.class_of_vertex(v) {
                            assert_eq!(coarse.class_of_vertex(u), coarse.class_of_vertex(v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commensurator_probe_examples() {
        let a = MarkedAction::houghton(2).unwrap();
        let g1 = a.parse_word("g1").unwrap();
        let probe = commensurator_probe(&a, &g1, 16, 6).unwrap();
        assert_eq!(probe.verdict, ProbeVerdict::GrowingSoFar);
        // the orbit is everything but the basepoint: 2r vertices in B(r)
        assert!(probe.image_sizes.iter().all(|&(r, s)| s == 2 * r as usize));

        let id = commensurator_probe(&a, &Word::empty(), 16, 6).unwrap();
        assert_eq!(id.verdict, ProbeVerdict::BoundedSoFar);
        assert!(id.image_sizes.iter().all(|&(_, s)| s == 1));

        let beta = commensurator_probe(&a, &a.parse_word("beta").unwrap(), 16, 6).unwrap();
        assert_eq!(beta.target, p(2, 1));
        assert_eq!(beta.verdict, ProbeVerdict::GrowingSoFar);
    }

    /// Brute force: every word of length <= 4 that fixes the basepoint,
    /// applied to `x0.g`; the smallest sphere reached.
    fn orbit_min_sphere(a: &MarkedAction, b: &BallGraph, g: &Word) -> u32 {
        let target = a.act(p(1, 1), g);
        let letters: Vec<Letter> = (0..a.generators().len())
            .flat_map(|k| [Letter::new(k, false), Letter::new(k, true)])
            .collect();
        let mut frontier = vec![Word::empty()];
        let mut best = b.sphere_of(b.index_of(target).unwrap());
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let w = w.concat(&Word(vec![l]));
                    if a.act(p(1, 1), &w) == p(1, 1) {
                        let q = a.act(target, &w);
                        best = best.min(b.sphere_of(b.index_of(q).unwrap()));
                    }
                    next.push(w);
                }
            }
            frontier = next;
        }
        best
    }

    #[test]
    fn coset_distances() {
        let a = MarkedAction::houghton(2).unwrap();
        let b = ball_of(&a, 10);
        assert_eq!(
            coset_distance_probe(&b, &Word::empty(), 3, 6).unwrap(),
            CosetDistance::Value(0)
        );
        let g = a.parse_word("g1 g1").unwrap();
        let expected = orbit_min_sphere(&a, &b, &g);
        assert_eq!(expected, 1);
        assert_eq!(
            coset_distance_probe(&b, &g, 5, 6).unwrap(),
            CosetDistance::Value(expected)
        );
        for label in ["g1", "beta", "g1^-1"] {
            let g = a.parse_word(label).unwrap();
            match coset_distance_probe(&b, &g, 5, 6).unwrap() {
                CosetDistance::Value(d) => assert!(d <= 1),
                other => panic!("{other:?}"),
            }
        }
        assert!(matches!(
            coset_distance_probe(&b, &g, 8, 6),
            Err(CoarseError::ProbeRadius { .. })
        ));
    }
}
