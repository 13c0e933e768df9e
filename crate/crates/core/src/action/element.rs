//! Exact translations at infinity of `X_n = {1..n} x N`, optionally composed
//! with a permutation of the rays.
//!
//! An element is stored as `(sigma, translation, correction)`. Away from the
//! finite correction domain a point `(i, m)` goes to `(sigma(i), m + t[sigma(i)])`;
//! inside the domain the correction table wins. The table is kept minimal
//! (no entry agrees with the eventual rule), so two elements are equal as
//! functions exactly when their representations are equal.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::point::RayPoint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementError {
    #[error("ray count must be at least 2, got {0}")]
    RayCount(u32),
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorIndex { index: u32, max: u32 },
    #[error("sigma is not a permutation of 1..={0}")]
    NotAPermutation(u32),
    #[error("sigma must fix ray 1, but sigma(1) = {0}")]
    SigmaMovesFirstRay(u32),
    #[error("translation vector has length {got}, expected {expected}")]
    TranslationLength { got: usize, expected: usize },
    #[error("translation entries sum to {0}, a bijection needs 0")]
    TranslationSum(i64),
    #[error("point {point} is not in X_{ray_count}")]
    PointOutOfRange { point: RayPoint, ray_count: u32 },
    #[error("correction lists {0} twice")]
    DuplicateCorrection(RayPoint),
    #[error("eventual rule sends {0} to a non-positive position")]
    NonPositiveImage(RayPoint),
    #[error("map is not injective: {first} and {second} both go to {image}")]
    NotInjective {
        first: RayPoint,
        second: RayPoint,
        image: RayPoint,
    },
    #[error("map is not surjective: {0} has no preimage")]
    NotSurjective(RayPoint),
    #[error("ray counts differ: {left} vs {right}")]
    RayCountMismatch { left: u32, right: u32 },
    #[error("cannot parse element: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HoughtonElement {
    ray_count: u32,
    /// `sigma[i - 1]` is the ray that ray `i` is eventually sent to.
    sigma: Vec<u32>,
    /// Indexed by target ray.
    translation: Vec<i64>,
    correction: BTreeMap<RayPoint, RayPoint>,
}

impl HoughtonElement {
    /// Builds and validates an element. Redundant correction entries are
    /// dropped; anything that is not a bijection of `X_n` is rejected.
    pub fn new(
        ray_count: u32,
        sigma: Vec<u32>,
        translation: Vec<i64>,
        correction: impl IntoIterator<Item = (RayPoint, RayPoint)>,
    ) -> Result<Self, ElementError> {
        if ray_count < 2 {
            return Err(ElementError::RayCount(ray_count));
        }
        check_permutation(ray_count, &sigma)?;
        if translation.len() != ray_count as usize {
            return Err(ElementError::TranslationLength {
                got: translation.len(),
                expected: ray_count as usize,
            });
        }
        let sum: i64 = translation.iter().sum();
        if sum != 0 {
            return Err(ElementError::TranslationSum(sum));
        }
        let mut table = BTreeMap::new();
        for (from, to) in correction {
            for p in [from, to] {
                if !p.is_valid_for(ray_count) {
                    return Err(ElementError::PointOutOfRange {
                        point: p,
                        ray_count,
                    });
                }
            }
            if table.insert(from, to).is_some() {
                return Err(ElementError::DuplicateCorrection(from));
            }
        }
        let mut element = Self {
            ray_count,
            sigma,
            translation,
            correction: table,
        };
        element.minimize();
        element.check_bijective()?;
        Ok(element)
    }

    pub fn identity(ray_count: u32) -> Result<Self, ElementError> {
        Self::new(
            ray_count,
            (1..=ray_count).collect(),
            vec![0; ray_count as usize],
            [],
        )
    }

    /// `g_i`: shifts the line `{1} x N  u  {i+1} x N` one step towards ray `i + 1`.
    pub fn houghton_generator(i: u32, ray_count: u32) -> Result<Self, ElementError> {
        if ray_count < 2 {
            return Err(ElementError::RayCount(ray_count));
        }
        if i < 1 || i >= ray_count {
            return Err(ElementError::GeneratorIndex {
                index: i,
                max: ray_count - 1,
            });
        }
        let mut translation = vec![0; ray_count as usize];
        translation[0] = -1;
        translation[i as usize] = 1;
        Self::new(
            ray_count,
            (1..=ray_count).collect(),
            translation,
            [(RayPoint::new(1, 1), RayPoint::new(i + 1, 1))],
        )
    }

    /// The transposition of `(1,1)` and `(2,1)`.
    pub fn beta(ray_count: u32) -> Result<Self, ElementError> {
        Self::new(
            ray_count,
            (1..=ray_count).collect(),
            vec![0; ray_count as usize],
            [
                (RayPoint::new(1, 1), RayPoint::new(2, 1)),
                (RayPoint::new(2, 1), RayPoint::new(1, 1)),
            ],
        )
    }

    /// `(i, m) -> (sigma(i), m)` for a ray permutation fixing ray 1.
    /// `sigma[i - 1]` is the image of ray `i`.
    pub fn alpha(sigma: &[u32]) -> Result<Self, ElementError> {
        let ray_count = sigma.len() as u32;
        if ray_count < 2 {
            return Err(ElementError::RayCount(ray_count));
        }
        check_permutation(ray_count, sigma)?;
        if sigma[0] != 1 {
            return Err(ElementError::SigmaMovesFirstRay(sigma[0]));
        }
        Self::new(ray_count, sigma.to_vec(), vec![0; sigma.len()], [])
    }

    pub fn ray_count(&self) -> u32 {
        self.ray_count
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    /// Eventual translation, indexed by target ray (entry `j - 1` for ray `j`).
    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn correction(&self) -> &BTreeMap<RayPoint, RayPoint> {
        &self.correction
    }

    pub fn is_identity(&self) -> bool {
        self.correction.is_empty()
            && self.translation.iter().all(|&t| t == 0)
            && self
                .sigma
                .iter()
                .enumerate()
                .all(|(i, &s)| s as usize == i + 1)
    }

    pub fn apply(&self, p: RayPoint) -> Result<RayPoint, ElementError> {
        if !p.is_valid_for(self.ray_count) {
            return Err(ElementError::PointOutOfRange {
                point: p,
                ray_count: self.ray_count,
            });
        }
        match self.correction.get(&p) {
            Some(&q) => Ok(q),
            None => self.eventual(p).ok_or(ElementError::NonPositiveImage(p)),
        }
    }

    /// Evaluation on a point already known to be valid.
    pub(crate) fn eval(&self, p: RayPoint) -> RayPoint {
        match self.correction.get(&p) {
            Some(&q) => q,
            None => self
                .eventual(p)
                .expect("validated elements map every point to a positive position"),
        }
    }

    fn eventual(&self, p: RayPoint) -> Option<RayPoint> {
        let target = self.sigma[p.ray as usize - 1];
        let pos = i64::from(p.pos) + self.translation[target as usize - 1];
        (pos >= 1).then(|| RayPoint::new(target, pos as u32))
    }

    /// `(self o other)(p) = self(other(p))`.
    pub fn compose(&self, other: &Self) -> Result<Self, ElementError> {
        if self.ray_count != other.ray_count {
            return Err(ElementError::RayCountMismatch {
                left: self.ray_count,
                right: other.ray_count,
            });
        }
        let n = self.ray_count as usize;
        let sigma: Vec<u32> = other
            .sigma
            .iter()
            .map(|&j| self.sigma[j as usize - 1])
            .collect();
        let inv_self = invert_permutation(&self.sigma);
        let translation: Vec<i64> = (0..n)
            .map(|k| self.translation[k] + other.translation[inv_self[k] as usize - 1])
            .collect();
        // Beyond this bound `other` acts eventually and lands where `self` does too.
        let bound = other
            .max_key_pos()
            .max(self.max_key_pos() + other.max_shift() as u32);
        let mut correction = Vec::new();
        for p in box_points(self.ray_count, bound) {
            correction.push((p, self.eval(other.eval(p))));
        }
        Self::new(self.ray_count, sigma, translation, correction)
    }

    pub fn invert(&self) -> Self {
        let sigma = invert_permutation(&self.sigma);
        let translation: Vec<i64> = (0..self.ray_count as usize)
            .map(|i| -self.translation[self.sigma[i] as usize - 1])
            .collect();
        let correction: Vec<_> = box_points(self.ray_count, self.domain_check_bound())
            .into_iter()
            .map(|p| (self.eval(p), p))
            .collect();
        Self::new(self.ray_count, sigma, translation, correction)
            .expect("inverse of a bijection is a bijection")
    }

    /// True iff both elements are the same function on `X_n`.
    pub fn canonical_equal(&self, other: &Self) -> bool {
        self == other
    }

    /// Smallest `k >= 1` with `self^k = id`, searched up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut power = self.clone();
        for k in 1..=limit {
            if power.is_identity() {
                return Some(k);
            }
            power = power.compose(self).ok()?;
        }
        None
    }

    fn minimize(&mut self) {
        let redundant: Vec<RayPoint> = self
            .correction
            .iter()
            .filter(|(&p, &q)| self.eventual(p) == Some(q))
            .map(|(&p, _)| p)
            .collect();
        for p in redundant {
            self.correction.remove(&p);
        }
    }

    fn max_key_pos(&self) -> u32 {
        self.correction.keys().map(|p| p.pos).max().unwrap_or(0)
    }

    fn max_touched_pos(&self) -> u32 {
        self.correction
            .iter()
            .map(|(p, q)| p.pos.max(q.pos))
            .max()
            .unwrap_or(0)
    }

    fn max_shift(&self) -> i64 {
        self.translation.iter().map(|t| t.abs()).max().unwrap_or(0)
    }

    fn domain_check_bound(&self) -> u32 {
        self.max_touched_pos() + 2 * self.max_shift() as u32 + 1
    }

    /// Outside positions `<= K + 2T + 1` (K = largest position touched by the
    /// correction, T = largest shift) the eventual rule is injective and
    /// cannot collide with images from inside; every target at position
    /// `> K + T + 1` has an eventual preimage. So checking injectivity on the
    /// box and covering targets up to `K + T + 1` decides bijectivity.
    fn check_bijective(&self) -> Result<(), ElementError> {
        let shift = self.max_shift() as u32;
        let touched = self.max_touched_pos();
        let mut preimage: HashMap<RayPoint, RayPoint> = HashMap::new();
        for p in box_points(self.ray_count, touched + 2 * shift + 1) {
            let q = match self.correction.get(&p) {
                Some(&q) => q,
                None => self.eventual(p).ok_or(ElementError::NonPositiveImage(p))?,
            };
            if let Some(first) = preimage.insert(q, p) {
                return Err(ElementError::NotInjective {
                    first,
                    second: p,
                    image: q,
                });
            }
        }
        let hit: HashSet<RayPoint> = preimage.keys().copied().collect();
        for q in box_points(self.ray_count, touched + shift + 1) {
            if !hit.contains(&q) {
                return Err(ElementError::NotSurjective(q));
            }
        }
        Ok(())
    }
}

/// All points with position `<= bound`, ordered by `(ray, pos)`.
fn box_points(ray_count: u32, bound: u32) -> Vec<RayPoint> {
    (1..=ray_count)
        .flat_map(|ray| (1..=bound).map(move |pos| RayPoint::new(ray, pos)))
        .collect()
}

fn check_permutation(ray_count: u32, sigma: &[u32]) -> Result<(), ElementError> {
    if sigma.len() != ray_count as usize {
        return Err(ElementError::NotAPermutation(ray_count));
    }
    let mut seen = vec![false; ray_count as usize];
    for &s in sigma {
        if s < 1 || s > ray_count || seen[s as usize - 1] {
            return Err(ElementError::NotAPermutation(ray_count));
        }
        seen[s as usize - 1] = true;
    }
    Ok(())
}

pub(crate) fn invert_permutation(sigma: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s as usize - 1] = i as u32 + 1;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ray: u32, pos: u32) -> RayPoint {
        RayPoint::new(ray, pos)
    }

    /// Pointwise evaluation of `g_i` straight from its case definition.
    fn g_rule(i: u32, q: RayPoint) -> RayPoint {
        match q {
            RayPoint { ray: 1, pos } if pos > 1 => p(1, pos - 1),
            RayPoint { ray: 1, pos: 1 } => p(i + 1, 1),
            RayPoint { ray, pos } if ray == i + 1 => p(ray, pos + 1),
            other => other,
        }
    }

    fn beta_rule(q: RayPoint) -> RayPoint {
        match q {
            RayPoint { ray: 1, pos: 1 } => p(2, 1),
            RayPoint { ray: 2, pos: 1 } => p(1, 1),
            other => other,
        }
    }

    #[test]
    fn generator_matches_case_definition() {
        let g1 = HoughtonElement::houghton_generator(1, 3).unwrap();
        assert_eq!(g1.apply(p(1, 1)).unwrap(), p(2, 1));
        assert_eq!(g1.apply(p(1, 3)).unwrap(), p(1, 2));
        assert_eq!(g1.apply(p(3, 5)).unwrap(), p(3, 5));
        let g2 = HoughtonElement::houghton_generator(2, 3).unwrap();
        assert_eq!(g2.apply(p(3, 4)).unwrap(), p(3, 5));
        for n in 2..=5 {
            for i in 1..n {
                let g = HoughtonElement::houghton_generator(i, n).unwrap();
                assert_eq!(g.translation().iter().sum::<i64>(), 0);
                assert_eq!(g.correction().len(), 1);
                for q in box_points(n, 12) {
                    assert_eq!(g.apply(q).unwrap(), g_rule(i, q));
                }
            }
        }
    }

    #[test]
    fn generator_index_errors() {
        assert!(matches!(
            HoughtonElement::houghton_generator(0, 3),
            Err(ElementError::GeneratorIndex { .. })
        ));
        assert!(matches!(
            HoughtonElement::houghton_generator(3, 3),
            Err(ElementError::GeneratorIndex { .. })
        ));
        assert!(matches!(
            HoughtonElement::houghton_generator(1, 1),
            Err(ElementError::RayCount(1))
        ));
    }

    #[test]
    fn beta_is_an_involution() {
        let b = HoughtonElement::beta(2).unwrap();
        assert_eq!(b.apply(p(1, 1)).unwrap(), p(2, 1));
        assert_eq!(b.apply(p(2, 1)).unwrap(), p(1, 1));
        assert_eq!(b.apply(p(2, 7)).unwrap(), p(2, 7));
        assert!(b.compose(&b).unwrap().is_identity());
    }

    #[test]
    fn alpha_permutes_rays() {
        let a = HoughtonElement::alpha(&[1, 3, 2]).unwrap();
        assert_eq!(a.apply(p(2, 7)).unwrap(), p(3, 7));
        assert_eq!(a.order(10), Some(2));
        assert!(HoughtonElement::alpha(&[1, 2, 3]).unwrap().is_identity());
        assert_eq!(
            HoughtonElement::alpha(&[2, 1, 3]),
            Err(ElementError::SigmaMovesFirstRay(2))
        );
        assert_eq!(
            HoughtonElement::alpha(&[1, 2, 2]),
            Err(ElementError::NotAPermutation(3))
        );
    }

    #[test]
    fn composition_matches_pointwise_evaluation() {
        let g1 = HoughtonElement::houghton_generator(1, 2).unwrap();
        let gg = g1.compose(&g1).unwrap();
        // g1(g1(1,1)) = g1(2,1) = (2,2)
        assert_eq!(gg.apply(p(1, 1)).unwrap(), p(2, 2));
        assert_eq!(gg.translation(), &[-2, 2]);

        let g1 = HoughtonElement::houghton_generator(1, 3).unwrap();
        let g2 = HoughtonElement::houghton_generator(2, 3).unwrap();
        let c = g1.compose(&g2).unwrap();
        for q in box_points(3, 10) {
            assert_eq!(c.apply(q).unwrap(), g_rule(1, g_rule(2, q)));
        }
        // g2(1,1) = (3,1), then g1 fixes ray 3 points: (3,1).
        assert_eq!(c.apply(p(1, 1)).unwrap(), p(3, 1));
    }

    #[test]
    fn inverse_solves_pointwise() {
        let g1 = HoughtonElement::houghton_generator(1, 2).unwrap();
        let inv = g1.invert();
        assert_eq!(inv.apply(p(1, 1)).unwrap(), p(1, 2));
        assert_eq!(g1.apply(p(1, 2)).unwrap(), p(1, 1));
        assert!(g1.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&g1).unwrap().is_identity());
        assert_eq!(inv.invert(), g1);
        let id = HoughtonElement::identity(4).unwrap();
        assert_eq!(id.invert(), id);
    }

    #[test]
    fn redundant_entries_are_dropped() {
        let g1 = HoughtonElement::houghton_generator(1, 2).unwrap();
        let padded = HoughtonElement::new(
            2,
            vec![1, 2],
            vec![-1, 1],
            [(p(1, 1), p(2, 1)), (p(1, 5), p(1, 4))],
        )
        .unwrap();
        assert!(padded.canonical_equal(&g1));
        let g1_3 = HoughtonElement::houghton_generator(1, 3).unwrap();
        let g2_3 = HoughtonElement::houghton_generator(2, 3).unwrap();
        assert!(!g1_3.canonical_equal(&g2_3));
    }

    #[test]
    fn beta_conjugate_of_g1_against_oracle() {
        let g1 = HoughtonElement::houghton_generator(1, 2).unwrap();
        let b = HoughtonElement::beta(2).unwrap();
        let conj = b.compose(&g1.compose(&b).unwrap()).unwrap();
        let mut agrees = true;
        for q in box_points(2, 10) {
            let expected = beta_rule(g_rule(1, beta_rule(q)));
            assert_eq!(conj.apply(q).unwrap(), expected);
            agrees &= expected == g_rule(1, q);
        }
        // (1,1) -> (2,1) -> (2,2) -> (2,2) differs from g1(1,1) = (2,1)
        assert!(!agrees);
        assert!(!conj.canonical_equal(&g1));
    }

    #[test]
    fn malformed_elements_are_rejected() {
        // shift ray 1 down without fixing (1,1)
        assert!(matches!(
            HoughtonElement::new(2, vec![1, 2], vec![-1, 1], []),
            Err(ElementError::NonPositiveImage(_))
        ));
        assert!(matches!(
            HoughtonElement::new(2, vec![1, 2], vec![1, 1], []),
            Err(ElementError::TranslationSum(2))
        ));
        // two points to (2,1)
        assert!(matches!(
            HoughtonElement::new(2, vec![1, 2], vec![0, 0], [(p(1, 1), p(2, 1))]),
            Err(ElementError::NotInjective { .. })
        ));
        assert!(matches!(
            HoughtonElement::new(2, vec![1, 2], vec![0, 0], [(p(3, 1), p(1, 1))]),
            Err(ElementError::PointOutOfRange { .. })
        ));
        let g = HoughtonElement::houghton_generator(1, 2).unwrap();
        assert!(matches!(
            g.apply(p(0, 1)),
            Err(ElementError::PointOutOfRange { .. })
        ));
        let h = HoughtonElement::houghton_generator(1, 3).unwrap();
        assert!(matches!(
            g.compose(&h),
            Err(ElementError::RayCountMismatch { .. })
        ));
    }

    #[test]
    fn bijection_on_boxes() {
        let g1 = HoughtonElement::houghton_generator(1, 3).unwrap();
        let g2 = HoughtonElement::houghton_generator(2, 3).unwrap();
        let a = HoughtonElement::alpha(&[1, 3, 2]).unwrap();
        let w = g1
            .compose(&a)
            .unwrap()
            .compose(&g2.invert())
            .unwrap()
            .compose(&g1)
            .unwrap();
        let bound = 20;
        let mut seen = HashSet::new();
        for q in box_points(3, bound) {
            assert!(seen.insert(w.apply(q).unwrap()));
        }
    }
}
