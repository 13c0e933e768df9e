use std::fmt;

use serde::{Deserialize, Serialize};

/// A point `(ray, position)` of the ray set `{1..n} x N`.
///
/// Both coordinates are 1-based. Ordering is lexicographic by `(ray, pos)`,
/// which is the canonical vertex order used by every exporter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct RayPoint {
    pub ray: u32,
    pub pos: u32,
}

impl RayPoint {
    pub const fn new(ray: u32, pos: u32) -> Self {
        Self { ray, pos }
    }

    /// True when the point lies in `{1..ray_count} x N`.
    pub fn is_valid_for(&self, ray_count: u32) -> bool {
        self.ray >= 1 && self.ray <= ray_count && self.pos >= 1
    }
}

impl From<(u32, u32)> for RayPoint {
    fn from((ray, pos): (u32, u32)) -> Self {
        Self { ray, pos }
    }
}

impl From<RayPoint> for (u32, u32) {
    fn from(p: RayPoint) -> Self {
        (p.ray, p.pos)
    }
}

impl fmt::Display for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.ray, self.pos)
    }
}

impl std::str::FromStr for RayPoint {
    type Err = String;

    /// Accepts `i,m` or `(i,m)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (ray, pos) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected `ray,position`, got `{s}`"))?;
        let ray = ray
            .trim()
            .parse::<u32>()
            .map_err(|e| format!("bad ray in `{s}`: {e}"))?;
        let pos = pos
            .trim()
            .parse::<u32>()
            .map_err(|e| format!("bad position in `{s}`: {e}"))?;
        Ok(Self { ray, pos })
    }
}
