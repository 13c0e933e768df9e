use serde::Serialize;

use super::ball::BallGraph;

/// `|B(r)|` for `r = 0..=R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub entries: Vec<(u32, usize)>,
}

impl GrowthTable {
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        Self {
            entries: sizes
                .into_iter()
                .enumerate()
                .map(|(r, s)| (r as u32, s))
                .collect(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.entries.iter().map(|&(_, s)| s).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,ball_size\n");
        for (r, s) in &self.entries {
            out.push_str(&format!("{r},{s}\n"));
        }
        out
    }
}

pub fn growth_table(ball: &BallGraph) -> GrowthTable {
    let mut per_sphere = vec![0usize; ball.radius() as usize + 1];
    for &s in ball.spheres() {
        per_sphere[s as usize] += 1;
    }
    let mut total = 0;
    GrowthTable::from_sizes(per_sphere.into_iter().map(|c| {
        total += c;
        total
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{MarkedAction, RayPoint};
    use crate::schreier::build_ball;

    #[test]
    fn y2_and_y3_tables() {
        let y2 = build_ball(&MarkedAction::houghton(2).unwrap(), RayPoint::new(1, 1), 2).unwrap();
        assert_eq!(growth_table(&y2).sizes(), vec![1, 3, 5]);
        // images of (1,1) under g1, g1^-1, g2, g2^-1: (2,1), (1,2), (3,1), (1,2)
        let y3 = build_ball(&MarkedAction::houghton(3).unwrap(), RayPoint::new(1, 1), 1).unwrap();
        assert_eq!(growth_table(&y3).sizes(), vec![1, 4]);
    }

    #[test]
    fn csv_layout() {
        let t = GrowthTable::from_sizes([1, 3, 5]);
        assert_eq!(t.to_csv(), "r,ball_size\n0,1\n1,3\n2,5\n");
    }
}
