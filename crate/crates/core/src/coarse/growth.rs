use num_rational::Ratio;
use serde::Serialize;

use super::CoarseError;
use crate::schreier::GrowthTable;

/// Evidence for `|B(r)| <= C r`. `holds` compares the last quarter of radii
/// against the earlier ones, so it only says that no super-linear trend is
/// visible up to the table's radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearGrowthEvidence {
    /// `max |B(r)| / r` over `r >= 1`, as `[numerator, denominator]`.
    pub c_estimate: Ratio<u64>,
    pub holds: bool,
    pub radius: u32,
    /// First radius of the trailing quarter.
    pub tail_start: u32,
    pub evidence_only: bool,
}

pub fn linear_growth_check(table: &GrowthTable) -> Result<LinearGrowthEvidence, CoarseError> {
    if table.entries.len() < 4 {
        return Err(CoarseError::TableTooShort(table.entries.len()));
    }
    let ratios: Vec<(u32, Ratio<u64>)> = table
        .entries
        .iter()
        .filter(|&&(r, _)| r >= 1)
        .map(|&(r, size)| (r, Ratio::new(size as u64, r as u64)))
        .collect();
    let radius = ratios.last().map_or(0, |&(r, _)| r);
    let quarter = radius.div_ceil(4);
    let tail_start = radius + 1 - quarter;
    let max_of = |keep: &dyn Fn(u32) -> bool| {
        ratios
            .iter()
            .filter(|(r, _)| keep(*r))
            .map(|&(_, c)| c)
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    };
    let head = max_of(&|r| r < tail_start);
    let tail = max_of(&|r| r >= tail_start);
    Ok(LinearGrowthEvidence {
        c_estimate: head.max(tail),
        holds: tail <= head,
        radius,
        tail_start,
        evidence_only: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{MarkedAction, RayPoint};
    use crate::schreier::{build_ball, growth_table};

    fn table(n: u32, radius: u32) -> GrowthTable {
        let ball = build_ball(
            &MarkedAction::houghton(n).unwrap(),
            RayPoint::new(1, 1),
            radius,
        )
        .unwrap();
        growth_table(&ball)
    }

    #[test]
    fn houghton_tables_are_linear() {
        // closed forms: |B(r)| = 2r + 1 on Y_2 and 3r + 1 on Y_3
        let y2 = table(2, 64);
        assert!(y2.sizes().iter().enumerate().all(|(r, &s)| s == 2 * r + 1));
        let e2 = linear_growth_check(&y2).unwrap();
        assert!(e2.holds);
        assert_eq!(e2.c_estimate, Ratio::from_integer(3));

        let y3 = table(3, 64);
        assert!(y3.sizes().iter().enumerate().all(|(r, &s)| s == 3 * r + 1));
        let e3 = linear_growth_check(&y3).unwrap();
        assert!(e3.holds);
        assert_eq!(e3.c_estimate, Ratio::from_integer(4));
    }

    #[test]
    fn binary_tree_fails() {
        let tree = GrowthTable::from_sizes((0..=10).map(|r| (1usize << (r + 1)) - 1));
        let e = linear_growth_check(&tree).unwrap();
        assert!(!e.holds);
        assert_eq!(e.c_estimate, Ratio::new(2047, 10));
    }

    #[test]
    fn quarter_boundaries() {
        let e = linear_growth_check(&GrowthTable::from_sizes([1, 3, 5, 7])).unwrap();
        assert_eq!((e.radius, e.tail_start), (3, 3));
        let e = linear_growth_check(&GrowthTable::from_sizes(vec![1; 9])).unwrap();
        assert_eq!((e.radius, e.tail_start), (8, 7));
        assert!(e.holds);
    }

    #[test]
    fn short_tables_rejected() {
        assert_eq!(
            linear_growth_check(&GrowthTable::from_sizes([1, 3, 5])),
            Err(CoarseError::TableTooShort(3))
        );
    }
}
