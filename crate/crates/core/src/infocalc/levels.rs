use std::collections::BTreeSet;

use serde::Serialize;

use super::analysis::AssociationSets;
use crate::ratio::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    Disassociated,
    Associated,
    Neither,
}

/// The outcome with the comparisons that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStatus {
    pub level: Level,
    pub witness: Vec<String>,
}

fn describe(name: &str, set: &BTreeSet<Ratio>, delta: &Ratio) -> String {
    match (set.first(), set.last()) {
        (Some(lo), Some(hi)) => format!("{name}: min {lo}, max {hi}, level {delta}"),
        _ => format!("{name}: empty, level {delta}"),
    }
}

/// Every element strictly above the level, and the set nonempty.
pub(crate) fn all_above(set: &BTreeSet<Ratio>, delta: &Ratio) -> bool {
    set.first().is_some_and(|lo| lo > delta)
}

/// Every element at most the level; an empty set passes.
pub(crate) fn all_within(set: &BTreeSet<Ratio>, delta: &Ratio) -> bool {
    set.last().is_none_or(|hi| hi <= delta)
}

/// `delta1` applies to the x-side set, `delta2` to the y-side set.
pub fn classify_levels(assoc: &AssociationSets, delta1: &Ratio, delta2: &Ratio) -> LevelStatus {
    let witness = vec![
        describe("a_xy", &assoc.a_xy, delta1),
        describe("a_yx", &assoc.a_yx, delta2),
    ];
    let level = if all_above(&assoc.a_xy, delta1) && all_above(&assoc.a_yx, delta2) {
        Level::Disassociated
    } else if all_within(&assoc.a_xy, delta1) && all_within(&assoc.a_yx, delta2) {
        Level::Associated
    } else {
        Level::Neither
    };
    LevelStatus { level, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::r;

    fn sets(a: &[(i64, i64)], b: &[(i64, i64)]) -> AssociationSets {
        AssociationSets {
            a_xy: a.iter().map(|&(p, q)| r(p, q)).collect(),
            a_yx: b.iter().map(|&(p, q)| r(p, q)).collect(),
        }
    }

    #[test]
    fn empty_sets_associate_but_never_disassociate() {
        let s = sets(&[], &[]);
        assert_eq!(classify_levels(&s, &r(0, 1), &r(0, 1)).level, Level::Associated);
        let s = sets(&[(1, 2)], &[]);
        assert_eq!(classify_levels(&s, &r(0, 1), &r(0, 1)).level, Level::Neither);
    }

    #[test]
    fn boundary_values() {
        let s = sets(&[(1, 5), (3, 5)], &[(3, 8), (1, 2)]);
        assert_eq!(classify_levels(&s, &r(1, 5), &r(1, 4)).level, Level::Neither);
        assert_eq!(classify_levels(&s, &r(3, 5), &r(1, 2)).level, Level::Associated);
        assert_eq!(classify_levels(&s, &r(0, 1), &r(0, 1)).level, Level::Disassociated);
    }
}
