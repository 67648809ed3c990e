mod common;

use std::collections::BTreeSet;

use common::{block_channel, card, random_relation, walkers, walkers_m};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uvinfo::infocalc::{
    association_sets, classify_levels, delta_components, mutual_information, overlap_family, taxicab_family, Analysis,
    Direction, Level, MiStatus, Regime,
};
use uvinfo::ratio::r;
use uvinfo::uvcore::{GroundPoint, GroundSet, GroundSubset, Side, UncertainPair};
use uvinfo::{Error, Ratio};

fn set(values: &[(i64, i64)]) -> BTreeSet<Ratio> {
    values.iter().map(|&(p, q)| r(p, q)).collect()
}

fn block_channel_pair(codebook: &[&str]) -> UncertainPair {
    let ch = block_channel();
    ch.induced_pair(&ch.codebook(codebook.iter().copied()).unwrap())
        .unwrap()
}

#[test]
fn walkers_association_sets() {
    let (mw, mt) = walkers_m();
    let a = association_sets(&walkers(), &mw, &mt).unwrap();
    assert_eq!(a.a_xy, set(&[(1, 5), (3, 5)]));
    assert_eq!(a.a_yx, set(&[(3, 8), (1, 2)]));
}

#[test]
fn walkers_regimes_at_the_thresholds() {
    let (mw, mt) = walkers_m();
    let a = association_sets(&walkers(), &mw, &mt).unwrap();
    assert_eq!(classify_levels(&a, &r(1, 6), &r(1, 4)).level, Level::Disassociated);
    assert_eq!(classify_levels(&a, &r(3, 5), &r(1, 2)).level, Level::Associated);
    assert_eq!(classify_levels(&a, &r(1, 4), &r(2, 5)).level, Level::Neither);
    // Knife edges: an association value equal to the level associates but
    // does not connect.
    assert_eq!(classify_levels(&a, &r(1, 5), &r(1, 4)).level, Level::Neither);
    assert_eq!(
        classify_levels(&a, &(r(1, 5) - r(1, 1000)), &(r(3, 8) - r(1, 1000))).level,
        Level::Disassociated
    );
    assert_eq!(
        classify_levels(&a, &(r(3, 5) - r(1, 1000)), &r(1, 2)).level,
        Level::Neither
    );
    assert_eq!(
        classify_levels(&a, &r(3, 5), &(r(1, 2) - r(1, 1000))).level,
        Level::Neither
    );
}

#[test]
fn walkers_ranges() {
    let p = walkers();
    let a = GroundPoint::Symbol("a".into());
    let t = uvinfo::uvcore::conditional_range(&p, Side::Y, &a).unwrap();
    let (_, mt) = walkers_m();
    assert_eq!(mt.measure(&t).unwrap(), r(25, 1));
    let mid = GroundPoint::Coord(r(17, 1));
    assert_eq!(p.conditional_range(Side::X, &mid).unwrap(), GroundSubset::finite(["b"]));
    assert!(matches!(
        p.conditional_range(Side::X, &GroundPoint::Coord(r(31, 1))),
        Err(Error::PointOutsideRange(_))
    ));
}

#[test]
fn walkers_information_is_symmetric() {
    let (mw, mt) = walkers_m();
    let p = walkers();
    let tax = taxicab_family(&p, &mw, &mt, &r(1, 6), &r(1, 4)).unwrap();
    assert!(tax.exists);
    let xy = mutual_information(&p, &mw, &mt, &r(1, 6), Direction::XGivenY).unwrap();
    let yx = mutual_information(&p, &mw, &mt, &r(1, 4), Direction::YGivenX).unwrap();
    assert_eq!(xy.bits, yx.bits);
    assert_eq!(tax.len() as u64, xy.bits.count());
    let neither = mutual_information(&p, &mw, &mt, &r(1, 4), Direction::XGivenY).unwrap();
    assert_eq!(neither.status, MiStatus::NoFamily);
    assert!(neither.bits.is_zero());
}

#[test]
fn components_on_block_channel_codebooks() {
    let m = card(19, 1);
    let comps = delta_components(&block_channel_pair(&["1", "7", "13"]), &m, &r(1, 18), Side::Y).unwrap();
    let labels = |v: std::ops::RangeInclusive<u32>| GroundSubset::finite(v.map(|k| k.to_string()));
    assert_eq!(comps, vec![labels(1..=12), labels(13..=19)]);
    let one = delta_components(&block_channel_pair(&["1", "7"]), &m, &r(1, 19), Side::Y).unwrap();
    assert_eq!(one, vec![labels(1..=12)]);
    let apart = delta_components(&block_channel_pair(&["1", "13"]), &m, &r(1, 3), Side::Y).unwrap();
    assert_eq!(apart.len(), 2);
    // Overlaps are normalized by the 12 outputs the codebook reaches.
    let err = delta_components(&block_channel_pair(&["1", "7"]), &m, &r(1, 6), Side::Y).unwrap_err();
    assert!(matches!(err, Error::NotDisassociated { .. }));
}

#[test]
fn families_on_block_channel_codebooks() {
    let pair = block_channel_pair(&["1", "7", "13"]);
    let mx = card(3, 1);
    let f = overlap_family(&pair, &mx, &card(19, 1), &r(1, 18), Side::Y)
        .unwrap()
        .unwrap();
    assert_eq!((f.len(), f.regime), (2, Regime::Disassociated));
    let f = overlap_family(&pair, &mx, &card(19, 3), &r(1, 81), Side::Y)
        .unwrap()
        .unwrap();
    assert_eq!((f.len(), f.regime), (3, Regime::Associated));
    let mi = mutual_information(&pair, &mx, &card(19, 3), &r(1, 81), Direction::YGivenX).unwrap();
    assert_eq!(mi.bits.render(), "1.584963");
    let single = block_channel_pair(&["1"]);
    let mi = mutual_information(&single, &card(1, 1), &card(19, 1), &r(1, 3), Direction::YGivenX).unwrap();
    assert_eq!(mi.bits.count(), 1);
    assert!(mi.bits.is_zero());
}

#[test]
fn neither_regime_gives_no_family() {
    // 1 and 2 share an image, so the output side sees both the full
    // 7/12 self-overlap and the 2/12 overlap with 7.
    let pair = block_channel_pair(&["1", "2", "7"]);
    let a = association_sets(&pair, &card(3, 1), &card(19, 1)).unwrap();
    assert_eq!(a.a_yx, set(&[(1, 6), (7, 12)]));
    assert!(overlap_family(&pair, &card(3, 1), &card(19, 1), &r(1, 3), Side::Y)
        .unwrap()
        .is_none());
    assert_eq!(classify_levels(&a, &Ratio::one(), &r(1, 3)).level, Level::Neither);
}

#[test]
fn independent_and_singleton_pairs() {
    let xs = GroundSet::finite(["a", "b"]).unwrap();
    let ys = GroundSet::finite(["p", "q"]).unwrap();
    let full = UncertainPair::relation(xs, ys, [("a", "p"), ("a", "q"), ("b", "p"), ("b", "q")]).unwrap();
    let a = association_sets(&full, &card(2, 1), &card(2, 1)).unwrap();
    assert_eq!(a.a_xy, set(&[(1, 1)]));
    assert_eq!(a.a_yx, set(&[(1, 1)]));
    assert_eq!(
        taxicab_family(&full, &card(2, 1), &card(2, 1), &Ratio::zero(), &Ratio::zero())
            .unwrap()
            .len(),
        1
    );
    let single = UncertainPair::relation(
        GroundSet::finite(["x0"]).unwrap(),
        GroundSet::finite(["y0", "y1"]).unwrap(),
        [("x0", "y0"), ("x0", "y1")],
    )
    .unwrap();
    assert!(association_sets(&single, &card(1, 1), &card(2, 1))
        .unwrap()
        .a_yx
        .is_empty());
}

#[test]
fn taxicab_on_disjoint_codebook() {
    let tax = taxicab_family(
        &block_channel_pair(&["1", "13"]),
        &card(2, 1),
        &card(19, 1),
        &Ratio::zero(),
        &Ratio::zero(),
    )
    .unwrap();
    assert!(tax.exists);
    assert_eq!(tax.len(), 2);
}

fn levels(values: &BTreeSet<Ratio>) -> Vec<Ratio> {
    let mut out = vec![Ratio::zero(), Ratio::one()];
    for v in values {
        out.push(v.clone());
        out.push(v * &r(1, 2));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Regimes never overlap, and families always satisfy their definition.
    #[test]
    fn families_pass_their_definition(seed in any::<u64>(), nx in 1usize..5, ny in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_relation(&mut rng, nx, ny, 0.45);
        let a = Analysis::new(&pair, &card(nx as u64, 1), &card(ny as u64, 1)).unwrap();
        let assoc = a.association_sets();
        for d1 in levels(&assoc.a_xy) {
            for d2 in levels(&assoc.a_yx) {
                let status = classify_levels(&assoc, &d1, &d2);
                let dis = assoc.a_xy.iter().all(|v| *v > d1) && assoc.a_yx.iter().all(|v| *v > d2)
                    && !assoc.a_xy.is_empty() && !assoc.a_yx.is_empty();
                let asc = assoc.a_xy.iter().all(|v| *v <= d1) && assoc.a_yx.iter().all(|v| *v <= d2);
                prop_assert!(!(dis && asc));
                let expected = if dis { Level::Disassociated } else if asc { Level::Associated } else { Level::Neither };
                prop_assert_eq!(status.level, expected);
            }
        }
        for side in [Side::X, Side::Y] {
            for d in levels(&a.association_set(side)) {
                if let Some(f) = a.overlap_family(side, &d) {
                    let check = a.verify_family(&f);
                    prop_assert!(check.passes(), "{:?}", check);
                    if f.regime == Regime::Disassociated {
                        prop_assert_eq!(check.partition, Some(true));
                        prop_assert_eq!(check.isolated, Some(true));
                    }
                }
            }
        }
    }

    /// Under disassociation, graph closure matches a direct path search.
    #[test]
    fn connectivity_matches_path_search(seed in any::<u64>(), nx in 1usize..5, ny in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_relation(&mut rng, nx, ny, 0.45);
        let a = Analysis::new(&pair, &card(nx as u64, 1), &card(ny as u64, 1)).unwrap();
        let own = a.association_set(Side::Y);
        let Some(lo) = own.first() else { return Ok(()) };
        let delta = lo * &r(1, 2);
        let comps = a.delta_components(Side::Y, &delta).unwrap();
        let n = a.len(Side::Y) as u32;
        for p in 0..n {
            for q in 0..n {
                let same = comps.iter().any(|c| c.contains(p) && c.contains(q));
                prop_assert_eq!(same, a.points_connected(Side::Y, &delta, p, q));
            }
        }
        // Below the least association value the count is constant and at
        // most the number of distinct ranges.
        let other = a.delta_components(Side::Y, &(lo * &r(1, 3))).unwrap();
        prop_assert_eq!(comps.len(), other.len());
        prop_assert!(comps.len() <= a.distinct_sections(Side::Y).len());
    }

    /// Information in each direction agrees whenever a taxicab family exists
    /// at disassociated levels.
    #[test]
    fn symmetry_with_taxicab_family(seed in any::<u64>(), nx in 1usize..5, ny in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_relation(&mut rng, nx, ny, 0.45);
        let (mx, my) = (card(nx as u64, 1), card(ny as u64, 1));
        let assoc = association_sets(&pair, &mx, &my).unwrap();
        let (Some(x0), Some(y0)) = (assoc.a_xy.first(), assoc.a_yx.first()) else { return Ok(()) };
        let (d1, d2) = (x0 * &r(1, 2), y0 * &r(1, 2));
        prop_assert_eq!(classify_levels(&assoc, &d1, &d2).level, Level::Disassociated);
        let tax = taxicab_family(&pair, &mx, &my, &d1, &d2).unwrap();
        if tax.exists {
            let xy = mutual_information(&pair, &mx, &my, &d1, Direction::XGivenY).unwrap();
            let yx = mutual_information(&pair, &mx, &my, &d2, Direction::YGivenX).unwrap();
            prop_assert_eq!(xy.bits, yx.bits);
        }
    }
}
