#![allow(dead_code)]

use rand::Rng;
use uvinfo::chancap::Channel;
use uvinfo::ratio::r;
use uvinfo::uvcore::{GroundSet, IntervalUnion, UncertainPair, UncertaintyFunction};
use uvinfo::Ratio;

/// The 19-node channel: three blocks of inputs sharing an image, with the
/// first two images overlapping in {2, 11}.
pub fn block_channel() -> Channel {
    let labels: Vec<String> = (1..=19).map(|i| i.to_string()).collect();
    let image = |x: u32| -> Vec<String> {
        let v: Vec<u32> = match x {
            1..=6 => vec![1, 2, 3, 4, 5, 6, 11],
            7..=12 => vec![7, 8, 9, 10, 11, 12, 2],
            _ => (13..=19).collect(),
        };
        v.into_iter().map(|i| i.to_string()).collect()
    };
    Channel::from_lists(labels.clone(), labels, (1..=19).map(|x| (x.to_string(), image(x)))).unwrap()
}

pub fn card(base: u64, exponent: u32) -> UncertaintyFunction {
    UncertaintyFunction::cardinality(base, exponent)
}

fn span(a: i64, b: i64) -> IntervalUnion {
    IntervalUnion::single(r(a, 1), r(b, 1)).unwrap()
}

/// Walkers arriving at a station; times in minutes after the first train.
pub fn walkers() -> UncertainPair {
    UncertainPair::cells(
        GroundSet::finite(["a", "b", "c", "ab", "bc"]).unwrap(),
        span(0, 30),
        [
            ("a", span(0, 15)),
            ("b", span(10, 30)),
            ("c", span(20, 30)),
            ("ab", span(10, 15)),
            ("bc", span(20, 30)),
        ],
    )
    .unwrap()
}

pub fn walkers_m() -> (UncertaintyFunction, UncertaintyFunction) {
    (card(5, 1), UncertaintyFunction::lebesgue(r(10, 1)))
}

/// A channel with `nx` inputs, `ny` outputs and random nonempty images.
pub fn random_channel<R: Rng>(rng: &mut R, nx: usize, ny: usize) -> Channel {
    let xs: Vec<String> = (1..=nx).map(|i| i.to_string()).collect();
    let ys: Vec<String> = (1..=ny).map(|i| i.to_string()).collect();
    let map = xs.iter().map(|x| {
        let mut img: Vec<String> = ys.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        if img.is_empty() {
            img.push(ys[rng.gen_range(0..ny)].clone());
        }
        (x.clone(), img)
    });
    Channel::from_lists(xs.clone(), ys.clone(), map.collect::<Vec<_>>()).unwrap()
}

/// A random relation over `nx` by `ny` symbols; every x gets at least one y.
pub fn random_relation<R: Rng>(rng: &mut R, nx: usize, ny: usize, density: f64) -> UncertainPair {
    let xs: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=ny).map(|i| format!("y{i}")).collect();
    let mut pairs = Vec::new();
    for x in &xs {
        let mut any = false;
        for y in &ys {
            if rng.gen_bool(density) {
                pairs.push((x.clone(), y.clone()));
                any = true;
            }
        }
        if !any {
            pairs.push((x.clone(), ys[rng.gen_range(0..ny)].clone()));
        }
    }
    UncertainPair::relation(GroundSet::finite(xs).unwrap(), GroundSet::finite(ys).unwrap(), pairs).unwrap()
}

/// Sorted distinct equivocation values of a channel, each with a point just
/// below and just above, plus zero.
pub fn straddling_grid(values: &[Ratio], limit: &Ratio) -> Vec<Ratio> {
    let mut grid = vec![Ratio::zero()];
    for v in values {
        for k in [1i64, 2, 3, 4, 5, 6] {
            for cand in [v * &r(k, 1), v * &r(k, 1) - r(1, 1000), v * &r(k, 1) + r(1, 1000)] {
                if !cand.is_negative() && cand < *limit {
                    grid.push(cand);
                }
            }
        }
    }
    grid.sort();
    grid.dedup();
    grid
}
