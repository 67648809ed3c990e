mod common;

use common::{block_channel, card, random_channel, straddling_grid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uvinfo::apps::{
    confusion_from_sets, confusion_ingest, hamming_distance_bound, hamming_equivocation, hamming_v_min, lexicode,
    matrix_capacity, BitString, EquivocationMatrix,
};
use uvinfo::chancap::BoundChannel;
use uvinfo::ratio::r;
use uvinfo::uvcore::Symbol;
use uvinfo::{Error, Ratio};

fn b(s: &str) -> BitString {
    s.parse().unwrap()
}

fn s(x: &str) -> Symbol {
    Symbol::from(x)
}

#[test]
fn ball_intersection_examples() {
    assert_eq!(
        hamming_equivocation(&b("0000"), &b("1111"), &r(1, 4)).unwrap(),
        Ratio::zero()
    );
    assert_eq!(hamming_equivocation(&b("0000"), &b("1100"), &r(1, 4)).unwrap(), r(3, 5));
    assert_eq!(
        hamming_equivocation(&b("0000"), &b("1111"), &r(1, 2)).unwrap(),
        Ratio::one()
    );
    assert!(matches!(
        hamming_equivocation(&b("000"), &b("0000"), &r(1, 4)),
        Err(Error::LengthMismatch(3, 4))
    ));
    let long = b("0000000000000");
    assert!(matches!(
        hamming_equivocation(&long, &long, &r(1, 4)),
        Err(Error::LengthTooLarge(13, 12))
    ));
    assert!(matches!(
        hamming_equivocation(&b("01"), &b("01"), &r(1, 4)),
        Err(Error::SamePoint(_))
    ));
}

#[test]
fn equivocation_is_symmetric_and_zero_only_for_disjoint_balls() {
    for n in 1..=6usize {
        for tau in [r(0, 1), r(1, 5), r(1, 3), r(1, 2), r(2, 3)] {
            let rad = uvinfo::apps::radius(&tau, n).unwrap();
            for x in 0..1u64 << n {
                for y in x + 1..1u64 << n {
                    let (bx, by) = (BitString::new(n, x).unwrap(), BitString::new(n, y).unwrap());
                    let e = hamming_equivocation(&bx, &by, &tau).unwrap();
                    assert_eq!(e, hamming_equivocation(&by, &bx, &tau).unwrap());
                    let disjoint = bx.distance(&by).unwrap() > 2 * rad;
                    assert_eq!(e.is_zero(), disjoint, "n={n} tau={tau} {bx} {by}");
                }
            }
        }
    }
}

#[test]
fn distance_three_code_meets_the_bound() {
    let code = lexicode(7, 3).unwrap();
    assert_eq!(code.len(), 16);
    let report = hamming_distance_bound(&code, &r(1, 7), &Ratio::zero()).unwrap();
    assert!(report.all_hold);
    assert_eq!(report.pairs[0].bound, r(3, 1));
    assert_eq!(report.min_distance, Some(3));
    assert_eq!(report.correctable, Some(1));
}

#[test]
fn repetition_code_and_trivial_codebooks() {
    let report = hamming_distance_bound(&[b("0000"), b("1111")], &r(1, 4), &Ratio::zero()).unwrap();
    assert_eq!(report.pairs[0].bound, r(3, 1));
    assert_eq!(report.pairs[0].distance, 4);
    assert!(report.all_hold);
    let single = hamming_distance_bound(&[b("0101")], &r(1, 4), &Ratio::zero()).unwrap();
    assert!(single.pairs.is_empty() && single.all_hold);
    assert_eq!(single.correctable, None);
    let err = hamming_distance_bound(&[b("0000"), b("1100")], &r(1, 4), &Ratio::zero()).unwrap_err();
    assert!(matches!(err, Error::NotDistinguishable(_, _)));
}

/// For every pair of n-bit strings (n <= 10), every radius and every level
/// small enough for a codebook of size k >= 2 containing that pair, the
/// distance bound holds. Translation invariance lets x1 = 0.
#[test]
fn distance_bound_holds_exhaustively() {
    for n in 1..=10usize {
        let zero = BitString::new(n, 0).unwrap();
        for rad in 0..=n {
            let tau = r(rad as i64, n as i64);
            let limit = hamming_v_min(n, &tau).unwrap();
            // One representative per distance.
            for d in 1..=n {
                let other = BitString::new(n, (1u64 << d) - 1).unwrap();
                let e = hamming_equivocation(&zero, &other, &tau).unwrap();
                for k in 2..=(1usize << n) {
                    // The weakest bound comes from the smallest admissible
                    // delta/k, which is e itself.
                    let delta = &e * &Ratio::from_u64(k as u64);
                    if delta >= limit {
                        break;
                    }
                    let bound = Ratio::from_u64(2 * rad as u64 + 1)
                        - &delta * &Ratio::from_u64(n as u64 + 1) / &Ratio::from_u64(k as u64);
                    assert!(Ratio::from_u64(d as u64) >= bound, "n={n} r={rad} d={d} k={k}");
                }
            }
        }
    }
}

#[test]
fn translation_representatives_are_faithful() {
    for n in 1..=5usize {
        for rad in 0..=n {
            let tau = r(rad as i64, n as i64);
            for x in 0..1u64 << n {
                for y in 0..1u64 << n {
                    if x == y {
                        continue;
                    }
                    let d = (x ^ y).count_ones();
                    let e = hamming_equivocation(&BitString::new(n, x).unwrap(), &BitString::new(n, y).unwrap(), &tau);
                    let rep = hamming_equivocation(
                        &BitString::new(n, 0).unwrap(),
                        &BitString::new(n, (1 << d) - 1).unwrap(),
                        &tau,
                    );
                    assert_eq!(e.unwrap(), rep.unwrap());
                }
            }
        }
    }
}

/// Every distinguishable codebook of length 4, found by brute force, passes.
#[test]
fn bound_holds_for_every_small_codebook() {
    let n = 4;
    let words: Vec<BitString> = (0..1u64 << n).map(|w| BitString::new(n, w).unwrap()).collect();
    for rad in 0..=2i64 {
        let tau = r(rad, n as i64);
        let limit = hamming_v_min(n, &tau).unwrap();
        let deltas: Vec<Ratio> = (0..8).map(|k| r(k, 8) * &limit).collect();
        for mask in 1u32..1 << words.len() {
            let cb: Vec<BitString> = (0..words.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| words[i])
                .collect();
            if cb.len() > 4 {
                continue;
            }
            for delta in &deltas {
                match hamming_distance_bound(&cb, &tau, delta) {
                    Ok(report) => assert!(report.all_hold),
                    Err(Error::NotDistinguishable(_, _)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

fn heavy_pair_matrix() -> EquivocationMatrix {
    let labels = ["a", "b", "c", "d"].map(s).to_vec();
    EquivocationMatrix::new(labels, [(s("a"), s("b"), r(1, 2))], Ratio::one()).unwrap()
}

#[test]
fn matrix_capacity_examples() {
    let labels: Vec<Symbol> = (1..=5).map(|k| s(&k.to_string())).collect();
    let zero = EquivocationMatrix::new(labels, [], Ratio::one()).unwrap();
    let cap = matrix_capacity(&zero, &r(1, 3)).unwrap();
    assert_eq!(cap.count, 5);
    assert_eq!(cap.bits.render(), "2.321928");

    let bound = BoundChannel::new(&block_channel(), &card(19, 1)).unwrap();
    let em = EquivocationMatrix::from_channel(&bound);
    assert_eq!(matrix_capacity(&em, &Ratio::zero()).unwrap().count, 2);

    let heavy = matrix_capacity(&heavy_pair_matrix(), &r(1, 4)).unwrap();
    assert_eq!(heavy.count, 3);
    assert_eq!(heavy.witness.to_string(), "{a,c,d}");
    assert!(matches!(
        matrix_capacity(&heavy_pair_matrix(), &Ratio::one()),
        Err(Error::DeltaOutOfRange { .. })
    ));
}

/// Heavy-pair matrix: the best subset found by enumerating every subset.
#[test]
fn heavy_pair_matches_subset_enumeration() {
    let em = heavy_pair_matrix();
    let labels = em.labels().to_vec();
    for delta in [r(0, 1), r(1, 4), r(1, 2), r(9, 10), r(99, 100)] {
        let mut best = 1;
        for mask in 1u32..16 {
            let set: Vec<&Symbol> = (0..4).filter(|&i| mask >> i & 1 == 1).map(|i| &labels[i]).collect();
            let k = set.len();
            let ok = set.iter().enumerate().all(|(i, a)| {
                set[i + 1..]
                    .iter()
                    .all(|c| em.get(a, c).unwrap() <= &delta / &Ratio::from_u64(k as u64))
            });
            if ok {
                best = best.max(k);
            }
        }
        assert_eq!(matrix_capacity(&em, &delta).unwrap().count, best, "delta={delta}");
    }
}

#[test]
fn matrix_from_channel_agrees_with_channel_capacity() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let ch = random_channel(&mut rng, 6, 5);
        let bound = BoundChannel::new(&ch, &card(5, 1)).unwrap();
        let em = EquivocationMatrix::from_channel(&bound);
        for delta in straddling_grid(&bound.table().distinct_values(), bound.v_min()) {
            let a = matrix_capacity(&em, &delta).unwrap();
            let c = bound.capacity(&delta).unwrap();
            assert_eq!((a.count, &a.witness), (c.count, &c.witness));
        }
    }
}

#[test]
fn diagonal_confusion_has_full_capacity() {
    let ch = confusion_ingest("true,predicted\ncat,cat\ndog,dog\nfox,fox\ncat,cat\n".as_bytes()).unwrap();
    let cap = BoundChannel::new(&ch, &card(3, 1))
        .unwrap()
        .capacity(&Ratio::zero())
        .unwrap();
    assert_eq!(cap.count, 3);
    assert_eq!(cap.bits.render(), "1.584963");
}

#[test]
fn confused_labels_lose_one_codeword() {
    let rows = "true,predicted\ncat,cat\ncat,dog\ndog,dog\ndog,cat\nfox,fox\n";
    let ch = confusion_ingest(rows.as_bytes()).unwrap();
    let cap = BoundChannel::new(&ch, &card(3, 1))
        .unwrap()
        .capacity(&Ratio::zero())
        .unwrap();
    assert_eq!(cap.count, 2);
    assert_eq!(cap.witness.to_string(), "{cat,fox}");
    let explicit = confusion_from_sets([
        (s("cat"), vec![s("cat"), s("dog")]),
        (s("dog"), vec![s("dog"), s("cat")]),
        (s("fox"), vec![s("fox")]),
    ])
    .unwrap();
    assert_eq!(explicit, ch);
    for x in ch.inputs() {
        assert!(!ch.image(x).unwrap().is_empty());
    }
}
