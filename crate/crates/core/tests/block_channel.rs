mod common;

use common::{block_channel, card};
use uvinfo::chancap::{BoundChannel, Codebook};
use uvinfo::ratio::r;
use uvinfo::uvcore::Symbol;

fn s(x: &str) -> Symbol {
    Symbol::from(x)
}

#[test]
fn equivocations_from_the_printed_map() {
    let b = BoundChannel::new(&block_channel(), &card(19, 1)).unwrap();
    assert_eq!(b.equivocation(&s("1"), &s("7")).unwrap(), r(2, 19));
    assert_eq!(b.equivocation(&s("1"), &s("13")).unwrap(), r(0, 1));
    assert_eq!(b.equivocation(&s("1"), &s("2")).unwrap(), r(7, 19));
    assert!(b.equivocation(&s("1"), &s("1")).is_err());
    assert_eq!(*b.v_min(), r(7, 19));
    assert_eq!(b.v_argmin(), &s("1"));
    let cubed = BoundChannel::new(&block_channel(), &card(19, 3)).unwrap();
    assert_eq!(*cubed.v_min(), r(343, 6859));
}

#[test]
fn distinguishability_knife_edges() {
    let b = BoundChannel::new(&block_channel(), &card(19, 1)).unwrap();
    let cb = Codebook::new(["1", "7", "13"]).unwrap();
    // 4/9 exceeds m(V) = 7/19; 6/19 is the in-range level where 2/19 <= delta/3 first holds.
    assert!(b.check_distinguishable(&cb, &r(4, 9)).is_err());
    assert!(b.check_distinguishable(&cb, &r(6, 19)).unwrap().distinguishable);
    assert!(
        !b.check_distinguishable(&cb, &(r(6, 19) - r(1, 1000)))
            .unwrap()
            .distinguishable
    );
    let bad = b.check_distinguishable(&cb, &r(2, 9)).unwrap();
    assert!(!bad.distinguishable);
    assert_eq!(bad.violation.unwrap().pair, (s("1"), s("7")));
    assert!(
        b.check_distinguishable(&Codebook::new(["1", "13"]).unwrap(), &r(0, 1))
            .unwrap()
            .distinguishable
    );
    assert!(b.check_distinguishable(&cb, &r(7, 19)).is_err());
}

#[test]
fn capacity_values() {
    let b = BoundChannel::new(&block_channel(), &card(19, 1)).unwrap();
    let c0 = b.capacity(&r(0, 1)).unwrap();
    assert_eq!(c0.count, 2);
    assert_eq!(c0.bits.render(), "1");
    assert_eq!(c0.witness, Codebook::new(["1", "13"]).unwrap());
    assert_eq!(b.capacity(&r(2, 9)).unwrap().count, 2);
    assert!(b.capacity(&r(4, 9)).is_err());
    let c = b.capacity_unchecked(&r(4, 9)).unwrap();
    assert_eq!(c.count, 3);
    assert_eq!(c.witness, Codebook::new(["1", "7", "13"]).unwrap());
    assert_eq!(b.capacity(&r(6, 19)).unwrap().count, 3);
    assert_eq!(b.capacity(&(r(6, 19) - r(1, 1000))).unwrap().count, 2);
    let cubed = BoundChannel::new(&block_channel(), &card(19, 3)).unwrap();
    assert_eq!(cubed.capacity(&r(1, 27)).unwrap().count, 3);
}

#[test]
fn oracle_matches_capacity() {
    let b = BoundChannel::new(&block_channel(), &card(19, 1)).unwrap();
    for d in [r(0, 1), r(2, 9), r(6, 19), r(7, 19) - r(1, 1000)] {
        let o = b.mi_sup_oracle(&d).unwrap();
        assert_eq!(o.bits.count() as usize, b.capacity(&d).unwrap().count, "delta {d}");
    }
}

#[test]
fn average_overlap_of_three_blocks() {
    let b = BoundChannel::new(&block_channel(), &card(19, 1)).unwrap();
    let cb = Codebook::new(["1", "7", "13"]).unwrap();
    assert_eq!(b.average_overlap(&cb).unwrap(), r(2, 21));
    assert_eq!(b.avg_overlap_capacity(&r(0, 1)).unwrap().count, 2);
    assert!(b.avg_overlap_capacity(&r(4, 21)).unwrap().count >= 3);
}
