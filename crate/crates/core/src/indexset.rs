//! Sorted, duplicate-free sets of point indices.
//!
//! Ordering is lexicographic on the sorted contents, which sorts families by
//! least element first.

use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexSet(Vec<u32>);

impl IndexSet {
    pub fn new() -> Self {
        IndexSet(Vec::new())
    }

    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        IndexSet(v)
    }

    pub fn full(n: usize) -> Self {
        IndexSet((0..n as u32).collect())
    }

    pub fn singleton(i: u32) -> Self {
        IndexSet(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn insert(&mut self, i: u32) {
        if let Err(pos) = self.0.binary_search(&i) {
            self.0.insert(pos, i);
        }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        IndexSet(out)
    }

    pub fn intersects(&self, other: &IndexSet) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                out.push(b[j]);
                j += 1;
            } else {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
        IndexSet(out)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

impl FromIterator<u32> for IndexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut v: Vec<u32> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[u32]) -> IndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn basic_ops() {
        let a = set(&[1, 3, 5, 7]);
        let b = set(&[3, 4, 5]);
        assert_eq!(a.intersection(&b), set(&[3, 5]));
        assert_eq!(a.union(&b), set(&[1, 3, 4, 5, 7]));
        assert!(set(&[3, 5]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(a.intersects(&b));
        assert!(!a.intersects(&set(&[2, 4])));
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(a in proptest::collection::btree_set(0u32..40, 0..20),
                                b in proptest::collection::btree_set(0u32..40, 0..20)) {
            let sa: IndexSet = a.iter().copied().collect();
            let sb: IndexSet = b.iter().copied().collect();
            let inter: Vec<u32> = a.intersection(&b).copied().collect();
            let uni: Vec<u32> = a.union(&b).copied().collect();
            prop_assert_eq!(sa.intersection(&sb).as_slice().to_vec(), inter.clone());
            prop_assert_eq!(sa.union(&sb).as_slice().to_vec(), uni);
            prop_assert_eq!(sa.intersects(&sb), !inter.is_empty());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        }
    }
}
