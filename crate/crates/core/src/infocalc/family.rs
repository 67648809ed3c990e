use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::analysis::Analysis;
use super::levels::{all_above, all_within};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::ratio::Ratio;
use crate::uvcore::{GroundSubset, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Associated,
    Disassociated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFamily {
    pub side: Side,
    pub regime: Regime,
    pub delta: Ratio,
    pub sets: Vec<GroundSubset>,
    #[serde(skip)]
    pub(crate) members: Vec<IndexSet>,
}

impl OverlapFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[IndexSet] {
        &self.members
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MiStatus {
    Associated,
    Disassociated,
    NoFamily,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiResult {
    pub bits: Bits,
    pub status: MiStatus,
    pub family: Option<OverlapFamily>,
}

/// Outcome of checking a family against the overlap-family definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub covers: bool,
    pub pairwise_overlap_within_level: bool,
    pub sets_connected: bool,
    pub each_set_holds_a_range: bool,
    pub each_range_inside_a_set: bool,
    /// Only checked for disassociated families.
    pub partition: Option<bool>,
    pub isolated: Option<bool>,
    /// Exhaustive over set partitions; only when there are at most six ranges.
    pub maximal: Option<bool>,
}

impl FamilyCheck {
    pub fn passes(&self) -> bool {
        self.covers
            && self.pairwise_overlap_within_level
            && self.sets_connected
            && self.each_set_holds_a_range
            && self.each_range_inside_a_set
            && self.partition != Some(false)
            && self.isolated != Some(false)
            && self.maximal != Some(false)
    }
}

static AUDITED: AtomicUsize = AtomicUsize::new(0);
static AUDIT_FAILURES: AtomicUsize = AtomicUsize::new(0);

/// (families checked, failures) since process start. Debug builds check every
/// family the library constructs.
pub fn family_audit() -> (usize, usize) {
    (AUDITED.load(Ordering::Relaxed), AUDIT_FAILURES.load(Ordering::Relaxed))
}

const MAXIMALITY_LIMIT: usize = 6;

impl Analysis {
    /// Union-find over distinct sections joined when their normalized overlap
    /// exceeds `delta`. Returns the sections and a component label for each.
    fn section_components(&self, side: Side, delta: &Ratio) -> (Vec<IndexSet>, Vec<usize>) {
        let secs = self.distinct_sections(side);
        let mut uf = UnionFind::<usize>::new(secs.len());
        for a in 0..secs.len() {
            for b in a + 1..secs.len() {
                let inter = secs[a].intersection(&secs[b]);
                if !inter.is_empty() && self.normalized(side, &inter) > *delta {
                    uf.union(a, b);
                }
            }
        }
        let labels = uf.into_labeling();
        (secs, labels)
    }

    /// Partition of the marginal range into delta-connected components.
    pub fn delta_components(&self, side: Side, delta: &Ratio) -> Result<Vec<IndexSet>> {
        if let Some(low) = self.association_set(side).into_iter().find(|v| v <= delta) {
            return Err(Error::NotDisassociated {
                ratio: Box::new(low),
                delta: Box::new(delta.clone()),
            });
        }
        let (secs, labels) = self.section_components(side, delta);
        let mut blocks: std::collections::BTreeMap<usize, IndexSet> = Default::default();
        for (sec, label) in secs.iter().zip(labels) {
            let entry = blocks.entry(label).or_default();
            *entry = entry.union(sec);
        }
        let mut out: Vec<IndexSet> = blocks.into_values().collect();
        out.sort();
        Ok(out)
    }

    /// The family covering `side`, using level `delta` on that side and the
    /// loosest level on the other: association at 1 or disassociation at 0.
    pub fn overlap_family(&self, side: Side, delta: &Ratio) -> Option<OverlapFamily> {
        let own = self.association_set(side);
        let other = self.association_set(side.other());
        let (regime, members) = if all_within(&own, delta) && all_within(&other, &Ratio::one()) {
            (Regime::Associated, self.distinct_sections(side))
        } else if all_above(&own, delta) && all_above(&other, &Ratio::zero()) {
            (Regime::Disassociated, self.delta_components(side, delta).ok()?)
        } else {
            return None;
        };
        let family = OverlapFamily {
            side,
            regime,
            delta: delta.clone(),
            sets: members.iter().map(|s| self.red.to_subset(side, s)).collect(),
            members,
        };
        if cfg!(debug_assertions) {
            self.audit(&family);
        }
        Some(family)
    }

    fn audit(&self, family: &OverlapFamily) {
        let check = self.verify_family(family);
        AUDITED.fetch_add(1, Ordering::Relaxed);
        if !check.passes() {
            AUDIT_FAILURES.fetch_add(1, Ordering::Relaxed);
            panic!("constructed family fails its own definition: {check:?}");
        }
    }

    pub fn mutual_information(&self, side: Side, delta: &Ratio) -> MiResult {
        match self.overlap_family(side, delta) {
            Some(f) => MiResult {
                bits: Bits::from_count(f.len() as u64),
                status: match f.regime {
                    Regime::Associated => MiStatus::Associated,
                    Regime::Disassociated => MiStatus::Disassociated,
                },
                family: Some(f),
            },
            None => MiResult {
                bits: Bits::zero(),
                status: MiStatus::NoFamily,
                family: None,
            },
        }
    }

    /// Pointwise delta-connectivity straight from the definition: some chain
    /// of sections from one containing `p` to one containing `q`, consecutive
    /// overlaps above the level. Breadth-first search, no shortcuts.
    pub fn points_connected(&self, side: Side, delta: &Ratio, p: u32, q: u32) -> bool {
        let secs = self.sections(side);
        let mut seen = vec![false; secs.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (k, s) in secs.iter().enumerate() {
            if s.contains(p) {
                seen[k] = true;
                queue.push_back(k);
            }
        }
        while let Some(k) = queue.pop_front() {
            if secs[k].contains(q) {
                return true;
            }
            for (n, s) in secs.iter().enumerate() {
                if !seen[n] {
                    let inter = secs[k].intersection(s);
                    if !inter.is_empty() && self.normalized(side, &inter) > *delta {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        false
    }

    /// Component labels reachable from each point; two points are connected
    /// exactly when their label sets meet.
    pub(crate) fn point_labels(&self, side: Side, delta: &Ratio) -> Vec<IndexSet> {
        let (secs, labels) = self.section_components(side, delta);
        let mut out = vec![IndexSet::new(); self.len(side)];
        for (sec, label) in secs.iter().zip(labels) {
            for p in sec.iter() {
                out[p as usize].insert(label as u32);
            }
        }
        out
    }

    /// Checks a family against every clause of the definition, plus the
    /// partition, isolation and maximality facts that hold under disassociation.
    pub fn verify_family(&self, family: &OverlapFamily) -> FamilyCheck {
        let side = family.side;
        let delta = &family.delta;
        let sets = &family.members;
        let total = IndexSet::full(self.len(side));
        let labels = self.point_labels(side, delta);
        let linked = |p: u32, q: u32| labels[p as usize].intersects(&labels[q as usize]);
        let secs = self.distinct_sections(side);

        let covers = sets.iter().fold(IndexSet::new(), |acc, s| acc.union(s)) == total;
        let mut pairwise = true;
        let mut disjoint = true;
        let mut isolated = true;
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                let inter = a.intersection(b);
                if !inter.is_empty() {
                    disjoint = false;
                    if self.normalized(side, &inter) > *delta {
                        pairwise = false;
                    }
                }
                if a.iter().any(|p| b.iter().any(|q| linked(p, q))) {
                    isolated = false;
                }
            }
        }
        let connected = sets
            .iter()
            .all(|s| s.iter().all(|p| s.iter().all(|q| p >= q || linked(p, q))));
        let holds_range = sets.iter().all(|s| secs.iter().any(|r| r.is_subset(s)));
        let inside_set = secs.iter().all(|r| sets.iter().any(|s| r.is_subset(s)));

        let (partition, isolated, maximal) = if family.regime == Regime::Disassociated {
            let maximal =
                (secs.len() <= MAXIMALITY_LIMIT).then(|| self.largest_isolated_partition(&secs, &linked) <= sets.len());
            (Some(disjoint), Some(isolated), maximal)
        } else {
            (None, None, None)
        };

        FamilyCheck {
            covers,
            pairwise_overlap_within_level: pairwise,
            sets_connected: connected,
            each_set_holds_a_range: holds_range,
            each_range_inside_a_set: inside_set,
            partition,
            isolated,
            maximal,
        }
    }

    /// Largest number of blocks in an isolated partition. Any such partition
    /// keeps each section inside one block, so enumerating groupings of the
    /// sections is exhaustive.
    fn largest_isolated_partition(&self, secs: &[IndexSet], linked: &dyn Fn(u32, u32) -> bool) -> usize {
        let mut best = 0;
        let mut assignment = vec![0usize; secs.len()];
        enumerate_groupings(&mut assignment, 0, 0, &mut |groups, count| {
            let mut blocks = vec![IndexSet::new(); count];
            for (sec, &g) in secs.iter().zip(groups) {
                blocks[g] = blocks[g].union(sec);
            }
            let ok = (0..count).all(|a| {
                (a + 1..count).all(|b| {
                    !blocks[a].intersects(&blocks[b])
                        && !blocks[a].iter().any(|p| blocks[b].iter().any(|q| linked(p, q)))
                })
            });
            if ok {
                best = best.max(count);
            }
        });
        best
    }
}

/// Restricted-growth enumeration of all set partitions of `assignment.len()` items.
fn enumerate_groupings(assignment: &mut [usize], pos: usize, used: usize, visit: &mut dyn FnMut(&[usize], usize)) {
    if pos == assignment.len() {
        visit(assignment, used);
        return;
    }
    for g in 0..=used {
        assignment[pos] = g;
        enumerate_groupings(assignment, pos + 1, used.max(g + 1), visit);
    }
}
