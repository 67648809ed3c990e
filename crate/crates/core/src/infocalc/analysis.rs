use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Result;
use crate::indexset::IndexSet;
use crate::ratio::Ratio;
use crate::uvcore::{PointMeasure, ReducedPair, Side, UncertainPair, UncertaintyFunction};

/// A reduced pair with both uncertainty functions bound to its points.
///
/// Everything in this module runs on this view; the public free functions
/// build one from an `UncertainPair` and delegate.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub(crate) red: ReducedPair,
    mx: PointMeasure,
    my: PointMeasure,
    mx_total: Ratio,
    my_total: Ratio,
}

/// Nonzero normalized overlaps of conditional ranges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AssociationSets {
    /// Overlaps of x sections taken over distinct y points.
    pub a_xy: BTreeSet<Ratio>,
    /// Overlaps of y sections taken over distinct x points.
    pub a_yx: BTreeSet<Ratio>,
}

impl AssociationSets {
    pub fn on(&self, side: Side) -> &BTreeSet<Ratio> {
        match side {
            Side::X => &self.a_xy,
            Side::Y => &self.a_yx,
        }
    }
}

impl Analysis {
    pub fn new(pair: &UncertainPair, m_x: &UncertaintyFunction, m_y: &UncertaintyFunction) -> Result<Self> {
        let red = pair.reduce();
        let mx = m_x.bind(&red.x_points)?;
        let my = m_y.bind(&red.y_points)?;
        Ok(Analysis::from_parts(red, mx, my))
    }

    pub(crate) fn from_parts(red: ReducedPair, mx: PointMeasure, my: PointMeasure) -> Self {
        let mx_total = mx.of(&IndexSet::full(red.x_points.len()));
        let my_total = my.of(&IndexSet::full(red.y_points.len()));
        Analysis {
            red,
            mx,
            my,
            mx_total,
            my_total,
        }
    }

    pub fn reduced(&self) -> &ReducedPair {
        &self.red
    }

    pub fn len(&self, side: Side) -> usize {
        self.red.points(side).len()
    }

    pub(crate) fn measure(&self, side: Side, set: &IndexSet) -> Ratio {
        match side {
            Side::X => self.mx.of(set),
            Side::Y => self.my.of(set),
        }
    }

    /// m of the whole marginal range of `side`.
    pub fn total(&self, side: Side) -> &Ratio {
        match side {
            Side::X => &self.mx_total,
            Side::Y => &self.my_total,
        }
    }

    /// m(set) / m(marginal) on `side`.
    pub(crate) fn normalized(&self, side: Side, set: &IndexSet) -> Ratio {
        self.measure(side, set) / self.total(side)
    }

    pub(crate) fn sections(&self, side: Side) -> &[IndexSet] {
        self.red.sections(side)
    }

    /// Distinct sections of `side` with the number of opposite points that
    /// produce each one. A multi-point piece counts as two points.
    pub(crate) fn section_multiplicity(&self, side: Side) -> BTreeMap<&IndexSet, usize> {
        let other_points = self.red.points(side.other());
        let mut out: BTreeMap<&IndexSet, usize> = BTreeMap::new();
        for (j, sec) in self.sections(side).iter().enumerate() {
            let weight = if other_points[j].is_multi() { 2 } else { 1 };
            *out.entry(sec).or_default() += weight;
        }
        out
    }

    /// Distinct conditional ranges of `side`, in canonical order.
    pub fn distinct_sections(&self, side: Side) -> Vec<IndexSet> {
        self.section_multiplicity(side).into_keys().cloned().collect()
    }

    /// The association set of `side`: nonzero normalized overlaps over all
    /// pairs of distinct opposite points.
    pub fn association_set(&self, side: Side) -> BTreeSet<Ratio> {
        let mult = self.section_multiplicity(side);
        let secs: Vec<(&IndexSet, usize)> = mult.into_iter().collect();
        let mut out = BTreeSet::new();
        for (k, (a, count)) in secs.iter().enumerate() {
            if *count >= 2 {
                out.insert(self.normalized(side, a));
            }
            for (b, _) in &secs[k + 1..] {
                let inter = a.intersection(b);
                if !inter.is_empty() {
                    out.insert(self.normalized(side, &inter));
                }
            }
        }
        out
    }

    pub fn association_sets(&self) -> AssociationSets {
        AssociationSets {
            a_xy: self.association_set(Side::X),
            a_yx: self.association_set(Side::Y),
        }
    }
}
