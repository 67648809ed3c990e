use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::analysis::Analysis;
use crate::indexset::IndexSet;
use crate::ratio::Ratio;
use crate::uvcore::{PointLabel, Side};

/// A joint point as (x index, y index) in the reduced pair.
pub type JointPoint = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaxicabChecks {
    pub holds_row_and_column: bool,
    pub projections_within_levels: bool,
    pub rows_and_columns_contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaxicabFamily {
    /// Each set as (x label, y label) pairs.
    pub sets: Vec<Vec<(String, String)>>,
    pub deltas: (Ratio, Ratio),
    pub exists: bool,
    pub checks: TaxicabChecks,
    #[serde(skip)]
    pub(crate) members: Vec<BTreeSet<JointPoint>>,
}

impl TaxicabFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[BTreeSet<JointPoint>] {
        &self.members
    }
}

fn label(p: &PointLabel) -> String {
    match p {
        PointLabel::Symbol(s) => s.to_string(),
        PointLabel::Piece { span, .. } if span.lo == span.hi => span.lo.to_string(),
        PointLabel::Piece { span, .. } => format!("({},{})", span.lo, span.hi),
    }
}

impl Analysis {
    fn joint_points(&self) -> Vec<JointPoint> {
        self.red
            .y_given_x
            .iter()
            .enumerate()
            .flat_map(|(i, ys)| ys.iter().map(move |j| (i as u32, j)))
            .collect()
    }

    /// Vertical step (same x) clears the x-side level; horizontal step
    /// (same y) clears the y-side level. Every step is thresholded.
    fn taxicab_step(&self, a: JointPoint, b: JointPoint, delta1: &Ratio, delta2: &Ratio) -> bool {
        let (xs, ys) = (&self.red.x_given_y, &self.red.y_given_x);
        if a.0 == b.0 {
            let inter = xs[a.1 as usize].intersection(&xs[b.1 as usize]);
            !inter.is_empty() && self.normalized(Side::X, &inter) > *delta1
        } else if a.1 == b.1 {
            let inter = ys[a.0 as usize].intersection(&ys[b.0 as usize]);
            !inter.is_empty() && self.normalized(Side::Y, &inter) > *delta2
        } else {
            false
        }
    }

    pub fn taxicab_family(&self, delta1: &Ratio, delta2: &Ratio) -> TaxicabFamily {
        let points = self.joint_points();
        let mut uf = UnionFind::<usize>::new(points.len());
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                if self.taxicab_step(points[a], points[b], delta1, delta2) {
                    uf.union(a, b);
                }
            }
        }
        let labels = uf.into_labeling();
        let mut groups: std::collections::BTreeMap<usize, BTreeSet<JointPoint>> = Default::default();
        for (p, l) in points.iter().zip(labels) {
            groups.entry(l).or_default().insert(*p);
        }
        let mut members: Vec<BTreeSet<JointPoint>> = groups.into_values().collect();
        members.sort();

        let checks = self.check_taxicab(&members, delta1, delta2);
        let exists =
            checks.holds_row_and_column && checks.projections_within_levels && checks.rows_and_columns_contained;
        let sets = members
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&(i, j)| {
                        (
                            label(&self.red.x_points[i as usize]),
                            label(&self.red.y_points[j as usize]),
                        )
                    })
                    .collect()
            })
            .collect();
        TaxicabFamily {
            sets,
            deltas: (delta1.clone(), delta2.clone()),
            exists,
            checks,
            members,
        }
    }

    fn check_taxicab(&self, members: &[BTreeSet<JointPoint>], delta1: &Ratio, delta2: &Ratio) -> TaxicabChecks {
        let rows: Vec<BTreeSet<JointPoint>> = self
            .red
            .x_given_y
            .iter()
            .enumerate()
            .filter(|(_, xs)| !xs.is_empty())
            .map(|(j, xs)| xs.iter().map(|i| (i, j as u32)).collect())
            .collect();
        let columns: Vec<BTreeSet<JointPoint>> = self
            .red
            .y_given_x
            .iter()
            .enumerate()
            .filter(|(_, ys)| !ys.is_empty())
            .map(|(i, ys)| ys.iter().map(|j| (i as u32, j)).collect())
            .collect();

        let holds = members
            .iter()
            .all(|s| rows.iter().any(|r| r.is_subset(s)) && columns.iter().any(|c| c.is_subset(s)));
        let contained = rows
            .iter()
            .chain(&columns)
            .all(|r| members.iter().any(|s| r.is_subset(s)));

        let project = |s: &BTreeSet<JointPoint>| -> (IndexSet, IndexSet) {
            (s.iter().map(|p| p.0).collect(), s.iter().map(|p| p.1).collect())
        };
        let projections: Vec<(IndexSet, IndexSet)> = members.iter().map(project).collect();
        let mut within = true;
        for (k, (ax, ay)) in projections.iter().enumerate() {
            for (bx, by) in &projections[k + 1..] {
                if self.normalized(Side::X, &ax.intersection(bx)) > *delta1
                    || self.normalized(Side::Y, &ay.intersection(by)) > *delta2
                {
                    within = false;
                }
            }
        }
        TaxicabChecks {
            holds_row_and_column: holds,
            projections_within_levels: within,
            rows_and_columns_contained: contained,
        }
    }
}
