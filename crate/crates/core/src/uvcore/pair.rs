use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ground::{GroundPoint, GroundSet, GroundSubset};
use super::interval::{Interval, IntervalUnion};
use super::measure::PointLabel;
use super::symbol::Symbol;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::ratio::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// The joint range, either a finite relation or per-symbol interval cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Joint {
    Relation { pairs: BTreeSet<(Symbol, Symbol)> },
    Cells { cells: BTreeMap<Symbol, IntervalUnion> },
}

/// A joint range over a finite x ground and a finite or interval y ground.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairRepr")]
pub struct UncertainPair {
    x: GroundSet,
    y: GroundSet,
    joint: Joint,
}

#[derive(Deserialize)]
struct PairRepr {
    x: GroundSet,
    y: GroundSet,
    joint: Joint,
}

impl TryFrom<PairRepr> for UncertainPair {
    type Error = Error;
    fn try_from(r: PairRepr) -> Result<Self> {
        UncertainPair::new(r.x.validated()?, r.y.validated()?, r.joint)
    }
}

impl UncertainPair {
    pub fn new(x: GroundSet, y: GroundSet, joint: Joint) -> Result<Self> {
        let x_labels = x
            .labels()
            .ok_or_else(|| Error::InvalidPair("x ground must be finite".into()))?;
        let known_x = |s: &Symbol| x_labels.binary_search(s).is_ok();
        match (&y, &joint) {
            (GroundSet::Finite { labels: y_labels }, Joint::Relation { pairs }) => {
                if pairs.is_empty() {
                    return Err(Error::EmptyPair);
                }
                for (a, b) in pairs {
                    if !known_x(a) {
                        return Err(Error::InvalidPair(format!("x symbol {a} not in ground")));
                    }
                    if y_labels.binary_search(b).is_err() {
                        return Err(Error::InvalidPair(format!("y symbol {b} not in ground")));
                    }
                }
            }
            (GroundSet::Intervals { intervals }, Joint::Cells { cells }) => {
                if cells.is_empty() {
                    return Err(Error::EmptyPair);
                }
                for (a, cell) in cells {
                    if !known_x(a) {
                        return Err(Error::InvalidPair(format!("x symbol {a} not in ground")));
                    }
                    if cell.is_empty() {
                        return Err(Error::InvalidPair(format!("cell of {a} is empty")));
                    }
                    if !cell.is_subset(intervals) {
                        return Err(Error::InvalidPair(format!("cell of {a} leaves the y ground")));
                    }
                }
            }
            _ => return Err(Error::InvalidPair("joint kind does not match the y ground kind".into())),
        }
        Ok(UncertainPair { x, y, joint })
    }

    pub fn relation<I, A, B>(x: GroundSet, y: GroundSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Symbol>,
        B: Into<Symbol>,
    {
        let pairs = pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        UncertainPair::new(x, y, Joint::Relation { pairs })
    }

    pub fn cells<I, A>(x: GroundSet, y: IntervalUnion, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, IntervalUnion)>,
        A: Into<Symbol>,
    {
        let mut map: BTreeMap<Symbol, IntervalUnion> = BTreeMap::new();
        for (a, cell) in cells {
            let key = a.into();
            let merged = match map.remove(&key) {
                Some(prev) => prev.union(&cell),
                None => cell,
            };
            map.insert(key, merged);
        }
        UncertainPair::new(x, GroundSet::intervals(y), Joint::Cells { cells: map })
    }

    pub fn x_ground(&self) -> &GroundSet {
        &self.x
    }

    pub fn y_ground(&self) -> &GroundSet {
        &self.y
    }

    pub fn joint(&self) -> &Joint {
        &self.joint
    }

    pub fn marginal_range(&self, side: Side) -> GroundSubset {
        match (&self.joint, side) {
            (Joint::Relation { pairs }, Side::X) => {
                GroundSubset::Finite(pairs.iter().map(|(a, _)| a.clone()).collect())
            }
            (Joint::Relation { pairs }, Side::Y) => {
                GroundSubset::Finite(pairs.iter().map(|(_, b)| b.clone()).collect())
            }
            (Joint::Cells { cells }, Side::X) => GroundSubset::Finite(cells.keys().cloned().collect()),
            (Joint::Cells { cells }, Side::Y) => {
                GroundSubset::Intervals(cells.values().fold(IntervalUnion::empty(), |acc, c| acc.union(c)))
            }
        }
    }

    /// The section of `side` at a point of the opposite side.
    pub fn conditional_range(&self, side: Side, point: &GroundPoint) -> Result<GroundSubset> {
        let outside = || Error::PointOutsideRange(point.to_string());
        if !self.marginal_range(side.other()).contains(point) {
            return Err(outside());
        }
        Ok(match (&self.joint, side, point) {
            (Joint::Relation { pairs }, Side::Y, GroundPoint::Symbol(x)) => {
                GroundSubset::Finite(pairs.iter().filter(|(a, _)| a == x).map(|(_, b)| b.clone()).collect())
            }
            (Joint::Relation { pairs }, Side::X, GroundPoint::Symbol(y)) => {
                GroundSubset::Finite(pairs.iter().filter(|(_, b)| b == y).map(|(a, _)| a.clone()).collect())
            }
            (Joint::Cells { cells }, Side::Y, GroundPoint::Symbol(x)) => GroundSubset::Intervals(cells[x].clone()),
            (Joint::Cells { cells }, Side::X, GroundPoint::Coord(t)) => GroundSubset::Finite(
                cells
                    .iter()
                    .filter(|(_, c)| c.contains(t))
                    .map(|(a, _)| a.clone())
                    .collect(),
            ),
            _ => return Err(outside()),
        })
    }

    /// Finite view of the pair: interval axes are cut into the pieces of the
    /// cell-endpoint arrangement, on which every section is constant.
    pub fn reduce(&self) -> ReducedPair {
        match &self.joint {
            Joint::Relation { pairs } => {
                let xs: Vec<Symbol> = pairs
                    .iter()
                    .map(|(a, _)| a.clone())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let ys: Vec<Symbol> = pairs
                    .iter()
                    .map(|(_, b)| b.clone())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let xi: BTreeMap<&Symbol, u32> = xs.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
                let yi: BTreeMap<&Symbol, u32> = ys.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
                let links: Vec<(u32, u32)> = pairs.iter().map(|(a, b)| (xi[a], yi[b])).collect();
                ReducedPair::from_links(
                    xs.into_iter().map(PointLabel::Symbol).collect(),
                    ys.into_iter().map(PointLabel::Symbol).collect(),
                    &links,
                )
            }
            Joint::Cells { cells } => {
                let xs: Vec<Symbol> = cells.keys().cloned().collect();
                let mut cuts: Vec<Ratio> = cells.values().flat_map(|c| c.endpoints()).collect();
                cuts.sort();
                cuts.dedup();
                let mut pieces: Vec<(PointLabel, Ratio)> = Vec::new();
                for (k, p) in cuts.iter().enumerate() {
                    pieces.push((
                        PointLabel::Piece {
                            span: Interval::point(p.clone()),
                            open: false,
                        },
                        p.clone(),
                    ));
                    if let Some(q) = cuts.get(k + 1) {
                        let mid = (p + q) / Ratio::from_int(2);
                        let span = Interval {
                            lo: p.clone(),
                            hi: q.clone(),
                        };
                        pieces.push((PointLabel::Piece { span, open: true }, mid));
                    }
                }
                let mut ys = Vec::new();
                let mut links = Vec::new();
                for (label, rep) in pieces {
                    let members: Vec<u32> = cells
                        .values()
                        .enumerate()
                        .filter(|(_, c)| c.contains(&rep))
                        .map(|(i, _)| i as u32)
                        .collect();
                    if members.is_empty() {
                        continue;
                    }
                    let j = ys.len() as u32;
                    ys.push(label);
                    links.extend(members.into_iter().map(|i| (i, j)));
                }
                ReducedPair::from_links(xs.into_iter().map(PointLabel::Symbol).collect(), ys, &links)
            }
        }
    }
}

/// A pair over indexed points with both families of sections precomputed.
#[derive(Clone, Debug)]
pub struct ReducedPair {
    pub x_points: Vec<PointLabel>,
    pub y_points: Vec<PointLabel>,
    /// `x_given_y[j]` is the x section at y point `j`.
    pub x_given_y: Vec<IndexSet>,
    /// `y_given_x[i]` is the y section at x point `i`.
    pub y_given_x: Vec<IndexSet>,
}

impl ReducedPair {
    pub fn from_links(x_points: Vec<PointLabel>, y_points: Vec<PointLabel>, links: &[(u32, u32)]) -> Self {
        let mut xy = vec![Vec::new(); y_points.len()];
        let mut yx = vec![Vec::new(); x_points.len()];
        for &(i, j) in links {
            xy[j as usize].push(i);
            yx[i as usize].push(j);
        }
        ReducedPair {
            x_points,
            y_points,
            x_given_y: xy.into_iter().map(IndexSet::from_iter).collect(),
            y_given_x: yx.into_iter().map(IndexSet::from_iter).collect(),
        }
    }

    pub fn points(&self, side: Side) -> &[PointLabel] {
        match side {
            Side::X => &self.x_points,
            Side::Y => &self.y_points,
        }
    }

    /// Sections of `side`, indexed by the points of the other side.
    pub fn sections(&self, side: Side) -> &[IndexSet] {
        match side {
            Side::X => &self.x_given_y,
            Side::Y => &self.y_given_x,
        }
    }

    /// Maps reduced points of `side` back to a ground subset.
    pub fn to_subset(&self, side: Side, set: &IndexSet) -> GroundSubset {
        let pts = self.points(side);
        if pts.iter().all(|p| matches!(p, PointLabel::Symbol(_))) {
            return GroundSubset::Finite(
                set.iter()
                    .map(|i| match &pts[i as usize] {
                        PointLabel::Symbol(s) => s.clone(),
                        PointLabel::Piece { .. } => unreachable!(),
                    })
                    .collect(),
            );
        }
        GroundSubset::Intervals(IntervalUnion::new(
            set.iter()
                .filter_map(|i| match &pts[i as usize] {
                    PointLabel::Piece { span, .. } => Some(span.clone()),
                    PointLabel::Symbol(_) => None,
                })
                .collect(),
        ))
    }
}
