//! Information of a product pair against the sum over its factors.

use serde::Serialize;

use super::product::{mixed_tuples, product_uncertainty, tuple_label, FAMILY_POINT_LIMIT};
use super::single_letter::Condition;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::infocalc::{Analysis, OverlapFamily};
use crate::ratio::Ratio;
use crate::uvcore::{PointLabel, ReducedPair, Side, UncertainPair, UncertaintyFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TensorStatus {
    Holds,
    Violated,
    /// A hypothesis failed, so nothing is claimed.
    Skipped,
}

/// Properties of the product of the factor families, checked directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFamilyCheck {
    pub sets: usize,
    pub covers: bool,
    pub sets_connected: bool,
    pub each_set_holds_a_range: bool,
    pub each_range_inside_a_set: bool,
    /// delta times the largest normalized factor set to the power n - 1.
    pub overlap_bound: Ratio,
    pub overlap_within_bound: bool,
}

impl ProductFamilyCheck {
    pub fn passes(&self) -> bool {
        self.covers
            && self.sets_connected
            && self.each_set_holds_a_range
            && self.each_range_inside_a_set
            && self.overlap_within_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorReport {
    pub status: TensorStatus,
    pub delta: Ratio,
    pub factors: usize,
    pub hypotheses: Vec<Condition>,
    /// Information of the product pair at delta^n.
    pub lhs: Option<Bits>,
    /// Sum of factor informations at delta, as the product of counts.
    pub rhs: Option<Bits>,
    pub factor_counts: Vec<u64>,
    pub inequality_holds: Option<bool>,
    /// Equality is required at delta = 0.
    pub equality_holds: Option<bool>,
    pub product_family: Option<ProductFamilyCheck>,
}

fn cond(name: &'static str, holds: bool, detail: impl Into<String>) -> Condition {
    Condition {
        name,
        holds,
        detail: detail.into(),
    }
}

fn symbol_labels(points: &[PointLabel]) -> Result<Vec<crate::uvcore::Symbol>> {
    points
        .iter()
        .map(|p| match p {
            PointLabel::Symbol(s) => Ok(s.clone()),
            PointLabel::Piece { .. } => Err(Error::IncompatibleGround("product pairs need finite grounds".into())),
        })
        .collect()
}

fn index_of(tuple: &[usize], radices: &[usize]) -> u32 {
    tuple.iter().zip(radices).fold(0usize, |acc, (&d, &r)| acc * r + d) as u32
}

/// The product pair of the factors, with the x side counted and the y side
/// measured by the product functional.
fn product_analysis(factors: &[Analysis], m: &UncertaintyFunction) -> Result<Analysis> {
    let xr: Vec<usize> = factors.iter().map(|a| a.len(Side::X)).collect();
    let yr: Vec<usize> = factors.iter().map(|a| a.len(Side::Y)).collect();
    let y_points: u128 = yr.iter().map(|&r| r as u128).product();
    if y_points > FAMILY_POINT_LIMIT {
        return Err(Error::HorizonTooLarge {
            horizon: factors.len() as u32,
            points: y_points,
            limit: FAMILY_POINT_LIMIT,
        });
    }
    let x_labels = factors
        .iter()
        .map(|a| symbol_labels(a.reduced().points(Side::X)))
        .collect::<Result<Vec<_>>>()?;
    let y_labels = factors
        .iter()
        .map(|a| symbol_labels(a.reduced().points(Side::Y)))
        .collect::<Result<Vec<_>>>()?;
    let xs = mixed_tuples(&xr);
    let mut links = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let sections: Vec<Vec<usize>> = x
            .iter()
            .zip(factors)
            .map(|(&xi, a)| a.reduced().y_given_x[xi].iter().map(|j| j as usize).collect())
            .collect();
        let mut partial = vec![Vec::new()];
        for sec in &sections {
            partial = partial
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    sec.iter().map(move |&j| {
                        let mut next = t.clone();
                        next.push(j);
                        next
                    })
                })
                .collect();
        }
        links.extend(partial.iter().map(|t| (i as u32, index_of(t, &yr))));
    }
    let label = |tuple: &[usize], labels: &[Vec<crate::uvcore::Symbol>]| {
        PointLabel::Symbol(tuple_label(tuple.iter().zip(labels).map(|(&d, l)| &l[d])))
    };
    let red = ReducedPair::from_links(
        xs.iter().map(|t| label(t, &x_labels)).collect(),
        mixed_tuples(&yr).iter().map(|t| label(t, &y_labels)).collect(),
        &links,
    );
    let mx = UncertaintyFunction::cardinality(xs.len() as u64, 1).bind(&red.x_points)?;
    let my = product_uncertainty(m, factors.len() as u32)?.bind(&red.y_points)?;
    Ok(Analysis::from_parts(red, mx, my))
}

/// Checks the product of the factor families against the product pair.
fn check_product_family(
    factors: &[Analysis],
    families: &[OverlapFamily],
    product: &Analysis,
    delta: &Ratio,
    level: &Ratio,
) -> ProductFamilyCheck {
    let yr: Vec<usize> = factors.iter().map(|a| a.len(Side::Y)).collect();
    let choices: Vec<usize> = families.iter().map(|f| f.len()).collect();
    let sets: Vec<IndexSet> = mixed_tuples(&choices)
        .iter()
        .map(|pick| {
            let coords: Vec<Vec<usize>> = pick
                .iter()
                .zip(families)
                .map(|(&k, f)| f.members()[k].iter().map(|j| j as usize).collect())
                .collect();
            let mut partial = vec![Vec::new()];
            for c in &coords {
                partial = partial
                    .into_iter()
                    .flat_map(|t: Vec<usize>| {
                        c.iter().map(move |&j| {
                            let mut next = t.clone();
                            next.push(j);
                            next
                        })
                    })
                    .collect();
            }
            partial.iter().map(|t| index_of(t, &yr)).collect()
        })
        .collect();

    let total = IndexSet::full(product.len(Side::Y));
    let covers = sets.iter().fold(IndexSet::new(), |acc, s| acc.union(s)) == total;
    let ranges = product.distinct_sections(Side::Y);
    let holds_range = sets.iter().all(|s| ranges.iter().any(|r| r.is_subset(s)));
    let inside = ranges.iter().all(|r| sets.iter().any(|s| r.is_subset(s)));
    let labels = product.point_labels(Side::Y, level);
    let connected = sets.iter().all(|s| {
        s.iter().all(|p| {
            s.iter()
                .all(|q| p >= q || labels[p as usize].intersects(&labels[q as usize]))
        })
    });

    let hat = factors
        .iter()
        .zip(families)
        .flat_map(|(a, f)| f.members().iter().map(move |s| a.normalized(Side::Y, s)))
        .max()
        .unwrap_or_else(Ratio::zero);
    let overlap_bound = delta * &hat.pow(factors.len() as u32 - 1);
    let within = sets.iter().enumerate().all(|(k, a)| {
        sets[k + 1..]
            .iter()
            .all(|b| product.normalized(Side::Y, &a.intersection(b)) <= overlap_bound)
    });
    ProductFamilyCheck {
        sets: sets.len(),
        covers,
        sets_connected: connected,
        each_set_holds_a_range: holds_range,
        each_range_inside_a_set: inside,
        overlap_bound,
        overlap_within_bound: within,
    }
}

/// Compares the information of the product pair at delta^n with the sum of
/// the factor informations at delta. Any failed hypothesis gives `Skipped`.
pub fn tensorization_check(
    base_pairs: &[UncertainPair],
    m: &UncertaintyFunction,
    delta: &Ratio,
) -> Result<TensorReport> {
    if base_pairs.is_empty() {
        return Err(Error::ZeroHorizon);
    }
    let n = base_pairs.len() as u32;
    let mut report = TensorReport {
        status: TensorStatus::Skipped,
        delta: delta.clone(),
        factors: base_pairs.len(),
        hypotheses: Vec::new(),
        lhs: None,
        rhs: None,
        factor_counts: Vec::new(),
        inequality_holds: None,
        equality_holds: None,
        product_family: None,
    };

    let (product_rule, union_bound) = match m {
        UncertaintyFunction::CardinalityPower { exponent, .. } => (true, *exponent == 1),
        _ => (false, false),
    };
    report
        .hypotheses
        .push(cond("product rule", product_rule, m.to_string()));
    report.hypotheses.push(cond("union bound", union_bound, m.to_string()));
    if !product_rule || !union_bound || delta.is_negative() {
        return Ok(report);
    }

    let mut factors = Vec::new();
    for pair in base_pairs {
        let nx = pair.reduce().x_points.len() as u64;
        factors.push(Analysis::new(pair, &UncertaintyFunction::cardinality(nx, 1), m)?);
    }

    // delta < min_i,x m(Y(i)|x) / m(ground) over max_i |X(i)|
    let mut least: Option<Ratio> = None;
    for (pair, a) in base_pairs.iter().zip(&factors) {
        let ground = m.measure(&pair.y_ground().whole())?;
        for sec in a.reduced().y_given_x.iter() {
            let v = a.measure(Side::Y, sec) / &ground;
            least = Some(least.map_or(v.clone(), |l| l.min(v)));
        }
    }
    let widest = factors.iter().map(|a| a.len(Side::X)).max().unwrap_or(1);
    let bound = least.expect("pairs are nonempty") / Ratio::from_u64(widest as u64);
    report.hypotheses.push(cond(
        "level below range bound",
        *delta < bound,
        format!("{delta} < {bound}"),
    ));

    let families: Vec<Option<OverlapFamily>> = factors.iter().map(|a| a.overlap_family(Side::Y, delta)).collect();
    let all_factors = families.iter().all(Option::is_some);
    report.hypotheses.push(cond(
        "every factor has a family",
        all_factors,
        format!(
            "{} of {} factors",
            families.iter().filter(|f| f.is_some()).count(),
            families.len()
        ),
    ));

    let level = delta.pow(n);
    let product = product_analysis(&factors, m)?;
    let product_family = product.overlap_family(Side::Y, &level);
    report.hypotheses.push(cond(
        "product pair (dis)associated",
        product_family.is_some(),
        match &product_family {
            Some(f) => format!("{:?} at {level}", f.regime),
            None => format!("neither at {level}"),
        },
    ));
    if report.hypotheses.iter().any(|h| !h.holds) {
        return Ok(report);
    }

    let families: Vec<OverlapFamily> = families.into_iter().map(Option::unwrap).collect();
    let lhs = product_family.expect("checked above").len() as u64;
    report.factor_counts = families.iter().map(|f| f.len() as u64).collect();
    let rhs = report
        .factor_counts
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c))
        .expect("small factor counts");
    report.lhs = Some(Bits::from_count(lhs));
    report.rhs = Some(Bits::from_count(rhs));
    report.inequality_holds = Some(lhs <= rhs);
    if delta.is_zero() {
        report.equality_holds = Some(lhs == rhs);
    }
    let check = check_product_family(&factors, &families, &product, delta, &level);
    let ok = lhs <= rhs && report.equality_holds != Some(false) && check.passes();
    report.product_family = Some(check);
    report.status = if ok {
        TensorStatus::Holds
    } else {
        TensorStatus::Violated
    };
    Ok(report)
}
