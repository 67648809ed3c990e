use serde::Serialize;

use crate::bits::Rate;
use crate::chancap::{solve, BoundChannel, Channel, EquivocationTable};
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::ratio::Ratio;
use crate::uvcore::{Symbol, UncertaintyFunction};

/// Most product inputs the clique search will take on.
pub const CLIQUE_POINT_LIMIT: u128 = 512;
/// Most product points a family construction will take on.
pub const FAMILY_POINT_LIMIT: u128 = 7000;

/// The n-fold functional on product sets. Only the cardinality power family
/// factors over products; any functional is its own 1-fold product.
pub fn product_uncertainty(m: &UncertaintyFunction, n: u32) -> Result<UncertaintyFunction> {
    if n == 0 {
        return Err(Error::ZeroHorizon);
    }
    if n == 1 {
        return Ok(m.clone());
    }
    match m {
        UncertaintyFunction::CardinalityPower { base, exponent } => {
            let base = base.checked_pow(n).ok_or(Error::HorizonTooLarge {
                horizon: n,
                points: (*base as u128).saturating_pow(n),
                limit: u64::MAX as u128,
            })?;
            Ok(UncertaintyFunction::CardinalityPower {
                base,
                exponent: *exponent,
            })
        }
        other => Err(Error::NonProductUncertainty(other.to_string())),
    }
}

/// The label of a product point: coordinate labels joined by commas.
pub fn tuple_label<'a, I: IntoIterator<Item = &'a Symbol>>(parts: I) -> Symbol {
    let parts: Vec<&str> = parts.into_iter().map(Symbol::as_str).collect();
    Symbol::new(parts.join(","))
}

/// Every length-`n` tuple over `0..radix`, in lexicographic order.
pub(crate) fn tuples(radix: usize, n: u32) -> Vec<Vec<usize>> {
    mixed_tuples(&vec![radix; n as usize])
}

/// Every tuple with coordinate k in `0..radices[k]`, in lexicographic order;
/// the position of a tuple is its mixed-radix value.
pub(crate) fn mixed_tuples(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &radix in radices {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..radix).map(move |d| {
                    let mut next = t.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    out
}

pub(crate) fn check_points(horizon: u32, radix: usize, limit: u128) -> Result<()> {
    let points = (radix as u128).checked_pow(horizon).unwrap_or(u128::MAX);
    if points > limit {
        return Err(Error::HorizonTooLarge { horizon, points, limit });
    }
    Ok(())
}

/// A stationary memoryless channel used `horizon` times: the image of a
/// tuple is the product of the coordinate images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductChannel {
    base: Channel,
    horizon: u32,
}

/// Capacity at one horizon, carried as (count, horizon).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizonRate {
    pub horizon: u32,
    pub delta: Ratio,
    pub count: u64,
    pub rate: Rate,
    pub bits_per_symbol: String,
    pub witness: Vec<Symbol>,
}

/// The rate at one horizon next to the product-space information sup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizonCheck {
    pub rate: HorizonRate,
    pub oracle_count: u64,
    pub agree: bool,
}

impl ProductChannel {
    pub fn new(base: &Channel, horizon: u32) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::ZeroHorizon);
        }
        Ok(ProductChannel {
            base: base.clone(),
            horizon,
        })
    }

    pub fn base(&self) -> &Channel {
        &self.base
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    /// Equivocation table over tuples of image-class representatives. With a
    /// product functional every entry is the product of coordinate entries.
    pub fn table(&self, m: &UncertaintyFunction) -> Result<(EquivocationTable, Vec<Vec<usize>>)> {
        product_uncertainty(m, self.horizon)?;
        let reps = self.base.image_class_reps();
        check_points(self.horizon, reps.len(), CLIQUE_POINT_LIMIT)?;
        let bound = BoundChannel::new(&self.base, m)?;
        let base = bound.table();
        let points: Vec<Vec<usize>> = tuples(reps.len(), self.horizon)
            .into_iter()
            .map(|t| t.into_iter().map(|k| reps[k]).collect())
            .collect();
        let e: Vec<Vec<Ratio>> = points
            .iter()
            .map(|a| {
                points
                    .iter()
                    .map(|b| a.iter().zip(b).map(|(&i, &j)| base.get(i, j).clone()).product())
                    .collect()
            })
            .collect();
        Ok((EquivocationTable::new(e, base.v_min().pow(self.horizon)), points))
    }

    fn label(&self, point: &[usize]) -> Symbol {
        tuple_label(point.iter().map(|&i| &self.base.inputs()[i]))
    }

    pub fn rate(&self, m: &UncertaintyFunction, delta: &Ratio) -> Result<HorizonRate> {
        let (table, points) = self.table(m)?;
        let out = solve(&table, delta)?;
        let rate = Rate::new(out.count as u64, self.horizon);
        Ok(HorizonRate {
            horizon: self.horizon,
            delta: delta.clone(),
            count: out.count as u64,
            bits_per_symbol: rate.per_symbol(),
            rate,
            witness: out.witness.iter().map(|&k| self.label(&points[k])).collect(),
        })
    }

    /// The product channel written out over representative input tuples and
    /// every output tuple, with the matching product functional.
    pub fn materialize(&self, m: &UncertaintyFunction) -> Result<(Channel, UncertaintyFunction)> {
        let pm = product_uncertainty(m, self.horizon)?;
        let reps = self.base.image_class_reps();
        check_points(self.horizon, reps.len(), CLIQUE_POINT_LIMIT)?;
        check_points(self.horizon, self.base.outputs().len(), FAMILY_POINT_LIMIT)?;
        let ys = self.base.outputs();
        let imgs = self.base.images();
        let inputs: Vec<Vec<usize>> = tuples(reps.len(), self.horizon)
            .into_iter()
            .map(|t| t.into_iter().map(|k| reps[k]).collect())
            .collect();
        let map: Vec<(Symbol, Vec<Symbol>)> = inputs
            .iter()
            .map(|x| {
                let mut image = vec![Vec::<&Symbol>::new()];
                for &i in x {
                    image = image
                        .into_iter()
                        .flat_map(|t| {
                            imgs[i].iter().map(move |j| {
                                let mut next = t.clone();
                                next.push(&ys[j as usize]);
                                next
                            })
                        })
                        .collect();
                }
                (self.label(x), image.into_iter().map(tuple_label).collect())
            })
            .collect();
        let outputs: Vec<Symbol> = tuples(ys.len(), self.horizon)
            .into_iter()
            .map(|t| tuple_label(t.iter().map(|&j| &ys[j])))
            .collect();
        let x: Vec<Symbol> = map.iter().map(|(s, _)| s.clone()).collect();
        Ok((Channel::new(x, outputs, map)?, pm))
    }

    /// Rate from the clique search and the sup of mutual information over
    /// product codebooks, which must agree.
    pub fn check(&self, m: &UncertaintyFunction, delta: &Ratio) -> Result<HorizonCheck> {
        let rate = self.rate(m, delta)?;
        let (channel, pm) = self.materialize(m)?;
        let oracle_count = BoundChannel::new(&channel, &pm)?.mi_sup_oracle(delta)?.bits.count();
        Ok(HorizonCheck {
            agree: oracle_count == rate.count,
            rate,
            oracle_count,
        })
    }
}

/// Union of the images of `inputs` as an output index set.
pub(crate) fn image_union(ch: &Channel, inputs: &[usize]) -> IndexSet {
    inputs
        .iter()
        .fold(IndexSet::new(), |acc, &i| acc.union(&ch.images()[i]))
}
