//! Brute-force side of the coding theorem: the best mutual information over
//! every codebook and every admissible level, compared against the solver.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::capacity::CapacityResult;
use super::channel::{BoundChannel, Codebook};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::infocalc::{Analysis, MiStatus};
use crate::ratio::Ratio;
use crate::uvcore::{PointLabel, ReducedPair, Side, UncertaintyFunction};

/// Largest alphabet (after merging inputs with identical images) that the
/// oracle enumerates exhaustively.
pub const ORACLE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiSupResult {
    pub bits: Bits,
    pub codebook: Codebook,
    /// The scaled level before division by the codebook size.
    pub delta_tilde: Ratio,
    /// delta_tilde / |codebook|, the level the family is built at.
    pub level: Ratio,
    pub status: MiStatus,
    pub codebooks_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodingRow {
    pub delta: Ratio,
    pub capacity: CapacityResult,
    pub feasible_sup: MiSupResult,
    /// Sup taken over every codebook and level, feasible or not.
    pub unrestricted_count: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodingReport {
    pub rows: Vec<CodingRow>,
    pub mismatches: usize,
}

#[derive(Clone, Debug)]
struct Best {
    count: u64,
    mask: u64,
    delta_tilde: Ratio,
    level: Ratio,
    status: MiStatus,
}

impl BoundChannel {
    /// The pair induced by the inputs at `xs`, as an analysis view with the
    /// channel's uncertainty on the output side.
    pub(crate) fn induced_analysis(&self, xs: &[usize]) -> Result<Analysis> {
        let ch = self.channel();
        let imgs = ch.images();
        let ys = xs.iter().fold(IndexSet::new(), |acc, &x| acc.union(&imgs[x]));
        let local: BTreeMap<u32, u32> = ys.iter().enumerate().map(|(k, j)| (j, k as u32)).collect();
        let links: Vec<(u32, u32)> = xs
            .iter()
            .enumerate()
            .flat_map(|(a, &x)| imgs[x].iter().map(move |j| (a as u32, j)))
            .map(|(a, j)| (a, local[&j]))
            .collect();
        let red = ReducedPair::from_links(
            xs.iter().map(|&x| PointLabel::Symbol(ch.inputs()[x].clone())).collect(),
            ys.iter()
                .map(|j| PointLabel::Symbol(ch.outputs()[j as usize].clone()))
                .collect(),
            &links,
        );
        let mx = UncertaintyFunction::cardinality(xs.len() as u64, 1).bind(&red.x_points)?;
        let my = self.uncertainty().bind(&red.y_points)?;
        Ok(Analysis::from_parts(red, mx, my))
    }

    /// Inputs the oracle enumerates: all of them when few enough, otherwise
    /// the least input of each image class.
    fn oracle_inputs(&self) -> Result<Vec<usize>> {
        let imgs = self.channel().images();
        if imgs.len() <= ORACLE_LIMIT {
            return Ok((0..imgs.len()).collect());
        }
        let reps = self.channel().image_class_reps();
        if reps.len() > ORACLE_LIMIT {
            return Err(Error::AlphabetTooLarge {
                size: reps.len(),
                limit: ORACLE_LIMIT,
            });
        }
        Ok(reps)
    }

    /// Levels at which the family on the output side can change, capped by
    /// the admissible endpoint; `with_gaps` adds the midpoints between them.
    fn candidate_levels(&self, analysis: &Analysis, size: usize, delta: &Ratio, with_gaps: bool) -> Vec<Ratio> {
        let covered = analysis.total(Side::Y) / self.total();
        let endpoint = delta / &covered / Ratio::from_u64(size as u64);
        let mut levels: Vec<Ratio> = analysis
            .association_set(Side::Y)
            .into_iter()
            .filter(|a| *a <= endpoint)
            .collect();
        levels.push(Ratio::zero());
        levels.push(endpoint);
        levels.sort();
        levels.dedup();
        if with_gaps {
            let mids: Vec<Ratio> = levels
                .windows(2)
                .map(|w| (&w[0] + &w[1]) / Ratio::from_int(2))
                .collect();
            levels.extend(mids);
            levels.sort();
        }
        levels
    }

    fn best_for(&self, inputs: &[usize], mask: u64, delta: &Ratio, unrestricted: bool) -> Result<Best> {
        let xs: Vec<usize> = inputs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let analysis = self.induced_analysis(&xs)?;
        let size = Ratio::from_u64(xs.len() as u64);
        let mut best: Option<Best> = None;
        for level in self.candidate_levels(&analysis, xs.len(), delta, unrestricted) {
            let mi = analysis.mutual_information(Side::Y, &level);
            if !unrestricted && mi.status == MiStatus::NoFamily {
                continue;
            }
            let count = mi.bits.count();
            if best.as_ref().is_none_or(|b| count > b.count) {
                best = Some(Best {
                    count,
                    mask,
                    delta_tilde: &level * &size,
                    level,
                    status: mi.status,
                });
            }
        }
        // A lone codeword is always associated, so the feasible set is never empty.
        Ok(best.unwrap_or(Best {
            count: 1,
            mask,
            delta_tilde: Ratio::zero(),
            level: Ratio::zero(),
            status: MiStatus::NoFamily,
        }))
    }

    fn sup_over_codebooks(&self, delta: &Ratio, unrestricted: bool) -> Result<(Best, usize, Vec<usize>)> {
        self.table().check_delta(delta)?;
        let inputs = self.oracle_inputs()?;
        let masks: Vec<u64> = (1..1u64 << inputs.len()).collect();
        let results = masks
            .par_iter()
            .map(|&mask| self.best_for(&inputs, mask, delta, unrestricted))
            .collect::<Result<Vec<Best>>>()?;
        let best = results
            .into_iter()
            .reduce(|a, b| if b.count > a.count { b } else { a })
            .expect("at least one codebook");
        Ok((best, masks.len(), inputs))
    }

    /// Sup of I over codebooks X and levels d <= delta/m(Y range) with X in
    /// the feasible set at d, evaluated at every breakpoint.
    pub fn mi_sup_oracle(&self, delta: &Ratio) -> Result<MiSupResult> {
        let (best, checked, inputs) = self.sup_over_codebooks(delta, false)?;
        let symbols = self.channel().inputs();
        let codebook = Codebook::new(
            inputs
                .iter()
                .enumerate()
                .filter(|(b, _)| best.mask >> b & 1 == 1)
                .map(|(_, &x)| symbols[x].clone()),
        )?;
        Ok(MiSupResult {
            bits: Bits::from_count(best.count),
            codebook,
            delta_tilde: best.delta_tilde,
            level: best.level,
            status: best.status,
            codebooks_checked: checked,
        })
    }

    /// The same sup without the feasibility restriction; codebooks outside
    /// the feasible set contribute zero.
    pub fn mi_sup_unrestricted(&self, delta: &Ratio) -> Result<u64> {
        Ok(self.sup_over_codebooks(delta, true)?.0.count)
    }

    pub fn verify_coding_theorem(&self, grid: &[Ratio]) -> Result<CodingReport> {
        let mut rows = Vec::new();
        for delta in grid {
            let capacity = self.capacity(delta)?;
            let feasible_sup = self.mi_sup_oracle(delta)?;
            let unrestricted_count = self.mi_sup_unrestricted(delta)?;
            let agree =
                capacity.count as u64 == feasible_sup.bits.count() && unrestricted_count == feasible_sup.bits.count();
            rows.push(CodingRow {
                delta: delta.clone(),
                capacity,
                feasible_sup,
                unrestricted_count,
                agree,
            });
        }
        let mismatches = rows.iter().filter(|r| !r.agree).count();
        Ok(CodingReport { rows, mismatches })
    }
}
