//! Adversarial bit-flip channels: every input can come out as any string
//! within a fixed Hamming radius.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Longest strings the ball intersections are enumerated for.
pub const HAMMING_LIMIT: usize = 12;
/// Longest strings a `BitString` can hold.
pub const MAX_BITS: usize = 64;

/// A fixed-length string of bits; the first character is the highest bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString {
    len: usize,
    bits: u64,
}

impl BitString {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::LengthTooLarge(len, MAX_BITS));
        }
        if len < MAX_BITS && bits >> len != 0 {
            return Err(Error::InvalidParameter(format!("{bits:#b} does not fit in {len} bits")));
        }
        Ok(BitString { len, bits })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn distance(&self, other: &BitString) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch(self.len, other.len));
        }
        Ok((self.bits ^ other.bits).count_ones() as usize)
    }
}

impl FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidParameter("empty bit string".into()));
        }
        if s.len() > MAX_BITS {
            return Err(Error::LengthTooLarge(s.len(), MAX_BITS));
        }
        let bits = s.chars().try_fold(0u64, |acc, c| match c {
            '0' => Ok(acc << 1),
            '1' => Ok(acc << 1 | 1),
            _ => Err(Error::InvalidParameter(format!("{s:?} is not a 0/1 string"))),
        })?;
        Ok(BitString { len: s.len(), bits })
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..self.len).rev() {
            f.write_str(if self.bits >> k & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parses newline-separated bit strings, skipping blank lines.
pub fn parse_codebook(text: &str) -> Result<Vec<BitString>> {
    let words: Vec<BitString> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if let Some(w) = words.iter().find(|w| w.len != words[0].len) {
        return Err(Error::LengthMismatch(words[0].len, w.len));
    }
    Ok(words)
}

/// The integer ball radius floor(tau * n).
pub fn radius(tau: &Ratio, n: usize) -> Result<usize> {
    if tau.is_negative() {
        return Err(Error::InvalidParameter(format!("flip fraction {tau} is negative")));
    }
    let r = (tau * &Ratio::from_u64(n as u64)).floor_int();
    Ok(usize::try_from(r).unwrap_or(usize::MAX).min(n))
}

fn diameter(points: &[u64]) -> usize {
    points
        .iter()
        .enumerate()
        .map(|(i, a)| {
            points[i + 1..]
                .iter()
                .map(|b| (a ^ b).count_ones() as usize)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// (diameter + 1) / (n + 1) of a set of n-bit strings, 0 when empty.
fn normalized_size(points: &[u64], n: usize) -> Ratio {
    if points.is_empty() {
        return Ratio::zero();
    }
    Ratio::new(diameter(points) as i64 + 1, n as i64 + 1)
}

/// The least normalized output uncertainty: every ball has the same
/// diameter, min(2r, n).
pub fn hamming_v_min(n: usize, tau: &Ratio) -> Result<Ratio> {
    let r = radius(tau, n)?;
    Ok(Ratio::new((2 * r).min(n) as i64 + 1, n as i64 + 1))
}

/// Equivocation of two inputs: the normalized diameter of the intersection
/// of their radius-floor(tau n) balls, found by enumerating all 2^n strings.
pub fn hamming_equivocation(x1: &BitString, x2: &BitString, tau: &Ratio) -> Result<Ratio> {
    let n = x1.len;
    x1.distance(x2)?;
    if n > HAMMING_LIMIT {
        return Err(Error::LengthTooLarge(n, HAMMING_LIMIT));
    }
    if x1 == x2 {
        return Err(Error::SamePoint(x1.to_string()));
    }
    let r = radius(tau, n)?;
    let within = |a: u64, b: u64| (a ^ b).count_ones() as usize <= r;
    let common: Vec<u64> = (0..1u64 << n)
        .filter(|&y| within(y, x1.bits) && within(y, x2.bits))
        .collect();
    Ok(normalized_size(&common, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairBound {
    pub pair: (BitString, BitString),
    pub distance: usize,
    pub equivocation: Ratio,
    /// Least distance the bound allows: 2r + 1 - delta (n + 1) / |codebook|.
    pub bound: Ratio,
    pub holds: bool,
    /// floor((distance - 1) / 2) flips this pair can absorb.
    pub correctable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HammingReport {
    pub length: usize,
    pub radius: usize,
    pub delta: Ratio,
    pub codebook_size: usize,
    pub pairs: Vec<PairBound>,
    pub min_distance: Option<usize>,
    /// Flips every pair can absorb; None for a single codeword.
    pub correctable: Option<usize>,
    pub all_hold: bool,
}

/// Checks that `codebook` is distinguishable at level delta and that every
/// pair of codewords is at least the guaranteed distance apart.
pub fn hamming_distance_bound(codebook: &[BitString], tau: &Ratio, delta: &Ratio) -> Result<HammingReport> {
    let first = codebook
        .first()
        .ok_or_else(|| Error::InvalidParameter("codebook is empty".into()))?;
    let n = first.len;
    for w in codebook {
        first.distance(w)?;
    }
    for (k, w) in codebook.iter().enumerate() {
        if codebook[..k].contains(w) {
            return Err(Error::InvalidParameter(format!("codeword {w} repeats")));
        }
    }
    let r = radius(tau, n)?;
    let limit = hamming_v_min(n, tau)?;
    if delta.is_negative() || *delta >= limit {
        return Err(Error::DeltaOutOfRange {
            delta: Box::new(delta.clone()),
            limit: Box::new(limit),
        });
    }
    let size = Ratio::from_u64(codebook.len() as u64);
    let threshold = delta / &size;
    let bound = Ratio::from_u64(2 * r as u64 + 1) - delta * &Ratio::from_u64(n as u64 + 1) / &size;

    let pairs: Vec<(usize, usize)> = (0..codebook.len())
        .flat_map(|i| (i + 1..codebook.len()).map(move |j| (i, j)))
        .collect();
    let rows = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (codebook[i], codebook[j]);
            let equivocation = hamming_equivocation(&a, &b, tau)?;
            if equivocation > threshold {
                return Err(Error::NotDistinguishable(a.to_string(), b.to_string()));
            }
            let distance = a.distance(&b)?;
            Ok(PairBound {
                pair: (a, b),
                distance,
                equivocation,
                holds: Ratio::from_u64(distance as u64) >= bound,
                bound: bound.clone(),
                correctable: (distance - 1) / 2,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_distance = rows.iter().map(|p| p.distance).min();
    Ok(HammingReport {
        length: n,
        radius: r,
        delta: delta.clone(),
        codebook_size: codebook.len(),
        all_hold: rows.iter().all(|p| p.holds),
        correctable: min_distance.map(|d| (d - 1) / 2),
        min_distance,
        pairs: rows,
    })
}

/// The greedy lexicographic code of length n and minimum distance d.
pub fn lexicode(n: usize, d: usize) -> Result<Vec<BitString>> {
    if n > HAMMING_LIMIT {
        return Err(Error::LengthTooLarge(n, HAMMING_LIMIT));
    }
    let mut words: Vec<u64> = Vec::new();
    for y in 0..1u64 << n {
        if words.iter().all(|w| (w ^ y).count_ones() as usize >= d) {
            words.push(y);
        }
    }
    words.into_iter().map(|w| BitString::new(n, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::r;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(b("0101").to_string(), "0101");
        assert_eq!(b("0101").bits(), 5);
        assert!("01a".parse::<BitString>().is_err());
        assert!(matches!(b("01").distance(&b("011")), Err(Error::LengthMismatch(2, 3))));
        assert_eq!(parse_codebook("000\n\n111\n").unwrap().len(), 2);
    }

    #[test]
    fn radius_floors() {
        assert_eq!(radius(&r(1, 4), 4).unwrap(), 1);
        assert_eq!(radius(&r(1, 3), 4).unwrap(), 1);
        assert_eq!(radius(&r(3, 1), 4).unwrap(), 4);
    }

    #[test]
    fn lexicode_of_length_seven() {
        let code = lexicode(7, 3).unwrap();
        assert_eq!(code.len(), 16);
        assert_eq!(code[0], b("0000000"));
    }
}
