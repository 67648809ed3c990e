use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::ratio::Ratio;
use crate::uvcore::{GroundSet, PointLabel, Symbol, UncertainPair, UncertaintyFunction};

/// A set-valued transition map over finite alphabets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChannelRepr", into = "ChannelRepr")]
pub struct Channel {
    x: Vec<Symbol>,
    y: Vec<Symbol>,
    images: Vec<IndexSet>,
}

#[derive(Serialize, Deserialize)]
struct ChannelRepr {
    x: Vec<Symbol>,
    y: Vec<Symbol>,
    map: BTreeMap<Symbol, Vec<Symbol>>,
}

impl TryFrom<ChannelRepr> for Channel {
    type Error = Error;
    fn try_from(r: ChannelRepr) -> Result<Self> {
        Channel::new(r.x, r.y, r.map)
    }
}

impl From<Channel> for ChannelRepr {
    fn from(c: Channel) -> Self {
        let map =
            c.x.iter()
                .zip(&c.images)
                .map(|(s, img)| (s.clone(), img.iter().map(|j| c.y[j as usize].clone()).collect()))
                .collect();
        ChannelRepr { x: c.x, y: c.y, map }
    }
}

fn canonical(labels: Vec<Symbol>, what: &str) -> Result<Vec<Symbol>> {
    match GroundSet::finite(labels) {
        Ok(GroundSet::Finite { labels }) if !labels.is_empty() => Ok(labels),
        Ok(_) => Err(Error::InvalidChannel(format!("{what} alphabet is empty"))),
        Err(e) => Err(Error::InvalidChannel(format!("{what} alphabet: {e}"))),
    }
}

impl Channel {
    pub fn new<I, S>(x: Vec<Symbol>, y: Vec<Symbol>, map: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Symbol, S)>,
        S: IntoIterator<Item = Symbol>,
    {
        let x = canonical(x, "input")?;
        let y = canonical(y, "output")?;
        let mut images: Vec<Option<IndexSet>> = vec![None; x.len()];
        for (sym, image) in map {
            let i = x
                .binary_search(&sym)
                .map_err(|_| Error::UnknownSymbol(sym.to_string()))?;
            let set = image
                .into_iter()
                .map(|s| {
                    y.binary_search(&s)
                        .map(|j| j as u32)
                        .map_err(|_| Error::UnknownSymbol(s.to_string()))
                })
                .collect::<Result<IndexSet>>()?;
            images[i] = Some(set);
        }
        let images = images
            .into_iter()
            .zip(&x)
            .map(|(img, s)| match img {
                Some(set) if !set.is_empty() => Ok(set),
                Some(_) => Err(Error::InvalidChannel(format!("empty image for {s}"))),
                None => Err(Error::InvalidChannel(format!("no image for {s}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Channel { x, y, images })
    }

    /// Builds from string labels; convenient for tests and fixtures.
    pub fn from_lists<X, Y, M, S>(x: X, y: Y, map: M) -> Result<Self>
    where
        X: IntoIterator<Item = S>,
        Y: IntoIterator<Item = S>,
        M: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<Symbol>,
    {
        Channel::new(
            x.into_iter().map(Into::into).collect(),
            y.into_iter().map(Into::into).collect(),
            map.into_iter()
                .map(|(k, v)| (k.into(), v.into_iter().map(Into::into).collect::<Vec<Symbol>>())),
        )
    }

    pub fn inputs(&self) -> &[Symbol] {
        &self.x
    }

    pub fn outputs(&self) -> &[Symbol] {
        &self.y
    }

    pub fn images(&self) -> &[IndexSet] {
        &self.images
    }

    /// The least input of each image class, in input order. Inputs with equal
    /// images are interchangeable everywhere in this crate.
    pub fn image_class_reps(&self) -> Vec<usize> {
        let mut seen: BTreeMap<&IndexSet, usize> = BTreeMap::new();
        for (i, img) in self.images.iter().enumerate() {
            seen.entry(img).or_insert(i);
        }
        let mut reps: Vec<usize> = seen.into_values().collect();
        reps.sort();
        reps
    }

    pub fn index_of(&self, s: &Symbol) -> Result<usize> {
        self.x.binary_search(s).map_err(|_| Error::UnknownSymbol(s.to_string()))
    }

    pub fn image(&self, s: &Symbol) -> Result<Vec<Symbol>> {
        let i = self.index_of(s)?;
        Ok(self.images[i].iter().map(|j| self.y[j as usize].clone()).collect())
    }

    /// Codebook restricted pair: the joint range {(x, y): x in codebook, y in N(x)}.
    pub fn induced_pair(&self, codebook: &Codebook) -> Result<UncertainPair> {
        let mut pairs = Vec::new();
        for s in codebook.points() {
            let i = self.index_of(s)?;
            pairs.extend(self.images[i].iter().map(|j| (s.clone(), self.y[j as usize].clone())));
        }
        UncertainPair::relation(
            GroundSet::Finite { labels: self.x.clone() },
            GroundSet::Finite { labels: self.y.clone() },
            pairs,
        )
    }

    pub fn codebook<I, S>(&self, points: I) -> Result<Codebook>
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let cb = Codebook::new(points)?;
        for s in cb.points() {
            self.index_of(s)?;
        }
        Ok(cb)
    }
}

/// A nonempty set of input symbols in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codebook(Vec<Symbol>);

impl Codebook {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let mut v: Vec<Symbol> = points.into_iter().map(Into::into).collect();
        v.sort();
        if v.is_empty() {
            return Err(Error::InvalidChannel("codebook is empty".into()));
        }
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidChannel(format!("codebook repeats {}", w[0])));
        }
        Ok(Codebook(v))
    }

    pub fn points(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Codebook {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(Symbol::as_str).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A channel with its output uncertainty bound and every pairwise
/// equivocation precomputed, all normalized by m(output alphabet).
#[derive(Clone, Debug)]
pub struct BoundChannel {
    pub(crate) channel: Channel,
    m: UncertaintyFunction,
    total: Ratio,
    table: EquivocationTable,
}

/// Pairwise equivocations over indexed symbols plus the smallest image
/// uncertainty. This is all the capacity solver looks at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivocationTable {
    pub(crate) e: Vec<Vec<Ratio>>,
    pub(crate) v_min: Ratio,
}

impl EquivocationTable {
    /// `entries[i][j]` for i != j; the diagonal is ignored.
    pub fn new(entries: Vec<Vec<Ratio>>, v_min: Ratio) -> Self {
        EquivocationTable { e: entries, v_min }
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &Ratio {
        &self.e[i][j]
    }

    pub fn v_min(&self) -> &Ratio {
        &self.v_min
    }

    pub fn check_delta(&self, delta: &Ratio) -> Result<()> {
        if delta.is_negative() || *delta >= self.v_min {
            return Err(Error::DeltaOutOfRange {
                delta: Box::new(delta.clone()),
                limit: Box::new(self.v_min.clone()),
            });
        }
        Ok(())
    }

    /// Distinct off-diagonal values in increasing order.
    pub fn distinct_values(&self) -> Vec<Ratio> {
        let mut v: Vec<Ratio> = (0..self.len())
            .flat_map(|i| (i + 1..self.len()).map(move |j| (i, j)))
            .map(|(i, j)| self.e[i][j].clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl BoundChannel {
    pub fn new(channel: &Channel, m: &UncertaintyFunction) -> Result<Self> {
        let labels: Vec<PointLabel> = channel.y.iter().cloned().map(PointLabel::Symbol).collect();
        let measure = m.bind(&labels)?;
        let total = measure.of(&IndexSet::full(channel.y.len()));
        let n = channel.x.len();
        let imgs = &channel.images;
        let e: Vec<Vec<Ratio>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| measure.of(&imgs[i].intersection(&imgs[j])) / &total)
                    .collect()
            })
            .collect();
        let v_min = (0..n).map(|i| e[i][i].clone()).min().expect("alphabet is nonempty");
        Ok(BoundChannel {
            channel: channel.clone(),
            m: m.clone(),
            total,
            table: EquivocationTable { e, v_min },
        })
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn uncertainty(&self) -> &UncertaintyFunction {
        &self.m
    }

    /// m(output alphabet), the normalizer for every reported value.
    pub fn total(&self) -> &Ratio {
        &self.total
    }

    pub fn table(&self) -> &EquivocationTable {
        &self.table
    }

    /// The least normalized image uncertainty.
    pub fn v_min(&self) -> &Ratio {
        &self.table.v_min
    }

    /// The input whose image attains it; ties go to the least symbol.
    pub fn v_argmin(&self) -> &Symbol {
        let i = (0..self.channel.x.len())
            .find(|&i| self.table.e[i][i] == self.table.v_min)
            .unwrap();
        &self.channel.x[i]
    }

    pub fn equivocation(&self, a: &Symbol, b: &Symbol) -> Result<Ratio> {
        if a == b {
            return Err(Error::SamePoint(a.to_string()));
        }
        let (i, j) = (self.channel.index_of(a)?, self.channel.index_of(b)?);
        Ok(self.table.e[i][j].clone())
    }
}
