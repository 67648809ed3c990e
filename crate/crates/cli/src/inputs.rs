//! File and flag parsing shared by the commands.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use uvinfo::chancap::Channel;
use uvinfo::memoryless::{ConfidenceSequence, SequenceRule};
use uvinfo::uvcore::{GroundSet, UncertainPair, UncertaintyFunction};
use uvinfo::Ratio;

use crate::SequenceArgs;

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))
}

/// JSON errors carry line and column; validation errors name the symbol.
fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| anyhow!("{what}: {e}"))
}

pub fn parse_channel_spec(text: &str) -> Result<Channel> {
    parse_json(text, "channel")
}

pub fn parse_pair_spec(text: &str) -> Result<UncertainPair> {
    parse_json(text, "pair")
}

pub fn channel(path: &str) -> Result<Channel> {
    parse_channel_spec(&read(path)?).with_context(|| format!("in {path}"))
}

pub fn pair(path: &str) -> Result<UncertainPair> {
    parse_pair_spec(&read(path)?).with_context(|| format!("in {path}"))
}

pub fn text_file(path: &str) -> Result<String> {
    read(path)
}

pub fn uncertainty(
    spec: Option<&str>,
    default: impl FnOnce() -> Result<UncertaintyFunction>,
) -> Result<UncertaintyFunction> {
    match spec {
        Some(s) => Ok(s.parse()?),
        None => default(),
    }
}

/// Counting measure over the whole ground set, or length for intervals.
pub fn default_measure(ground: &GroundSet) -> Result<UncertaintyFunction> {
    match ground {
        GroundSet::Finite { labels } => Ok(UncertaintyFunction::cardinality(labels.len() as u64, 1)),
        GroundSet::Intervals { .. } => Ok(UncertaintyFunction::lebesgue(Ratio::zero())),
    }
}

pub fn channel_measure(ch: &Channel, spec: Option<&str>) -> Result<UncertaintyFunction> {
    uncertainty(spec, || {
        Ok(UncertaintyFunction::cardinality(ch.outputs().len() as u64, 1))
    })
}

fn ratios(list: &str) -> Result<Vec<Ratio>> {
    list.split(',').map(|v| Ok(v.trim().parse::<Ratio>()?)).collect()
}

pub fn sequence(args: &SequenceArgs) -> Result<Option<ConfidenceSequence>> {
    let Some(spec) = args.sequence.as_deref() else {
        if args.first.is_some() {
            bail!("--first needs --sequence");
        }
        return Ok(None);
    };
    let spec = spec.trim();
    let mut seq: ConfidenceSequence = if spec.starts_with('{') {
        parse_json(spec, "sequence")?
    } else {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let rule = match kind {
            "geometric" => {
                let parts = ratios(&rest.replace(':', ","))?;
                match parts.as_slice() {
                    [base] => SequenceRule::Geometric {
                        base: base.clone(),
                        scale: Ratio::one(),
                    },
                    [base, scale] => SequenceRule::Geometric {
                        base: base.clone(),
                        scale: scale.clone(),
                    },
                    _ => bail!("geometric takes a base and an optional scale"),
                }
            }
            "constant" => SequenceRule::Constant { delta: rest.parse()? },
            "zero" if rest.is_empty() => SequenceRule::Zero,
            "explicit" => SequenceRule::Explicit { values: ratios(rest)? },
            _ => bail!("unrecognized sequence {spec:?}"),
        };
        ConfidenceSequence::new(rule)?
    };
    if let Some(first) = &args.first {
        seq.first = Some(first.clone());
    }
    Ok(Some(seq.validated()?))
}

pub fn symbols(list: &str) -> Vec<String> {
    list.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}
