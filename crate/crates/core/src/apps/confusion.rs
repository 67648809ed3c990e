//! Channels read off classifier outputs: each true label maps to the set of
//! labels it was predicted as.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::Deserialize;

use crate::chancap::Channel;
use crate::error::{Error, Result};
use crate::uvcore::Symbol;

#[derive(Deserialize)]
struct Row {
    #[serde(rename = "true")]
    truth: String,
    predicted: String,
}

/// Reads `true,predicted` rows (with that header) into a channel. Inputs are
/// the true labels; outputs are every label seen in either column.
pub fn confusion_ingest<R: Read>(reader: R) -> Result<Channel> {
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = csv
        .headers()
        .map_err(|e| Error::MalformedRow {
            row: 0,
            reason: e.to_string(),
        })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["true", "predicted"] {
        return Err(Error::MalformedRow {
            row: 0,
            reason: format!("header must be true,predicted, found {headers:?}"),
        });
    }
    let mut observed: BTreeMap<Symbol, BTreeSet<Symbol>> = BTreeMap::new();
    for (k, rec) in csv.deserialize::<Row>().enumerate() {
        let row = k + 1;
        let rec = rec.map_err(|e| Error::MalformedRow {
            row,
            reason: e.to_string(),
        })?;
        if rec.truth.is_empty() || rec.predicted.is_empty() {
            return Err(Error::MalformedRow {
                row,
                reason: "empty label".into(),
            });
        }
        observed
            .entry(Symbol::new(rec.truth))
            .or_default()
            .insert(Symbol::new(rec.predicted));
    }
    confusion_from_sets(observed)
}

/// Builds the channel from explicit predicted-label sets.
pub fn confusion_from_sets<I, S>(sets: I) -> Result<Channel>
where
    I: IntoIterator<Item = (Symbol, S)>,
    S: IntoIterator<Item = Symbol>,
{
    let map: BTreeMap<Symbol, BTreeSet<Symbol>> = sets.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect();
    if map.is_empty() {
        return Err(Error::InvalidChannel("no observations".into()));
    }
    let outputs: BTreeSet<Symbol> = map
        .iter()
        .flat_map(|(k, v)| std::iter::once(k).chain(v))
        .cloned()
        .collect();
    Channel::new(map.keys().cloned().collect(), outputs.into_iter().collect(), map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows_are_checked() {
        assert!(matches!(
            confusion_ingest("a,b\nx,y\n".as_bytes()),
            Err(Error::MalformedRow { row: 0, .. })
        ));
        assert!(matches!(
            confusion_ingest("true,predicted\nx\n".as_bytes()),
            Err(Error::MalformedRow { row: 1, .. })
        ));
        assert!(matches!(
            confusion_ingest("true,predicted\nx,y\n,y\n".as_bytes()),
            Err(Error::MalformedRow { row: 2, .. })
        ));
        assert!(confusion_ingest("true,predicted\n".as_bytes()).is_err());
    }

    #[test]
    fn outputs_include_predicted_only_labels() {
        let ch = confusion_ingest("true,predicted\ncat,cat\ncat,fox\ndog,dog\n".as_bytes()).unwrap();
        assert_eq!(ch.inputs().len(), 2);
        assert_eq!(ch.outputs().len(), 3);
        assert_eq!(ch.image(&Symbol::new("cat")).unwrap().len(), 2);
    }
}
