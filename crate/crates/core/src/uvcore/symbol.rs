use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A ground-set label. Ordered naturally: digit runs compare by numeric
/// value, so `2 < 10` and `1,7 < 1,13`, and equal-length bit strings keep
/// their lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(s: impl Into<String>) -> Self {
        Symbol(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Maximal runs of digits and of non-digits.
fn chunks(s: &str) -> impl Iterator<Item = &str> {
    let bytes = s.as_bytes();
    let mut start = 0;
    std::iter::from_fn(move || {
        if start >= bytes.len() {
            return None;
        }
        let digit = bytes[start].is_ascii_digit();
        let len = bytes[start..]
            .iter()
            .take_while(|b| b.is_ascii_digit() == digit)
            .count();
        let chunk = &s[start..start + len];
        start += len;
        Some(chunk)
    })
}

fn cmp_chunk(a: &str, b: &str) -> Ordering {
    let digits = |c: &str| c.as_bytes()[0].is_ascii_digit();
    match (digits(a), digits(b)) {
        (true, true) => {
            let (ta, tb) = (a.trim_start_matches('0'), b.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        }
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.cmp(b),
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut xs = chunks(&self.0);
        let mut ys = chunks(&other.0);
        loop {
            match (xs.next(), ys.next()) {
                (Some(a), Some(b)) => match cmp_chunk(a, b) {
                    Ordering::Equal => continue,
                    o => return o,
                },
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (None, None) => return self.0.cmp(&other.0),
            }
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol(s.to_string())
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(s)
    }
}
