//! Path-metric domain types and the structured candidate list.
//!
//! A selection step of an LLR-based list decoder starts from `L` sorted
//! surviving metrics `mu` and non-negative penalties `a`, and produces the
//! `2L` candidates
//!
//! ```text
//! m[2l]     = mu[l]
//! m[2l + 1] = mu[l] + a[l]
//! ```
//!
//! Such a list always satisfies two families of relations: the even entries
//! are sorted (`m[2l] <= m[2l + 2]`), and every even entry is no larger than
//! its odd partner (`m[2l] <= m[2l + 1]`). The sorters in this crate exploit
//! exactly those relations.
//!
//! Entries are ordered by key and then by payload. Payloads are distinct, so
//! this is a strict total order and every architecture must produce the same
//! payload sequence, not just the same keys.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Width of the unsigned fixed-point key domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KeyDomain {
    bits: u32,
}

impl KeyDomain {
    pub const MAX_BITS: u32 = 16;

    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > Self::MAX_BITS {
            return Err(Error::InvalidKeyWidth(bits));
        }
        Ok(Self { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Largest representable key, `2^Q - 1`. Also the `+inf` sentinel.
    pub fn max_key(self) -> MetricKey {
        MetricKey(((1u32 << self.bits) - 1) as u16)
    }

    /// Smallest representable key. Also the `-inf` sentinel.
    pub fn min_key(self) -> MetricKey {
        MetricKey(0)
    }

    pub fn key(self, value: u32) -> Result<MetricKey> {
        if value > u32::from(self.max_key().0) {
            return Err(Error::KeyOutOfRange { value, bits: self.bits });
        }
        Ok(MetricKey(value as u16))
    }

    pub fn contains(self, key: MetricKey) -> bool {
        key <= self.max_key()
    }

    /// Adds two keys, clamping at `2^Q - 1`.
    pub fn saturating_add(self, lhs: MetricKey, rhs: MetricKey) -> MetricKey {
        let sum = u32::from(lhs.0) + u32::from(rhs.0);
        MetricKey(sum.min(u32::from(self.max_key().0)) as u16)
    }
}

impl Default for KeyDomain {
    fn default() -> Self {
        Self { bits: 8 }
    }
}

/// A quantized path metric.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MetricKey(u16);

impl MetricKey {
    pub const fn new(value: u16) -> Self {
        Self(value)
    }

    pub const fn value(self) -> u16 {
        self.0
    }
}

impl fmt::Display for MetricKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u16> for MetricKey {
    fn from(value: u16) -> Self {
        Self(value)
    }
}

/// A metric together with the index of the candidate it came from.
///
/// The derived ordering compares `key` first and `payload` second, which is
/// the tie-breaking rule used everywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MetricEntry {
    pub key: MetricKey,
    pub payload: u16,
}

impl MetricEntry {
    pub const fn new(key: u16, payload: u16) -> Self {
        Self {
            key: MetricKey(key),
            payload,
        }
    }
}

impl fmt::Display for MetricEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.key, self.payload)
    }
}

/// Builds entries whose payload equals their position.
pub fn indexed_entries(keys: &[u16]) -> Vec<MetricEntry> {
    keys.iter()
        .enumerate()
        .map(|(i, &k)| MetricEntry::new(k, i as u16))
        .collect()
}

pub fn keys_of(entries: &[MetricEntry]) -> Vec<u16> {
    entries.iter().map(|e| e.key.value()).collect()
}

pub fn payloads_of(entries: &[MetricEntry]) -> Vec<u16> {
    entries.iter().map(|e| e.payload).collect()
}

/// Which of the two relation families a list breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    /// `m[2l] <= m[2l + 2]`
    EvenSorted,
    /// `m[2l] <= m[2l + 1]`
    PairOrdered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    BadLength(usize),
    Relation { property: Property, ell: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadLength(n) => write!(f, "length {n} is not an even number >= 4"),
            Violation::Relation {
                property: Property::EvenSorted,
                ell,
            } => {
                write!(f, "(1a) m[{}] <= m[{}] fails at l={ell}", 2 * ell, 2 * ell + 2)
            }
            Violation::Relation {
                property: Property::PairOrdered,
                ell,
            } => {
                write!(f, "(1b) m[{}] <= m[{}] fails at l={ell}", 2 * ell, 2 * ell + 1)
            }
        }
    }
}

/// Checks the structured-list relations and reports the first one broken.
///
/// Relations are checked under the total order, so tied keys must carry
/// payloads in index order; lists produced by [`make_structured`] and
/// [`embed_arbitrary`] always do. The pair relation is checked for every `l`
/// including `L - 1`, which is what makes the last wire unselectable.
pub fn validate_structured(entries: &[MetricEntry]) -> Result<(), Violation> {
    let n = entries.len();
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Violation::BadLength(n));
    }
    let list_size = n / 2;
    for ell in 0..list_size {
        if entries[2 * ell] > entries[2 * ell + 1] {
            return Err(Violation::Relation {
                property: Property::PairOrdered,
                ell,
            });
        }
        if ell + 1 < list_size && entries[2 * ell] > entries[2 * ell + 2] {
            return Err(Violation::Relation {
                property: Property::EvenSorted,
                ell,
            });
        }
    }
    Ok(())
}

/// Statically known outcome of comparing two wires of a structured input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// The entry on the lower index precedes the other one for every valid list.
    IKnownSmaller,
    Unknown,
}

/// Every even-indexed entry precedes all entries that follow it; nothing is
/// known about an odd-indexed entry relative to later ones.
pub fn known_relation(i: usize, j: usize, list_size: usize) -> Result<Relation> {
    if i >= j {
        return Err(Error::UnorderedPair(i, j));
    }
    if j >= 2 * list_size {
        return Err(Error::LengthMismatch {
            expected: 2 * list_size,
            got: j + 1,
        });
    }
    Ok(if i.is_multiple_of(2) {
        Relation::IKnownSmaller
    } else {
        Relation::Unknown
    })
}

/// A `2L`-entry candidate list known to satisfy the structured relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredList {
    entries: Vec<MetricEntry>,
    domain: KeyDomain,
}

impl StructuredList {
    /// Wraps arbitrary entries after checking length, key range, payload
    /// distinctness and the structured relations.
    pub fn from_entries(entries: Vec<MetricEntry>, domain: KeyDomain) -> Result<Self> {
        if entries.len() < 4 || !entries.len().is_multiple_of(2) {
            return Err(Error::NotStructured(Violation::BadLength(entries.len())));
        }
        let mut seen = vec![false; entries.len()];
        for e in &entries {
            if !domain.contains(e.key) {
                return Err(Error::KeyOutOfRange {
                    value: e.key.0.into(),
                    bits: domain.bits,
                });
            }
            let p = e.payload as usize;
            if p >= entries.len() || seen[p] {
                return Err(Error::DuplicatePayload(e.payload));
            }
            seen[p] = true;
        }
        validate_structured(&entries).map_err(Error::NotStructured)?;
        Ok(Self { entries, domain })
    }

    pub fn entries(&self) -> &[MetricEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<MetricEntry> {
        self.entries
    }

    pub fn list_size(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn domain(&self) -> KeyDomain {
        self.domain
    }

    pub fn keys(&self) -> Vec<u16> {
        keys_of(&self.entries)
    }
}

/// Builds the `2L` candidates from sorted survivors `mu` and penalties `a`.
pub fn make_structured(mu: &[MetricKey], a: &[MetricKey], domain: KeyDomain) -> Result<StructuredList> {
    if mu.len() < 2 {
        return Err(Error::ListSizeTooSmall(mu.len()));
    }
    if a.len() != mu.len() {
        return Err(Error::LengthMismatch {
            expected: mu.len(),
            got: a.len(),
        });
    }
    for &k in mu.iter().chain(a) {
        if !domain.contains(k) {
            return Err(Error::KeyOutOfRange {
                value: k.0.into(),
                bits: domain.bits,
            });
        }
    }
    if let Some(index) = mu.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::UnsortedMetrics { index });
    }
    let entries = mu
        .iter()
        .zip(a)
        .enumerate()
        .flat_map(|(ell, (&m, &inc))| {
            [
                MetricEntry {
                    key: m,
                    payload: (2 * ell) as u16,
                },
                MetricEntry {
                    key: domain.saturating_add(m, inc),
                    payload: (2 * ell + 1) as u16,
                },
            ]
        })
        .collect();
    Ok(StructuredList { entries, domain })
}

/// Embeds up to `L` arbitrary keys into a structured list whose `L`
/// smallest entries are `L - 1` copies of the minimum sentinel followed by
/// the smallest embedded key.
///
/// Missing values are padded with the maximum sentinel. Values equal to
/// either sentinel are rejected.
pub fn embed_arbitrary(values: &[MetricKey], list_size: usize, domain: KeyDomain) -> Result<StructuredList> {
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall(list_size));
    }
    if values.is_empty() {
        return Err(Error::EmptyValues);
    }
    if values.len() > list_size {
        return Err(Error::TooManyValues {
            list_size,
            got: values.len(),
        });
    }
    let (lo, hi) = (domain.min_key(), domain.max_key());
    for &v in values {
        if !domain.contains(v) {
            return Err(Error::KeyOutOfRange {
                value: v.0.into(),
                bits: domain.bits,
            });
        }
        if v == lo || v == hi {
            return Err(Error::SentinelCollision { value: v.0 });
        }
    }
    let value = |ell: usize| values.get(ell).copied().unwrap_or(hi);
    let mut keys = Vec::with_capacity(2 * list_size);
    for ell in 0..list_size - 1 {
        keys.push(lo);
        keys.push(value(ell));
    }
    keys.push(value(list_size - 1));
    keys.push(hi);
    let entries = keys
        .into_iter()
        .enumerate()
        .map(|(i, key)| MetricEntry { key, payload: i as u16 })
        .collect();
    Ok(StructuredList { entries, domain })
}

/// Contents of a metric list text file.
///
/// ```text
/// L=4 Q=8
/// 1 0
/// 6 1
/// ...
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricFile {
    pub list_size: usize,
    pub domain: KeyDomain,
    pub entries: Vec<MetricEntry>,
}

impl MetricFile {
    pub fn to_text(&self) -> String {
        let mut out = format!("L={} Q={}\n", self.list_size, self.domain.bits());
        for e in &self.entries {
            out.push_str(&format!("{e}\n"));
        }
        out
    }
}

impl FromStr for MetricFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let parse_err = |message: String| Error::Parse { line, message };

        let mut list_size = None;
        let mut bits = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("L", v)) => list_size = Some(v.parse::<usize>().map_err(|e| parse_err(format!("L: {e}")))?),
                Some(("Q", v)) => bits = Some(v.parse::<u32>().map_err(|e| parse_err(format!("Q: {e}")))?),
                _ => return Err(parse_err(format!("unexpected header field `{field}`"))),
            }
        }
        let list_size = list_size.ok_or_else(|| parse_err("header lacks L=<n>".into()))?;
        let domain = KeyDomain::new(bits.ok_or_else(|| parse_err("header lacks Q=<q>".into()))?)?;

        let mut entries = Vec::new();
        for (line, body) in lines {
            let mut fields = body.split_whitespace();
            let mut next = |what: &str| -> Result<u32> {
                fields
                    .next()
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: format!("missing {what}"),
                    })?
                    .parse::<u32>()
                    .map_err(|e| Error::Parse {
                        line,
                        message: format!("{what}: {e}"),
                    })
            };
            let key = domain.key(next("key")?)?;
            let payload = next("payload")?;
            let payload = u16::try_from(payload).map_err(|e| Error::Parse {
                line,
                message: format!("payload: {e}"),
            })?;
            if fields.next().is_some() {
                return Err(Error::Parse {
                    line,
                    message: "trailing fields".into(),
                });
            }
            entries.push(MetricEntry { key, payload });
        }
        if entries.len() != 2 * list_size {
            return Err(Error::LengthMismatch {
                expected: 2 * list_size,
                got: entries.len(),
            });
        }
        Ok(Self {
            list_size,
            domain,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(v: &[u16]) -> Vec<MetricKey> {
        v.iter().copied().map(MetricKey::new).collect()
    }

    #[test]
    fn make_structured_interleaves_survivors_and_increments() {
        let d = KeyDomain::default();
        let list = make_structured(&keys(&[1, 2, 3, 4]), &keys(&[5, 0, 1, 2]), d).unwrap();
        assert_eq!(list.keys(), vec![1, 6, 2, 2, 3, 4, 4, 6]);
        assert_eq!(payloads_of(list.entries()), (0..8).collect::<Vec<_>>());

        let list = make_structured(&keys(&[1, 2, 3, 4]), &keys(&[0; 4]), d).unwrap();
        assert_eq!(list.keys(), vec![1, 1, 2, 2, 3, 3, 4, 4]);
    }

    #[test]
    fn make_structured_saturates() {
        let list = make_structured(&keys(&[250, 255]), &keys(&[10, 10]), KeyDomain::default()).unwrap();
        assert_eq!(list.keys(), vec![250, 255, 255, 255]);
        assert!(validate_structured(list.entries()).is_ok());
    }

    #[test]
    fn make_structured_rejects_unsorted_survivors() {
        let err = make_structured(&keys(&[1, 3, 2, 4]), &keys(&[0; 4]), KeyDomain::default()).unwrap_err();
        assert!(matches!(err, Error::UnsortedMetrics { index: 1 }));
    }

    #[test]
    fn validate_reports_first_violation() {
        assert_eq!(validate_structured(&indexed_entries(&[1, 6, 2, 2, 3, 4, 4, 6])), Ok(()));
        assert_eq!(
            validate_structured(&indexed_entries(&[3, 1, 4, 5])),
            Err(Violation::Relation {
                property: Property::PairOrdered,
                ell: 0
            })
        );
        assert_eq!(
            validate_structured(&indexed_entries(&[2, 5, 1, 9])),
            Err(Violation::Relation {
                property: Property::EvenSorted,
                ell: 0
            })
        );
        assert_eq!(
            validate_structured(&indexed_entries(&[1, 2, 3])),
            Err(Violation::BadLength(3))
        );
    }

    #[test]
    fn validate_rejects_tie_with_reversed_payloads() {
        let entries = vec![
            MetricEntry::new(1, 1),
            MetricEntry::new(1, 0),
            MetricEntry::new(2, 2),
            MetricEntry::new(3, 3),
        ];
        assert!(validate_structured(&entries).is_err());
    }

    #[test]
    fn known_relation_follows_parity() {
        assert_eq!(known_relation(0, 7, 4).unwrap(), Relation::IKnownSmaller);
        assert_eq!(known_relation(1, 2, 4).unwrap(), Relation::Unknown);
        assert!(known_relation(3, 3, 4).is_err());
        assert!(known_relation(2, 8, 4).is_err());
    }

    #[test]
    fn unknown_pair_count_l4() {
        let l = 4;
        let unknown = (0..2 * l)
            .flat_map(|i| (i + 1..2 * l).map(move |j| (i, j)))
            .filter(|&(i, j)| known_relation(i, j, l).unwrap() == Relation::Unknown)
            .count();
        assert_eq!(unknown, l * (2 * l - 1) - l * l);
        assert_eq!(unknown, 12);
    }

    #[test]
    fn known_relations_hold_exhaustively_for_l2() {
        let d = KeyDomain::default();
        for m0 in 0..4u16 {
            for m1 in m0..4 {
                for a0 in 0..4u16 {
                    for a1 in 0..4u16 {
                        let list = make_structured(&keys(&[m0, m1]), &keys(&[a0, a1]), d).unwrap();
                        let e = list.entries();
                        for i in 0..4 {
                            for j in i + 1..4 {
                                if known_relation(i, j, 2).unwrap() == Relation::IKnownSmaller {
                                    assert!(e[i] < e[j], "{:?} at ({i},{j})", list.keys());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embed_follows_sentinel_layout() {
        let d = KeyDomain::default();
        let list = embed_arbitrary(&keys(&[5, 2, 7, 2]), 4, d).unwrap();
        assert_eq!(list.keys(), vec![0, 5, 0, 2, 0, 7, 2, 255]);
        let list = embed_arbitrary(&keys(&[9]), 2, d).unwrap();
        assert_eq!(list.keys(), vec![0, 9, 255, 255]);
    }

    #[test]
    fn embed_rejects_sentinels_and_overflow() {
        let d = KeyDomain::default();
        assert!(matches!(
            embed_arbitrary(&keys(&[3, 0]), 2, d),
            Err(Error::SentinelCollision { value: 0 })
        ));
        assert!(matches!(
            embed_arbitrary(&keys(&[255]), 2, d),
            Err(Error::SentinelCollision { value: 255 })
        ));
        assert!(matches!(
            embed_arbitrary(&keys(&[1, 2, 3]), 2, d),
            Err(Error::TooManyValues { .. })
        ));
        assert!(matches!(embed_arbitrary(&[], 2, d), Err(Error::EmptyValues)));
    }

    #[test]
    fn from_entries_checks_payloads() {
        let d = KeyDomain::default();
        let mut e = indexed_entries(&[1, 6, 2, 2]);
        e[3].payload = 0;
        assert!(matches!(
            StructuredList::from_entries(e, d),
            Err(Error::DuplicatePayload(0))
        ));
    }

    #[test]
    fn metric_file_round_trip() {
        let text = "L=2 Q=8\n# comment\n1 0\n6 1\n\n2 2\n2 3\n";
        let file: MetricFile = text.parse().unwrap();
        assert_eq!(file.list_size, 2);
        assert_eq!(file.entries, indexed_entries(&[1, 6, 2, 2]));
        assert_eq!(file.to_text().parse::<MetricFile>().unwrap(), file);
    }

    #[test]
    fn metric_file_errors() {
        assert!("L=2\n1 0\n".parse::<MetricFile>().is_err());
        assert!("L=2 Q=8\n1 0\n2 1\n".parse::<MetricFile>().is_err());
        assert!("L=1 Q=4\n16 0\n2 1\n".parse::<MetricFile>().is_err());
        assert!("L=1 Q=8\n1 0 3\n2 1\n".parse::<MetricFile>().is_err());
    }
}
