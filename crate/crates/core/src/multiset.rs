//! Polygon multisets: the face-degree counts a candidate enclosure is built from.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest fullness sum accepted, keeps every downstream expression inside `i64`.
const MAX_FULLNESS: i128 = 1 << 60;

/// Counts of k-gonal faces, keyed by degree `k >= 3`, every count `>= 1`.
///
/// Serializes to the canonical `{"polygons": {"<k>": <count>}}` form with
/// degrees in ascending numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMultiset")]
pub struct PolygonMultiset {
    polygons: BTreeMap<u32, u64>,
}

#[derive(Deserialize)]
struct RawMultiset {
    polygons: BTreeMap<i64, i64>,
}

impl TryFrom<RawMultiset> for PolygonMultiset {
    type Error = Error;

    fn try_from(raw: RawMultiset) -> Result<Self> {
        validate_multiset(&raw.polygons)
    }
}

impl PolygonMultiset {
    /// Builds a multiset from `(degree, count)` pairs, merging repeated degrees.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut raw: BTreeMap<i64, i64> = BTreeMap::new();
        for (degree, count) in pairs {
            let slot = raw.entry(degree).or_insert(0);
            *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        }
        validate_multiset(&raw)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("multiset serialization is infallible")
    }

    pub fn count(&self, degree: u32) -> u64 {
        self.polygons.get(&degree).copied().unwrap_or(0)
    }

    /// `(degree, count)` pairs in ascending degree order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.polygons.iter().map(|(&k, &c)| (k, c))
    }

    pub fn max_degree(&self) -> u32 {
        *self
            .polygons
            .keys()
            .next_back()
            .expect("validated multiset is nonempty")
    }

    pub fn face_count(&self) -> u64 {
        self.polygons.values().sum()
    }
}

/// Validates raw degree counts.
///
/// Rejects empty input, degrees below 3 (digons and lower), non-positive
/// counts, and multisets whose sums would not fit exact 64-bit arithmetic.
pub fn validate_multiset(raw: &BTreeMap<i64, i64>) -> Result<PolygonMultiset> {
    if raw.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let mut polygons = BTreeMap::new();
    let mut fullness: i128 = 0;
    for (&degree, &count) in raw {
        if degree < 3 {
            return Err(Error::DegreeBelowThree { degree });
        }
        if count < 1 {
            return Err(Error::NonPositiveCount { degree, count });
        }
        let k = u32::try_from(degree).map_err(|_| Error::Overflow)?;
        fullness += (i128::from(degree) + 2) * i128::from(count);
        if fullness > MAX_FULLNESS {
            return Err(Error::Overflow);
        }
        polygons.insert(k, count as u64);
    }
    Ok(PolygonMultiset { polygons })
}

/// Angle, flatness, face and fullness sums of a multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DerivedCounts {
    /// Angle units, `sum (k-2) P_k`.
    pub n: u64,
    /// Flatness, `sum (k-3) P_k`.
    pub s: u64,
    /// Faces, `sum P_k`.
    pub f: u64,
    /// Fullness, `sum (k+2) P_k`.
    pub m: u64,
}

pub fn derived_counts(m: &PolygonMultiset) -> DerivedCounts {
    let mut out = DerivedCounts {
        n: 0,
        s: 0,
        f: 0,
        m: 0,
    };
    for (k, count) in m.iter() {
        let k = u64::from(k);
        out.n += (k - 2) * count;
        out.s += (k - 3) * count;
        out.f += count;
        out.m += (k + 2) * count;
    }
    debug_assert_eq!(out.n, out.s + out.f);
    debug_assert_eq!(out.m as i128 - 5 * out.n as i128, -4 * out.s as i128);
    out
}
