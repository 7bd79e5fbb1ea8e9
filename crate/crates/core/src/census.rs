//! Configuration censuses: structure-pair counts and partition upper bounds.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::external::{self, MIN_VERTICES};
use crate::{Error, Result};

fn require_vertices(v: u64) -> Result<()> {
    if v < MIN_VERTICES {
        return Err(Error::VertexCountTooSmall {
            v,
            min: MIN_VERTICES,
        });
    }
    Ok(())
}

/// Number of compatible (external, internal) structure pairs for `V` vertices.
///
/// `V^2/2 - 3V + 5` for even `V`, `V^2/2 - 3V + 9/2` for odd `V`, evaluated
/// on doubled integers.
pub fn pair_combination_count(v: u64) -> Result<u64> {
    require_vertices(v)?;
    let twice = if v.is_multiple_of(2) {
        v * v + 10 - 6 * v
    } else {
        v * v + 9 - 6 * v
    };
    Ok(twice / 2)
}

/// Unrestricted partition numbers `p(0..=n)`, built with Euler's pentagonal
/// number recurrence.
#[derive(Debug, Clone)]
pub struct PartitionTable {
    values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn up_to(n: usize) -> Self {
        let mut values: Vec<BigUint> = Vec::with_capacity(n + 1);
        values.push(BigUint::one());
        for i in 1..=n {
            // p(i) = sum_k (-1)^(k+1) [p(i - k(3k-1)/2) + p(i - k(3k+1)/2)]
            let mut plus = BigUint::zero();
            let mut minus = BigUint::zero();
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > i {
                    break;
                }
                let g2 = k * (3 * k + 1) / 2;
                let bucket = if k % 2 == 1 { &mut plus } else { &mut minus };
                *bucket += &values[i - g1];
                if g2 <= i {
                    *bucket += &values[i - g2];
                }
            }
            values.push(plus - minus);
        }
        Self { values }
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum p(k)` for `k` in `0..=n`.
    pub fn prefix_sum(&self, n: usize) -> BigUint {
        self.values[..=n].iter().sum()
    }
}

pub fn partition_count(n: u64) -> BigUint {
    PartitionTable::up_to(n as usize).get(n as usize).clone()
}

/// Partitions of `n` into parts no larger than `max_part`.
pub fn restricted_partition_count(n: u64, max_part: u64) -> BigUint {
    restricted_partition_table(n as usize, max_part as usize).swap_remove(n as usize)
}

/// Bounded-part counts for every total `0..=n`.
fn restricted_partition_table(n: usize, max_part: usize) -> Vec<BigUint> {
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=max_part.min(n) {
        for total in part..=n {
            let (lo, hi) = ways.split_at_mut(total);
            hi[0] += &lo[total - part];
        }
    }
    ways
}

fn as_decimal<S: Serializer>(
    value: &BigUint,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

fn as_optional_decimal<S: Serializer>(
    value: &Option<BigUint>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.collect_str(v),
        None => serializer.serialize_none(),
    }
}

/// One row of the vertex-count census. Big integers serialize as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub v: u64,
    pub s_max: u64,
    pub pair_count: u64,
    /// `sum p(S)` over `S = 0..=S_max`.
    #[serde(serialize_with = "as_decimal")]
    pub face_combo_upper: BigUint,
    /// Same sum with parts capped, present when a maximum face degree was given.
    #[serde(
        serialize_with = "as_optional_decimal",
        skip_serializing_if = "Option::is_none"
    )]
    pub face_combo_restricted: Option<BigUint>,
}

pub fn face_combo_upper_bound(v: u64) -> Result<CensusRow> {
    let s_max = external::s_max(v)?;
    let table = PartitionTable::up_to(s_max as usize);
    Ok(CensusRow {
        v,
        s_max,
        pair_count: pair_combination_count(v)?,
        face_combo_upper: table.prefix_sum(s_max as usize),
        face_combo_restricted: None,
    })
}

/// Census row with the restricted bound for faces of degree at most `max_face_degree`
/// (parts of size at most `max_face_degree - 3`).
pub fn face_combo_restricted_bound(v: u64, max_face_degree: u64) -> Result<CensusRow> {
    if max_face_degree < 3 {
        return Err(Error::DegreeBelowThree {
            degree: max_face_degree as i64,
        });
    }
    let mut row = face_combo_upper_bound(v)?;
    let ways = restricted_partition_table(row.s_max as usize, (max_face_degree - 3) as usize);
    row.face_combo_restricted = Some(ways.iter().sum());
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Independent oracle: count partitions by recursive enumeration of
    /// non-increasing part sequences.
    fn brute_partitions(n: u64, max_part: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n))
            .map(|first| brute_partitions(n - first, first))
            .sum()
    }

    #[test]
    fn pair_count_examples() {
        assert_eq!(pair_combination_count(8), Ok(13));
        assert_eq!(pair_combination_count(4), Ok(1));
        assert_eq!(pair_combination_count(20), Ok(145));
        assert!(pair_combination_count(3).is_err());
    }

    #[test]
    fn pair_count_is_ladder_truncation_sum() {
        for v in 5..=100u64 {
            let s_max = external::s_max(v).unwrap();
            let sum: u64 = (0..=s_max).map(|s| (v - 4).saturating_sub(s).max(1)).sum();
            assert_eq!(pair_combination_count(v).unwrap(), sum, "V={v}");
        }
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_count(0), big(1));
        assert_eq!(partition_count(6), big(11));
        assert_eq!(partition_count(10), big(42));
        assert_eq!(
            partition_count(100),
            "190569292".parse::<BigUint>().unwrap()
        );
    }

    #[test]
    fn partition_matches_brute_force() {
        let table = PartitionTable::up_to(40);
        for n in 0..=40u64 {
            assert_eq!(*table.get(n as usize), big(brute_partitions(n, n)), "n={n}");
        }
    }

    #[test]
    fn restricted_examples() {
        assert_eq!(restricted_partition_count(4, 1), big(1));
        assert_eq!(restricted_partition_count(6, 6), big(11));
        assert_eq!(restricted_partition_count(5, 2), big(3));
        assert_eq!(restricted_partition_count(0, 1), big(1));
        for n in 0..=25 {
            for m in 1..=n + 1 {
                assert_eq!(
                    restricted_partition_count(n, m),
                    big(brute_partitions(n, m))
                );
            }
        }
    }

    #[test]
    fn restricted_with_large_cap_is_unrestricted() {
        let table = PartitionTable::up_to(100);
        for n in 0..=100u64 {
            assert_eq!(&restricted_partition_count(n, n), table.get(n as usize));
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(face_combo_upper_bound(6).unwrap().face_combo_upper, big(7));
        assert_eq!(face_combo_upper_bound(5).unwrap().face_combo_upper, big(2));
        let row = face_combo_upper_bound(20).unwrap();
        assert_eq!((row.s_max, row.pair_count), (24, 145));
        assert_eq!(row.face_combo_upper, big(7338));
    }

    #[test]
    fn upper_bound_monotone() {
        let rows: Vec<_> = (4..=150)
            .map(|v| face_combo_upper_bound(v).unwrap().face_combo_upper)
            .collect();
        assert!(rows.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn restricted_bound() {
        // quadrilaterals only: one configuration per flatness value
        let row = face_combo_restricted_bound(8, 4).unwrap();
        assert_eq!(row.face_combo_restricted, Some(big(7)));
        let row = face_combo_restricted_bound(8, 100).unwrap();
        assert_eq!(
            row.face_combo_restricted,
            Some(row.face_combo_upper.clone())
        );
        assert_eq!(
            face_combo_restricted_bound(8, 3)
                .unwrap()
                .face_combo_restricted,
            Some(big(1))
        );
    }

    #[test]
    fn row_json() {
        let json = serde_json::to_string(&face_combo_upper_bound(8).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"v":8,"s_max":6,"pair_count":13,"face_combo_upper":"30"}"#
        );
    }
}
