//! The enclosure worksheet: from a polygon multiset to a symbolic verdict.
//!
//! Steps, in order: face counts, angle units `N`, vertex estimate
//! `V = N/2 + 2`, flatness `S`, faces `F`, edges `E = 3(V-2) - S`, the Euler
//! check, and the flatness threshold `S_max(V) - S >= 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::external::s_max_formula;
use crate::multiset::{derived_counts, PolygonMultiset};
use crate::{Error, Result};

pub const REALIZABILITY_CAVEAT: &str = "symbolic feasibility only: passing every count check \
     does not imply the polygons embed in 3-space without self-intersection";

const ODD_N_CAVEAT: &str = "N is odd, so V, E, the Euler check and the flatness threshold \
     are undefined and were not computed";

const THRESHOLD_CAVEAT: &str = "S equals S_max: the multiset sits exactly on the flatness \
     threshold, small substitutions can make it too flat";

const SMALL_V_CAVEAT: &str = "vertex estimate is below 4, no polyhedron has that few vertices";

/// Multisets that pass every symbolic check but have no known realization.
const KNOWN_FALSE_POSITIVES: &[(&[(u32, u64)], &str)] = &[(
    &[(3, 4), (6, 2)],
    "known false positive: no known convex or non-convex realization exists for two \
     hexagons and four triangles",
)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfeasibleReason {
    OddAngleUnits,
    TooFlat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    SymbolicallyFeasible,
    Infeasible(InfeasibleReason),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::SymbolicallyFeasible)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SymbolicallyFeasible => f.write_str("SymbolicallyFeasible"),
            Verdict::Infeasible(reason) => write!(f, "Infeasible({reason:?})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Worksheet values. `V` and `E` are absent when `N` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Steps {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "V")]
    pub v: Option<u64>,
    #[serde(rename = "S")]
    pub s: u64,
    #[serde(rename = "F")]
    pub f: u64,
    #[serde(rename = "E")]
    pub e: Option<i64>,
    #[serde(rename = "M")]
    pub m: u64,
}

/// Field order is the canonical JSON order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub input: PolygonMultiset,
    pub steps: Steps,
    pub euler: Option<i64>,
    pub s_max: Option<i64>,
    pub s_difference: Option<i64>,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
    pub cross_checks: BTreeMap<String, bool>,
}

impl FeasibilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

/// `V = N/2 + 2`; odd `N` admits no genus-0 surface.
pub fn vertex_estimate(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NoAngleUnits);
    }
    if n % 2 == 1 {
        return Err(Error::OddAngleUnits { n });
    }
    Ok(n / 2 + 2)
}

/// Runs every worksheet step and returns the full report.
///
/// Never fails on a validated multiset: odd `N` becomes an
/// `Infeasible(OddAngleUnits)` verdict with the `V`-dependent steps absent.
pub fn check_enclosure(m: &PolygonMultiset) -> FeasibilityReport {
    let counts = derived_counts(m);
    let (n, s, f) = (counts.n, counts.s as i64, counts.f as i64);

    let mut caveats = vec![REALIZABILITY_CAVEAT.to_string()];
    let mut cross_checks = BTreeMap::new();
    cross_checks.insert(
        "M_minus_5N_equals_minus_4S".to_string(),
        counts.m as i64 - 5 * n as i64 == -4 * s,
    );

    let (v, e, euler, s_max, s_difference, verdict) = match vertex_estimate(n) {
        Ok(v) => {
            let vi = v as i64;
            let e = 3 * (vi - 2) - s;
            let euler = vi - e + f;
            // Identically 2 once V = N/2 + 2 and N = S + F; anything else is a bug.
            debug_assert_eq!(euler, 2);
            cross_checks.insert("euler_equals_2".to_string(), euler == 2);
            cross_checks.insert(
                "edge_incidence_2E_equals_3F_plus_S".to_string(),
                2 * e == 3 * f + s,
            );
            let s_max = s_max_formula(vi);
            let diff = s_max - s;
            if v < 4 {
                caveats.push(SMALL_V_CAVEAT.to_string());
            }
            let verdict = if diff < 0 {
                Verdict::Infeasible(InfeasibleReason::TooFlat)
            } else {
                if diff == 0 {
                    caveats.push(THRESHOLD_CAVEAT.to_string());
                }
                Verdict::SymbolicallyFeasible
            };
            (
                Some(v),
                Some(e),
                Some(euler),
                Some(s_max),
                Some(diff),
                verdict,
            )
        }
        Err(_) => {
            caveats.push(ODD_N_CAVEAT.to_string());
            (
                None,
                None,
                None,
                None,
                None,
                Verdict::Infeasible(InfeasibleReason::OddAngleUnits),
            )
        }
    };

    if verdict.is_feasible() {
        for (pattern, note) in KNOWN_FALSE_POSITIVES {
            if m.iter().eq(pattern.iter().copied()) {
                caveats.push(note.to_string());
            }
        }
    }

    FeasibilityReport {
        input: m.clone(),
        steps: Steps {
            n,
            v,
            s: counts.s,
            f: counts.f,
            e,
            m: counts.m,
        },
        euler,
        s_max,
        s_difference,
        verdict,
        caveats,
        cross_checks,
    }
}
