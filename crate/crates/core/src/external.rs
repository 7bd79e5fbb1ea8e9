//! Surface bookkeeping for genus-0 polyhedra in normal form.
//!
//! Everything here is a function of the vertex count `V` and the flatness `S`
//! (number of coplanarity merges away from a full triangulation). Odd and even
//! `V` get separate integer branches instead of half-integer arithmetic.

use serde::Serialize;

use crate::{Error, Result};

/// Smallest vertex count any bound in this module accepts.
pub const MIN_VERTICES: u64 = 4;

/// Surface counts of one `(V, S)` configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExternalProfile {
    pub v: u64,
    pub e: u64,
    pub f: u64,
    pub s: u64,
    /// Angle units, multiples of 180 degrees.
    pub n: u64,
    /// Fullness units, `5N - 4S`.
    pub m: u64,
    /// Boundary triangles after triangulating every face.
    pub f_triangle: u64,
}

impl ExternalProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.v as i64 - self.e as i64 + self.f as i64
    }
}

/// Extremal edge, face and flatness values for a vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExternalBounds {
    pub v: u64,
    pub e_min: u64,
    pub e_max: u64,
    pub f_min: u64,
    pub f_max: u64,
    pub s_max: u64,
    /// Number of distinct `(F, E)` pairs, one per admissible flatness.
    pub combo_count: u64,
}

/// One entry of the configuration series, ordered from flattest to fully triangulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlatnessStep {
    pub s: u64,
    pub e: u64,
    pub f: u64,
}

fn require_vertices(v: u64) -> Result<()> {
    if v < MIN_VERTICES {
        return Err(Error::VertexCountTooSmall {
            v,
            min: MIN_VERTICES,
        });
    }
    Ok(())
}

/// Parity-branched `S_max` without the `V >= 4` guard; negative below `V = 5`
/// for odd `V` and below `V = 4` for even `V`.
pub(crate) fn s_max_formula(v: i64) -> i64 {
    if v % 2 == 0 {
        3 * v / 2 - 6
    } else {
        (3 * v - 13) / 2
    }
}

/// Minimum edge count, `ceil(3V / 2)`, forced by every vertex having degree at least 3.
pub fn e_min(v: u64) -> Result<u64> {
    require_vertices(v)?;
    Ok(if v.is_multiple_of(2) {
        3 * v / 2
    } else {
        (3 * v).div_ceil(2)
    })
}

/// Maximum flatness for `V` vertices.
pub fn s_max(v: u64) -> Result<u64> {
    require_vertices(v)?;
    Ok(s_max_formula(v as i64) as u64)
}

pub fn external_bounds(v: u64) -> Result<ExternalBounds> {
    let e_min = e_min(v)?;
    let e_max = 3 * v - 6;
    let f_max = 2 * v - 4;
    let s_max = e_max - e_min;
    debug_assert_eq!(s_max as i64, s_max_formula(v as i64));
    Ok(ExternalBounds {
        v,
        e_min,
        e_max,
        f_min: f_max - s_max,
        f_max,
        s_max,
        combo_count: s_max + 1,
    })
}

/// Full surface profile of a `V`-vertex polyhedron with flatness `S`.
pub fn external_profile(v: u64, s: u64) -> Result<ExternalProfile> {
    let s_max = s_max(v)?;
    if s > s_max {
        return Err(Error::FlatnessOutOfRange { v, s, s_max });
    }
    let n = 2 * (v - 2);
    let f = 2 * v - 4 - s;
    Ok(ExternalProfile {
        v,
        e: 3 * v - 6 - s,
        f,
        s,
        n,
        m: 5 * n - 4 * s,
        f_triangle: f + s,
    })
}

/// `(S_k, E_k, F_k)` for `k = 0..=S_max`, starting at the flattest configuration.
pub fn flatness_series(v: u64) -> Result<Vec<FlatnessStep>> {
    let b = external_bounds(v)?;
    Ok((0..=b.s_max)
        .map(|k| FlatnessStep {
            s: b.s_max - k,
            e: b.e_min + k,
            f: b.f_min + k,
        })
        .collect())
}

/// `(M_min, M_max)`: fullness at maximal flatness and at full triangulation.
pub fn m_bounds(v: u64) -> Result<(u64, u64)> {
    require_vertices(v)?;
    let m_min = if v.is_multiple_of(2) {
        4 * v + 4
    } else {
        4 * v + 6
    };
    Ok((m_min, 10 * (v - 2)))
}
