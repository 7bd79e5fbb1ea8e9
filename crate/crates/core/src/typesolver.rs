//! Non-negative integer solutions of the face-type and vertex-type systems.
//!
//! Faces: `sum c_k = F`, `sum k c_k = 2E`, `sum (k-3) c_k = S` over degrees
//! `3..=V-1`. Vertices: `sum c_d = V`, `sum d c_d = 2E` over valencies
//! `3..=V-1`, with `sum (d-2) c_d = 2E - 2V` following from the first two.
//!
//! Both reduce to distributing a fixed excess over `3`, the same search
//! serves both. Output is lexicographically descending starting from the
//! degree-3 count.

use serde::Serialize;

use crate::external::{self, MIN_VERTICES};
use crate::{Error, Result};

/// Whether `enumerate_face_types` requires `E` and `F` to match `(V, S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Consistency {
    #[default]
    Enforce,
    /// Exploratory: only the three face equations are imposed.
    Override,
}

/// Face counts for degrees `3..=V-1`; `counts[0]` is the triangle count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FaceTypeSolution {
    pub counts: Vec<u64>,
}

/// Vertex counts for valencies `3..=V-1`; `counts[0]` is the trivalent count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexTypeSolution {
    pub counts: Vec<u64>,
}

macro_rules! degree_accessors {
    ($ty:ty) => {
        impl $ty {
            /// Count at `degree`; zero outside `3..=V-1`.
            pub fn count(&self, degree: u32) -> u64 {
                degree
                    .checked_sub(3)
                    .and_then(|i| self.counts.get(i as usize))
                    .copied()
                    .unwrap_or(0)
            }

            pub fn max_degree(&self) -> u32 {
                self.counts.len() as u32 + 2
            }

            /// `(degree, count)` pairs, zeros included.
            pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
                self.counts
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (i as u32 + 3, c))
            }

            fn weighted(&self, offset: i64) -> i64 {
                self.iter()
                    .map(|(d, c)| (d as i64 - offset) * c as i64)
                    .sum()
            }

            fn total(&self) -> u64 {
                self.counts.iter().sum()
            }
        }
    };
}

degree_accessors!(FaceTypeSolution);
degree_accessors!(VertexTypeSolution);

/// Cap on vertices at or above a valency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HighValencyCap {
    pub min_valency: u32,
    pub max_vertices: u64,
}

/// Optional heuristic post-filters for realizability. All off by default.
///
/// None of these are definitive: a rejected solution may still be
/// realizable and an accepted one may not be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RealizabilityFilters {
    pub max_face_degree: Option<u32>,
    pub high_valency: Option<HighValencyCap>,
}

impl RealizabilityFilters {
    pub fn is_active(&self) -> bool {
        self.max_face_degree.is_some() || self.high_valency.is_some()
    }

    pub fn keep_face(&self, sol: &FaceTypeSolution) -> bool {
        match self.max_face_degree {
            Some(cap) => sol.iter().all(|(d, c)| c == 0 || d <= cap),
            None => true,
        }
    }

    pub fn keep_vertex(&self, sol: &VertexTypeSolution) -> bool {
        match self.high_valency {
            Some(cap) => {
                let high: u64 = sol
                    .iter()
                    .filter(|&(d, _)| d >= cap.min_valency)
                    .map(|(_, c)| c)
                    .sum();
                high <= cap.max_vertices
            }
            None => true,
        }
    }
}

/// All vectors `c` of length `width` with `sum c = total` and `sum j c_j = excess`,
/// lexicographically descending.
fn excess_distributions(total: u64, excess: u64, width: usize) -> Vec<Vec<u64>> {
    fn reachable(remaining: u64, excess: u64, from: usize, width: usize) -> bool {
        // any integer in [r*from, r*(width-1)] is a sum of r weights from from..width
        remaining * from as u64 <= excess && excess <= remaining * (width as u64 - 1)
    }

    fn descend(
        slot: usize,
        remaining: u64,
        excess: u64,
        width: usize,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if slot + 1 == width {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        let weight = slot as u64;
        let most = match excess.checked_div(weight) {
            Some(q) => remaining.min(q),
            None => remaining,
        };
        for c in (0..=most).rev() {
            let (r, x) = (remaining - c, excess - c * weight);
            if reachable(r, x, slot + 1, width) {
                current.push(c);
                descend(slot + 1, r, x, width, current, out);
                current.pop();
            }
        }
    }

    let mut out = Vec::new();
    if width == 0 || !reachable(total, excess, 0, width) {
        return out;
    }
    descend(
        0,
        total,
        excess,
        width,
        &mut Vec::with_capacity(width),
        &mut out,
    );
    out
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

/// Face-type vectors for a `(V, S, E, F)` configuration, face degree capped at `V - 1`.
pub fn enumerate_face_types(
    v: u64,
    s: u64,
    e: u64,
    f: u64,
    consistency: Consistency,
) -> Result<Vec<FaceTypeSolution>> {
    require_vertices(v)?;
    let (vi, si, ei, fi) = (v as i64, s as i64, e as i64, f as i64);
    if consistency == Consistency::Enforce && (ei != 3 * vi - 6 - si || fi != 2 * vi - 4 - si) {
        return Err(Error::InconsistentInputs(format!(
            "V={v}, S={s} requires E={} and F={}, got E={e}, F={f}",
            3 * vi - 6 - si,
            2 * vi - 4 - si
        )));
    }
    // the edge equation minus three times the face equation is the flatness equation
    if 2 * ei != 3 * fi + si {
        return Ok(Vec::new());
    }
    let solutions: Vec<_> = excess_distributions(f, s, (v - 3) as usize)
        .into_iter()
        .map(|counts| FaceTypeSolution { counts })
        .collect();
    debug_assert!(solutions
        .iter()
        .all(|sol| sol.total() == f && sol.weighted(0) == 2 * ei && sol.weighted(3) == si));
    Ok(solutions)
}

/// Vertex-type vectors for `V` vertices and `E` edges, valency capped at `V - 1`.
pub fn enumerate_vertex_types(v: u64, e: u64) -> Result<Vec<VertexTypeSolution>> {
    let min = external::e_min(v)?;
    let max = 3 * v - 6;
    if e < min || e > max {
        return Err(Error::EdgeCountOutOfRange { v, e, min, max });
    }
    let solutions: Vec<_> = excess_distributions(v, 2 * e - 3 * v, (v - 3) as usize)
        .into_iter()
        .map(|counts| VertexTypeSolution { counts })
        .collect();
    let (vi, ei) = (v as i64, e as i64);
    debug_assert!(solutions.iter().all(|sol| sol.total() == v
        && sol.weighted(0) == 2 * ei
        && sol.weighted(2) == 2 * ei - 2 * vi));
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces(rows: &[&[u64]]) -> Vec<FaceTypeSolution> {
        rows.iter()
            .map(|r| FaceTypeSolution { counts: r.to_vec() })
            .collect()
    }

    fn verts(rows: &[&[u64]]) -> Vec<VertexTypeSolution> {
        rows.iter()
            .map(|r| VertexTypeSolution { counts: r.to_vec() })
            .collect()
    }

    #[test]
    fn face_worked_example() {
        let got = enumerate_face_types(6, 2, 10, 6, Consistency::Enforce).unwrap();
        assert_eq!(got, faces(&[&[5, 0, 1], &[4, 2, 0]]));
    }

    #[test]
    fn tetrahedron_faces() {
        let got = enumerate_face_types(4, 0, 6, 4, Consistency::Enforce).unwrap();
        assert_eq!(got, faces(&[&[4]]));
    }

    #[test]
    fn eight_vertex_six_faces_includes_cube_and_false_positive() {
        let got = enumerate_face_types(8, 6, 12, 6, Consistency::Enforce).unwrap();
        assert!(got.contains(&FaceTypeSolution {
            counts: vec![0, 6, 0, 0, 0]
        }));
        assert!(got.contains(&FaceTypeSolution {
            counts: vec![4, 0, 0, 2, 0]
        }));
        // oracle-frozen: partitions of 6 into at most 6 parts of size at most 4
        assert_eq!(got.len(), 9);
    }

    #[test]
    fn inconsistent_inputs_rejected_unless_overridden() {
        assert!(matches!(
            enumerate_face_types(6, 2, 11, 6, Consistency::Enforce),
            Err(Error::InconsistentInputs(_))
        ));
        // E and F consistent with each other but not with V
        let got = enumerate_face_types(6, 1, 11, 7, Consistency::Override).unwrap();
        assert_eq!(got, faces(&[&[6, 1, 0]]));
        let got = enumerate_face_types(9, 2, 10, 6, Consistency::Override).unwrap();
        assert!(!got.is_empty());
        assert!(enumerate_face_types(6, 2, 11, 6, Consistency::Override)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn vertex_worked_examples() {
        assert_eq!(
            enumerate_vertex_types(6, 10).unwrap(),
            verts(&[&[5, 0, 1], &[4, 2, 0]])
        );
        assert_eq!(
            enumerate_vertex_types(6, 11).unwrap(),
            verts(&[&[4, 0, 2], &[3, 2, 1], &[2, 4, 0]])
        );
        assert_eq!(enumerate_vertex_types(4, 6).unwrap(), verts(&[&[4]]));
    }

    #[test]
    fn vertex_edge_range_enforced() {
        assert_eq!(
            enumerate_vertex_types(6, 8),
            Err(Error::EdgeCountOutOfRange {
                v: 6,
                e: 8,
                min: 9,
                max: 12
            })
        );
        assert!(enumerate_vertex_types(6, 13).is_err());
        assert!(matches!(
            enumerate_vertex_types(3, 3),
            Err(Error::VertexCountTooSmall { .. })
        ));
    }

    #[test]
    fn accessors() {
        let sol = FaceTypeSolution {
            counts: vec![4, 0, 0, 2, 0],
        };
        assert_eq!(sol.count(6), 2);
        assert_eq!(sol.count(3), 4);
        assert_eq!(sol.count(2), 0);
        assert_eq!(sol.count(9), 0);
        assert_eq!(sol.max_degree(), 7);
    }

    #[test]
    fn filters_are_opt_in() {
        let sols = enumerate_face_types(8, 6, 12, 6, Consistency::Enforce).unwrap();
        let off = RealizabilityFilters::default();
        assert!(!off.is_active());
        assert!(sols.iter().all(|s| off.keep_face(s)));
        let capped = RealizabilityFilters {
            max_face_degree: Some(5),
            ..Default::default()
        };
        assert!(!capped.keep_face(&FaceTypeSolution {
            counts: vec![4, 0, 0, 2, 0]
        }));
        assert!(capped.keep_face(&FaceTypeSolution {
            counts: vec![0, 6, 0, 0, 0]
        }));

        let cap = RealizabilityFilters {
            high_valency: Some(HighValencyCap {
                min_valency: 5,
                max_vertices: 1,
            }),
            ..Default::default()
        };
        let kept: Vec<_> = enumerate_vertex_types(6, 11)
            .unwrap()
            .into_iter()
            .filter(|s| cap.keep_vertex(s))
            .collect();
        assert_eq!(kept, verts(&[&[3, 2, 1], &[2, 4, 0]]));
    }
}
