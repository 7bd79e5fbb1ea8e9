//! Audits explicit tetrahedral complexes against the exact 3D Euler link.
//!
//! A complex is a list of tetrahedra over vertex indices. Triangles shared by
//! two tetrahedra are internal gluings, triangles in one tetrahedron form the
//! boundary surface. Edges and vertices are boundary iff some boundary
//! triangle contains them. For a tetrahedralized 3-ball
//! `T - N_i + E_i - V_i = 1` and the boundary has `V - E + F = 2`.
//!
//! Boundary triangles carry no geometry, so which of them merge into larger
//! polygonal faces is declared through `flat_edges`: boundary edges that are
//! diagonals of a polygon rather than true polyhedron edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

type Triangle = [usize; 3];
type Edge = [usize; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct TetComplex {
    vertex_count: usize,
    tets: Vec<[usize; 4]>,
    flat_edges: Vec<Edge>,
    interior_vertices: Option<Vec<usize>>,
}

/// File form: `{"vertices": n, "tets": [[i,j,k,l], ...]}` plus the optional
/// `flat_edges` and `interior_vertices` lists.
#[derive(Serialize, Deserialize)]
struct RawComplex {
    vertices: usize,
    tets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    flat_edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interior_vertices: Option<Vec<usize>>,
}

impl TryFrom<RawComplex> for TetComplex {
    type Error = Error;

    fn try_from(raw: RawComplex) -> Result<Self> {
        let mut tets = Vec::with_capacity(raw.tets.len());
        for (index, tet) in raw.tets.into_iter().enumerate() {
            let tet: [usize; 4] = tet.try_into().map_err(|t: Vec<usize>| Error::InvalidTet {
                index,
                reason: format!("expected 4 vertices, got {}", t.len()),
            })?;
            tets.push(tet);
        }
        let mut complex = TetComplex::new(raw.vertices, tets)?.with_flat_edges(raw.flat_edges)?;
        if let Some(interior) = raw.interior_vertices {
            complex = complex.with_interior_vertices(interior)?;
        }
        Ok(complex)
    }
}

impl From<TetComplex> for RawComplex {
    fn from(c: TetComplex) -> Self {
        RawComplex {
            vertices: c.vertex_count,
            tets: c.tets.iter().map(|t| t.to_vec()).collect(),
            flat_edges: c.flat_edges,
            interior_vertices: c.interior_vertices,
        }
    }
}

fn sorted<const N: usize>(mut cell: [usize; N]) -> [usize; N] {
    cell.sort_unstable();
    cell
}

fn faces_of(tet: &[usize; 4]) -> [Triangle; 4] {
    let [a, b, c, d] = *tet;
    [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
}

fn edges_of_triangle(t: &Triangle) -> [Edge; 3] {
    let [a, b, c] = *t;
    [[a, b], [a, c], [b, c]]
}

fn edges_of_tet(tet: &[usize; 4]) -> [Edge; 6] {
    let [a, b, c, d] = *tet;
    [[a, b], [a, c], [a, d], [b, c], [b, d], [c, d]]
}

impl TetComplex {
    /// Validates that every tetrahedron has four distinct in-range vertices
    /// and that no tetrahedron repeats.
    pub fn new(vertex_count: usize, tets: Vec<[usize; 4]>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(tets.len());
        for (index, tet) in tets.into_iter().enumerate() {
            let tet = sorted(tet);
            if let Some(&bad) = tet.iter().find(|&&i| i >= vertex_count) {
                return Err(Error::InvalidTet {
                    index,
                    reason: format!("vertex {bad} out of range 0..{vertex_count}"),
                });
            }
            if tet.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTet {
                    index,
                    reason: "repeated vertex".into(),
                });
            }
            if !seen.insert(tet) {
                return Err(Error::DuplicateTet { index });
            }
            normalized.push(tet);
        }
        Ok(Self {
            vertex_count,
            tets: normalized,
            flat_edges: Vec::new(),
            interior_vertices: None,
        })
    }

    /// Declares boundary edges that are polygon diagonals (coplanarity merges).
    pub fn with_flat_edges(mut self, edges: Vec<[usize; 2]>) -> Result<Self> {
        let mut flat = BTreeSet::new();
        for edge in edges {
            let edge = sorted(edge);
            if edge[1] >= self.vertex_count || edge[0] == edge[1] {
                return Err(Error::FlatEdgeNotOnBoundary { edge });
            }
            flat.insert(edge);
        }
        self.flat_edges = flat.into_iter().collect();
        Ok(self)
    }

    /// Overrides the inferred interior/boundary vertex classification.
    pub fn with_interior_vertices(mut self, vertices: Vec<usize>) -> Result<Self> {
        let set: BTreeSet<usize> = vertices.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::InvalidTet {
                index: usize::MAX,
                reason: format!("interior vertex {bad} out of range"),
            });
        }
        self.interior_vertices = Some(set.into_iter().collect());
        Ok(self)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serialization is infallible")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn flat_edges(&self) -> &[[usize; 2]] {
        &self.flat_edges
    }
}

/// Interior and boundary cell counts of an audited complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuditCounts {
    pub t: usize,
    pub n_i: usize,
    pub e_i: usize,
    pub v_i: usize,
    pub vb: usize,
    pub eb: usize,
    pub fb: usize,
}

/// Boundary counts after merging triangles across flat edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolygonalBoundary {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub s: usize,
}

/// Conventions for tallying a complex with an interior Steiner vertex.
///
/// Only [`AccountingMode::SteinerNotCounted`] agrees with the exact
/// identities on normal-form complexes; the other three add interior cells to
/// the surface tallies and show how both identities break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AccountingMode {
    /// Surface polygons only; segments through interior vertices are not counted.
    SteinerNotCounted,
    /// Interior vertices added to `V`.
    SteinerCounted,
    /// Also adds interior edges at interior vertices to `E`.
    SteinerCountedEdges,
    /// Also moves triangles joining an interior vertex to a polyhedron edge
    /// from the gluing count to `F`.
    SteinerCountedEdgesFaces,
}

impl AccountingMode {
    pub const ALL: [AccountingMode; 4] = [
        AccountingMode::SteinerNotCounted,
        AccountingMode::SteinerCounted,
        AccountingMode::SteinerCountedEdges,
        AccountingMode::SteinerCountedEdgesFaces,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AccountingMode::SteinerNotCounted => "steiner-not-counted",
            AccountingMode::SteinerCounted => "steiner-counted",
            AccountingMode::SteinerCountedEdges => "steiner-counted-edges",
            AccountingMode::SteinerCountedEdgesFaces => "steiner-counted-edges-faces",
        }
    }
}

impl fmt::Display for AccountingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AccountingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        AccountingMode::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::UnknownMode(s.to_string()))
    }
}

/// `(V, E, F, T, N_i, S_i)` under one accounting mode plus the derived columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AccountingRow {
    pub mode: AccountingMode,
    pub v: i64,
    pub e: i64,
    pub f: i64,
    pub t: i64,
    pub n_i: i64,
    pub s_i: i64,
    pub e_minus_f: i64,
    pub two_t_minus_n_i: i64,
    pub euler: i64,
    pub link: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub counts: AuditCounts,
    /// `T - N_i + E_i - V_i`.
    pub exact_link_value: i64,
    /// `Vb - Eb + Fb` of the triangulated boundary.
    pub boundary_euler: i64,
    /// No interior vertices.
    pub normal_form: bool,
    pub polygonal: PolygonalBoundary,
    /// Interior edges incident to an interior vertex.
    pub steiner_edges: usize,
    /// Internal triangles joining an interior vertex to a polyhedron edge.
    pub steiner_faces: usize,
    pub accounting_modes: Vec<AccountingRow>,
}

impl AuditReport {
    pub fn is_three_ball(&self) -> bool {
        self.exact_link_value == 1 && self.boundary_euler == 2
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Classifies every cell and computes the identity values.
pub fn audit(c: &TetComplex) -> Result<AuditReport> {
    let mut triangles: BTreeMap<Triangle, Vec<usize>> = BTreeMap::new();
    for (i, tet) in c.tets.iter().enumerate() {
        for tri in faces_of(tet) {
            triangles.entry(tri).or_default().push(i);
        }
    }
    if let Some((tri, owners)) = triangles.iter().find(|(_, o)| o.len() > 2) {
        return Err(Error::NonManifoldTriangle {
            triangle: *tri,
            count: owners.len(),
        });
    }

    // face-connectivity of tetrahedra, and every declared vertex in use
    let mut parent: Vec<usize> = (0..c.tets.len()).collect();
    for owners in triangles.values().filter(|o| o.len() == 2) {
        let (a, b) = (find(&mut parent, owners[0]), find(&mut parent, owners[1]));
        parent[a] = b;
    }
    let roots: BTreeSet<usize> = (0..c.tets.len()).map(|i| find(&mut parent, i)).collect();
    let used: BTreeSet<usize> = c.tets.iter().flatten().copied().collect();
    if roots.len() != 1 || used.len() != c.vertex_count {
        return Err(Error::DisconnectedComplex);
    }

    let boundary: Vec<Triangle> = triangles
        .iter()
        .filter(|(_, o)| o.len() == 1)
        .map(|(t, _)| *t)
        .collect();
    let internal: Vec<Triangle> = triangles
        .iter()
        .filter(|(_, o)| o.len() == 2)
        .map(|(t, _)| *t)
        .collect();
    let boundary_edges: BTreeSet<Edge> = boundary.iter().flat_map(edges_of_triangle).collect();
    let all_edges: BTreeSet<Edge> = c.tets.iter().flat_map(edges_of_tet).collect();

    let interior_vertices: BTreeSet<usize> = match &c.interior_vertices {
        Some(explicit) => explicit.iter().copied().collect(),
        None => {
            let on_boundary: BTreeSet<usize> = boundary.iter().flatten().copied().collect();
            used.difference(&on_boundary).copied().collect()
        }
    };

    for edge in &c.flat_edges {
        if !boundary_edges.contains(edge) {
            return Err(Error::FlatEdgeNotOnBoundary { edge: *edge });
        }
    }
    let flat: BTreeSet<Edge> = c.flat_edges.iter().copied().collect();

    let interior_edges: Vec<&Edge> = all_edges.difference(&boundary_edges).collect();
    let steiner_edges = interior_edges
        .iter()
        .filter(|e| e.iter().any(|v| interior_vertices.contains(v)))
        .count();
    let steiner_faces = internal
        .iter()
        .filter(|tri| {
            tri.iter().any(|v| interior_vertices.contains(v))
                && edges_of_triangle(tri)
                    .iter()
                    .any(|e| boundary_edges.contains(e) && !flat.contains(e))
        })
        .count();

    let counts = AuditCounts {
        t: c.tets.len(),
        n_i: internal.len(),
        e_i: interior_edges.len(),
        v_i: interior_vertices.len(),
        vb: c.vertex_count - interior_vertices.len(),
        eb: boundary_edges.len(),
        fb: boundary.len(),
    };
    let polygonal = PolygonalBoundary {
        v: counts.vb,
        e: counts.eb - flat.len(),
        f: counts.fb - flat.len(),
        s: flat.len(),
    };
    let mut report = AuditReport {
        counts,
        exact_link_value: counts.t as i64 - counts.n_i as i64 + counts.e_i as i64
            - counts.v_i as i64,
        boundary_euler: counts.vb as i64 - counts.eb as i64 + counts.fb as i64,
        normal_form: counts.v_i == 0,
        polygonal,
        steiner_edges,
        steiner_faces,
        accounting_modes: Vec::new(),
    };
    report.accounting_modes = AccountingMode::ALL
        .iter()
        .map(|&m| accounting_row(&report, m))
        .collect();
    Ok(report)
}

/// Recomputes the surface and interior tallies under an accounting convention.
pub fn accounting_row(report: &AuditReport, mode: AccountingMode) -> AccountingRow {
    let c = &report.counts;
    let p = &report.polygonal;
    let mut v = p.v as i64;
    let mut e = p.e as i64;
    let mut f = p.f as i64;
    let mut n_i = c.n_i as i64;
    let s_i = (c.e_i - report.steiner_edges) as i64;
    let t = c.t as i64;
    if mode >= AccountingMode::SteinerCounted {
        v += c.v_i as i64;
    }
    if mode >= AccountingMode::SteinerCountedEdges {
        e += report.steiner_edges as i64;
    }
    if mode == AccountingMode::SteinerCountedEdgesFaces {
        f += report.steiner_faces as i64;
        n_i -= report.steiner_faces as i64;
    }
    AccountingRow {
        mode,
        v,
        e,
        f,
        t,
        n_i,
        s_i,
        e_minus_f: e - f,
        two_t_minus_n_i: 2 * t - n_i,
        euler: v - e + f,
        link: t - n_i + s_i,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tetrahedron() {
        let c = TetComplex::new(4, vec![[0, 1, 2, 3]]).unwrap();
        let r = audit(&c).unwrap();
        assert_eq!(
            r.counts,
            AuditCounts {
                t: 1,
                n_i: 0,
                e_i: 0,
                v_i: 0,
                vb: 4,
                eb: 6,
                fb: 4
            }
        );
        assert_eq!((r.exact_link_value, r.boundary_euler), (1, 2));
        assert!(r.normal_form && r.is_three_ball());
    }

    #[test]
    fn bipyramid() {
        let c = TetComplex::new(5, vec![[0, 1, 2, 3], [0, 1, 2, 4]]).unwrap();
        let r = audit(&c).unwrap();
        assert_eq!((r.counts.t, r.counts.n_i, r.counts.e_i), (2, 1, 0));
        assert_eq!((r.counts.vb, r.counts.eb, r.counts.fb), (5, 9, 6));
        assert_eq!(r.exact_link_value, 1);
    }

    #[test]
    fn invalid_tets_rejected() {
        assert!(matches!(
            TetComplex::new(4, vec![[0, 1, 2, 4]]),
            Err(Error::InvalidTet { .. })
        ));
        assert!(matches!(
            TetComplex::new(4, vec![[0, 1, 1, 3]]),
            Err(Error::InvalidTet { .. })
        ));
        assert_eq!(
            TetComplex::new(4, vec![[0, 1, 2, 3], [3, 2, 1, 0]]),
            Err(Error::DuplicateTet { index: 1 })
        );
    }

    #[test]
    fn non_manifold_triangle() {
        let c = TetComplex::new(6, vec![[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 2, 5]]).unwrap();
        assert_eq!(
            audit(&c),
            Err(Error::NonManifoldTriangle {
                triangle: [0, 1, 2],
                count: 3
            })
        );
    }

    #[test]
    fn disconnected_complexes() {
        let c = TetComplex::new(8, vec![[0, 1, 2, 3], [4, 5, 6, 7]]).unwrap();
        assert_eq!(audit(&c), Err(Error::DisconnectedComplex));
        // sharing only an edge is not face-connected
        let c = TetComplex::new(6, vec![[0, 1, 2, 3], [0, 1, 4, 5]]).unwrap();
        assert_eq!(audit(&c), Err(Error::DisconnectedComplex));
        // unused vertex
        let c = TetComplex::new(5, vec![[0, 1, 2, 3]]).unwrap();
        assert_eq!(audit(&c), Err(Error::DisconnectedComplex));
    }

    #[test]
    fn flat_edge_must_be_on_boundary() {
        // octahedron with the pole-to-pole axis as its interior edge
        let c = TetComplex::new(
            6,
            vec![[0, 1, 2, 3], [0, 1, 3, 4], [0, 1, 4, 5], [0, 1, 5, 2]],
        )
        .unwrap()
        .with_flat_edges(vec![[1, 0]])
        .unwrap();
        assert_eq!(
            audit(&c),
            Err(Error::FlatEdgeNotOnBoundary { edge: [0, 1] })
        );
    }

    #[test]
    fn explicit_interior_override() {
        let c = TetComplex::new(4, vec![[0, 1, 2, 3]])
            .unwrap()
            .with_interior_vertices(vec![3])
            .unwrap();
        let r = audit(&c).unwrap();
        assert_eq!((r.counts.v_i, r.counts.vb), (1, 3));
        assert_eq!(r.exact_link_value, 0);
        assert!(!r.normal_form);
    }

    #[test]
    fn mode_names_parse() {
        for m in AccountingMode::ALL {
            assert_eq!(m.name().parse::<AccountingMode>(), Ok(m));
        }
        assert_eq!(
            "Steiner_Counted_Edges".parse(),
            Ok(AccountingMode::SteinerCountedEdges)
        );
        assert_eq!(
            "bogus".parse::<AccountingMode>(),
            Err(Error::UnknownMode("bogus".into()))
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":5,"tets":[[0,1,2,3],[0,1,2,4]]}"#;
        let c = TetComplex::from_json(text).unwrap();
        assert_eq!(c.to_json(), text);
        assert!(TetComplex::from_json(r#"{"vertices":4,"tets":[[0,1,2]]}"#).is_err());
    }
}
