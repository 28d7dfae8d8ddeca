//! Lattice families and their finite periodic instances.
//!
//! The infinite lattices are proxied by tori (periodic in both directions)
//! and cylinders (periodic across the frontier, free along the sweep).
//! Vertices are indexed column-major along the sweep direction, which is the
//! processing order the counting engine relies on: vertex (i, j) has index
//! `j * frontier + i`, with i running bottom-to-top inside a column.
//!
//! The hexagonal lattice is encoded as the brick-wall subgraph of the square
//! torus: every in-column edge, plus a cross-column edge at (i, j) exactly
//! when i + j is even. The degree-3 and girth-6 checks in the tests certify
//! the encoding. The 1-D chain is realized as cycles (tori) and paths
//! (cylinders); a cycle of length n is stored with frontier 1 and n columns.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Square,
    Triangular,
    Hexagonal,
    Chain,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 4] = [
        LatticeKind::Square,
        LatticeKind::Triangular,
        LatticeKind::Hexagonal,
        LatticeKind::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
            LatticeKind::Hexagonal => "hexagonal",
            LatticeKind::Chain => "chain",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "square" | "sq" => Ok(LatticeKind::Square),
            "triangular" | "tri" => Ok(LatticeKind::Triangular),
            "hexagonal" | "hex" | "honeycomb" => Ok(LatticeKind::Hexagonal),
            "chain" | "1d" => Ok(LatticeKind::Chain),
            other => Err(Error::UnknownLattice(other.to_string())),
        }
    }
}

/// Length of the shortest cycle in the infinite lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{}", g),
            Girth::Infinite => write!(f, "infinity"),
        }
    }
}

/// A lattice family: coordination number q and girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub coordination: u32,
    pub girth: Girth,
}

impl LatticeSpec {
    pub fn of(kind: LatticeKind) -> Self {
        let (coordination, girth) = match kind {
            LatticeKind::Square => (4, Girth::Finite(4)),
            LatticeKind::Triangular => (6, Girth::Finite(3)),
            LatticeKind::Hexagonal => (3, Girth::Finite(6)),
            LatticeKind::Chain => (2, Girth::Infinite),
        };
        Self {
            kind,
            coordination,
            girth,
        }
    }

    /// Minimum admissible size in a periodic direction (small instances
    /// would create parallel edges).
    pub fn min_periodic(self) -> u32 {
        match self.kind {
            LatticeKind::Hexagonal => 4,
            _ => 3,
        }
    }
}

/// An edge with endpoints in processing order (`u < v`). Seam edges wrap the
/// sweep direction of a torus: they join the last column back to the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub seam: bool,
}

/// A finite periodic or semi-periodic lattice instance.
#[derive(Clone, Debug)]
pub struct TorusGraph {
    pub spec: LatticeSpec,
    /// Dimensions as requested: (Lx, Ly) for tori, (circumference, length)
    /// for cylinders, (n, 1) for chain cycles.
    pub dims: (u32, u32),
    pub cylinder: bool,
    n: u32,
    frontier: u32,
    columns: u32,
    edges: Vec<Edge>,
}

impl TorusGraph {
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of sites per column in the sweep layout; the counting engine's
    /// state width is bounded by this.
    pub fn frontier_width(&self) -> u32 {
        self.frontier
    }

    pub fn column_count(&self) -> u32 {
        self.columns
    }

    pub fn id(&self) -> String {
        format!(
            "{} {} {}x{}",
            self.spec.kind.name(),
            if self.cylinder { "cylinder" } else { "torus" },
            self.dims.0,
            self.dims.1
        )
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n as usize];
        for e in &self.edges {
            d[e.u as usize] += 1;
            d[e.v as usize] += 1;
        }
        d
    }

    /// Drop all edges incident to `v`, keeping the vertex in place as an
    /// isolated site. Used by the translation-invariance checks.
    pub fn delete_vertex(&self, v: u32) -> TorusGraph {
        assert!(v < self.n);
        let mut g = self.clone();
        g.edges.retain(|e| e.u != v && e.v != v);
        g
    }

    /// Edge list as text, one `u v` pair per line, 0-based indices.
    pub fn edge_list_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
        out
    }

    /// Brute-force length of the shortest cycle, or None for a forest.
    /// For each edge, BFS the distance between its endpoints with the edge
    /// removed; the minimum over edges of distance + 1 is the girth.
    pub fn shortest_cycle_len(&self) -> Option<u32> {
        let n = self.n as usize;
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in self.edges.iter().enumerate() {
            adj[e.u as usize].push((e.v as usize, idx));
            adj[e.v as usize].push((e.u as usize, idx));
        }
        let mut best: Option<u32> = None;
        let mut dist = vec![u32::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for (idx, e) in self.edges.iter().enumerate() {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            queue.clear();
            dist[e.u as usize] = 0;
            queue.push_back(e.u as usize);
            'bfs: while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if dist[x] + 1 >= b {
                        continue;
                    }
                }
                for &(y, eidx) in &adj[x] {
                    if eidx == idx {
                        continue;
                    }
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        if y == e.v as usize {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            let d = dist[e.v as usize];
            if d != u32::MAX {
                let cycle = d + 1;
                best = Some(best.map_or(cycle, |b| b.min(cycle)));
            }
        }
        best
    }
}

struct Builder {
    frontier: u32,
    edges: Vec<Edge>,
}

impl Builder {
    fn idx(&self, i: u32, j: u32) -> u32 {
        j * self.frontier + i
    }

    fn push(&mut self, a: u32, b: u32, seam: bool) {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        assert_ne!(u, v, "loop edge in lattice construction");
        self.edges.push(Edge { u, v, seam });
    }
}

fn validate_2d(spec: LatticeSpec, lx: u32, ly: u32, cylinder: bool) -> Result<()> {
    let min = spec.min_periodic();
    let lattice = spec.kind.name();
    if lx < min || (!cylinder && ly < min) || (cylinder && ly < 1) {
        return Err(Error::DimensionTooSmall { lattice, lx, ly, min });
    }
    if spec.kind == LatticeKind::Hexagonal && (lx % 2 != 0 || (!cylinder && ly % 2 != 0)) {
        return Err(Error::OddHexagonalDimension { lx, ly });
    }
    Ok(())
}

/// Emit the in-column, cross-column, and (for tori) seam edges of a 2-D
/// lattice in the sweep layout shared by the counting engine.
fn build_2d(spec: LatticeSpec, lx: u32, ly: u32, cylinder: bool) -> Vec<Edge> {
    let mut b = Builder {
        frontier: lx,
        edges: Vec::new(),
    };
    let kind = spec.kind;
    for j in 0..ly {
        for i in 0..lx {
            // in-column edges (i,j)-(i+1,j), wrapping the frontier
            if i + 1 < lx {
                b.push(b.idx(i, j), b.idx(i + 1, j), false);
            } else {
                b.push(b.idx(0, j), b.idx(i, j), false);
            }
            // cross-column edges (i,j)-(i,j+1)
            let vertical = match kind {
                LatticeKind::Hexagonal => (i + j) % 2 == 0,
                _ => true,
            };
            if vertical {
                if j + 1 < ly {
                    b.push(b.idx(i, j), b.idx(i, j + 1), false);
                } else if !cylinder {
                    b.push(b.idx(i, 0), b.idx(i, j), true);
                }
            }
            // diagonal edges (i,j)-(i+1,j+1)
            if kind == LatticeKind::Triangular {
                let i2 = (i + 1) % lx;
                if j + 1 < ly {
                    b.push(b.idx(i, j), b.idx(i2, j + 1), false);
                } else if !cylinder {
                    b.push(b.idx(i2, 0), b.idx(i, j), true);
                }
            }
        }
    }
    b.edges
}

fn finish(
    spec: LatticeSpec,
    dims: (u32, u32),
    cylinder: bool,
    n: u32,
    frontier: u32,
    columns: u32,
    mut edges: Vec<Edge>,
) -> TorusGraph {
    edges.sort_by_key(|e| (e.u, e.v));
    let mut seen = HashSet::with_capacity(edges.len());
    for e in &edges {
        assert!(e.u < e.v && e.v < n, "malformed edge in lattice construction");
        assert!(seen.insert((e.u, e.v)), "parallel edge in lattice construction");
    }
    let g = TorusGraph {
        spec,
        dims,
        cylinder,
        n,
        frontier,
        columns,
        edges,
    };
    if !cylinder {
        // degree regularity and the edge-count identity E = Nq/2
        let q = spec.coordination;
        assert!(
            g.degrees().iter().all(|&d| d == q),
            "torus degree regularity violated"
        );
        assert_eq!(g.edge_count() as u64 * 2, n as u64 * q as u64);
    }
    g
}

/// Build a fully periodic instance. For the three 2-D lattices this is an
/// Lx x Ly torus; for the chain it is the cycle of length Lx (pass Ly = 1).
pub fn build_torus(spec: LatticeSpec, lx: u32, ly: u32) -> Result<TorusGraph> {
    match spec.kind {
        LatticeKind::Chain => {
            if ly != 1 || lx < 3 {
                return Err(Error::BadChainDims { lx, ly });
            }
            let n = lx;
            let mut edges: Vec<Edge> = (0..n - 1)
                .map(|j| Edge {
                    u: j,
                    v: j + 1,
                    seam: false,
                })
                .collect();
            edges.push(Edge {
                u: 0,
                v: n - 1,
                seam: true,
            });
            Ok(finish(spec, (lx, 1), false, n, 1, n, edges))
        }
        _ => {
            validate_2d(spec, lx, ly, false)?;
            let edges = build_2d(spec, lx, ly, false);
            Ok(finish(spec, (lx, ly), false, lx * ly, lx, ly, edges))
        }
    }
}

/// Build an instance periodic in the first coordinate only (free boundary
/// along the sweep). For the chain, the degenerate cylinder is the path with
/// `length` vertices; pass circumference 1.
pub fn build_cylinder(spec: LatticeSpec, circumference: u32, length: u32) -> Result<TorusGraph> {
    match spec.kind {
        LatticeKind::Chain => {
            if circumference != 1 {
                return Err(Error::BadChainCylinder { circumference });
            }
            if length < 1 {
                return Err(Error::DimensionTooSmall {
                    lattice: "chain",
                    lx: circumference,
                    ly: length,
                    min: 1,
                });
            }
            let edges: Vec<Edge> = (0..length.saturating_sub(1))
                .map(|j| Edge {
                    u: j,
                    v: j + 1,
                    seam: false,
                })
                .collect();
            Ok(finish(
                spec,
                (1, length),
                true,
                length,
                1,
                length,
                edges,
            ))
        }
        _ => {
            validate_2d(spec, circumference, length, true)?;
            let edges = build_2d(spec, circumference, length, true);
            Ok(finish(
                spec,
                (circumference, length),
                true,
                circumference * length,
                circumference,
                length,
                edges,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(kind: LatticeKind, lx: u32, ly: u32) -> TorusGraph {
        build_torus(LatticeSpec::of(kind), lx, ly).unwrap()
    }

    fn cylinder(kind: LatticeKind, c: u32, m: u32) -> TorusGraph {
        build_cylinder(LatticeSpec::of(kind), c, m).unwrap()
    }

    #[test]
    fn square_3x3() {
        let g = torus(LatticeKind::Square, 3, 3);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 18);
        assert!(g.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn triangular_3x3() {
        let g = torus(LatticeKind::Triangular, 3, 3);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 27);
        assert!(g.degrees().iter().all(|&d| d == 6));
    }

    #[test]
    fn hexagonal_4x4() {
        let g = torus(LatticeKind::Hexagonal, 4, 4);
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 24);
        assert!(g.degrees().iter().all(|&d| d == 3));
        let horizontal = g
            .edges()
            .iter()
            .filter(|e| e.v - e.u == 1 || (e.v - e.u == 3 && e.u % 4 == 0))
            .count();
        assert_eq!(horizontal, 16);
    }

    #[test]
    fn torus_girth_matches_lattice_girth() {
        // instances with dims >= girth + 1, where no wrap cycle can shortcut
        assert_eq!(torus(LatticeKind::Square, 5, 5).shortest_cycle_len(), Some(4));
        assert_eq!(torus(LatticeKind::Triangular, 4, 4).shortest_cycle_len(), Some(3));
        assert_eq!(torus(LatticeKind::Hexagonal, 8, 8).shortest_cycle_len(), Some(6));
        // at 4x4 the hexagonal torus's frontier wrap itself is a 4-cycle
        assert_eq!(torus(LatticeKind::Hexagonal, 4, 4).shortest_cycle_len(), Some(4));
        assert_eq!(torus(LatticeKind::Chain, 12, 1).shortest_cycle_len(), Some(12));
    }

    #[test]
    fn chain_cycle() {
        let g = torus(LatticeKind::Chain, 5, 1);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert_eq!(g.edges().iter().filter(|e| e.seam).count(), 1);
        assert!(build_torus(LatticeSpec::of(LatticeKind::Chain), 5, 2).is_err());
        assert!(build_torus(LatticeSpec::of(LatticeKind::Chain), 2, 1).is_err());
    }

    #[test]
    fn square_cylinders() {
        let ring = cylinder(LatticeKind::Square, 4, 1);
        assert_eq!(ring.vertex_count(), 4);
        assert_eq!(ring.edge_count(), 4);
        let tube = cylinder(LatticeKind::Square, 4, 2);
        assert_eq!(tube.edge_count(), 12); // 4+4 ring edges plus 4 rungs
        assert!(tube.edges().iter().all(|e| !e.seam));
    }

    #[test]
    fn hexagonal_cylinder_boundary_degrees() {
        let g = cylinder(LatticeKind::Hexagonal, 6, 4);
        let degs = g.degrees();
        for j in 0..4u32 {
            for i in 0..6u32 {
                let d = degs[(j * 6 + i) as usize];
                let cut = (j == 0 && (i + j) % 2 != 0) || (j == 3 && (i + j) % 2 == 0);
                assert_eq!(d, if cut { 2 } else { 3 }, "site ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn chain_cylinder_is_a_path() {
        let g = cylinder(LatticeKind::Chain, 1, 4);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), vec![1, 2, 2, 1]);
        assert!(build_cylinder(LatticeSpec::of(LatticeKind::Chain), 2, 4).is_err());
    }

    #[test]
    fn dimension_validation() {
        assert!(build_torus(LatticeSpec::of(LatticeKind::Square), 2, 5).is_err());
        assert!(build_torus(LatticeSpec::of(LatticeKind::Hexagonal), 5, 4).is_err());
        assert!(build_torus(LatticeSpec::of(LatticeKind::Hexagonal), 4, 2).is_err());
        assert!(build_cylinder(LatticeSpec::of(LatticeKind::Hexagonal), 4, 3).is_ok());
        assert!(build_cylinder(LatticeSpec::of(LatticeKind::Square), 4, 0).is_err());
    }

    #[test]
    fn seam_edges_join_first_and_last_columns() {
        let g = torus(LatticeKind::Triangular, 4, 5);
        for e in g.edges() {
            if e.seam {
                assert!(e.u < 4);
                assert!(e.v >= 4 * 4);
            }
        }
        // triangular seams: one horizontal and one diagonal per frontier site
        assert_eq!(g.edges().iter().filter(|e| e.seam).count(), 8);
    }

    #[test]
    fn edge_list_text_format() {
        let g = torus(LatticeKind::Chain, 3, 1);
        assert_eq!(g.edge_list_text(), "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn vertex_deletion_drops_incident_edges() {
        let g = torus(LatticeKind::Square, 3, 3);
        let h = g.delete_vertex(4);
        assert_eq!(h.vertex_count(), 9);
        assert_eq!(h.edge_count(), 18 - 4);
        assert!(h.edges().iter().all(|e| e.u != 4 && e.v != 4));
    }
}
