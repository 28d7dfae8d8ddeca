//! Exact counts of s-dimer matchings on finite lattice instances.
//!
//! Two independent engines produce the same tables: a depth-first
//! enumerator for small instances, and the production column-sweep frontier
//! DP. The DP walks vertices in index order (column-major, bottom-to-top);
//! an edge is handled when its larger endpoint is reached. Its state is
//!
//!   (R, F, t): R = first-column sites still reserved for seam dimers,
//!              F = match flags over the trailing window of processed sites,
//!              t = dimers placed so far.
//!
//! Seam edges of a torus wrap the sweep direction; a matching using seam
//! dimers with first-column endpoints S is counted exactly once, in the
//! branch that starts with R = S. Since at most K dimers exist, only masks
//! with |R| + t <= K survive, which keeps the state space small.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::TorusGraph;

/// Widest supported frontier for the DP engine.
pub const FRONTIER_BOUND: u32 = 14;

/// Exact counts a(s) of matchings with s dimers, s = 0..=max_order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCountTable {
    pub graph_id: String,
    pub max_order: usize,
    pub counts: Vec<BigUint>,
    pub n_vertices: u32,
    pub n_edges: usize,
}

impl MatchingCountTable {
    pub fn count(&self, s: usize) -> &BigUint {
        &self.counts[s]
    }
}

/// JSON wire form of a count table; counts as decimal strings so exactness
/// survives any consumer.
#[derive(Serialize, Deserialize)]
pub struct CountsDump {
    pub lattice: String,
    pub dims: [u32; 2],
    pub counts: Vec<String>,
}

impl CountsDump {
    pub fn from_table(g: &TorusGraph, table: &MatchingCountTable) -> Self {
        CountsDump {
            lattice: g.spec.kind.name().to_string(),
            dims: [g.dims.0, g.dims.1],
            counts: table.counts.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// a(2) = C(E,2) - sum_v C(deg v, 2): unordered edge pairs minus the pairs
/// sharing a vertex.
pub fn pair_count_closed_form(g: &TorusGraph) -> BigUint {
    let e = g.edge_count() as u64;
    let mut a2 = BigUint::from(e * e.saturating_sub(1) / 2);
    for d in g.degrees() {
        let d = d as u64;
        a2 -= BigUint::from(d * d.saturating_sub(1) / 2);
    }
    a2
}

fn identities_hold(g: &TorusGraph, table: &MatchingCountTable) -> bool {
    if !table.counts[0].is_one() {
        return false;
    }
    if table.max_order >= 1 && table.counts[1] != BigUint::from(g.edge_count()) {
        return false;
    }
    if table.max_order >= 2 && table.counts[2] != pair_count_closed_form(g) {
        return false;
    }
    let half = (g.vertex_count() / 2) as usize;
    table
        .counts
        .iter()
        .enumerate()
        .all(|(s, c)| s <= half || c.is_zero())
}

fn make_table(g: &TorusGraph, max_order: usize, counts: Vec<BigUint>) -> MatchingCountTable {
    let table = MatchingCountTable {
        graph_id: g.id(),
        max_order,
        counts,
        n_vertices: g.vertex_count(),
        n_edges: g.edge_count(),
    };
    debug_assert!(identities_hold(g, &table), "count identities violated for {}", g.id());
    table
}

/// Depth-first enumeration over ordered edge choices with disjointness
/// pruning. The oracle for the frontier DP; guarded to small instances.
pub fn count_bruteforce(g: &TorusGraph, max_order: usize) -> Result<MatchingCountTable> {
    if g.edge_count() > 40 && max_order > 4 {
        return Err(Error::TooLargeForBruteForce {
            edges: g.edge_count(),
            max_dimers: max_order,
        });
    }
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut counts = vec![BigUint::zero(); max_order + 1];
    let mut used = vec![false; g.vertex_count() as usize];

    fn walk(
        edges: &[(u32, u32)],
        start: usize,
        placed: usize,
        max_order: usize,
        used: &mut [bool],
        counts: &mut [BigUint],
    ) {
        counts[placed] += 1u32;
        if placed == max_order {
            return;
        }
        for i in start..edges.len() {
            let (u, v) = edges[i];
            if !used[u as usize] && !used[v as usize] {
                used[u as usize] = true;
                used[v as usize] = true;
                walk(edges, i + 1, placed + 1, max_order, used, counts);
                used[u as usize] = false;
                used[v as usize] = false;
            }
        }
    }
    walk(&edges, 0, 0, max_order, &mut used, &mut counts);
    Ok(make_table(g, max_order, counts))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct StateKey {
    reserved: u16,
    window: u32,
    dimers: u8,
}

/// Column-sweep frontier DP. Exact on any instance the builders produce,
/// torus or cylinder, including vertex-deleted variants.
pub fn count_frontier_dp(g: &TorusGraph, max_order: usize) -> Result<MatchingCountTable> {
    let n = g.vertex_count() as usize;
    let frontier = g.frontier_width();
    if frontier > FRONTIER_BOUND {
        return Err(Error::FrontierTooWide {
            width: frontier,
            bound: FRONTIER_BOUND,
        });
    }

    // Edges grouped by their larger endpoint: local ones as window offsets,
    // seam ones by their reserved first-column site.
    let mut local: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut seam: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut window_span = 0u32;
    let mut reservable: u16 = 0;
    for e in g.edges() {
        if e.seam {
            debug_assert!(e.u < frontier, "seam edge not anchored in the first column");
            seam[e.v as usize].push(e.u);
            reservable |= 1 << e.u;
        } else {
            local[e.v as usize].push(e.v - e.u);
            window_span = window_span.max(e.v - e.u);
        }
    }
    let window_mask: u32 = (1 << (window_span + 1)) - 1;
    let budget = max_order as u32;

    // One starting state per admissible reservation mask.
    let mut states: HashMap<StateKey, BigUint> = HashMap::new();
    let mut sub = reservable;
    loop {
        if u32::from(sub.count_ones()) <= budget {
            states.insert(
                StateKey {
                    reserved: sub,
                    window: 0,
                    dimers: 0,
                },
                BigUint::one(),
            );
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & reservable;
    }

    let mut next: HashMap<StateKey, BigUint> = HashMap::new();
    for m in 0..n {
        next.clear();
        next.reserve(states.len() * 2);
        for (key, count) in states.drain() {
            // The site enters the window; first-column sites enter already
            // flagged when they are reserved for a seam dimer.
            let entering = u32::from((m as u32) < frontier && key.reserved >> m & 1 == 1);
            let window = ((key.window << 1) | entering) & window_mask;
            let committed = key.dimers as u32 + key.reserved.count_ones();

            let open = window & 1 == 0;
            if open {
                for &d in &local[m] {
                    if window >> d & 1 == 0 && committed < budget {
                        let k = StateKey {
                            reserved: key.reserved,
                            window: window | 1 | (1 << d),
                            dimers: key.dimers + 1,
                        };
                        *next.entry(k).or_default() += &count;
                    }
                }
                for &u in &seam[m] {
                    if key.reserved >> u & 1 == 1 {
                        let k = StateKey {
                            reserved: key.reserved & !(1 << u),
                            window: window | 1,
                            dimers: key.dimers + 1,
                        };
                        *next.entry(k).or_default() += &count;
                    }
                }
            }
            let k = StateKey {
                reserved: key.reserved,
                window,
                dimers: key.dimers,
            };
            *next.entry(k).or_default() += count;
        }
        std::mem::swap(&mut states, &mut next);
    }

    // Unconsumed reservations would double-count configurations that never
    // placed the seam dimer; only fully consumed branches are real.
    let mut counts = vec![BigUint::zero(); max_order + 1];
    for (key, count) in states {
        if key.reserved == 0 {
            counts[key.dimers as usize] += count;
        }
    }
    Ok(make_table(g, max_order, counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_cylinder, build_torus, LatticeKind, LatticeSpec};

    fn torus(kind: LatticeKind, lx: u32, ly: u32) -> TorusGraph {
        build_torus(LatticeSpec::of(kind), lx, ly).unwrap()
    }

    fn ints(vals: &[u64]) -> Vec<BigUint> {
        vals.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn path_on_four_vertices() {
        let p4 = build_cylinder(LatticeSpec::of(LatticeKind::Chain), 1, 4).unwrap();
        let table = count_bruteforce(&p4, 2).unwrap();
        assert_eq!(table.counts, ints(&[1, 3, 1]));
        assert_eq!(count_frontier_dp(&p4, 2).unwrap().counts, table.counts);
    }

    #[test]
    fn single_dimer_count_is_edge_count() {
        for g in [
            torus(LatticeKind::Square, 3, 4),
            torus(LatticeKind::Triangular, 3, 3),
            torus(LatticeKind::Hexagonal, 4, 4),
            torus(LatticeKind::Chain, 7, 1),
        ] {
            let table = count_frontier_dp(&g, 1).unwrap();
            assert_eq!(table.counts[1], BigUint::from(g.edge_count()));
        }
    }

    #[test]
    fn square_4x4_pair_count() {
        let g = torus(LatticeKind::Square, 4, 4);
        let table = count_bruteforce(&g, 2).unwrap();
        assert_eq!(table.counts, ints(&[1, 32, 400]));
        assert_eq!(pair_count_closed_form(&g), BigUint::from(400u32));
        assert_eq!(count_frontier_dp(&g, 2).unwrap().counts, table.counts);
    }

    #[test]
    fn hexagonal_4x4_single_dimer() {
        let g = torus(LatticeKind::Hexagonal, 4, 4);
        let table = count_frontier_dp(&g, 1).unwrap();
        assert_eq!(table.counts[1], BigUint::from(24u32));
    }

    #[test]
    fn dp_matches_bruteforce_on_small_tori() {
        for kind in [LatticeKind::Square, LatticeKind::Triangular] {
            for (lx, ly) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
                let g = torus(kind, lx, ly);
                let bf = count_bruteforce(&g, 4).unwrap();
                let dp = count_frontier_dp(&g, 4).unwrap();
                assert_eq!(bf.counts, dp.counts, "{}", g.id());
            }
        }
        let g = torus(LatticeKind::Hexagonal, 4, 4);
        assert_eq!(
            count_bruteforce(&g, 4).unwrap().counts,
            count_frontier_dp(&g, 4).unwrap().counts
        );
    }

    #[test]
    fn dp_matches_bruteforce_on_cylinders() {
        for kind in [LatticeKind::Square, LatticeKind::Triangular] {
            for (c, m) in [(3, 2), (4, 3), (5, 2)] {
                let g = build_cylinder(LatticeSpec::of(kind), c, m).unwrap();
                assert_eq!(
                    count_bruteforce(&g, 4).unwrap().counts,
                    count_frontier_dp(&g, 4).unwrap().counts,
                    "{}",
                    g.id()
                );
            }
        }
    }

    #[test]
    fn chain_cycle_counts() {
        // matchings of C_12 with s dimers: n/(n-s) * C(n-s, s)
        let g = torus(LatticeKind::Chain, 12, 1);
        let table = count_frontier_dp(&g, 6).unwrap();
        assert_eq!(table.counts, ints(&[1, 12, 54, 112, 105, 36, 2]));
    }

    #[test]
    fn bruteforce_guard() {
        let g = torus(LatticeKind::Square, 5, 5);
        assert!(matches!(
            count_bruteforce(&g, 5),
            Err(Error::TooLargeForBruteForce { .. })
        ));
        assert!(count_bruteforce(&g, 2).is_ok());
    }

    #[test]
    fn frontier_bound_guard() {
        let g = torus(LatticeKind::Square, 15, 3);
        assert!(matches!(
            count_frontier_dp(&g, 2),
            Err(Error::FrontierTooWide { width: 15, .. })
        ));
    }

    #[test]
    fn vertex_deletion_is_translation_invariant() {
        let g = torus(LatticeKind::Square, 4, 4);
        let reference = count_frontier_dp(&g.delete_vertex(0), 3).unwrap().counts;
        for v in 1..16 {
            let table = count_frontier_dp(&g.delete_vertex(v), 3).unwrap();
            assert_eq!(table.counts, reference, "vertex {}", v);
        }
    }

    #[test]
    fn counts_dump_schema() {
        let g = torus(LatticeKind::Square, 4, 4);
        let table = count_frontier_dp(&g, 2).unwrap();
        let dump = CountsDump::from_table(&g, &table);
        let json = serde_json::to_string(&dump).unwrap();
        assert_eq!(
            json,
            r#"{"lattice":"square","dims":[4,4],"counts":["1","32","400"]}"#
        );
    }
}
