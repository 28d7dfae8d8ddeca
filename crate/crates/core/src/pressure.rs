//! Bulk per-site pressure series from matching counts.
//!
//! For a finite instance, Z(x) = sum_s a(s) x^s. The per-site pressure of the
//! infinite lattice, f(x) = lim (1/N) ln Z, has coefficients that are locally
//! determined: [x^k] is a sum over connected k-dimer clusters, so on an
//! instance larger than any such cluster the finite-size value is already the
//! bulk value. Two extraction strategies exploit this:
//!
//!   torus stabilization: f = (1/N) ln Z on tori at sizes L and L+1
//!     (L+2 for the hexagonal parity); the gate demands identical rationals.
//!   cylinder difference: f_k = (1/c) ([x^k] ln Z at length M+1 minus at
//!      length M); the two free ends cancel in the difference. The gate
//!      repeats with lengths M+1, M+2.
//!
//! Gates compare exact rationals for equality, never closeness: a passing
//! gate certifies that finite-size effects are gone, a failing one reports
//! the first differing coefficient instead of returning a wrong number.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{build_cylinder, build_torus, LatticeKind, LatticeSpec, TorusGraph};
use crate::matchcount::{count_frontier_dp, MatchingCountTable};
use crate::ratseries::{format_rational, rat, Rational, TruncatedSeries};
use crate::util::run_all;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    TorusStabilization,
    CylinderDifference,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::TorusStabilization => "torus-stabilization",
            Strategy::CylinderDifference => "cylinder-difference",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "torus" | "torus-stabilization" => Ok(Strategy::TorusStabilization),
            "cylinder" | "cylinder-difference" => Ok(Strategy::CylinderDifference),
            other => Err(Error::Context {
                context: format!("unknown strategy {:?} (expected torus or cylinder)", other),
                source: Box::new(Error::UnknownLattice(other.to_string())),
            }),
        }
    }

    /// Cylinders have no seam states, which makes them the cheaper substrate
    /// for the dense triangular and parity-constrained hexagonal lattices.
    pub fn default_for(kind: LatticeKind) -> Self {
        match kind {
            LatticeKind::Triangular | LatticeKind::Hexagonal => Strategy::CylinderDifference,
            LatticeKind::Square | LatticeKind::Chain => Strategy::TorusStabilization,
        }
    }
}

/// Bulk pressure series with the provenance that certified it.
#[derive(Clone, Debug, PartialEq)]
pub struct PressureSeries {
    pub spec: LatticeSpec,
    pub order: usize,
    /// f_0 = 0, f_1 .. f_K; exact rationals.
    pub series: TruncatedSeries,
    pub strategy: Strategy,
    pub sizes: Vec<(u32, u32)>,
}

#[derive(Serialize)]
struct PressureDump {
    lattice: String,
    #[serde(rename = "K")]
    order: usize,
    f: Vec<String>,
    strategy: String,
    sizes: Vec<[u32; 2]>,
}

impl PressureSeries {
    pub fn coeff(&self, k: usize) -> &Rational {
        self.series.coeff(k)
    }

    pub fn to_json_string(&self) -> String {
        let dump = PressureDump {
            lattice: self.spec.kind.name().to_string(),
            order: self.order,
            f: (1..=self.order)
                .map(|k| format_rational(self.series.coeff(k)))
                .collect(),
            strategy: self.strategy.name().to_string(),
            sizes: self.sizes.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&dump).expect("pressure serialization cannot fail")
    }
}

/// f_1 = q/2: one dimer per edge, E/N = q/2 per site.
pub fn f1_closed_form(q: u32) -> Rational {
    rat(q as i64, 2)
}

/// f_2 = -q/4 - q(q-1)/2, from a(2) = C(E,2) - sum_v C(q,2) and the
/// second cumulant f_2 = (a(2) - a(1)^2/2)/N.
pub fn f2_closed_form(q: u32) -> Rational {
    let q = q as i64;
    rat(-q, 4) + rat(-q * (q - 1), 2)
}

/// Instance dims per strategy, auto-selected so every coefficient through
/// `order` is locally determined with margin: base size K+2, bumped to the
/// lattice minimum and to even for the hexagonal encoding.
pub fn plan_sizes(spec: LatticeSpec, order: usize, strategy: Strategy) -> Vec<(u32, u32)> {
    let base = (order as u32 + 2).max(spec.min_periodic());
    let (base, step) = match spec.kind {
        LatticeKind::Hexagonal => (base + base % 2, 2),
        _ => (base, 1),
    };
    match (spec.kind, strategy) {
        (LatticeKind::Chain, Strategy::TorusStabilization) => {
            vec![(base, 1), (base + 1, 1)]
        }
        (LatticeKind::Chain, Strategy::CylinderDifference) => {
            vec![(1, base), (1, base + 1), (1, base + 2)]
        }
        (_, Strategy::TorusStabilization) => {
            vec![(base, base), (base + step, base + step)]
        }
        (_, Strategy::CylinderDifference) => {
            let len = order as u32 + 2;
            vec![(base, len), (base, len + 1), (base, len + 2)]
        }
    }
}

fn log_z(table: &MatchingCountTable, order: usize) -> Result<TruncatedSeries> {
    let z = TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|s| Rational::from_integer(table.counts[s].clone().into()))
            .collect(),
    );
    z.log()
}

fn first_difference(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<usize> {
    (0..=a.order().min(b.order())).find(|&k| a.coeff(k) != b.coeff(k))
}

fn gate_failure(
    spec: LatticeSpec,
    order: usize,
    sizes: &[(u32, u32)],
    k: usize,
    left: &Rational,
    right: &Rational,
) -> Error {
    Error::GateFailure {
        lattice: spec.kind.name(),
        order,
        sizes: sizes
            .iter()
            .map(|(a, b)| format!("{}x{}", a, b))
            .collect::<Vec<_>>()
            .join(", "),
        k,
        left: format_rational(left),
        right: format_rational(right),
    }
}

/// Torus route: f = (1/N) ln Z must be the identical rational series at both
/// sizes.
pub fn pressure_from_torus_tables(
    spec: LatticeSpec,
    small: &MatchingCountTable,
    large: &MatchingCountTable,
    order: usize,
    sizes: Vec<(u32, u32)>,
) -> Result<PressureSeries> {
    let f_small =
        log_z(small, order)?.scalar_mul(&(Rational::one() / rat(small.n_vertices as i64, 1)));
    let f_large =
        log_z(large, order)?.scalar_mul(&(Rational::one() / rat(large.n_vertices as i64, 1)));
    if let Some(k) = first_difference(&f_small, &f_large) {
        return Err(gate_failure(
            spec,
            order,
            &sizes,
            k,
            f_small.coeff(k),
            f_large.coeff(k),
        ));
    }
    Ok(PressureSeries {
        spec,
        order,
        series: f_small,
        strategy: Strategy::TorusStabilization,
        sizes,
    })
}

/// Cylinder route: per-column difference of ln Z at consecutive lengths,
/// gated by the same difference one length up.
pub fn pressure_from_cylinder_tables(
    spec: LatticeSpec,
    circumference: u32,
    tables: [&MatchingCountTable; 3],
    order: usize,
    sizes: Vec<(u32, u32)>,
) -> Result<PressureSeries> {
    let logs: Vec<TruncatedSeries> = tables
        .iter()
        .map(|t| log_z(t, order))
        .collect::<Result<_>>()?;
    let inv_c = Rational::one() / rat(circumference as i64, 1);
    let d1 = logs[1].sub(&logs[0])?.scalar_mul(&inv_c);
    let d2 = logs[2].sub(&logs[1])?.scalar_mul(&inv_c);
    if let Some(k) = first_difference(&d1, &d2) {
        return Err(gate_failure(spec, order, &sizes, k, d1.coeff(k), d2.coeff(k)));
    }
    Ok(PressureSeries {
        spec,
        order,
        series: d1,
        strategy: Strategy::CylinderDifference,
        sizes,
    })
}

fn build_instance(
    spec: LatticeSpec,
    strategy: Strategy,
    dims: (u32, u32),
) -> Result<TorusGraph> {
    match strategy {
        Strategy::TorusStabilization => build_torus(spec, dims.0, dims.1),
        Strategy::CylinderDifference => build_cylinder(spec, dims.0, dims.1),
    }
}

/// Count the planned instances (concurrently when allowed) and combine them
/// through the strategy's gate.
pub fn compute_with_sizes(
    spec: LatticeSpec,
    order: usize,
    strategy: Strategy,
    sizes: Vec<(u32, u32)>,
    parallel: bool,
) -> Result<PressureSeries> {
    let graphs: Vec<TorusGraph> = sizes
        .iter()
        .map(|&dims| build_instance(spec, strategy, dims))
        .collect::<Result<_>>()?;
    let tasks: Vec<Box<dyn FnOnce() -> Result<MatchingCountTable> + Send + '_>> = graphs
        .iter()
        .map(|g| {
            Box::new(move || count_frontier_dp(g, order))
                as Box<dyn FnOnce() -> Result<MatchingCountTable> + Send + '_>
        })
        .collect();
    let tables: Vec<MatchingCountTable> = run_all(tasks, parallel)
        .into_iter()
        .collect::<Result<_>>()?;
    match strategy {
        Strategy::TorusStabilization => {
            pressure_from_torus_tables(spec, &tables[0], &tables[1], order, sizes)
        }
        Strategy::CylinderDifference => pressure_from_cylinder_tables(
            spec,
            sizes[0].0,
            [&tables[0], &tables[1], &tables[2]],
            order,
            sizes,
        ),
    }
}

/// Full auto-sized computation for one lattice.
pub fn compute(
    spec: LatticeSpec,
    order: usize,
    strategy: Strategy,
    parallel: bool,
) -> Result<PressureSeries> {
    let sizes = plan_sizes(spec, order, strategy);
    compute_with_sizes(spec, order, strategy, sizes, parallel)
}
