//! Entropy p-expansion from the pressure series.
//!
//! The entropy per site at dimer coverage p is the Legendre transform
//! lambda(p) = inf_x [f(x) - (p/2) ln x], with stationarity p = 2x f'(x)
//! (each dimer covers two sites). Splitting off the non-analytic half of the
//! leading term,
//!
//!   lambda(p) = -(p/2) ln(p/q) + A(p),
//!
//! leaves a genuine power series A(p) with A_0 = 0 and A_1 = 1/2, computed
//! here as formal series only: invert the density relation, compose, and
//! take one logarithm of q*x(p)/p (a series with unit constant term).
//! The normalized coefficients b_k = 2 q^(k-1) (k(k-1) A_k + 1) absorb the
//! analytic remainder of the leading term; b_k = 1 is exactly the regular
//! tree behaviour, so the first k with b_k != 1 measures where a lattice
//! departs from its Bethe benchmark.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Girth, LatticeSpec};
use crate::pressure::PressureSeries;
use crate::ratseries::{
    format_rational, rat, rat_int, rational_pow, Rational, TruncatedSeries,
};

/// Entropy p-expansion: analytic part A and normalized coefficients b.
#[derive(Clone, Debug, PartialEq)]
pub struct PExpansion {
    pub spec: LatticeSpec,
    pub order: usize,
    /// A_0 ..= A_K with A(p) = lambda(p) + (p/2) ln(p/q).
    pub analytic: TruncatedSeries,
    /// b_2 ..= b_K.
    pub b: Vec<Rational>,
}

#[derive(Serialize)]
struct PExpansionDump {
    lattice: String,
    q: u32,
    #[serde(rename = "K")]
    order: usize,
    #[serde(rename = "A")]
    analytic: Vec<String>,
    b: Vec<String>,
}

fn b_from_a(q: u32, k: usize, a_k: &Rational) -> Rational {
    let kk = rat_int((k * (k - 1)) as i64);
    rat_int(2) * rational_pow(&rat_int(q as i64), k - 1) * (kk * a_k + Rational::one())
}

fn a_from_b(q: u32, k: usize, b_k: &Rational) -> Rational {
    let kk = rat_int((k * (k - 1)) as i64);
    (b_k / (rat_int(2) * rational_pow(&rat_int(q as i64), k - 1)) - Rational::one()) / kk
}

impl PExpansion {
    /// The normalized coefficient sequence b_2 ..= b_K.
    pub fn b_coeffs(&self) -> &[Rational] {
        &self.b
    }

    pub fn b_at(&self, k: usize) -> &Rational {
        assert!((2..=self.order).contains(&k));
        &self.b[k - 2]
    }

    /// Rebuild an expansion from a b-table (reference data, tree series).
    pub fn from_b(spec: LatticeSpec, b: &[Rational]) -> Self {
        let order = b.len() + 1;
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[1] = rat(1, 2);
        for (i, b_k) in b.iter().enumerate() {
            coeffs[i + 2] = a_from_b(spec.coordination, i + 2, b_k);
        }
        PExpansion {
            spec,
            order,
            analytic: TruncatedSeries::from_coeffs(coeffs),
            b: b.to_vec(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let dump = PExpansionDump {
            lattice: self.spec.kind.name().to_string(),
            q: self.spec.coordination,
            order: self.order,
            analytic: self.analytic.coeffs().iter().map(format_rational).collect(),
            b: self.b.iter().map(format_rational).collect(),
        };
        serde_json::to_string(&dump).expect("expansion serialization cannot fail")
    }
}

/// Exact Legendre transform on truncated series.
///
/// Steps: density p(x) = 2x f'(x); reversion x(p); then
/// A(p) = f(x(p)) - (p/2) ln(q x(p) / p). All arithmetic stays rational.
pub fn entropy_p_expansion(f: &PressureSeries) -> Result<PExpansion> {
    let q = f.spec.coordination;
    let order = f.order;
    let expected_f1 = rat(q as i64, 2);
    if f.series.coeff(1) != &expected_f1 {
        return Err(Error::BadLinearPressure {
            lattice: f.spec.kind.name(),
            got: format_rational(f.series.coeff(1)),
            expected: format_rational(&expected_f1),
        });
    }

    let density = TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|k| f.series.coeff(k) * rat_int(2 * k as i64))
            .collect(),
    );
    let x_of_p = density.revert()?;
    debug_assert_eq!(
        density.compose(&x_of_p).unwrap(),
        TruncatedSeries::identity(order),
        "density reversion failed its round trip"
    );

    // q*x(p)/p has unit constant term because x(p) = p/q + O(p^2).
    let ratio = x_of_p.shift_down().scalar_mul(&rat_int(q as i64));
    let log_ratio = ratio.log()?.shift_up();
    let analytic = f
        .series
        .compose(&x_of_p)?
        .sub(&log_ratio.scalar_mul(&rat(1, 2)))?;

    assert!(analytic.coeff(0).is_zero(), "analytic part must vanish at p = 0");
    assert_eq!(analytic.coeff(1), &rat(1, 2), "A_1 is forced by f_1 = q/2");

    let b = (2..=order)
        .map(|k| b_from_a(q, k, analytic.coeff(k)))
        .collect();
    Ok(PExpansion {
        spec: f.spec,
        order,
        analytic,
        b,
    })
}

/// Where the lattice first departs from its regular-tree benchmark, next to
/// its girth.
#[derive(Clone, Debug, PartialEq)]
pub struct GirthDeviationReport {
    pub lattice: &'static str,
    pub order: usize,
    /// Smallest k >= 2 with b_k != 1, if any up to the order.
    pub first_deviation: Option<usize>,
    pub girth: Girth,
    /// False when the expansion is too shallow (order < girth) to decide.
    pub conclusive: bool,
    pub coincide: Option<bool>,
    /// At the first deviation g: the exact coefficient of p^g in
    /// lambda(p) - lambda_tree(p), namely (b_g - 1) (q/2) / (g(g-1) q^g).
    pub tree_gap_coefficient: Option<Rational>,
}

pub fn girth_deviation_report(e: &PExpansion) -> GirthDeviationReport {
    let first_deviation = (2..=e.order).find(|&k| !e.b_at(k).is_one());
    let conclusive = match e.spec.girth {
        Girth::Finite(g) => e.order >= g as usize,
        Girth::Infinite => false,
    };
    let coincide = match (conclusive, e.spec.girth) {
        (true, Girth::Finite(g)) => Some(first_deviation == Some(g as usize)),
        _ => None,
    };
    let tree_gap_coefficient = first_deviation.map(|g| {
        let q = e.spec.coordination as i64;
        (e.b_at(g) - Rational::one()) * rat(q, 2)
            / (rat_int((g * (g - 1)) as i64) * rational_pow(&rat_int(q), g))
    });
    GirthDeviationReport {
        lattice: e.spec.kind.name(),
        order: e.order,
        first_deviation,
        girth: e.spec.girth,
        conclusive,
        coincide,
        tree_gap_coefficient,
    }
}
