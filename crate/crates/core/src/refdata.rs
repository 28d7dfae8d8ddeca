//! Tabulated reference constants and the closed forms used for cross-checks.
//!
//! The b-tables are the ground truth the pipeline is verified against: the
//! square series is tabulated through order 7, triangular through 6,
//! hexagonal through 7. Alongside them sit the cluster-expansion kernels
//! associated with each series (opaque reference data here: nothing in this
//! crate derives coefficients from them) and three closed-form entropy
//! evaluators: the leading term, the exact 1-D chain, and the regular tree
//! (Bethe) benchmark with the same coordination number.
//!
//! Everything is stored as exact rationals; these evaluators are the only
//! place doubles appear, with the convention t ln t = 0 at t = 0.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticeKind, LatticeSpec};
use crate::ratseries::{
    format_rational, rat, rat_int, rational_pow, rational_to_f64, Rational, TruncatedSeries,
};

/// Cluster-expansion kernel values attached to a lattice series.
/// Stored verbatim as reference data; index 1 holds the first kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelTable {
    pub spec: LatticeSpec,
    pub values: Vec<Rational>,
}

/// A tabulated entropy p-series: coordination q and the normalized
/// coefficients b_k for k = 2..=order.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSeries {
    pub spec: LatticeSpec,
    pub q: u32,
    pub b: Vec<Rational>,
    pub order: usize,
}

impl ReferenceSeries {
    pub fn b_at(&self, k: usize) -> &Rational {
        assert!((2..=self.order).contains(&k));
        &self.b[k - 2]
    }
}

fn rats(pairs: &[(i64, i64)]) -> Vec<Rational> {
    pairs.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// Kernel values for the three 2-D lattices; the chain has none.
pub fn kernel_table(kind: LatticeKind) -> Result<KernelTable> {
    let values = match kind {
        LatticeKind::Square => rats(&[
            (0, 1),
            (1, 16),
            (1, 48),
            (-9, 512),
            (-23, 1280),
            (25, 3072),
            (299, 14336),
        ]),
        LatticeKind::Triangular => rats(&[
            (0, 1),
            (1, 24),
            (0, 1),
            (-31, 1728),
            (-13, 6480),
            (10, 729),
        ]),
        LatticeKind::Hexagonal => rats(&[
            (0, 1),
            (1, 12),
            (1, 27),
            (-7, 216),
            (-23, 405),
            (-5, 1458),
            (395, 5103),
        ]),
        LatticeKind::Chain => {
            return Err(Error::NoKernelTable { lattice: "chain" });
        }
    };
    Ok(KernelTable {
        spec: LatticeSpec::of(kind),
        values,
    })
}

/// Tabulated b-coefficients for the three 2-D lattices; the chain is covered
/// by [`chain_reference_b`] instead.
pub fn reference_b(kind: LatticeKind) -> Result<ReferenceSeries> {
    let b = match kind {
        LatticeKind::Square => rats(&[(1, 1), (1, 1), (7, 1), (41, 1), (181, 1), (757, 1)]),
        LatticeKind::Triangular => rats(&[(1, 1), (-3, 1), (-11, 1), (1, 1), (91, 1)]),
        LatticeKind::Hexagonal => rats(&[(1, 1), (1, 1), (1, 1), (1, 1), (11, 1), (85, 1)]),
        LatticeKind::Chain => {
            return Err(Error::NoReferenceSeries { lattice: "chain" });
        }
    };
    let spec = LatticeSpec::of(kind);
    Ok(ReferenceSeries {
        spec,
        q: spec.coordination,
        order: b.len() + 1,
        b,
    })
}

/// The chain's exact expansion has b_k = 1 at every order: it is the
/// 2-regular tree. Valid to arbitrary depth.
pub fn chain_reference_b(order: usize) -> Vec<Rational> {
    assert!(order >= 2);
    vec![Rational::one(); order - 1]
}

/// Deepest tabulated order per lattice; the chain default matches the depth
/// the d = 1 closed form is routinely checked to.
pub fn default_order(kind: LatticeKind) -> usize {
    match kind {
        LatticeKind::Square | LatticeKind::Hexagonal => 7,
        LatticeKind::Triangular => 6,
        LatticeKind::Chain => 8,
    }
}

/// Coefficients of the analytic correction sum_{k>=2} a_k p^k with
/// a_k = (q/2) b_k / (k(k-1) q^k), as exact rationals through `b.len() + 1`.
pub fn correction_coefficients(q: u32, b: &[Rational]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); b.len() + 2];
    for (i, b_k) in b.iter().enumerate() {
        let k = i + 2;
        coeffs[k] = rat(q as i64, 2) * b_k
            / (rat_int((k * (k - 1)) as i64) * rational_pow(&rat_int(q as i64), k));
    }
    coeffs
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::POutOfRange { p });
    }
    Ok(())
}

/// t ln t with the entropy convention 0 ln 0 = 0.
fn xlnx(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t * t.ln()
    }
}

/// Leading entropy term: (p ln q - p ln p - 2(1-p) ln(1-p) - p) / 2.
pub fn lambda_leading(q: u32, p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(0.5 * (p * (q as f64).ln() - xlnx(p) - 2.0 * xlnx(1.0 - p) - p))
}

/// Truncated entropy: leading term plus the tabulated correction, evaluated
/// in doubles from exact coefficients by Horner's rule.
pub fn lambda_truncated(series: &ReferenceSeries, p: f64) -> Result<f64> {
    check_p(p)?;
    let coeffs = correction_coefficients(series.q, &series.b);
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * p + rational_to_f64(c);
    }
    Ok(lambda_leading(series.q, p)? + acc)
}

/// Exact correction polynomial value at a rational p; the report layer
/// converts this to a double exactly once per cell.
pub fn correction_exact(q: u32, b: &[Rational], p: &Rational) -> Rational {
    let coeffs = correction_coefficients(q, b);
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * p + c;
    }
    acc
}

/// Exact 1-D chain entropy:
/// (1 - p/2) ln(1 - p/2) - (p/2) ln(p/2) - (1 - p) ln(1 - p).
pub fn lambda_1d_exact(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(xlnx(1.0 - 0.5 * p) - xlnx(0.5 * p) - xlnx(1.0 - p))
}

/// Entropy of the q-regular tree (Bethe lattice) at coverage p: the b_k = 1
/// completion of the series,
/// lambda_leading + (q/2) [p/q + (1 - p/q) ln(1 - p/q)].
///
/// Two independent certifications pin this form down: at q = 2 it equals the
/// chain closed form identically, and its p-series reproduces b_k = 1 at
/// every order (see the tests).
pub fn lambda_tree(q: u32, p: f64) -> Result<f64> {
    check_p(p)?;
    let y = p / q as f64;
    Ok(lambda_leading(q, p)? + 0.5 * q as f64 * (y + xlnx(1.0 - y)))
}

/// The tree correction as an exact series in p through `order`:
/// (q/2) [y + (1-y) ln(1-y)] with y = p/q.
pub fn tree_correction_series(q: u32, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = Rational::one();
    coeffs[1] = rat(-1, q as i64);
    let one_minus_y = TruncatedSeries::from_coeffs(coeffs);
    let log_part = one_minus_y.log().unwrap().mul(&one_minus_y).unwrap();
    let mut y_coeffs = vec![Rational::zero(); order + 1];
    y_coeffs[1] = rat(1, q as i64);
    let y = TruncatedSeries::from_coeffs(y_coeffs);
    y.add(&log_part).unwrap().scalar_mul(&rat(q as i64, 2))
}

#[derive(Serialize)]
struct LatticeConstantsDump {
    q: u32,
    girth: u32,
    order: usize,
    b: Vec<String>,
    kernels: Vec<String>,
}

#[derive(Serialize)]
struct ConstantsDump {
    square: LatticeConstantsDump,
    triangular: LatticeConstantsDump,
    hexagonal: LatticeConstantsDump,
}

/// JSON dump of every stored constant, rationals in the `num/den` wire form.
pub fn constants_json() -> String {
    let entry = |kind: LatticeKind| {
        let series = reference_b(kind).expect("2-D lattices are tabulated");
        let kernels = kernel_table(kind).expect("2-D lattices have kernels");
        let girth = match series.spec.girth {
            crate::lattice::Girth::Finite(g) => g,
            crate::lattice::Girth::Infinite => unreachable!("2-D lattices have finite girth"),
        };
        LatticeConstantsDump {
            q: series.q,
            girth,
            order: series.order,
            b: series.b.iter().map(format_rational).collect(),
            kernels: kernels.values.iter().map(format_rational).collect(),
        }
    };
    let dump = ConstantsDump {
        square: entry(LatticeKind::Square),
        triangular: entry(LatticeKind::Triangular),
        hexagonal: entry(LatticeKind::Hexagonal),
    };
    serde_json::to_string_pretty(&dump).expect("constants serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratseries::parse_rational;

    #[test]
    fn stored_tables_have_the_right_shape() {
        let sq = kernel_table(LatticeKind::Square).unwrap();
        assert_eq!(sq.values.len(), 7);
        assert_eq!(sq.values[6], rat(299, 14336));
        let tri = kernel_table(LatticeKind::Triangular).unwrap();
        assert_eq!(tri.values.len(), 6);
        assert_eq!(tri.values[3], rat(-31, 1728));
        let hex = kernel_table(LatticeKind::Hexagonal).unwrap();
        assert_eq!(hex.values.len(), 7);
        assert_eq!(hex.values[6], rat(395, 5103));
        assert!(matches!(
            kernel_table(LatticeKind::Chain),
            Err(Error::NoKernelTable { .. })
        ));

        assert_eq!(reference_b(LatticeKind::Square).unwrap().order, 7);
        assert_eq!(reference_b(LatticeKind::Triangular).unwrap().order, 6);
        let hex = reference_b(LatticeKind::Hexagonal).unwrap();
        assert_eq!(hex.order, 7);
        assert_eq!(hex.b_at(6), &rat_int(11));
        assert_eq!(hex.b_at(7), &rat_int(85));
        assert!(reference_b(LatticeKind::Chain).is_err());
    }

    #[test]
    fn leading_term_spot_values() {
        assert_eq!(lambda_leading(4, 0.0).unwrap(), 0.0);
        assert!((lambda_leading(4, 1.0).unwrap() - 0.193_147_2).abs() < 1e-6);
        assert!((lambda_leading(3, 1.0).unwrap() - 0.049_306_1).abs() < 1e-6);
        assert!(lambda_leading(4, 1.5).is_err());
        assert!(lambda_leading(4, -0.1).is_err());
    }

    #[test]
    fn truncated_square_at_full_coverage() {
        let sq = reference_b(LatticeKind::Square).unwrap();
        assert_eq!(lambda_truncated(&sq, 0.0).unwrap(), 0.0);
        let v = lambda_truncated(&sq, 1.0).unwrap();
        assert!((v - 0.274_563).abs() < 1e-5, "got {}", v);
    }

    #[test]
    fn square_partial_sums_increase_with_depth() {
        let sq = reference_b(LatticeKind::Square).unwrap();
        let mut last = lambda_leading(4, 1.0).unwrap();
        for upto in 2..=7 {
            let partial = ReferenceSeries {
                spec: sq.spec,
                q: sq.q,
                b: sq.b[..upto - 1].to_vec(),
                order: upto,
            };
            let v = lambda_truncated(&partial, 1.0).unwrap();
            assert!(v > last, "partial sum through k={} did not grow", upto);
            last = v;
        }
    }

    #[test]
    fn chain_closed_form_spot_values() {
        assert_eq!(lambda_1d_exact(0.0).unwrap(), 0.0);
        assert_eq!(lambda_1d_exact(1.0).unwrap(), 0.0);
        assert!((lambda_1d_exact(0.5).unwrap() - 0.477_386).abs() < 1e-6);
        // independent check against (1/n) ln C(n-s, s) at n = 2000, s = 500
        let n = 2000.0f64;
        let s = 500.0f64;
        let ln_choose = ln_factorial(n - s) - ln_factorial(s) - ln_factorial(n - 2.0 * s);
        assert!((lambda_1d_exact(0.5).unwrap() - ln_choose / n).abs() < 1e-2);
    }

    fn ln_factorial(x: f64) -> f64 {
        // Stirling with the leading corrections; plenty for a 1e-2 check
        x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
    }

    #[test]
    fn tree_matches_chain_at_q2() {
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let tree = lambda_tree(2, p).unwrap();
            let chain = lambda_1d_exact(p).unwrap();
            assert!((tree - chain).abs() < 1e-12, "p = {}", p);
        }
    }

    #[test]
    fn tree_spot_values() {
        assert!((lambda_tree(6, 1.0).unwrap() - 0.440_075).abs() < 1e-6);
        assert!((lambda_tree(4, 1.0).unwrap() - 0.261_624).abs() < 1e-6);
    }

    #[test]
    fn tree_series_is_the_all_ones_completion() {
        for q in [2u32, 3, 4, 6] {
            let order = 9;
            let series = tree_correction_series(q, order);
            let ones = vec![Rational::one(); order - 1];
            let expected = TruncatedSeries::from_coeffs(correction_coefficients(q, &ones));
            assert_eq!(series, expected, "q = {}", q);
        }
    }

    #[test]
    fn truncation_error_scales_past_the_order() {
        // lambda_tree minus its own truncation behaves like p^(K+1) near 0
        for q in [3u32, 4] {
            let order = 7;
            let ones = vec![Rational::one(); order - 1];
            let spec = match q {
                3 => LatticeSpec::of(LatticeKind::Hexagonal),
                _ => LatticeSpec::of(LatticeKind::Square),
            };
            let series = ReferenceSeries {
                spec,
                q,
                b: ones,
                order,
            };
            let diff = |p: f64| {
                (lambda_tree(q, p).unwrap() - lambda_truncated(&series, p).unwrap()).abs()
            };
            let fitted = diff(0.01) / 0.01f64.powi(order as i32 + 1);
            for p in [0.02f64, 0.05] {
                let bound = 2.0 * fitted * p.powi(order as i32 + 1);
                assert!(diff(p) <= bound, "q = {} p = {}", q, p);
            }
        }
    }

    #[test]
    fn hexagonal_first_gap_from_reference_values() {
        // coefficient of p^6 in lambda_hex - lambda_tree(3):
        // (11 - 1) * (3/2) / (30 * 3^6) = 1/1458
        let hex = reference_b(LatticeKind::Hexagonal).unwrap();
        let gap = (hex.b_at(6) - Rational::one()) * rat(3, 2)
            / (rat_int(30) * rational_pow(&rat_int(3), 6));
        assert_eq!(gap, rat(1, 1458));
        // and the lower orders cancel exactly against the tree
        for k in 2..=5 {
            assert!(hex.b_at(k).is_one());
        }
    }

    #[test]
    fn constants_dump_round_trips() {
        let json = constants_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        for (name, kind) in [
            ("square", LatticeKind::Square),
            ("triangular", LatticeKind::Triangular),
            ("hexagonal", LatticeKind::Hexagonal),
        ] {
            let got_b: Vec<Rational> = parsed[name]["b"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| parse_rational(v.as_str().unwrap()).unwrap())
                .collect();
            assert_eq!(got_b, reference_b(kind).unwrap().b);
            let got_kernels: Vec<Rational> = parsed[name]["kernels"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| parse_rational(v.as_str().unwrap()).unwrap())
                .collect();
            assert_eq!(got_kernels, kernel_table(kind).unwrap().values);
        }
        // byte-identical on repeat
        assert_eq!(json, constants_json());
    }

    #[test]
    fn chain_reference_is_all_ones() {
        assert_eq!(chain_reference_b(8), vec![Rational::one(); 7]);
    }
}
