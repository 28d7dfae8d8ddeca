//! Exact rational arithmetic and truncated formal power series.
//!
//! Every coefficient in the pipeline lives here as a [`Rational`]; floating
//! point enters only when final curve values are printed. A
//! [`TruncatedSeries`] is dense: `coeffs[k]` is the coefficient of the k-th
//! power, exact through `order`, with higher powers unknown (not zero).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with positive
/// denominator (maintained by the underlying representation).
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Wire format: bare numerator when the value is an integer, `num/den`
/// otherwise. `parse_rational` accepts both.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// Single final conversion to double precision.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

/// Exact q^k for small exponents.
pub fn rational_pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// A formal power series known exactly through `order`.
///
/// `coeffs.len() == order + 1` always; index is the power of the variable.
/// Binary operations require equal orders; use [`TruncatedSeries::truncated`]
/// to re-truncate explicitly before combining series of different depths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The identity series `x` (requires order >= 1).
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        let mut s = Self::zero(order);
        s.coeffs[1] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Re-truncate to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Logarithm of a series with constant term 1, from L' = s'/s:
    /// L_n = s_n - (1/n) * sum_{m=1}^{n-1} m L_m s_{n-m}.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm {
                got: format_rational(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut log = vec![Rational::zero(); order + 1];
        for n in 1..=order {
            let mut acc = Rational::zero();
            for m in 1..n {
                if !log[m].is_zero() && !self.coeffs[n - m].is_zero() {
                    acc += &log[m] * &self.coeffs[n - m] * rat_int(m as i64);
                }
            }
            log[n] = &self.coeffs[n] - acc / rat_int(n as i64);
        }
        Ok(Self { coeffs: log })
    }

    /// Exponential of a series with constant term 0, from E' = s'E:
    /// E_n = (1/n) * sum_{m=1}^{n} m s_m E_{n-m}.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm {
                got: format_rational(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut exp = vec![Rational::zero(); order + 1];
        exp[0] = Rational::one();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for m in 1..=n {
                if !self.coeffs[m].is_zero() && !exp[n - m].is_zero() {
                    acc += &self.coeffs[m] * &exp[n - m] * rat_int(m as i64);
                }
            }
            exp[n] = acc / rat_int(n as i64);
        }
        Ok(Self { coeffs: exp })
    }

    /// outer(inner(x)) truncated to the common order; Horner over series.
    /// Requires inner(0) = 0 so the truncation is well defined.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ComposeConstantTerm {
                got: format_rational(&inner.coeffs[0]),
            });
        }
        let order = self.order();
        let mut result = Self::zero(order);
        result.coeffs[0] = self.coeffs[order].clone();
        for k in (0..order).rev() {
            result = result.mul(inner)?;
            result.coeffs[0] += &self.coeffs[k];
        }
        Ok(result)
    }

    /// Compositional inverse: returns r with self(r(p)) = p through `order`.
    /// Order-by-order solve; requires s(0) = 0 and s'(0) != 0.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.coeffs.len() < 2 || self.coeffs[1].is_zero() {
            return Err(Error::RevertPrecondition);
        }
        let order = self.order();
        let mut r = Self::zero(order);
        r.coeffs[1] = Rational::one() / &self.coeffs[1];
        for n in 2..=order {
            // self(r) is correct through n-1; its excess at power n fixes r_n.
            let excess = self.compose(&r)?.coeffs[n].clone();
            r.coeffs[n] = -excess / &self.coeffs[1];
        }
        Ok(r)
    }

    /// Multiply by the variable, raising the order by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divide by the variable, lowering the order by one.
    /// Requires a zero constant term and order >= 1.
    pub fn shift_down(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "cannot divide by x: nonzero constant term");
        assert!(self.order() >= 1);
        Self {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", k)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
