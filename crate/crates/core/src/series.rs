//! Truncated power series with exact rational coefficients, and the
//! integrality test for complex affine fibrations.
//!
//! A complex fibration of `C^n` by skew `p`-dimensional fibers can exist only
//! if the coefficients of `t^0, ..., t^p` in `(t / ln(1 + t))^(n - p)` are all
//! integers. The test is necessary, not sufficient, so
//! [`min_complex_ambient`] yields a lower bound on the ambient dimension.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::is_integral;

/// Default upper end of the scan in [`min_complex_ambient`].
pub const DEFAULT_SEARCH_LIMIT: u64 = 10_000;

/// `sum_{k <= order} coeffs[k] t^k`; everything above `order` is discarded.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedRationalSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedRationalSeries {
    /// Pads with zeros or truncates to `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedRationalSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// `ln(1 + t) / t = sum_k (-1)^k t^k / (k + 1)`.
    pub fn log1p_over_t(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                BigRational::new(BigInt::from(sign), BigInt::from(k + 1))
            })
            .collect();
        TruncatedRationalSeries { coeffs }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k).fold(BigRational::zero(), |acc, i| {
                    if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[i] * &other.coeffs[k - i]
                    }
                })
            })
            .collect();
        TruncatedRationalSeries { coeffs }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Domain(
                "series with zero constant term has no inverse".into(),
            ));
        }
        let mut inv: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        inv.push(c0.recip());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(BigRational::zero(), |acc, j| {
                acc + &self.coeffs[j] * &inv[k - j]
            });
            inv.push(-s / c0);
        }
        Ok(TruncatedRationalSeries { coeffs: inv })
    }

    fn require_unit(&self) -> Result<()> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "power needs constant term 1, found {}",
                self.coeffs[0]
            )))
        }
    }

    /// `self^m` by binary exponentiation.
    pub fn pow(&self, m: u64) -> Result<Self> {
        self.require_unit()?;
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// `self^m` by `m` successive multiplications.
    pub fn pow_repeated(&self, m: u64) -> Result<Self> {
        self.require_unit()?;
        Ok((0..m).fold(Self::one(self.order()), |acc, _| acc.mul(self)))
    }

    pub fn all_integral(&self) -> bool {
        self.coeffs.iter().all(is_integral)
    }
}

impl fmt::Debug for TruncatedRationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}] + O(t^{})", terms.join(", "), self.order() + 1)
    }
}

/// `t / ln(1 + t)` up to `t^order`.
pub fn base_series(order: usize) -> TruncatedRationalSeries {
    TruncatedRationalSeries::log1p_over_t(order)
        .reciprocal()
        .expect("ln(1+t)/t has constant term 1")
}

/// `s^m` (see [`TruncatedRationalSeries::pow`]).
pub fn series_pow(s: &TruncatedRationalSeries, m: u64) -> Result<TruncatedRationalSeries> {
    s.pow(m)
}

fn check_pair(p: u64, n: u64) -> Result<usize> {
    if p == 0 {
        return Err(Error::Domain("fiber dimension must be at least 1".into()));
    }
    if n <= p {
        return Err(Error::Domain(format!(
            "ambient dimension {n} must exceed fiber dimension {p}"
        )));
    }
    usize::try_from(p).map_err(|_| Error::Domain(format!("fiber dimension {p} is too large")))
}

/// Whether the coefficients of `t^0..t^p` in `(t / ln(1 + t))^(n - p)` are integers.
pub fn complex_condition_holds(p: u64, n: u64) -> Result<bool> {
    let order = check_pair(p, n)?;
    Ok(base_series(order).pow(n - p)?.all_integral())
}

/// Smallest `n` in `(p, search_limit]` passing [`complex_condition_holds`].
///
/// Walks `n` upward and multiplies by the base series once per step.
pub fn min_complex_ambient(p: u64, search_limit: u64) -> Result<Option<u64>> {
    let order = check_pair(p, p + 1)?;
    let base = base_series(order);
    let mut power = base.clone();
    for n in p + 1..=search_limit {
        if power.all_integral() {
            return Ok(Some(n));
        }
        power = power.mul(&base);
    }
    Ok(None)
}
