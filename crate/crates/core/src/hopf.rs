//! Central projection of the complex and quaternionic Hopf fibrations.
//!
//! A fiber of `S^(2m+1) -> CP^m` (resp. `S^(4m+3) -> HP^m`) is the great
//! sphere cut out by the real span of `{z, iz}` (resp. `{z, iz, jz, kz}`).
//! Points are handled as rays, so no normalization to the unit sphere (and no
//! square root) is needed. Projecting from the center onto the chart
//! `{v_c = 1}` turns each great sphere into an affine subspace of dimension
//! `d - 1` in `R^(d(m+1) - 1)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra;
use crate::error::{Error, Result};
use crate::fibration::{pairwise_skew, AffineSubspace};
use crate::linalg::{RationalMatrix, RationalVector};
use crate::sampling::SampleRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    Complex,
    Quaternion,
}

impl Algebra {
    /// Real dimension `d` of the algebra.
    pub fn real_dim(self) -> usize {
        match self {
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
        }
    }

    /// Fiber and ambient dimension `(d - 1, d(m + 1) - 1)` of the projected fibration.
    pub fn projected_dims(self, m: usize) -> (usize, usize) {
        let d = self.real_dim();
        (d - 1, d * (m + 1) - 1)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Complex => "complex",
            Algebra::Quaternion => "quaternion",
        })
    }
}

impl std::str::FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Algebra::Complex),
            "quaternion" => Ok(Algebra::Quaternion),
            other => Err(Error::Parse(format!("unknown algebra {other:?}"))),
        }
    }
}

/// A nonzero vector of `K^(m+1)` for `K` the complex numbers or quaternions,
/// stored as real coordinates, `d` per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfPoint {
    algebra: Algebra,
    coords: RationalVector,
}

impl HopfPoint {
    pub fn new(algebra: Algebra, coords: RationalVector) -> Result<Self> {
        let d = algebra.real_dim();
        if coords.is_empty() || !coords.len().is_multiple_of(d) {
            return Err(Error::Structural(format!(
                "{algebra} coordinates come in blocks of {d}, got {}",
                coords.len()
            )));
        }
        if coords.is_zero() {
            return Err(Error::Domain("the zero vector spans no fiber".into()));
        }
        Ok(HopfPoint { algebra, coords })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coords(&self) -> &RationalVector {
        &self.coords
    }

    /// `m`, so that the point lies in `K^(m+1)`.
    pub fn m(&self) -> usize {
        self.coords.len() / self.algebra.real_dim() - 1
    }

    /// Componentwise left multiplication by the algebra element `u`.
    pub fn left_multiply(&self, u: &[BigRational]) -> HopfPoint {
        let d = self.algebra.real_dim();
        assert_eq!(u.len(), d, "multiplier must have {d} real coordinates");
        let coords = self
            .coords
            .0
            .chunks(d)
            .flat_map(|z| algebra::mul(u, z))
            .collect();
        HopfPoint {
            algebra: self.algebra,
            coords: RationalVector(coords),
        }
    }
}

/// Real span of the orbit of a point: columns `z, iz` or `z, iz, jz, kz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreatSubspace {
    spanning: RationalMatrix,
}

impl GreatSubspace {
    pub fn spanning(&self) -> &RationalMatrix {
        &self.spanning
    }

    /// Same great sphere: the stacked spanning sets have rank `d`.
    pub fn same_span(&self, other: &GreatSubspace) -> Result<bool> {
        Ok(self.spanning.hstack(&other.spanning)?.rank() == self.spanning.cols())
    }
}

/// The span of `{z} ∪ {u z : u an imaginary unit}`.
pub fn hopf_span(pt: &HopfPoint) -> Result<GreatSubspace> {
    if pt.coords.is_zero() {
        return Err(Error::Domain("the zero vector spans no fiber".into()));
    }
    let d = pt.algebra.real_dim();
    let columns: Vec<RationalVector> = (0..d)
        .map(|unit| {
            let u: Vec<BigRational> = (0..d)
                .map(|i| {
                    if i == unit {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            pt.left_multiply(&u).coords
        })
        .collect();
    let spanning = RationalMatrix::from_columns(pt.coords.len(), &columns)?;
    debug_assert_eq!(spanning.rank(), d);
    Ok(GreatSubspace { spanning })
}

/// Projects the great sphere from the center onto the chart `{v_chart = 1}`.
///
/// The result lives in the chart with coordinate `chart` dropped. Its base
/// point is the image of the span vector with coefficients `w / |w|^2`, where
/// `w` is the chart row of the spanning matrix.
pub fn central_project(plan: &GreatSubspace, chart: usize) -> Result<AffineSubspace> {
    let s = &plan.spanning;
    let dim = s.rows();
    if chart >= dim {
        return Err(Error::Domain(format!(
            "chart coordinate {chart} outside R^{dim}"
        )));
    }
    let d = s.cols();
    let w: Vec<BigRational> = (0..d).map(|j| s[(chart, j)].clone()).collect();
    let Some(pivot) = w.iter().position(|c| !c.is_zero()) else {
        return Err(Error::Equatorial { chart });
    };
    let w_norm = w.iter().fold(BigRational::zero(), |acc, c| acc + c * c);
    let base_coeffs = RationalVector(w.iter().map(|c| c / &w_norm).collect());
    let drop_chart = |v: RationalVector| -> RationalVector {
        RationalVector(
            v.0.into_iter()
                .enumerate()
                .filter(|(i, _)| *i != chart)
                .map(|(_, x)| x)
                .collect(),
        )
    };
    let base = drop_chart(s.apply(&base_coeffs)?);
    let directions: Vec<RationalVector> = (0..d)
        .filter(|&l| l != pivot)
        .map(|l| {
            let mut alpha = RationalVector::zeros(d);
            alpha.0[l] = BigRational::one();
            alpha.0[pivot] = -(&w[l] / &w[pivot]);
            s.apply(&alpha).map(drop_chart)
        })
        .collect::<Result<_>>()?;
    AffineSubspace::new(base, RationalMatrix::from_columns(dim - 1, &directions)?)
}

/// Outcome of [`sample_hopf_fibration`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub algebra: Algebra,
    pub m: usize,
    pub fiber_dim: usize,
    pub ambient_dim: usize,
    pub fibers: Vec<AffineSubspace>,
    pub pairs_checked: usize,
    pub same_fiber_pairs: usize,
    pub equatorial_skipped: usize,
    /// First pair `(i, j)` of distinct fibers whose projections are not skew.
    pub failure: Option<(usize, usize)>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.passed() { "pass" } else { "fail" };
        write!(
            f,
            "{head}: {} m={} fibers of dimension {} in R^{}: {} fibers, {} pairs skew-checked, {} same-fiber pairs, {} equatorial draws skipped",
            self.algebra,
            self.m,
            self.fiber_dim,
            self.ambient_dim,
            self.fibers.len(),
            self.pairs_checked,
            self.same_fiber_pairs,
            self.equatorial_skipped
        )?;
        if let Some((i, j)) = self.failure {
            write!(f, "; fibers {i} and {j} not skew")?;
        }
        Ok(())
    }
}

/// Samples `sample_count` seeded non-equatorial fibers and checks every pair
/// of distinct fibers for skewness after central projection.
pub fn sample_hopf_fibration(
    algebra: Algebra,
    m: usize,
    chart: Option<usize>,
    sample_count: usize,
    seed: u64,
) -> Result<HopfReport> {
    if sample_count < 2 {
        return Err(Error::Domain("need at least two sampled fibers".into()));
    }
    let (fiber_dim, ambient_dim) = algebra.projected_dims(m);
    let real_len = ambient_dim + 1;
    let chart = chart.unwrap_or(real_len - 1);
    if chart >= real_len {
        return Err(Error::Domain(format!(
            "chart coordinate {chart} outside R^{real_len}"
        )));
    }
    let mut rng = SampleRng::new(seed);
    let mut spans = Vec::with_capacity(sample_count);
    let mut fibers = Vec::with_capacity(sample_count);
    let mut equatorial_skipped = 0;
    while fibers.len() < sample_count {
        let pt = HopfPoint::new(algebra, rng.nonzero_vector(real_len))?;
        let span = hopf_span(&pt)?;
        match central_project(&span, chart) {
            Ok(fiber) => {
                spans.push(span);
                fibers.push(fiber);
            }
            Err(Error::Equatorial { .. }) => equatorial_skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let mut pairs_checked = 0;
    let mut same_fiber_pairs = 0;
    let mut failure = None;
    'outer: for i in 0..fibers.len() {
        for j in i + 1..fibers.len() {
            if spans[i].same_span(&spans[j])? {
                same_fiber_pairs += 1;
                continue;
            }
            pairs_checked += 1;
            if !pairwise_skew(&fibers[i], &fibers[j])? {
                failure = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(HopfReport {
        algebra,
        m,
        fiber_dim,
        ambient_dim,
        fibers,
        pairs_checked,
        same_fiber_pairs,
        equatorial_skipped,
        failure,
    })
}
