//! The affine Hopf fibration of `R^(N + r - 1)` built from a normalized dual
//! Hurwitz–Radon family.
//!
//! Coordinates on the ambient space are ordered `(x_1..x_{r-1}, y_1..y_N)`,
//! horizontal first. The fiber through `b` in `R^N` is the graph
//! `y = B'(b) x + b`, where `B'(b)` is `B(b)` without its last column.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hrcore::{exists_fibration, rho, DimensionPair};
use crate::hrmat::{build_hr_family, dualize, normalize, truncate_family, DualFamily, HrFamily};
use crate::linalg::{fraction_string, IntMatrix, RationalMatrix, RationalVector};
use crate::sampling::SampleRng;

/// An affine subspace `base + span(directions)` of `R^n`.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    base: RationalVector,
    directions: RationalMatrix,
}

impl AffineSubspace {
    /// Fails unless `directions` has full column rank and matches `base`.
    pub fn new(base: RationalVector, directions: RationalMatrix) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::Structural(
                "ambient dimension must be positive".into(),
            ));
        }
        if directions.rows() != base.len() {
            return Err(Error::Structural(format!(
                "directions live in R^{}, base point in R^{}",
                directions.rows(),
                base.len()
            )));
        }
        if directions.rank() != directions.cols() {
            return Err(Error::Domain(
                "direction vectors are linearly dependent".into(),
            ));
        }
        Ok(AffineSubspace { base, directions })
    }

    pub fn base(&self) -> &RationalVector {
        &self.base
    }

    pub fn directions(&self) -> &RationalMatrix {
        &self.directions
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.cols()
    }

    pub fn contains(&self, point: &RationalVector) -> Result<bool> {
        if point.len() != self.ambient_dim() {
            return Err(Error::Structural(
                "point and subspace in different spaces".into(),
            ));
        }
        let offset = RationalMatrix::from_columns(point.len(), &[point.sub(&self.base)])?;
        Ok(self.directions.hstack(&offset)?.rank() == self.dim())
    }
}

impl fmt::Debug for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineSubspace")
            .field("base", &self.base)
            .field("directions", &self.directions)
            .finish()
    }
}

/// Skewness certificate: `rank [D_A | D_B | base_B - base_A] = p + q + 1`.
///
/// Full rank means the direction spaces meet only in 0 and the base
/// difference is outside their sum, i.e. no parallel lines and no common point.
pub fn pairwise_skew(a: &AffineSubspace, b: &AffineSubspace) -> Result<bool> {
    Ok(skew_rank(a, b)? == a.dim() + b.dim() + 1)
}

fn skew_rank(a: &AffineSubspace, b: &AffineSubspace) -> Result<usize> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::Structural(format!(
            "subspaces of R^{} and R^{}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let delta = RationalMatrix::from_columns(a.ambient_dim(), &[b.base.sub(&a.base)])?;
    Ok(a.directions.hstack(&b.directions)?.hstack(&delta)?.rank())
}

/// The fibration of `R^(N + r - 1)` by `(r - 1)`-dimensional affine fibers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewFibration {
    dual: DualFamily,
}

impl SkewFibration {
    /// Wraps a normalized dual family with `r >= 2`.
    pub fn from_normalized_dual(dual: DualFamily) -> Result<Self> {
        if !dual.is_normalized() {
            return Err(Error::Normalization("dual family is not normalized".into()));
        }
        if dual.rank_target() < 2 {
            return Err(Error::Domain(
                "fibers must have dimension at least 1".into(),
            ));
        }
        let n_base = BigUint::from(dual.dim());
        if BigUint::from(dual.rank_target()) > rho(&n_base)? {
            return Err(Error::Domain(format!(
                "r = {} exceeds rho({})",
                dual.rank_target(),
                dual.dim()
            )));
        }
        Ok(SkewFibration { dual })
    }

    /// Dualizes and normalizes `fam`.
    pub fn from_family(fam: &HrFamily) -> Result<Self> {
        Self::from_normalized_dual(normalize(&dualize(fam))?)
    }

    pub fn dual(&self) -> &DualFamily {
        &self.dual
    }

    /// `N`, the dimension of the base.
    pub fn base_dim(&self) -> usize {
        self.dual.dim()
    }

    /// `r`, the number of Hurwitz–Radon matrices used.
    pub fn family_size(&self) -> usize {
        self.dual.rank_target()
    }

    /// `p = r - 1`.
    pub fn fiber_dim(&self) -> usize {
        self.family_size() - 1
    }

    /// `n = N + r - 1`.
    pub fn ambient_dim(&self) -> usize {
        self.base_dim() + self.fiber_dim()
    }

    /// The fiber `{(x, B'(b) x + b)}` through `(0, b)`.
    pub fn fiber_at(&self, b: &RationalVector) -> Result<AffineSubspace> {
        let p = self.fiber_dim();
        let reduced = self.dual.reduced_combination(b)?;
        let columns: Vec<RationalVector> = (0..p)
            .map(|j| {
                let mut horizontal = RationalVector::zeros(p);
                horizontal.0[j] = BigRational::one();
                horizontal.concat(&reduced.column(j))
            })
            .collect();
        AffineSubspace::new(
            RationalVector::zeros(p).concat(b),
            RationalMatrix::from_columns(self.ambient_dim(), &columns)?,
        )
    }

    /// The point `(x, B'(b) x + b)` of the fiber through `b`.
    pub fn point_on_fiber(&self, b: &RationalVector, x: &RationalVector) -> Result<RationalVector> {
        if x.len() != self.fiber_dim() {
            return Err(Error::Structural(format!(
                "horizontal part has length {}, expected {}",
                x.len(),
                self.fiber_dim()
            )));
        }
        let y = self.dual.reduced_combination(b)?.apply(x)?;
        let y = RationalVector(y.iter().zip(b.iter()).map(|(u, v)| u + v).collect());
        Ok(x.concat(&y))
    }

    /// Bundle projection: the unique `b` whose fiber contains `point`.
    ///
    /// Solves `M(x) b = y` with `M(x)[k][i] = δ_ki + sum_j x_j B_i[k][j]`.
    pub fn base_point(&self, point: &RationalVector) -> Result<RationalVector> {
        if point.len() != self.ambient_dim() {
            return Err(Error::Structural(format!(
                "point has {} coordinates, ambient space is R^{}",
                point.len(),
                self.ambient_dim()
            )));
        }
        let p = self.fiber_dim();
        let n = self.base_dim();
        let x = &point.0[..p];
        let y = RationalVector(point.0[p..].to_vec());
        let mut m = RationalMatrix::zeros(n, n);
        for (i, b_i) in self.dual.b_matrices().iter().enumerate() {
            for k in 0..n {
                let mut entry = if i == k {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                for (j, xj) in x.iter().enumerate() {
                    let c = b_i[(k, j)];
                    if c != 0 && !xj.is_zero() {
                        entry += xj * BigRational::from_integer(c.into());
                    }
                }
                m[(k, i)] = entry;
            }
        }
        m.solve(&y).map_err(|e| match e {
            Error::Singular(_) => Error::Singular(format!(
                "M(x) is singular at x = ({}); the family is broken",
                RationalVector(x.to_vec())
            )),
            other => other,
        })
    }

    /// Wire form `{"p", "n", "N", "r", "b_matrices"}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            p: usize,
            n: usize,
            #[serde(rename = "N")]
            big_n: usize,
            r: usize,
            b_matrices: Vec<Vec<Vec<i64>>>,
        }
        let doc = Doc {
            p: self.fiber_dim(),
            n: self.ambient_dim(),
            big_n: self.base_dim(),
            r: self.family_size(),
            b_matrices: self
                .dual
                .b_matrices()
                .iter()
                .map(IntMatrix::to_rows)
                .collect(),
        };
        serde_json::to_string(&doc).expect("fibration serializes")
    }
}

/// Builds the fibration with fiber dimension `p` of `R^n`.
///
/// Uses `N = n - p` and the first `r = p + 1` members of the canonical family.
pub fn build_fibration(p: u64, n: u64) -> Result<SkewFibration> {
    let pair = DimensionPair::new(p, n);
    if !exists_fibration(&pair)? {
        let bound = crate::hrcore::rho_u64(n - p)? as i64 - 1;
        return Err(Error::NonExistent { p, n, bound });
    }
    let base = usize::try_from(n - p)
        .map_err(|_| Error::Domain(format!("base dimension {} is too large", n - p)))?;
    let fam = build_hr_family(base)?;
    let fam = truncate_family(&fam, p as usize + 1)?;
    SkewFibration::from_family(&fam)
}

/// A sampled pair of fibers that failed the skewness certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewCounterexample {
    pub sample_index: usize,
    pub b1: RationalVector,
    pub b2: RationalVector,
    pub rank: usize,
    pub required_rank: usize,
}

/// Outcome of [`verify_fibration`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationReport {
    pub p: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub counterexample: Option<SkewCounterexample>,
}

impl FibrationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for FibrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "pass: ({}, {}) {} sampled fiber pairs skew (seed {})",
                self.p, self.n, self.samples, self.seed
            ),
            Some(c) => write!(
                f,
                "fail: ({}, {}) sample {}: fibers through b1 = ({}) and b2 = ({}) not skew, rank {} < {}",
                self.p, self.n, c.sample_index, c.b1, c.b2, c.rank, c.required_rank
            ),
        }
    }
}

/// Checks skewness of `samples` seeded pairs of distinct fibers.
///
/// Base points have integer entries in `[-9, 9]`. Even-indexed samples draw
/// `b2` independently of `b1` (equal draws are redrawn); odd-indexed samples
/// set `b2 = b1 + t e_k` for a random axis `k`, which probes the degenerate
/// directions that independent draws almost never hit. The first failing pair
/// (by sample index) is reported.
pub fn verify_fibration(fib: &SkewFibration, samples: usize, seed: u64) -> Result<FibrationReport> {
    if samples == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    let mut rng = SampleRng::new(seed);
    let n = fib.base_dim();
    let required_rank = 2 * fib.fiber_dim() + 1;
    let mut counterexample = None;
    for sample_index in 0..samples {
        let b1 = rng.vector(n);
        let b2 = if sample_index % 2 == 1 {
            b1.add(&rng.axis_vector(n))
        } else {
            loop {
                let b = rng.vector(n);
                if b != b1 {
                    break b;
                }
            }
        };
        let rank = skew_rank(&fib.fiber_at(&b1)?, &fib.fiber_at(&b2)?)?;
        if rank != required_rank {
            counterexample = Some(SkewCounterexample {
                sample_index,
                b1,
                b2,
                rank,
                required_rank,
            });
            break;
        }
    }
    Ok(FibrationReport {
        p: fib.fiber_dim(),
        n: fib.ambient_dim(),
        samples,
        seed,
        counterexample,
    })
}

/// Tab-separated dump of fibers for external plotting: one `base` row and one
/// `dir<j>` row per direction, coordinates as exact `num/den` fractions.
pub fn segments_tsv(fibers: &[AffineSubspace]) -> String {
    let mut out = String::from("fiber\trole\tcoordinates\n");
    let join = |v: &RationalVector| v.iter().map(fraction_string).collect::<Vec<_>>().join(",");
    for (i, f) in fibers.iter().enumerate() {
        let _ = writeln!(out, "{i}\tbase\t{}", join(f.base()));
        for (j, d) in f.directions().columns().iter().enumerate() {
            let _ = writeln!(out, "{i}\tdir{j}\t{}", join(d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_integers(xs.iter().copied())
    }

    fn line(base: &[i64], dir: &[i64]) -> AffineSubspace {
        AffineSubspace::new(
            v(base),
            RationalMatrix::from_columns(base.len(), &[v(dir)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn skew_line_examples() {
        assert!(
            pairwise_skew(&line(&[0, 0, 0], &[1, 0, 0]), &line(&[0, 0, 1], &[0, 1, 0])).unwrap()
        );
        assert!(
            !pairwise_skew(&line(&[0, 0, 0], &[1, 0, 0]), &line(&[0, 1, 0], &[1, 0, 0])).unwrap()
        );
        assert!(
            !pairwise_skew(&line(&[0, 0, 0], &[1, 0, 0]), &line(&[0, 0, 0], &[0, 1, 0])).unwrap()
        );
        assert!(matches!(
            pairwise_skew(&line(&[0, 0], &[1, 0]), &line(&[0, 0, 1], &[0, 1, 0])),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn dependent_directions_rejected() {
        let d = RationalMatrix::from_columns(3, &[v(&[1, 2, 3]), v(&[2, 4, 6])]).unwrap();
        assert!(AffineSubspace::new(v(&[0, 0, 0]), d).is_err());
    }

    #[test]
    fn build_examples() {
        let f = build_fibration(1, 3).unwrap();
        assert_eq!((f.fiber_dim(), f.ambient_dim(), f.base_dim()), (1, 3, 2));
        let f = build_fibration(8, 24).unwrap();
        assert_eq!((f.base_dim(), f.family_size()), (16, 9));
        assert!(matches!(
            build_fibration(1, 4),
            Err(Error::NonExistent {
                p: 1,
                n: 4,
                bound: 0
            })
        ));
        assert!(matches!(build_fibration(0, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn lines_of_r3() {
        let f = build_fibration(1, 3).unwrap();
        // Normalized dual for N = 2: B_1 = [[0,1],[-1,0]], B_2 = I.
        let l1 = f.fiber_at(&v(&[1, 0])).unwrap();
        let l2 = f.fiber_at(&v(&[0, 1])).unwrap();
        assert_eq!(l1.base(), &v(&[0, 1, 0]));
        assert_eq!(l1.directions().column(0), v(&[1, 0, -1]));
        assert_eq!(l2.base(), &v(&[0, 0, 1]));
        assert_eq!(l2.directions().column(0), v(&[1, 1, 0]));
        assert!(pairwise_skew(&l1, &l2).unwrap());
    }

    #[test]
    fn fiber_through_origin_is_horizontal() {
        let f = build_fibration(3, 7).unwrap();
        let fib = f.fiber_at(&RationalVector::zeros(4)).unwrap();
        assert!(fib.base().is_zero());
        for j in 0..3 {
            let col = fib.directions().column(j);
            for (i, c) in col.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert!(c.is_one() || c.is_zero());
            }
        }
    }

    #[test]
    fn base_point_lies_on_fiber() {
        let f = build_fibration(3, 7).unwrap();
        let b = v(&[2, -1, 0, 5]);
        let fib = f.fiber_at(&b).unwrap();
        assert!(fib.contains(&RationalVector::zeros(3).concat(&b)).unwrap());
        assert_eq!(
            f.base_point(&RationalVector::zeros(3).concat(&b)).unwrap(),
            b
        );
    }

    #[test]
    fn projection_in_r3_by_hand() {
        // With B_1 = [[0,1],[-1,0]] and B_2 = I, B'(b) = (b_2, -b_1)^T, so at
        // x = 1 the system is y_1 = b_1 + b_2, y_2 = b_2 - b_1, giving
        // b_1 = (y_1 - y_2) / 2 and b_2 = (y_1 + y_2) / 2.
        let f = build_fibration(1, 3).unwrap();
        let b = f.base_point(&v(&[1, 3, 1])).unwrap();
        assert_eq!(b, v(&[1, 2]));
        let b = f.base_point(&v(&[1, 4, 1])).unwrap();
        assert_eq!(b, RationalVector::parse("3/2,5/2").unwrap());
    }

    #[test]
    fn verification_passes_and_detects_corruption() {
        let f = build_fibration(1, 3).unwrap();
        assert!(verify_fibration(&f, 300, 1).unwrap().passed());
        let broken =
            SkewFibration::from_normalized_dual(f.dual().with_reduced_part_zeroed(0).unwrap())
                .unwrap();
        let report = verify_fibration(&broken, 1000, 1).unwrap();
        let c = report.counterexample.clone().expect("corruption detected");
        assert!(c.rank < 3);
        assert!(!pairwise_skew(
            &broken.fiber_at(&c.b1).unwrap(),
            &broken.fiber_at(&c.b2).unwrap()
        )
        .unwrap());
        assert!(report.to_string().starts_with("fail:"));
        assert!(verify_fibration(&f, 0, 1).is_err());
    }

    #[test]
    fn dimension_mismatches() {
        let f = build_fibration(1, 3).unwrap();
        assert!(f.fiber_at(&v(&[1, 2, 3])).is_err());
        assert!(f.base_point(&v(&[1, 2])).is_err());
        assert!(f.point_on_fiber(&v(&[1, 2]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn json_shape() {
        let s = build_fibration(1, 3).unwrap().to_json();
        assert_eq!(
            s,
            r#"{"p":1,"n":3,"N":2,"r":2,"b_matrices":[[[0,1],[-1,0]],[[1,0],[0,1]]]}"#
        );
    }

    #[test]
    fn segments_dump() {
        let f = build_fibration(1, 3).unwrap();
        let s = segments_tsv(&[f.fiber_at(&v(&[1, 0])).unwrap()]);
        assert_eq!(
            s,
            "fiber\trole\tcoordinates\n0\tbase\t0/1,1/1,0/1\n0\tdir0\t1/1,0/1,-1/1\n"
        );
    }
}
