//! Exact linear algebra: small-integer matrices, rational vectors and
//! matrices, and fraction-free (Bareiss) elimination for rank and solving.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
///
/// Entries of the matrices built by this crate lie in `{-1, 0, 1}`, and all
/// products formed from them stay far inside `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Structural("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Structural(
                "cannot add matrices of different shape".into(),
            ));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product over the rationals.
    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.len() != self.cols {
            return Err(Error::Structural(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .filter(|(a, _)| **a != 0)
                        .fold(BigRational::zero(), |acc, (a, x)| {
                            acc + x * BigRational::from_integer(BigInt::from(*a))
                        })
                })
                .collect(),
        ))
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Column vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(xs: I) -> Self {
        RationalVector(
            xs.into_iter()
                .map(|x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigRational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn norm_squared(&self) -> BigRational {
        self.0
            .iter()
            .fold(BigRational::zero(), |acc, x| acc + x * x)
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn concat(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Parses `"a,b/c,-d"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses an integer or `num/den`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn fraction_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_columns(rows: usize, columns: &[RationalVector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Structural("column length mismatch".into()));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<RationalVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != other.rows {
            return Err(Error::Structural(format!(
                "cannot stack {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        RationalMatrix::from_columns(self.rows, &cols)
    }

    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.len() != self.cols {
            return Err(Error::Structural("matrix-vector dimension mismatch".into()));
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(BigRational::zero(), |acc, j| acc + &self[(i, j)] * &v[j])
                })
                .collect(),
        ))
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(integer_rows(self, None))
    }

    /// Unique solution of the square system `self * x = rhs`.
    pub fn solve(&self, rhs: &RationalVector) -> Result<RationalVector> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return Err(Error::Structural("solve needs a square system".into()));
        }
        bareiss_solve(integer_rows(self, Some(rhs)), self.cols)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Scales each row (optionally augmented by `rhs`) by the lcm of its
/// denominators. Row scaling preserves rank and the solution set.
fn integer_rows(m: &RationalMatrix, rhs: Option<&RationalVector>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let mut row: Vec<&BigRational> = (0..m.cols).map(|j| &m[(i, j)]).collect();
            if let Some(b) = rhs {
                row.push(&b[i]);
            }
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Forward Bareiss elimination in place; returns the pivot columns.
///
/// Columns without a pivot are skipped. Every division is exact.
fn bareiss_forward(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let (top, rest) = m.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let pivot = &pivot_row[col];
        for r in rest.iter_mut() {
            let factor = r[col].clone();
            for j in col + 1..ncols {
                let v = pivot * &r[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                r[j] = v / &prev;
            }
            r[col] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of an integer matrix given by rows.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    bareiss_forward(&mut rows, ncols).len()
}

/// Solves the square system held as augmented integer rows `[A | b]`.
fn bareiss_solve(mut aug: Vec<Vec<BigInt>>, n: usize) -> Result<RationalVector> {
    let pivots = bareiss_forward(&mut aug, n + 1);
    if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::Singular(format!(
            "{n}x{n} system has no unique solution"
        )));
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(aug[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(aug[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(aug[i][i].clone());
    }
    Ok(RationalVector(x))
}

/// Rank of the rational matrix whose columns are given.
pub fn column_rank(rows: usize, columns: &[RationalVector]) -> Result<usize> {
    Ok(RationalMatrix::from_columns(rows, columns)?.rank())
}

pub(crate) fn is_integral(x: &BigRational) -> bool {
    x.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Plain Gaussian elimination over the rationals; independent of Bareiss.
    fn gauss_rank(m: &RationalMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = &row[col] / &pivot[col];
                    for (x, pv) in row.iter_mut().zip(&pivot) {
                        *x -= &f * pv;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn matrix(rows: usize, cols: usize, entries: &[i64]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = q(entries[i * cols + j], 1);
            }
        }
        m
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(matrix(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]).rank(), 3);
        assert_eq!(matrix(3, 3, &[1, 2, 3, 2, 4, 6, 0, 0, 1]).rank(), 2);
        assert_eq!(matrix(2, 3, &[0, 0, 0, 0, 0, 0]).rank(), 0);
        assert_eq!(matrix(3, 2, &[0, 1, 0, 2, 0, 3]).rank(), 1);
        let mut m = matrix(2, 2, &[1, 0, 0, 1]);
        m[(0, 1)] = q(1, 3);
        m[(1, 0)] = q(3, 1);
        // det = 1 - 1 = 0
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_small_system() {
        let m = matrix(2, 2, &[2, 1, 1, 3]);
        let x = m.solve(&RationalVector::from_integers([3, 5])).unwrap();
        assert_eq!(x.0, vec![q(4, 5), q(7, 5)]);
        let singular = matrix(2, 2, &[1, 2, 2, 4]);
        assert!(matches!(
            singular.solve(&RationalVector::from_integers([1, 1])),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fraction_string(&q(4, 1)), "4/1");
        assert_eq!(fraction_string(&q(-1, 12)), "-1/12");
        let v = RationalVector::parse("1, -1/2,3").unwrap();
        assert_eq!(v.to_string(), "1,-1/2,3");
    }

    #[test]
    fn kron_and_mul() {
        let j = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
        let jj = j.mul(&j).unwrap();
        assert_eq!(jj, IntMatrix::identity(2).scale(-1));
        let k = IntMatrix::identity(3).kron(&j);
        assert_eq!(k.rows(), 6);
        assert_eq!(k[(2, 3)], -1);
        assert_eq!(k[(3, 2)], 1);
        assert_eq!(k[(0, 3)], 0);
    }

    proptest! {
        #[test]
        fn bareiss_rank_matches_gauss(
            rows in 1usize..6,
            cols in 1usize..7,
            seed in proptest::collection::vec((-4i64..5, 1i64..4), 42),
        ) {
            let mut m = RationalMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let (n, d) = seed[i * cols + j];
                    // Bias toward rank deficiency.
                    m[(i, j)] = if (i + j) % 3 == 0 { q(0, 1) } else { q(n, d) };
                }
            }
            prop_assert_eq!(m.rank(), gauss_rank(&m));
        }

        #[test]
        fn solve_round_trips(
            entries in proptest::collection::vec(-5i64..6, 16),
            x in proptest::collection::vec((-5i64..6, 1i64..5), 4),
        ) {
            let m = matrix(4, 4, &entries);
            let x = RationalVector(x.into_iter().map(|(n, d)| q(n, d)).collect());
            let b = m.apply(&x).unwrap();
            match m.solve(&b) {
                Ok(sol) => prop_assert_eq!(sol, x),
                Err(_) => prop_assert!(gauss_rank(&m) < 4),
            }
        }
    }
}
