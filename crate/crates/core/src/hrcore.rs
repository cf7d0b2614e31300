//! The Hurwitz–Radon function and the existence criterion for fibrations of
//! `R^n` by pairwise skew `p`-dimensional affine subspaces.
//!
//! A fibration with fiber dimension `p` exists exactly when
//! `p <= rho(n - p) - 1`. Since `p` appears on both sides, the admissible
//! fiber dimensions of a given `n` are found by scanning; the scan is short
//! because `rho(m) <= 2 log2(m) + 2`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `N = 2^exponent * odd_part` with `odd_part` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicDecomposition {
    pub exponent: u64,
    pub odd_part: BigUint,
}

impl DyadicDecomposition {
    pub fn reconstruct(&self) -> BigUint {
        &self.odd_part << self.exponent
    }
}

/// Splits `n` into its dyadic part and odd part.
pub fn dyadic_decompose(n: &BigUint) -> Result<DyadicDecomposition> {
    let exponent = n
        .trailing_zeros()
        .ok_or_else(|| Error::Domain("dyadic decomposition of 0 is undefined".into()))?;
    Ok(DyadicDecomposition {
        exponent,
        odd_part: n >> exponent,
    })
}

/// `rho(2^exponent)`, the value shared by every `N` with that dyadic part.
pub fn rho_of_dyadic_exponent(exponent: u64) -> BigUint {
    let e = BigUint::from(exponent);
    let two_e: BigUint = &e << 1u32;
    match exponent % 4 {
        0 => two_e + 1u32,
        1 | 2 => two_e,
        _ => two_e + 2u32,
    }
}

/// The Hurwitz–Radon function.
pub fn rho(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::Domain("rho(0) is undefined".into()));
    }
    let d = dyadic_decompose(n)?;
    Ok(rho_of_dyadic_exponent(d.exponent))
}

/// [`rho`] for machine-sized arguments.
pub fn rho_u64(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("rho(0) is undefined".into()));
    }
    let e = u64::from(n.trailing_zeros());
    Ok(match e % 4 {
        0 => 2 * e + 1,
        1 | 2 => 2 * e,
        _ => 2 * e + 2,
    })
}

/// Fiber and ambient dimension of a prospective fibration `R^p -> R^n -> R^(n-p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionPair {
    pub fiber_dim: BigUint,
    pub ambient_dim: BigUint,
}

impl DimensionPair {
    pub fn new(fiber_dim: impl Into<BigUint>, ambient_dim: impl Into<BigUint>) -> Self {
        DimensionPair {
            fiber_dim: fiber_dim.into(),
            ambient_dim: ambient_dim.into(),
        }
    }

    fn check(&self) -> Result<BigUint> {
        if self.fiber_dim.is_zero() {
            return Err(Error::Domain("fiber dimension must be at least 1".into()));
        }
        if self.ambient_dim <= self.fiber_dim {
            return Err(Error::Domain(format!(
                "ambient dimension {} must exceed fiber dimension {}",
                self.ambient_dim, self.fiber_dim
            )));
        }
        Ok(&self.ambient_dim - &self.fiber_dim)
    }

    /// `rho(n - p)`, after validating the pair.
    fn rho_of_base(&self) -> Result<BigUint> {
        rho(&self.check()?)
    }
}

/// True iff `R^n` admits a fibration by pairwise skew affine `p`-planes.
pub fn exists_fibration(pair: &DimensionPair) -> Result<bool> {
    let r = pair.rho_of_base()?;
    Ok(pair.fiber_dim < r)
}

/// An admissible pair is dominant when `(p + 1, n + 1)` is not admissible,
/// i.e. when `p = rho(n - p) - 1`.
pub fn is_dominant(pair: &DimensionPair) -> Result<bool> {
    let r = pair.rho_of_base()?;
    let p1 = &pair.fiber_dim + 1u32;
    if p1 > r {
        return Err(Error::Domain(format!(
            "({}, {}) is not admissible",
            pair.fiber_dim, pair.ambient_dim
        )));
    }
    Ok(p1 == r)
}

/// All fiber dimensions `p >= 1` for which `R^n` admits a skew fibration, ascending.
pub fn admissible_set(n: &BigUint) -> Vec<BigUint> {
    // rho(m) <= 2*bits(m) + 2, so p <= 2*bits(n) + 1.
    let bound = BigUint::from(2 * n.bits() + 2);
    let mut out = Vec::new();
    let mut p = BigUint::one();
    while &p < n && p <= bound {
        let pair = DimensionPair::new(p.clone(), n.clone());
        if exists_fibration(&pair).unwrap_or(false) {
            out.push(p.clone());
        }
        p += 1u32;
    }
    out
}

/// [`admissible_set`] for machine-sized `n`.
pub fn admissible_set_u64(n: u64) -> Vec<u64> {
    (1..n)
        .take_while(|p| *p <= 2 * u64::from(64 - n.leading_zeros()) + 1)
        .filter(|&p| rho_u64(n - p).map(|r| p < r).unwrap_or(false))
        .collect()
}

/// One row of an admissibility table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    /// Ascending admissible fiber dimensions.
    pub admissible: Vec<u64>,
    /// Ascending dominant fiber dimensions (a subset of `admissible`).
    pub dominant: Vec<u64>,
}

impl TableRow {
    pub fn for_dimension(n: u64) -> Self {
        let admissible = admissible_set_u64(n);
        let dominant = admissible
            .iter()
            .copied()
            .filter(|&p| rho_u64(n - p).map(|r| p + 1 == r).unwrap_or(false))
            .collect();
        TableRow {
            n,
            admissible,
            dominant,
        }
    }

    /// The largest dominant fiber dimension, if any.
    pub fn dominant_max(&self) -> Option<u64> {
        self.dominant.last().copied()
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    n: u64,
    admissible: &'a [u64],
    dominant: Option<u64>,
}

/// Admissibility table for a range of ambient dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityTable {
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Tsv,
    Json,
}

impl AdmissibilityTable {
    pub fn compute(n_min: u64, n_max: u64) -> Result<Self> {
        if n_min < 3 || n_min > n_max {
            return Err(Error::Domain(format!(
                "table range must satisfy 3 <= from <= to, got {n_min}..{n_max}"
            )));
        }
        Ok(AdmissibilityTable {
            rows: (n_min..=n_max).map(TableRow::for_dimension).collect(),
        })
    }

    pub fn row(&self, n: u64) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Renders the table. Every format ends with a newline.
    ///
    /// JSON rows carry `dominant` as the largest dominant entry; the text
    /// and TSV forms mark every dominant entry.
    pub fn render(&self, format: TableFormat) -> String {
        let mut out = String::new();
        match format {
            TableFormat::Text => {
                out.push_str("   n | p (* = dominant)\n");
                out.push_str("-----+-----------------\n");
                for row in &self.rows {
                    let cells: Vec<String> = row
                        .admissible
                        .iter()
                        .map(|p| {
                            if row.dominant.contains(p) {
                                format!("{p}*")
                            } else {
                                p.to_string()
                            }
                        })
                        .collect();
                    let cells = if cells.is_empty() {
                        "-".to_string()
                    } else {
                        cells.join(" ")
                    };
                    let _ = writeln!(out, "{:>4} | {}", row.n, cells);
                }
            }
            TableFormat::Tsv => {
                out.push_str("n\tadmissible\tdominant\n");
                for row in &self.rows {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}",
                        row.n,
                        join_commas(&row.admissible),
                        join_commas(&row.dominant)
                    );
                }
            }
            TableFormat::Json => {
                let rows: Vec<JsonRow<'_>> = self
                    .rows
                    .iter()
                    .map(|r| JsonRow {
                        n: r.n,
                        admissible: &r.admissible,
                        dominant: r.dominant_max(),
                    })
                    .collect();
                out.push_str(&serde_json::to_string(&rows).expect("table rows serialize"));
                out.push('\n');
            }
        }
        out
    }
}

fn join_commas(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `render_table(n_min, n_max, format)`.
pub fn render_table(n_min: u64, n_max: u64, format: TableFormat) -> Result<String> {
    Ok(AdmissibilityTable::compute(n_min, n_max)?.render(format))
}

/// Reference admissibility tables for `3 <= n <= 80`, transcribed entry by
/// entry; a trailing `*` marks an entry printed in boldface.
pub const REFERENCE_TABLES_TSV: &str = include_str!("../fixtures/reference_tables.tsv");

/// A row of [`REFERENCE_TABLES_TSV`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub n: u64,
    pub entries: Vec<u64>,
    pub bold: Vec<u64>,
}

/// Parses [`REFERENCE_TABLES_TSV`].
pub fn reference_tables() -> Vec<ReferenceRow> {
    REFERENCE_TABLES_TSV
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let mut cols = line.split('\t');
            let n = cols
                .next()
                .and_then(|s| s.trim().parse().ok())
                .expect("fixture row starts with n");
            let mut entries = Vec::new();
            let mut bold = Vec::new();
            for cell in cols.next().unwrap_or("").split(',').map(str::trim) {
                if cell.is_empty() {
                    continue;
                }
                let (digits, is_bold) = match cell.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (cell, false),
                };
                let p: u64 = digits.parse().expect("fixture entry is an integer");
                entries.push(p);
                if is_bold {
                    bold.push(p);
                }
            }
            entries.sort_unstable();
            bold.sort_unstable();
            ReferenceRow { n, entries, bold }
        })
        .collect()
}

/// Hex SHA-256 of the reference table fixture.
pub fn reference_tables_hash() -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(REFERENCE_TABLES_TSV.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn dyadic_examples() {
        let d = dyadic_decompose(&big(12)).unwrap();
        assert_eq!((d.exponent, d.odd_part), (2, big(3)));
        let d = dyadic_decompose(&big(1)).unwrap();
        assert_eq!((d.exponent, d.odd_part), (0, big(1)));
        let d = dyadic_decompose(&big(16)).unwrap();
        assert_eq!((d.exponent, d.odd_part), (4, big(1)));
        assert!(dyadic_decompose(&big(0)).is_err());
    }

    #[test]
    fn rho_examples() {
        let expected = [1u64, 2, 4, 8, 9, 10, 12, 16, 17];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(rho_u64(1 << k).unwrap(), *want);
            assert_eq!(rho(&big(1 << k)).unwrap(), big(*want));
        }
        assert_eq!(rho_u64(12).unwrap(), 4);
        for odd in (1..200).step_by(2) {
            assert_eq!(rho_u64(odd).unwrap(), 1);
        }
        assert!(rho_u64(0).is_err());
        assert!(rho(&big(0)).is_err());
    }

    #[test]
    fn rho_accepts_huge_arguments() {
        let n = BigUint::one() << 1000u32;
        // 1000 = 4 * 250, so rho(2^1000) = 2001.
        assert_eq!(rho(&n).unwrap(), big(2001));
        let n = (BigUint::one() << 1003u32) * 7u32;
        assert_eq!(rho(&n).unwrap(), big(2008));
    }

    #[test]
    fn existence_examples() {
        assert!(exists_fibration(&DimensionPair::new(1u32, 3u32)).unwrap());
        assert!(!exists_fibration(&DimensionPair::new(1u32, 4u32)).unwrap());
        assert!(exists_fibration(&DimensionPair::new(8u32, 24u32)).unwrap());
        for k in 2..10u32 {
            let n = 1u64 << k;
            for p in 1..n {
                assert!(!exists_fibration(&DimensionPair::new(p, n)).unwrap());
            }
        }
    }

    #[test]
    fn existence_domain_errors() {
        assert!(exists_fibration(&DimensionPair::new(0u32, 3u32)).is_err());
        assert!(exists_fibration(&DimensionPair::new(3u32, 3u32)).is_err());
        assert!(exists_fibration(&DimensionPair::new(4u32, 3u32)).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(is_dominant(&DimensionPair::new(7u32, 15u32)).unwrap());
        assert!(is_dominant(&DimensionPair::new(1u32, 3u32)).unwrap());
        assert!(!is_dominant(&DimensionPair::new(1u32, 5u32)).unwrap());
        assert!(is_dominant(&DimensionPair::new(1u32, 4u32)).is_err());
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_set_u64(7), vec![1, 3]);
        assert_eq!(admissible_set_u64(15), vec![1, 3, 7]);
        assert_eq!(admissible_set_u64(80), Vec::<u64>::new());
        assert_eq!(admissible_set_u64(24), vec![8]);
        assert_eq!(admissible_set(&big(41)), vec![big(1), big(9)]);
    }

    #[test]
    fn big_and_small_admissible_sets_agree() {
        for n in 3..600u64 {
            let small = admissible_set_u64(n);
            let large: Vec<u64> = admissible_set(&big(n))
                .iter()
                .map(|p| p.to_u64().unwrap())
                .collect();
            assert_eq!(small, large, "n = {n}");
            let brute: Vec<u64> = (1..n).filter(|&p| p < rho_u64(n - p).unwrap()).collect();
            assert_eq!(small, brute, "n = {n}");
        }
    }

    #[test]
    fn json_render_of_r80() {
        let s = render_table(80, 80, TableFormat::Json).unwrap();
        assert_eq!(s, "[{\"n\":80,\"admissible\":[],\"dominant\":null}]\n");
    }

    #[test]
    fn render_rejects_bad_ranges() {
        assert!(render_table(2, 10, TableFormat::Text).is_err());
        assert!(render_table(10, 9, TableFormat::Text).is_err());
    }

    #[test]
    fn text_and_tsv_render() {
        let text = render_table(3, 8, TableFormat::Text).unwrap();
        assert!(text.contains("   7 | 1* 3*\n"));
        assert!(text.contains("   8 | -\n"));
        let tsv = render_table(15, 15, TableFormat::Tsv).unwrap();
        assert_eq!(tsv, "n\tadmissible\tdominant\n15\t1,3,7\t1,3,7\n");
    }
}
