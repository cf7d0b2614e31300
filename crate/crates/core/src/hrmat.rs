//! Hurwitz–Radon matrix families and their dual `B`-matrix form.
//!
//! A family `A_1 = I, A_2, ..., A_r` of `N x N` signed permutation matrices
//! with `A_i^T A_j + A_j^T A_i = 0` for `i != j` realizes the square identity
//! `|a|^2 |b|^2 = |c|^2` with `c = (a_1 A_1 + ... + a_r A_r) b`.
//!
//! # Construction
//!
//! `A_{i+1} = E_i` where the `E_i` are anticommuting skew-symmetric complex
//! structures (`E_i^2 = -I`), i.e. generators of a Clifford algebra acting on
//! `R^N`. Canonical generator sets, by dyadic exponent `e` of `N = 2^e * odd`:
//!
//! - `e mod 4 = 0`: none (dimension 1);
//! - `e mod 4 = 1`: complex multiplication by `i`;
//! - `e mod 4 = 2`: the three non-identity coefficient matrices of Euler's
//!   four-square identity;
//! - `e mod 4 = 3`: left multiplication by the seven imaginary octonion units.
//!
//! Each further factor 16 applies the periodicity step: with the eight
//! generators `E_1..E_8` on `R^16` and their volume element
//! `w = E_1 ... E_8` (`w^2 = I`, `w^T = w`, `w E_j = -E_j w`), generators
//! `F_1..F_k` on `R^M` become `F_i ⊗ w` (first, in order) followed by
//! `I_M ⊗ E_j` on `R^(16 M)`. Odd parts repeat the `2^e` family
//! block-diagonally.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::left_multiplication;
use crate::error::{Error, Result};
use crate::hrcore::rho_u64;
use crate::linalg::{is_integral, IntMatrix, RationalMatrix, RationalVector};

/// A Hurwitz–Radon family `A_1, ..., A_r` of `N x N` integer matrices.
///
/// Families produced by [`build_hr_family`] satisfy every relation checked by
/// [`verify_hr_family`]; families assembled with [`HrFamily::from_matrices`]
/// are unchecked until verified.
#[derive(Clone, PartialEq, Eq)]
pub struct HrFamily {
    n: usize,
    matrices: Vec<IntMatrix>,
}

impl HrFamily {
    /// Assembles a family without checking any relation. Shapes must agree.
    pub fn from_matrices(n: usize, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::Structural(
                "a family needs at least one matrix".into(),
            ));
        }
        if let Some((i, m)) = matrices
            .iter()
            .enumerate()
            .find(|(_, m)| m.rows() != n || m.cols() != n)
        {
            return Err(Error::Structural(format!(
                "matrix {i} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(HrFamily { n, matrices })
    }

    /// Side length `N` of the matrices.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number `r` of matrices.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn into_matrices(self) -> Vec<IntMatrix> {
        self.matrices
    }

    /// The family without its `index`-th member.
    pub fn drop_member(&self, index: usize) -> Result<HrFamily> {
        if index >= self.len() || self.len() == 1 {
            return Err(Error::Domain(format!(
                "cannot drop member {index} of a family of size {}",
                self.len()
            )));
        }
        let mut matrices = self.matrices.clone();
        matrices.remove(index);
        Ok(HrFamily {
            n: self.n,
            matrices,
        })
    }

    /// `a_1 A_1 + ... + a_r A_r`.
    pub fn combination(&self, a: &RationalVector) -> Result<RationalMatrix> {
        if a.len() != self.len() {
            return Err(Error::Structural(format!(
                "coefficient vector has length {}, family has {} members",
                a.len(),
                self.len()
            )));
        }
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (coef, m) in a.iter().zip(&self.matrices) {
            if coef.is_zero() {
                continue;
            }
            for i in 0..self.n {
                for (j, &v) in m.row(i).iter().enumerate() {
                    if v != 0 {
                        out[(i, j)] += coef * BigRational::from_integer(v.into());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let doc = FamilyJson {
            n: self.n,
            r: self.len(),
            matrices: self.matrices.iter().map(IntMatrix::to_rows).collect(),
        };
        serde_json::to_string(&doc).expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: FamilyJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("family JSON: {e}")))?;
        if doc.r != doc.matrices.len() {
            return Err(Error::Structural(format!(
                "declared r = {} but {} matrices given",
                doc.r,
                doc.matrices.len()
            )));
        }
        let matrices = doc
            .matrices
            .iter()
            .map(|rows| {
                if rows.is_empty() {
                    Ok(IntMatrix::zeros(0, 0))
                } else {
                    IntMatrix::from_rows(rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        HrFamily::from_matrices(doc.n, matrices)
    }
}

impl fmt::Debug for HrFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HrFamily")
            .field("N", &self.n)
            .field("r", &self.len())
            .field("matrices", &self.matrices)
            .finish()
    }
}

/// Wire form `{"N": int, "r": int, "matrices": [[[int]]]}`, row-major.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    #[serde(rename = "N")]
    n: usize,
    r: usize,
    matrices: Vec<Vec<Vec<i64>>>,
}

fn complex_unit() -> IntMatrix {
    left_multiplication(2, 1)
}

/// Coefficient matrices of `a_2, a_3, a_4` in Euler's four-square identity
///
/// ```text
/// c1 = a1 b1 + a2 b2 + a3 b3 + a4 b4
/// c2 = a1 b2 - a2 b1 + a3 b4 - a4 b3
/// c3 = a1 b3 - a2 b4 - a3 b1 + a4 b2
/// c4 = a1 b4 + a2 b3 - a3 b2 - a4 b1
/// ```
fn euler_generators() -> Vec<IntMatrix> {
    let rows: [[[i64; 4]; 4]; 3] = [
        [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    ];
    rows.iter()
        .map(|m| IntMatrix::from_rows(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
        .collect()
}

fn octonion_generators() -> Vec<IntMatrix> {
    (1..8).map(|u| left_multiplication(8, u)).collect()
}

/// Eight anticommuting complex structures on `R^16`:
/// `L_j ⊗ K` for the octonion units and `I_8 ⊗ J`, with
/// `K = diag(1, -1)` and `J` the complex unit.
fn sixteen_generators() -> Vec<IntMatrix> {
    let k = IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
    let mut gens: Vec<IntMatrix> = octonion_generators().iter().map(|l| l.kron(&k)).collect();
    gens.push(IntMatrix::identity(8).kron(&complex_unit()));
    gens
}

fn product(ms: &[IntMatrix]) -> IntMatrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| {
        acc.mul(m).expect("square factors of equal size")
    })
}

/// Canonical generators `E_1, ..., E_{rho(2^e) - 1}` on `R^(2^e)`.
pub fn clifford_generators(exponent: u32) -> Vec<IntMatrix> {
    let (mut dim, mut gens) = match exponent % 4 {
        0 => (1usize, Vec::new()),
        1 => (2, vec![complex_unit()]),
        2 => (4, euler_generators()),
        _ => (8, octonion_generators()),
    };
    let periods = exponent / 4;
    if periods > 0 {
        let e16 = sixteen_generators();
        let volume = product(&e16);
        for _ in 0..periods {
            let mut next: Vec<IntMatrix> = gens.iter().map(|f| f.kron(&volume)).collect();
            let id = IntMatrix::identity(dim);
            next.extend(e16.iter().map(|e| id.kron(e)));
            gens = next;
            dim *= 16;
        }
    }
    gens
}

/// The canonical Hurwitz–Radon family of size `rho(N)` on `R^N`.
pub fn build_hr_family(n: usize) -> Result<HrFamily> {
    if n == 0 {
        return Err(Error::Domain("family dimension must be at least 1".into()));
    }
    let exponent = n.trailing_zeros();
    let odd = n >> exponent;
    let block = 1usize << exponent;
    let repeat = IntMatrix::identity(odd);
    let mut matrices = Vec::with_capacity(rho_u64(n as u64)? as usize);
    matrices.push(IntMatrix::identity(n));
    for g in clifford_generators(exponent) {
        debug_assert_eq!(g.rows(), block);
        matrices.push(if odd == 1 { g } else { repeat.kron(&g) });
    }
    Ok(HrFamily { n, matrices })
}

/// Keeps the first `r_target` members.
pub fn truncate_family(fam: &HrFamily, r_target: usize) -> Result<HrFamily> {
    if r_target == 0 || r_target > fam.len() {
        return Err(Error::Domain(format!(
            "cannot truncate a family of size {} to {r_target}",
            fam.len()
        )));
    }
    Ok(HrFamily {
        n: fam.n,
        matrices: fam.matrices[..r_target].to_vec(),
    })
}

/// Signed permutation in column form: `M e_k = sign[k] e_{target[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SignedPerm {
    target: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    /// Returns the offending row or column index on failure.
    fn from_matrix(m: &IntMatrix) -> std::result::Result<SignedPerm, usize> {
        let n = m.rows();
        let mut target = vec![0; n];
        let mut sign = vec![0i8; n];
        let mut row_hit = vec![false; n];
        for k in 0..n {
            let mut found = None;
            for i in 0..n {
                match m[(i, k)] {
                    0 => {}
                    v @ (1 | -1) if found.is_none() => found = Some((i, v as i8)),
                    _ => return Err(k),
                }
            }
            let (i, s) = found.ok_or(k)?;
            if row_hit[i] {
                return Err(k);
            }
            row_hit[i] = true;
            target[k] = i;
            sign[k] = s;
        }
        Ok(SignedPerm { target, sign })
    }

    fn transpose(&self) -> SignedPerm {
        let n = self.target.len();
        let mut target = vec![0; n];
        let mut sign = vec![0; n];
        for k in 0..n {
            target[self.target[k]] = k;
            sign[self.target[k]] = self.sign[k];
        }
        SignedPerm { target, sign }
    }

    /// `self * other`.
    fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let (target, sign) = other
            .target
            .iter()
            .zip(&other.sign)
            .map(|(&t, &s)| (self.target[t], s * self.sign[t]))
            .unzip();
        SignedPerm { target, sign }
    }

    fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(k, &t)| t == k) && self.sign.iter().all(|&s| s == 1)
    }

    /// `self + other == 0`.
    fn is_negation_of(&self, other: &SignedPerm) -> bool {
        self.target == other.target && self.sign.iter().zip(&other.sign).all(|(a, b)| a == &-b)
    }
}

/// First relation found violated by a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// More members than `rho(N)` allows.
    TooManyMembers { r: usize, rho: u64 },
    /// `A_1` is not the identity.
    FirstNotIdentity,
    /// Matrix `index` is not a signed permutation (offending column given).
    NotSignedPermutation { index: usize, column: usize },
    /// `A_i^T A_i != I`.
    NotOrthogonal { index: usize },
    /// `A_i^T A_j + A_j^T A_i != 0`.
    NotAnticommuting { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyMembers { r, rho } => {
                write!(f, "size bound violated: r = {r} exceeds rho(N) = {rho}")
            }
            Violation::FirstNotIdentity => write!(f, "identity violated: first matrix is not I"),
            Violation::NotSignedPermutation { index, column } => write!(
                f,
                "signed-permutation structure violated: matrix {index}, column {column}"
            ),
            Violation::NotOrthogonal { index } => {
                write!(f, "orthogonality violated at {index}")
            }
            Violation::NotAnticommuting { i, j } => {
                write!(f, "anticommutation violated at ({i},{j})")
            }
        }
    }
}

/// Outcome of [`verify_hr_family`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyReport {
    Pass { n: usize, r: usize },
    Fail(Violation),
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        matches!(self, FamilyReport::Pass { .. })
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyReport::Pass { n, r } => write!(f, "pass: N={n} r={r}"),
            FamilyReport::Fail(v) => write!(f, "fail: {v}"),
        }
    }
}

/// Checks every family relation exactly, in a fixed order.
///
/// Relations are checked on the signed-permutation form, which is exact
/// integer arithmetic on the matrices themselves.
pub fn verify_hr_family(fam: &HrFamily) -> Result<FamilyReport> {
    let n = fam.dim();
    if n == 0 {
        return Err(Error::Structural("family of 0x0 matrices".into()));
    }
    for (i, m) in fam.matrices.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Structural(format!("matrix {i} is not {n}x{n}")));
        }
    }
    let rho = rho_u64(n as u64)?;
    let fail = |v| Ok(FamilyReport::Fail(v));
    if fam.len() as u64 > rho {
        return fail(Violation::TooManyMembers { r: fam.len(), rho });
    }
    if fam.matrices[0] != IntMatrix::identity(n) {
        return fail(Violation::FirstNotIdentity);
    }
    let mut perms = Vec::with_capacity(fam.len());
    for (index, m) in fam.matrices.iter().enumerate() {
        match SignedPerm::from_matrix(m) {
            Ok(p) => perms.push(p),
            Err(column) => return fail(Violation::NotSignedPermutation { index, column }),
        }
    }
    let transposes: Vec<SignedPerm> = perms.iter().map(SignedPerm::transpose).collect();
    for (index, (p, t)) in perms.iter().zip(&transposes).enumerate() {
        if !t.compose(p).is_identity() {
            return fail(Violation::NotOrthogonal { index });
        }
    }
    for i in 0..perms.len() {
        for j in i + 1..perms.len() {
            let ij = transposes[i].compose(&perms[j]);
            let ji = transposes[j].compose(&perms[i]);
            if !ij.is_negation_of(&ji) {
                return fail(Violation::NotAnticommuting { i, j });
            }
        }
    }
    Ok(FamilyReport::Pass { n, r: fam.len() })
}

/// `c = (a_1 A_1 + ... + a_r A_r) b`.
pub fn bilinear_image(
    fam: &HrFamily,
    a: &RationalVector,
    b: &RationalVector,
) -> Result<RationalVector> {
    if b.len() != fam.dim() {
        return Err(Error::Structural(format!(
            "vector b has length {}, family acts on R^{}",
            b.len(),
            fam.dim()
        )));
    }
    fam.combination(a)?.apply(b)
}

/// Whether `|a|^2 |b|^2 = |c|^2` holds exactly for `c = (sum a_i A_i) b`.
pub fn verify_square_identity(
    fam: &HrFamily,
    a: &RationalVector,
    b: &RationalVector,
) -> Result<bool> {
    let c = bilinear_image(fam, a, b)?;
    Ok(a.norm_squared() * b.norm_squared() == c.norm_squared())
}

/// The dual form: `N` matrices `B_k` of shape `N x r` with
/// `B(b) a = (sum a_j A_j) b` for `B(b) = sum b_k B_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct DualFamily {
    n: usize,
    r: usize,
    b_matrices: Vec<IntMatrix>,
    normalized: bool,
}

impl DualFamily {
    /// Assembles a dual family; the normalized flag is computed.
    pub fn from_matrices(n: usize, r: usize, b_matrices: Vec<IntMatrix>) -> Result<Self> {
        if b_matrices.len() != n {
            return Err(Error::Structural(format!(
                "dual family on R^{n} needs {n} matrices, got {}",
                b_matrices.len()
            )));
        }
        if r == 0 || b_matrices.iter().any(|m| m.rows() != n || m.cols() != r) {
            return Err(Error::Structural(format!("every B-matrix must be {n}x{r}")));
        }
        let normalized = has_standard_last_columns(&b_matrices, r);
        Ok(DualFamily {
            n,
            r,
            b_matrices,
            normalized,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank_target(&self) -> usize {
        self.r
    }

    pub fn b_matrices(&self) -> &[IntMatrix] {
        &self.b_matrices
    }

    /// Whether the last column of `B_i` is the `i`-th standard basis vector for every `i`.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `B(b) = b_1 B_1 + ... + b_N B_N`, an `N x r` matrix.
    pub fn combination(&self, b: &RationalVector) -> Result<RationalMatrix> {
        if b.len() != self.n {
            return Err(Error::Structural(format!(
                "vector b has length {}, expected {}",
                b.len(),
                self.n
            )));
        }
        let mut out = RationalMatrix::zeros(self.n, self.r);
        for (coef, m) in b.iter().zip(&self.b_matrices) {
            if coef.is_zero() {
                continue;
            }
            for i in 0..self.n {
                for (j, &v) in m.row(i).iter().enumerate() {
                    if v != 0 {
                        out[(i, j)] += coef * BigRational::from_integer(v.into());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `B(b)` with its last column removed, an `N x (r - 1)` matrix.
    pub fn reduced_combination(&self, b: &RationalVector) -> Result<RationalMatrix> {
        let full = self.combination(b)?;
        let cols = full.columns();
        RationalMatrix::from_columns(self.n, &cols[..self.r - 1])
    }

    /// Whether `B(b)` has full column rank `r`.
    pub fn has_maximal_rank_at(&self, b: &RationalVector) -> Result<bool> {
        Ok(self.combination(b)?.rank() == self.r)
    }

    /// Replaces every entry of `B_index` outside the last column by zero.
    ///
    /// Keeps normalization intact; used to manufacture broken fibrations.
    pub fn with_reduced_part_zeroed(&self, index: usize) -> Result<DualFamily> {
        if index >= self.n {
            return Err(Error::Domain(format!("no B-matrix with index {index}")));
        }
        let mut mats = self.b_matrices.clone();
        for i in 0..self.n {
            for j in 0..self.r - 1 {
                mats[index][(i, j)] = 0;
            }
        }
        DualFamily::from_matrices(self.n, self.r, mats)
    }
}

impl fmt::Debug for DualFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DualFamily")
            .field("N", &self.n)
            .field("r", &self.r)
            .field("normalized", &self.normalized)
            .field("b_matrices", &self.b_matrices)
            .finish()
    }
}

fn has_standard_last_columns(mats: &[IntMatrix], r: usize) -> bool {
    mats.iter()
        .enumerate()
        .all(|(k, m)| (0..m.rows()).all(|i| m[(i, r - 1)] == i64::from(i == k)))
}

/// `B_k[i][j] = A_j[i][k]`.
pub fn dualize(fam: &HrFamily) -> DualFamily {
    let n = fam.dim();
    let r = fam.len();
    let b_matrices = (0..n)
        .map(|k| {
            let mut b = IntMatrix::zeros(n, r);
            for (j, a) in fam.matrices().iter().enumerate() {
                for i in 0..n {
                    b[(i, j)] = a[(i, k)];
                }
            }
            b
        })
        .collect();
    DualFamily::from_matrices(n, r, b_matrices).expect("dual shapes are consistent")
}

/// Changes the `b`-coordinates so that the last column of every `B_i` is `e_i`.
///
/// The map `b -> last column of B(b)` is `b -> L b` with `L[i][k] = B_k[i][r-1]`.
/// In the new coordinates `b' = L b` the family is `B'_k = sum_m (L^-1)[m][k] B_m`.
pub fn normalize(dual: &DualFamily) -> Result<DualFamily> {
    let n = dual.n;
    let r = dual.r;
    let mut last = RationalMatrix::zeros(n, n);
    for (k, b) in dual.b_matrices.iter().enumerate() {
        for i in 0..n {
            last[(i, k)] = BigRational::from_integer(b[(i, r - 1)].into());
        }
    }
    let mut inverse_cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = RationalVector::zeros(n);
        e.0[k] = BigRational::from_integer(1.into());
        let col = last.solve(&e).map_err(|_| {
            Error::Normalization("the map b -> last column of B(b) is singular".into())
        })?;
        inverse_cols.push(col);
    }
    // inverse[m][k] = inverse_cols[k][m]
    let mut b_matrices = Vec::with_capacity(n);
    for col in &inverse_cols {
        let mut acc = IntMatrix::zeros(n, r);
        for (m, coef) in col.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            if !is_integral(coef) {
                return Err(Error::Normalization(
                    "coordinate change has non-integral entries".into(),
                ));
            }
            let c: i64 = coef
                .numer()
                .try_into()
                .map_err(|_| Error::Normalization("coordinate change entry overflows".into()))?;
            acc = acc.add(&dual.b_matrices[m].scale(c))?;
        }
        b_matrices.push(acc);
    }
    let out = DualFamily::from_matrices(n, r, b_matrices)?;
    if !out.normalized {
        return Err(Error::Normalization(
            "coordinate change did not produce standard last columns".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SampleRng;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_families() {
        let f1 = build_hr_family(1).unwrap();
        assert_eq!(f1.matrices(), &[IntMatrix::identity(1)]);
        let f2 = build_hr_family(2).unwrap();
        assert_eq!(
            f2.matrices(),
            &[IntMatrix::identity(2), m(&[&[0, -1], &[1, 0]])]
        );
        assert!(build_hr_family(0).is_err());
    }

    #[test]
    fn four_square_family_matches_euler() {
        let f4 = build_hr_family(4).unwrap();
        let euler = [
            m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            m(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
            m(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]),
            m(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]),
        ];
        assert_eq!(f4.matrices(), &euler);
    }

    #[test]
    fn verifier_examples() {
        assert!(verify_hr_family(&build_hr_family(8).unwrap())
            .unwrap()
            .passed());
        assert!(verify_hr_family(&build_hr_family(16).unwrap())
            .unwrap()
            .passed());
        assert_eq!(build_hr_family(16).unwrap().len(), 9);

        let bad = HrFamily::from_matrices(2, vec![IntMatrix::identity(2); 2]).unwrap();
        let report = verify_hr_family(&bad).unwrap();
        assert_eq!(
            report,
            FamilyReport::Fail(Violation::NotAnticommuting { i: 0, j: 1 })
        );
        assert_eq!(
            report.to_string(),
            "fail: anticommutation violated at (0,1)"
        );

        let good =
            HrFamily::from_matrices(2, vec![IntMatrix::identity(2), m(&[&[0, -1], &[1, 0]])])
                .unwrap();
        assert!(verify_hr_family(&good).unwrap().passed());
    }

    #[test]
    fn verifier_names_each_violation() {
        let j = m(&[&[0, -1], &[1, 0]]);
        let too_many =
            HrFamily::from_matrices(2, vec![IntMatrix::identity(2), j.clone(), j.scale(-1)])
                .unwrap();
        assert!(matches!(
            verify_hr_family(&too_many).unwrap(),
            FamilyReport::Fail(Violation::TooManyMembers { r: 3, rho: 2 })
        ));
        let not_id = HrFamily::from_matrices(2, vec![j.clone(), IntMatrix::identity(2)]).unwrap();
        assert_eq!(
            verify_hr_family(&not_id).unwrap(),
            FamilyReport::Fail(Violation::FirstNotIdentity)
        );
        let not_perm =
            HrFamily::from_matrices(2, vec![IntMatrix::identity(2), m(&[&[1, 1], &[0, 1]])])
                .unwrap();
        assert!(matches!(
            verify_hr_family(&not_perm).unwrap(),
            FamilyReport::Fail(Violation::NotSignedPermutation { index: 1, .. })
        ));
        let mismatch = HrFamily {
            n: 2,
            matrices: vec![IntMatrix::identity(2), IntMatrix::identity(3)],
        };
        assert!(matches!(
            verify_hr_family(&mismatch),
            Err(Error::Structural(_))
        ));
        assert!(HrFamily::from_matrices(2, vec![IntMatrix::identity(3)]).is_err());
    }

    #[test]
    fn euler_identity_at_fixed_point() {
        let f4 = build_hr_family(4).unwrap();
        let a = RationalVector::from_integers([1, 2, 3, 4]);
        let b = RationalVector::from_integers([1, 0, -1, 1]);
        // Written out from the identity itself:
        // c1 = 1 + 0 - 3 + 4 = 2, c2 = 0 - 2 + 3 + 4 = 5,
        // c3 = -1 - 2 - 3 + 0 = -6, c4 = 1 - 2 - 0 - 4 = -5; |c|^2 = 90 = 30 * 3.
        let c = bilinear_image(&f4, &a, &b).unwrap();
        assert_eq!(c, RationalVector::from_integers([2, 5, -6, -5]));
        assert!(verify_square_identity(&f4, &a, &b).unwrap());
        assert!(verify_square_identity(&f4, &RationalVector::zeros(4), &b).unwrap());
    }

    #[test]
    fn corrupted_family_breaks_identity() {
        let f4 = build_hr_family(4).unwrap();
        let mut mats = f4.into_matrices();
        mats[1][(0, 1)] = -mats[1][(0, 1)];
        let bad = HrFamily::from_matrices(4, mats).unwrap();
        assert!(!verify_hr_family(&bad).unwrap().passed());
        // Search small integer vectors for a witness.
        let mut rng = SampleRng::new(11);
        let witness = (0..1000)
            .map(|_| (rng.vector(4), rng.vector(4)))
            .find(|(a, b)| !verify_square_identity(&bad, a, b).unwrap());
        assert!(witness.is_some());
        // c = (I + A_2') b vanishes here while |a|^2 |b|^2 = 4.
        let a = RationalVector::from_integers([1, 1, 0, 0]);
        let b = RationalVector::from_integers([1, 1, 0, 0]);
        assert_eq!(
            bilinear_image(&bad, &a, &b).unwrap(),
            RationalVector::zeros(4)
        );
        assert!(!verify_square_identity(&bad, &a, &b).unwrap());
        assert!(verify_square_identity(&build_hr_family(4).unwrap(), &a, &b).unwrap());
    }

    #[test]
    fn dimension_mismatch_in_square_identity() {
        let f2 = build_hr_family(2).unwrap();
        let a = RationalVector::from_integers([1, 2, 3]);
        let b = RationalVector::from_integers([1, 2]);
        assert!(matches!(
            verify_square_identity(&f2, &a, &b),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn dual_of_two_dimensional_family() {
        let d = dualize(&build_hr_family(2).unwrap());
        assert_eq!(
            d.b_matrices(),
            &[IntMatrix::identity(2), m(&[&[0, -1], &[1, 0]])]
        );
        // Last columns are e2 and -e1, so this dual is not normalized yet.
        assert!(!d.is_normalized());
        let nd = normalize(&d).unwrap();
        assert!(nd.is_normalized());
        assert_eq!(
            nd.b_matrices(),
            &[m(&[&[0, 1], &[-1, 0]]), IntMatrix::identity(2)]
        );
    }

    #[test]
    fn dual_of_trivial_family() {
        let d = dualize(&build_hr_family(1).unwrap());
        assert_eq!(d.b_matrices(), &[IntMatrix::identity(1)]);
        assert!(d.is_normalized());
        assert_eq!(normalize(&d).unwrap(), d);
    }

    #[test]
    fn euler_dual_has_full_rank_and_normalizes() {
        let d = dualize(&build_hr_family(4).unwrap());
        let mut rng = SampleRng::new(4);
        for _ in 0..100 {
            let b = rng.nonzero_vector(4);
            assert!(d.has_maximal_rank_at(&b).unwrap());
        }
        let nd = normalize(&d).unwrap();
        assert!(nd.is_normalized());
        for _ in 0..100 {
            let b = rng.nonzero_vector(4);
            assert!(nd.has_maximal_rank_at(&b).unwrap());
        }
    }

    #[test]
    fn singular_last_column_map_is_reported() {
        let d = DualFamily::from_matrices(2, 1, vec![m(&[&[1], &[0]]), m(&[&[1], &[0]])]).unwrap();
        assert!(matches!(normalize(&d), Err(Error::Normalization(_))));
    }

    #[test]
    fn truncation() {
        let f8 = build_hr_family(8).unwrap();
        let t = truncate_family(&f8, 4).unwrap();
        assert_eq!(t.len(), 4);
        assert!(verify_hr_family(&t).unwrap().passed());
        assert_eq!(truncate_family(&f8, 8).unwrap(), f8);
        assert_eq!(
            truncate_family(&f8, 1).unwrap().matrices(),
            &[IntMatrix::identity(8)]
        );
        assert!(truncate_family(&f8, 0).is_err());
        assert!(truncate_family(&f8, 9).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = build_hr_family(12).unwrap();
        let back = HrFamily::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert!(HrFamily::from_json(r#"{"N":2,"r":2,"matrices":[[[1,0],[0,1]]]}"#).is_err());
        assert!(HrFamily::from_json(r#"{"N":2,"r":1,"matrices":[[[1,0],[0,1]]],"x":1}"#).is_err());
    }
}
