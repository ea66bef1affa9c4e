//! Realizability of dihedral-angle matrices: the cosine matrix of a simplex is
//! negative semidefinite of rank `d` with a strictly positive kernel vector. Also
//! nonnegative row-space certificates and reconstruction of a simplex from its angles.

mod lp;
pub mod symbolic;

pub use lp::feasible_point;

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    determinant, fmt_rational, inverse, parse_real, principal_minor_sums, rational_from_f64, rational_sqrt, rational_to_f64,
    AlgebraicReal,
    Field, RatMatrix, Rational,
};
use crate::error::{Error, Result};
use crate::simplex::{DihedralData, Simplex};

/// Symmetric `(d+1) x (d+1)` matrix of dihedral cosines with diagonal `-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CosMatrix {
    dim: usize,
    entries: Vec<Vec<AlgebraicReal>>,
}

/// Positive weights `w` with `R = D A D` rational for `D = diag(sqrt(w))`.
#[derive(Clone, Debug)]
struct Scaling {
    weights: Vec<Rational>,
    matrix: RatMatrix,
}

impl CosMatrix {
    pub fn new(entries: Vec<Vec<AlgebraicReal>>) -> Result<Self> {
        let n = entries.len();
        if !(3..=5).contains(&n) || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected a square matrix of size 3 to 5, got {n} rows")));
        }
        let one = AlgebraicReal::one();
        let minus_one = one.neg();
        for i in 0..n {
            if entries[i][i] != minus_one {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is {} instead of -1", entries[i][i])));
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                let c = &entries[i][j];
                if c >= &one || c <= &minus_one {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {c} is not in (-1, 1)")));
                }
            }
        }
        Ok(CosMatrix { dim: n - 1, entries })
    }

    pub fn from_rationals(rows: &[Vec<Rational>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|x| AlgebraicReal::from_rational(x.clone())).collect()).collect())
    }

    /// Builds the matrix from its strictly upper triangle, row by row.
    pub fn from_upper(dim: usize, upper: &[AlgebraicReal]) -> Result<Self> {
        let n = dim + 1;
        if upper.len() != n * (n - 1) / 2 {
            return Err(Error::InvalidMatrix(format!("need {} off-diagonal entries", n * (n - 1) / 2)));
        }
        let mut m = vec![vec![AlgebraicReal::from_integer(-1); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = upper[k].clone();
                m[j][i] = upper[k].clone();
                k += 1;
            }
        }
        Self::new(m)
    }

    pub fn from_dihedral(d: &DihedralData) -> Result<Self> {
        Self::new(d.cos.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.dim + 1
    }

    pub fn entries(&self) -> &[Vec<AlgebraicReal>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraicReal {
        &self.entries[i][j]
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries.iter().map(|r| r.iter().map(AlgebraicReal::to_f64).collect()).collect()
    }

    pub fn as_rational(&self) -> Option<RatMatrix> {
        self.entries.iter().map(|r| r.iter().map(AlgebraicReal::to_rational).collect()).collect()
    }

    fn scaling(&self) -> Option<Scaling> {
        let n = self.size();
        // squares of the entries, which must be rational
        let mut sq = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let a = &self.entries[i][j];
                sq[i][j] = match a.to_rational() {
                    Some(r) => &r * &r,
                    None => {
                        let p = a.minpoly();
                        if a.degree() != 2 || !p.coeff(1).is_zero() {
                            return None;
                        }
                        Rational::new(-p.coeff(0), p.coeff(2))
                    }
                };
            }
        }
        let mut w: Vec<Option<Rational>> = vec![None; n];
        for root in 0..n {
            if w[root].is_some() {
                continue;
            }
            w[root] = Some(Rational::one());
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if w[j].is_none() && !sq[i][j].is_zero() {
                        w[j] = Some(&sq[i][j] * w[i].as_ref().expect("visited"));
                        stack.push(j);
                    }
                }
            }
        }
        let weights: Vec<Rational> = w.into_iter().map(|x| x.expect("all visited")).collect();
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    matrix[i][i] = -weights[i].clone();
                    continue;
                }
                let root = rational_sqrt(&(&sq[i][j] * &weights[i] * &weights[j]))?;
                matrix[i][j] = if self.entries[i][j].sign() == Ordering::Less { -root } else { root };
            }
        }
        Some(Scaling { weights, matrix })
    }
}

impl fmt::Display for CosMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|x| match x.to_rational() {
                    Some(r) => fmt_rational(&r),
                    None => format!("{:.6}", x.to_f64()),
                })
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// JSON form `{"dim": d, "cos": [[...], ...]}`; entries are rational strings, radical
/// shorthand or minimal-polynomial objects.
#[derive(Serialize, Deserialize)]
struct CosMatrixJson {
    dim: usize,
    cos: Vec<Vec<Value>>,
}

fn entry_from_json(v: &Value) -> Result<AlgebraicReal> {
    match v {
        Value::String(s) => parse_real(s),
        Value::Number(n) => parse_real(&n.to_string()),
        Value::Object(_) => serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string())),
        other => Err(Error::Parse(format!("unsupported matrix entry {other}"))),
    }
}

fn entry_to_json(a: &AlgebraicReal) -> Value {
    match a.to_rational() {
        Some(r) => Value::String(fmt_rational(&r)),
        None => serde_json::to_value(a).unwrap_or(Value::Null),
    }
}

impl Serialize for CosMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CosMatrixJson { dim: self.dim, cos: self.entries.iter().map(|r| r.iter().map(entry_to_json).collect()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CosMatrixJson::deserialize(d)?;
        if j.cos.len() != j.dim + 1 {
            return Err(D::Error::custom(format!("dim {} needs {} rows", j.dim, j.dim + 1)));
        }
        let entries = j
            .cos
            .iter()
            .map(|r| r.iter().map(entry_from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CosMatrix::new(entries).map_err(D::Error::custom)
    }
}

/// Why a matrix is not the dihedral matrix of a simplex; each variant checks exactly
/// against the matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `det A != 0`.
    Nonsingular { det: AlgebraicReal },
    /// `A` has rank below `d`.
    RankDefect { rank: usize },
    /// `v^T A v > 0`.
    PositiveEigenvalue { direction: Vec<AlgebraicReal>, value: AlgebraicReal },
    /// The characteristic polynomial of `-A` has a coefficient of the wrong sign, so
    /// `A` has a positive eigenvalue.
    CharPolySign { index: usize, value: AlgebraicReal },
    /// The kernel generator has a component that is not positive.
    NonPositiveKernel { kernel: Vec<AlgebraicReal>, index: usize },
    /// A nonzero sign-definite vector in the row space.
    SignDefiniteRow(RowSpaceCertificate),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Nonsingular { det } => write!(f, "nonsingular, det = {det}"),
            Witness::RankDefect { rank } => write!(f, "rank {rank} is below the dimension"),
            Witness::PositiveEigenvalue { value, .. } => write!(f, "positive direction with v^T A v = {value}"),
            Witness::CharPolySign { index, value } => {
                write!(f, "coefficient E_{index} = {value} of -A violates the semidefinite sign pattern")
            }
            Witness::NonPositiveKernel { index, kernel } => {
                write!(f, "kernel component {index} is {} (not positive)", kernel[*index])
            }
            Witness::SignDefiniteRow(c) => write!(f, "sign-definite row combination {c}"),
        }
    }
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let vec_json = |v: &[AlgebraicReal]| Value::Array(v.iter().map(entry_to_json).collect());
        match self {
            Witness::Nonsingular { det } => json!({"kind": "nonsingular", "det": entry_to_json(det)}),
            Witness::RankDefect { rank } => json!({"kind": "rank_defect", "rank": rank}),
            Witness::PositiveEigenvalue { direction, value } => {
                json!({"kind": "positive_eigenvalue", "direction": vec_json(direction), "value": entry_to_json(value)})
            }
            Witness::CharPolySign { index, value } => {
                json!({"kind": "char_poly_sign", "index": index, "value": entry_to_json(value)})
            }
            Witness::NonPositiveKernel { kernel, index } => {
                json!({"kind": "non_positive_kernel", "kernel": vec_json(kernel), "index": index})
            }
            Witness::SignDefiniteRow(c) => json!({"kind": "sign_definite_row", "certificate": c.to_json()}),
        }
    }
}

/// Outcome of [`realizability_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealizabilityVerdict {
    pub valid: bool,
    pub kernel: Option<Vec<AlgebraicReal>>,
    pub witness: Option<Witness>,
}

impl RealizabilityVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid,
            "kernel": self.kernel.as_ref().map(|k| Value::Array(k.iter().map(entry_to_json).collect())),
            "kernel_approx": self.kernel.as_ref().map(|k| k.iter().map(AlgebraicReal::to_f64).collect::<Vec<_>>()),
            "witness": self.witness.as_ref().map(Witness::to_json),
            "reason": self.witness.as_ref().map(|w| w.to_string()),
        })
    }
}

/// `c` with `c^T A` nonzero and entrywise of one sign.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpaceCertificate {
    pub coefficients: Vec<AlgebraicReal>,
    pub combination: Vec<AlgebraicReal>,
    /// `Greater` when the combination is `>= 0`, `Less` when `<= 0`.
    pub sign: Ordering,
}

impl fmt::Display for RowSpaceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coefficients.iter().map(|x| format!("{:.6}", x.to_f64())).collect();
        let r: Vec<String> = self.combination.iter().map(|x| format!("{:.6}", x.to_f64())).collect();
        let rel = if self.sign == Ordering::Greater { ">= 0" } else { "<= 0" };
        write!(f, "c = ({}) gives ({}) {rel}", c.join(", "), r.join(", "))
    }
}

impl RowSpaceCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "coefficients": self.coefficients.iter().map(entry_to_json).collect::<Vec<_>>(),
            "combination": self.combination.iter().map(entry_to_json).collect::<Vec<_>>(),
            "sign": if self.sign == Ordering::Greater { "nonnegative" } else { "nonpositive" },
        })
    }

    /// Recomputes `c^T A` and checks it is nonzero and sign-definite.
    pub fn verify(&self, a: &CosMatrix) -> Result<bool> {
        let combo = row_combination(a.entries(), &self.coefficients)?;
        Ok(combo == self.combination && sign_definite(&combo) == Some(self.sign))
    }
}

fn row_combination<F: Field>(m: &[Vec<F>], c: &[F]) -> Result<Vec<F>> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = F::from_int(0);
        for i in 0..n {
            if !c[i].vanishes() && !m[i][j].vanishes() {
                acc = acc.try_add(&c[i].try_mul(&m[i][j])?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// `Some(Greater)` if all entries are `>= 0`, `Some(Less)` if all `<= 0`, with at least one nonzero.
fn sign_definite<F: Field>(v: &[F]) -> Option<Ordering> {
    let signs: Vec<Ordering> = v.iter().map(Field::sign).collect();
    if signs.iter().all(|s| *s == Ordering::Equal) {
        return None;
    }
    if signs.iter().all(|s| *s != Ordering::Less) {
        Some(Ordering::Greater)
    } else if signs.iter().all(|s| *s != Ordering::Greater) {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Vectors in `{-1, 0, 1}^n` up to sign, by support size then lexicographically.
pub(crate) fn unit_combinations(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            v.push(match c % 3 {
                0 => 0,
                1 => 1,
                _ => -1,
            });
            c /= 3;
        }
        v.reverse();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out.sort_by_key(|v| {
        let support = v.iter().filter(|&&x| x != 0).count();
        let key: Vec<i64> = v.iter().map(|&x| match x {
            1 => 0,
            -1 => 1,
            _ => 2,
        }).collect();
        (support, key)
    });
    out
}

struct Analysis<F> {
    valid: bool,
    kernel: Option<Vec<F>>,
    failure: Option<Failure<F>>,
}

enum Failure<F> {
    Nonsingular(F),
    RankDefect(usize),
    Sign(usize, F),
    NonPositive(Vec<F>, usize),
}

fn submatrix<F: Clone>(m: &[Vec<F>], skip_row: usize, skip_col: usize) -> Vec<Vec<F>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Exact semidefiniteness, rank and kernel analysis of `-m` through its principal minor sums.
fn analyze<F: Field>(m: &[Vec<F>]) -> Result<Analysis<F>> {
    let n = m.len();
    let neg: Vec<Vec<F>> = m.iter().map(|r| r.iter().map(Field::negate).collect()).collect();
    let e = principal_minor_sums(&neg)?;
    if !e[n].vanishes() {
        let det = if n.is_multiple_of(2) { e[n].clone() } else { e[n].negate() };
        return Ok(Analysis { valid: false, kernel: None, failure: Some(Failure::Nonsingular(det)) });
    }
    if let Some(k) = (1..n).find(|&k| e[k].sign() == Ordering::Less) {
        return Ok(Analysis { valid: false, kernel: None, failure: Some(Failure::Sign(k, e[k].clone())) });
    }
    if e[n - 1].vanishes() {
        let rank = (0..n).rev().find(|&k| !e[k].vanishes()).unwrap_or(0);
        if let Some(k) = (1..n).find(|&k| e[k].vanishes() && k <= rank) {
            return Ok(Analysis { valid: false, kernel: None, failure: Some(Failure::Sign(k, e[k].clone())) });
        }
        return Ok(Analysis { valid: false, kernel: None, failure: Some(Failure::RankDefect(rank)) });
    }
    // PSD of rank n - 1: the adjugate is a positive multiple of z z^T
    let mut j = 0;
    let mut diag = F::from_int(0);
    for c in 0..n {
        let d = determinant(&submatrix(&neg, c, c))?;
        if d.sign() == Ordering::Greater {
            j = c;
            diag = d;
            break;
        }
    }
    if diag.vanishes() {
        return Ok(Analysis { valid: false, kernel: None, failure: Some(Failure::RankDefect(n - 2)) });
    }
    let mut z = Vec::with_capacity(n);
    for i in 0..n {
        if i == j {
            z.push(diag.clone());
            continue;
        }
        let minor = determinant(&submatrix(&neg, j, i))?;
        z.push(if (i + j) % 2 == 0 { minor } else { minor.negate() });
    }
    if let Some(i) = z.iter().position(|x| x.sign() != Ordering::Greater) {
        return Ok(Analysis { valid: false, kernel: Some(z.clone()), failure: Some(Failure::NonPositive(z, i)) });
    }
    // A z = 0 exactly
    for row in m {
        let mut acc = F::from_int(0);
        for (a, b) in row.iter().zip(&z) {
            acc = acc.try_add(&a.try_mul(b)?)?;
        }
        if !acc.vanishes() {
            return Err(Error::Numerical("adjugate column is not in the kernel".into()));
        }
    }
    Ok(Analysis { valid: true, kernel: Some(z), failure: None })
}

fn lift_rational(v: &[Rational]) -> Vec<AlgebraicReal> {
    v.iter().map(|x| AlgebraicReal::from_rational(x.clone())).collect()
}

fn scaled_vector(weights: &[Rational], v: &[Rational]) -> Result<Vec<AlgebraicReal>> {
    weights.iter().zip(v).map(|(w, x)| Ok(AlgebraicReal::sqrt_rational(w)?.mul_rational(x))).collect()
}

fn quadratic_form<F: Field>(m: &[Vec<F>], v: &[F]) -> Result<F> {
    let mv = row_combination(m, v)?;
    let mut acc = F::from_int(0);
    for (a, b) in mv.iter().zip(v) {
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}

/// Rational direction `v` with `v^T m v > 0`, from the top eigenvector rounded to
/// dyadic rationals.
fn positive_direction<F: Field>(m: &[Vec<F>]) -> Result<Option<(Vec<F>, F)>> {
    let n = m.len();
    let fm = DMatrix::from_fn(n, n, |i, j| m[i][j].approx_f64());
    let eig = SymmetricEigen::new(fm);
    let (k, top) = eig.eigenvalues.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &l)| if l > acc.1 { (i, l) } else { acc });
    if top <= 0.0 {
        return Ok(None);
    }
    let vec = eig.eigenvectors.column(k);
    for bits in [8, 16, 32, 48] {
        let scale = (1u64 << bits) as f64;
        let v: Vec<F> = vec
            .iter()
            .map(|x| {
                let r = rational_from_f64((x * scale).round() / scale).unwrap_or_else(Rational::zero);
                F::from_rational(&r)
            })
            .collect();
        let q = quadratic_form(m, &v)?;
        if q.sign() == Ordering::Greater {
            return Ok(Some((v, q)));
        }
    }
    Ok(None)
}

/// Exact realizability test: `-A` positive semidefinite of rank `d` with a strictly
/// positive kernel vector.
pub fn realizability_check(a: &CosMatrix) -> Result<RealizabilityVerdict> {
    if let Some(sc) = a.scaling() {
        let an = analyze(&sc.matrix)?;
        let kernel = an.kernel.as_ref().map(|z| scaled_vector(&sc.weights, z)).transpose()?;
        let witness = match an.failure {
            None => None,
            Some(Failure::Nonsingular(_)) | Some(Failure::RankDefect(_)) | Some(Failure::NonPositive(..)) => {
                Some(lift_failure(a, an.failure.expect("some"), &sc)?)
            }
            Some(Failure::Sign(k, v)) => match positive_direction(&sc.matrix)? {
                Some((dir, q)) => Some(Witness::PositiveEigenvalue {
                    direction: scaled_inverse(&sc.weights, &dir)?,
                    value: AlgebraicReal::from_rational(q),
                }),
                None => Some(Witness::CharPolySign { index: k, value: AlgebraicReal::from_rational(v) }),
            },
        };
        return Ok(RealizabilityVerdict { valid: an.valid, kernel, witness });
    }
    let an = analyze(a.entries())?;
    let witness = match an.failure {
        None => None,
        Some(Failure::Nonsingular(det)) => Some(Witness::Nonsingular { det }),
        Some(Failure::RankDefect(rank)) => Some(Witness::RankDefect { rank }),
        Some(Failure::NonPositive(z, i)) => Some(Witness::NonPositiveKernel { kernel: z, index: i }),
        Some(Failure::Sign(k, v)) => match positive_direction(a.entries())? {
            Some((direction, value)) => Some(Witness::PositiveEigenvalue { direction, value }),
            None => Some(Witness::CharPolySign { index: k, value: v }),
        },
    };
    Ok(RealizabilityVerdict { valid: an.valid, kernel: an.kernel, witness })
}

/// `D^-1 v` for `D = diag(sqrt(w))`: a direction for `A` from one for `D A D`.
fn scaled_inverse(weights: &[Rational], v: &[Rational]) -> Result<Vec<AlgebraicReal>> {
    let inv: Vec<Rational> = weights.iter().map(|w| w.recip()).collect();
    scaled_vector(&inv, v)
}

fn lift_failure(a: &CosMatrix, f: Failure<Rational>, sc: &Scaling) -> Result<Witness> {
    Ok(match f {
        Failure::Nonsingular(_) => {
            // det A = det R / prod w
            let prod: Rational = sc.weights.iter().product();
            let det_r = crate::algebra::rational_determinant(&sc.matrix)?;
            let _ = a;
            Witness::Nonsingular { det: AlgebraicReal::from_rational(det_r / prod) }
        }
        Failure::RankDefect(rank) => Witness::RankDefect { rank },
        Failure::NonPositive(z, i) => Witness::NonPositiveKernel { kernel: scaled_vector(&sc.weights, &z)?, index: i },
        Failure::Sign(k, v) => Witness::CharPolySign { index: k, value: AlgebraicReal::from_rational(v) },
    })
}

/// Coefficients of `det(x I - A)`, lowest degree first.
pub fn char_poly(a: &CosMatrix) -> Result<Vec<AlgebraicReal>> {
    let n = a.size();
    let e = principal_minor_sums(a.entries())?;
    let mut out = vec![AlgebraicReal::zero(); n + 1];
    for (k, ek) in e.iter().enumerate() {
        out[n - k] = if k % 2 == 0 { ek.clone() } else { ek.neg() };
    }
    Ok(out)
}

/// A nonzero sign-definite vector in the row space of `A`, proving that `A` is not the
/// matrix of a simplex. Small `{-1, 0, 1}` combinations are tried first; rational
/// matrices then go through an exact linear feasibility problem.
pub fn nonneg_rowspace_certificate(a: &CosMatrix) -> Result<Option<RowSpaceCertificate>> {
    let n = a.size();
    for c in unit_combinations(n) {
        let coeffs: Vec<AlgebraicReal> = c.iter().map(|&x| AlgebraicReal::from_integer(x)).collect();
        let combo = row_combination(a.entries(), &coeffs)?;
        if let Some(sign) = sign_definite(&combo) {
            return Ok(Some(RowSpaceCertificate { coefficients: coeffs, combination: combo, sign }));
        }
    }
    let Some(m) = a.as_rational() else { return Ok(None) };
    // c = p - q with p, q >= 0, s = A^T c >= 0, sum(s) = 1
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![Rational::zero(); 3 * n];
        for i in 0..n {
            row[i] = m[i][j].clone();
            row[n + i] = -&m[i][j];
        }
        row[2 * n + j] = -Rational::one();
        rows.push(row);
    }
    let mut norm = vec![Rational::zero(); 3 * n];
    for v in norm.iter_mut().skip(2 * n) {
        *v = Rational::one();
    }
    rows.push(norm);
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(Rational::one());
    let Some(x) = feasible_point(&rows, &rhs) else { return Ok(None) };
    let c: Vec<Rational> = (0..n).map(|i| &x[i] - &x[n + i]).collect();
    let coeffs = lift_rational(&c);
    let combo = row_combination(a.entries(), &coeffs)?;
    let sign = sign_definite(&combo).ok_or_else(|| Error::Numerical("linear program returned a non-certificate".into()))?;
    Ok(Some(RowSpaceCertificate { coefficients: coeffs, combination: combo, sign }))
}

/// Simplex with the given dihedral cosines, in float coordinates, scaled so that its
/// longest edge has length 1. The cosines of the result are re-measured and must
/// match to within `1e-10`.
pub fn reconstruct_simplex(a: &CosMatrix) -> Result<Simplex> {
    let verdict = realizability_check(a)?;
    if !verdict.valid {
        let reason = verdict.witness.map_or_else(|| "unknown".to_string(), |w| w.to_string());
        return Err(Error::NotRealizable(reason));
    }
    // rational approximations keep nearly flat simplices accurate through the inversion
    let width = Rational::new(BigInt::one(), BigInt::one() << 96);
    let approx = |x: &AlgebraicReal| x.to_rational().unwrap_or_else(|| x.enclosure(&width).midpoint());
    let z: Vec<Rational> = verdict.kernel.expect("valid verdict has a kernel").iter().map(approx).collect();
    let d = a.dim();
    let n = d + 1;
    let af = a.to_f64();
    // edges e_j = v_j - v_d satisfy <n_i, e_j> = -h_i delta_ij, so E^T E = H G^-1 H
    // with G the Gram matrix of the first d unit normals and h_i proportional to 1 / z_i
    let g: RatMatrix = (0..d).map(|i| (0..d).map(|j| -approx(a.get(i, j))).collect()).collect();
    let g_inv = inverse(&g).map_err(|_| Error::Numerical("normal system is singular".into()))?;
    let edges = DMatrix::from_fn(d, d, |i, j| rational_to_f64(&(&g_inv[i][j] / (&z[i] * &z[j]))));
    let chol = edges.cholesky().ok_or_else(|| Error::Numerical("edge Gram matrix is not positive definite".into()))?;
    let r = chol.l().transpose();
    let mut vertices: Vec<Vec<f64>> = (0..d).map(|j| (0..d).map(|k| r[(k, j)]).collect()).collect();
    vertices.push(vec![0.0; d]);
    let mut longest = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let l: f64 = vertices[i].iter().zip(&vertices[j]).map(|(x, y)| (x - y) * (x - y)).sum();
            longest = longest.max(l);
        }
    }
    let scale = 1.0 / longest.sqrt();
    for p in vertices.iter_mut() {
        for x in p.iter_mut() {
            *x *= scale;
        }
    }
    let s = Simplex::from_f64(vertices, 1e-12)?;
    let measured = s.dihedral_cosines_f64();
    let residual = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (measured[i][j] - af[i][j]).abs()).fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::Numerical(format!("reconstructed cosines deviate by {residual:e}")));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::simplex::similar;

    fn upper(dim: usize, vals: &[&str]) -> CosMatrix {
        CosMatrix::from_upper(dim, &vals.iter().map(|s| parse_real(s).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    fn regular() -> CosMatrix {
        upper(3, &["1/3"; 6])
    }

    #[test]
    fn regular_tetrahedron_is_valid() {
        let v = realizability_check(&regular()).unwrap();
        assert!(v.valid);
        let k = v.kernel.unwrap();
        assert!(k.iter().all(|x| x == &k[0]));
        assert!(nonneg_rowspace_certificate(&regular()).unwrap().is_none());
    }

    #[test]
    fn tripod_off_the_curve_is_nonsingular() {
        // t = 1/2, s = 0: 1 - 2s - 3t^2 = 1/4 != 0
        let a = upper(3, &["1/2", "1/2", "1/2", "0", "0", "0"]);
        let v = realizability_check(&a).unwrap();
        assert!(!v.valid);
        assert!(matches!(v.witness, Some(Witness::Nonsingular { .. })));
    }

    #[test]
    fn path_matrix_at_right_angle() {
        // t = 0, s = phi - 1
        let a = upper(3, &["0", "phi - 1", "phi - 1", "0", "phi - 1", "0"]);
        let v = realizability_check(&a).unwrap();
        assert!(v.valid, "{:?}", v.witness);
        let s = reconstruct_simplex(&a).unwrap();
        let c = s.dihedral_cosines_f64();
        assert!((c[0][2] - 0.618_033_988_749_895).abs() < 1e-10 && c[0][1].abs() < 1e-10);
    }

    #[test]
    fn char_poly_of_minus_identity() {
        let a = upper(3, &["0"; 6]);
        let p = char_poly(&a).unwrap();
        let expect: Vec<AlgebraicReal> = [1, 4, 6, 4, 1].iter().map(|&k| AlgebraicReal::from_integer(k)).collect();
        assert_eq!(p, expect);
    }

    #[test]
    fn row_space_certificates() {
        // multiples case, t = 3/4, u = 9/10
        let m = upper(3, &["-3/4", "3/4", "3/4", "9/10", "3/4", "-3/4"]);
        let c = nonneg_rowspace_certificate(&m).unwrap().unwrap();
        let ints: Vec<Rational> = c.coefficients.iter().map(|x| x.to_rational().unwrap()).collect();
        assert_eq!(ints, vec![int(1), int(0), int(0), int(1)]);
        assert_eq!(c.sign, Ordering::Less);
        assert!(c.verify(&m).unwrap());
        assert!(!realizability_check(&m).unwrap().valid);
        // supplementary path, t = 1/3
        let p = upper(3, &["1/3", "-1/3", "-1/3", "1/3", "-1/3", "1/3"]);
        let c = nonneg_rowspace_certificate(&p).unwrap().unwrap();
        assert!(c.verify(&p).unwrap());
        // rows two and three also certify
        let coefficients: Vec<AlgebraicReal> = [0, 1, 1, 0].iter().map(|&k| AlgebraicReal::from_integer(k)).collect();
        let combination = row_combination(p.entries(), &coefficients).unwrap();
        assert_eq!(combination[1], AlgebraicReal::from_rational(rat(-2, 3)));
        let paper = RowSpaceCertificate { coefficients, combination, sign: Ordering::Less };
        assert!(paper.verify(&p).unwrap());
    }

    #[test]
    fn round_trips_through_simplices() {
        let ortho = Simplex::from_integers(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]).unwrap();
        let a = CosMatrix::from_dihedral(&ortho.dihedral_data().unwrap()).unwrap();
        let v = realizability_check(&a).unwrap();
        assert!(v.valid);
        let back = reconstruct_simplex(&a).unwrap();
        assert!(similar(&ortho, &back).unwrap().is_some());
        let reg = reconstruct_simplex(&regular()).unwrap();
        let l = reg.squared_lengths_f64();
        assert!((l[0][1] - 1.0).abs() < 1e-10 && (l[2][3] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn json_entries() {
        let text = r#"{"dim": 2, "cos": [["-1", "sqrt(2)/2", "0"], ["sqrt(2)/2", "-1", "sqrt(2)/2"], ["0", "sqrt(2)/2", "-1"]]}"#;
        let m: CosMatrix = serde_json::from_str(text).unwrap();
        assert!(realizability_check(&m).unwrap().valid);
        let back: CosMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CosMatrix>(r#"{"dim": 2, "cos": [["-1","2","0"],["2","-1","0"],["0","0","-1"]]}"#).is_err());
    }

    #[test]
    fn indefinite_matrix_gets_direction() {
        // three facets pairwise at cosine -0.9 are not a triangle
        let a = upper(2, &["-9/10", "-9/10", "-9/10"]);
        let v = realizability_check(&a).unwrap();
        assert!(!v.valid);
        match v.witness {
            Some(Witness::PositiveEigenvalue { value, .. }) => assert_eq!(value.sign(), Ordering::Greater),
            Some(Witness::Nonsingular { .. }) => {}
            other => panic!("unexpected witness {other:?}"),
        }
        let _ = Rational::one();
    }
}
