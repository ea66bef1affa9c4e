use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exact ordered field used by the matrix routines. Operations are fallible because
/// algebraic arithmetic can exceed its degree bound.
pub trait Field: Clone + Debug + PartialEq {
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn try_div(&self, other: &Self) -> Result<Self>;
    fn negate(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn sign(&self) -> Ordering;
    fn approx_f64(&self) -> f64;
}

impl Field for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(self - other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn try_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn approx_f64(&self) -> f64 {
        super::rational_to_f64(self)
    }
}

fn check_square<F>(m: &[Vec<F>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidMatrix("matrix is not square".into()));
    }
    Ok(n)
}

/// Determinant of the submatrix on `rows` x `rows`, division free, by dynamic
/// programming over column subsets.
pub(crate) fn minor<F: Field>(m: &[Vec<F>], rows: &[usize]) -> Result<F> {
    let k = rows.len();
    if k == 0 {
        return Ok(F::from_int(1));
    }
    let full = 1usize << k;
    let mut dp: Vec<Option<F>> = vec![None; full];
    dp[0] = Some(F::from_int(1));
    for mask in 0..full - 1 {
        let Some(acc) = dp[mask].clone() else { continue };
        if acc.vanishes() {
            continue;
        }
        let row = rows[mask.count_ones() as usize];
        for c in 0..k {
            if mask & (1 << c) != 0 {
                continue;
            }
            let entry = &m[row][rows[c]];
            if entry.vanishes() {
                continue;
            }
            let mut term = acc.try_mul(entry)?;
            if (mask >> c).count_ones() % 2 == 1 {
                term = term.negate();
            }
            let next = mask | (1 << c);
            dp[next] = Some(match &dp[next] {
                Some(v) => v.try_add(&term)?,
                None => term,
            });
        }
    }
    Ok(dp[full - 1].clone().unwrap_or_else(|| F::from_int(0)))
}

/// Division-free determinant of a square matrix.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> Result<F> {
    let n = check_square(m)?;
    let rows: Vec<usize> = (0..n).collect();
    minor(m, &rows)
}

/// Elementary symmetric functions of the eigenvalues, `E_0 = 1, E_1, ..., E_n`,
/// as sums of principal minors.
pub fn principal_minor_sums<F: Field>(m: &[Vec<F>]) -> Result<Vec<F>> {
    let n = check_square(m)?;
    let mut sums = vec![F::from_int(0); n + 1];
    sums[0] = F::from_int(1);
    for mask in 1usize..(1 << n) {
        let rows: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let d = minor(m, &rows)?;
        let k = rows.len();
        sums[k] = sums[k].try_add(&d)?;
    }
    Ok(sums)
}

pub type RatMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> RatMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)).collect()
}

/// Determinant by fraction-producing Gaussian elimination, for rational matrices of any size.
pub fn rational_determinant(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(m)?;
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Ok(det)
}

/// Inverse by Gauss-Jordan elimination.
pub fn inverse(m: &[Vec<Rational>]) -> Result<RatMatrix> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidMatrix("matrix is singular".into()))?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank by Gaussian elimination.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(piv, r);
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[r][col];
            for c in col..cols {
                let v = &f * &a[r][c];
                a[i][c] -= v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `a x = b` for a nonsingular square `a`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    Ok(mat_vec(&inverse(a)?, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let a = m(&[&[2, -1, 0, 3], &[1, 4, 2, -2], &[0, 5, -3, 1], &[7, 1, 1, 1]]);
        let d1 = determinant(&a).unwrap();
        let d2 = rational_determinant(&a).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])).unwrap(), int(-2));
    }

    #[test]
    fn principal_minors_match_characteristic_polynomial() {
        // diag(1, 2, 3): E = 1, 6, 11, 6
        let a = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(principal_minor_sums(&a).unwrap(), vec![int(1), int(6), int(11), int(6)]);
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_err());
        assert_eq!(solve(&a, &[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert_eq!(rat(1, 2) * int(2), int(1));
    }
}
