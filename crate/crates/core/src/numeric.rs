//! Exact integer and rational arithmetic, plus the small amount of dense
//! matrix machinery the Goeritz computations need.
//!
//! Nothing in the computational core uses floating point: signatures depend
//! on the exact sign of rationals such as `-23/6`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Unbounded signed integer.
pub type Int = BigInt;

/// Exact rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rational(n: i64, d: i64) -> Result<Rational> {
    ratio(Int::from(n), Int::from(d))
}

/// Builds `n/d` in canonical form, rejecting a zero denominator.
pub fn ratio(n: Int, d: Int) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn to_rational(n: &Int) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn checked_recip(a: &Rational) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.recip())
}

/// Sign of a rational as -1, 0 or +1.
pub fn rational_sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn int_sign(x: &Int) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Ok(Matrix { rows: n_rows, cols: n_cols, data })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Matrix<T> {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.rows().map(<[T]>::to_vec).collect()
    }
}

impl<T: PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    /// Matrix product; zero entries of `self` are skipped, which matters for
    /// the sparse Goeritz and transition matrices.
    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · middle · self`, the congruence transform.
    pub fn congruence(&self, middle: &Matrix<T>) -> Result<Matrix<T>> {
        self.transpose().mul(&middle.mul(self)?)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_determinant(m: &Matrix<Int>) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.nrows();
    let mut a = m.to_rows();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { sign } else { sign * &a[n - 1][n - 1] })
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn rational_determinant(m: &Matrix<Rational>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.nrows();
    let mut a = m.to_rows();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if r != k {
            a.swap(k, r);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &factor * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d).unwrap()
    }

    #[test]
    fn signs() {
        assert_eq!(rational_sign(&q(-23, 6)), -1);
        assert_eq!(rational_sign(&q(0, 1)), 0);
        // 47/(-15) is stored as -47/15
        let x = q(47, -15);
        assert_eq!(x.numer(), &int(-47));
        assert_eq!(x.denom(), &int(15));
        assert_eq!(rational_sign(&x), -1);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(rational(1, 0), Err(Error::DivisionByZero));
        assert_eq!(checked_div(&q(1, 2), &q(0, 1)), Err(Error::DivisionByZero));
        assert_eq!(checked_recip(&q(0, 5)), Err(Error::DivisionByZero));
    }

    #[test]
    fn determinants() {
        let g = Matrix::from_rows(vec![
            vec![int(-2), int(0), int(0), int(1)],
            vec![int(0), int(-2), int(1), int(1)],
            vec![int(0), int(1), int(-2), int(0)],
            vec![int(1), int(1), int(0), int(-5)],
        ])
        .unwrap();
        assert_eq!(integer_determinant(&g).unwrap(), int(23));
        assert_eq!(rational_determinant(&g.map(to_rational)).unwrap(), q(23, 1));

        let hyperbolic = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(integer_determinant(&hyperbolic).unwrap(), int(-1));
        assert_eq!(integer_determinant(&Matrix::<Int>::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn congruence_by_upper_triangular() {
        let g = Matrix::from_rows(vec![vec![q(-2, 1), q(1, 1)], vec![q(1, 1), q(-2, 1)]]).unwrap();
        let p = Matrix::from_rows(vec![vec![q(1, 1), q(1, 2)], vec![q(0, 1), q(1, 1)]]).unwrap();
        let d = p.congruence(&g).unwrap();
        assert_eq!(d, Matrix::diagonal(&[q(-2, 1), q(-3, 2)]));
    }

    proptest! {
        #[test]
        fn field_identities(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(checked_div(&(&x * &y), &y).unwrap(), x.clone());
            }
            prop_assert_eq!(rational_sign(&(&x * &y)), rational_sign(&x) * rational_sign(&y));
        }

        #[test]
        fn canonical_form(n in -10_000i64..10_000, d in 1i64..10_000, k in prop_oneof![-50i64..-1, 1i64..50]) {
            prop_assert_eq!(q(n, d), q(n * k, d * k));
            let r = q(n * k, d * k);
            prop_assert!(r.denom() > &int(0));
            prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), int(1));
        }
    }
}
