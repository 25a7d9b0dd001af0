//! Exact integer matrices and the Smith normal form.
//!
//! Matrices store arbitrary-precision entries. Elimination first runs on
//! checked `i64` arithmetic and restarts on big integers as soon as an
//! intermediate value overflows, so small inputs stay fast without ever
//! giving up exactness.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest entry size (in bits) tolerated during elimination by default.
pub const DEFAULT_MAX_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("an intermediate entry exceeded {max_bits} bits")]
    OverflowGuard { max_bits: u64 },
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
}

/// A dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have
    /// length `cols`; `cols` is needed to describe matrices with no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        IntMatrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = IntMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    /// Rows `range` of the matrix.
    pub fn row_block(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix { rows: end - start, cols: self.cols, data: self.data[start * self.cols..end * self.cols].to_vec() }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * a[n * n - 1].clone()
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

/// Arithmetic needed by the elimination routine.
trait Scalar: Clone + PartialEq {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn checked_negate(&self) -> Option<Self>;
    /// `self - q * other`.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, other: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn negative(&self) -> bool;
    fn bit_len(&self) -> u64;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn checked_negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn negative(&self) -> bool {
        *self < 0
    }
    fn bit_len(&self) -> u64 {
        u64::from(64 - self.unsigned_abs().leading_zeros())
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn checked_negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn divides(&self, other: &Self) -> bool {
        other.is_multiple_of(self)
    }
    fn negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn bit_len(&self) -> u64 {
        self.bits()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`.
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_nil() {
                let v = self.data[dst * self.cols + j].sub_mul(q, s)?;
                self.data[dst * self.cols + j] = v;
            }
        }
        Some(())
    }

    /// `col[dst] -= q * col[src]`.
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_nil() {
                let v = self.data[i * self.cols + dst].sub_mul(q, s)?;
                self.data[i * self.cols + dst] = v;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.data[r * self.cols + j].checked_negate()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }

    fn max_bits(&self) -> u64 {
        self.data.iter().map(Scalar::bit_len).max().unwrap_or(0)
    }
}

fn identity_dense<T: Scalar>(n: usize) -> Dense<T> {
    let mut data = vec![T::nil(); n * n];
    for i in 0..n {
        data[i * n + i] = T::unit();
    }
    Dense { rows: n, cols: n, data }
}

enum Failure {
    Overflow,
    Guard,
}

/// Diagonalizes `a` in place, recording row operations in `u` and column
/// operations in `v` (when present), so that the final `a` equals `u·a₀·v`.
fn eliminate<T: Scalar>(
    a: &mut Dense<T>,
    mut u: Option<&mut Dense<T>>,
    mut v: Option<&mut Dense<T>>,
    max_bits: u64,
) -> Result<(), Failure> {
    let (r, c) = (a.rows, a.cols);
    let ov = |o: Option<()>| o.ok_or(Failure::Overflow);
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let e = a.at(i, j);
                if !e.is_nil() && best.is_none_or(|(bi, bj)| e.abs_lt(a.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(v) = v.as_deref_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a.at(i, t).is_nil() {
                    let q = a.at(i, t).quot(a.at(t, t));
                    if !q.is_nil() {
                        ov(a.row_sub(i, t, &q))?;
                        if let Some(u) = u.as_deref_mut() {
                            ov(u.row_sub(i, t, &q))?;
                        }
                    }
                    if !a.at(i, t).is_nil() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !a.at(t, j).is_nil() {
                    let q = a.at(t, j).quot(a.at(t, t));
                    if !q.is_nil() {
                        ov(a.col_sub(j, t, &q))?;
                        if let Some(v) = v.as_deref_mut() {
                            ov(v.col_sub(j, t, &q))?;
                        }
                    }
                    if !a.at(t, j).is_nil() {
                        clean = false;
                    }
                }
            }
            if a.max_bits() > max_bits {
                return Err(Failure::Guard);
            }
            if !clean {
                // move the smallest remainder of row t / column t to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let e = a.at(i, t);
                    if !e.is_nil() && e.abs_lt(a.at(best.0, best.1)) {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let e = a.at(t, j);
                    if !e.is_nil() && e.abs_lt(a.at(best.0, best.1)) {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(t, best.0);
                }
                a.swap_cols(t, best.1);
                if let Some(v) = v.as_deref_mut() {
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.at(t, t).divides(a.at(i, j))));
            match bad {
                Some(i) => {
                    let minus_one = T::unit().checked_negate().ok_or(Failure::Overflow)?;
                    ov(a.row_sub(t, i, &minus_one))?;
                    if let Some(u) = u.as_deref_mut() {
                        ov(u.row_sub(t, i, &minus_one))?;
                    }
                }
                None => break,
            }
        }
        if a.at(t, t).negative() {
            ov(a.negate_row(t))?;
            if let Some(u) = u.as_deref_mut() {
                ov(u.negate_row(t))?;
            }
        }
        t += 1;
    }
    Ok(())
}

fn to_dense_i64(m: &IntMatrix) -> Option<Dense<i64>> {
    let data = m.data.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>()?;
    Some(Dense { rows: m.rows, cols: m.cols, data })
}

fn to_dense_big(m: &IntMatrix) -> Dense<BigInt> {
    Dense { rows: m.rows, cols: m.cols, data: m.data.clone() }
}

fn to_int<T: Scalar>(d: &Dense<T>) -> IntMatrix {
    IntMatrix { rows: d.rows, cols: d.cols, data: d.data.iter().map(Scalar::to_big).collect() }
}

/// Smith normal form with transforms: returns `(S, U, V)` with `S = U·M·V`,
/// `U` and `V` unimodular, and `S` diagonal with nonnegative entries forming a
/// divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix, IntMatrix), LinalgError> {
    smith_normal_form_with(m, DEFAULT_MAX_BITS)
}

pub fn smith_normal_form_with(m: &IntMatrix, max_bits: u64) -> Result<(IntMatrix, IntMatrix, IntMatrix), LinalgError> {
    let guard = LinalgError::OverflowGuard { max_bits };
    if let Some(mut a) = to_dense_i64(m) {
        let mut u = identity_dense::<i64>(m.rows);
        let mut v = identity_dense::<i64>(m.cols);
        match eliminate(&mut a, Some(&mut u), Some(&mut v), max_bits) {
            Ok(()) => return Ok((to_int(&a), to_int(&u), to_int(&v))),
            Err(Failure::Guard) => return Err(guard),
            Err(Failure::Overflow) => {}
        }
    }
    let mut a = to_dense_big(m);
    let mut u = identity_dense::<BigInt>(m.rows);
    let mut v = identity_dense::<BigInt>(m.cols);
    match eliminate(&mut a, Some(&mut u), Some(&mut v), max_bits) {
        Ok(()) => Ok((to_int(&a), to_int(&u), to_int(&v))),
        Err(_) => Err(guard),
    }
}

/// The nonzero diagonal entries of the Smith normal form, in order.
pub fn invariant_factors(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let diag = |d: Vec<BigInt>, cols: usize, n: usize| -> Vec<BigInt> {
        (0..n).map(|i| d[i * cols + i].clone()).filter(|x| !Zero::is_zero(x)).collect()
    };
    let n = m.rows.min(m.cols);
    if let Some(mut a) = to_dense_i64(m) {
        match eliminate(&mut a, None, None, DEFAULT_MAX_BITS) {
            Ok(()) => return Ok(diag(a.data.iter().map(|&x| BigInt::from(x)).collect(), m.cols, n)),
            Err(Failure::Guard) => return Err(LinalgError::OverflowGuard { max_bits: DEFAULT_MAX_BITS }),
            Err(Failure::Overflow) => {}
        }
    }
    let mut a = to_dense_big(m);
    eliminate(&mut a, None, None, DEFAULT_MAX_BITS)
        .map_err(|_| LinalgError::OverflowGuard { max_bits: DEFAULT_MAX_BITS })?;
    Ok(diag(a.data, m.cols, n))
}
