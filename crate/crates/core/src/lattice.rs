//! Exact integer linear algebra: Hermite normal forms, saturated kernels,
//! determinants and primitivity tests.
//!
//! Everything is generic over [`Scalar`], so the public big-integer API
//! ([`IntMatrix`], [`IntVector`]) and the fixed-width hot paths used by the
//! geometry code share one implementation. Fixed-width arithmetic is always
//! checked: an overflow panics instead of wrapping.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Debug
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Eq
        + Ord
        + Hash
        + Zero
        + One
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

pub type IntVector = Vec<BigInt>;
pub type IntMatrix = Matrix<BigInt>;

#[inline]
pub fn add<T: Scalar>(a: &T, b: &T) -> T {
    a.checked_add(b).expect("integer overflow")
}

#[inline]
pub fn sub<T: Scalar>(a: &T, b: &T) -> T {
    a.checked_sub(b).expect("integer overflow")
}

#[inline]
pub fn mul<T: Scalar>(a: &T, b: &T) -> T {
    a.checked_mul(b).expect("integer overflow")
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| add(&acc, &mul(x, y)))
}

pub fn gcd_all<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive<T: Scalar>(v: &[T]) -> Vec<T> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x.div_floor(&g)).collect()
}

pub fn is_primitive<T: Scalar>(v: &[T]) -> bool {
    gcd_all(v).is_one()
}

pub fn to_big(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn from_big(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x).unwrap()).collect()).collect(),
            cols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product: shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = mul(a, &other[(k, j)]);
                    out[(i, j)] = add(&out[(i, j)], &p);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect(), self.cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let rows = (0..self.rows).map(|i| idx.iter().map(|&j| self[(i, j)].clone()).collect()).collect();
        Self::from_rows(rows, idx.len())
    }
}

impl Matrix<BigInt> {
    pub fn to_i64(&self) -> Option<Matrix<i64>> {
        let data: Option<Vec<i64>> = self.data.iter().map(|x| x.to_i64()).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, data: data? })
    }
}

impl Matrix<i64> {
    pub fn to_big(&self) -> IntMatrix {
        self.map(|&x| BigInt::from(x))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Replaces rows (a, b) by the unimodular combination
/// `[p q; r s] * [row_a; row_b]`.
fn combine_rows<T: Scalar>(m: &mut Matrix<T>, a: usize, b: usize, p: &T, q: &T, r: &T, s: &T) {
    for j in 0..m.cols {
        let x = m[(a, j)].clone();
        let y = m[(b, j)].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(a, j)] = add(&mul(p, &x), &mul(q, &y));
        m[(b, j)] = add(&mul(r, &x), &mul(s, &y));
    }
}

/// `row_a += c * row_b`
fn axpy_row<T: Scalar>(m: &mut Matrix<T>, a: usize, b: usize, c: &T) {
    if c.is_zero() {
        return;
    }
    for j in 0..m.cols {
        if m[(b, j)].is_zero() {
            continue;
        }
        let v = add(&m[(a, j)], &mul(c, &m[(b, j)]));
        m[(a, j)] = v;
    }
}

fn negate_row<T: Scalar>(m: &mut Matrix<T>, a: usize) {
    for j in 0..m.cols {
        let v = -m[(a, j)].clone();
        m[(a, j)] = v;
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * m = h`,
/// `|det u| = 1`, `h` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let mut h = m.clone();
    let mut u = Matrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // gcd-eliminate column c below row r
        for i in (r + 1)..m.rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (a.div_floor(&g), b.div_floor(&g));
            // [x y; -b/g a/g] has determinant 1
            let nb = -bg;
            combine_rows(&mut h, r, i, &x, &y, &nb, &ag);
            combine_rows(&mut u, r, i, &x, &y, &nb, &ag);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&p);
            if !q.is_zero() {
                let nq = -q;
                axpy_row(&mut h, i, r, &nq);
                axpy_row(&mut u, i, r, &nq);
            }
        }
        r += 1;
    }
    (h, u)
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let (h, _) = hnf(m);
    (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Saturated integer kernel `{x : m x = 0}`, returned as the rows of a matrix
/// in Hermite normal form.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let (h, u) = hnf(&m.transpose());
    let k: Vec<Vec<T>> = (0..h.rows)
        .filter(|&i| h.row(i).iter().all(|x| x.is_zero()))
        .map(|i| u.row(i).to_vec())
        .collect();
    if k.is_empty() {
        return Matrix::zeros(0, m.cols);
    }
    let k = Matrix::from_rows(k, m.cols);
    hnf(&k).0
}

/// Fraction-free determinant (Bareiss).
pub fn det<T: Scalar>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "det of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match ((k + 1)..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = sub(&mul(&a[(i, j)], &a[(k, k)]), &mul(&a[(i, k)], &a[(k, j)]));
                a[(i, j)] = v.div_floor(&prev);
            }
        }
        prev = a[(k, k)].clone();
    }
    mul(&sign, &a[(n - 1, n - 1)])
}

/// Gcd of the maximal minors of a `k x n` matrix of rank `k` (zero when the
/// rows are dependent).
pub fn maximal_minor_gcd<T: Scalar>(m: &Matrix<T>) -> T {
    if m.rows == 0 {
        return T::one();
    }
    if m.rows > m.cols {
        return T::zero();
    }
    let (h, _) = hnf(&m.transpose());
    let mut g = T::one();
    for i in 0..m.rows {
        g = mul(&g, &h[(i, i)]);
    }
    g.abs()
}

/// True iff the generators are linearly independent and extend to a lattice
/// basis.
pub fn is_unimodular_generators<T: Scalar>(gens: &[Vec<T>]) -> Result<bool> {
    if let Some(index) = gens.iter().position(|g| !is_primitive(g)) {
        return Err(Error::NonPrimitive { index });
    }
    if gens.is_empty() {
        return Ok(true);
    }
    let n = gens[0].len();
    let m = Matrix::from_rows(gens.to_vec(), n);
    Ok(maximal_minor_gcd(&m).is_one())
}

/// Basis (rows) of the saturation of the row span of `m`.
pub fn saturated_row_span<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    kernel_basis(&kernel_basis(m))
}

/// For a saturated `k x n` basis `b`, returns `c` (`n x k`) with `b c = I_k`.
/// Lattice coordinates of `x` in the span of `b` are then `x c`.
pub fn right_inverse<T: Scalar>(b: &Matrix<T>) -> Option<Matrix<T>> {
    let (h, u) = hnf(&b.transpose());
    for i in 0..b.rows {
        for j in 0..b.rows {
            let want = if i == j { T::one() } else { T::zero() };
            if h[(i, j)] != want {
                return None;
            }
        }
    }
    Some(u.select_rows(&(0..b.rows).collect::<Vec<_>>()).transpose())
}

/// Extends a saturated `k x n` basis to a unimodular `n x n` matrix whose
/// first `k` rows are `b`.
pub fn complete_basis<T: Scalar>(b: &Matrix<T>) -> Option<Matrix<T>> {
    let n = b.cols;
    let (h, u) = hnf(&b.transpose());
    if (0..b.rows).any(|i| !h[(i, i)].is_one()) {
        return None;
    }
    // u b^T = [I; 0], so the rows of u^{-1}... use: b u^T = [I | 0]
    // hence u^{-T} = [b; rest] for rest = last rows of u^{-T}
    let inv = inverse_unimodular(&u.transpose())?;
    let mut out = b.clone();
    let rest = inv.select_rows(&(b.rows..n).collect::<Vec<_>>());
    out = out.vstack(&rest);
    Some(out)
}

/// Inverse of a unimodular matrix (`None` if not unimodular).
pub fn inverse_unimodular<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    assert_eq!(m.rows, m.cols);
    let (h, u) = hnf(m);
    if h == Matrix::identity(m.rows) {
        Some(u)
    } else {
        None
    }
}

/// Solves `x m = v` over the rationals and returns `x` if it is integral.
pub fn solve_left_integral<T: Scalar>(m: &Matrix<T>, v: &[T]) -> Option<Vec<T>> {
    // x m = v  <=>  m^T x^T = v^T; use HNF of m (rows) with transform
    let (h, u) = hnf(m);
    // x = y u with y h = v; h is echelon so solve y row by row
    let mut y = vec![T::zero(); m.rows];
    let mut rem = v.to_vec();
    let mut r = 0;
    for c in 0..m.cols {
        if r >= h.rows {
            break;
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        let (q, rr) = rem[c].div_rem(&h[(r, c)]);
        if !rr.is_zero() {
            return None;
        }
        for j in 0..m.cols {
            rem[j] = sub(&rem[j], &mul(&q, &h[(r, j)]));
        }
        y[r] = q;
        r += 1;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x = (0..m.rows)
        .map(|j| (0..m.rows).fold(T::zero(), |acc, i| add(&acc, &mul(&y[i], &u[(i, j)]))))
        .collect();
    Some(x)
}

impl serde::Serialize for Matrix<i64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.to_rows(), s)
    }
}

impl<'de> serde::Deserialize<'de> for Matrix<i64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<i64>> = serde::Deserialize::deserialize(d)?;
        let cols = rows.first().map_or(0, |r| r.len());
        Ok(Matrix::from_rows(rows, cols))
    }
}
