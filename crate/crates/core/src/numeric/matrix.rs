//! Dense integer and rational matrices.
//!
//! Rank, determinant and inverse go through fraction-free (Bareiss)
//! elimination; every intermediate entry is a minor of the input, so the
//! division by the previous pivot is exact and no rationals appear until the
//! final back-substitution of [`IntMatrix::inverse`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::vector;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small literal rows.
    ///
    /// Panics if the rows have different lengths; use [`IntMatrix::try_from_rows`]
    /// for untrusted input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let big = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::try_from_rows(big).expect("ragged literal matrix")
    }

    pub fn try_from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::RaggedRows);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::try_from_rows(columns.to_vec())?.transpose())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
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

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` with `v` a column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| vector::dot(self.row(i), v)).collect())
    }

    /// `v * self` with `v` a row vector.
    pub fn vec_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        Ok((0..self.cols)
            .map(|j| {
                (0..self.rows).fold(BigInt::zero(), |acc, i| acc + &v[i] * self.get(i, j))
            })
            .collect())
    }

    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        let rows = indices.iter().map(|&i| self.row(i).to_vec()).collect::<Vec<_>>();
        if rows.is_empty() {
            return Self::zeros(0, self.cols);
        }
        Self::try_from_rows(rows).expect("rows of a matrix share a length")
    }

    fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.to_rows()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        bareiss_forward(&mut self.row_vecs(), self.cols).rank
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vecs();
        let elim = bareiss_forward(&mut a, self.cols);
        if elim.rank < self.rows {
            return Ok(BigInt::zero());
        }
        let det = a[self.rows - 1][self.cols - 1].clone();
        Ok(if elim.swaps % 2 == 1 { -det } else { det })
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let elim = bareiss_forward(&mut aug, n);
        if elim.rank < n {
            return Err(Error::SingularMatrix);
        }
        // aug is upper triangular in its left block; solve U X = R.
        let mut x = vec![vec![BigRational::zero(); n]; n];
        for i in (0..n).rev() {
            let pivot = BigRational::from_integer(aug[i][i].clone());
            for col in 0..n {
                let mut acc = BigRational::from_integer(aug[i][n + col].clone());
                for j in i + 1..n {
                    if !aug[i][j].is_zero() {
                        acc -= BigRational::from_integer(aug[i][j].clone()) * &x[j][col];
                    }
                }
                x[i][col] = acc / &pivot;
            }
        }
        Ok(RationalMatrix {
            rows: n,
            cols: n,
            data: x.into_iter().flatten().collect(),
        })
    }

    /// Inverse, required to be integral (unimodular input).
    pub fn integer_inverse(&self) -> Result<IntMatrix> {
        self.inverse()?.to_int_matrix().ok_or(Error::NotIntegral)
    }

    /// Basis of the lattice `{v in Z^cols : self * v = 0}`, in Hermite normal form.
    ///
    /// The basis generates the full integer kernel (not merely a finite-index
    /// sublattice), so it is canonical for the kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.cols;
        let mut a = self.row_vecs();
        // Columns of u record the unimodular column operations applied to a.
        let mut u: Vec<Vec<BigInt>> = IntMatrix::identity(n).row_vecs();
        let mut pivot_col = 0;
        for r in 0..self.rows {
            if pivot_col == n {
                break;
            }
            loop {
                let best = (pivot_col..n)
                    .filter(|&c| !a[r][c].is_zero())
                    .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
                let Some(best) = best else { break };
                swap_columns(&mut a, pivot_col, best);
                swap_columns(&mut u, pivot_col, best);
                let mut done = true;
                for c in pivot_col + 1..n {
                    if a[r][c].is_zero() {
                        continue;
                    }
                    let q = a[r][c].div_floor(&a[r][pivot_col]);
                    sub_column_multiple(&mut a, c, pivot_col, &q);
                    sub_column_multiple(&mut u, c, pivot_col, &q);
                    if !a[r][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    pivot_col += 1;
                    break;
                }
            }
        }
        let basis: Vec<Vec<BigInt>> = (pivot_col..n)
            .map(|c| (0..n).map(|i| u[i][c].clone()).collect())
            .collect();
        hermite_normal_form(basis)
    }

    /// Canonical basis of the row space: reduced row echelon form with each
    /// row scaled to a primitive integer vector with positive leading entry.
    pub fn row_space_canonical(&self) -> Vec<Vec<BigInt>> {
        rref(&self.row_vecs())
            .iter()
            .map(|r| vector::primitive_rational(r))
            .collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

struct Elimination {
    rank: usize,
    swaps: usize,
}

/// Fraction-free forward elimination on the first `pivot_cols` columns,
/// applied to all columns. Leaves the matrix in row echelon form.
fn bareiss_forward(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Elimination {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..pivot_cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let pivot = a[rank][col].clone();
        for i in rank + 1..rows {
            let factor = a[i][col].clone();
            for j in col + 1..width {
                let v = (&pivot * &a[i][j] - &factor * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        // rows above the pivot row in previous steps keep their scale; the
        // pivot row itself is already a minor of the right order.
        prev = pivot;
        rank += 1;
    }
    Elimination { rank, swaps }
}

fn swap_columns(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// column[target] -= q * column[source]
fn sub_column_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let delta = q * &row[source];
        row[target] -= delta;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped; pivots are positive and entries above each pivot
/// lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| !vector::is_zero(r)).collect();
    let Some(width) = a.first().map(Vec::len) else {
        return a;
    };
    let mut pivot_row = 0;
    for col in 0..width {
        if pivot_row == a.len() {
            break;
        }
        loop {
            let best = (pivot_row..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pivot_row][col]);
                let pr = a[pivot_row].clone();
                vector::sub_scaled(&mut a[i], &pr, &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if a[pivot_row][col].is_negative() {
                    a[pivot_row] = vector::neg(&a[pivot_row]);
                }
                let pr = a[pivot_row].clone();
                for i in 0..pivot_row {
                    let q = a[i][col].div_floor(&pr[col]);
                    vector::sub_scaled(&mut a[i], &pr, &q);
                }
                pivot_row += 1;
                break;
            }
        }
    }
    a.truncate(pivot_row);
    a.retain(|r| !vector::is_zero(r));
    a
}

/// Reduced row echelon form over the rationals; zero rows removed.
pub fn rref(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let width = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(p) = (pivot_row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, pivot_row);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pr = a[pivot_row].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x -= &f * y;
            }
        }
        pivot_row += 1;
        if pivot_row == a.len() {
            break;
        }
    }
    a.truncate(pivot_row);
    a
}

/// Reduces `v` modulo the row space whose RREF is `basis`, returning the
/// unique representative vanishing on every pivot column.
pub fn reduce_modulo_rowspace(v: &[BigInt], basis: &[Vec<BigRational>]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (x, y) in out.iter_mut().zip(row) {
            *x -= &f * y;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut data = vec![BigRational::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn to_int_matrix(&self) -> Option<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}
