//! Dense exact linear algebra over [`Scalar`]s, plus a lean `𝔽_p` matrix for
//! hot paths and Smith normal form over `ℤ`.
//!
//! Pivoting is always "first nonzero in column order" — determinism matters
//! more than numerical taste when everything is exact.

use crate::scalar::{add_mod, inv_mod, mul_mod, Field, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense matrix over a fixed ground field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, field, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zero(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).sub(o.get(i, j)));
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form.
    /// Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, as rows.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = m.get(r, free).neg();
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `Mx = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Incremental row-space: feed vectors, learn which were new.
/// Rows are kept in echelon form (not reduced upward — only ranks and
/// membership are asked of it).
pub struct Span {
    cols: usize,
    rows: Vec<Vec<Scalar>>,     // echelonized
    pivot_cols: Vec<usize>,     // pivot col of each row, increasing is NOT assumed
}

impl Span {
    pub fn new(cols: usize) -> Span {
        Span { cols, rows: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the span; if a nonzero remainder survives, absorb
    /// it and return `true`.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (row, &pc) in self.rows.iter().zip(&self.pivot_cols) {
            if !v[pc].is_zero() {
                let f = v[pc].clone(); // rows are normalized at their pivot
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        let Some(pc) = (0..self.cols).find(|&j| !v[j].is_zero()) else {
            return false;
        };
        let inv = v[pc].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        self.rows.push(v);
        self.pivot_cols.push(pc);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivot_cols) {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

// ---------------------------------------------------------------------------
// 𝔽_p matrices on raw u64 — the workhorse for pivot selection and the
// structure-constant solves, where Scalar's indirection would sting.
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> FpMat {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Row echelon, returning pivot columns.  Destructive.
    pub fn echelon(&mut self) -> Vec<usize> {
        let (p, cols) = (self.p, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = inv_mod(self.get(r, c), p);
            for j in c..cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        let fneg = p - f;
                        for j in c..cols {
                            let v = add_mod(self.get(i, j), mul_mod(fneg, self.get(r, j), p), p);
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelon().len()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Kernel basis (right kernel), rows of the result.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let mut pivot_of_col = vec![usize::MAX; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = r;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free] != usize::MAX {
                continue;
            }
            let mut x = vec![0u64; self.cols];
            x[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let v = m.get(r, free);
                x[c] = if v == 0 { 0 } else { self.p - v };
            }
            basis.push(x);
        }
        basis
    }
}

/// LU-style solver mod p for a fixed invertible square matrix, supporting many
/// right-hand sides.  Plain Gauss with partial (first-nonzero) pivoting,
/// factors stored once.
pub struct FpSolver {
    p: u64,
    n: usize,
    /// Row-permuted combined LU factors.
    lu: Vec<u64>,
    perm: Vec<usize>,
}

impl FpSolver {
    /// `None` if the matrix is singular mod p.
    pub fn new(p: u64, a: &FpMat) -> Option<FpSolver> {
        assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let pr = (c..n).find(|&i| lu[i * n + c] != 0)?;
            if pr != c {
                for j in 0..n {
                    lu.swap(c * n + j, pr * n + j);
                }
                perm.swap(c, pr);
            }
            let inv = inv_mod(lu[c * n + c], p);
            for i in c + 1..n {
                let f = mul_mod(lu[i * n + c], inv, p);
                lu[i * n + c] = f;
                if f != 0 {
                    let fneg = p - f;
                    for j in c + 1..n {
                        lu[i * n + j] = add_mod(lu[i * n + j], mul_mod(fneg, lu[c * n + j], p), p);
                    }
                }
            }
        }
        Some(FpSolver { p, n, lu, perm })
    }

    pub fn solve(&self, b: &[u64]) -> Vec<u64> {
        let (p, n) = (self.p, self.n);
        let mut y: Vec<u64> = self.perm.iter().map(|&i| b[i] % p).collect();
        for i in 1..n {
            for j in 0..i {
                let f = self.lu[i * n + j];
                if f != 0 && y[j] != 0 {
                    y[i] = add_mod(y[i], p - mul_mod(f, y[j], p), p);
                }
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let f = self.lu[i * n + j];
                if f != 0 && y[j] != 0 {
                    y[i] = add_mod(y[i], p - mul_mod(f, y[j], p), p);
                }
            }
            y[i] = mul_mod(y[i], inv_mod(self.lu[i * n + i], p), p);
        }
        y
    }
}

/// Exact LU solver over an arbitrary [`Field`] for a fixed invertible square
/// matrix (used for coordinate extraction, where hundreds of solves share one
/// factorization).
pub struct ExactSolver {
    n: usize,
    lu: Vec<Scalar>,
    perm: Vec<usize>,
}

impl ExactSolver {
    pub fn new(a: &Matrix) -> Option<ExactSolver> {
        assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let mut lu: Vec<Scalar> = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let pr = (c..n).find(|&i| !lu[i * n + c].is_zero())?;
            if pr != c {
                for j in 0..n {
                    lu.swap(c * n + j, pr * n + j);
                }
                perm.swap(c, pr);
            }
            let inv = lu[c * n + c].inv();
            for i in c + 1..n {
                if lu[i * n + c].is_zero() {
                    continue;
                }
                let f = lu[i * n + c].mul(&inv);
                for j in c + 1..n {
                    if !lu[c * n + j].is_zero() {
                        lu[i * n + j] = lu[i * n + j].sub(&f.mul(&lu[c * n + j]));
                    }
                }
                lu[i * n + c] = f;
            }
        }
        Some(ExactSolver { n, lu, perm })
    }

    pub fn solve(&self, b: &[Scalar]) -> Vec<Scalar> {
        let n = self.n;
        let mut y: Vec<Scalar> = self.perm.iter().map(|&i| b[i].clone()).collect();
        for i in 1..n {
            for j in 0..i {
                let f = &self.lu[i * n + j];
                if !f.is_zero() && !y[j].is_zero() {
                    y[i] = y[i].sub(&f.mul(&y[j]));
                }
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let f = &self.lu[i * n + j];
                if !f.is_zero() && !y[j].is_zero() {
                    y[i] = y[i].sub(&f.mul(&y[j]));
                }
            }
            y[i] = y[i].div(&self.lu[i * n + i]);
        }
        y
    }
}

// ---------------------------------------------------------------------------
// Smith normal form over ℤ
// ---------------------------------------------------------------------------

/// Elementary divisors `d_1 | d_2 | …` (nonzero ones only) of an integer
/// matrix.  Textbook algorithm: move a minimal nonzero entry to the corner,
/// clear its row and column, restart on divisibility failures.
pub fn smith_elementary_divisors(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut divisors = Vec::new();
    let mut top = 0usize;
    while top < rows.min(cols) {
        // locate minimal |entry| ≠ 0 in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(top, bi);
        for row in a.iter_mut() {
            row.swap(top, bj);
        }
        // reduce column and row by the corner
        let mut dirty = false;
        for i in top + 1..rows {
            if !a[i][top].is_zero() {
                let q = div_round(&a[i][top], &a[top][top]);
                for j in top..cols {
                    let v = &a[i][j] - &q * &a[top][j];
                    a[i][j] = v;
                }
                if !a[i][top].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in top + 1..cols {
            if !a[top][j].is_zero() {
                let q = div_round(&a[top][j], &a[top][top]);
                for row in a.iter_mut().skip(top) {
                    let v = &row[j] - &q * &row[top];
                    row[j] = v;
                }
                if !a[top][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // corner may have shrunk; repeat the block
        }
        // divisibility condition: corner must divide everything below-right
        let d = a[top][top].abs();
        let mut fixup = None;
        'scan: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&a[i][j] % &d).is_zero() {
                    fixup = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = fixup {
            for j in top..cols {
                let v = &a[top][j] + &a[i][j];
                a[top][j] = v;
            }
            continue;
        }
        divisors.push(d);
        top += 1;
    }
    divisors
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // round-to-nearest quotient keeps remainders small
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &(r.clone() * &two).abs() > &b.abs() {
        q + BigInt::from(1)
    } else {
        q
    }
}
