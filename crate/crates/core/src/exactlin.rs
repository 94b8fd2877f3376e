//! Dense exact linear algebra over [`Field`].
//!
//! Every routine is Gaussian elimination with the deterministic pivot rule
//! "first nonzero entry, columns left to right, rows top to bottom", so
//! bases returned here are reproducible bit-for-bit. Empty matrices (zero
//! rows or zero columns) are ordinary values.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::field::{inv_mod, Field, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of [`solve_right`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solved(Matrix),
    /// Column `column` of the right-hand side lies outside the column space.
    Unsolvable { column: usize },
}

/// Projection onto `ambient / span(S)` together with a lift of the quotient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub projection: Matrix,
    /// `projection * lift = I`; columns are standard basis vectors of the ambient space.
    pub lift: Matrix,
    pub quotient_dim: usize,
}

// Elimination kernels are written once over this trait and instantiated for
// residues (plain u32 arithmetic) and big rationals.
trait Arith {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, x: Self::E) -> Scalar;
}

struct ModP(u32);
struct Rat;

impl Arith for ModP {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    fn add(&self, x: &u32, y: &u32) -> u32 {
        ((*x as u64 + *y as u64) % self.0 as u64) as u32
    }
    fn sub(&self, x: &u32, y: &u32) -> u32 {
        ((*x as u64 + (self.0 - *y) as u64) % self.0 as u64) as u32
    }
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        ((*x as u64 * *y as u64) % self.0 as u64) as u32
    }
    fn inv(&self, x: &u32) -> u32 {
        inv_mod(*x, self.0)
    }
    fn lift(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Residue(v) => *v,
            Scalar::Rational(_) => panic!("rational entry in a matrix over F_{}", self.0),
        }
    }
    fn lower(&self, x: u32) -> Scalar {
        Scalar::Residue(x)
    }
}

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Residue(_) => panic!("residue entry in a rational matrix"),
        }
    }
    fn lower(&self, x: BigRational) -> Scalar {
        Scalar::Rational(x)
    }
}

fn rref_kernel<A: Arith>(a: &A, rows: usize, cols: usize, m: &mut [A::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = a.mul(&m[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r || a.is_zero(&m[i * cols + c]) {
                continue;
            }
            let f = m[i * cols + c].clone();
            for j in c..cols {
                let t = a.sub(&m[i * cols + j], &a.mul(&f, &m[r * cols + j]));
                m[i * cols + j] = t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn mul_kernel<A: Arith>(a: &A, x: &Matrix, y: &Matrix) -> Vec<Scalar> {
    let xl: Vec<A::E> = x.data.iter().map(|s| a.lift(s)).collect();
    let yl: Vec<A::E> = y.data.iter().map(|s| a.lift(s)).collect();
    let mut out = vec![a.zero(); x.rows * y.cols];
    for i in 0..x.rows {
        for k in 0..x.cols {
            let xv = &xl[i * x.cols + k];
            if a.is_zero(xv) {
                continue;
            }
            for j in 0..y.cols {
                let t = a.add(&out[i * y.cols + j], &a.mul(xv, &yl[k * y.cols + j]));
                out[i * y.cols + j] = t;
            }
        }
    }
    out.into_iter().map(|e| a.lower(e)).collect()
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::new",
                expected: (rows, cols),
                found: (data.len(), 1),
            });
        }
        if data.iter().any(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Integer entries, reduced into the field. Convenient for tests and literals.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix literal");
        Matrix::from_fn(field, r, c, |i, j| field.from_int(rows[i][j]))
    }

    /// Matrix with the given column vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Matrix {
        let rows = v.len();
        Matrix { field, rows, cols: 1, data: v }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// The block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        Matrix::from_fn(self.field, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch in product");
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let data = match self.field {
            Field::Prime(p) => mul_kernel(&ModP(p), self, other),
            Field::Rationals => mul_kernel(&Rat, self, other),
        };
        Matrix { field: self.field, rows: self.rows, cols: other.cols, data }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mul(&Matrix::column_vector(self.field, v.to_vec())).data
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in elementwise op");
        assert_eq!(self.field, other.field, "field mismatch in elementwise op");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let k = self.field;
        self.zip(other, |a, b| k.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let k = self.field;
        self.zip(other, |a, b| k.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let k = self.field;
        let data = self.data.iter().map(|a| k.mul(a, c)).collect();
        Matrix { field: k, rows: self.rows, cols: self.cols, data }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    /// Row-major flattening as a single column.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vectorized(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix { field, rows, cols, data: v.to_vec() }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut out = self.clone();
        let pivots = match self.field {
            Field::Prime(p) => {
                let a = ModP(p);
                let mut m: Vec<u32> = self.data.iter().map(|s| a.lift(s)).collect();
                let piv = rref_kernel(&a, self.rows, self.cols, &mut m);
                out.data = m.into_iter().map(Scalar::Residue).collect();
                piv
            }
            Field::Rationals => {
                let mut m: Vec<BigRational> = self.data.iter().map(|s| Rat.lift(s)).collect();
                let piv = rref_kernel(&Rat, self.rows, self.cols, &mut m);
                out.data = m.into_iter().map(Scalar::Rational).collect();
                piv
            }
        };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Indices of a maximal independent subset of columns (earliest first).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis of the column space, drawn from the columns themselves.
    pub fn column_basis(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        match solve_right(self, &Matrix::identity(self.field, self.rows)).ok()? {
            Solve::Solved(x) if self.rank() == self.rows => Some(x),
            _ => None,
        }
    }

    /// Whether every column of `v` lies in the column space of `self`.
    pub fn spans(&self, v: &Matrix) -> bool {
        matches!(solve_right(self, v), Ok(Solve::Solved(_)))
    }

    pub fn kernel_basis(&self) -> Matrix {
        kernel_basis(self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Columns spanning `ker(m)`, one per non-pivot column in increasing order.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let (r, pivots) = m.rref();
    let k = m.field;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(k, m.cols, free.len());
    for (out_col, &fc) in free.iter().enumerate() {
        basis.data[fc * free.len() + out_col] = k.one();
        for (row, &pc) in pivots.iter().enumerate() {
            let v = r.get(row, fc);
            if !k.is_zero(v) {
                basis.data[pc * free.len() + out_col] = k.neg(v);
            }
        }
    }
    basis
}

/// Solves `a * x = b`. Free variables are set to zero.
pub fn solve_right(a: &Matrix, b: &Matrix) -> Result<Solve, Error> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            op: "solve_right",
            expected: (a.rows, b.cols),
            found: (b.rows, b.cols),
        });
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let k = a.field;
    let (r, pivots) = a.hstack(b).rref();
    let rank_a = pivots.iter().take_while(|&&c| c < a.cols).count();
    for j in 0..b.cols {
        if (rank_a..a.rows).any(|row| !k.is_zero(r.get(row, a.cols + j))) {
            return Ok(Solve::Unsolvable { column: j });
        }
    }
    let mut x = Matrix::zeros(k, a.cols, b.cols);
    for (row, &pc) in pivots.iter().take(rank_a).enumerate() {
        for j in 0..b.cols {
            x.data[pc * b.cols + j] = r.get(row, a.cols + j).clone();
        }
    }
    Ok(Solve::Solved(x))
}

/// A right inverse `s` with `f * s = I`, if one exists.
pub fn split_section(f: &Matrix) -> Option<Matrix> {
    match solve_right(f, &Matrix::identity(f.field, f.rows)) {
        Ok(Solve::Solved(s)) => Some(s),
        _ => None,
    }
}

/// Projection `k^ambient -> k^ambient / span(s)`.
pub fn quotient_structure(ambient: usize, s: &Matrix) -> Result<QuotientStructure, Error> {
    if s.rows != ambient {
        return Err(Error::DimensionMismatch {
            op: "quotient_structure",
            expected: (ambient, s.cols),
            found: s.shape(),
        });
    }
    let k = s.field;
    let (_, pivots) = s.hstack(&Matrix::identity(k, ambient)).rref();
    if pivots.iter().take_while(|&&c| c < s.cols).count() != s.cols {
        return Err(Error::DependentColumns);
    }
    let complement: Vec<usize> = pivots.iter().filter(|&&c| c >= s.cols).map(|c| c - s.cols).collect();
    let lift = Matrix::identity(k, ambient).select_columns(&complement);
    let basis = s.hstack(&lift);
    let inv = basis.inverse().ok_or(Error::Internal("completed basis not invertible"))?;
    let q = complement.len();
    let projection = inv.block(s.cols, 0, q, ambient);
    Ok(QuotientStructure { projection, lift, quotient_dim: q })
}

/// Columns of `extra` (in order) that enlarge `span(base)`, greedily.
pub(crate) fn extend_independent(base: &Matrix, extra: &Matrix) -> Vec<usize> {
    let (_, pivots) = base.hstack(extra).rref();
    pivots.iter().filter(|&&c| c >= base.cols).map(|c| c - base.cols).collect()
}
