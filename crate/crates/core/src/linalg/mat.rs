//! Dense exact matrices.
//!
//! Vectors are rows throughout the crate: a linear map `V -> W` between
//! spaces of dimensions `m` and `n` is an `m x n` matrix acting by `v ↦ v·F`,
//! so "first `f`, then `g`" is the product `F·G`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

// Elimination kernels run on unboxed representations.
trait Arith {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// a − b·c
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

struct ModP(u64);

impl Arith for ModP {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + self.0 - b * c % self.0) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        super::field::pow_mod(*a, self.0 - 2, self.0)
    }
}

struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// In-place reduced row echelon form; returns the pivot columns.
fn rref_in_place<A: Arith>(ar: &A, m: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = ar.mul(&m[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * cols + c].clone();
            if ar.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = ar.sub_mul(&m[i * cols + j], &factor, &m[r * cols + j]);
                m[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols, "entry count must be rows x cols");
        Mat { field, rows, cols, data }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer rows; every row must have `cols` entries.
    pub fn from_ints(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat::new(field, rows, cols, entries.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn row_vector(field: Field, entries: Vec<Scalar>) -> Mat {
        let n = entries.len();
        Mat::new(field, 1, n, entries)
    }

    pub fn unit_row(field: Field, n: usize, i: usize) -> Mat {
        let mut m = Mat::zeros(field, 1, n);
        m.data[i] = field.one();
        m
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
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }
    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.field, self.rows)
    }

    pub fn row(&self, r: usize) -> Mat {
        self.submatrix(r, r + 1, 0, self.cols)
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.data[r * self.cols + c0..r * self.cols + c1]);
        }
        Mat::new(self.field, r1 - r0, c1 - c0, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        Mat::new(self.field, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.data[r * self.cols + c].clone());
            }
        }
        Mat::new(self.field, self.rows, idx.len(), data)
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Mat) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r + i) * self.cols + c + j] = block.data[i * block.cols + j].clone();
            }
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].clone());
            }
        }
        Mat::new(self.field, self.cols, self.rows, data)
    }

    /// Row-major flattening as a single row vector.
    pub fn flatten(&self) -> Mat {
        Mat::new(self.field, 1, self.data.len(), self.data.clone())
    }

    pub fn reshape(&self, rows: usize, cols: usize) -> Mat {
        Mat::new(self.field, rows, cols, self.data.clone())
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let field = parts[0].field;
        let rows = parts[0].rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c, m);
            c += m.cols;
        }
        out
    }

    /// Vertical concatenation; `width` is used when `parts` is empty.
    pub fn vstack(field: Field, width: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * width);
        for m in parts {
            assert_eq!(m.cols, width, "vstack column mismatch");
            data.extend_from_slice(&m.data);
        }
        Mat::new(field, rows, width, data)
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = f.mul(a, &other.data[k * other.cols + l]);
                        out.data[(i * other.rows + k) * out.cols + j * other.cols + l] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Mat::new(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Mat::new(f, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat::new(f, self.rows, self.cols, self.data.iter().map(|a| f.neg(a)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        Mat::new(f, self.rows, self.cols, self.data.iter().map(|a| f.mul(a, s)).collect())
    }

    /// Adds `s·other` into `self`.
    pub fn axpy(&mut self, s: &Scalar, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        if f.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(a, &f.mul(s, b));
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "mul shape mismatch {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let (n, k, m) = (self.rows, self.cols, other.cols);
        match self.field {
            Field::Prime(p) => {
                let p = p as u64;
                let a = self.residues();
                let b = other.residues();
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for t in 0..k {
                        let x = a[i * k + t];
                        if x == 0 {
                            continue;
                        }
                        let row = &b[t * m..(t + 1) * m];
                        let dst = &mut out[i * m..(i + 1) * m];
                        for j in 0..m {
                            dst[j] = (dst[j] + x * row[j]) % p;
                        }
                    }
                }
                Mat::new(self.field, n, m, out.into_iter().map(|v| Scalar::Mod(v as u32)).collect())
            }
            Field::Rational => {
                let a = self.rationals();
                let b = other.rationals();
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for t in 0..k {
                        let x = &a[i * k + t];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            if !b[t * m + j].is_zero() {
                                out[i * m + j] += x * &b[t * m + j];
                            }
                        }
                    }
                }
                Mat::new(self.field, n, m, out.into_iter().map(Scalar::Rat).collect())
            }
        }
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn residues(&self) -> Vec<u64> {
        self.data
            .iter()
            .map(|x| match x {
                Scalar::Mod(v) => *v as u64,
                Scalar::Rat(_) => unreachable!("rational entry in prime-field matrix"),
            })
            .collect()
    }

    fn rationals(&self) -> Vec<BigRational> {
        self.data
            .iter()
            .map(|x| match x {
                Scalar::Rat(r) => r.clone(),
                Scalar::Mod(_) => unreachable!("residue entry in rational matrix"),
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        match self.field {
            Field::Prime(p) => {
                let mut d = self.residues();
                let piv = rref_in_place(&ModP(p as u64), &mut d, rows, cols);
                let data = d.into_iter().map(|v| Scalar::Mod(v as u32)).collect();
                (Mat::new(self.field, rows, cols, data), piv)
            }
            Field::Rational => {
                let mut d = self.rationals();
                let piv = rref_in_place(&Rat, &mut d, rows, cols);
                let data = d.into_iter().map(Scalar::Rat).collect();
                (Mat::new(self.field, rows, cols, data), piv)
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space(&self) -> Mat {
        let (r, piv) = self.rref();
        r.submatrix(0, piv.len(), 0, self.cols)
    }

    /// Basis of `{x : A·x = 0}` as column vectors, in canonical form.
    pub fn kernel_basis(&self) -> Vec<Mat> {
        let k = self.null_space_rows();
        (0..k.rows).map(|i| k.row(i).transpose()).collect()
    }

    /// Rows spanning `{v : v·A = 0}`, canonical (RREF).
    pub fn left_kernel(&self) -> Mat {
        self.transpose().null_space_rows()
    }

    // rows x with A·xᵀ = 0, in RREF
    fn null_space_rows(&self) -> Mat {
        let (r, piv) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let f = self.field;
        let mut out = Mat::zeros(f, free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, f.one());
            for (i, &pc) in piv.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out.row_space()
    }

    /// Solves `A·X = B`. Returns the canonical solution (free variables zero),
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: A has {} rows, b has {}",
                self.rows, b.rows
            )));
        }
        let aug = Mat::hstack(&[self, b]);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let f = self.field;
        let mut x = Mat::zeros(f, self.cols, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Solves `X·A = B`.
    pub fn solve_left(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.cols != b.cols {
            return Err(Error::DimensionMismatch(format!(
                "solve_left: A has {} cols, b has {}",
                self.cols, b.cols
            )));
        }
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let id = Mat::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.mul(&x).is_identity() => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Nilpotency test for a square matrix: `A^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return true;
        }
        // repeated squaring past n
        let mut m = self.clone();
        let mut e = 1;
        while e < n {
            m = m.mul(&m);
            e *= 2;
        }
        m.is_zero()
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let f = self.field;
        (0..self.rows).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{}:", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, " ;")?;
            }
            for c in 0..self.cols {
                write!(f, " {}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}
