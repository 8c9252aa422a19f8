//! Row subspaces of `k^n`: canonical bases, coordinates, sums, intersections
//! and quotients.

use super::field::Field;
use super::mat::Mat;
use crate::error::{Error, Result};

/// A linearly independent family of row vectors together with a precomputed
/// left inverse, so coordinates of vectors in its span are one product away.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Mat,
    pivots: Vec<usize>,
    pivot_inverse: Mat,
}

impl Coordinates {
    /// `basis` must have independent rows.
    pub fn new(basis: Mat) -> Result<Coordinates> {
        let (_, col_piv) = basis.rref();
        if col_piv.len() != basis.rows() {
            return Err(Error::Internal("coordinate basis rows are dependent".into()));
        }
        let square = basis.select_cols(&col_piv);
        let pivot_inverse = square.inverse().expect("pivot block is invertible");
        Ok(Coordinates { basis, pivots: col_piv, pivot_inverse })
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of each row of `v`, assuming the rows lie in the span.
    pub fn coords_unchecked(&self, v: &Mat) -> Mat {
        v.select_cols(&self.pivots).mul(&self.pivot_inverse)
    }

    /// Coordinates of each row of `v`, or `None` if some row is outside the span.
    pub fn coords(&self, v: &Mat) -> Option<Mat> {
        let c = self.coords_unchecked(v);
        if c.mul(&self.basis) == *v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &Mat) -> bool {
        self.coords(v).is_some()
    }

    pub fn combine(&self, coords: &Mat) -> Mat {
        coords.mul(&self.basis)
    }
}

/// A subspace of `k^n` stored by its RREF basis; equality of subspaces is
/// equality of these matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Mat::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Mat::identity(field, ambient) }
    }

    pub fn span(rows: &Mat) -> Subspace {
        Subspace { basis: rows.row_space() }
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn contains(&self, v: &Mat) -> bool {
        let stacked = Mat::vstack(self.field(), self.ambient(), &[&self.basis, v]);
        stacked.rank() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        self.contains(&other.basis)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of k^{} and k^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span(&Mat::vstack(self.field(), self.ambient(), &[&self.basis, &other.basis])))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let stacked = Mat::vstack(self.field(), self.ambient(), &[&self.basis, &other.basis]);
        // (a, b) with a·U + b·V = 0 gives a·U ∈ U ∩ V
        let rel = stacked.left_kernel();
        let a = rel.submatrix(0, rel.rows(), 0, self.dim());
        Ok(Subspace::span(&a.mul(&self.basis)))
    }

    /// The quotient `self / sub`; `sub` must be contained in `self`.
    pub fn quotient(&self, sub: &Subspace) -> Result<Quotient> {
        self.check(sub)?;
        if !self.contains_space(sub) {
            return Err(Error::DimensionMismatch("quotient by a non-subspace".into()));
        }
        Quotient::new(&sub.basis, &self.basis)
    }
}

/// `V / U` presented by coset representatives extending a basis of `U`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub_dim: usize,
    reps: Mat,
    coords: Coordinates,
}

impl Quotient {
    /// `sub` and `whole` are spanning rows with `span(sub) ⊆ span(whole)`.
    /// Representatives are the rows of `whole` not in the span of the earlier
    /// rows, so the choice is deterministic.
    pub fn new(sub: &Mat, whole: &Mat) -> Result<Quotient> {
        let f = whole.field();
        let n = whole.cols();
        let sub_basis = sub.row_space();
        let mut current = sub_basis.clone();
        let mut reps = Vec::new();
        for i in 0..whole.rows() {
            let row = whole.row(i);
            let trial = Mat::vstack(f, n, &[&current, &row]);
            if trial.rank() > current.rows() {
                current = trial;
                reps.push(row);
            }
        }
        let refs: Vec<&Mat> = reps.iter().collect();
        let reps = Mat::vstack(f, n, &refs);
        let coords = Coordinates::new(Mat::vstack(f, n, &[&sub_basis, &reps]))?;
        Ok(Quotient { sub_dim: sub_basis.rows(), reps, coords })
    }

    /// Quotient of the whole ambient space `k^n` by `span(sub)`.
    pub fn of_ambient(sub: &Mat) -> Result<Quotient> {
        Quotient::new(sub, &Mat::identity(sub.field(), sub.cols()))
    }

    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_dim
    }

    pub fn reps(&self) -> &Mat {
        &self.reps
    }

    /// Images of the rows of `v` in the quotient, or `None` if some row lies
    /// outside the ambient subspace.
    pub fn project(&self, v: &Mat) -> Option<Mat> {
        let c = self.coords.coords(v)?;
        Some(c.submatrix(0, c.rows(), self.sub_dim, c.cols()))
    }

    pub fn project_unchecked(&self, v: &Mat) -> Mat {
        let c = self.coords.coords_unchecked(v);
        c.submatrix(0, c.rows(), self.sub_dim, c.cols())
    }

    /// The projection as an `ambient x dim` matrix (valid on the ambient subspace).
    pub fn projection_matrix(&self) -> Mat {
        let n = self.coords.ambient();
        self.project_unchecked(&Mat::identity(self.reps.field(), n))
    }

    pub fn lift(&self, coords: &Mat) -> Mat {
        coords.mul(&self.reps)
    }

    pub fn is_zero_class(&self, v: &Mat) -> bool {
        self.project(v).map(|c| c.is_zero()).unwrap_or(false)
    }
}
