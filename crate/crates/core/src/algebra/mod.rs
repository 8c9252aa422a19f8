//! Finite-dimensional algebras `kQ/I` given by quivers with relations.
//!
//! Elements are row vectors over a basis of reduced paths. `b_i·b_j` is the
//! row `left_mult(i).row(j)`; "a then b" is written `a*b`.

mod bimodule;
mod build;
pub mod parse;

use std::sync::Arc;

pub use bimodule::Bimodule;
pub use build::DEFAULT_LENGTH_BOUND;
pub use parse::{parse_presentation, QuiverPresentation};

use crate::error::Result;
use crate::linalg::{Field, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPath {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    vertices: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
    basis: Vec<BasisPath>,
    // left[i] has row j equal to b_i * b_j
    left: Vec<Mat>,
    idempotents: Vec<usize>,
    arrow_basis: Vec<usize>,
}

pub type AlgebraRef = Arc<Algebra>;

/// Parses and builds an algebra with the default path-length bound.
pub fn algebra_from_text(text: &str) -> Result<Algebra> {
    build_algebra(&parse_presentation(text)?)
}

pub fn build_algebra(pres: &QuiverPresentation) -> Result<Algebra> {
    build::build(pres, DEFAULT_LENGTH_BOUND)
}

pub fn build_algebra_with_bound(pres: &QuiverPresentation, length_bound: usize) -> Result<Algebra> {
    build::build(pres, length_bound)
}

pub fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Algebra {
    pub(crate) fn from_parts(
        field: Field,
        vertices: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        basis: Vec<BasisPath>,
        left: Vec<Mat>,
        idempotents: Vec<usize>,
        arrow_basis: Vec<usize>,
    ) -> Algebra {
        Algebra { field, vertices, arrows, basis, left, idempotents, arrow_basis }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[(String, usize, usize)] {
        &self.arrows
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|b| b.label.clone()).collect()
    }

    /// Basis index of the trivial path at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn arrow_element(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Basis indices of the idempotents followed by the arrows.
    pub fn generators(&self) -> Vec<usize> {
        self.idempotents.iter().chain(self.arrow_basis.iter()).copied().collect()
    }

    /// Basis indices of the nontrivial paths; they span the arrow ideal.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].arrows.is_empty()).collect()
    }

    /// Basis indices of paths starting at `v` (a basis of `e_v A`).
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == v).collect()
    }

    /// Basis indices of paths ending at `v` (a basis of `A e_v`).
    pub fn paths_to(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].target == v).collect()
    }

    pub fn basis_element(&self, i: usize) -> Mat {
        Mat::unit_row(self.field, self.dim(), i)
    }

    pub fn unit(&self) -> Mat {
        let mut u = Mat::zeros(self.field, 1, self.dim());
        for &e in &self.idempotents {
            u.set(0, e, self.field.one());
        }
        u
    }

    /// Matrix of `x ↦ b_i·x`.
    pub fn left_mult(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    /// Matrix of `x ↦ x·b_j`.
    pub fn right_mult(&self, j: usize) -> Mat {
        let n = self.dim();
        let mut r = Mat::zeros(self.field, n, n);
        for i in 0..n {
            r.set_block(i, 0, &self.left[i].row(j));
        }
        r
    }

    /// Matrix of `x ↦ a·x` for an arbitrary element `a`.
    pub fn left_mult_by(&self, a: &Mat) -> Mat {
        let n = self.dim();
        let mut out = Mat::zeros(self.field, n, n);
        for i in 0..n {
            let c = a.get(0, i);
            if !self.field.is_zero(c) {
                out.axpy(c, &self.left[i]);
            }
        }
        out
    }

    /// Matrix of `x ↦ x·a` for an arbitrary element `a`.
    pub fn right_mult_by(&self, a: &Mat) -> Mat {
        let n = self.dim();
        let mut out = Mat::zeros(self.field, n, n);
        for i in 0..n {
            out.set_block(i, 0, &a.mul(&self.left[i]));
        }
        out
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        b.mul(&self.left_mult_by(a))
    }

    pub fn product(&self, i: usize, j: usize) -> Mat {
        self.left[i].row(j)
    }

    /// The opposite algebra on the same basis: `b_i ∘ b_j = b_j·b_i`.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let left = (0..n).map(|i| self.right_mult(i)).collect();
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let arrows: Vec<usize> = b.arrows.iter().rev().copied().collect();
                let label = if arrows.is_empty() {
                    b.label.clone()
                } else {
                    arrows.iter().map(|&a| self.arrows[a].0.as_str()).collect::<Vec<_>>().join("*")
                };
                BasisPath { label, source: b.target, target: b.source, arrows }
            })
            .collect();
        let arrows = self.arrows.iter().map(|(n, s, t)| (n.clone(), *t, *s)).collect();
        Algebra {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows,
            basis,
            left,
            idempotents: self.idempotents.clone(),
            arrow_basis: self.arrow_basis.clone(),
        }
    }

    /// Overwrites one structure constant row. Used to build corrupted
    /// algebras for validation tests.
    pub fn set_product_unchecked(&mut self, i: usize, j: usize, value: &Mat) {
        self.left[i].set_block(j, 0, value);
    }

    pub fn format_element(&self, a: &Mat) -> String {
        let mut parts = Vec::new();
        for i in 0..self.dim() {
            let c = a.get(0, i);
            if self.field.is_zero(c) {
                continue;
            }
            if self.field.is_one(c) {
                parts.push(self.basis[i].label.clone());
            } else {
                parts.push(format!("{}{}", c, self.basis[i].label));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<(String, bool)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

/// Checks associativity, the unit, orthogonality of the vertex idempotents and
/// nilpotency of the arrow ideal.
pub fn validate_algebra(a: &Algebra) -> ValidationReport {
    let f = a.field;
    let n = a.dim();
    let mut checks = Vec::new();

    let mut assoc = true;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let lhs = a.mul(&ij, &a.basis_element(k));
                let rhs = a.mul(&a.basis_element(i), &a.product(j, k));
                if lhs != rhs {
                    assoc = false;
                    break 'outer;
                }
            }
        }
    }
    checks.push(("associativity".to_string(), assoc));

    let one = a.unit();
    let unit_ok = (0..n).all(|i| {
        let b = a.basis_element(i);
        a.mul(&one, &b) == b && a.mul(&b, &one) == b
    });
    checks.push(("unit".to_string(), unit_ok));

    let mut idem_ok = true;
    for (x, &e) in a.idempotents.iter().enumerate() {
        for (y, &g) in a.idempotents.iter().enumerate() {
            let p = a.product(e, g);
            let expect = if x == y { a.basis_element(e) } else { Mat::zeros(f, 1, n) };
            idem_ok &= p == expect;
        }
    }
    checks.push(("orthogonal idempotents".to_string(), idem_ok));

    // the span of nontrivial paths must be a nilpotent two-sided ideal
    let rad = a.radical_basis();
    let rad_space = crate::linalg::Subspace::span(&Mat::identity(f, n).select_rows(&rad));
    let mut ideal_ok = true;
    for &r in &rad {
        for i in 0..n {
            ideal_ok &= rad_space.contains(&a.product(r, i)) && rad_space.contains(&a.product(i, r));
        }
    }
    let nil_ok = ideal_ok && {
        let mut power = rad_space.clone();
        let mut steps = 0;
        while power.dim() > 0 && steps <= n {
            let mut rows = Vec::new();
            for v in 0..power.dim() {
                for &r in &rad {
                    rows.push(a.mul(&power.basis().row(v), &a.basis_element(r)));
                }
            }
            let refs: Vec<&Mat> = rows.iter().collect();
            power = crate::linalg::Subspace::span(&Mat::vstack(f, n, &refs));
            steps += 1;
        }
        power.dim() == 0
    };
    checks.push(("radical is a nilpotent ideal".to_string(), nil_ok));

    ValidationReport { checks }
}

pub fn opposite_algebra(a: &Algebra) -> Algebra {
    a.opposite()
}
