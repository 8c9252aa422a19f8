use super::Algebra;
use crate::linalg::{Field, Mat};

/// An `A`-`A`-bimodule. Both actions are stored as right-acting matrices on
/// row vectors, so `left(a·b) = left(b)·left(a)` while
/// `right(a·b) = right(a)·right(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub field: Field,
    pub dim: usize,
    pub left: Vec<Mat>,
    pub right: Vec<Mat>,
}

impl Bimodule {
    /// `A` as a bimodule over itself.
    pub fn regular(a: &Algebra) -> Bimodule {
        let n = a.dim();
        Bimodule {
            field: a.field(),
            dim: n,
            left: (0..n).map(|i| a.left_mult(i).clone()).collect(),
            right: (0..n).map(|i| a.right_mult(i)).collect(),
        }
    }

    /// `DA = Hom_k(A, k)` in the dual basis of the path basis, with
    /// `(φ·b)(x) = φ(b·x)` and `(a·φ)(x) = φ(x·a)`.
    pub fn dual(a: &Algebra) -> Bimodule {
        let n = a.dim();
        Bimodule {
            field: a.field(),
            dim: n,
            left: (0..n).map(|i| a.right_mult(i).transpose()).collect(),
            right: (0..n).map(|i| a.left_mult(i).transpose()).collect(),
        }
    }

    pub fn left_by(&self, a: &Mat) -> Mat {
        combine(self.field, self.dim, &self.left, a)
    }

    pub fn right_by(&self, b: &Mat) -> Mat {
        combine(self.field, self.dim, &self.right, b)
    }

    /// Checks unitality, both action laws and that the actions commute.
    pub fn check(&self, a: &Algebra) -> bool {
        let n = a.dim();
        let id = Mat::identity(self.field, self.dim);
        if self.left_by(&a.unit()) != id || self.right_by(&a.unit()) != id {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let ij = a.product(i, j);
                if self.right_by(&ij) != self.right[i].mul(&self.right[j]) {
                    return false;
                }
                if self.left_by(&ij) != self.left[j].mul(&self.left[i]) {
                    return false;
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return false;
                }
            }
        }
        true
    }
}

fn combine(field: Field, dim: usize, mats: &[Mat], coeffs: &Mat) -> Mat {
    let mut out = Mat::zeros(field, dim, dim);
    for (i, m) in mats.iter().enumerate() {
        let c = coeffs.get(0, i);
        if !field.is_zero(c) {
            out.axpy(c, m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_from_text;

    #[test]
    fn regular_and_dual_are_bimodules() {
        for text in [
            "field GF(7); vertex 1 2; arrow a: 1 -> 2;",
            "field GF(2); vertex 1; arrow x: 1 -> 1; arrow y: 1 -> 1; relation x*x; relation y*y; relation x*y; relation y*x;",
            "field Q; vertex 1 2 3; arrow a: 1 -> 2; arrow b: 2 -> 3; relation a*b;",
        ] {
            let a = algebra_from_text(text).unwrap();
            assert!(Bimodule::regular(&a).check(&a));
            assert!(Bimodule::dual(&a).check(&a));
        }
    }
}
