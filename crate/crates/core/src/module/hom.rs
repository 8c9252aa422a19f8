use super::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Mat};

/// A basis of `Hom_A(M, N)` with coordinates on the flattened matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: Module,
    pub tgt: Module,
    basis: Vec<Mat>,
    coords: Coordinates,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn maps(&self) -> Vec<ModuleMap> {
        self.basis
            .iter()
            .map(|m| ModuleMap::new_unchecked(self.src.clone(), self.tgt.clone(), m.clone()))
            .collect()
    }

    /// Coordinates of `mat` in the basis, or `None` if it is not a homomorphism.
    pub fn coords(&self, mat: &Mat) -> Option<Mat> {
        self.coords.coords(&mat.flatten())
    }

    pub fn element(&self, coeffs: &Mat) -> Mat {
        self.coords.combine(coeffs).reshape(self.src.dim(), self.tgt.dim())
    }

    /// Flattened basis, one map per row.
    pub fn flat_basis(&self) -> &Mat {
        self.coords.basis()
    }
}

/// Linear conditions on `vec(F)` (row-major) for `F` to commute with all
/// generators: the columns of the result.
pub(crate) fn commutation_system(src: &[&Mat], tgt: &[&Mat], m: usize, n: usize) -> Mat {
    let f = match src.first().or(tgt.first()) {
        Some(x) => x.field(),
        None => unreachable!("an algebra has at least one generator"),
    };
    let im = Mat::identity(f, m);
    let inn = Mat::identity(f, n);
    let blocks: Vec<Mat> = src
        .iter()
        .zip(tgt)
        .map(|(r, s)| r.transpose().kron(&inn).sub(&im.kron(s)))
        .collect();
    let refs: Vec<&Mat> = blocks.iter().collect();
    Mat::hstack(&refs)
}

pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    if !crate::algebra::same_algebra(m.alg(), n.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let flat = if dm == 0 || dn == 0 {
        Mat::zeros(f, 0, dm * dn)
    } else {
        commutation_system(&m.generator_actions(), &n.generator_actions(), dm, dn).left_kernel()
    };
    let basis = (0..flat.rows()).map(|r| flat.row(r).reshape(dm, dn)).collect();
    let coords = Coordinates::new(flat)?;
    Ok(HomSpace { src: m.clone(), tgt: n.clone(), basis, coords })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::module::{injective, projective, simple};

    #[test]
    fn hom_dimensions_for_a2() {
        let a = Arc::new(algebra_from_text("field GF(5); vertex 1 2; arrow a: 1 -> 2;").unwrap());
        let (p1, p2) = (projective(&a, 0), projective(&a, 1));
        // Hom(P_i, M) = M e_i
        assert_eq!(hom_space(&p2, &p1).unwrap().dim(), 1);
        assert_eq!(hom_space(&p1, &p2).unwrap().dim(), 0);
        assert_eq!(hom_space(&p1, &p1).unwrap().dim(), 1);
        assert_eq!(hom_space(&p1, &injective(&a, 1)).unwrap().dim(), 1);
        assert_eq!(hom_space(&simple(&a, 0), &p1).unwrap().dim(), 0);
        for h in hom_space(&p2, &p1).unwrap().maps() {
            assert!(h.is_homomorphism());
        }
    }
}
