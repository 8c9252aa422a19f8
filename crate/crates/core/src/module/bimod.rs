use super::hom::commutation_system;
use super::{Module, ModuleMap};
use crate::algebra::{AlgebraRef, Bimodule};
use crate::error::Result;
use crate::linalg::{Coordinates, Mat, Quotient};

/// `M ⊗_A B` realized as a quotient of `M ⊗_k B`; index `(i, x)` of the
/// ambient space is `i·dim B + x`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: Module,
    pub src: Module,
    pub quotient: Quotient,
    pub bdim: usize,
}

impl Tensor {
    /// Class of `m ⊗ x`.
    pub fn class_of(&self, m: &Mat, x: &Mat) -> Mat {
        self.quotient.project_unchecked(&m.kron(x))
    }

    /// `f ⊗ B: self -> target` for `f: self.src -> target.src`.
    pub fn map(&self, f: &ModuleMap, target: &Tensor) -> ModuleMap {
        let fk = f.mat.kron(&Mat::identity(f.src.field(), self.bdim));
        let mat = target.quotient.project_unchecked(&self.quotient.reps().mul(&fk));
        ModuleMap::new_unchecked(self.module.clone(), target.module.clone(), mat)
    }
}

pub fn tensor_over_algebra(m: &Module, b: &Bimodule) -> Result<Tensor> {
    let f = m.field();
    let alg = m.alg();
    let (dm, db) = (m.dim(), b.dim);
    let im = Mat::identity(f, dm);
    let ib = Mat::identity(f, db);
    let rels: Vec<Mat> = alg
        .generators()
        .into_iter()
        .map(|g| m.act(g).kron(&ib).sub(&im.kron(&b.left[g])))
        .collect();
    let refs: Vec<&Mat> = rels.iter().collect();
    let sub = Mat::vstack(f, dm * db, &refs);
    let quotient = Quotient::of_ambient(&sub)?;
    let action = (0..alg.dim())
        .map(|i| {
            let big = im.kron(&b.right[i]);
            quotient.project_unchecked(&quotient.reps().mul(&big))
        })
        .collect();
    let module = Module::new_unchecked(alg.clone(), quotient.dim(), action);
    Ok(Tensor { module, src: m.clone(), quotient, bdim: db })
}

/// A space of homomorphisms carrying a module structure, with coordinates.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: Module,
    pub basis: Vec<Mat>,
    coords: Coordinates,
    shape: (usize, usize),
}

impl HomModule {
    pub fn coords(&self, mat: &Mat) -> Option<Mat> {
        self.coords.coords(&mat.flatten())
    }

    pub fn element(&self, coeffs: &Mat) -> Mat {
        self.coords.combine(coeffs).reshape(self.shape.0, self.shape.1)
    }
}

fn hom_module(
    alg: AlgebraRef,
    src_gens: Vec<&Mat>,
    tgt_gens: Vec<&Mat>,
    shape: (usize, usize),
    act: impl Fn(usize, &Mat) -> Mat,
    n_basis: usize,
) -> Result<HomModule> {
    let f = alg.field();
    let flat = if shape.0 == 0 || shape.1 == 0 {
        Mat::zeros(f, 0, shape.0 * shape.1)
    } else {
        commutation_system(&src_gens, &tgt_gens, shape.0, shape.1).left_kernel()
    };
    let basis: Vec<Mat> = (0..flat.rows()).map(|r| flat.row(r).reshape(shape.0, shape.1)).collect();
    let coords = Coordinates::new(flat)?;
    let action = (0..n_basis)
        .map(|i| {
            let rows: Vec<Mat> = basis.iter().map(|h| act(i, h).flatten()).collect();
            let refs: Vec<&Mat> = rows.iter().collect();
            coords.coords_unchecked(&Mat::vstack(f, shape.0 * shape.1, &refs))
        })
        .collect();
    let module = Module::new_unchecked(alg, basis.len(), action);
    Ok(HomModule { module, basis, coords, shape })
}

/// `Hom_A(M, B)` as a right module over the opposite algebra `op` through
/// the left action of `B`: `(f·a)(m) = a·f(m)`.
pub fn hom_into_bimodule(m: &Module, b: &Bimodule, op: &AlgebraRef) -> Result<HomModule> {
    let gens = m.alg().generators();
    let src: Vec<&Mat> = gens.iter().map(|&g| m.act(g)).collect();
    let tgt: Vec<&Mat> = gens.iter().map(|&g| &b.right[g]).collect();
    hom_module(op.clone(), src, tgt, (m.dim(), b.dim), |i, h| h.mul(&b.left[i]), m.alg().dim())
}

/// `Hom_A(B, N)` as a right `A`-module through the left action of `B`:
/// `(f·a)(x) = f(a·x)`.
pub fn hom_out_of_bimodule(b: &Bimodule, n: &Module) -> Result<HomModule> {
    let gens = n.alg().generators();
    let src: Vec<&Mat> = gens.iter().map(|&g| &b.right[g]).collect();
    let tgt: Vec<&Mat> = gens.iter().map(|&g| n.act(g)).collect();
    hom_module(n.alg().clone(), src, tgt, (b.dim, n.dim()), |i, h| b.left[i].mul(h), n.alg().dim())
}
