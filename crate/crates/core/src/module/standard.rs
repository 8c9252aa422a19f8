use std::sync::Arc;

use super::{Module, ModuleMap};
use crate::algebra::{AlgebraRef, Bimodule};
use crate::linalg::Mat;

/// `P_v = e_v A` on the basis of paths starting at `v`.
pub fn projective(alg: &AlgebraRef, v: usize) -> Module {
    let idx = alg.paths_from(v);
    let action = (0..alg.dim())
        .map(|b| alg.right_mult(b).select_rows(&idx).select_cols(&idx))
        .collect();
    Module::new_unchecked(alg.clone(), idx.len(), action)
}

/// `I_v = D(A e_v)` on the dual basis of paths ending at `v`.
pub fn injective(alg: &AlgebraRef, v: usize) -> Module {
    let idx = alg.paths_to(v);
    let action = (0..alg.dim())
        .map(|b| alg.left_mult(b).transpose().select_rows(&idx).select_cols(&idx))
        .collect();
    Module::new_unchecked(alg.clone(), idx.len(), action)
}

pub fn simple(alg: &AlgebraRef, v: usize) -> Module {
    let f = alg.field();
    let e = alg.idempotent(v);
    let action = (0..alg.dim())
        .map(|b| if b == e { Mat::identity(f, 1) } else { Mat::zeros(f, 1, 1) })
        .collect();
    Module::new_unchecked(alg.clone(), 1, action)
}

/// `A_A`.
pub fn regular(alg: &AlgebraRef) -> Module {
    let b = Bimodule::regular(alg);
    Module::new_unchecked(alg.clone(), b.dim, b.right)
}

/// `DA` as a right module.
pub fn dual_regular(alg: &AlgebraRef) -> Module {
    let b = Bimodule::dual(alg);
    Module::new_unchecked(alg.clone(), b.dim, b.right)
}

/// `DM = Hom_k(M, k)` as a right module over the opposite algebra, in the
/// dual basis. Dualizing twice returns the original matrices.
pub fn dualize(m: &Module) -> Module {
    let op = Arc::new(m.alg().opposite());
    let action = m.actions().iter().map(Mat::transpose).collect();
    Module::new_unchecked(op, m.dim(), action)
}

/// `Df: DN -> DM` for `f: M -> N`, with the duals built by [`dualize`].
pub fn dualize_map(f: &ModuleMap, dm: &Module, dn: &Module) -> ModuleMap {
    ModuleMap::new_unchecked(dn.clone(), dm.clone(), f.mat.transpose())
}
