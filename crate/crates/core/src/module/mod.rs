//! Finite-dimensional right modules over a bound quiver algebra.
//!
//! A module of dimension `m` stores one `m x m` matrix per basis path `b`,
//! acting on row vectors: `v ↦ v·ρ(b)`. Homomorphisms are matrices `F` with
//! `ρ_M(b)·F = F·ρ_N(b)`, composed left to right.

mod ar;
mod bimod;
mod decompose;
mod fdalg;
mod hom;
mod resolution;
mod standard;

use std::fmt;
use std::sync::Arc;

pub use ar::{
    ar_sequence, auslander_reiten_knit, decompose_module, ext_dim, ext_space, has_injective_summand,
    has_projective_summand, module_left_minimal, module_right_minimal, tau, tau_inverse, transpose,
    verify_ar_sequence, ArSequence, ArSequenceCheck, ExtSpace, FactorRow,
};
pub(crate) use ar::kill_combos;
pub use bimod::{hom_into_bimodule, hom_out_of_bimodule, tensor_over_algebra, HomModule, Tensor};
pub use decompose::{
    decompose, decompositions_match, endomorphism_radical, indecomposables_isomorphic, is_indecomposable,
    is_isomorphic, iso_classes, radical_homs, KrullSchmidt, LocalRing, Summand,
};
pub use fdalg::{FdAlgebra, LocalDecision};
pub use hom::{hom_space, HomSpace};
pub use resolution::{
    injective_envelope, minimal_projective_resolution, projective_cover, top_generators, Cover, Resolution,
};
pub use standard::{dual_regular, dualize, dualize_map, injective, projective, regular, simple};

use crate::algebra::{same_algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Field, Mat, Quotient, Subspace};

#[derive(Clone, Debug)]
pub struct Module {
    alg: AlgebraRef,
    dim: usize,
    action: Arc<Vec<Mat>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Module) -> bool {
        self.dim == other.dim && same_algebra(&self.alg, &other.alg) && self.action == other.action
    }
}

impl Eq for Module {}

impl Module {
    /// Builds a module from the action of every basis path and checks the
    /// module axioms.
    pub fn new(alg: AlgebraRef, dim: usize, action: Vec<Mat>) -> Result<Module> {
        let m = Module::new_unchecked(alg, dim, action);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: AlgebraRef, dim: usize, action: Vec<Mat>) -> Module {
        Module { alg, dim, action: Arc::new(action) }
    }

    /// Builds the action of every path from vertex projections and arrow
    /// matrices on a common space.
    pub fn from_generators(alg: AlgebraRef, dim: usize, idempotents: &[Mat], arrows: &[Mat]) -> Result<Module> {
        let f = alg.field();
        if idempotents.len() != alg.num_vertices() || arrows.len() != alg.arrows().len() {
            return Err(Error::DimensionMismatch("wrong number of generator matrices".into()));
        }
        for m in idempotents.iter().chain(arrows) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("generator matrix is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        let action = alg
            .basis()
            .iter()
            .map(|b| {
                if b.arrows.is_empty() {
                    idempotents[b.source].clone()
                } else {
                    b.arrows.iter().fold(Mat::identity(f, dim), |acc, &a| acc.mul(&arrows[a]))
                }
            })
            .collect();
        Module::new(alg, dim, action)
    }

    /// A representation: a space per vertex and a matrix `dim_s x dim_t` per
    /// arrow `s -> t`.
    pub fn from_representation(alg: AlgebraRef, dims: &[usize], maps: &[Mat]) -> Result<Module> {
        let f = alg.field();
        if dims.len() != alg.num_vertices() || maps.len() != alg.arrows().len() {
            return Err(Error::DimensionMismatch("representation shape does not match the quiver".into()));
        }
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| { let o = *acc; *acc += d; Some(o) }).collect();
        let total: usize = dims.iter().sum();
        let idempotents: Vec<Mat> = (0..dims.len())
            .map(|v| {
                let mut e = Mat::zeros(f, total, total);
                for i in 0..dims[v] {
                    e.set(offsets[v] + i, offsets[v] + i, f.one());
                }
                e
            })
            .collect();
        let mut arrows = Vec::new();
        for (a, (_, s, t)) in alg.arrows().iter().enumerate() {
            let m = &maps[a];
            if m.rows() != dims[*s] || m.cols() != dims[*t] {
                return Err(Error::DimensionMismatch(format!("arrow {} needs a {}x{} matrix", alg.arrows()[a].0, dims[*s], dims[*t])));
            }
            let mut big = Mat::zeros(f, total, total);
            big.set_block(offsets[*s], offsets[*t], m);
            arrows.push(big);
        }
        Module::from_generators(alg, total, &idempotents, &arrows)
    }

    pub fn zero(alg: AlgebraRef) -> Module {
        let f = alg.field();
        let n = alg.dim();
        Module::new_unchecked(alg, 0, vec![Mat::zeros(f, 0, 0); n])
    }

    pub fn alg(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action of the `i`-th basis path.
    pub fn act(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Action of an arbitrary algebra element given as a row over the basis.
    pub fn act_by(&self, a: &Mat) -> Mat {
        let f = self.field();
        let mut out = Mat::zeros(f, self.dim, self.dim);
        for (i, m) in self.action.iter().enumerate() {
            let c = a.get(0, i);
            if !f.is_zero(c) {
                out.axpy(c, m);
            }
        }
        out
    }

    /// Actions of the idempotents and arrows, which generate the algebra.
    pub fn generator_actions(&self) -> Vec<&Mat> {
        self.alg.generators().into_iter().map(|g| &self.action[g]).collect()
    }

    pub fn arrow_actions(&self) -> Vec<&Mat> {
        (0..self.alg.arrows().len()).map(|a| &self.action[self.alg.arrow_element(a)]).collect()
    }

    pub fn check(&self) -> Result<()> {
        let a = &self.alg;
        let f = self.field();
        if self.action.len() != a.dim() {
            return Err(Error::Invalid("one action matrix per basis path is required".into()));
        }
        if self.action.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return Err(Error::DimensionMismatch("action matrix has the wrong size".into()));
        }
        if self.act_by(&a.unit()) != Mat::identity(f, self.dim) {
            return Err(Error::Invalid("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.action[i].mul(&self.action[j]) != self.act_by(&a.product(i, j)) {
                    return Err(Error::Invalid(format!(
                        "action is not compatible with the product {}·{}",
                        a.basis()[i].label,
                        a.basis()[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// `dim M e_v` for each vertex.
    pub fn dimension_vector(&self) -> Vec<usize> {
        (0..self.alg.num_vertices()).map(|v| self.action[self.alg.idempotent(v)].rank()).collect()
    }

    /// Smallest submodule containing the given rows.
    pub fn generated_by(&self, rows: &Mat) -> Subspace {
        let f = self.field();
        let mut span = Subspace::span(rows);
        loop {
            let basis = span.basis().clone();
            let mut parts = vec![basis.clone()];
            for g in self.generator_actions() {
                parts.push(basis.mul(g));
            }
            let refs: Vec<&Mat> = parts.iter().collect();
            let next = Subspace::span(&Mat::vstack(f, self.dim, &refs));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn is_submodule(&self, rows: &Mat) -> bool {
        let span = Subspace::span(rows);
        self.generator_actions().iter().all(|g| {
            let img = span.basis().mul(g);
            (0..img.rows()).all(|r| span.contains(&img.row(r)))
        })
    }

    /// The submodule spanned by `rows` (which must be closed under the
    /// action) with the inclusion map.
    pub fn submodule(&self, rows: &Mat) -> Result<(Module, ModuleMap)> {
        if !self.is_submodule(rows) {
            return Err(Error::Invalid("rows do not span a submodule".into()));
        }
        let basis = rows.row_space();
        let coords = Coordinates::new(basis.clone())?;
        let action = self.action.iter().map(|m| coords.coords_unchecked(&basis.mul(m))).collect();
        let sub = Module::new_unchecked(self.alg.clone(), basis.rows(), action);
        let incl = ModuleMap::new_unchecked(sub.clone(), self.clone(), basis);
        Ok((sub, incl))
    }

    /// `M / span(rows)` with the projection map.
    pub fn quotient(&self, rows: &Mat) -> Result<(Module, ModuleMap)> {
        if !self.is_submodule(rows) {
            return Err(Error::Invalid("rows do not span a submodule".into()));
        }
        let q = Quotient::of_ambient(rows)?;
        Ok(self.quotient_by(&q))
    }

    pub(crate) fn quotient_by(&self, q: &Quotient) -> (Module, ModuleMap) {
        let action = self.action.iter().map(|m| q.project_unchecked(&q.reps().mul(m))).collect();
        let quo = Module::new_unchecked(self.alg.clone(), q.dim(), action);
        let proj = ModuleMap::new_unchecked(self.clone(), quo.clone(), q.projection_matrix());
        (quo, proj)
    }

    /// `rad M`, spanned by the images of the arrows.
    pub fn radical(&self) -> Subspace {
        let f = self.field();
        let parts: Vec<&Mat> = self.arrow_actions();
        Subspace::span(&Mat::vstack(f, self.dim, &parts))
    }

    /// `soc M`, the common kernel of the arrows.
    pub fn socle(&self) -> Subspace {
        let f = self.field();
        let arrows = self.arrow_actions();
        if arrows.is_empty() {
            return Subspace::full(f, self.dim);
        }
        let joined = Mat::hstack(&arrows);
        Subspace::span(&joined.left_kernel())
    }

    pub fn top_dim(&self) -> usize {
        self.dim - self.radical().dim()
    }

    /// Direct sum with canonical injections and projections.
    pub fn direct_sum(parts: &[Module]) -> Result<DirectSum> {
        let alg = match parts.first() {
            Some(m) => m.alg.clone(),
            None => return Err(Error::Invalid("empty direct sum needs an algebra".into())),
        };
        Module::direct_sum_over(alg, parts)
    }

    pub fn direct_sum_over(alg: AlgebraRef, parts: &[Module]) -> Result<DirectSum> {
        let f = alg.field();
        if parts.iter().any(|m| !same_algebra(&m.alg, &alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let total: usize = parts.iter().map(|m| m.dim).sum();
        let action = (0..alg.dim())
            .map(|i| {
                let blocks: Vec<&Mat> = parts.iter().map(|m| &m.action[i]).collect();
                Mat::block_diag(f, &blocks)
            })
            .collect();
        let sum = Module::new_unchecked(alg, total, action);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut off = 0;
        for m in parts {
            let mut inj = Mat::zeros(f, m.dim, total);
            inj.set_block(0, off, &Mat::identity(f, m.dim));
            projections.push(ModuleMap::new_unchecked(sum.clone(), m.clone(), inj.transpose()));
            injections.push(ModuleMap::new_unchecked(m.clone(), sum.clone(), inj));
            off += m.dim;
        }
        Ok(DirectSum { module: sum, injections, projections })
    }

    /// Applies a change of basis: the rows of `basis` become the new basis.
    pub fn change_basis(&self, basis: &Mat) -> Result<(Module, ModuleMap)> {
        let inv = basis.inverse().ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
        let action = self.action.iter().map(|m| basis.mul(m).mul(&inv)).collect();
        let new = Module::new_unchecked(self.alg.clone(), self.dim, action);
        let iso = ModuleMap::new_unchecked(new.clone(), self.clone(), basis.clone());
        Ok((new, iso))
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dv: Vec<String> = self.dimension_vector().iter().map(|d| d.to_string()).collect();
        write!(f, "module of dimension {} (dimension vector {})", self.dim, dv.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub src: Module,
    pub tgt: Module,
    pub mat: Mat,
}

impl ModuleMap {
    pub fn new(src: Module, tgt: Module, mat: Mat) -> Result<ModuleMap> {
        if !same_algebra(&src.alg, &tgt.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if mat.rows() != src.dim || mat.cols() != tgt.dim {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                src.dim,
                tgt.dim
            )));
        }
        let map = ModuleMap { src, tgt, mat };
        if !map.is_homomorphism() {
            return Err(Error::Invalid("matrix does not commute with the action".into()));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(src: Module, tgt: Module, mat: Mat) -> ModuleMap {
        ModuleMap { src, tgt, mat }
    }

    pub fn is_homomorphism(&self) -> bool {
        let gens = self.src.alg.generators();
        gens.iter().all(|&g| self.src.action[g].mul(&self.mat) == self.mat.mul(&self.tgt.action[g]))
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Mat::identity(m.field(), m.dim))
    }

    pub fn zero(src: &Module, tgt: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(src.clone(), tgt.clone(), Mat::zeros(src.field(), src.dim, tgt.dim))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(self.src.clone(), next.tgt.clone(), self.mat.mul(&next.mat))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(self.src.clone(), self.tgt.clone(), self.mat.add(&other.mat))
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(self.src.clone(), self.tgt.clone(), self.mat.sub(&other.mat))
    }

    pub fn scale(&self, s: &crate::linalg::Scalar) -> ModuleMap {
        ModuleMap::new_unchecked(self.src.clone(), self.tgt.clone(), self.mat.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim == self.tgt.dim && self.mat.is_invertible()
    }

    pub fn kernel(&self) -> Result<(Module, ModuleMap)> {
        self.src.submodule(&self.mat.left_kernel())
    }

    pub fn image(&self) -> Result<(Module, ModuleMap)> {
        self.tgt.submodule(&self.mat)
    }

    pub fn cokernel(&self) -> Result<(Module, ModuleMap)> {
        self.tgt.quotient(&self.mat)
    }

    pub fn is_injective(&self) -> bool {
        self.mat.rank() == self.src.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.mat.rank() == self.tgt.dim
    }
}
