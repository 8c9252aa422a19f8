//! Transpose, Auslander-Reiten translates, Ext groups and almost split
//! sequences of modules.

use std::sync::Arc;

use super::bimod::hom_into_bimodule;
use super::decompose::{decompose, endomorphism_radical, iso_classes, radical_homs, KrullSchmidt, LocalRing};
use super::hom::hom_space;
use super::resolution::{injective_envelope, minimal_projective_resolution, projective_cover, Resolution};
use super::standard::{injective, projective, simple};
use super::{Module, ModuleMap};
use crate::algebra::{AlgebraRef, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Quotient};

fn with_algebra(alg: &AlgebraRef, m: &Module, transpose: bool) -> Module {
    let action = if transpose {
        m.actions().iter().map(Mat::transpose).collect()
    } else {
        m.actions().to_vec()
    };
    Module::new_unchecked(alg.clone(), m.dim(), action)
}

/// `Tr M` over the opposite algebra, from the minimal presentation
/// `P_1 -> P_0 -> M -> 0`.
pub fn transpose(m: &Module) -> Result<Module> {
    let alg = m.alg();
    let op = Arc::new(alg.opposite());
    let reg = Bimodule::regular(alg);
    let res = minimal_projective_resolution(m, 1)?;
    let p0 = &res.terms[0].module;
    let h0 = hom_into_bimodule(p0, &reg, &op)?;
    let (h1, d1) = match res.terms.get(1) {
        Some(t) => (hom_into_bimodule(&t.module, &reg, &op)?, res.differentials[0].mat.clone()),
        None => {
            let z = Module::zero(alg.clone());
            (hom_into_bimodule(&z, &reg, &op)?, Mat::zeros(m.field(), 0, p0.dim()))
        }
    };
    let f = m.field();
    let rows: Vec<Mat> = h0
        .basis
        .iter()
        .map(|h| h1.coords(&d1.mul(h)).expect("composite is a homomorphism"))
        .collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let image = Mat::vstack(f, h1.module.dim(), &refs);
    Ok(h1.module.quotient(&image)?.0)
}

fn summand_is(m: &Module, projective_side: bool) -> Result<bool> {
    for s in decompose(m)? {
        let d = s.object.dim();
        let cover = if projective_side { projective_cover(&s.object)? } else { injective_envelope(&s.object)? };
        if cover.module.dim() == d {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn has_projective_summand(m: &Module) -> Result<bool> {
    summand_is(m, true)
}

pub fn has_injective_summand(m: &Module) -> Result<bool> {
    summand_is(m, false)
}

/// `τM = D Tr M`.
pub fn tau(m: &Module) -> Result<Module> {
    if has_projective_summand(m)? {
        return Err(Error::Projective(format!("{m}")));
    }
    Ok(with_algebra(m.alg(), &transpose(m)?, true))
}

/// `τ⁻¹M = Tr D M`.
pub fn tau_inverse(m: &Module) -> Result<Module> {
    if has_injective_summand(m)? {
        return Err(Error::Injective(format!("{m}")));
    }
    let op = Arc::new(m.alg().opposite());
    let dm = with_algebra(&op, m, true);
    Ok(with_algebra(m.alg(), &transpose(&dm)?, false))
}

/// `Ext^i(M, N)` as cocycles `P_i -> N` modulo coboundaries.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub degree: usize,
    pub resolution: Resolution,
    pub target: Module,
    hom: Option<super::hom::HomSpace>,
    quotient: Option<Quotient>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.quotient.as_ref().map_or(0, Quotient::dim)
    }

    /// Representative cocycles `P_i -> N`, one per basis class.
    pub fn cocycles(&self) -> Vec<Mat> {
        match (&self.hom, &self.quotient) {
            (Some(h), Some(q)) => (0..q.dim()).map(|r| h.element(&q.reps().row(r))).collect(),
            _ => vec![],
        }
    }

    /// Class of a cocycle in the basis of [`cocycles`](Self::cocycles).
    pub fn class_of(&self, cocycle: &Mat) -> Option<Mat> {
        let (h, q) = (self.hom.as_ref()?, self.quotient.as_ref()?);
        q.project(&h.coords(cocycle)?)
    }
}

pub fn ext_space(m: &Module, n: &Module, i: usize) -> Result<ExtSpace> {
    if i == 0 {
        return Err(Error::Invalid("Ext degree must be positive".into()));
    }
    let f = m.field();
    let resolution = minimal_projective_resolution(m, i + 1)?;
    if resolution.terms.len() <= i {
        return Ok(ExtSpace { degree: i, resolution, target: n.clone(), hom: None, quotient: None });
    }
    let pi = &resolution.terms[i].module;
    let hom = hom_space(pi, n)?;
    let width = hom.dim();
    let cocycle_rows = match resolution.differentials.get(i) {
        Some(d) => {
            let rows: Vec<Mat> = hom.basis().iter().map(|h| d.mat.mul(h).flatten()).collect();
            let refs: Vec<&Mat> = rows.iter().collect();
            let cols = resolution.terms[i + 1].module.dim() * n.dim();
            if cols == 0 {
                Mat::identity(f, width)
            } else {
                Mat::vstack(f, cols, &refs).left_kernel()
            }
        }
        None => Mat::identity(f, width),
    };
    let prev = hom_space(&resolution.terms[i - 1].module, n)?;
    let d = &resolution.differentials[i - 1].mat;
    let bound_rows: Vec<Mat> = prev
        .basis()
        .iter()
        .map(|g| hom.coords(&d.mul(g)).expect("coboundary is a homomorphism"))
        .collect();
    let refs: Vec<&Mat> = bound_rows.iter().collect();
    let bounds = Mat::vstack(f, width, &refs);
    let quotient = Quotient::new(&bounds, &cocycle_rows)?;
    Ok(ExtSpace { degree: i, resolution, target: n.clone(), hom: Some(hom), quotient: Some(quotient) })
}

pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize> {
    Ok(ext_space(m, n, i)?.dim())
}

/// An almost split sequence `0 -> N -> E -> M -> 0` with `N = τM`.
#[derive(Clone, Debug)]
pub struct ArSequence {
    pub left: Module,
    pub middle: Module,
    pub right: Module,
    pub alpha: ModuleMap,
    pub beta: ModuleMap,
}

/// Solves `lhs·H = rhs` for `H` in the span of `basis` (all maps `X -> Y`).
fn lift_through(basis: &[Mat], lhs: impl Fn(&Mat) -> Mat, rhs: &Mat) -> Result<Option<Mat>> {
    let f = rhs.field();
    if basis.is_empty() {
        return Ok(if rhs.is_zero() { Some(Mat::zeros(f, 0, 0)) } else { None });
    }
    let rows: Vec<Mat> = basis.iter().map(|b| lhs(b).flatten()).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let sys = Mat::vstack(f, rhs.rows() * rhs.cols(), &refs);
    let sol = sys.solve_left(&rhs.flatten())?;
    Ok(sol.map(|c| {
        let mut acc = Mat::zeros(f, basis[0].rows(), basis[0].cols());
        for (k, b) in basis.iter().enumerate() {
            acc.axpy(c.get(0, k), b);
        }
        acc
    }))
}

pub fn ar_sequence(m: &Module) -> Result<ArSequence> {
    if m.is_zero() {
        return Err(Error::ZeroObject("ar_sequence needs a nonzero module".into()));
    }
    if LocalRing::of(m)?.is_err() {
        return Err(Error::Decomposable(format!("{m}")));
    }
    if projective_cover(m)?.module.dim() == m.dim() {
        return Err(Error::Projective(format!("{m}")));
    }
    let f = m.field();
    let n = tau(m)?;
    let ext = ext_space(m, &n, 1)?;
    if ext.dim() == 0 {
        return Err(Error::Verification("Ext^1(M, τM) vanishes".into()));
    }
    let res = &ext.resolution;
    let (p0, p1) = (&res.terms[0].module, &res.terms[1].module);
    let eps = &res.terms[0].map.mat;
    let d1 = &res.differentials[0].mat;
    let end0 = hom_space(p0, p0)?;
    let end1 = hom_space(p1, p1)?;
    let cocycles = ext.cocycles();

    let mut action_blocks = Vec::new();
    for r in endomorphism_radical(m)? {
        let h0 = lift_through(end0.basis(), |b| b.mul(eps), &eps.mul(&r))?
            .ok_or_else(|| Error::Verification("endomorphism does not lift to P_0".into()))?;
        let h1 = lift_through(end1.basis(), |b| b.mul(d1), &d1.mul(&h0))?
            .ok_or_else(|| Error::Verification("endomorphism does not lift to P_1".into()))?;
        let rows: Vec<Mat> = cocycles
            .iter()
            .map(|phi| ext.class_of(&h1.mul(phi)).expect("pullback of a cocycle is a cocycle"))
            .collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        action_blocks.push(Mat::vstack(f, ext.dim(), &refs));
    }
    let socle = if action_blocks.is_empty() {
        Mat::identity(f, ext.dim())
    } else {
        let refs: Vec<&Mat> = action_blocks.iter().collect();
        Mat::hstack(&refs).left_kernel()
    };
    if socle.rows() == 0 {
        return Err(Error::Verification("socle of Ext^1(M, τM) is zero".into()));
    }
    let class = socle.row(0);
    let mut phi = Mat::zeros(f, p1.dim(), n.dim());
    for (k, c) in cocycles.iter().enumerate() {
        phi.axpy(class.get(0, k), c);
    }
    let (middle, alpha, beta) = extension_from_cocycle(m, &n, p0, eps, d1, &phi)?;
    Ok(ArSequence { left: n, middle, right: m.clone(), alpha, beta })
}

/// The pushout `(N ⊕ P_0) / {(φ(p), -d_1(p))}` with its maps.
fn extension_from_cocycle(
    m: &Module,
    n: &Module,
    p0: &Module,
    eps: &Mat,
    d1: &Mat,
    phi: &Mat,
) -> Result<(Module, ModuleMap, ModuleMap)> {
    let f = m.field();
    let sum = Module::direct_sum(&[n.clone(), p0.clone()])?.module;
    let rels = Mat::hstack(&[phi, &d1.neg()]);
    let (e, proj) = sum.quotient(&rels)?;
    let incl_n = Mat::hstack(&[&Mat::identity(f, n.dim()), &Mat::zeros(f, n.dim(), p0.dim())]);
    let alpha = ModuleMap::new_unchecked(n.clone(), e.clone(), incl_n.mul(&proj.mat));
    let to_m = Mat::vstack(f, m.dim(), &[&Mat::zeros(f, n.dim(), m.dim()), eps]);
    // `proj` is surjective, so β is determined by lifting through it
    let lifts = proj.mat.solve_left(&Mat::identity(f, e.dim()))?.ok_or_else(|| Error::Internal("projection has no section".into()))?;
    let beta = ModuleMap::new_unchecked(e.clone(), m.clone(), lifts.mul(&to_m));
    Ok((e, alpha, beta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRow {
    pub index: usize,
    pub radical_dim: usize,
    pub factors: bool,
}

#[derive(Clone, Debug)]
pub struct ArSequenceCheck {
    pub exact: bool,
    pub non_split: bool,
    pub right_minimal: bool,
    pub left_minimal: bool,
    pub right_factorization: Vec<FactorRow>,
    pub left_factorization: Vec<FactorRow>,
}

impl ArSequenceCheck {
    pub fn ok(&self) -> bool {
        self.exact
            && self.non_split
            && self.right_minimal
            && self.left_minimal
            && self.right_factorization.iter().all(|r| r.factors)
            && self.left_factorization.iter().all(|r| r.factors)
    }
}

fn span_contains(span: &[Mat], targets: &[Mat]) -> Result<bool> {
    let f = match targets.first() {
        Some(t) => t.field(),
        None => return Ok(true),
    };
    let width = targets[0].rows() * targets[0].cols();
    let rows: Vec<Mat> = span.iter().map(Mat::flatten).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let space = crate::linalg::Subspace::span(&Mat::vstack(f, width, &refs));
    Ok(targets.iter().all(|t| space.contains(&t.flatten())))
}

/// `{h ∈ End(E) : h·β = 0} ⊆ J(End E)`.
pub fn module_right_minimal(beta: &ModuleMap) -> Result<bool> {
    let f = beta.src.field();
    let ends = beta.src.endomorphisms()?;
    let combos = kill_combos(&ends, |h| h.mul(&beta.mat), f)?;
    let rad = endomorphism_radical(&beta.src)?;
    span_contains(&rad, &combos)
}

/// `{h ∈ End(E) : α·h = 0} ⊆ J(End E)`.
pub fn module_left_minimal(alpha: &ModuleMap) -> Result<bool> {
    let f = alpha.tgt.field();
    let ends = alpha.tgt.endomorphisms()?;
    let combos = kill_combos(&ends, |h| alpha.mat.mul(h), f)?;
    let rad = endomorphism_radical(&alpha.tgt)?;
    span_contains(&rad, &combos)
}

pub(crate) fn kill_combos(basis: &[Mat], apply: impl Fn(&Mat) -> Mat, f: crate::linalg::Field) -> Result<Vec<Mat>> {
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let rows: Vec<Mat> = basis.iter().map(|b| apply(b).flatten()).collect();
    let width = rows[0].cols();
    let refs: Vec<&Mat> = rows.iter().collect();
    let combos = if width == 0 { Mat::identity(f, basis.len()) } else { Mat::vstack(f, width, &refs).left_kernel() };
    Ok((0..combos.rows())
        .map(|r| {
            let mut acc = Mat::zeros(f, basis[0].rows(), basis[0].cols());
            for (k, b) in basis.iter().enumerate() {
                acc.axpy(combos.get(r, k), b);
            }
            acc
        })
        .collect())
}

pub fn verify_ar_sequence(seq: &ArSequence, corpus: &[Module]) -> Result<ArSequenceCheck> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let f = seq.right.field();
    let (a, b) = (&seq.alpha, &seq.beta);
    let exact = a.is_homomorphism()
        && b.is_homomorphism()
        && a.is_injective()
        && b.is_surjective()
        && a.mat.mul(&b.mat).is_zero()
        && seq.left.dim() + seq.right.dim() == seq.middle.dim();
    let sections = hom_space(&seq.right, &seq.middle)?;
    let non_split = lift_through(sections.basis(), |s| s.mul(&b.mat), &Mat::identity(f, seq.right.dim()))?.is_none();
    let dm = decompose(&seq.right)?;
    let dn = decompose(&seq.left)?;
    let mut right_factorization = Vec::new();
    let mut left_factorization = Vec::new();
    for (index, l) in corpus.iter().enumerate() {
        let dl = decompose(l)?;
        let rad = radical_homs(&dl, &dm, &l.homs_to(&seq.right)?)?;
        let through: Vec<Mat> = l.homs_to(&seq.middle)?.iter().map(|g| g.mul(&b.mat)).collect();
        right_factorization.push(FactorRow { index, radical_dim: rad.len(), factors: span_contains(&through, &rad)? });
        let rad = radical_homs(&dn, &dl, &seq.left.homs_to(l)?)?;
        let through: Vec<Mat> = seq.middle.homs_to(l)?.iter().map(|g| a.mat.mul(g)).collect();
        left_factorization.push(FactorRow { index, radical_dim: rad.len(), factors: span_contains(&through, &rad)? });
    }
    Ok(ArSequenceCheck {
        exact,
        non_split,
        right_minimal: module_right_minimal(b)?,
        left_minimal: module_left_minimal(a)?,
        right_factorization,
        left_factorization,
    })
}

/// Indecomposable summands with multiplicities.
pub fn decompose_module(m: &Module) -> Result<Vec<(Module, usize)>> {
    let parts = decompose(m)?;
    let classes = iso_classes(&parts)?;
    Ok(classes.into_iter().map(|c| (parts[c[0]].object.clone(), c.len())).collect())
}

/// Indecomposables reachable from simples, projectives and injectives by
/// `τ`, `τ⁻¹` and middle terms of almost split sequences, up to the given
/// dimension and count.
pub fn auslander_reiten_knit(alg: &AlgebraRef, dim_bound: usize, max_objects: usize) -> Result<Vec<Module>> {
    let mut found: Vec<super::decompose::Summand<Module>> = Vec::new();
    let mut queue: Vec<Module> = Vec::new();
    for v in 0..alg.num_vertices() {
        queue.push(simple(alg, v));
        queue.push(projective(alg, v));
        queue.push(injective(alg, v));
    }
    let mut cursor = 0;
    while cursor < queue.len() && found.len() < max_objects {
        let cand = queue[cursor].clone();
        cursor += 1;
        if cand.dim() == 0 || cand.dim() > dim_bound {
            continue;
        }
        for part in decompose(&cand)? {
            if part.object.dim() > dim_bound || found.len() >= max_objects {
                continue;
            }
            let mut known = false;
            for k in &found {
                if k.object.dimension_vector() == part.object.dimension_vector()
                    && super::decompose::indecomposables_isomorphic(k, &part)?
                {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            let x = part.object.clone();
            if projective_cover(&x)?.module.dim() != x.dim() {
                let seq = ar_sequence(&x)?;
                queue.push(seq.left.clone());
                queue.push(seq.middle.clone());
            }
            if injective_envelope(&x)?.module.dim() != x.dim() {
                queue.push(tau_inverse(&x)?);
            }
            found.push(part);
        }
    }
    Ok(found.into_iter().map(|s| s.object).collect())
}
