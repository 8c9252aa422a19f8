//! Krull-Schmidt decompositions by Fitting splitting, isomorphism tests for
//! indecomposables, and radical morphisms.

use super::fdalg::{FdAlgebra, LocalDecision};
use super::hom::hom_space;
use super::Module;
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Field, Mat, Quotient};

/// Objects of a Krull-Schmidt category realized on a total vector space,
/// with morphisms given by total-space matrices.
pub trait KrullSchmidt: Clone {
    fn total_dim(&self) -> usize;
    fn field(&self) -> Field;
    fn endomorphisms(&self) -> Result<Vec<Mat>>;
    /// The subobject whose basis is the given rows; the rows must span a
    /// direct summand compatible with the structure.
    fn restrict(&self, rows: &Mat) -> Result<Self>;
    fn homs_to(&self, other: &Self) -> Result<Vec<Mat>>;
}

impl KrullSchmidt for Module {
    fn total_dim(&self) -> usize {
        self.dim()
    }

    fn field(&self) -> Field {
        Module::field(self)
    }

    fn endomorphisms(&self) -> Result<Vec<Mat>> {
        Ok(hom_space(self, self)?.basis().to_vec())
    }

    fn restrict(&self, rows: &Mat) -> Result<Module> {
        let coords = Coordinates::new(rows.clone())?;
        let action = self.actions().iter().map(|m| coords.coords_unchecked(&rows.mul(m))).collect();
        Ok(Module::new_unchecked(self.alg().clone(), rows.rows(), action))
    }

    fn homs_to(&self, other: &Module) -> Result<Vec<Mat>> {
        Ok(hom_space(self, other)?.basis().to_vec())
    }
}

/// The local endomorphism ring of an indecomposable and its residue map.
#[derive(Clone, Debug)]
pub struct LocalRing {
    pub end: FdAlgebra,
    residue: Quotient,
}

impl LocalRing {
    pub fn of<T: KrullSchmidt>(x: &T) -> Result<std::result::Result<LocalRing, Mat>> {
        let end = FdAlgebra::new(x.field(), x.total_dim(), x.endomorphisms()?)?;
        match end.decide_local()? {
            LocalDecision::Local { radical } => {
                let residue = Quotient::of_ambient(radical.basis())?;
                Ok(Ok(LocalRing { end, residue }))
            }
            LocalDecision::Split(s) => Ok(Err(s)),
        }
    }

    /// Image of an endomorphism in `End/J`; zero exactly on the radical.
    pub fn residue(&self, m: &Mat) -> Mat {
        let c = self.end.coords(m).expect("endomorphism lies in the ring");
        self.residue.project_unchecked(&c)
    }

    pub fn in_radical(&self, m: &Mat) -> bool {
        self.residue(m).is_zero()
    }

    pub fn residue_dim(&self) -> usize {
        self.residue.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Summand<T> {
    pub object: T,
    /// Rows: the summand's basis inside the total space.
    pub incl: Mat,
    /// Total space onto the summand.
    pub proj: Mat,
    pub local: LocalRing,
}

pub fn decompose<T: KrullSchmidt>(x: &T) -> Result<Vec<Summand<T>>> {
    let f = x.field();
    let n = x.total_dim();
    let mut out = Vec::new();
    let mut stack = vec![(x.clone(), Mat::identity(f, n), Mat::identity(f, n))];
    while let Some((obj, incl, proj)) = stack.pop() {
        let d = obj.total_dim();
        if d == 0 {
            continue;
        }
        match LocalRing::of(&obj)? {
            Ok(local) => out.push(Summand { object: obj, incl, proj, local }),
            Err(split) => {
                let power = split.pow(d);
                let image = power.row_space();
                let kernel = power.left_kernel();
                if image.rows() == 0 || kernel.rows() == 0 {
                    return Err(Error::Verification("Fitting split is trivial".into()));
                }
                let both = Mat::vstack(f, d, &[&image, &kernel]);
                let inv = both.inverse().ok_or_else(|| Error::Verification("Fitting summands are not complementary".into()))?;
                let ri = image.rows();
                let proj_i = inv.submatrix(0, d, 0, ri);
                let proj_k = inv.submatrix(0, d, ri, d);
                // push the kernel first so the image summand is processed first
                stack.push((obj.restrict(&kernel)?, kernel.mul(&incl), proj.mul(&proj_k)));
                stack.push((obj.restrict(&image)?, image.mul(&incl), proj.mul(&proj_i)));
            }
        }
    }
    Ok(out)
}

pub fn is_indecomposable<T: KrullSchmidt>(x: &T) -> Result<bool> {
    if x.total_dim() == 0 {
        return Ok(false);
    }
    Ok(LocalRing::of(x)?.is_ok())
}

/// Isomorphism test for two indecomposables with known local rings.
pub fn indecomposables_isomorphic<T: KrullSchmidt>(x: &Summand<T>, y: &Summand<T>) -> Result<bool> {
    if x.object.total_dim() != y.object.total_dim() || x.local.residue_dim() != y.local.residue_dim() {
        return Ok(false);
    }
    let fs = x.object.homs_to(&y.object)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let gs = y.object.homs_to(&x.object)?;
    Ok(fs.iter().any(|f| gs.iter().any(|g| !x.local.in_radical(&f.mul(g)))))
}

/// Groups summands into isomorphism classes, preserving first-seen order.
pub fn iso_classes<T: KrullSchmidt>(parts: &[Summand<T>]) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for i in 0..parts.len() {
        for class in classes.iter_mut() {
            if indecomposables_isomorphic(&parts[class[0]], &parts[i])? {
                class.push(i);
                continue 'next;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

pub fn is_isomorphic<T: KrullSchmidt>(x: &T, y: &T) -> Result<bool> {
    if x.total_dim() != y.total_dim() {
        return Ok(false);
    }
    let dx = decompose(x)?;
    let dy = decompose(y)?;
    decompositions_match(&dx, &dy)
}

pub fn decompositions_match<T: KrullSchmidt>(dx: &[Summand<T>], dy: &[Summand<T>]) -> Result<bool> {
    if dx.len() != dy.len() {
        return Ok(false);
    }
    let mut used = vec![false; dy.len()];
    for a in dx {
        let mut found = false;
        for (j, b) in dy.iter().enumerate() {
            if !used[j] && indecomposables_isomorphic(a, b)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the radical `rad(L, X)` inside the span of `homs` (a basis of
/// `Hom(L, X)`): `g` is radical when every component `L_a -> X_b` composed
/// with every map back `X_b -> L_a` lies in `J(End L_a)`.
pub fn radical_homs<T: KrullSchmidt>(l: &[Summand<T>], x: &[Summand<T>], homs: &[Mat]) -> Result<Vec<Mat>> {
    if homs.is_empty() {
        return Ok(vec![]);
    }
    let f = homs[0].field();
    let mut backs = Vec::new();
    for a in l {
        for b in x {
            backs.push(b.object.homs_to(&a.object)?);
        }
    }
    let mut cond_rows = Vec::new();
    for g in homs {
        let mut parts = Vec::new();
        for (ai, a) in l.iter().enumerate() {
            for (bi, b) in x.iter().enumerate() {
                let comp = a.incl.mul(g).mul(&b.proj);
                for k in &backs[ai * x.len() + bi] {
                    parts.push(a.local.residue(&comp.mul(k)));
                }
            }
        }
        let refs: Vec<&Mat> = parts.iter().collect();
        cond_rows.push(if refs.is_empty() { Mat::zeros(f, 1, 0) } else { Mat::hstack(&refs) });
    }
    let width = cond_rows[0].cols();
    let refs: Vec<&Mat> = cond_rows.iter().collect();
    let conds = Mat::vstack(f, width, &refs);
    let combos = if width == 0 { Mat::identity(f, homs.len()) } else { conds.left_kernel() };
    Ok((0..combos.rows())
        .map(|r| {
            let mut acc = Mat::zeros(f, homs[0].rows(), homs[0].cols());
            for (k, h) in homs.iter().enumerate() {
                let c = combos.get(r, k);
                if !f.is_zero(c) {
                    acc.axpy(c, h);
                }
            }
            acc
        })
        .collect())
}

/// `J(End X)` as a list of endomorphisms.
pub fn endomorphism_radical<T: KrullSchmidt>(x: &T) -> Result<Vec<Mat>> {
    let d = decompose(x)?;
    radical_homs(&d, &d, &x.endomorphisms()?)
}
