//! Bounded cochain complexes of modules and chain maps.
//!
//! Differentials raise degree and act on row vectors like module maps.
//! `shift(X, n)` has terms `X^{i+n}` and differential `(-1)^n d`. The cone of
//! `f: X -> Y` has terms `X^{i+1} ⊕ Y^i` and, on rows `(x | y)`, the
//! differential `[[-d_X, f], [0, d_Y]]`.

mod homotopy;
mod minimize;

use std::hash::{Hash, Hasher};

pub use homotopy::{
    clear_khom_cache, contraction, hom_complex, homotopy_hom, is_contractible, is_injective_object, is_projective_object,
    HomComplex, Homotopy, KHomSpace,
};
pub use minimize::{analyze, decompose_complex, is_isomorphic_in_k, minimize, radical_khom, Analysis, Minimized};

use crate::algebra::{same_algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Field, Mat};
use crate::module::{KrullSchmidt, Module, ModuleMap};

#[derive(Clone, Debug)]
pub struct Complex {
    alg: AlgebraRef,
    lo: i64,
    terms: Vec<Module>,
    diffs: Vec<Mat>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Complex) -> bool {
        same_algebra(&self.alg, &other.alg)
            && self.lo == other.lo
            && self.terms == other.terms
            && self.diffs == other.diffs
    }
}

impl Eq for Complex {}

impl Hash for Complex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lo.hash(state);
        for t in &self.terms {
            t.dim().hash(state);
            t.actions().hash(state);
        }
        self.diffs.hash(state);
    }
}

impl Complex {
    /// `terms[k]` sits in degree `lo + k`; `diffs[k]` maps it to the next term.
    pub fn new(alg: AlgebraRef, lo: i64, terms: Vec<Module>, diffs: Vec<Mat>) -> Result<Complex> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::DimensionMismatch("need one differential between consecutive terms".into()));
        }
        for t in &terms {
            if !same_algebra(t.alg(), &alg) {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            ModuleMap::new(terms[k].clone(), terms[k + 1].clone(), d.clone())
                .map_err(|e| Error::Invalid(format!("differential in degree {}: {e}", lo + k as i64)))?;
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k].mul(&diffs[k + 1]).is_zero() {
                return Err(Error::Invalid(format!("d∘d ≠ 0 in degree {}", lo + k as i64)));
            }
        }
        Ok(Complex::new_unchecked(alg, lo, terms, diffs))
    }

    pub(crate) fn new_unchecked(alg: AlgebraRef, lo: i64, terms: Vec<Module>, diffs: Vec<Mat>) -> Complex {
        let mut c = Complex { alg, lo, terms, diffs };
        c.trim();
        c
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(Module::is_zero) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Module::is_zero) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn zero(alg: AlgebraRef) -> Complex {
        Complex { alg, lo: 0, terms: vec![], diffs: vec![] }
    }

    pub fn stalk(m: &Module, degree: i64) -> Complex {
        Complex::new_unchecked(m.alg().clone(), degree, vec![m.clone()], vec![])
    }

    /// `M -> N` with `M` in degree `degree`.
    pub fn two_term(f: &ModuleMap, degree: i64) -> Complex {
        Complex::new_unchecked(f.src.alg().clone(), degree, vec![f.src.clone(), f.tgt.clone()], vec![f.mat.clone()])
    }

    pub fn alg(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree of a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn width(&self) -> usize {
        self.terms.len()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn term(&self, i: i64) -> Module {
        self.index(i).map_or_else(|| Module::zero(self.alg.clone()), |k| self.terms[k].clone())
    }

    pub fn term_dim(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.terms[k].dim())
    }

    fn index(&self, i: i64) -> Option<usize> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some((i - self.lo) as usize)
        }
    }

    /// `d^i: X^i -> X^{i+1}`.
    pub fn d(&self, i: i64) -> Mat {
        match self.index(i) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => Mat::zeros(self.field(), self.term_dim(i), self.term_dim(i + 1)),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::dim).sum()
    }

    /// Offset of degree `i` inside the total space.
    pub fn offset(&self, i: i64) -> usize {
        self.terms.iter().take(((i - self.lo).max(0) as usize).min(self.terms.len())).map(Module::dim).sum()
    }

    pub fn is_stalk(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn shift(&self, n: i64) -> Complex {
        let sign = if n.rem_euclid(2) == 1 { self.field().from_int(-1) } else { self.field().one() };
        Complex {
            alg: self.alg.clone(),
            lo: if self.terms.is_empty() { 0 } else { self.lo - n },
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    pub fn direct_sum(parts: &[Complex]) -> Result<Complex> {
        let alg = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?.alg.clone();
        Complex::direct_sum_over(&alg, parts)
    }

    pub fn direct_sum_over(alg: &AlgebraRef, parts: &[Complex]) -> Result<Complex> {
        let f = alg.field();
        let nonzero: Vec<&Complex> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(Complex::zero(alg.clone()));
        }
        let lo = nonzero.iter().map(|p| p.lo).min().unwrap();
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for i in lo..=hi {
            let ms: Vec<Module> = parts.iter().map(|p| p.term(i)).collect();
            terms.push(Module::direct_sum_over(alg.clone(), &ms)?.module);
            if i < hi {
                let ds: Vec<Mat> = parts.iter().map(|p| p.d(i)).collect();
                let refs: Vec<&Mat> = ds.iter().collect();
                diffs.push(Mat::block_diag(f, &refs));
            }
        }
        Ok(Complex::new_unchecked(alg.clone(), lo, terms, diffs))
    }

    /// Conjugates by per-degree changes of basis (rows are the new basis).
    pub(crate) fn rebased(&self, terms: Vec<Module>, bases: &[Mat]) -> Complex {
        let diffs = (0..self.diffs.len())
            .map(|k| bases[k].mul(&self.diffs[k]).mul(&bases[k + 1].inverse().expect("basis change is invertible")))
            .collect();
        Complex { alg: self.alg.clone(), lo: self.lo, terms, diffs }
    }

    /// Cohomology dimensions per degree.
    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        self.degrees()
            .map(|i| {
                let ker = self.term_dim(i) - self.d(i).rank();
                (i, ker - self.d(i - 1).rank())
            })
            .collect()
    }

    pub fn identity(&self) -> ChainMap {
        ChainMap::new_unchecked(
            self.clone(),
            self.clone(),
            self.terms.iter().map(|t| Mat::identity(self.field(), t.dim())).collect(),
        )
    }

    /// `(DX)^i = D(X^{-i})` over the given opposite algebra, differentials
    /// transposed without signs.
    pub fn dual(&self, op: &AlgebraRef) -> Complex {
        if self.is_zero() {
            return Complex::zero(op.clone());
        }
        let terms: Vec<Module> = self
            .terms
            .iter()
            .rev()
            .map(|t| Module::new_unchecked(op.clone(), t.dim(), t.actions().iter().map(Mat::transpose).collect()))
            .collect();
        let diffs = self.diffs.iter().rev().map(Mat::transpose).collect();
        Complex::new_unchecked(op.clone(), -self.hi(), terms, diffs)
    }

    /// Replaces the algebra reference by an equal one.
    pub(crate) fn with_algebra(&self, alg: &AlgebraRef) -> Complex {
        let terms = self
            .terms
            .iter()
            .map(|t| Module::new_unchecked(alg.clone(), t.dim(), t.actions().to_vec()))
            .collect();
        Complex { alg: alg.clone(), lo: self.lo, terms, diffs: self.diffs.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub src: Complex,
    pub tgt: Complex,
    /// One component per degree of the source support.
    comps: Vec<Mat>,
}

impl ChainMap {
    pub fn new(src: Complex, tgt: Complex, comps: Vec<Mat>) -> Result<ChainMap> {
        if !same_algebra(src.alg(), tgt.alg()) {
            return Err(Error::AlgebraMismatch);
        }
        if comps.len() != src.width() {
            return Err(Error::DimensionMismatch("one component per source degree is required".into()));
        }
        let map = ChainMap::new_unchecked(src, tgt, comps);
        for i in map.src.degrees() {
            let c = map.comp(i);
            if c.rows() != map.src.term_dim(i) || c.cols() != map.tgt.term_dim(i) {
                return Err(Error::DimensionMismatch(format!("component in degree {i} has the wrong shape")));
            }
            ModuleMap::new(map.src.term(i), map.tgt.term(i), c)
                .map_err(|e| Error::Invalid(format!("component in degree {i}: {e}")))?;
        }
        if !map.commutes() {
            return Err(Error::Invalid("components do not commute with the differentials".into()));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(src: Complex, tgt: Complex, comps: Vec<Mat>) -> ChainMap {
        ChainMap { src, tgt, comps }
    }

    /// Builds a chain map from a function giving the component in each degree.
    pub fn from_fn(src: &Complex, tgt: &Complex, f: impl Fn(i64) -> Mat) -> ChainMap {
        ChainMap::new_unchecked(src.clone(), tgt.clone(), src.degrees().map(f).collect())
    }

    pub fn zero(src: &Complex, tgt: &Complex) -> ChainMap {
        let f = src.field();
        ChainMap::from_fn(src, tgt, |i| Mat::zeros(f, src.term_dim(i), tgt.term_dim(i)))
    }

    pub fn comp(&self, i: i64) -> Mat {
        match self.src.index(i) {
            Some(k) => self.comps[k].clone(),
            None => Mat::zeros(self.src.field(), 0, self.tgt.term_dim(i)),
        }
    }

    pub fn commutes(&self) -> bool {
        let (x, y) = (&self.src, &self.tgt);
        let lo = x.lo.min(y.lo) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        (lo..=hi).all(|i| {
            let a = x.d(i).mul(&self.comp(i + 1));
            let b = self.comp(i).mul(&y.d(i));
            a == b
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.src, &next.tgt, |i| self.comp(i).mul(&next.comp(i)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.src, &self.tgt, |i| self.comp(i).add(&other.comp(i)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.src, &self.tgt, |i| self.comp(i).sub(&other.comp(i)))
    }

    pub fn scale(&self, s: &crate::linalg::Scalar) -> ChainMap {
        ChainMap::from_fn(&self.src, &self.tgt, |i| self.comp(i).scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    /// `f[n]: X[n] -> Y[n]`.
    pub fn shift(&self, n: i64) -> ChainMap {
        let (x, y) = (self.src.shift(n), self.tgt.shift(n));
        ChainMap::from_fn(&x, &y, |i| self.comp(i + n))
    }

    /// The block matrix on total spaces.
    pub fn total(&self) -> Mat {
        let f = self.src.field();
        let mut m = Mat::zeros(f, self.src.total_dim(), self.tgt.total_dim());
        for i in self.src.degrees() {
            if self.tgt.index(i).is_some() {
                m.set_block(self.src.offset(i), self.tgt.offset(i), &self.comp(i));
            }
        }
        m
    }

    pub fn from_total(src: &Complex, tgt: &Complex, total: &Mat) -> ChainMap {
        ChainMap::from_fn(src, tgt, |i| {
            let (r0, c0) = (src.offset(i), tgt.offset(i));
            total.submatrix(r0, r0 + src.term_dim(i), c0, c0 + tgt.term_dim(i))
        })
    }

    pub fn is_iso(&self) -> bool {
        self.src.degrees().chain(self.tgt.degrees()).all(|i| {
            let c = self.comp(i);
            self.src.term_dim(i) == self.tgt.term_dim(i) && (c.rows() == 0 || c.is_invertible())
        })
    }
}

/// A distinguished triangle `X -u-> Y -v-> Z -w-> X[1]`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub u: ChainMap,
    pub v: ChainMap,
    pub w: ChainMap,
}

impl Triangle {
    pub fn x(&self) -> &Complex {
        &self.u.src
    }

    pub fn y(&self) -> &Complex {
        &self.v.src
    }

    pub fn z(&self) -> &Complex {
        &self.w.src
    }
}

/// `cone(f)` with the canonical triangle `X -> Y -> cone(f) -> X[1]`.
pub fn cone(f: &ChainMap) -> Triangle {
    let (x, y) = (&f.src, &f.tgt);
    let k = x.field();
    let alg = x.alg().clone();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    if !(x.is_zero() && y.is_zero()) {
        for i in lo..=hi {
            terms.push(Module::direct_sum_over(alg.clone(), &[x.term(i + 1), y.term(i)]).expect("same algebra").module);
            if i < hi {
                let (a, b) = (x.term_dim(i + 1), y.term_dim(i));
                let (a2, b2) = (x.term_dim(i + 2), y.term_dim(i + 1));
                let mut d = Mat::zeros(k, a + b, a2 + b2);
                d.set_block(0, 0, &x.d(i + 1).neg());
                d.set_block(0, a2, &f.comp(i + 1));
                d.set_block(a, a2, &y.d(i));
                diffs.push(d);
            }
        }
    }
    let c = if terms.is_empty() { Complex::zero(alg) } else { Complex::new_unchecked(alg, lo, terms, diffs) };
    let x1 = x.shift(1);
    let v = ChainMap::from_fn(y, &c, |i| {
        let mut m = Mat::zeros(k, y.term_dim(i), c.term_dim(i));
        if c.term_dim(i) > 0 {
            m.set_block(0, x.term_dim(i + 1), &Mat::identity(k, y.term_dim(i)));
        }
        m
    });
    let w = ChainMap::from_fn(&c, &x1, |i| {
        let mut m = Mat::zeros(k, c.term_dim(i), x1.term_dim(i));
        if x1.term_dim(i) > 0 {
            m.set_block(0, 0, &Mat::identity(k, x.term_dim(i + 1)));
        }
        m
    });
    Triangle { u: f.clone(), v, w }
}

impl KrullSchmidt for Complex {
    fn total_dim(&self) -> usize {
        Complex::total_dim(self)
    }

    fn field(&self) -> Field {
        Complex::field(self)
    }

    fn endomorphisms(&self) -> Result<Vec<Mat>> {
        Ok(homotopy::chain_map_basis(self, self)?.iter().map(ChainMap::total).collect())
    }

    fn restrict(&self, rows: &Mat) -> Result<Complex> {
        let f = self.field();
        let mut per_degree: Vec<Vec<Mat>> = vec![Vec::new(); self.width()];
        let mut last = 0;
        for r in 0..rows.rows() {
            let row = rows.row(r);
            let mut found = None;
            for (k, i) in self.degrees().enumerate() {
                let (o, d) = (self.offset(i), self.term_dim(i));
                let outside = (0..rows.cols()).filter(|&c| c < o || c >= o + d).all(|c| f.is_zero(row.get(0, c)));
                if outside && d > 0 {
                    found = Some((k, row.submatrix(0, 1, o, o + d)));
                    break;
                }
            }
            let (k, block) = found.ok_or_else(|| Error::Internal("summand basis vector is not homogeneous".into()))?;
            if k < last {
                return Err(Error::Internal("summand basis is not sorted by degree".into()));
            }
            last = k;
            per_degree[k].push(block);
        }
        let mut terms = Vec::new();
        let mut bases = Vec::new();
        for (k, blocks) in per_degree.iter().enumerate() {
            let refs: Vec<&Mat> = blocks.iter().collect();
            let b = Mat::vstack(f, self.terms[k].dim(), &refs);
            terms.push(self.terms[k].restrict(&b)?);
            bases.push(b);
        }
        let mut diffs = Vec::new();
        for k in 0..self.diffs.len() {
            let img = bases[k].mul(&self.diffs[k]);
            let coords = Coordinates::new(bases[k + 1].clone())?;
            diffs.push(coords.coords_unchecked(&img));
        }
        Ok(Complex::new_unchecked(self.alg.clone(), self.lo, terms, diffs))
    }

    fn homs_to(&self, other: &Complex) -> Result<Vec<Mat>> {
        Ok(homotopy::chain_map_basis(self, other)?.iter().map(ChainMap::total).collect())
    }
}

/// Wraps a module map as a chain map between stalks in degree `degree`.
pub fn stalk_map(f: &ModuleMap, degree: i64) -> ChainMap {
    let (x, y) = (Complex::stalk(&f.src, degree), Complex::stalk(&f.tgt, degree));
    ChainMap::from_fn(&x, &y, |_| f.mat.clone())
}
