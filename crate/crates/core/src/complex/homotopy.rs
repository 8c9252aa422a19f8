//! Hom complexes and morphism spaces of the homotopy category.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Quotient};
use crate::module::{hom_space, injective_envelope, projective_cover, HomSpace};

const CACHE_LIMIT: usize = 4096;

/// `Hom^n(X, Y) = ∏_i Hom_A(X^i, Y^{i+n})` with coordinates over the
/// per-degree Hom bases.
#[derive(Clone, Debug)]
pub(crate) struct DegreeHoms {
    pub n: i64,
    pub parts: Vec<(i64, HomSpace)>,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl DegreeHoms {
    fn new(x: &Complex, y: &Complex, n: i64) -> Result<DegreeHoms> {
        let mut parts = Vec::new();
        let mut offsets = Vec::new();
        let mut dim = 0;
        for i in x.degrees() {
            let h = hom_space(&x.term(i), &y.term(i + n))?;
            if h.dim() > 0 {
                offsets.push(dim);
                dim += h.dim();
                parts.push((i, h));
            }
        }
        Ok(DegreeHoms { n, parts, offsets, dim })
    }

    /// Per-degree maps of a coefficient row.
    fn maps(&self, coeffs: &Mat) -> Vec<(i64, Mat)> {
        self.parts
            .iter()
            .zip(&self.offsets)
            .map(|((i, h), &o)| (*i, h.element(&coeffs.submatrix(0, 1, o, o + h.dim()))))
            .collect()
    }

    /// Coordinates of per-degree maps given by `comp`, or `None` if some
    /// component is not a homomorphism (or is nonzero where the Hom space vanishes).
    fn coords(&self, x: &Complex, comp: impl Fn(i64) -> Mat) -> Option<Mat> {
        let f = x.field();
        let mut out = Mat::zeros(f, 1, self.dim);
        for i in x.degrees() {
            let m = comp(i);
            match self.parts.iter().position(|(j, _)| *j == i) {
                Some(k) => {
                    let c = self.parts[k].1.coords(&m)?;
                    out.set_block(0, self.offsets[k], &c);
                }
                None => {
                    if !m.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(out)
    }

    fn basis_element(&self, k: usize) -> (i64, Mat) {
        let part = self.offsets.iter().rposition(|&o| o <= k).expect("index in range");
        let (i, h) = &self.parts[part];
        (*i, h.basis()[k - self.offsets[part]].clone())
    }
}

/// Matrix of `D: Hom^n -> Hom^{n+1}`, `(Dφ)^i = d_X φ^{i+1} - (-1)^n φ^i d_Y`.
fn hom_differential(x: &Complex, y: &Complex, src: &DegreeHoms, tgt: &DegreeHoms) -> Result<Mat> {
    let f = x.field();
    let n = src.n;
    let sign = if n.rem_euclid(2) == 0 { f.from_int(-1) } else { f.one() };
    let mut rows = Vec::with_capacity(src.dim);
    for k in 0..src.dim {
        let (j, phi) = src.basis_element(k);
        let image = |i: i64| -> Mat {
            let mut m = Mat::zeros(f, x.term_dim(i), y.term_dim(i + n + 1));
            if i == j - 1 {
                m = m.add(&x.d(i).mul(&phi));
            }
            if i == j {
                m = m.add(&phi.mul(&y.d(i + n)).scale(&sign));
            }
            m
        };
        rows.push(tgt.coords(x, image).ok_or_else(|| Error::Verification("D does not preserve Hom_A".into()))?);
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    Ok(Mat::vstack(f, tgt.dim, &refs))
}

/// The Hom complex of vector spaces between two complexes.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[k]` maps degree `lo + k` to `lo + k + 1`.
    pub diffs: Vec<Mat>,
}

impl HomComplex {
    pub fn cohomology_dim(&self, n: i64) -> usize {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            return 0;
        }
        let k = k as usize;
        let out_rank = self.diffs.get(k).map_or(0, Mat::rank);
        let in_rank = if k == 0 { 0 } else { self.diffs[k - 1].rank() };
        self.dims[k] - out_rank - in_rank
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.dims.len()).all(|k| self.cohomology_dim(self.lo + k as i64) == 0)
    }
}

pub fn hom_complex(x: &Complex, y: &Complex) -> Result<HomComplex> {
    if x.is_zero() || y.is_zero() {
        return Ok(HomComplex { lo: 0, dims: vec![0], diffs: vec![] });
    }
    let lo = y.lo() - x.hi() - 1;
    let hi = y.hi() - x.lo() + 1;
    let spaces: Vec<DegreeHoms> = (lo..=hi).map(|n| DegreeHoms::new(x, y, n)).collect::<Result<_>>()?;
    let diffs = spaces.windows(2).map(|w| hom_differential(x, y, &w[0], &w[1])).collect::<Result<_>>()?;
    Ok(HomComplex { lo, dims: spaces.iter().map(|s| s.dim).collect(), diffs })
}

/// Degree `-1` maps `s^i: X^i -> Y^{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub comps: Vec<(i64, Mat)>,
}

impl Homotopy {
    pub fn comp(&self, x: &Complex, y: &Complex, i: i64) -> Mat {
        self.comps
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Mat::zeros(x.field(), x.term_dim(i), y.term_dim(i - 1)))
    }

    /// Checks `f^i = d_X^i s^{i+1} + s^i d_Y^{i-1}` in every degree.
    pub fn witnesses(&self, f: &ChainMap) -> bool {
        let (x, y) = (&f.src, &f.tgt);
        x.degrees().all(|i| {
            let rhs = x.d(i).mul(&self.comp(x, y, i + 1)).add(&self.comp(x, y, i).mul(&y.d(i - 1)));
            f.comp(i) == rhs
        })
    }
}

/// `Hom_K(X, Y)`: chain maps modulo null-homotopic maps, with an echelon
/// choice of representatives.
#[derive(Debug)]
pub struct KHomSpace {
    pub src: Complex,
    pub tgt: Complex,
    h0: DegreeHoms,
    hm1: DegreeHoms,
    boundary: Mat,
    cycles: Mat,
    quotient: Quotient,
}

impl KHomSpace {
    fn compute(x: &Complex, y: &Complex) -> Result<KHomSpace> {
        let f = x.field();
        let h0 = DegreeHoms::new(x, y, 0)?;
        let hm1 = DegreeHoms::new(x, y, -1)?;
        let h1 = DegreeHoms::new(x, y, 1)?;
        let d0 = hom_differential(x, y, &h0, &h1)?;
        let boundary = hom_differential(x, y, &hm1, &h0)?;
        let cycles = if h1.dim == 0 { Mat::identity(f, h0.dim) } else { d0.left_kernel() };
        let quotient = Quotient::new(&boundary, &cycles)?;
        Ok(KHomSpace { src: x.clone(), tgt: y.clone(), h0, hm1, boundary, cycles, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    fn chain_map(&self, coeffs: &Mat) -> ChainMap {
        let f = self.src.field();
        let maps = self.h0.maps(coeffs);
        ChainMap::from_fn(&self.src, &self.tgt, |i| {
            maps.iter()
                .find(|(j, _)| *j == i)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| Mat::zeros(f, self.src.term_dim(i), self.tgt.term_dim(i)))
        })
    }

    /// Representatives of a basis of homotopy classes.
    pub fn reps(&self) -> Vec<ChainMap> {
        (0..self.dim()).map(|r| self.chain_map(&self.quotient.reps().row(r))).collect()
    }

    /// A chain map representing the class with the given coordinates.
    pub fn element(&self, coeffs: &Mat) -> ChainMap {
        self.chain_map(&self.quotient.lift(coeffs))
    }

    /// All chain maps (a basis of the strict Hom space).
    pub fn chain_maps(&self) -> Vec<ChainMap> {
        (0..self.cycles.rows()).map(|r| self.chain_map(&self.cycles.row(r))).collect()
    }

    /// Null-homotopic maps spanning the kernel of the quotient.
    pub fn null_homotopic(&self) -> Vec<ChainMap> {
        let sp = self.boundary.row_space();
        (0..sp.rows()).map(|r| self.chain_map(&sp.row(r))).collect()
    }

    fn raw_coords(&self, f: &ChainMap) -> Result<Mat> {
        self.h0
            .coords(&self.src, |i| f.comp(i))
            .ok_or_else(|| Error::Invalid("components are not module homomorphisms".into()))
    }

    /// Coordinates of the homotopy class of a chain map.
    pub fn class_of(&self, f: &ChainMap) -> Result<Mat> {
        let raw = self.raw_coords(f)?;
        self.quotient.project(&raw).ok_or_else(|| Error::Invalid("not a chain map".into()))
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        Ok(self.class_of(f)?.is_zero())
    }

    /// A homotopy `s` with `f = ds + sd`, if one exists.
    pub fn homotopy(&self, f: &ChainMap) -> Result<Option<Homotopy>> {
        let raw = self.raw_coords(f)?;
        if self.hm1.dim == 0 {
            return Ok(if raw.is_zero() { Some(Homotopy { comps: vec![] }) } else { None });
        }
        Ok(self.boundary.solve_left(&raw)?.map(|s| Homotopy { comps: self.hm1.maps(&s) }))
    }
}

type CacheMap = HashMap<(Complex, Complex), Arc<KHomSpace>>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn clear_khom_cache() {
    cache().write().expect("cache lock").clear();
    super::minimize::clear_analysis_cache();
}

/// `Hom_K(X, Y)`, memoized per pair.
pub fn homotopy_hom(x: &Complex, y: &Complex) -> Result<Arc<KHomSpace>> {
    if !crate::algebra::same_algebra(x.alg(), y.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let key = (x.clone(), y.clone());
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let space = Arc::new(KHomSpace::compute(x, y)?);
    let mut w = cache().write().expect("cache lock");
    if w.len() >= CACHE_LIMIT {
        w.clear();
    }
    Ok(w.entry(key).or_insert(space).clone())
}

pub(crate) fn chain_map_basis(x: &Complex, y: &Complex) -> Result<Vec<ChainMap>> {
    Ok(homotopy_hom(x, y)?.chain_maps())
}

/// A contraction `s` with `ds + sd = id`, if `X` is contractible.
pub fn contraction(x: &Complex) -> Result<Option<Homotopy>> {
    homotopy_hom(x, x)?.homotopy(&x.identity())
}

pub fn is_contractible(x: &Complex) -> Result<bool> {
    Ok(contraction(x)?.is_some())
}

pub fn is_projective_object(x: &Complex) -> Result<bool> {
    if !is_contractible(x)? {
        return Ok(false);
    }
    for t in x.terms() {
        if projective_cover(t)?.module.dim() != t.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_injective_object(x: &Complex) -> Result<bool> {
    if !is_contractible(x)? {
        return Ok(false);
    }
    for t in x.terms() {
        if injective_envelope(t)?.module.dim() != t.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::complex::{cone, stalk_map};
    use crate::module::{projective, simple, ModuleMap};

    #[test]
    fn stalk_homs_over_dual_numbers() {
        let a = Arc::new(algebra_from_text("field GF(3); vertex 1; arrow x: 1 -> 1; relation x*x;").unwrap());
        let lam = Complex::stalk(&projective(&a, 0), 0);
        let s = Complex::stalk(&simple(&a, 0), 0);
        assert_eq!(homotopy_hom(&lam, &s).unwrap().dim(), 1);
        assert_eq!(hom_complex(&lam, &s).unwrap().cohomology_dim(0), 1);
        assert_eq!(homotopy_hom(&s, &s.shift(3)).unwrap().dim(), 0);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let a = Arc::new(algebra_from_text("field GF(5); vertex 1 2; arrow a: 1 -> 2;").unwrap());
        for m in [projective(&a, 0), simple(&a, 0)] {
            let t = cone(&stalk_map(&ModuleMap::identity(&m), 0));
            let c = t.z().clone();
            let s = contraction(&c).unwrap().expect("contractible");
            assert!(s.witnesses(&c.identity()));
            assert_eq!(is_projective_object(&c).unwrap(), m.dim() == 2);
            assert_eq!(homotopy_hom(&c, &Complex::stalk(&m, 0)).unwrap().dim(), 0);
        }
        assert!(!is_contractible(&Complex::stalk(&simple(&a, 1), 0)).unwrap());
    }

    #[test]
    fn exact_non_split_complex_is_not_contractible() {
        let a = Arc::new(algebra_from_text("field GF(2); vertex 1; arrow x: 1 -> 1; relation x*x;").unwrap());
        let (s, lam) = (simple(&a, 0), projective(&a, 0));
        let inc = crate::module::hom_space(&s, &lam).unwrap().basis()[0].clone();
        let hs = crate::module::hom_space(&lam, &s).unwrap();
        let proj = hs.basis()[0].clone();
        let x = Complex::new(a.clone(), 0, vec![s.clone(), lam, s], vec![inc, proj]).unwrap();
        assert!(x.cohomology_dims().iter().all(|(_, d)| *d == 0));
        assert!(!is_contractible(&x).unwrap());
    }

    #[test]
    fn hom_complex_agrees_with_khom() {
        let a = Arc::new(algebra_from_text("field GF(7); vertex 1 2; arrow a: 1 -> 2;").unwrap());
        let cov = crate::module::projective_cover(&simple(&a, 0)).unwrap();
        let x = cone(&stalk_map(&cov.map, 0)).z().clone();
        let objs = [x.clone(), Complex::stalk(&simple(&a, 1), -1), Complex::stalk(&projective(&a, 0), 0), x.shift(1)];
        for p in &objs {
            for q in &objs {
                let hc = hom_complex(p, q).unwrap();
                for w in hc.diffs.windows(2) {
                    assert!(w[0].mul(&w[1]).is_zero());
                }
                assert_eq!(hc.cohomology_dim(0), homotopy_hom(p, q).unwrap().dim());
            }
        }
    }
}
