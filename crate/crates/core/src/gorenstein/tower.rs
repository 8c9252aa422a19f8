//! Injective resolutions of complexes, `K^b(inj)`-envelopes, `K^b(proj)`-covers
//! and restriction of AR triangles to these subcategories.

use std::sync::Arc;

use super::{module_injective_dimension, DimBound};
use crate::complex::{analyze, cone, homotopy_hom, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{hom_space, injective_envelope, projective_cover, Module, ModuleMap};
use crate::serre::{
    triangle_from_connecting, verify_ar_triangle, verify_left_minimal, verify_right_minimal, ArTriangleCertificate,
    Corpus, MinimalityCheck, Side, SHIFT_RANGE,
};

/// `f: X -> L` with `L` degreewise injective, built by width induction.
#[derive(Clone, Debug)]
pub struct ResolutionTower {
    pub source: Complex,
    pub target: Complex,
    pub map: ChainMap,
    /// Cone of `map` is exact and the resolution closed within the bound.
    pub terminated: bool,
    pub bound: usize,
}

impl ResolutionTower {
    pub fn width(&self) -> usize {
        self.target.width()
    }

    /// Exactness of the cone and injectivity of every target term.
    pub fn check(&self) -> Result<bool> {
        let c = cone(&self.map);
        let exact = c.z().cohomology_dims().iter().all(|(_, d)| *d == 0);
        let mut inj = true;
        for t in self.target.terms() {
            inj &= injective_envelope(t)?.module.dim() == t.dim();
        }
        Ok(exact && inj)
    }
}

fn section(proj: &Mat) -> Result<Mat> {
    let f = proj.field();
    proj.solve_left(&Mat::identity(f, proj.cols()))?
        .ok_or_else(|| Error::Internal("quotient map has no linear section".into()))
}

/// Extends `k -> I` along the inclusion `k -> e` to an `A`-linear `e -> I`.
fn extend_to(e: &Module, incl: &Mat, target: &Module, map: &Mat) -> Result<Mat> {
    let f = e.field();
    let hs = hom_space(e, target)?;
    if map.is_zero() || hs.dim() == 0 {
        return Ok(Mat::zeros(f, e.dim(), target.dim()));
    }
    let rows: Vec<Mat> = hs.basis().iter().map(|h| incl.mul(h).flatten()).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    let sys = Mat::vstack(f, map.rows() * map.cols(), &refs);
    let c = sys
        .solve_left(&map.flatten())?
        .ok_or_else(|| Error::Verification("injective envelope does not extend".into()))?;
    let mut out = Mat::zeros(f, e.dim(), target.dim());
    for (k, h) in hs.basis().iter().enumerate() {
        out.axpy(c.get(0, k), h);
    }
    Ok(out)
}

pub fn injective_resolution(x: &Complex, bound: usize) -> Result<ResolutionTower> {
    if bound < 1 {
        return Err(Error::Invalid("resolution bound must be at least 1".into()));
    }
    let alg = x.alg().clone();
    let f = x.field();
    if x.is_zero() {
        return Ok(ResolutionTower {
            source: x.clone(),
            target: x.clone(),
            map: x.identity(),
            terminated: true,
            bound,
        });
    }
    let (lo, hi) = (x.lo(), x.hi());
    let mut l_terms: Vec<Module> = Vec::new();
    let mut l_diffs: Vec<Mat> = Vec::new();
    let mut f_comps: Vec<Mat> = Vec::new();
    let mut prev_d = Mat::zeros(f, 0, x.term_dim(lo));
    let mut terminated = false;
    let mut i = lo;
    loop {
        let xi = x.term(i);
        let lprev = l_terms.last().cloned().unwrap_or_else(|| Module::zero(alg.clone()));
        let cone_mod = Module::direct_sum_over(alg.clone(), &[xi.clone(), lprev.clone()])?.module;
        let (e, proj) = cone_mod.quotient(&prev_d.row_space())?;
        if i > hi && e.is_zero() {
            terminated = true;
            break;
        }
        if i == hi + 1 {
            let room = bound.saturating_sub(1);
            if let DimBound::Exceeded(_) = module_injective_dimension(&e, room)? {
                break;
            }
        }
        let next_dim = x.term_dim(i + 1);
        let g_cone = Mat::vstack(f, next_dim, &[&x.d(i).neg(), &Mat::zeros(f, lprev.dim(), next_dim)]);
        let s = section(&proj.mat)?;
        let ge = ModuleMap::new_unchecked(e.clone(), x.term(i + 1), s.mul(&g_cone));
        let (k, k_incl) = ge.kernel()?;
        let env = injective_envelope(&k)?;
        let phi = extend_to(&e, &k_incl.mat, &env.module, &env.map.mat)?;
        let to_l = proj.mat.mul(&phi);
        let fi = to_l.submatrix(0, xi.dim(), 0, env.module.dim());
        if !l_terms.is_empty() {
            l_diffs.push(to_l.submatrix(xi.dim(), to_l.rows(), 0, env.module.dim()));
        }
        if i <= hi {
            f_comps.push(fi);
        }
        l_terms.push(env.module);
        prev_d = Mat::hstack(&[&g_cone, &to_l]);
        i += 1;
    }
    let target = Complex::new_unchecked(alg.clone(), lo, l_terms.clone(), l_diffs);
    let width = l_terms.len();
    let map = ChainMap::from_fn(x, &target, |j| {
        let k = (j - lo) as usize;
        if k < f_comps.len() && k < width {
            f_comps[k].clone()
        } else {
            Mat::zeros(f, x.term_dim(j), target.term_dim(j))
        }
    });
    let (target, map) = if terminated {
        let m = analyze(&target)?;
        (m.min.complex.clone(), map.then(&m.min.to))
    } else {
        (target, map)
    };
    Ok(ResolutionTower { source: x.clone(), target, map, terminated, bound })
}

/// A certified approximation: an envelope `X -> L` or a cover `L -> X`.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub map: ChainMap,
    pub minimal: MinimalityCheck,
    /// `Hom_K` between the cone and every sample vanishes.
    pub wakamatsu: bool,
    /// Restriction of morphisms along the map is surjective on every sample.
    pub approximating: bool,
    pub samples: usize,
}

impl Approximation {
    pub fn ok(&self) -> bool {
        self.minimal.ok() && self.wakamatsu && self.approximating
    }
}

fn all_terms(x: &Complex, test: fn(&Module) -> Result<bool>) -> Result<bool> {
    for t in analyze(x)?.min.complex.terms() {
        if !test(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn injective_term(m: &Module) -> Result<bool> {
    Ok(injective_envelope(m)?.module.dim() == m.dim())
}

fn projective_term(m: &Module) -> Result<bool> {
    Ok(projective_cover(m)?.module.dim() == m.dim())
}

fn surjects(images: &[Mat], width: usize, field: crate::linalg::Field) -> bool {
    if width == 0 {
        return true;
    }
    let refs: Vec<&Mat> = images.iter().collect();
    Mat::vstack(field, width, &refs).rank() == width
}

fn certify_envelope(map: ChainMap, samples: &[Complex]) -> Result<Approximation> {
    let f = map.src.field();
    let minimal = verify_left_minimal(&map)?;
    let c = cone(&map).z().clone();
    let mut wakamatsu = true;
    let mut approximating = true;
    for s in samples {
        wakamatsu &= homotopy_hom(&c, s)?.dim() == 0;
        let xs = homotopy_hom(&map.src, s)?;
        let imgs: Vec<Mat> =
            homotopy_hom(&map.tgt, s)?.reps().iter().map(|h| xs.class_of(&map.then(h))).collect::<Result<_>>()?;
        approximating &= surjects(&imgs, xs.dim(), f);
    }
    Ok(Approximation { map, minimal, wakamatsu, approximating, samples: samples.len() })
}

fn certify_cover(map: ChainMap, samples: &[Complex]) -> Result<Approximation> {
    let f = map.src.field();
    let minimal = verify_right_minimal(&map)?;
    let c = cone(&map).z().clone();
    let mut wakamatsu = true;
    let mut approximating = true;
    for s in samples {
        wakamatsu &= homotopy_hom(s, &c)?.dim() == 0;
        let sx = homotopy_hom(s, &map.tgt)?;
        let imgs: Vec<Mat> =
            homotopy_hom(s, &map.src)?.reps().iter().map(|h| sx.class_of(&h.then(&map))).collect::<Result<_>>()?;
        approximating &= surjects(&imgs, sx.dim(), f);
    }
    Ok(Approximation { map, minimal, wakamatsu, approximating, samples: samples.len() })
}

/// `K^b(inj)`-envelope, certified on the degreewise injective samples;
/// `None` when the resolution does not close within the bound.
pub fn kb_inj_envelope(x: &Complex, bound: usize, samples: &[Complex]) -> Result<Option<Approximation>> {
    let map = if all_terms(x, injective_term)? {
        x.identity()
    } else {
        let tower = injective_resolution(x, bound)?;
        if !tower.terminated {
            return Ok(None);
        }
        tower.map
    };
    Ok(Some(certify_envelope(map, samples)?))
}

fn dual_map(f: &ChainMap, dsrc: &Complex, dtgt: &Complex) -> ChainMap {
    ChainMap::from_fn(dtgt, dsrc, |i| f.comp(-i).transpose())
}

/// `K^b(proj)`-cover, computed as the dual of an envelope over the opposite
/// algebra and certified on the degreewise projective samples.
pub fn kb_proj_cover(x: &Complex, bound: usize, samples: &[Complex]) -> Result<Option<Approximation>> {
    let map = if all_terms(x, projective_term)? {
        x.identity()
    } else {
        let alg = x.alg();
        let op = Arc::new(alg.opposite());
        let dx = x.dual(&op);
        let tower = injective_resolution(&dx, bound)?;
        if !tower.terminated {
            return Ok(None);
        }
        let back = op.clone();
        let dl = tower.target.dual(&back).with_algebra(alg);
        let ddx = dx.dual(&back).with_algebra(alg);
        let m = dual_map(&tower.map, &ddx, &dl);
        ChainMap::from_fn(&dl, x, |i| m.comp(i))
    };
    Ok(Some(certify_cover(map, samples)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcategory {
    /// `K^b(proj)`: restrict triangles ending at a perfect complex.
    Perfect,
    /// `K^b(inj)`: restrict triangles starting at a coperfect complex.
    Coperfect,
}

impl Subcategory {
    pub fn contains(self, x: &Complex) -> Result<bool> {
        match self {
            Subcategory::Perfect => all_terms(x, projective_term),
            Subcategory::Coperfect => all_terms(x, injective_term),
        }
    }

    /// The corpus objects lying in the subcategory.
    pub fn restrict_corpus(self, corpus: &Corpus) -> Result<Corpus> {
        let mut base = Vec::new();
        for b in &corpus.base {
            if self.contains(b)? {
                base.push(b.clone());
            }
        }
        Ok(Corpus::from_base(format!("{} restricted to {:?}", corpus.name, self), base, SHIFT_RANGE))
    }
}

fn lift_class(target_space_src: &Complex, through: &ChainMap, goal: &ChainMap, pre: bool) -> Result<Option<ChainMap>> {
    let f = goal.src.field();
    if pre {
        // find r: S -> through.src with r∘through ≃ goal
        let cand = homotopy_hom(target_space_src, &through.src)?;
        let goal_space = homotopy_hom(&goal.src, &goal.tgt)?;
        let imgs: Vec<Mat> = cand.reps().iter().map(|r| goal_space.class_of(&r.then(through))).collect::<Result<_>>()?;
        let refs: Vec<&Mat> = imgs.iter().collect();
        let g = goal_space.class_of(goal)?;
        if imgs.is_empty() {
            return Ok(g.is_zero().then(|| ChainMap::zero(target_space_src, &through.src)));
        }
        Ok(Mat::vstack(f, goal_space.dim(), &refs).solve_left(&g)?.map(|c| cand.element(&c)))
    } else {
        // find r: through.tgt -> T with through∘r ≃ goal
        let cand = homotopy_hom(&through.tgt, &goal.tgt)?;
        let goal_space = homotopy_hom(&goal.src, &goal.tgt)?;
        let imgs: Vec<Mat> = cand.reps().iter().map(|r| goal_space.class_of(&through.then(r))).collect::<Result<_>>()?;
        let refs: Vec<&Mat> = imgs.iter().collect();
        let g = goal_space.class_of(goal)?;
        if imgs.is_empty() {
            return Ok(g.is_zero().then(|| ChainMap::zero(&through.tgt, &goal.tgt)));
        }
        Ok(Mat::vstack(f, goal_space.dim(), &refs).solve_left(&g)?.map(|c| cand.element(&c)))
    }
}

/// Restricts an ambient AR triangle to `K^b(proj)` (ending side) or
/// `K^b(inj)` (starting side) through a cover or envelope of its far term.
pub fn restrict_ar_triangle(
    cert: &ArTriangleCertificate,
    sub: Subcategory,
    bound: usize,
    corpus: &Corpus,
) -> Result<ArTriangleCertificate> {
    let sub_corpus = sub.restrict_corpus(corpus)?;
    if sub_corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let t = &cert.triangle;
    let triangle = match sub {
        Subcategory::Perfect => {
            let z = t.z();
            if !sub.contains(z)? {
                return Err(Error::NotPerfect("end term of the triangle".into()));
            }
            let mut witnessed = false;
            for a in &sub_corpus.objects {
                if homotopy_hom(z, &a.shift(1))?.dim() > 0 {
                    witnessed = true;
                    break;
                }
            }
            if !witnessed {
                return Err(Error::HypothesisNotWitnessed("no corpus object A' with Hom(Z, A'[1]) ≠ 0".into()));
            }
            let cover = kb_proj_cover(t.x(), bound, &sub_corpus.base)?.ok_or(Error::NotFoundWithinBound(bound))?;
            let alpha1 = cover.map.shift(1);
            let w = ChainMap::from_fn(z, &t.x().shift(1), |i| t.w.comp(i));
            let lifted = lift_class(z, &alpha1, &w, true)?
                .ok_or_else(|| Error::Verification("connecting map does not lift through the cover".into()))?;
            triangle_from_connecting(&lifted)?
        }
        Subcategory::Coperfect => {
            let y = t.x();
            if !sub.contains(y)? {
                return Err(Error::NotCoperfect("start term of the triangle".into()));
            }
            let mut witnessed = false;
            for a in &sub_corpus.objects {
                if homotopy_hom(a, &y.shift(1))?.dim() > 0 {
                    witnessed = true;
                    break;
                }
            }
            if !witnessed {
                return Err(Error::HypothesisNotWitnessed("no corpus object A' with Hom(A', Y[1]) ≠ 0".into()));
            }
            let env = kb_inj_envelope(t.z(), bound, &sub_corpus.base)?.ok_or(Error::NotFoundWithinBound(bound))?;
            let w = ChainMap::from_fn(t.z(), &y.shift(1), |i| t.w.comp(i));
            let ext = lift_class(&env.map.tgt, &env.map, &w, false)?
                .ok_or_else(|| Error::Verification("connecting map does not extend through the envelope".into()))?;
            triangle_from_connecting(&ext)?
        }
    };
    let mut out = verify_ar_triangle(&triangle, &sub_corpus)?;
    out.side = match sub {
        Subcategory::Perfect => Side::EndingAt,
        Subcategory::Coperfect => Side::StartingAt,
    };
    if !out.ok() {
        return Err(Error::Verification(format!("restricted triangle failed: {}", out.failures().join(", "))));
    }
    Ok(out)
}
