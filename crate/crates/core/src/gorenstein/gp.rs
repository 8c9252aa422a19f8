//! Gorenstein projective modules, their approximations and GP covers of complexes.

use super::{module_projective_dimension, DimBound, GorensteinReport};
use crate::algebra::AlgebraRef;
use crate::complex::{analyze, cone, hom_complex, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Mat};
use crate::module::{
    decompose_module, ext_dim, hom_space, kill_combos, minimal_projective_resolution, module_right_minimal, projective,
    regular, KrullSchmidt, Module, ModuleMap,
};
use crate::serre::{module_corpus, MODULE_DIM_BOUND};

const PAIR_TRIES: usize = 8;

/// A stretch `P_n -> ... -> P_0 -> Q^0 -> ... -> Q^n` of a complete
/// resolution through `M`, with its exactness checks.
#[derive(Clone, Debug)]
pub struct GpFragment {
    pub terms: Vec<Module>,
    /// `maps[k]: terms[k] -> terms[k + 1]`.
    pub maps: Vec<Mat>,
    /// Position of `P_0`; the map out of it factors through `M`.
    pub middle: usize,
    /// `M` embeds in its left `add A`-approximation.
    pub torsionless: bool,
    pub exact: bool,
    /// Exact after applying `Hom(-, P_v)` for every vertex.
    pub hom_exact: bool,
}

impl GpFragment {
    pub fn ok(&self) -> bool {
        self.torsionless && self.exact && self.hom_exact
    }
}

#[derive(Clone, Debug)]
pub struct GpCertificate {
    pub module: Module,
    /// `dim Ext^i(M, A)` for `i = 1..=n`.
    pub ext_dims: Vec<usize>,
    pub fragment: GpFragment,
}

impl GpCertificate {
    pub fn ext_criterion(&self) -> bool {
        self.ext_dims.iter().all(|&d| d == 0)
    }

    pub fn is_gp(&self) -> bool {
        self.ext_criterion()
    }

    /// Both criteria give the same answer.
    pub fn agree(&self) -> bool {
        self.ext_criterion() == self.fragment.ok()
    }
}

fn sum_copies(alg: &AlgebraRef, m: &Module, copies: usize) -> Result<Module> {
    let parts = vec![m.clone(); copies];
    Ok(Module::direct_sum_over(alg.clone(), &parts)?.module)
}

fn find_non_nilpotent(cands: &[Mat]) -> Option<Mat> {
    if let Some(c) = cands.iter().find(|c| !c.is_nilpotent()) {
        return Some(c.clone());
    }
    for i in 0..cands.len() {
        for j in i + 1..cands.len().min(i + PAIR_TRIES) {
            let s = cands[i].add(&cands[j]);
            if !s.is_nilpotent() {
                return Some(s);
            }
        }
    }
    None
}

/// Rows spanning the Fitting kernel of a non-nilpotent endomorphism.
fn fitting_kernel(e: &Mat) -> Mat {
    e.pow(e.rows()).left_kernel()
}

/// Splits off summands of the target killed by an endomorphism after `φ`.
fn left_minimalize(phi: ModuleMap) -> Result<ModuleMap> {
    let mut phi = phi;
    loop {
        let f = phi.src.field();
        let ends = phi.tgt.endomorphisms()?;
        let kill = kill_combos(&ends, |h| phi.mat.mul(h), f)?;
        let Some(e) = find_non_nilpotent(&kill) else { return Ok(phi) };
        let keep = fitting_kernel(&e);
        let coords = Coordinates::new(keep.clone())?;
        let tgt = phi.tgt.restrict(&keep)?;
        let mat = coords.coords_unchecked(&phi.mat);
        phi = ModuleMap::new_unchecked(phi.src.clone(), tgt, mat);
    }
}

/// Splits off summands of the source mapped to zero, up to an endomorphism.
fn right_minimalize(phi: ModuleMap) -> Result<ModuleMap> {
    let mut phi = phi;
    loop {
        let f = phi.src.field();
        let ends = phi.src.endomorphisms()?;
        let kill = kill_combos(&ends, |h| h.mul(&phi.mat), f)?;
        let Some(e) = find_non_nilpotent(&kill) else { return Ok(phi) };
        let keep = fitting_kernel(&e);
        let src = phi.src.restrict(&keep)?;
        phi = ModuleMap::new_unchecked(src, phi.tgt.clone(), keep.mul(&phi.mat));
    }
}

/// Minimal left `add A`-approximation.
fn projective_envelope(m: &Module) -> Result<ModuleMap> {
    let alg = m.alg();
    let a = regular(alg);
    let hs = hom_space(m, &a)?;
    let tgt = sum_copies(alg, &a, hs.dim())?;
    let refs: Vec<&Mat> = hs.basis().iter().collect();
    let mat = if refs.is_empty() { Mat::zeros(m.field(), m.dim(), 0) } else { Mat::hstack(&refs) };
    left_minimalize(ModuleMap::new_unchecked(m.clone(), tgt, mat))
}

fn seq_exact(terms: &[Module], maps: &[Mat]) -> bool {
    (1..terms.len().saturating_sub(1)).all(|k| {
        maps[k - 1].mul(&maps[k]).is_zero() && maps[k - 1].rank() + maps[k].rank() == terms[k].dim()
    })
}

/// `Hom(T_{k+1}, P) -> Hom(T_k, P)` in the Hom-space bases.
fn pullback_matrix(src: &Module, tgt: &Module, d: &Mat, p: &Module) -> Result<(Mat, usize)> {
    let f = p.field();
    let from = hom_space(tgt, p)?;
    let to = hom_space(src, p)?;
    let rows: Vec<Mat> = from
        .basis()
        .iter()
        .map(|h| to.coords(&d.mul(h)).ok_or_else(|| Error::Internal("pullback is not a homomorphism".into())))
        .collect::<Result<_>>()?;
    let refs: Vec<&Mat> = rows.iter().collect();
    Ok((Mat::vstack(f, to.dim(), &refs), to.dim()))
}

fn hom_seq_exact(terms: &[Module], maps: &[Mat], p: &Module) -> Result<bool> {
    let mut pulls = Vec::new();
    for k in 0..maps.len() {
        pulls.push(pullback_matrix(&terms[k], &terms[k + 1], &maps[k], p)?);
    }
    for k in 1..terms.len().saturating_sub(1) {
        // Hom(T_{k+1}) -> Hom(T_k) -> Hom(T_{k-1})
        let (into, dim) = &pulls[k];
        let (out, _) = &pulls[k - 1];
        if !into.mul(out).is_zero() || into.rank() + out.rank() != *dim {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fragment(m: &Module, n: usize) -> Result<GpFragment> {
    let alg = m.alg();
    let steps = n.max(1);
    let res = minimal_projective_resolution(m, steps)?;
    let mut terms: Vec<Module> = res.terms.iter().take(steps + 1).map(|t| t.module.clone()).rev().collect();
    let mut maps: Vec<Mat> = res.differentials.iter().take(steps).map(|d| d.mat.clone()).rev().collect();
    let middle = terms.len() - 1;
    let env = projective_envelope(m)?;
    let torsionless = env.is_injective();
    maps.push(res.augmentation().mat.mul(&env.mat));
    terms.push(env.tgt.clone());
    let mut prev = env;
    for _ in 0..steps {
        let (c, proj) = prev.cokernel()?;
        let next = projective_envelope(&c)?;
        maps.push(proj.mat.mul(&next.mat));
        terms.push(next.tgt.clone());
        prev = next;
    }
    let exact = seq_exact(&terms, &maps);
    let mut hom_exact = true;
    for v in 0..alg.num_vertices() {
        hom_exact &= hom_seq_exact(&terms, &maps, &projective(alg, v))?;
    }
    Ok(GpFragment { terms, maps, middle, torsionless, exact, hom_exact })
}

/// `M` is GP iff `Ext^i(M, A) = 0` for `1 <= i <= id A`; the fragment of a
/// complete resolution is built alongside as a second witness.
pub fn is_gorenstein_projective(m: &Module, report: &GorensteinReport) -> Result<GpCertificate> {
    let n = report.dimension()?;
    let a = regular(m.alg());
    let ext_dims = (1..=n).map(|i| ext_dim(m, &a, i)).collect::<Result<Vec<_>>>()?;
    Ok(GpCertificate { module: m.clone(), ext_dims, fragment: fragment(m, n)? })
}

/// GP indecomposables among the module corpus.
pub fn gp_modules(alg: &AlgebraRef, report: &GorensteinReport) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for m in module_corpus(alg, MODULE_DIM_BOUND)? {
        if is_gorenstein_projective(&m, report)?.is_gp() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Right GP-approximation `G -> M` with kernel of finite projective dimension.
#[derive(Clone, Debug)]
pub struct GpApproximation {
    pub map: ModuleMap,
    pub kernel: Module,
    pub kernel_pd: DimBound,
    pub surjective: bool,
    pub right_minimal: bool,
    /// `Hom(G', G) -> Hom(G', M)` is onto for every sampled GP module `G'`.
    pub approximating: bool,
    pub source_gp: bool,
}

impl GpApproximation {
    pub fn ok(&self) -> bool {
        self.surjective && self.right_minimal && self.approximating && self.source_gp && self.kernel_pd.is_finite()
    }
}

/// `(B ⊕ C) / {(a·f, -a·g)}` with the two structure maps.
fn pushout(f: &ModuleMap, g: &ModuleMap) -> Result<(Module, Mat, Mat)> {
    let alg = f.src.alg().clone();
    let field = f.src.field();
    let (b, c) = (f.tgt.dim(), g.tgt.dim());
    let sum = Module::direct_sum_over(alg, &[f.tgt.clone(), g.tgt.clone()])?.module;
    let rel = Mat::hstack(&[&f.mat, &g.mat.neg()]);
    let (x, proj) = sum.quotient(&rel.row_space())?;
    let from_b = Mat::hstack(&[&Mat::identity(field, b), &Mat::zeros(field, b, c)]).mul(&proj.mat);
    let from_c = Mat::hstack(&[&Mat::zeros(field, c, b), &Mat::identity(field, c)]).mul(&proj.mat);
    Ok((x, from_b, from_c))
}

/// `G -> M` surjective with `G` GP, by induction on syzygies.
fn raw_approximation(m: &Module, report: &GorensteinReport, depth: usize) -> Result<ModuleMap> {
    if is_gorenstein_projective(m, report)?.is_gp() {
        return Ok(ModuleMap::identity(m));
    }
    if depth > report.bound {
        return Err(Error::NotFoundWithinBound(report.bound));
    }
    let res = minimal_projective_resolution(m, 1)?;
    let cover = res.augmentation().clone();
    let (k, k_incl) = cover.kernel()?;
    // G_K -> K, then G_K -> Q with GP cokernel
    let gk = raw_approximation(&k, report, depth + 1)?;
    let q = projective_envelope(&gk.src)?;
    let (e, _, k_to_e) = pushout(&q, &gk)?;
    let k_to_e = ModuleMap::new_unchecked(k.clone(), e.clone(), k_to_e);
    let (x, p_to_x, e_to_x) = pushout(&k_incl, &k_to_e)?;
    // X -> M restricts to the cover on P and to zero on E
    let f = m.field();
    let pe = Mat::vstack(f, x.dim(), &[&p_to_x, &e_to_x]);
    let rhs = Mat::vstack(f, m.dim(), &[&cover.mat, &Mat::zeros(f, e.dim(), m.dim())]);
    let mat = pe
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal("pushout map to M is not well defined".into()))?;
    Ok(ModuleMap::new_unchecked(x, m.clone(), mat))
}

pub fn gp_approximation(m: &Module, report: &GorensteinReport, samples: &[Module]) -> Result<GpApproximation> {
    let n = report.dimension()?;
    let map = right_minimalize(raw_approximation(m, report, 0)?)?;
    let (kernel, _) = map.kernel()?;
    let kernel_pd = module_projective_dimension(&kernel, n.max(1))?;
    let mut approximating = true;
    for g in samples {
        let to_m = hom_space(g, m)?;
        let imgs: Vec<Mat> = hom_space(g, &map.src)?.basis().iter().map(|h| h.mul(&map.mat).flatten()).collect();
        let refs: Vec<&Mat> = imgs.iter().collect();
        let rank = if refs.is_empty() { 0 } else { Mat::vstack(m.field(), g.dim() * m.dim(), &refs).rank() };
        approximating &= rank == to_m.dim();
    }
    let mut source_gp = true;
    for (part, _) in decompose_module(&map.src)? {
        source_gp &= is_gorenstein_projective(&part, report)?.is_gp();
    }
    Ok(GpApproximation {
        surjective: map.is_surjective(),
        right_minimal: module_right_minimal(&map)?,
        map,
        kernel,
        kernel_pd,
        approximating,
        source_gp,
    })
}

/// `g: G -> Y` with `G` a bounded complex of GP modules and `cone(g)`
/// acyclic under `Hom(G', -)` for GP `G'`.
#[derive(Clone, Debug)]
pub struct GpCover {
    pub map: ChainMap,
    /// Sampled `G'` for which `Hom(G', cone g)` is acyclic.
    pub quasi_iso: Vec<bool>,
    pub steps: usize,
}

impl GpCover {
    pub fn complex(&self) -> &Complex {
        &self.map.src
    }

    pub fn ok(&self) -> bool {
        self.quasi_iso.iter().all(|&b| b)
    }
}

/// `Hom(G', cone g)` has no cohomology.
pub fn hom_quasi_iso(g_prime: &Module, g: &ChainMap) -> Result<bool> {
    let c = cone(g).z().clone();
    let h = hom_complex(&Complex::stalk(g_prime, 0), &c)?;
    Ok(h.is_acyclic())
}

/// Builds the GP cover downward: each `G^i` approximates the cycles of the
/// partial cone in degree `i`.
pub fn gp_cover_complex(y: &Complex, report: &GorensteinReport, samples: &[Module]) -> Result<GpCover> {
    let n = report.dimension()?;
    let alg = y.alg().clone();
    let f = y.field();
    if y.is_zero() {
        return Ok(GpCover { map: ChainMap::zero(y, y), quasi_iso: vec![true; samples.len()], steps: 0 });
    }
    let cap = y.width() + n + 2;
    let (lo, hi) = (y.lo(), y.hi());
    // terms and data indexed from the top: g_terms[k] sits in degree hi - k
    let mut g_terms: Vec<Module> = Vec::new();
    let mut g_diffs: Vec<Mat> = Vec::new(); // d^{i}: G^i -> G^{i+1}
    let mut g_maps: Vec<Mat> = Vec::new(); // g^i: G^i -> Y^i
    let mut i = hi;
    let mut steps = 0;
    loop {
        if steps > cap {
            return Err(Error::NotFoundWithinBound(cap));
        }
        let g_next = g_terms.last().cloned().unwrap_or_else(|| Module::zero(alg.clone()));
        let g_next2 = if g_terms.len() >= 2 { g_terms[g_terms.len() - 2].clone() } else { Module::zero(alg.clone()) };
        let yi = y.term(i);
        let y_next = y.term(i + 1);
        // D^i on G^{i+1} ⊕ Y^i
        let dg = g_diffs.last().cloned().unwrap_or_else(|| Mat::zeros(f, g_next.dim(), g_next2.dim()));
        let gm = g_maps.last().cloned().unwrap_or_else(|| Mat::zeros(f, g_next.dim(), y_next.dim()));
        let top = Mat::hstack(&[&dg.neg(), &gm]);
        let bottom = Mat::hstack(&[&Mat::zeros(f, yi.dim(), g_next2.dim()), &y.d(i)]);
        let big_d = Mat::vstack(f, g_next2.dim() + y_next.dim(), &[&top, &bottom]);
        let cone_i = Module::direct_sum_over(alg.clone(), &[g_next.clone(), yi.clone()])?.module;
        let w_rows = big_d.left_kernel();
        if i < lo && w_rows.rows() == 0 {
            break;
        }
        let (w, w_incl) = cone_i.submodule(&w_rows)?;
        let approx = gp_approximation(&w, report, samples)?;
        let psi = approx.map.mat.mul(&w_incl.mat);
        let psi_g = psi.submatrix(0, psi.rows(), 0, g_next.dim());
        let psi_y = psi.submatrix(0, psi.rows(), g_next.dim(), psi.cols());
        g_diffs.push(psi_g.neg());
        g_maps.push(psi_y);
        g_terms.push(approx.map.src.clone());
        i -= 1;
        steps += 1;
    }
    // reorder bottom-up; the first pushed differential maps into zero
    let bottom = i + 1;
    let terms: Vec<Module> = g_terms.iter().rev().cloned().collect();
    let diffs: Vec<Mat> = g_diffs.iter().rev().take(terms.len().saturating_sub(1)).cloned().collect();
    let g = Complex::new(alg.clone(), bottom, terms, diffs)?;
    let maps_by_deg: Vec<Mat> = g_maps.iter().rev().cloned().collect();
    let raw = ChainMap::from_fn(&g, y, |d| {
        let k = (d - bottom) as usize;
        match maps_by_deg.get(k) {
            Some(m) if m.rows() == g.term_dim(d) => m.clone(),
            _ => Mat::zeros(f, g.term_dim(d), y.term_dim(d)),
        }
    });
    if !raw.commutes() {
        return Err(Error::Internal("GP cover is not a chain map".into()));
    }
    let a = analyze(&raw.src)?;
    let map = a.min.from.then(&raw);
    let quasi_iso = samples.iter().map(|s| hom_quasi_iso(s, &map)).collect::<Result<Vec<_>>>()?;
    Ok(GpCover { map, quasi_iso, steps })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::gorenstein::{is_gorenstein, DEFAULT_BOUND};
    use crate::module::simple;

    fn alg(text: &str) -> AlgebraRef {
        Arc::new(algebra_from_text(text).unwrap())
    }

    #[test]
    fn a2_gp_are_projective() {
        let a = alg("field GF(3); vertex 1 2; arrow a: 1 -> 2;");
        let r = is_gorenstein(&a, DEFAULT_BOUND).unwrap();
        let gp = gp_modules(&a, &r).unwrap();
        assert_eq!(gp.len(), 2);
        for m in module_corpus(&a, 6).unwrap() {
            let c = is_gorenstein_projective(&m, &r).unwrap();
            assert!(c.agree(), "{:?}", c.ext_dims);
        }
        let s1 = simple(&a, 0);
        let ap = gp_approximation(&s1, &r, &gp).unwrap();
        assert!(ap.ok());
        assert_eq!(ap.map.src.dim(), 2);
    }

    #[test]
    fn dual_numbers_everything_gp() {
        let a = alg("field GF(2); vertex 1; arrow x: 1 -> 1; relation x*x;");
        let r = is_gorenstein(&a, DEFAULT_BOUND).unwrap();
        let gp = gp_modules(&a, &r).unwrap();
        assert_eq!(gp.len(), 2);
        for m in &gp {
            assert!(is_gorenstein_projective(m, &r).unwrap().fragment.ok());
        }
    }

    #[test]
    fn cover_of_simple_stalk() {
        let a = alg("field GF(2); vertex 1 2; arrow a: 1 -> 2;");
        let r = is_gorenstein(&a, DEFAULT_BOUND).unwrap();
        let gp = gp_modules(&a, &r).unwrap();
        let y = Complex::stalk(&simple(&a, 0), 0);
        let c = gp_cover_complex(&y, &r, &gp).unwrap();
        assert!(c.ok());
        assert_eq!((c.complex().lo(), c.complex().hi()), (-1, 0));
    }

    #[test]
    fn not_gorenstein_is_an_error() {
        let a = alg("field GF(2); vertex 1; arrow x: 1 -> 1; arrow y: 1 -> 1; relation x*x; relation y*y; relation x*y; relation y*x;");
        let r = is_gorenstein(&a, 3).unwrap();
        assert!(matches!(is_gorenstein_projective(&simple(&a, 0), &r), Err(Error::NotGorenstein(3))));
    }

    #[test]
    fn triangular_dual_numbers_criteria_agree() {
        let a = alg("field GF(3); vertex 1 2; arrow c: 1 -> 2; arrow x: 2 -> 2; relation x*x;");
        let r = is_gorenstein(&a, DEFAULT_BOUND).unwrap();
        assert_eq!(r.dimension().unwrap(), 1);
        let gp = gp_modules(&a, &r).unwrap();
        let mut non_projective_gp = 0;
        for m in module_corpus(&a, 6).unwrap() {
            let c = is_gorenstein_projective(&m, &r).unwrap();
            assert!(c.agree(), "{:?} {:?}", m.dimension_vector(), c.ext_dims);
            if c.is_gp() && crate::module::projective_cover(&m).unwrap().module.dim() != m.dim() {
                non_projective_gp += 1;
            }
            let ap = gp_approximation(&m, &r, &gp).unwrap();
            assert!(ap.ok(), "{:?} {ap:?}", m.dimension_vector());
        }
        assert!(non_projective_gp > 0);
        let y = Complex::stalk(&simple(&a, 1), 2);
        assert!(gp_cover_complex(&y, &r, &gp).unwrap().ok());
    }
}
