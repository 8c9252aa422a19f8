//! Serre duality on perfect complexes and Auslander-Reiten triangles.

mod corpus;
mod nakayama;
mod triangle;

use std::sync::Arc;

pub use corpus::{default_corpus, MODULE_DIM_BOUND, SHIFT_RANGE, module_corpus, two_term_corpus, Corpus};
pub use nakayama::{
    conakayama_complex, conakayama_image, nakayama_complex, nakayama_image, ConakayamaImage, NakayamaImage,
};
pub(crate) use triangle::triangle_from_connecting;
pub use triangle::{
    ar_triangle_ending_at, ar_triangle_starting_at, is_distinguished, verify_ar_triangle, verify_left_almost_split,
    verify_left_minimal, verify_right_almost_split, verify_right_minimal, AlmostSplitCheck, ArTriangleCertificate,
    FactorEntry, MinimalityCheck, Side,
};

use crate::complex::{analyze, homotopy_hom, radical_khom, ChainMap, Complex, KHomSpace};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// `B(f, g) = t_X(g∘f)` on `Hom_K(X, Y) × Hom_K(Y, νX)` in the
/// representative bases of both spaces.
#[derive(Clone, Debug)]
pub struct SerrePairing {
    pub x: Complex,
    pub y: Complex,
    pub nu: NakayamaImage,
    pub hom_xy: Arc<KHomSpace>,
    pub hom_y_nux: Arc<KHomSpace>,
    pub matrix: Mat,
}

impl SerrePairing {
    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && (self.matrix.rows() == 0 || self.matrix.is_invertible())
    }

    pub fn pair(&self, f: &ChainMap, g: &ChainMap) -> crate::linalg::Scalar {
        self.nu.trace(&f.then(g))
    }
}

pub fn serre_pairing_with(nu: &NakayamaImage, y: &Complex) -> Result<SerrePairing> {
    let x = &nu.source;
    let hom_xy = homotopy_hom(x, y)?;
    let hom_y_nux = homotopy_hom(y, &nu.complex)?;
    let (fs, gs) = (hom_xy.reps(), hom_y_nux.reps());
    let fld = x.field();
    let mut matrix = Mat::zeros(fld, fs.len(), gs.len());
    for (a, f) in fs.iter().enumerate() {
        for (b, g) in gs.iter().enumerate() {
            matrix.set(a, b, nu.trace(&f.then(g)));
        }
    }
    let p = SerrePairing { x: x.clone(), y: y.clone(), nu: nu.clone(), hom_xy, hom_y_nux, matrix };
    if !p.is_nondegenerate() {
        return Err(Error::Verification(format!(
            "Serre pairing is degenerate ({}×{}, rank {})",
            p.matrix.rows(),
            p.matrix.cols(),
            p.matrix.rank()
        )));
    }
    Ok(p)
}

pub fn serre_pairing(x: &Complex, y: &Complex) -> Result<SerrePairing> {
    serre_pairing_with(&nakayama_image(x)?, y)
}

/// A minimal indecomposable perfect complex with its connecting map `w: X -> νX`.
#[derive(Clone, Debug)]
pub struct ConnectingMap {
    pub x: Complex,
    pub nu: NakayamaImage,
    pub w: ChainMap,
    /// `J_K(End X)` in class coordinates of `End_K(X)`.
    pub radical: Mat,
}

impl ConnectingMap {
    /// Pairs `w` against the radical (expect zero) and the identity (expect one).
    pub fn is_normalized(&self) -> Result<bool> {
        let f = self.x.field();
        let end = homotopy_hom(&self.x, &self.x)?;
        let rad_ok = (0..self.radical.rows()).all(|r| {
            let h = end.element(&self.radical.row(r));
            f.is_zero(&self.nu.trace(&h.then(&self.w)))
        });
        Ok(rad_ok && f.is_one(&self.nu.trace(&self.w)))
    }
}

/// Minimizes, checks perfectness and indecomposability.
pub(crate) fn minimal_indecomposable(x: &Complex, perfect: bool) -> Result<Arc<crate::complex::Analysis>> {
    let a = analyze(x)?;
    let m = &a.min.complex;
    if m.is_zero() {
        return Err(Error::ZeroObject("the complex is zero in K^b".into()));
    }
    if a.parts.len() > 1 {
        return Err(Error::Decomposable(format!("{} indecomposable summands", a.parts.len())));
    }
    for (k, t) in m.terms().iter().enumerate() {
        let ok = if perfect {
            crate::module::projective_cover(t)?.module.dim() == t.dim()
        } else {
            crate::module::injective_envelope(t)?.module.dim() == t.dim()
        };
        if !ok {
            let msg = format!("minimal term in degree {} is not {}", m.lo() + k as i64, if perfect { "projective" } else { "injective" });
            return Err(if perfect { Error::NotPerfect(msg) } else { Error::NotCoperfect(msg) });
        }
    }
    Ok(a)
}

/// Canonical functional on `End_K(X)`: one on the identity, zero on the
/// radical and on the echelon complement of `k·id ⊕ J`.
fn echelon_functional(id: &Mat, radical: &Mat) -> Result<Mat> {
    let f = id.field();
    let n = id.cols();
    let mut basis = Mat::vstack(f, n, &[id, radical]);
    let base_rank = basis.rank();
    if base_rank != radical.rows() + 1 {
        return Err(Error::Verification("identity lies in the radical".into()));
    }
    for k in 0..n {
        let trial = Mat::vstack(f, n, &[&basis, &Mat::unit_row(f, n, k)]);
        if trial.rank() > basis.rows() {
            basis = trial;
        }
    }
    let inv = basis.inverse().ok_or_else(|| Error::Internal("echelon completion failed".into()))?;
    Ok(inv.submatrix(0, n, 0, 1).transpose())
}

/// The connecting map of the AR triangle ending at an indecomposable
/// perfect complex (computed on its minimal model).
pub fn ar_connecting_map(x: &Complex) -> Result<ConnectingMap> {
    let a = minimal_indecomposable(x, true)?;
    let m = a.min.complex.clone();
    let nu = nakayama_image(&m)?;
    let pairing = serre_pairing_with(&nu, &m)?;
    let end = &pairing.hom_xy;
    let id = end.class_of(&m.identity())?;
    let radical = radical_khom(&m, &m)?;
    let phi = echelon_functional(&id, &radical)?;
    let c = pairing
        .matrix
        .transpose()
        .solve_left(&phi)?
        .ok_or_else(|| Error::Verification("functional is not represented by the pairing".into()))?;
    let w = pairing.hom_y_nux.element(&c);
    Ok(ConnectingMap { x: m, nu, w, radical })
}
