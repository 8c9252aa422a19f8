//! The Nakayama functor `- ⊗_A DA` on degreewise projective complexes, its
//! inverse `Hom_A(DA, -)` on degreewise injective ones, and the trace.

use crate::algebra::Bimodule;
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::module::{
    hom_out_of_bimodule, injective_envelope, projective_cover, tensor_over_algebra, HomModule, Module, ModuleMap,
    Tensor,
};

fn is_projective(m: &Module) -> Result<bool> {
    Ok(projective_cover(m)?.module.dim() == m.dim())
}

fn is_injective(m: &Module) -> Result<bool> {
    Ok(injective_envelope(m)?.module.dim() == m.dim())
}

/// `ν(X)` together with the tensor presentation of each term and the trace
/// forms `Θ^i` with `t_i(ψ) = Σ ψ ⊙ Θ^i` on `Hom_A(X^i, νX^i)`.
#[derive(Clone, Debug)]
pub struct NakayamaImage {
    pub source: Complex,
    pub complex: Complex,
    tensors: Vec<Tensor>,
    theta: Vec<Mat>,
}

/// Trace form of a projective `Q` against `Q ⊗ DA` via the dual basis of a
/// projective cover.
fn trace_form(q: &Module, t: &Tensor) -> Result<Mat> {
    let f = q.field();
    let alg = q.alg();
    let n = alg.dim();
    let cover = projective_cover(q)?;
    let c = &cover.map.mat;
    let inv = c.inverse().ok_or_else(|| Error::Verification("projective cover of a projective is not invertible".into()))?;
    let mut theta = Mat::zeros(f, q.dim(), t.module.dim());
    let mut off = 0;
    for &v in &cover.vertices {
        let paths = alg.paths_from(v);
        let mut phi = Mat::zeros(f, q.dim(), n);
        for (pos, &k) in paths.iter().enumerate() {
            for i in 0..q.dim() {
                phi.set(i, k, inv.get(i, off + pos).clone());
            }
        }
        let e_pos = paths.iter().position(|&k| k == alg.idempotent(v)).expect("idempotent path");
        let gen = c.row(off + e_pos);
        let w = t.quotient.reps().mul(&phi.flatten().transpose());
        theta = theta.add(&gen.transpose().mul(&w.transpose()));
        off += paths.len();
    }
    Ok(theta)
}

pub fn nakayama_image(x: &Complex) -> Result<NakayamaImage> {
    let alg = x.alg();
    let da = Bimodule::dual(alg);
    let mut tensors = Vec::new();
    let mut theta = Vec::new();
    for (k, t) in x.terms().iter().enumerate() {
        if !is_projective(t)? {
            return Err(Error::NotPerfect(format!("term in degree {} is not projective", x.lo() + k as i64)));
        }
        let tensor = tensor_over_algebra(t, &da)?;
        theta.push(trace_form(t, &tensor)?);
        tensors.push(tensor);
    }
    let diffs = (0..tensors.len().saturating_sub(1))
        .map(|k| {
            let d = ModuleMap::new_unchecked(x.terms()[k].clone(), x.terms()[k + 1].clone(), x.d(x.lo() + k as i64));
            tensors[k].map(&d, &tensors[k + 1]).mat
        })
        .collect();
    let terms = tensors.iter().map(|t| t.module.clone()).collect();
    let complex = if x.is_zero() { Complex::zero(alg.clone()) } else { Complex::new_unchecked(alg.clone(), x.lo(), terms, diffs) };
    Ok(NakayamaImage { source: x.clone(), complex, tensors, theta })
}

pub fn nakayama_complex(x: &Complex) -> Result<Complex> {
    Ok(nakayama_image(x)?.complex)
}

impl NakayamaImage {
    fn slot(&self, i: i64) -> Option<usize> {
        let k = i - self.source.lo();
        (!self.source.is_zero() && k >= 0 && (k as usize) < self.tensors.len()).then_some(k as usize)
    }

    /// `ν(f)` for `f: self.source -> other.source`.
    pub fn map(&self, f: &ChainMap, other: &NakayamaImage) -> ChainMap {
        ChainMap::from_fn(&self.complex, &other.complex, |i| match (self.slot(i), other.slot(i)) {
            (Some(a), Some(b)) => {
                let m = ModuleMap::new_unchecked(self.tensors[a].src.clone(), other.tensors[b].src.clone(), f.comp(i));
                self.tensors[a].map(&m, &other.tensors[b]).mat
            }
            _ => Mat::zeros(f.src.field(), self.complex.term_dim(i), other.complex.term_dim(i)),
        })
    }

    /// `t_X(φ) = Σ_i (-1)^i t_i(φ^i)` for `φ: X -> νX`; vanishes on
    /// null-homotopic maps.
    pub fn trace(&self, phi: &ChainMap) -> Scalar {
        let f = self.source.field();
        let mut acc = f.zero();
        for (k, th) in self.theta.iter().enumerate() {
            let i = self.source.lo() + k as i64;
            let c = phi.comp(i);
            let mut s = f.zero();
            for r in 0..c.rows() {
                for col in 0..c.cols() {
                    s = f.add(&s, &f.mul(c.get(r, col), th.get(r, col)));
                }
            }
            acc = if i.rem_euclid(2) == 0 { f.add(&acc, &s) } else { f.sub(&acc, &s) };
        }
        acc
    }
}

/// `ν⁻(Y) = Hom_A(DA, Y)` with the counit `ν ν⁻ Y -> Y`.
#[derive(Clone, Debug)]
pub struct ConakayamaImage {
    pub source: Complex,
    pub complex: Complex,
    homs: Vec<HomModule>,
}

pub fn conakayama_image(y: &Complex) -> Result<ConakayamaImage> {
    let alg = y.alg();
    let da = Bimodule::dual(alg);
    let mut homs = Vec::new();
    for (k, t) in y.terms().iter().enumerate() {
        if !is_injective(t)? {
            return Err(Error::NotCoperfect(format!("term in degree {} is not injective", y.lo() + k as i64)));
        }
        homs.push(hom_out_of_bimodule(&da, t)?);
    }
    let diffs = (0..homs.len().saturating_sub(1))
        .map(|k| {
            let d = y.d(y.lo() + k as i64);
            let rows: Vec<Mat> = homs[k]
                .basis
                .iter()
                .map(|b| homs[k + 1].coords(&b.mul(&d)).expect("post-composition stays A-linear"))
                .collect();
            let refs: Vec<&Mat> = rows.iter().collect();
            Mat::vstack(y.field(), homs[k + 1].module.dim(), &refs)
        })
        .collect();
    let terms = homs.iter().map(|h| h.module.clone()).collect();
    let complex = if y.is_zero() { Complex::zero(alg.clone()) } else { Complex::new_unchecked(alg.clone(), y.lo(), terms, diffs) };
    Ok(ConakayamaImage { source: y.clone(), complex, homs })
}

pub fn conakayama_complex(y: &Complex) -> Result<Complex> {
    Ok(conakayama_image(y)?.complex)
}

impl ConakayamaImage {
    /// The evaluation map `ν(ν⁻Y) -> Y`, `φ ⊗ ξ ↦ φ(ξ)`; `nu` must be the
    /// Nakayama image of `self.complex`.
    pub fn counit(&self, nu: &NakayamaImage) -> ChainMap {
        let y = &self.source;
        let f = y.field();
        ChainMap::from_fn(&nu.complex, y, |i| {
            let k = (i - y.lo()) as usize;
            let h = &self.homs[k];
            let n = nu.tensors[k].bdim;
            let mut eval = Mat::zeros(f, h.basis.len() * n, y.term_dim(i));
            for (j, b) in h.basis.iter().enumerate() {
                eval.set_block(j * n, 0, b);
            }
            nu.tensors[k].quotient.reps().mul(&eval)
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::complex::{homotopy_hom, is_isomorphic_in_k};
    use crate::module::{injective, is_isomorphic, projective};

    #[test]
    fn projectives_go_to_injectives() {
        let a = Arc::new(algebra_from_text("field GF(3); vertex 1 2; arrow a: 1 -> 2;").unwrap());
        for v in 0..2 {
            let nu = nakayama_complex(&Complex::stalk(&projective(&a, v), 0)).unwrap();
            assert!(is_isomorphic(&nu.term(0), &injective(&a, v)).unwrap());
            let back = conakayama_complex(&Complex::stalk(&injective(&a, v), 0)).unwrap();
            assert!(is_isomorphic(&back.term(0), &projective(&a, v)).unwrap());
        }
        assert!(nakayama_complex(&Complex::stalk(&injective(&a, 0), 0)).is_err());
    }

    #[test]
    fn trace_kills_null_homotopic_maps_and_counit_is_iso() {
        let a = Arc::new(algebra_from_text("field GF(5); vertex 1; arrow x: 1 -> 1; relation x*x*x;").unwrap());
        let p = projective(&a, 0);
        let lam = Complex::stalk(&p, 0);
        let img = nakayama_image(&lam).unwrap();
        let space = homotopy_hom(&lam, &img.complex).unwrap();
        assert_eq!(space.dim(), 3);
        let traces: Vec<bool> = space.reps().iter().map(|r| !a.field().is_zero(&img.trace(r))).collect();
        assert!(traces.iter().any(|&t| t));
        let co = conakayama_image(&img.complex).unwrap();
        let nn = nakayama_image(&co.complex).unwrap();
        let eps = co.counit(&nn);
        assert!(eps.commutes() && eps.is_iso());
        assert!(is_isomorphic_in_k(&co.complex, &lam).unwrap());
    }
}
