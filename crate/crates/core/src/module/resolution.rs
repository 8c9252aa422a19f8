use std::sync::Arc;

use super::standard::{injective, projective};
use super::{Module, ModuleMap};
use crate::algebra::AlgebraRef;
use crate::error::Result;
use crate::linalg::Mat;

/// A projective cover `P -> M` or injective envelope `M -> I`; `vertices`
/// lists the indecomposable summands `P_v` (or `I_v`) in order.
#[derive(Clone, Debug)]
pub struct Cover {
    pub module: Module,
    pub map: ModuleMap,
    pub vertices: Vec<usize>,
}

fn sum_of(alg: &AlgebraRef, vertices: &[usize], make: fn(&AlgebraRef, usize) -> Module) -> Result<Module> {
    let parts: Vec<Module> = vertices.iter().map(|&v| make(alg, v)).collect();
    Ok(Module::direct_sum_over(alg.clone(), &parts)?.module)
}

/// Elements of `M e_v` lifting a basis of `top(M) e_v`, for every vertex.
pub fn top_generators(m: &Module) -> Vec<(usize, Mat)> {
    let f = m.field();
    let alg = m.alg();
    let mut current = m.radical().basis().clone();
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let mev = m.act(alg.idempotent(v)).row_space();
        for r in 0..mev.rows() {
            let row = mev.row(r);
            let trial = Mat::vstack(f, m.dim(), &[&current, &row]);
            if trial.rank() > current.rank() {
                current = trial;
                out.push((v, row));
            }
        }
    }
    out
}

pub fn projective_cover(m: &Module) -> Result<Cover> {
    let f = m.field();
    let alg = m.alg();
    let gens = top_generators(m);
    let vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let module = sum_of(alg, &vertices, projective)?;
    let mut rows = Vec::new();
    for (v, g) in &gens {
        for p in alg.paths_from(*v) {
            rows.push(g.mul(m.act(p)));
        }
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    let mat = Mat::vstack(f, m.dim(), &refs);
    let map = ModuleMap::new_unchecked(module.clone(), m.clone(), mat);
    Ok(Cover { module, map, vertices })
}

/// `M -> I` as the dual of the projective cover of `DM`.
pub fn injective_envelope(m: &Module) -> Result<Cover> {
    let op = Arc::new(m.alg().opposite());
    let dm = Module::new_unchecked(op, m.dim(), m.actions().iter().map(Mat::transpose).collect());
    let cover = projective_cover(&dm)?;
    let module = sum_of(m.alg(), &cover.vertices, injective)?;
    let map = ModuleMap::new_unchecked(m.clone(), module.clone(), cover.map.mat.transpose());
    Ok(Cover { module, map, vertices: cover.vertices })
}

/// `... -> P_1 -> P_0 -> M -> 0`, minimal, truncated after `max_len + 1`
/// terms. `differentials[i]` maps `P_{i+1}` to `P_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<Cover>,
    pub differentials: Vec<ModuleMap>,
    /// Whether the resolution reached a zero syzygy.
    pub finite: bool,
}

impl Resolution {
    pub fn augmentation(&self) -> &ModuleMap {
        &self.terms[0].map
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        if self.finite {
            Some(self.terms.len().saturating_sub(1))
        } else {
            None
        }
    }
}

pub fn minimal_projective_resolution(m: &Module, max_len: usize) -> Result<Resolution> {
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let first = projective_cover(m)?;
    let (mut kernel, mut kernel_incl) = first.map.kernel()?;
    terms.push(first);
    while !kernel.is_zero() && terms.len() <= max_len {
        let cover = projective_cover(&kernel)?;
        let prev = terms.last().unwrap().module.clone();
        let d = ModuleMap::new_unchecked(cover.module.clone(), prev, cover.map.mat.mul(&kernel_incl.mat));
        let (k, inc) = cover.map.kernel()?;
        kernel = k;
        kernel_incl = inc;
        differentials.push(d);
        terms.push(cover);
    }
    Ok(Resolution { finite: kernel.is_zero(), terms, differentials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::module::simple;

    #[test]
    fn covers_of_simples() {
        let a = Arc::new(
            algebra_from_text("field GF(7); vertex 1 2 3; arrow a: 1 -> 2; arrow b: 2 -> 3; relation a*b;").unwrap(),
        );
        let s1 = simple(&a, 0);
        let c = projective_cover(&s1).unwrap();
        assert_eq!(c.vertices, vec![0]);
        assert!(c.map.is_homomorphism() && c.map.is_surjective());
        let e = injective_envelope(&s1).unwrap();
        assert_eq!(e.vertices, vec![0]);
        assert!(e.map.is_homomorphism() && e.map.is_injective());
        // 0 -> P3 -> P2 -> P1 -> S1 -> 0
        let r = minimal_projective_resolution(&s1, 10).unwrap();
        assert_eq!(r.projective_dimension(), Some(2));
        assert_eq!(r.terms.iter().map(|t| t.vertices.clone()).collect::<Vec<_>>(), vec![vec![0], vec![1], vec![2]]);
        for (i, d) in r.differentials.iter().enumerate() {
            assert!(d.is_homomorphism());
            let next = if i == 0 { r.augmentation().mat.clone() } else { r.differentials[i - 1].mat.clone() };
            assert!(d.mat.mul(&next).is_zero());
        }
    }

    #[test]
    fn dual_numbers_have_infinite_resolutions() {
        let a = Arc::new(algebra_from_text("field GF(2); vertex 1; arrow x: 1 -> 1; relation x*x;").unwrap());
        let r = minimal_projective_resolution(&simple(&a, 0), 4).unwrap();
        assert_eq!(r.projective_dimension(), None);
        assert_eq!(r.terms.len(), 5);
    }
}
