//! Removal of contractible summands by Gaussian elimination.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::homotopy::{chain_map_basis, homotopy_hom};
use super::{ChainMap, Complex};
use crate::error::Result;
use crate::linalg::Mat;
use crate::module::{decompose, iso_classes, radical_homs, KrullSchmidt, Module, Summand};

/// A minimal complex homotopy equivalent to the input, with the two
/// comparison maps.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: Complex,
    /// Input to minimal complex.
    pub to: ChainMap,
    /// Minimal complex to input; `from ∘ to` is the identity on the minimal complex.
    pub from: ChainMap,
}

/// A summand pair `X^i_a -> X^{i+1}_b` whose component is invertible.
struct Pivot {
    degree: i64,
    src_basis: Mat,
    tgt_basis: Mat,
    size: usize,
}

fn adapted_basis(parts: &[Summand<Module>], first: usize) -> Mat {
    let f = parts[first].incl.field();
    let width = parts[first].incl.cols();
    let mut order = vec![&parts[first].incl];
    order.extend(parts.iter().enumerate().filter(|(k, _)| *k != first).map(|(_, s)| &s.incl));
    Mat::vstack(f, width, &order)
}

fn find_pivot(x: &Complex) -> Result<Option<Pivot>> {
    let mut cache: Vec<(i64, Vec<Summand<Module>>)> = Vec::new();
    let parts_of = |i: i64, cache: &mut Vec<(i64, Vec<Summand<Module>>)>| -> Result<Vec<Summand<Module>>> {
        if let Some((_, p)) = cache.iter().find(|(j, _)| *j == i) {
            return Ok(p.clone());
        }
        let p = decompose(&x.term(i))?;
        cache.push((i, p.clone()));
        Ok(p)
    };
    for i in x.lo()..x.hi() {
        let d = x.d(i);
        if d.is_zero() {
            continue;
        }
        let src = parts_of(i, &mut cache)?;
        let tgt = parts_of(i + 1, &mut cache)?;
        for (ai, a) in src.iter().enumerate() {
            for (bi, b) in tgt.iter().enumerate() {
                if a.object.dim() != b.object.dim() {
                    continue;
                }
                let block = a.incl.mul(&d).mul(&b.proj);
                if block.is_invertible() {
                    return Ok(Some(Pivot {
                        degree: i,
                        src_basis: adapted_basis(&src, ai),
                        tgt_basis: adapted_basis(&tgt, bi),
                        size: a.object.dim(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// One elimination step; returns the smaller complex with `π: X -> Z` and `ι: Z -> X`.
fn eliminate(x: &Complex, p: &Pivot) -> Result<(Complex, ChainMap, ChainMap)> {
    let f = x.field();
    let i = p.degree;
    let u = p.size;
    let basis_of = |j: i64| -> Mat {
        if j == i {
            p.src_basis.clone()
        } else if j == i + 1 {
            p.tgt_basis.clone()
        } else {
            Mat::identity(f, x.term_dim(j))
        }
    };
    let bases: Vec<Mat> = x.degrees().map(basis_of).collect();
    let terms = x.degrees().zip(&bases).map(|(j, b)| x.term(j).restrict(b)).collect::<Result<Vec<_>>>()?;
    let y = x.rebased(terms, &bases);
    let to_y = ChainMap::from_fn(x, &y, |j| basis_of(j).inverse().expect("adapted basis"));
    let from_y = ChainMap::from_fn(&y, x, basis_of);

    let (m, n) = (y.term_dim(i), y.term_dim(i + 1));
    let d = y.d(i);
    let phi_inv = d.submatrix(0, u, 0, u).inverse().expect("pivot block is invertible");
    let c = d.submatrix(0, u, u, n);
    let b = d.submatrix(u, m, 0, u);
    let e = d.submatrix(u, m, u, n);
    let b_phi = b.mul(&phi_inv);
    let phi_c = phi_inv.mul(&c);

    let keep = |j: i64| -> Mat {
        let t = y.term_dim(j);
        if j == i || j == i + 1 {
            Mat::identity(f, t).submatrix(u, t, 0, t)
        } else {
            Mat::identity(f, t)
        }
    };
    let z_terms: Vec<Module> =
        y.degrees().map(|j| y.term(j).restrict(&keep(j))).collect::<Result<Vec<_>>>()?;
    let z_diffs: Vec<Mat> = (y.lo()..y.hi())
        .map(|j| {
            if j == i {
                e.sub(&b_phi.mul(&c))
            } else {
                keep(j).mul(&y.d(j)).mul(&keep(j + 1).transpose())
            }
        })
        .collect();
    let z = Complex::new_unchecked(y.alg().clone(), y.lo(), z_terms, z_diffs);

    let pi = ChainMap::from_fn(&y, &z, |j| {
        let t = y.term_dim(j);
        if j == i + 1 {
            Mat::vstack(f, t - u, &[&phi_c.neg(), &Mat::identity(f, t - u)])
        } else {
            keep(j).transpose()
        }
    });
    let iota = ChainMap::from_fn(&z, &y, |j| {
        if j == i {
            Mat::hstack(&[&b_phi.neg(), &Mat::identity(f, m - u)])
        } else {
            keep(j)
        }
    });
    Ok((z, to_y.then(&pi), iota.then(&from_y)))
}

pub fn minimize(x: &Complex) -> Result<Minimized> {
    let mut cur = x.clone();
    let mut to = x.identity();
    let mut from = x.identity();
    while let Some(p) = find_pivot(&cur)? {
        let (z, pi, iota) = eliminate(&cur, &p)?;
        to = to.then(&pi);
        from = iota.then(&from);
        cur = z;
    }
    Ok(Minimized { complex: cur, to, from })
}

/// A minimal model together with its chain-level Krull-Schmidt decomposition.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub min: Minimized,
    pub parts: Vec<Summand<Complex>>,
}

type AnalysisCache = HashMap<Complex, Arc<Analysis>>;

fn analysis_cache() -> &'static RwLock<AnalysisCache> {
    static CACHE: OnceLock<RwLock<AnalysisCache>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn clear_analysis_cache() {
    analysis_cache().write().expect("cache lock").clear();
}

/// Minimizes and decomposes, memoized per complex.
pub fn analyze(x: &Complex) -> Result<Arc<Analysis>> {
    if let Some(hit) = analysis_cache().read().expect("cache lock").get(x) {
        return Ok(hit.clone());
    }
    let min = minimize(x)?;
    let parts = if min.complex.is_zero() { vec![] } else { decompose(&min.complex)? };
    let a = Arc::new(Analysis { min, parts });
    let mut w = analysis_cache().write().expect("cache lock");
    if w.len() >= 2048 {
        w.clear();
    }
    Ok(w.entry(x.clone()).or_insert(a).clone())
}

/// `rad_K(X, Y)` as rows of class coordinates in `homotopy_hom(x, y)`.
pub fn radical_khom(x: &Complex, y: &Complex) -> Result<Mat> {
    let space = homotopy_hom(x, y)?;
    let f = x.field();
    let (ax, ay) = (analyze(x)?, analyze(y)?);
    let (mx, my) = (&ax.min.complex, &ay.min.complex);
    if space.dim() == 0 || mx.is_zero() || my.is_zero() {
        return Ok(Mat::zeros(f, 0, space.dim()));
    }
    let homs: Vec<Mat> = chain_map_basis(mx, my)?.iter().map(ChainMap::total).collect();
    let rad = radical_homs(&ax.parts, &ay.parts, &homs)?;
    let rows: Vec<Mat> = rad
        .iter()
        .map(|g| {
            let g = ChainMap::from_total(mx, my, g);
            space.class_of(&ax.min.to.then(&g).then(&ay.min.from))
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&Mat> = rows.iter().collect();
    Ok(Mat::vstack(f, space.dim(), &refs).row_space())
}

/// Indecomposable summands in `K^b` with multiplicities (contractible parts dropped).
pub fn decompose_complex(x: &Complex) -> Result<Vec<(Complex, usize)>> {
    let a = analyze(x)?;
    let parts = &a.parts;
    Ok(iso_classes(parts)?.into_iter().map(|class| (parts[class[0]].object.clone(), class.len())).collect())
}

fn term_dims(x: &Complex) -> Vec<(i64, usize)> {
    x.degrees().map(|i| (i, x.term_dim(i))).collect()
}

pub fn is_isomorphic_in_k(x: &Complex, y: &Complex) -> Result<bool> {
    let mx = analyze(x)?.min.complex.clone();
    let my = analyze(y)?.min.complex.clone();
    if term_dims(&mx) != term_dims(&my) {
        return Ok(false);
    }
    if mx.is_zero() {
        return Ok(true);
    }
    crate::module::is_isomorphic(&mx, &my)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::complex::{cone, homotopy_hom, is_contractible, stalk_map};
    use crate::module::{projective, projective_cover, simple, ModuleMap};

    #[test]
    fn planted_contractible_summand_is_removed() {
        let a = Arc::new(algebra_from_text("field GF(3); vertex 1 2; arrow a: 1 -> 2;").unwrap());
        let cov = projective_cover(&simple(&a, 0)).unwrap();
        let x = cone(&stalk_map(&cov.map, 0)).z().clone();
        let junk = cone(&stalk_map(&ModuleMap::identity(&projective(&a, 0)), 0)).z().clone();
        let big = Complex::direct_sum(&[x.clone(), junk.clone()]).unwrap();
        let m = minimize(&big).unwrap();
        assert_eq!(m.complex.total_dim(), x.total_dim());
        assert!(m.to.commutes() && m.from.commutes());
        assert_eq!(m.from.then(&m.to), m.complex.identity());
        let kh = homotopy_hom(&big, &big).unwrap();
        assert!(kh.is_null_homotopic(&m.to.then(&m.from).sub(&big.identity())).unwrap());
        assert!(is_isomorphic_in_k(&big, &x).unwrap());
        assert!(minimize(&junk).unwrap().complex.is_zero());
        assert!(is_contractible(&junk).unwrap());
        let again = minimize(&m.complex).unwrap().complex;
        assert_eq!(again, m.complex);
    }

    #[test]
    fn decomposition_counts_multiplicities() {
        let a = Arc::new(algebra_from_text("field GF(2); vertex 1; arrow x: 1 -> 1; relation x*x;").unwrap());
        let s = Complex::stalk(&simple(&a, 0), 0);
        let lam = Complex::stalk(&projective(&a, 0), 1);
        let sum = Complex::direct_sum(&[s.clone(), lam.clone(), s.clone()]).unwrap();
        let parts = decompose_complex(&sum).unwrap();
        let mut mults: Vec<usize> = parts.iter().map(|(_, k)| *k).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        assert!(!is_isomorphic_in_k(&s, &s.shift(1)).unwrap());
    }
}
