//! Injective dimension, Gorenstein detection, subcategory approximations and
//! Gorenstein projective modules.

mod gp;
mod happel;
mod tower;

use std::fmt;
use std::sync::Arc;

pub use gp::{
    gp_approximation, gp_cover_complex, gp_modules, hom_quasi_iso, is_gorenstein_projective, GpApproximation,
    GpCertificate, GpCover, GpFragment,
};
pub use happel::{happel_report, HappelReport, HappelSide, RestrictionOutcome};
pub use tower::{
    injective_resolution, kb_inj_envelope, kb_proj_cover, restrict_ar_triangle, Approximation, ResolutionTower, Subcategory,
};

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::module::{decompose_module, dualize, injective_envelope, is_isomorphic, regular, Module};

pub const DEFAULT_BOUND: usize = 10;

/// A dimension computed up to a bound; exceeding the bound is a value, not infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimBound {
    Finite(usize),
    Exceeded(usize),
}

impl DimBound {
    pub fn value(self) -> Option<usize> {
        match self {
            DimBound::Finite(n) => Some(n),
            DimBound::Exceeded(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, DimBound::Finite(_))
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimBound::Finite(n) => write!(f, "{n}"),
            DimBound::Exceeded(b) => write!(f, "bound-exceeded({b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hand {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Search {
    Finite(usize),
    Infinite,
    Exceeded,
}

/// Depth-first search over indecomposable cosyzygies, memoized by
/// isomorphism class; a repeated class on the current path proves the
/// resolution never closes.
struct CosyzygySearch {
    memo: Vec<(Module, Search)>,
    path: Vec<Module>,
}

fn is_injective_module(m: &Module) -> Result<bool> {
    Ok(injective_envelope(m)?.module.dim() == m.dim())
}

pub(crate) fn cosyzygy(m: &Module) -> Result<Module> {
    Ok(injective_envelope(m)?.map.cokernel()?.0)
}

fn find_iso<'a, T>(list: &'a [(Module, T)], m: &Module) -> Result<Option<&'a T>> {
    for (n, v) in list {
        if n.dimension_vector() == m.dimension_vector() && is_isomorphic(n, m)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

impl CosyzygySearch {
    fn visit(&mut self, m: &Module, budget: usize) -> Result<Search> {
        if is_injective_module(m)? {
            return Ok(Search::Finite(0));
        }
        if let Some(s) = find_iso(&self.memo, m)? {
            return Ok(*s);
        }
        for p in &self.path {
            if p.dimension_vector() == m.dimension_vector() && is_isomorphic(p, m)? {
                return Ok(Search::Infinite);
            }
        }
        if budget == 0 {
            return Ok(Search::Exceeded);
        }
        self.path.push(m.clone());
        let mut best = Search::Finite(0);
        for (part, _) in decompose_module(&cosyzygy(m)?)? {
            let s = match self.visit(&part, budget - 1)? {
                Search::Finite(n) => Search::Finite(n + 1),
                other => other,
            };
            best = match (best, s) {
                (Search::Infinite, _) | (_, Search::Infinite) => Search::Infinite,
                (Search::Exceeded, _) | (_, Search::Exceeded) => Search::Exceeded,
                (Search::Finite(a), Search::Finite(b)) => Search::Finite(a.max(b)),
            };
            if best == Search::Infinite {
                break;
            }
        }
        self.path.pop();
        if best != Search::Exceeded {
            self.memo.push((m.clone(), best));
        }
        Ok(best)
    }
}

/// Length of the minimal injective resolution of `m`, capped by `bound`.
pub fn module_injective_dimension(m: &Module, bound: usize) -> Result<DimBound> {
    let mut search = CosyzygySearch { memo: Vec::new(), path: Vec::new() };
    let mut best = 0;
    for (part, _) in decompose_module(m)? {
        match search.visit(&part, bound)? {
            Search::Finite(n) if n <= bound => best = best.max(n),
            _ => return Ok(DimBound::Exceeded(bound)),
        }
    }
    Ok(DimBound::Finite(best))
}

/// `pd M = id DM`.
pub fn module_projective_dimension(m: &Module, bound: usize) -> Result<DimBound> {
    module_injective_dimension(&dualize(m), bound)
}

pub fn injective_dimension(alg: &AlgebraRef, hand: Hand, bound: usize) -> Result<DimBound> {
    match hand {
        Hand::Right => module_injective_dimension(&regular(alg), bound),
        Hand::Left => {
            let op = Arc::new(alg.opposite());
            module_injective_dimension(&regular(&op), bound)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Gorenstein,
    NotWithinBound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Gorenstein => "gorenstein",
            Verdict::NotWithinBound => "not-within-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub bound: usize,
    pub right: DimBound,
    pub left: DimBound,
    pub verdict: Verdict,
    /// Whether the two sides agree, when both are finite (observed, never assumed).
    pub symmetric: Option<bool>,
}

impl GorensteinReport {
    pub fn is_gorenstein(&self) -> bool {
        self.verdict == Verdict::Gorenstein
    }

    /// `id A_A` for a Gorenstein algebra.
    pub fn dimension(&self) -> Result<usize> {
        match (self.verdict, self.right) {
            (Verdict::Gorenstein, DimBound::Finite(n)) => Ok(n),
            _ => Err(Error::NotGorenstein(self.bound)),
        }
    }
}

pub fn is_gorenstein(alg: &AlgebraRef, bound: usize) -> Result<GorensteinReport> {
    let right = injective_dimension(alg, Hand::Right, bound)?;
    let left = injective_dimension(alg, Hand::Left, bound)?;
    let verdict = if right.is_finite() && left.is_finite() { Verdict::Gorenstein } else { Verdict::NotWithinBound };
    let symmetric = match (right, left) {
        (DimBound::Finite(a), DimBound::Finite(b)) => Some(a == b),
        _ => None,
    };
    Ok(GorensteinReport { bound, right, left, verdict, symmetric })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::algebra_from_text;
    use crate::module::simple;

    fn alg(text: &str) -> AlgebraRef {
        Arc::new(algebra_from_text(text).unwrap())
    }

    #[test]
    fn corpus_injective_dimensions() {
        let a2 = alg("field GF(7); vertex 1 2; arrow a: 1 -> 2;");
        let dn = alg("field GF(7); vertex 1; arrow x: 1 -> 1; relation x*x;");
        let l22 = alg("field GF(7); vertex 1; arrow x: 1 -> 1; arrow y: 1 -> 1; relation x*x; relation y*y; relation x*y; relation y*x;");
        assert_eq!(injective_dimension(&a2, Hand::Right, 10).unwrap(), DimBound::Finite(1));
        assert_eq!(injective_dimension(&a2, Hand::Left, 10).unwrap(), DimBound::Finite(1));
        assert_eq!(injective_dimension(&dn, Hand::Right, 10).unwrap(), DimBound::Finite(0));
        assert_eq!(injective_dimension(&l22, Hand::Right, 10).unwrap(), DimBound::Exceeded(10));
        assert_eq!(injective_dimension(&l22, Hand::Left, 10).unwrap(), DimBound::Exceeded(10));
        let r = is_gorenstein(&a2, 10).unwrap();
        assert_eq!((r.verdict, r.symmetric), (Verdict::Gorenstein, Some(true)));
        assert_eq!(is_gorenstein(&l22, 10).unwrap().verdict, Verdict::NotWithinBound);
        assert_eq!(module_projective_dimension(&simple(&a2, 0), 10).unwrap(), DimBound::Finite(1));
        assert_eq!(DimBound::Exceeded(10).to_string(), "bound-exceeded(10)");
    }

    #[test]
    fn long_finite_resolution_respects_bound() {
        let a4 = alg("field GF(3); vertex 1 2 3 4; arrow a: 1 -> 2; arrow b: 2 -> 3; arrow c: 3 -> 4; relation a*b; relation b*c;");
        let s4 = simple(&a4, 3);
        let full = module_injective_dimension(&s4, 10).unwrap();
        assert_eq!(full, DimBound::Finite(3));
        assert_eq!(module_injective_dimension(&s4, 2).unwrap(), DimBound::Exceeded(2));
    }
}
