//! Finite test corpora standing in for "all objects" in almost-split checks.

use crate::algebra::AlgebraRef;
use crate::complex::{analyze, is_isomorphic_in_k, Complex};
use crate::error::Result;
use crate::module::{auslander_reiten_knit, hom_space, Module, ModuleMap};

pub const MODULE_DIM_BOUND: usize = 6;
pub const TWO_TERM_DIM_BOUND: usize = 4;
pub const SHIFT_RANGE: std::ops::RangeInclusive<i64> = -3..=3;
const KNIT_MAX_OBJECTS: usize = 64;

#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: String,
    /// Pairwise non-isomorphic indecomposables before shifting.
    pub base: Vec<Complex>,
    pub objects: Vec<Complex>,
}

impl Corpus {
    pub fn from_base(name: impl Into<String>, base: Vec<Complex>, shifts: std::ops::RangeInclusive<i64>) -> Corpus {
        let objects = shifts.flat_map(|s| base.iter().map(move |b| b.shift(s))).collect();
        Corpus { name: name.into(), base, objects }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

/// Indecomposable modules reached by knitting, up to the dimension bound.
pub fn module_corpus(alg: &AlgebraRef, dim_bound: usize) -> Result<Vec<Module>> {
    auslander_reiten_knit(alg, dim_bound, KNIT_MAX_OBJECTS)
}

fn term_profile(x: &Complex) -> Vec<(i64, usize)> {
    x.degrees().map(|i| (i, x.term_dim(i))).collect()
}

fn push_new(found: &mut Vec<Complex>, c: Complex) -> Result<()> {
    for old in found.iter() {
        if term_profile(old) == term_profile(&c) && is_isomorphic_in_k(old, &c)? {
            return Ok(());
        }
    }
    found.push(c);
    Ok(())
}

/// Indecomposable minimal complexes `M -> N` (degrees 0, 1) built from
/// basis morphisms and their sum between modules of dimension at most the bound.
pub fn two_term_corpus(modules: &[Module], dim_bound: usize) -> Result<Vec<Complex>> {
    let small: Vec<&Module> = modules.iter().filter(|m| m.dim() <= dim_bound).collect();
    let mut found = Vec::new();
    for m in &small {
        for n in &small {
            let hs = hom_space(m, n)?;
            let mut maps: Vec<_> = hs.basis().to_vec();
            if maps.len() > 1 {
                let mut total = maps[0].clone();
                for g in &maps[1..] {
                    total = total.add(g);
                }
                maps.push(total);
            }
            for g in maps {
                let f = ModuleMap::new_unchecked((*m).clone(), (*n).clone(), g);
                let a = analyze(&Complex::two_term(&f, 0))?;
                for p in &a.parts {
                    if p.object.width() == 2 {
                        push_new(&mut found, p.object.clone())?;
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Shifts in `[-3, 3]` of indecomposable module stalks and indecomposable
/// two-term minimal complexes with small terms.
pub fn default_corpus(alg: &AlgebraRef) -> Result<Corpus> {
    let modules = module_corpus(alg, MODULE_DIM_BOUND)?;
    let mut base: Vec<Complex> = modules.iter().map(|m| Complex::stalk(m, 0)).collect();
    let stalks = base.len();
    base.extend(two_term_corpus(&modules, TWO_TERM_DIM_BOUND)?);
    let name = format!(
        "default: {} module stalks (knit, dim <= {}) + {} two-term complexes (terms dim <= {}), shifts {}..{}",
        stalks,
        MODULE_DIM_BOUND,
        base.len() - stalks,
        TWO_TERM_DIM_BOUND,
        SHIFT_RANGE.start(),
        SHIFT_RANGE.end()
    );
    Ok(Corpus::from_base(name, base, SHIFT_RANGE))
}
