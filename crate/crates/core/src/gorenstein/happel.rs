//! Cross-check of injective dimension against existence of restricted AR
//! triangles in `K^b(proj)` and `K^b(inj)`.

use super::{injective_dimension, kb_inj_envelope, kb_proj_cover, restrict_ar_triangle, DimBound, Hand, Subcategory};
use crate::algebra::AlgebraRef;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::module::{dual_regular, regular};
use crate::serre::{ar_triangle_ending_at, ar_triangle_starting_at, Corpus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictionOutcome {
    Ok,
    Failed(String),
    /// The corpus has no object on which the restricted triangle could be tested.
    HypothesisNotWitnessed,
}

impl RestrictionOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            RestrictionOutcome::Ok => "ok",
            RestrictionOutcome::Failed(_) => "failed",
            RestrictionOutcome::HypothesisNotWitnessed => "hypothesis-not-witnessed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HappelSide {
    pub subcategory: Subcategory,
    pub dimension: DimBound,
    /// `A` has a `K^b(inj)`-envelope, or `DA` a `K^b(proj)`-cover.
    pub approximation_found: bool,
    /// Outcome per base corpus object lying in the subcategory.
    pub outcomes: Vec<(usize, RestrictionOutcome)>,
}

impl HappelSide {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|(_, o)| matches!(o, RestrictionOutcome::Failed(_))).count()
    }

    pub fn witnessed(&self) -> usize {
        self.outcomes.iter().filter(|(_, o)| *o != RestrictionOutcome::HypothesisNotWitnessed).count()
    }

    /// Finite dimension exactly when the approximation exists and every
    /// witnessed restriction succeeds.
    pub fn consistent(&self) -> bool {
        self.dimension.is_finite() == (self.approximation_found && self.failures() == 0)
    }
}

#[derive(Clone, Debug)]
pub struct HappelReport {
    pub bound: usize,
    pub corpus_name: String,
    pub injective: HappelSide,
    pub projective: HappelSide,
}

impl HappelReport {
    pub fn consistent(&self) -> bool {
        self.injective.consistent() && self.projective.consistent()
    }
}

fn outcome(r: Result<crate::serre::ArTriangleCertificate>) -> Result<RestrictionOutcome> {
    match r {
        Ok(c) if c.ok() => Ok(RestrictionOutcome::Ok),
        Ok(c) => Ok(RestrictionOutcome::Failed(c.failures().join(", "))),
        Err(Error::HypothesisNotWitnessed(_)) => Ok(RestrictionOutcome::HypothesisNotWitnessed),
        Err(e @ (Error::NotFoundWithinBound(_) | Error::Verification(_))) => Ok(RestrictionOutcome::Failed(e.to_string())),
        Err(e) => Err(e),
    }
}

fn side(sub: Subcategory, alg: &AlgebraRef, corpus: &Corpus, bound: usize) -> Result<HappelSide> {
    let samples = sub.restrict_corpus(corpus)?;
    let (dimension, approximation_found) = match sub {
        Subcategory::Coperfect => {
            let d = injective_dimension(alg, Hand::Right, bound)?;
            let a = Complex::stalk(&regular(alg), 0);
            (d, kb_inj_envelope(&a, bound + 1, &samples.base)?.is_some_and(|e| e.ok()))
        }
        Subcategory::Perfect => {
            let d = injective_dimension(alg, Hand::Left, bound)?;
            let da = Complex::stalk(&dual_regular(alg), 0);
            (d, kb_proj_cover(&da, bound + 1, &samples.base)?.is_some_and(|c| c.ok()))
        }
    };
    let mut outcomes = Vec::new();
    for (k, b) in corpus.base.iter().enumerate() {
        if !sub.contains(b)? {
            continue;
        }
        let ambient = match sub {
            Subcategory::Perfect => ar_triangle_ending_at(b, corpus)?,
            Subcategory::Coperfect => ar_triangle_starting_at(b, corpus)?,
        };
        outcomes.push((k, outcome(restrict_ar_triangle(&ambient, sub, bound + 1, corpus))?));
    }
    Ok(HappelSide { subcategory: sub, dimension, approximation_found, outcomes })
}

/// Injective dimensions of `A_A` and `_AA` set against the existence of
/// AR triangles restricted to `K^b(inj)` and `K^b(proj)`.
pub fn happel_report(alg: &AlgebraRef, corpus: &Corpus, bound: usize) -> Result<HappelReport> {
    Ok(HappelReport {
        bound,
        corpus_name: corpus.name.clone(),
        injective: side(Subcategory::Coperfect, alg, corpus, bound)?,
        projective: side(Subcategory::Perfect, alg, corpus, bound)?,
    })
}
