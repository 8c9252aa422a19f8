//! Compiling a presentation into a basis of reduced paths with structure
//! constants.
//!
//! The ideal is handled by exact linear algebra on truncated path spaces:
//! admissibility is witnessed by exhibiting every path of some length `L` as
//! an honest (untruncated) combination of `u·r·v` products, after which the
//! algebra is `kQ_{<L} / trunc_L(I)`. The basis consists of the paths that are
//! not leading terms (largest in degree-lexicographic order) of the reduced
//! ideal basis.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::parse::QuiverPresentation;
use super::{Algebra, BasisPath};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Subspace};

pub const DEFAULT_LENGTH_BOUND: usize = 32;
// path spaces larger than this are treated as runaway growth
const PATH_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

fn deglex(a: &Path, b: &Path) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| {
            if a.len() == 0 {
                a.source.cmp(&b.source)
            } else {
                a.arrows.cmp(&b.arrows)
            }
        })
}

struct PathSpace<'p> {
    pres: &'p QuiverPresentation,
    by_len: Vec<Vec<Path>>,
}

impl<'p> PathSpace<'p> {
    fn new(pres: &'p QuiverPresentation) -> Self {
        let trivial = (0..pres.vertices.len())
            .map(|v| Path { source: v, target: v, arrows: vec![] })
            .collect();
        PathSpace { pres, by_len: vec![trivial] }
    }

    fn ensure(&mut self, len: usize) -> Result<()> {
        while self.by_len.len() <= len {
            let prev = self.by_len.last().unwrap();
            let mut next = Vec::new();
            for p in prev {
                for (ai, a) in self.pres.arrows.iter().enumerate() {
                    let joins = if p.len() == 0 { a.source == p.source } else { a.source == p.target };
                    if joins {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            next.sort_by(deglex);
            let total: usize = self.by_len.iter().map(Vec::len).sum::<usize>() + next.len();
            if total > PATH_CAP {
                return Err(Error::NonAdmissible { bound: self.by_len.len() });
            }
            self.by_len.push(next);
        }
        Ok(())
    }

    /// Paths of length `< len`.
    fn upto(&self, len: usize) -> Vec<Path> {
        self.by_len.iter().take(len).flatten().cloned().collect()
    }

    fn ending_at(&self, v: usize, max_len: usize) -> Vec<&Path> {
        self.by_len.iter().take(max_len + 1).flatten().filter(|p| p.target == v).collect()
    }

    fn starting_at(&self, v: usize, max_len: usize) -> Vec<&Path> {
        self.by_len.iter().take(max_len + 1).flatten().filter(|p| p.source == v).collect()
    }
}

fn concat(u: &Path, mid: &[usize], v: &Path) -> Vec<usize> {
    let mut out = u.arrows.clone();
    out.extend_from_slice(mid);
    out.extend_from_slice(&v.arrows);
    out
}

/// All products `u·r·v` (as path-coefficient lists) whose longest term has
/// length at most `max_len` (when `exact`), or whose shortest term has length
/// below `max_len` (when truncating).
fn ideal_elements(
    pres: &QuiverPresentation,
    space: &PathSpace,
    max_len: usize,
    exact: bool,
) -> Vec<Vec<(Vec<usize>, i64)>> {
    let mut out = Vec::new();
    for rel in &pres.relations {
        let (s, t) = pres.path_ends(&rel.terms[0].path).expect("validated relation");
        let lens: Vec<usize> = rel.terms.iter().map(|t| t.path.len()).collect();
        let key = if exact { *lens.iter().max().unwrap() } else { *lens.iter().min().unwrap() };
        let budget = if exact {
            match max_len.checked_sub(key) {
                Some(b) => b,
                None => continue,
            }
        } else {
            match (max_len - 1).checked_sub(key) {
                Some(b) => b,
                None => continue,
            }
        };
        for u in space.ending_at(s, budget) {
            for v in space.starting_at(t, budget - u.len()) {
                let elem = rel
                    .terms
                    .iter()
                    .map(|term| (concat(u, &term.path, v), term.coeff))
                    .collect();
                out.push(elem);
            }
        }
    }
    out
}

fn to_rows(
    field: Field,
    elems: &[Vec<(Vec<usize>, i64)>],
    index: &HashMap<Vec<usize>, usize>,
    cols: usize,
) -> Mat {
    let mut m = Mat::zeros(field, elems.len(), cols);
    for (r, e) in elems.iter().enumerate() {
        for (path, c) in e {
            if let Some(&col) = index.get(path) {
                let cur = m.get(r, col).clone();
                m.set(r, col, field.add(&cur, &field.from_int(*c)));
            }
        }
    }
    m
}

/// Finds the nilpotency length `L` (all paths of length `L` lie in the ideal).
fn admissibility_length(pres: &QuiverPresentation, space: &mut PathSpace, bound: usize) -> Result<usize> {
    let field = pres.field;
    for m in 1..=bound {
        space.ensure(m)?;
        let paths: Vec<Path> = space.upto(m + 1);
        let index: HashMap<Vec<usize>, usize> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() > 0)
            .map(|(i, p)| (p.arrows.clone(), i))
            .collect();
        let elems = ideal_elements(pres, space, m, true);
        let ideal = Subspace::span(&to_rows(field, &elems, &index, paths.len()));
        for l in 1..=m {
            let all_in = space.by_len[l].iter().all(|p| {
                let col = index[&p.arrows];
                ideal.contains(&Mat::unit_row(field, paths.len(), col))
            });
            if all_in {
                return Ok(l);
            }
        }
    }
    Err(Error::NonAdmissible { bound })
}

pub fn build(pres: &QuiverPresentation, length_bound: usize) -> Result<Algebra> {
    let field = pres.field;
    let mut space = PathSpace::new(pres);
    let nil_len = if pres.arrows.is_empty() { 1 } else { admissibility_length(pres, &mut space, length_bound)? };
    space.ensure(nil_len)?;

    // columns ordered from the largest path down so leading terms become pivots
    let mut cols: Vec<Path> = space.upto(nil_len);
    cols.sort_by(|a, b| deglex(b, a));
    let index: HashMap<Vec<usize>, usize> = cols
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() > 0)
        .map(|(i, p)| (p.arrows.clone(), i))
        .collect();
    let elems = ideal_elements(pres, &space, nil_len, false);
    let (reduced, pivots) = to_rows(field, &elems, &index, cols.len()).rref();
    if let Some(&bad) = pivots.iter().find(|&&c| cols[c].len() <= 1) {
        return Err(Error::Inconsistent(format!(
            "relations force the path `{}` into the ideal",
            path_label(pres, &cols[bad])
        )));
    }

    let mut basis_cols: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
    basis_cols.sort_by(|&a, &b| deglex(&cols[a], &cols[b]));
    let n = basis_cols.len();
    let col_to_basis: HashMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let pivot_row: HashMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();

    // normal form of an arbitrary path, as a row over the basis
    let normal_form = |arrows: &[usize], source: usize| -> Mat {
        let mut out = Mat::zeros(field, 1, n);
        if arrows.len() >= nil_len {
            return out;
        }
        let col = if arrows.is_empty() {
            cols.iter().position(|p| p.len() == 0 && p.source == source).unwrap()
        } else {
            index[arrows]
        };
        if let Some(&b) = col_to_basis.get(&col) {
            out.set(0, b, field.one());
        } else {
            let r = pivot_row[&col];
            for (b, &bc) in basis_cols.iter().enumerate() {
                out.set(0, b, field.neg(reduced.get(r, bc)));
            }
        }
        out
    };

    let basis: Vec<BasisPath> = basis_cols
        .iter()
        .map(|&c| {
            let p = &cols[c];
            BasisPath {
                label: path_label(pres, p),
                source: p.source,
                target: p.target,
                arrows: p.arrows.clone(),
            }
        })
        .collect();

    let mut left = Vec::with_capacity(n);
    for bi in &basis {
        let mut l = Mat::zeros(field, n, n);
        for (j, bj) in basis.iter().enumerate() {
            if bi.target != bj.source {
                continue;
            }
            let mut arrows = bi.arrows.clone();
            arrows.extend_from_slice(&bj.arrows);
            l.set_block(j, 0, &normal_form(&arrows, bi.source));
        }
        left.push(l);
    }

    let idempotents: Vec<usize> = (0..pres.vertices.len())
        .map(|v| basis.iter().position(|b| b.arrows.is_empty() && b.source == v).unwrap())
        .collect();
    let arrow_basis: Vec<usize> = (0..pres.arrows.len())
        .map(|a| basis.iter().position(|b| b.arrows == vec![a]).expect("arrows survive in an admissible quotient"))
        .collect();

    Ok(Algebra::from_parts(
        field,
        pres.vertices.clone(),
        pres.arrows.iter().map(|a| (a.name.clone(), a.source, a.target)).collect(),
        basis,
        left,
        idempotents,
        arrow_basis,
    ))
}

fn path_label(pres: &QuiverPresentation, p: &Path) -> String {
    if p.arrows.is_empty() {
        format!("e{}", pres.vertices[p.source])
    } else {
        pres.path_label(&p.arrows)
    }
}
