//! Finite-dimensional algebras of matrices (typically endomorphism rings)
//! and the decision whether such an algebra is local.
//!
//! Over `GF(p)` the radical of a local algebra is recovered as the preimage
//! of the nilradical of `E/[E,E]E`, where the Frobenius power is linear. Over
//! `Q` the trace form is used.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Field, Mat, Quotient, Subspace};

const RANDOM_TRIES: usize = 200;
const QUICK_TRIES: usize = 4;
const EIGEN_SCAN_LIMIT: u32 = 4096;

/// A subalgebra of `N x N` matrices containing the identity, given by a
/// basis.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    field: Field,
    size: usize,
    basis: Vec<Mat>,
    coords: Coordinates,
}

#[derive(Clone, Debug)]
pub enum LocalDecision {
    /// The algebra is local; the radical is given in basis coordinates.
    Local { radical: Subspace },
    /// An element that is neither nilpotent nor invertible.
    Split(Mat),
}

impl FdAlgebra {
    pub fn new(field: Field, size: usize, basis: Vec<Mat>) -> Result<FdAlgebra> {
        let flat: Vec<Mat> = basis.iter().map(Mat::flatten).collect();
        let refs: Vec<&Mat> = flat.iter().collect();
        let coords = Coordinates::new(Mat::vstack(field, size * size, &refs))?;
        Ok(FdAlgebra { field, size, basis, coords })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn element(&self, coeffs: &Mat) -> Mat {
        self.coords.combine(coeffs).reshape(self.size, self.size)
    }

    pub fn coords(&self, m: &Mat) -> Option<Mat> {
        self.coords.coords(&m.flatten())
    }

    fn coords_unchecked(&self, m: &Mat) -> Mat {
        self.coords.coords_unchecked(&m.flatten())
    }

    fn rows_to_coords(&self, mats: &[Mat]) -> Mat {
        let rows: Vec<Mat> = mats.iter().map(|m| self.coords_unchecked(m)).collect();
        let refs: Vec<&Mat> = rows.iter().collect();
        Mat::vstack(self.field, self.dim(), &refs)
    }

    /// Two-sided ideal generated by the given coefficient rows.
    pub fn ideal(&self, gens: &Mat) -> Subspace {
        let mut span = Subspace::span(gens);
        loop {
            let mut mats = Vec::new();
            for r in 0..span.dim() {
                let x = self.element(&span.basis().row(r));
                for b in &self.basis {
                    mats.push(x.mul(b));
                    mats.push(b.mul(&x));
                }
                mats.push(x);
            }
            let next = Subspace::span(&self.rows_to_coords(&mats));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn is_nilpotent_ideal(&self, ideal: &Subspace) -> bool {
        let gens: Vec<Mat> = (0..ideal.dim()).map(|r| self.element(&ideal.basis().row(r))).collect();
        let mut power = gens.clone();
        for _ in 0..=self.dim() {
            if power.is_empty() {
                return true;
            }
            let mut next = Vec::new();
            for x in &power {
                for g in &gens {
                    next.push(x.mul(g));
                }
            }
            let span = Subspace::span(&self.rows_to_coords(&next));
            power = (0..span.dim()).map(|r| self.element(&span.basis().row(r))).collect();
        }
        power.is_empty()
    }

    /// Radical via the trace form; valid in characteristic zero.
    pub fn trace_radical(&self) -> Subspace {
        let d = self.dim();
        let f = self.field;
        let mut t = Mat::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                t.set(i, j, self.basis[i].mul(&self.basis[j]).trace());
            }
        }
        Subspace::span(&t.left_kernel())
    }

    fn is_split_element(&self, x: &Mat) -> bool {
        !x.is_nilpotent() && !x.is_invertible()
    }

    fn identity_coords(&self) -> Mat {
        self.coords_unchecked(&Mat::identity(self.field, self.size))
    }

    /// Looks for an element that is neither nilpotent nor invertible.
    pub fn find_split_element(&self, seed: u64) -> Option<Mat> {
        let f = self.field;
        let id = Mat::identity(f, self.size);
        let mut candidates: Vec<Mat> = self.basis.clone();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                candidates.push(self.basis[i].add(&self.basis[j]));
                candidates.push(self.basis[i].sub(&self.basis[j]));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_TRIES {
            let coeffs: Vec<_> = (0..self.dim()).map(|_| f.from_int(rng.gen_range(-3..=3))).collect();
            candidates.push(self.element(&Mat::row_vector(f, coeffs)));
        }
        let shifts: Vec<crate::linalg::Scalar> = match f {
            Field::Prime(p) if p <= EIGEN_SCAN_LIMIT => f.elements().unwrap(),
            _ => (-4..=4).map(|k| f.from_int(k)).collect(),
        };
        for x in &candidates {
            if self.is_split_element(x) {
                return Some(x.clone());
            }
        }
        for x in candidates.iter().take(self.dim() * self.dim() + 8) {
            for s in &shifts {
                let y = x.sub(&id.scale(s));
                if self.is_split_element(&y) {
                    return Some(y);
                }
            }
        }
        None
    }

    /// Cheap scan of basis elements and a few random combinations.
    fn quick_split(&self) -> Option<Mat> {
        let f = self.field;
        if let Some(x) = self.basis.iter().find(|b| self.is_split_element(b)) {
            return Some(x.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37);
        (0..QUICK_TRIES).find_map(|_| {
            let coeffs: Vec<_> = (0..self.dim()).map(|_| f.from_int(rng.gen_range(-3..=3))).collect();
            let x = self.element(&Mat::row_vector(f, coeffs));
            self.is_split_element(&x).then_some(x)
        })
    }

    pub fn decide_local(&self) -> Result<LocalDecision> {
        if self.dim() == 0 {
            return Err(Error::ZeroObject("the zero ring is not local".into()));
        }
        if let Some(x) = self.quick_split() {
            return Ok(LocalDecision::Split(x));
        }
        match self.field {
            Field::Prime(p) => self.decide_local_modular(p),
            Field::Rational => self.decide_local_rational(),
        }
    }

    fn decide_local_rational(&self) -> Result<LocalDecision> {
        let rad = self.trace_radical();
        if self.dim() - rad.dim() == 1 {
            return Ok(LocalDecision::Local { radical: rad });
        }
        self.find_split_element(0x5eed)
            .map(LocalDecision::Split)
            .ok_or_else(|| Error::Locality(format!("semisimple quotient of dimension {} not split", self.dim() - rad.dim())))
    }

    fn decide_local_modular(&self, p: u32) -> Result<LocalDecision> {
        let f = self.field;
        let d = self.dim();
        // commutator ideal
        let mut comms = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                comms.push(self.basis[i].mul(&self.basis[j]).sub(&self.basis[j].mul(&self.basis[i])));
            }
        }
        let c = self.ideal(&self.rows_to_coords(&comms));
        // p^m >= d bounds every nilpotency index in E/C
        let mut exp: usize = p as usize;
        while exp < d.max(self.size) {
            exp = exp.saturating_mul(p as usize);
        }
        let frob: Vec<Mat> = self.basis.iter().map(|b| b.pow(exp)).collect();
        let frob_coords = self.rows_to_coords(&frob);
        let jc = {
            let mod_c = Quotient::of_ambient(c.basis())?;
            let reduced = mod_c.project_unchecked(&frob_coords);
            let ker = if reduced.cols() == 0 { Mat::identity(f, d) } else { reduced.left_kernel() };
            let both = Mat::vstack(f, d, &[&ker, c.basis()]);
            Subspace::span(&both)
        };
        if !self.is_nilpotent_ideal(&jc) {
            return self
                .find_split_element(0x5eed)
                .map(LocalDecision::Split)
                .ok_or_else(|| Error::Locality("no splitting element found".into()));
        }
        // E/J is a product of finite fields; count them through Frobenius fixed points
        let mod_j = Quotient::of_ambient(jc.basis())?;
        let frob1: Vec<Mat> = self.basis.iter().map(|b| b.pow(p as usize).sub(b)).collect();
        let fixed_map = mod_j.project_unchecked(&self.rows_to_coords(&frob1));
        let top_dim = mod_j.dim();
        let reps = mod_j.reps();
        let fixed = if top_dim == 0 { Mat::zeros(f, 0, 0) } else { reps.mul(&fixed_map).left_kernel() };
        if fixed.rows() <= 1 {
            return Ok(LocalDecision::Local { radical: jc });
        }
        let one = mod_j.project_unchecked(&self.identity_coords());
        let line = Subspace::span(&one);
        for r in 0..fixed.rows() {
            let yq = fixed.row(r);
            if line.contains(&yq) {
                continue;
            }
            let y = self.element(&mod_j.lift(&yq));
            if let Some(a) = self.eigenvalue_mod(&y, &mod_j, p) {
                let x = y.sub(&Mat::identity(f, self.size).scale(&a));
                debug_assert!(self.is_split_element(&x));
                return Ok(LocalDecision::Split(x));
            }
        }
        self.find_split_element(0x5eed)
            .map(LocalDecision::Split)
            .ok_or_else(|| Error::Locality("could not separate the residue fields".into()))
    }

    /// A root in `GF(p)` of the minimal polynomial of `y` modulo the radical.
    fn eigenvalue_mod(&self, y: &Mat, mod_j: &Quotient, p: u32) -> Option<crate::linalg::Scalar> {
        let f = self.field;
        let proj = |m: &Mat| mod_j.project_unchecked(&self.coords_unchecked(m));
        let mut powers = vec![proj(&Mat::identity(f, self.size))];
        let mut cur = Mat::identity(f, self.size);
        let poly = loop {
            cur = cur.mul(y);
            let next = proj(&cur);
            let refs: Vec<&Mat> = powers.iter().collect();
            let stacked = Mat::vstack(f, mod_j.dim(), &refs);
            if let Some(sol) = stacked.solve_left(&next).ok().flatten() {
                // y^k = sum c_i y^i
                let mut coeffs: Vec<_> = (0..sol.cols()).map(|i| f.neg(sol.get(0, i))).collect();
                coeffs.push(f.one());
                break coeffs;
            }
            powers.push(next);
            if powers.len() > mod_j.dim() + 1 {
                return None;
            }
        };
        if p > EIGEN_SCAN_LIMIT * 16 {
            return None;
        }
        (0..p as i64).map(|a| f.from_int(a)).find(|a| {
            let mut acc = f.zero();
            for c in poly.iter().rev() {
                acc = f.add(&f.mul(&acc, a), c);
            }
            f.is_zero(&acc)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mats(f: Field, n: usize, entries: &[&[i64]]) -> Vec<Mat> {
        entries.iter().map(|e| Mat::from_ints(f, n, n, e)).collect()
    }

    #[test]
    fn dual_numbers_are_local() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::Rational] {
            let e = FdAlgebra::new(f, 2, mats(f, 2, &[&[1, 0, 0, 1], &[0, 1, 0, 0]])).unwrap();
            match e.decide_local().unwrap() {
                LocalDecision::Local { radical } => assert_eq!(radical.dim(), 1),
                LocalDecision::Split(_) => panic!("dual numbers are local"),
            }
        }
    }

    #[test]
    fn diagonal_algebra_splits() {
        for f in [Field::prime(2).unwrap(), Field::prime(7).unwrap(), Field::Rational] {
            let e = FdAlgebra::new(f, 2, mats(f, 2, &[&[1, 0, 0, 1], &[1, 1, 0, 0]])).unwrap();
            // span{1, [[1,1],[0,0]]} is isomorphic to k x k
            match e.decide_local().unwrap() {
                LocalDecision::Split(x) => assert!(!x.is_nilpotent() && !x.is_invertible()),
                LocalDecision::Local { .. } => panic!("k x k is not local"),
            }
        }
    }

    #[test]
    fn matrix_algebra_splits_in_characteristic_two() {
        let f = Field::prime(2).unwrap();
        let e = FdAlgebra::new(
            f,
            2,
            mats(f, 2, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        )
        .unwrap();
        assert!(matches!(e.decide_local().unwrap(), LocalDecision::Split(_)));
    }

    #[test]
    fn field_extension_is_local() {
        // GF(4) inside 2x2 matrices over GF(2): 1 and the companion of t^2+t+1
        let f = Field::prime(2).unwrap();
        let e = FdAlgebra::new(f, 2, mats(f, 2, &[&[1, 0, 0, 1], &[0, 1, 1, 1]])).unwrap();
        match e.decide_local().unwrap() {
            LocalDecision::Local { radical } => assert_eq!(radical.dim(), 0),
            LocalDecision::Split(_) => panic!("GF(4) is a field"),
        }
    }
}
