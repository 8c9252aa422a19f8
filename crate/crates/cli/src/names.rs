//! Short deterministic names for modules and complexes.

use anyhow::Result;
use arh_core::algebra::AlgebraRef;
use arh_core::complex::Complex;
use arh_core::module::{decompose_module, injective, is_isomorphic, projective, simple, Module};

pub struct Namer {
    named: Vec<(String, Module)>,
}

impl Namer {
    pub fn new(alg: &AlgebraRef) -> Namer {
        let mut named = Vec::new();
        for (v, name) in alg.vertex_names().iter().enumerate() {
            named.push((format!("P{name}"), projective(alg, v)));
        }
        for (v, name) in alg.vertex_names().iter().enumerate() {
            named.push((format!("I{name}"), injective(alg, v)));
        }
        for (v, name) in alg.vertex_names().iter().enumerate() {
            named.push((format!("S{name}"), simple(alg, v)));
        }
        Namer { named }
    }

    fn indecomposable(&self, m: &Module) -> Result<String> {
        for (name, n) in &self.named {
            if n.dim() == m.dim() && n.dimension_vector() == m.dimension_vector() && is_isomorphic(n, m)? {
                return Ok(name.clone());
            }
        }
        let dv: Vec<String> = m.dimension_vector().iter().map(|d| d.to_string()).collect();
        Ok(format!("M({})", dv.join(",")))
    }

    pub fn module(&self, m: &Module) -> Result<String> {
        if m.is_zero() {
            return Ok("0".into());
        }
        let mut parts = Vec::new();
        for (part, mult) in decompose_module(m)? {
            let n = self.indecomposable(&part)?;
            parts.push(if mult == 1 { n } else { format!("{n}^{mult}") });
        }
        parts.sort();
        Ok(parts.join("+"))
    }

    /// `N[k]` for a stalk at degree `-k`; `[T0 -> T1]@lo` otherwise.
    pub fn complex(&self, x: &Complex) -> Result<String> {
        if x.is_zero() {
            return Ok("0".into());
        }
        if x.is_stalk() {
            let n = self.module(&x.term(x.lo()))?;
            let n = if n.contains('+') { format!("({n})") } else { n };
            return Ok(if x.lo() == 0 { n } else { format!("{n}[{}]", -x.lo()) });
        }
        let terms: Vec<String> = x.degrees().map(|i| self.module(&x.term(i))).collect::<Result<_>>()?;
        Ok(format!("[{}]@{}", terms.join(" -> "), x.lo()))
    }
}
