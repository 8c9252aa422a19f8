//! Line-oriented text blocks for matrices, modules, complexes, chain maps
//! and triangle certificates.
//!
//! ```text
//! module 2
//! act e1 [2x2: 1 0 ; 0 0]
//! ...
//! end
//! ```

use std::fmt::Write as _;

use crate::algebra::AlgebraRef;
use crate::complex::{ChainMap, Complex, Triangle};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::module::Module;
use crate::serre::{ArTriangleCertificate, Side};

pub const MACHINE_BEGIN: &str = "```machine";
pub const MACHINE_END: &str = "```";

/// Parses `[RxC: a b ; c d]`.
pub fn parse_mat(field: Field, text: &str) -> Result<Mat> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("matrix must be bracketed: `{t}`")))?;
    let (shape, body) = inner.split_once(':').ok_or_else(|| Error::Parse(format!("missing `:` in `{t}`")))?;
    let (r, c) = shape.trim().split_once('x').ok_or_else(|| Error::Parse(format!("bad shape in `{t}`")))?;
    let rows: usize = r.trim().parse().map_err(|_| Error::Parse(format!("bad row count in `{t}`")))?;
    let cols: usize = c.trim().parse().map_err(|_| Error::Parse(format!("bad column count in `{t}`")))?;
    let mut data = Vec::with_capacity(rows * cols);
    if rows > 0 {
        let lines: Vec<&str> = body.split(';').collect();
        if lines.len() != rows {
            return Err(Error::Parse(format!("expected {rows} rows in `{t}`")));
        }
        for line in lines {
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::Parse(format!("expected {cols} entries per row in `{t}`")));
            }
            for e in entries {
                data.push(field.parse_scalar(e)?);
            }
        }
    } else if !body.trim().is_empty() {
        return Err(Error::Parse(format!("entries given for an empty matrix in `{t}`")));
    }
    Ok(Mat::new(field, rows, cols, data))
}

pub fn write_module(out: &mut String, m: &Module) {
    let labels = m.alg().labels();
    writeln!(out, "module {}", m.dim()).unwrap();
    for (label, a) in labels.iter().zip(m.actions()) {
        writeln!(out, "act {label} {a}").unwrap();
    }
    out.push_str("end\n");
}

pub fn write_complex(out: &mut String, x: &Complex) {
    let degrees: Vec<i64> = x.degrees().collect();
    writeln!(out, "complex {} {}", if x.is_zero() { 0 } else { x.lo() }, degrees.len()).unwrap();
    for &i in &degrees {
        write_module(out, &x.term(i));
    }
    for &i in degrees.iter().take(degrees.len().saturating_sub(1)) {
        writeln!(out, "diff {i} {}", x.d(i)).unwrap();
    }
    out.push_str("end\n");
}

fn write_comps(out: &mut String, name: &str, f: &ChainMap) {
    writeln!(out, "map {name}").unwrap();
    for i in f.src.degrees() {
        writeln!(out, "comp {i} {}", f.comp(i)).unwrap();
    }
    out.push_str("end\n");
}

pub fn write_chain_map(out: &mut String, f: &ChainMap) {
    out.push_str("chainmap\n");
    write_complex(out, &f.src);
    write_complex(out, &f.tgt);
    write_comps(out, "f", f);
    out.push_str("end\n");
}

pub fn write_triangle(out: &mut String, t: &Triangle) {
    out.push_str("triangle\n");
    write_complex(out, t.x());
    write_complex(out, t.y());
    write_complex(out, t.z());
    write_comps(out, "u", &t.u);
    write_comps(out, "v", &t.v);
    write_comps(out, "w", &t.w);
    out.push_str("end\n");
}

pub fn side_name(s: Side) -> &'static str {
    match s {
        Side::EndingAt => "ending-at",
        Side::StartingAt => "starting-at",
        Side::Given => "given",
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The verdict lines of a certificate, in a fixed order.
pub fn certificate_verdicts(c: &ArTriangleCertificate) -> Vec<(&'static str, String)> {
    vec![
        ("composites-vanish", yes(c.composites_vanish).into()),
        ("distinguished", yes(c.distinguished).into()),
        ("right-not-split", yes(c.right.not_split).into()),
        ("right-factorization", yes(c.right.failure.is_none()).into()),
        ("right-minimal", yes(c.right_minimal.ok()).into()),
        ("left-not-split", yes(c.left.not_split).into()),
        ("left-factorization", yes(c.left.failure.is_none()).into()),
        ("left-minimal", yes(c.left_minimal.ok()).into()),
        (
            "connecting-normalized",
            match c.connecting_normalized {
                Some(b) => yes(b).into(),
                None => "n/a".into(),
            },
        ),
        ("ok", yes(c.ok()).into()),
    ]
}

pub fn write_certificate(out: &mut String, c: &ArTriangleCertificate) {
    let alg = c.triangle.x().alg().clone();
    writeln!(out, "certificate ar-triangle").unwrap();
    writeln!(out, "field {}", alg.field()).unwrap();
    writeln!(out, "algebra-dim {}", alg.dim()).unwrap();
    writeln!(out, "side {}", side_name(c.side)).unwrap();
    writeln!(out, "corpus-size {}", c.corpus_size).unwrap();
    writeln!(out, "corpus {}", c.corpus_name).unwrap();
    for (k, v) in certificate_verdicts(c) {
        writeln!(out, "check {k} {v}").unwrap();
    }
    let radical = |e: &[crate::serre::FactorEntry]| e.iter().map(|x| x.radical_dim).sum::<usize>();
    writeln!(out, "right-radical-total {}", radical(&c.right.entries)).unwrap();
    writeln!(out, "left-radical-total {}", radical(&c.left.entries)).unwrap();
    write_triangle(out, &c.triangle);
    out.push_str("end\n");
}

/// Line reader over a machine block; blank lines and `#` comments are skipped.
pub struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    alg: AlgebraRef,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str, alg: &AlgebraRef) -> Reader<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Reader { lines, pos: 0, alg: alg.clone() }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let line = self.lines.get(self.pos).map_or(0, |l| l.0);
        Error::Parse(format!("line {line}: {}", msg.into()))
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    pub fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, l)| l.split_whitespace().next().unwrap_or(""))
    }

    /// Consumes a line starting with `kw` and returns the rest.
    pub fn expect(&mut self, kw: &str) -> Result<&'a str> {
        let (_, line) = *self.lines.get(self.pos).ok_or_else(|| self.err(format!("expected `{kw}`, found end of input")))?;
        let rest = match line.split_once(char::is_whitespace) {
            Some((head, rest)) if head == kw => rest.trim(),
            None if line == kw => "",
            _ => return Err(self.err(format!("expected `{kw}`, found `{line}`"))),
        };
        self.pos += 1;
        Ok(rest)
    }

    fn int<T: std::str::FromStr>(&self, s: &str) -> Result<T> {
        s.trim().parse().map_err(|_| self.err(format!("expected an integer, found `{s}`")))
    }

    fn mat(&self, s: &str) -> Result<Mat> {
        parse_mat(self.alg.field(), s).map_err(|e| self.err(e.to_string()))
    }

    pub fn module(&mut self) -> Result<Module> {
        let dim: usize = {
            let rest = self.expect("module")?;
            self.int(rest)?
        };
        let labels = self.alg.labels();
        let mut action = vec![None; labels.len()];
        while self.peek_keyword() == Some("act") {
            let rest = self.expect("act")?;
            let (label, m) = rest.split_once(char::is_whitespace).ok_or_else(|| self.err("`act <label> <matrix>`"))?;
            let k = labels.iter().position(|l| l == label).ok_or_else(|| self.err(format!("unknown basis label `{label}`")))?;
            action[k] = Some(self.mat(m)?);
        }
        self.expect("end")?;
        let action: Vec<Mat> = action
            .into_iter()
            .zip(&labels)
            .map(|(a, l)| a.ok_or_else(|| self.err(format!("missing action of `{l}`"))))
            .collect::<Result<_>>()?;
        Module::new(self.alg.clone(), dim, action)
    }

    pub fn complex(&mut self) -> Result<Complex> {
        let rest = self.expect("complex")?;
        let mut it = rest.split_whitespace();
        let lo: i64 = self.int(it.next().unwrap_or(""))?;
        let n: usize = self.int(it.next().unwrap_or(""))?;
        let terms = (0..n).map(|_| self.module()).collect::<Result<Vec<_>>>()?;
        let mut diffs = Vec::new();
        for k in 0..n.saturating_sub(1) {
            let rest = self.expect("diff")?;
            let (deg, m) = rest.split_once(char::is_whitespace).ok_or_else(|| self.err("`diff <degree> <matrix>`"))?;
            if self.int::<i64>(deg)? != lo + k as i64 {
                return Err(self.err("differentials must be listed in degree order"));
            }
            diffs.push(self.mat(m)?);
        }
        self.expect("end")?;
        Complex::new(self.alg.clone(), lo, terms, diffs)
    }

    fn comps(&mut self, name: &str, src: &Complex, tgt: &Complex) -> Result<ChainMap> {
        let got = self.expect("map")?;
        if got != name {
            return Err(self.err(format!("expected map `{name}`, found `{got}`")));
        }
        let mut comps = Vec::new();
        for i in src.degrees() {
            let rest = self.expect("comp")?;
            let (deg, m) = rest.split_once(char::is_whitespace).ok_or_else(|| self.err("`comp <degree> <matrix>`"))?;
            if self.int::<i64>(deg)? != i {
                return Err(self.err(format!("expected component in degree {i}")));
            }
            comps.push(self.mat(m)?);
        }
        self.expect("end")?;
        ChainMap::new(src.clone(), tgt.clone(), comps).map_err(|e| self.err(format!("map `{name}`: {e}")))
    }

    pub fn chain_map(&mut self) -> Result<ChainMap> {
        self.expect("chainmap")?;
        let src = self.complex()?;
        let tgt = self.complex()?;
        let f = self.comps("f", &src, &tgt)?;
        self.expect("end")?;
        Ok(f)
    }

    pub fn triangle(&mut self) -> Result<Triangle> {
        self.expect("triangle")?;
        let x = self.complex()?;
        let y = self.complex()?;
        let z = self.complex()?;
        let u = self.comps("u", &x, &y)?;
        let v = self.comps("v", &y, &z)?;
        let w = self.comps("w", &z, &x.shift(1))?;
        self.expect("end")?;
        Ok(Triangle { u, v, w })
    }

    /// A certificate block: the recorded verdicts and the triangle.
    pub fn certificate(&mut self) -> Result<ParsedCertificate> {
        self.expect("certificate")?;
        let field = self.expect("field")?.to_string();
        if field != self.alg.field().to_string() {
            return Err(self.err(format!("certificate is over {field}, algebra over {}", self.alg.field())));
        }
        let dim: usize = {
            let rest = self.expect("algebra-dim")?;
            self.int(rest)?
        };
        if dim != self.alg.dim() {
            return Err(self.err(format!("certificate algebra has dimension {dim}, file gives {}", self.alg.dim())));
        }
        let side = self.expect("side")?.to_string();
        let corpus_size: usize = {
            let rest = self.expect("corpus-size")?;
            self.int(rest)?
        };
        let corpus = self.expect("corpus")?.to_string();
        let mut checks = Vec::new();
        while self.peek_keyword() == Some("check") {
            let rest = self.expect("check")?;
            let (k, v) = rest.split_once(char::is_whitespace).ok_or_else(|| self.err("`check <name> <verdict>`"))?;
            checks.push((k.to_string(), v.trim().to_string()));
        }
        self.expect("right-radical-total")?;
        self.expect("left-radical-total")?;
        let triangle = self.triangle()?;
        self.expect("end")?;
        Ok(ParsedCertificate { side, corpus, corpus_size, checks, triangle })
    }
}

#[derive(Clone, Debug)]
pub struct ParsedCertificate {
    pub side: String,
    pub corpus: String,
    pub corpus_size: usize,
    pub checks: Vec<(String, String)>,
    pub triangle: Triangle,
}

/// Contents of every fenced machine section in `text`.
pub fn machine_sections(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current: Option<String> = None;
    for line in text.lines() {
        match &mut current {
            None if line.trim() == MACHINE_BEGIN => current = Some(String::new()),
            None => {}
            Some(buf) if line.trim() == MACHINE_END => {
                out.push(std::mem::take(buf));
                current = None;
            }
            Some(buf) => {
                buf.push_str(line);
                buf.push('\n');
            }
        }
    }
    out
}
