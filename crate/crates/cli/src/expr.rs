//! Object expressions:
//!
//! ```text
//! obj  := stalk(MOD, n) | shift(obj, n) | sum(obj, obj) | cone(MAP) | complex(PATH)
//! MOD  := P<v> | I<v> | S<v> | A | DA | module(PATH)
//! MAP  := cover(MOD) | envelope(MOD) | map(PATH)
//! ```

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use arh_core::algebra::AlgebraRef;
use arh_core::complex::{cone, stalk_map, ChainMap, Complex};
use arh_core::module::{dual_regular, injective, injective_envelope, projective, projective_cover, regular, simple, Module};
use arh_core::textio::Reader;

use crate::InputError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(i64),
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '-' | '+' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().map_err(|_| InputError::new(format!("bad integer `{s}`")))?));
            }
            _ => {
                let start = i;
                while i < chars.len() && !matches!(chars[i], '(' | ')' | ',' | ' ' | '\t' | '\n') {
                    i += 1;
                }
                out.push(Tok::Word(chars[start..i].iter().collect()));
            }
        }
    }
    Ok(out)
}

pub struct Resolver<'a> {
    pub alg: &'a AlgebraRef,
    /// Relative file paths resolve against this directory.
    pub base: PathBuf,
}

struct Parser<'a, 'r> {
    toks: Vec<Tok>,
    pos: usize,
    r: &'r Resolver<'a>,
}

impl Parser<'_, '_> {
    fn next(&mut self) -> Result<Tok> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| InputError::new("unexpected end of expression"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let got = self.next()?;
        if got != t {
            bail!(InputError::new(format!("expected {t:?}, found {got:?}")));
        }
        Ok(())
    }

    fn word(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Word(w) => Ok(w),
            Tok::Int(n) => Ok(n.to_string()),
            t => bail!(InputError::new(format!("expected a name, found {t:?}"))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.next()? {
            Tok::Int(n) => Ok(n),
            t => bail!(InputError::new(format!("expected an integer, found {t:?}"))),
        }
    }

    fn call<T>(&mut self, body: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.expect(Tok::Open)?;
        let v = body(self)?;
        self.expect(Tok::Close)?;
        Ok(v)
    }

    fn object(&mut self) -> Result<Complex> {
        let head = self.word()?;
        match head.as_str() {
            "stalk" => self.call(|p| {
                let m = p.module()?;
                p.expect(Tok::Comma)?;
                let d = p.int()?;
                Ok(Complex::stalk(&m, d))
            }),
            "shift" => self.call(|p| {
                let x = p.object()?;
                p.expect(Tok::Comma)?;
                let n = p.int()?;
                Ok(x.shift(n))
            }),
            "sum" => self.call(|p| {
                let x = p.object()?;
                p.expect(Tok::Comma)?;
                let y = p.object()?;
                Ok(Complex::direct_sum(&[x, y])?)
            }),
            "cone" => self.call(|p| Ok(cone(&p.map()?).z().clone())),
            "complex" => self.call(|p| {
                let path = p.path()?;
                let text = read(&path)?;
                Ok(Reader::new(&text, p.r.alg).complex().map_err(|e| InputError::new(format!("{}: {e}", path.display())))?)
            }),
            other => bail!(InputError::new(format!("unknown object constructor `{other}`"))),
        }
    }

    fn path(&mut self) -> Result<PathBuf> {
        let w = self.word()?;
        Ok(self.r.base.join(w))
    }

    fn module(&mut self) -> Result<Module> {
        let name = self.word()?;
        if name == "module" {
            return self.call(|p| {
                let path = p.path()?;
                let text = read(&path)?;
                Ok(Reader::new(&text, p.r.alg).module().map_err(|e| InputError::new(format!("{}: {e}", path.display())))?)
            });
        }
        resolve_module(self.r.alg, &name)
    }

    fn map(&mut self) -> Result<ChainMap> {
        let head = self.word()?;
        match head.as_str() {
            "cover" => self.call(|p| Ok(stalk_map(&projective_cover(&p.module()?)?.map, 0))),
            "envelope" => self.call(|p| Ok(stalk_map(&injective_envelope(&p.module()?)?.map, 0))),
            "map" => self.call(|p| {
                let path = p.path()?;
                let text = read(&path)?;
                Ok(Reader::new(&text, p.r.alg).chain_map().map_err(|e| InputError::new(format!("{}: {e}", path.display())))?)
            }),
            other => bail!(InputError::new(format!("unknown map `{other}`"))),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path).map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?)
}

/// `P<v>`, `I<v>`, `S<v>`, `A` or `DA` for a vertex name `v`.
pub fn resolve_module(alg: &AlgebraRef, name: &str) -> Result<Module> {
    match name {
        "A" => return Ok(regular(alg)),
        "DA" => return Ok(dual_regular(alg)),
        _ => {}
    }
    let mut chars = name.chars();
    let kind = chars.next().ok_or_else(|| InputError::new("empty module name"))?;
    let vertex = chars.as_str();
    let v = alg
        .vertex_index(vertex)
        .ok_or_else(|| InputError::new(format!("unresolved module name `{name}`: no vertex `{vertex}`")))?;
    match kind {
        'P' => Ok(projective(alg, v)),
        'I' => Ok(injective(alg, v)),
        'S' => Ok(simple(alg, v)),
        _ => bail!(InputError::new(format!("unresolved module name `{name}`: expected P, I or S"))),
    }
}

pub fn parse_object(text: &str, r: &Resolver) -> Result<Complex> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, r };
    let x = p.object()?;
    if p.pos != p.toks.len() {
        bail!(InputError::new(format!("trailing input after object expression `{text}`")));
    }
    Ok(x)
}

pub fn parse_module(text: &str, r: &Resolver) -> Result<Module> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, r };
    let m = p.module()?;
    if p.pos != p.toks.len() {
        bail!(InputError::new(format!("trailing input after module expression `{text}`")));
    }
    Ok(m)
}
