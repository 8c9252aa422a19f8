//! The quiver-with-relations text format.
//!
//! ```text
//! field GF(7);            # or `field Q`
//! vertex 1 2;
//! arrow a: 1 -> 2;
//! relation a*b - 2*c*d;   # `a*b` means "a then b"
//! ```

use crate::error::{Error, Result};
use crate::linalg::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub pos: Pos,
}

/// One term `coefficient * path`, the path given as arrow indices in
/// traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub vertex_pos: Vec<Pos>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Source and target vertex of a nonempty arrow path, if composable.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.target;
        for &a in &path[1..] {
            let arr = &self.arrows[a];
            if arr.source != at {
                return None;
            }
            at = arr.target;
        }
        Some((first.source, at))
    }

    pub fn path_label(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: li + 1, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), pos });
                continue;
            }
            if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push(Token { tok: Tok::Sym("->"), pos });
                i += 2;
                continue;
            }
            let sym = match c {
                ';' => ";",
                ':' => ":",
                '*' => "*",
                '+' => "+",
                '-' => "-",
                '(' => "(",
                ')' => ")",
                _ => {
                    return Err(Error::Syntax { line: pos.line, col: pos.col, msg: format!("unexpected character `{c}`") })
                }
            };
            out.push(Token { tok: Tok::Sym(sym), pos });
            i += 1;
        }
    }
    Ok(out)
}

fn syntax(pos: &Pos, msg: impl Into<String>) -> Error {
    Error::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
}

fn is_integer(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_digit())
}

/// Parses and validates a presentation.
pub fn parse_presentation(text: &str) -> Result<QuiverPresentation> {
    let tokens = tokenize(text)?;
    let mut statements: Vec<Vec<Token>> = vec![Vec::new()];
    for t in tokens {
        if t.tok == Tok::Sym(";") {
            statements.push(Vec::new());
        } else {
            statements.last_mut().unwrap().push(t);
        }
    }
    if let Some(last) = statements.last() {
        if let Some(t) = last.first() {
            return Err(syntax(&t.pos, "statement is missing its terminating `;`"));
        }
    }

    let mut field: Option<Field> = None;
    let mut pres = QuiverPresentation {
        field: Field::Prime(7),
        vertices: Vec::new(),
        vertex_pos: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
    };
    for st in statements.iter().filter(|s| !s.is_empty()) {
        let head = &st[0];
        let Tok::Word(kw) = &head.tok else {
            return Err(syntax(&head.pos, "expected a keyword"));
        };
        match kw.as_str() {
            "field" => {
                if field.is_some() {
                    return Err(syntax(&head.pos, "field declared twice"));
                }
                field = Some(parse_field(st)?);
            }
            "vertex" => {
                if st.len() < 2 {
                    return Err(syntax(&head.pos, "`vertex` needs at least one name"));
                }
                for t in &st[1..] {
                    let Tok::Word(name) = &t.tok else {
                        return Err(syntax(&t.pos, "expected a vertex name"));
                    };
                    if pres.vertices.contains(name) {
                        return Err(syntax(&t.pos, format!("vertex `{name}` declared twice")));
                    }
                    pres.vertices.push(name.clone());
                    pres.vertex_pos.push(t.pos.clone());
                }
            }
            "arrow" => {
                let arrow = parse_arrow(st, &pres)?;
                pres.arrows.push(arrow);
            }
            "relation" => {
                let rel = parse_relation(st, &pres)?;
                pres.relations.push(rel);
            }
            other => return Err(syntax(&head.pos, format!("unknown statement `{other}`"))),
        }
    }
    if let Some(f) = field {
        pres.field = f;
    }
    if pres.vertices.is_empty() {
        return Err(Error::Syntax { line: 1, col: 1, msg: "no vertices declared".into() });
    }
    Ok(pres)
}

fn parse_field(st: &[Token]) -> Result<Field> {
    let words: Vec<&Tok> = st[1..].iter().map(|t| &t.tok).collect();
    let pos = st.get(1).map(|t| t.pos.clone()).unwrap_or(st[0].pos.clone());
    match words.as_slice() {
        [Tok::Word(q)] if q == "Q" => Ok(Field::Rational),
        [Tok::Word(gf), Tok::Sym("("), Tok::Word(p), Tok::Sym(")")] if gf == "GF" && is_integer(p) => {
            let p: u32 = p.parse().map_err(|_| syntax(&pos, "field characteristic too large"))?;
            Field::prime(p).map_err(|e| syntax(&pos, e.to_string()))
        }
        _ => Err(syntax(&pos, "expected `field GF(p)` or `field Q`")),
    }
}

fn parse_arrow(st: &[Token], pres: &QuiverPresentation) -> Result<Arrow> {
    let head = &st[0];
    let toks: Vec<&Tok> = st[1..].iter().map(|t| &t.tok).collect();
    let [Tok::Word(name), Tok::Sym(":"), Tok::Word(src), Tok::Sym("->"), Tok::Word(dst)] = toks.as_slice() else {
        return Err(syntax(&head.pos, "expected `arrow <name>: <vertex> -> <vertex>`"));
    };
    if pres.arrow_index(name).is_some() {
        return Err(syntax(&st[1].pos, format!("arrow `{name}` declared twice")));
    }
    let lookup = |v: &str, t: &Token| {
        pres.vertex_index(v).ok_or_else(|| Error::UndeclaredVertex {
            name: v.to_string(),
            line: t.pos.line,
            col: t.pos.col,
        })
    };
    let source = lookup(src, &st[3])?;
    let target = lookup(dst, &st[5])?;
    Ok(Arrow { name: name.clone(), source, target, pos: st[1].pos.clone() })
}

fn parse_relation(st: &[Token], pres: &QuiverPresentation) -> Result<Relation> {
    let head = &st[0];
    let mut terms = Vec::new();
    let mut i = 1;
    let mut sign = 1i64;
    let mut expect_term = true;
    while i < st.len() {
        let t = &st[i];
        match &t.tok {
            Tok::Sym("+") | Tok::Sym("-") if expect_term => {
                if t.tok == Tok::Sym("-") {
                    sign = -sign;
                }
                i += 1;
            }
            Tok::Sym("+") | Tok::Sym("-") => {
                sign = if t.tok == Tok::Sym("-") { -1 } else { 1 };
                expect_term = true;
                i += 1;
            }
            Tok::Word(_) if expect_term => {
                let (term, next) = parse_term(st, i, pres)?;
                terms.push(Term { coeff: sign * term.coeff, path: term.path });
                sign = 1;
                expect_term = false;
                i = next;
            }
            _ => return Err(syntax(&t.pos, "expected `+` or `-` between terms")),
        }
    }
    if terms.is_empty() || expect_term {
        return Err(syntax(&head.pos, "relation needs at least one complete term"));
    }
    let line = head.pos.line;
    let mut ends = None;
    for term in &terms {
        let label = pres.path_label(&term.path);
        if term.path.len() < 2 {
            return Err(Error::ShortRelation { line, path: label });
        }
        let e = pres
            .path_ends(&term.path)
            .ok_or_else(|| Error::NonParallelRelation { line, msg: format!("`{label}` is not a path") })?;
        match ends {
            None => ends = Some(e),
            Some(prev) if prev != e => {
                return Err(Error::NonParallelRelation {
                    line,
                    msg: format!("`{label}` runs {} -> {}", pres.vertices[e.0], pres.vertices[e.1]),
                })
            }
            _ => {}
        }
    }
    Ok(Relation { terms, pos: head.pos.clone() })
}

fn parse_term(st: &[Token], mut i: usize, pres: &QuiverPresentation) -> Result<(Term, usize)> {
    let mut coeff = 1i64;
    let mut path = Vec::new();
    let mut first = true;
    loop {
        let t = &st[i];
        let Tok::Word(w) = &t.tok else {
            return Err(syntax(&t.pos, "expected an arrow name"));
        };
        if first && is_integer(w) && pres.arrow_index(w).is_none() {
            coeff = w.parse().map_err(|_| syntax(&t.pos, "coefficient too large"))?;
        } else if let Some(a) = pres.arrow_index(w) {
            path.push(a);
        } else {
            return Err(syntax(&t.pos, format!("unknown arrow `{w}`")));
        }
        first = false;
        i += 1;
        if i < st.len() && st[i].tok == Tok::Sym("*") {
            i += 1;
            if i >= st.len() {
                return Err(syntax(&st[i - 1].pos, "dangling `*`"));
            }
        } else {
            break;
        }
    }
    if path.is_empty() {
        return Err(syntax(&st[i - 1].pos, "term has a coefficient but no path"));
    }
    Ok((Term { coeff, path }, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_presentation() {
        let p = parse_presentation("field GF(7); vertex 1 2; arrow a: 1 -> 2;").unwrap();
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.arrows.len(), 1);
        assert!(p.relations.is_empty());
        assert_eq!(p.field, Field::Prime(7));
    }

    #[test]
    fn loop_with_relation() {
        let p = parse_presentation("field GF(3); vertex v; arrow x: v -> v; relation x*x;").unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].terms, vec![Term { coeff: 1, path: vec![0, 0] }]);
    }

    #[test]
    fn undeclared_vertex_is_named() {
        let err = parse_presentation("vertex 1 2;\narrow a: 1 -> 3;").unwrap_err();
        assert!(matches!(&err, Error::UndeclaredVertex { name, line: 2, .. } if name == "3"), "{err}");
        assert!(err.to_string().contains('3'));
    }

    #[test]
    fn coefficients_and_signs() {
        let p = parse_presentation(
            "field Q; vertex 1 2 3; arrow a: 1 -> 2; arrow b: 2 -> 3; arrow c: 1 -> 2; arrow d: 2 -> 3;\n\
             relation a*b - 2*c*d; # commutativity up to scalar",
        )
        .unwrap();
        let r = &p.relations[0];
        assert_eq!(r.terms[0], Term { coeff: 1, path: vec![0, 1] });
        assert_eq!(r.terms[1], Term { coeff: -2, path: vec![2, 3] });
    }

    #[test]
    fn validation_errors() {
        let base = "vertex 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1; arrow x: 1 -> 1;";
        assert!(matches!(
            parse_presentation(&format!("{base} relation a;")),
            Err(Error::ShortRelation { .. })
        ));
        assert!(matches!(
            parse_presentation(&format!("{base} relation a*b + x*x*a;")),
            Err(Error::NonParallelRelation { .. })
        ));
        assert!(matches!(
            parse_presentation(&format!("{base} relation a*a;")),
            Err(Error::NonParallelRelation { .. })
        ));
        let err = parse_presentation("vertex 1\narrow a 1 -> 2;").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
        let err = parse_presentation("vertex 1; arrow a: 1 -> 1; relation a*a").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }
}
