use std::path::Path;

use anyhow::{bail, Result};
use arh_core::algebra::{validate_algebra, AlgebraRef};
use arh_core::complex::{decompose_complex, homotopy_hom, Complex};
use arh_core::gorenstein::{
    gp_cover_complex, gp_modules, happel_report, injective_dimension, is_gorenstein, is_gorenstein_projective,
    Hand, HappelSide, RestrictionOutcome, Subcategory,
};
use arh_core::module::{self as md, injective, projective, verify_ar_sequence};
use arh_core::serre::{
    ar_triangle_ending_at, ar_triangle_starting_at, default_corpus, module_corpus, nakayama_image, serre_pairing_with,
    verify_ar_triangle, ArTriangleCertificate, Corpus, MODULE_DIM_BOUND,
};
use arh_core::textio::{certificate_verdicts, machine_sections, write_certificate, write_complex, write_module, Reader};

use crate::expr::{parse_module, parse_object, Resolver};
use crate::names::Namer;
use crate::output::Output;
use crate::{load_algebra, InputError, EXIT_NEGATIVE, EXIT_VERIFICATION};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn resolver<'a>(alg: &'a AlgebraRef, file: &Path) -> Resolver<'a> {
    Resolver { alg, base: file.parent().map(Path::to_path_buf).unwrap_or_default() }
}

pub fn algebra_check(file: &Path, field: Option<&str>) -> Result<Output> {
    let alg = load_algebra(file, field)?;
    let report = validate_algebra(&alg);
    let mut out = Output::new();
    out.say(format!(
        "algebra over {} with {} vertices, {} arrows, dimension {}",
        alg.field(),
        alg.num_vertices(),
        alg.arrows().len(),
        alg.dim()
    ));
    out.kv("field", alg.field());
    out.kv("vertices", alg.vertex_names().join(" "));
    out.kv("dim", alg.dim());
    out.kv("basis", alg.labels().join(" "));
    for (name, ok) in &report.checks {
        out.say(format!("  {name}: {}", if *ok { "ok" } else { "FAILED" }));
        out.kv("check", format!("{} {}", name.replace(' ', "-"), yes(*ok)));
    }
    if !report.ok() {
        out.code = EXIT_VERIFICATION;
    }
    Ok(out)
}

pub fn list(alg: &AlgebraRef, projectives: bool) -> Result<Output> {
    let mut out = Output::new();
    let namer = Namer::new(alg);
    for (v, name) in alg.vertex_names().iter().enumerate() {
        let (label, m) = if projectives {
            (format!("P{name}"), projective(alg, v))
        } else {
            (format!("I{name}"), injective(alg, v))
        };
        let dv: Vec<String> = m.dimension_vector().iter().map(|d| d.to_string()).collect();
        out.say(format!("{label}: dimension vector ({}), also {}", dv.join(", "), namer.module(&m)?));
        out.kv("object", &label);
        let mut block = String::new();
        write_module(&mut block, &m);
        out.raw(&block);
    }
    Ok(out)
}

pub fn ar_sequence_cmd(alg: &AlgebraRef, file: &Path, module: &str) -> Result<Output> {
    let m = parse_module(module, &resolver(alg, file))?;
    let seq = md::ar_sequence(&m)?;
    let corpus = module_corpus(alg, MODULE_DIM_BOUND)?;
    let check = verify_ar_sequence(&seq, &corpus)?;
    let namer = Namer::new(alg);
    let mut out = Output::new();
    out.say(format!(
        "0 -> {} -> {} -> {} -> 0",
        namer.module(&seq.left)?,
        namer.module(&seq.middle)?,
        namer.module(&seq.right)?
    ));
    out.say(format!("verified against {} corpus modules (knit, dimension <= {MODULE_DIM_BOUND})", corpus.len()));
    let checks = [
        ("exact", check.exact),
        ("non-split", check.non_split),
        ("right-minimal", check.right_minimal),
        ("left-minimal", check.left_minimal),
        ("right-factorization", check.right_factorization.iter().all(|r| r.factors)),
        ("left-factorization", check.left_factorization.iter().all(|r| r.factors)),
    ];
    out.kv("sequence", format!("{} {} {}", namer.module(&seq.left)?, namer.module(&seq.middle)?, namer.module(&seq.right)?));
    out.kv("corpus-size", corpus.len());
    for (k, v) in checks {
        out.say(format!("  {k}: {}", yes(v)));
        out.kv("check", format!("{k} {}", yes(v)));
    }
    out.kv("ok", yes(check.ok()));
    let mut block = String::new();
    write_module(&mut block, &seq.left);
    write_module(&mut block, &seq.middle);
    write_module(&mut block, &seq.right);
    out.raw(&block);
    if !check.ok() {
        out.code = EXIT_VERIFICATION;
    }
    Ok(out)
}

pub fn ar_sequence(file: &Path, field: Option<&str>, module: &str) -> Result<Output> {
    ar_sequence_cmd(&load_algebra(file, field)?, file, module)
}

fn describe_certificate(out: &mut Output, namer: &Namer, c: &ArTriangleCertificate) -> Result<()> {
    let t = &c.triangle;
    out.say(format!(
        "{} -> {} -> {} -> {}",
        namer.complex(t.x())?,
        namer.complex(t.y())?,
        namer.complex(t.z())?,
        namer.complex(&t.x().shift(1))?
    ));
    let parts = decompose_complex(t.y())?;
    let names: Vec<String> = parts
        .iter()
        .map(|(p, k)| namer.complex(p).map(|n| if *k == 1 { n } else { format!("{n}^{k}") }))
        .collect::<Result<_>>()?;
    out.say(format!("middle term summands: {}", if names.is_empty() { "none".into() } else { names.join(", ") }));
    out.say(format!("corpus: {} ({} objects)", c.corpus_name, c.corpus_size));
    for (k, v) in certificate_verdicts(c) {
        out.say(format!("  {k}: {v}"));
    }
    Ok(())
}

pub fn ar_triangle(file: &Path, field: Option<&str>, expr: &str, ending: bool) -> Result<Output> {
    let alg = load_algebra(file, field)?;
    let x = parse_object(expr, &resolver(&alg, file))?;
    let corpus = default_corpus(&alg)?;
    let cert = if ending { ar_triangle_ending_at(&x, &corpus)? } else { ar_triangle_starting_at(&x, &corpus)? };
    let mut out = Output::new();
    describe_certificate(&mut out, &Namer::new(&alg), &cert)?;
    let mut block = String::new();
    write_certificate(&mut block, &cert);
    out.raw(&block);
    Ok(out)
}

fn is_perfect(x: &Complex) -> Result<bool> {
    Subcategory::Perfect.contains(x).map_err(Into::into)
}

pub fn serre_table(alg: &AlgebraRef) -> Result<Output> {
    let corpus = default_corpus(alg)?;
    let namer = Namer::new(alg);
    let mut out = Output::new();
    out.say(format!("X perfect indecomposable from the corpus, Y over its base with shifts -1..1 ({})", corpus.name));
    out.say("X | Y | dim Hom_K(X,Y) | dim Hom_K(Y,νX) | pairing");
    let mut bad = 0;
    let mut rows = 0;
    for x in &corpus.base {
        if !is_perfect(x)? {
            continue;
        }
        let nu = nakayama_image(x)?;
        for s in -1..=1 {
            for y in &corpus.base {
                let y = y.shift(s);
                let (a, b) = (homotopy_hom(x, &y)?.dim(), homotopy_hom(&y, &nu.complex)?.dim());
                let nondeg = serre_pairing_with(&nu, &y).is_ok();
                if a != b || !nondeg {
                    bad += 1;
                }
                rows += 1;
                let (nx, ny) = (namer.complex(x)?, namer.complex(&y)?);
                out.say(format!("{nx} | {ny} | {a} | {b} | {}", if nondeg { "perfect" } else { "DEGENERATE" }));
                out.kv("row", format!("{nx} {ny} {a} {b} {}", yes(nondeg)));
            }
        }
    }
    out.say(format!("{rows} pairs, {bad} failures"));
    out.kv("pairs", rows);
    out.kv("failures", bad);
    if bad > 0 {
        out.code = EXIT_VERIFICATION;
    }
    Ok(out)
}

pub fn inj_dim(alg: &AlgebraRef, left: bool, bound: usize) -> Result<Output> {
    let hand = if left { Hand::Left } else { Hand::Right };
    let d = injective_dimension(alg, hand, bound)?;
    let mut out = Output::new();
    let side = if left { "left" } else { "right" };
    out.say(format!("injective dimension of the {side} regular module: {d}"));
    out.kv("side", side);
    out.kv("bound", bound);
    out.kv("injective-dimension", d);
    if !d.is_finite() {
        out.code = EXIT_NEGATIVE;
    }
    Ok(out)
}

pub fn gorenstein(alg: &AlgebraRef, bound: usize) -> Result<Output> {
    let r = is_gorenstein(alg, bound)?;
    let mut out = Output::new();
    out.say(format!("({}, {}) {}", r.right, r.left, r.verdict));
    match r.symmetric {
        Some(true) => out.say("left and right injective dimensions agree"),
        Some(false) => out.say("left and right injective dimensions DIFFER"),
        None => {}
    }
    out.kv("bound", bound);
    out.kv("right", r.right);
    out.kv("left", r.left);
    out.kv("verdict", r.verdict);
    out.kv("symmetric", r.symmetric.map_or("n/a", yes));
    if !r.is_gorenstein() {
        out.code = EXIT_NEGATIVE;
    }
    Ok(out)
}

pub fn gp_check(file: &Path, field: Option<&str>, module: &str, bound: usize) -> Result<Output> {
    let alg = load_algebra(file, field)?;
    let m = parse_module(module, &resolver(&alg, file))?;
    let report = is_gorenstein(&alg, bound)?;
    let c = is_gorenstein_projective(&m, &report)?;
    let mut out = Output::new();
    let namer = Namer::new(&alg);
    let exts: Vec<String> = c.ext_dims.iter().map(|d| d.to_string()).collect();
    out.say(format!("{}: Gorenstein projective = {}", namer.module(&m)?, yes(c.is_gp())));
    if exts.is_empty() {
        out.say("Gorenstein dimension 0: no Ext condition");
    } else {
        out.say(format!("dim Ext^i(M, A), i = 1..{}: [{}]", c.ext_dims.len(), exts.join(", ")));
    }
    let fr = &c.fragment;
    out.say(format!(
        "complete resolution fragment with {} terms: torsionless {}, exact {}, Hom(-, A) exact {}",
        fr.terms.len(),
        yes(fr.torsionless),
        yes(fr.exact),
        yes(fr.hom_exact)
    ));
    out.kv("module", namer.module(&m)?);
    out.kv("gorenstein-dimension", report.dimension()?);
    out.kv("ext", if exts.is_empty() { "none".to_string() } else { exts.join(" ") });
    out.kv("fragment-terms", fr.terms.iter().map(|t| t.dim().to_string()).collect::<Vec<_>>().join(" "));
    out.kv("fragment-torsionless", yes(fr.torsionless));
    out.kv("fragment-exact", yes(fr.exact));
    out.kv("fragment-hom-exact", yes(fr.hom_exact));
    out.kv("gp", yes(c.is_gp()));
    out.kv("criteria-agree", yes(c.agree()));
    if !c.agree() {
        out.code = EXIT_VERIFICATION;
    } else if !c.is_gp() {
        out.code = EXIT_NEGATIVE;
    }
    Ok(out)
}

pub fn gp_cover(file: &Path, field: Option<&str>, expr: &str, bound: usize) -> Result<Output> {
    let alg = load_algebra(file, field)?;
    let y = parse_object(expr, &resolver(&alg, file))?;
    let report = is_gorenstein(&alg, bound)?;
    let samples = gp_modules(&alg, &report)?;
    let cover = gp_cover_complex(&y, &report, &samples)?;
    let namer = Namer::new(&alg);
    let mut out = Output::new();
    out.say(format!("GP cover of {}: {}", namer.complex(&y)?, namer.complex(cover.complex())?));
    out.say(format!(
        "Hom(G', cone) acyclic for {}/{} GP corpus modules",
        cover.quasi_iso.iter().filter(|b| **b).count(),
        cover.quasi_iso.len()
    ));
    out.kv("samples", samples.len());
    out.kv("quasi-iso", yes(cover.ok()));
    let mut block = String::new();
    write_complex(&mut block, cover.complex());
    out.raw(&block);
    for i in cover.complex().degrees() {
        out.kv("comp", format!("{i} {}", cover.map.comp(i)));
    }
    if !cover.ok() {
        out.code = EXIT_VERIFICATION;
    }
    Ok(out)
}

fn happel_side(out: &mut Output, namer: &Namer, corpus: &Corpus, name: &str, s: &HappelSide) -> Result<()> {
    out.say(format!(
        "{name}: injective dimension {}, approximation {}, {} restrictions witnessed, {} failed, consistent {}",
        s.dimension,
        if s.approximation_found { "found" } else { "not found" },
        s.witnessed(),
        s.failures(),
        yes(s.consistent())
    ));
    out.kv(&format!("{name}-dimension"), s.dimension);
    out.kv(&format!("{name}-approximation"), yes(s.approximation_found));
    for (k, o) in &s.outcomes {
        let obj = namer.complex(&corpus.base[*k])?;
        if let RestrictionOutcome::Failed(why) = o {
            out.say(format!("  {obj}: failed ({why})"));
        }
        out.kv(&format!("{name}-restriction"), format!("{obj} {}", o.label()));
    }
    out.kv(&format!("{name}-consistent"), yes(s.consistent()));
    Ok(())
}

pub fn happel(alg: &AlgebraRef, bound: usize) -> Result<Output> {
    let corpus = default_corpus(alg)?;
    let r = happel_report(alg, &corpus, bound)?;
    let namer = Namer::new(alg);
    let mut out = Output::new();
    out.kv("bound", bound);
    happel_side(&mut out, &namer, &corpus, "injective", &r.injective)?;
    happel_side(&mut out, &namer, &corpus, "projective", &r.projective)?;
    out.say(format!("consistent: {}", yes(r.consistent())));
    out.kv("consistent", yes(r.consistent()));
    if !r.consistent() {
        out.code = EXIT_VERIFICATION;
    }
    Ok(out)
}

pub fn verify_triangle(cert_file: &Path, file: &Path, field: Option<&str>) -> Result<Output> {
    let alg = load_algebra(file, field)?;
    let text = std::fs::read_to_string(cert_file)
        .map_err(|e| InputError::new(format!("cannot read {}: {e}", cert_file.display())))?;
    let mut blocks = machine_sections(&text);
    if blocks.is_empty() {
        blocks.push(text.clone());
    }
    let corpus = default_corpus(&alg)?;
    let namer = Namer::new(&alg);
    let mut out = Output::new();
    let mut seen = 0;
    for block in &blocks {
        if !block.lines().any(|l| l.trim() == "certificate ar-triangle") {
            continue;
        }
        let mut reader = Reader::new(block, &alg);
        while reader.peek_keyword().is_some_and(|k| k != "certificate") {
            reader.expect(reader.peek_keyword().unwrap())?;
        }
        let parsed = reader.certificate().map_err(|e| InputError::new(e.to_string()))?;
        seen += 1;
        if parsed.corpus != corpus.name {
            bail!(InputError::new(format!(
                "certificate was issued against corpus `{}`, the default corpus here is `{}`",
                parsed.corpus, corpus.name
            )));
        }
        let fresh = verify_ar_triangle(&parsed.triangle, &corpus)?;
        let recomputed = certificate_verdicts(&fresh);
        let mut mismatches = Vec::new();
        for (k, v) in &parsed.checks {
            if k == "connecting-normalized" || k == "ok" {
                continue;
            }
            match recomputed.iter().find(|(rk, _)| rk == k) {
                Some((_, rv)) if rv == v => {}
                Some((_, rv)) => mismatches.push(format!("{k}: recorded {v}, recomputed {rv}")),
                None => mismatches.push(format!("{k}: unknown check")),
            }
        }
        let t = &parsed.triangle;
        out.say(format!(
            "certificate {seen} ({}): {} -> {} -> {} -> {}: {}",
            parsed.side,
            namer.complex(t.x())?,
            namer.complex(t.y())?,
            namer.complex(t.z())?,
            namer.complex(&t.x().shift(1))?,
            if fresh.ok() && mismatches.is_empty() { "accepted" } else { "REJECTED" }
        ));
        for m in &mismatches {
            out.say(format!("  {m}"));
        }
        out.kv("certificate", seen);
        out.kv("recorded-match", yes(mismatches.is_empty()));
        out.kv("verified", yes(fresh.ok()));
        if !mismatches.is_empty() || !fresh.ok() {
            out.code = EXIT_VERIFICATION;
        }
    }
    if seen == 0 {
        bail!(InputError::new(format!("no certificate block found in {}", cert_file.display())));
    }
    Ok(out)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

pub fn export_dot(alg: &AlgebraRef) -> Result<Output> {
    let corpus = default_corpus(alg)?;
    let namer = Namer::new(alg);
    let mut edges: Vec<String> = Vec::new();
    let mut triangles = 0;
    for x in &corpus.base {
        let cert = if is_perfect(x)? {
            ar_triangle_ending_at(x, &corpus)?
        } else if Subcategory::Coperfect.contains(x)? {
            ar_triangle_starting_at(x, &corpus)?
        } else {
            continue;
        };
        triangles += 1;
        let t = &cert.triangle;
        let (a, c) = (namer.complex(t.x())?, namer.complex(t.z())?);
        for (p, _) in decompose_complex(t.y())? {
            let b = namer.complex(&p)?;
            edges.push(format!("  {} -> {};", quote(&a), quote(&b)));
            edges.push(format!("  {} -> {};", quote(&b), quote(&c)));
        }
        edges.push(format!("  {} -> {} [style=dashed, constraint=false];", quote(&c), quote(&a)));
    }
    edges.sort();
    edges.dedup();
    let mut out = Output::new();
    out.say("digraph ar_fragment {");
    out.say("  rankdir=LR;");
    for e in &edges {
        out.say(e);
    }
    out.say("}");
    out.kv("triangles", triangles);
    out.kv("edges", edges.len());
    Ok(out)
}
