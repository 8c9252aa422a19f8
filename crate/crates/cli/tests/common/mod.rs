//! Shared helpers for the integration tests: running the binary, golden
//! cases, and a brute-force Hom oracle over GF(p) that shares no code with
//! the library beyond reading matrices out of its values.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use arh_core::complex::{ChainMap, Complex};
use arh_core::linalg::Mat;

// ---------------------------------------------------------------- CLI

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn corpus(name: &str) -> String {
    root().join("corpus").join(name).display().to_string()
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arhomotopy"))
        .args(args)
        .env_remove("ARH_DEFAULT_BOUND")
        .output()
        .expect("spawn arhomotopy");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

pub fn machine(stdout: &str) -> String {
    let mut out = String::new();
    let mut inside = false;
    for line in stdout.lines() {
        if !inside && line == "```machine" {
            inside = true;
        } else if inside && line == "```" {
            inside = false;
        } else if inside {
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

pub const CASES: &[(&str, &[&str], i32)] = &[
    ("check_semisimple", &["algebra", "check", "semisimple.alg"], 0),
    ("check_a2", &["algebra", "check", "a2.alg"], 0),
    ("check_dual", &["algebra", "check", "dual.alg"], 0),
    ("check_local22", &["algebra", "check", "local22.alg"], 0),
    ("proj_a2", &["proj", "a2.alg"], 0),
    ("inj_a2", &["inj", "a2.alg"], 0),
    ("ar_sequence_a2_s1", &["ar-sequence", "S1", "a2.alg"], 0),
    ("ar_sequence_dual_s1", &["ar-sequence", "S1", "dual.alg"], 0),
    ("triangle_semisimple", &["ar-triangle", "--ending-at", "stalk(P1,0)", "semisimple.alg"], 0),
    ("triangle_a2_p1", &["ar-triangle", "--ending-at", "stalk(P1,0)", "a2.alg"], 0),
    ("triangle_a2_p2", &["ar-triangle", "--ending-at", "stalk(P2,0)", "a2.alg"], 0),
    ("triangle_a2_i2", &["ar-triangle", "--starting-at", "stalk(I2,0)", "a2.alg"], 0),
    ("triangle_dual_a", &["ar-triangle", "--ending-at", "stalk(A,0)", "dual.alg"], 0),
    ("triangle_dual_da", &["ar-triangle", "--starting-at", "stalk(DA,0)", "dual.alg"], 0),
    ("serre_a2", &["serre-table", "a2.alg"], 0),
    ("serre_dual", &["serre-table", "dual.alg"], 0),
    ("injdim_a2", &["inj-dim", "a2.alg"], 0),
    ("injdim_local22", &["inj-dim", "local22.alg", "--bound", "10"], 1),
    ("gorenstein_a2", &["gorenstein", "a2.alg"], 0),
    ("gorenstein_dual", &["gorenstein", "dual.alg"], 0),
    ("gorenstein_local22", &["gorenstein", "local22.alg", "--bound", "10"], 1),
    ("gp_dual_s1", &["gp-check", "S1", "dual.alg"], 0),
    ("gp_a2_s1", &["gp-check", "S1", "a2.alg"], 1),
    ("gp_a2_p2", &["gp-check", "P2", "a2.alg"], 0),
    ("gp_cover_a2_s1", &["gp-cover", "stalk(S1,0)", "a2.alg"], 0),
    ("happel_a2", &["happel-report", "a2.alg"], 0),
    ("happel_dual", &["happel-report", "dual.alg"], 0),
    ("happel_local22", &["happel-report", "local22.alg", "--bound", "4"], 0),
    ("dot_a2", &["export-dot", "a2.alg"], 0),
];

pub fn args_for(args: &[&str]) -> Vec<String> {
    args.iter().map(|a| if a.ends_with(".alg") { corpus(a) } else { a.to_string() }).collect()
}

/// Runs every case twice; returns the problems found.
pub fn golden_problems(update: bool) -> Vec<String> {
    let dir = golden_dir();
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let args = args_for(args);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, o1) = run(&refs);
        let (c2, o2) = run(&refs);
        let (m1, m2) = (machine(&o1), machine(&o2));
        if c1 != *code || c1 != c2 {
            failures.push(format!("{name}: exit codes {c1}, {c2}, expected {code}"));
        }
        if m1 != m2 {
            failures.push(format!("{name}: machine section not stable across runs"));
        }
        if m1.is_empty() {
            failures.push(format!("{name}: empty machine section"));
        }
        let path = dir.join(format!("{name}.machine"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &m1).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(g) if g == m1 => {}
            Ok(_) => failures.push(format!("{name}: differs from {}", path.display())),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    failures
}

/// Feeds every emitted certificate back to `verify-triangle`.
pub fn reverify_problems() -> Vec<String> {
    let tmp = std::env::temp_dir().join(format!("arh-reverify-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let mut failures = Vec::new();
    for (name, args, _) in CASES.iter().filter(|c| c.1[0] == "ar-triangle") {
        let args = args_for(args);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = run(&refs);
        if code != 0 {
            failures.push(format!("{name}: ar-triangle exited {code}"));
            continue;
        }
        let cert = tmp.join(format!("{name}.txt"));
        std::fs::write(&cert, &out).unwrap();
        let (code, check) = run(&["verify-triangle", cert.to_str().unwrap(), args.last().unwrap()]);
        if code != 0 || !machine(&check).contains("recorded-match yes\nverified yes\n") {
            failures.push(format!("{name}: verify-triangle exited {code}"));
        }
    }
    std::fs::remove_dir_all(&tmp).ok();
    failures
}

// ---------------------------------------------------------------- GF(p) oracle

pub type Dense = Vec<Vec<u64>>;

pub fn dense(m: &Mat, p: u64) -> Dense {
    let f = m.field();
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| f.to_i64(m.get(r, c)).expect("finite field entry").rem_euclid(p as i64) as u64).collect())
        .collect()
}

fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![0; c]; r]
}

fn mul(p: u64, a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let x = row[k];
            if x == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = (out[i][j] + x * b[k][j]) % p;
            }
        }
    }
    out
}

fn inv(p: u64, a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-reduces in place; returns the rank.
fn reduce(p: u64, rows: &mut Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let s = inv(p, rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

pub fn rank(p: u64, rows: &[Vec<u64>]) -> usize {
    reduce(p, &mut rows.to_vec())
}

fn in_span(p: u64, span: &[Vec<u64>], v: &[u64]) -> bool {
    if v.iter().all(|x| *x == 0) {
        return true;
    }
    let mut rows = span.to_vec();
    let r = reduce(p, &mut rows);
    rows.push(v.to_vec());
    reduce(p, &mut rows) == r
}

/// Solutions `x` of `A x = 0`, where `cols[j]` is column `j` of `A`.
fn nullspace(p: u64, cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = cols.len();
    let m = cols.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u64>> = (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    reduce(p, &mut rows);
    let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|x| *x != 0).unwrap()).collect();
    let mut out = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[r][free]) % p;
        }
        out.push(v);
    }
    out
}

/// A complex read out as dense matrices.
#[derive(Clone, Debug)]
pub struct Cx {
    pub p: u64,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// Action of every algebra basis element, per term.
    pub acts: Vec<Vec<Dense>>,
    pub diffs: Vec<Dense>,
}

impl Cx {
    pub fn new(x: &Complex) -> Cx {
        let p = x.field().characteristic() as u64;
        assert!(p > 0, "the oracle works over prime fields");
        let terms = x.terms();
        Cx {
            p,
            lo: x.lo(),
            dims: terms.iter().map(|t| t.dim()).collect(),
            acts: terms.iter().map(|t| t.actions().iter().map(|a| dense(a, p)).collect()).collect(),
            diffs: (0..terms.len().saturating_sub(1)).map(|k| dense(&x.d(x.lo() + k as i64), p)).collect(),
        }
    }

    pub fn dim(&self, i: i64) -> usize {
        let k = i - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    fn acts(&self, i: i64) -> Option<&Vec<Dense>> {
        let k = i - self.lo;
        (k >= 0 && (k as usize) < self.acts.len()).then(|| &self.acts[k as usize])
    }

    /// `d^i: X^i -> X^{i+1}`.
    pub fn d(&self, i: i64) -> Dense {
        let k = i - self.lo;
        if k < 0 || k as usize >= self.diffs.len() {
            zeros(self.dim(i), self.dim(i + 1))
        } else {
            self.diffs[k as usize].clone()
        }
    }

    fn range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.dims.len() as i64 - 1)
    }
}

/// A degreewise map, `i -> matrix`.
pub type Map = BTreeMap<i64, Dense>;

pub fn from_chain_map(f: &ChainMap, p: u64) -> Map {
    let (lo, hi) = (f.src.lo().min(f.tgt.lo()), f.src.hi().max(f.tgt.hi()));
    (lo..=hi).map(|i| (i, dense(&f.comp(i), p))).collect()
}

pub fn compose(p: u64, f: &Map, g: &Map, x: &Cx, y: &Cx, z: &Cx) -> Map {
    let mut out = Map::new();
    for (i, a) in f {
        if let Some(b) = g.get(i) {
            out.insert(*i, mul(p, a, b, y.dim(*i), z.dim(*i)));
        }
    }
    let _ = x;
    out
}

pub fn identity(x: &Cx) -> Map {
    let (lo, hi) = x.range();
    (lo..=hi)
        .map(|i| {
            let n = x.dim(i);
            (i, (0..n).map(|r| (0..n).map(|c| u64::from(r == c)).collect()).collect())
        })
        .collect()
}

/// `Hom_K(X, Y)` by brute force: chain maps as the kernel of the defining
/// equations, null-homotopic maps as the image of all module-map homotopies.
pub struct HomK {
    pub p: u64,
    pub x: Cx,
    pub y: Cx,
    pub degs: Vec<i64>,
    pub chain: Vec<Vec<u64>>,
    pub null: Vec<Vec<u64>>,
    /// Chain maps completing a basis of `null` to one of `chain`.
    pub reps: Vec<Vec<u64>>,
}

fn module_homs(p: u64, a: &[Dense], b: &[Dense], m: usize, n: usize) -> Vec<Dense> {
    if m == 0 || n == 0 {
        return Vec::new();
    }
    let cols: Vec<Vec<u64>> = (0..m * n)
        .map(|e| {
            let mut h = zeros(m, n);
            h[e / n][e % n] = 1;
            let mut col = Vec::new();
            for (aa, bb) in a.iter().zip(b) {
                let l = mul(p, aa, &h, m, n);
                let r = mul(p, &h, bb, n, n);
                for i in 0..m {
                    for j in 0..n {
                        col.push((l[i][j] + p - r[i][j]) % p);
                    }
                }
            }
            col
        })
        .collect();
    nullspace(p, &cols).into_iter().map(|v| v.chunks(n).map(<[u64]>::to_vec).collect()).collect()
}

impl HomK {
    pub fn new(x: &Cx, y: &Cx) -> HomK {
        let p = x.p;
        let (xl, xh) = x.range();
        let (yl, yh) = y.range();
        let degs: Vec<i64> = (xl.max(yl)..=xh.min(yh)).filter(|&i| x.dim(i) > 0 && y.dim(i) > 0).collect();
        // unknowns: degreewise module maps
        let blocks: Vec<(i64, Vec<Dense>)> = degs
            .iter()
            .map(|&i| (i, module_homs(p, x.acts(i).unwrap(), y.acts(i).unwrap(), x.dim(i), y.dim(i))))
            .collect();
        let mut map_of = Vec::new();
        for (bi, (_, hs)) in blocks.iter().enumerate() {
            for k in 0..hs.len() {
                map_of.push((bi, k));
            }
        }
        let (lo, hi) = (xl.min(yl), xh.max(yh));
        let embed = |m: &Map| -> Vec<u64> {
            let mut v = Vec::new();
            for &i in &degs {
                let z = zeros(x.dim(i), y.dim(i));
                for row in m.get(&i).unwrap_or(&z) {
                    v.extend_from_slice(row);
                }
            }
            v
        };
        let single = |bi: usize, k: usize| -> Map {
            let (i, hs) = &blocks[bi];
            Map::from([(*i, hs[k].clone())])
        };
        // chain condition d_X H^{i+1} - H^i d_Y
        let cols: Vec<Vec<u64>> = map_of
            .iter()
            .map(|&(bi, k)| {
                let m = single(bi, k);
                let mut col = Vec::new();
                for i in lo..hi {
                    let h0 = m.get(&i).cloned().unwrap_or_else(|| zeros(x.dim(i), y.dim(i)));
                    let h1 = m.get(&(i + 1)).cloned().unwrap_or_else(|| zeros(x.dim(i + 1), y.dim(i + 1)));
                    let l = mul(p, &x.d(i), &h1, x.dim(i + 1), y.dim(i + 1));
                    let r = mul(p, &h0, &y.d(i), y.dim(i), y.dim(i + 1));
                    for a in 0..x.dim(i) {
                        for b in 0..y.dim(i + 1) {
                            col.push((l[a][b] + p - r[a][b]) % p);
                        }
                    }
                }
                col
            })
            .collect();
        let chain: Vec<Vec<u64>> = if cols.is_empty() {
            Vec::new()
        } else if cols[0].is_empty() {
            (0..cols.len()).map(|j| (0..cols.len()).map(|k| u64::from(j == k)).collect()).collect()
        } else {
            nullspace(p, &cols)
        }
        .into_iter()
        .map(|c| {
            let mut m = Map::new();
            for (j, &(bi, k)) in map_of.iter().enumerate() {
                if c[j] == 0 {
                    continue;
                }
                let (i, hs) = &blocks[bi];
                let e = m.entry(*i).or_insert_with(|| zeros(x.dim(*i), y.dim(*i)));
                for (a, row) in hs[k].iter().enumerate() {
                    for (b, v) in row.iter().enumerate() {
                        e[a][b] = (e[a][b] + c[j] * v) % p;
                    }
                }
            }
            embed(&m)
        })
        .collect();
        // homotopies s^i: X^i -> Y^{i-1}, h^i = d_X^i s^{i+1} + s^i d_Y^{i-1}
        let mut null = Vec::new();
        for i in lo..=hi + 1 {
            let (Some(ax), Some(ay)) = (x.acts(i), y.acts(i - 1)) else { continue };
            for s in module_homs(p, ax, ay, x.dim(i), y.dim(i - 1)) {
                let mut m = Map::new();
                m.insert(i - 1, mul(p, &x.d(i - 1), &s, x.dim(i), y.dim(i - 1)));
                let t = mul(p, &s, &y.d(i - 1), y.dim(i - 1), y.dim(i));
                m.insert(i, t);
                null.push(embed(&m));
            }
        }
        let mut reps = Vec::new();
        let mut span = null.clone();
        for c in &chain {
            if !in_span(p, &span, c) {
                span.push(c.clone());
                reps.push(c.clone());
            }
        }
        HomK { p, x: x.clone(), y: y.clone(), degs, chain, null, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn flat(&self, m: &Map) -> Vec<u64> {
        let mut v = Vec::new();
        for &i in &self.degs {
            let z = zeros(self.x.dim(i), self.y.dim(i));
            for row in m.get(&i).unwrap_or(&z) {
                v.extend_from_slice(row);
            }
        }
        v
    }

    pub fn unflat(&self, v: &[u64]) -> Map {
        let mut m = Map::new();
        let mut at = 0;
        for &i in &self.degs {
            let (r, c) = (self.x.dim(i), self.y.dim(i));
            m.insert(i, v[at..at + r * c].chunks(c).map(<[u64]>::to_vec).collect());
            at += r * c;
        }
        m
    }

    pub fn is_chain_map(&self, m: &Map) -> bool {
        in_span(self.p, &self.chain, &self.flat(m))
    }

    pub fn is_null(&self, m: &Map) -> bool {
        in_span(self.p, &self.null, &self.flat(m))
    }

    /// Whether `target` lies in `span(images) + null-homotopic maps`.
    pub fn in_span_mod_null(&self, images: &[Map], target: &Map) -> bool {
        let mut span = self.null.clone();
        span.extend(images.iter().map(|m| self.flat(m)));
        in_span(self.p, &span, &self.flat(target))
    }

    /// Every homotopy class, one representative each: `p^dim` maps.
    pub fn all_classes(&self) -> Vec<Map> {
        let n = self.reps.len();
        let total = (self.p as usize).pow(n as u32);
        let width = self.reps.first().map_or(0, Vec::len);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0; width];
                for r in &self.reps {
                    let c = code as u64 % self.p;
                    code /= self.p as usize;
                    for (a, b) in v.iter_mut().zip(r) {
                        *a = (*a + c * b) % self.p;
                    }
                }
                self.unflat(&v)
            })
            .collect()
    }

    pub fn rep_maps(&self) -> Vec<Map> {
        self.reps.iter().map(|v| self.unflat(v)).collect()
    }
}

/// `h` invertible in `End_K(X)`: right multiplication by `h` is onto.
pub fn is_unit(end: &HomK, h: &Map) -> bool {
    let p = end.p;
    let images: Vec<Map> = end.rep_maps().iter().map(|g| compose(p, g, h, &end.x, &end.x, &end.x)).collect();
    let mut span = end.null.clone();
    let base = rank(p, &span);
    span.extend(images.iter().map(|m| end.flat(m)));
    rank(p, &span) - base == end.dim()
}

/// Contractible: the identity is null-homotopic.
pub fn contractible(x: &Cx) -> bool {
    let end = HomK::new(x, x);
    end.is_null(&identity(x))
}
