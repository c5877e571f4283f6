//! Acceptance run: one PASS/FAIL line per criterion. Dimension checks are
//! exact; the wall-clock limits below are the only tolerances.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use repmodel::category::{CoverKind, Morphism, Object};
use repmodel::complex::Complex;
use repmodel::harness::gen::{all_modules, gen_reps, random_complex};
use repmodel::harness::{run_suite, Params, SuiteReport};
use repmodel::linalg::{Gf2, Matrix};
use repmodel::model::{cofibrant_replacement, RepComplex};
use repmodel::module::{AModule, BaseAlgebra};
use repmodel::morphcat::{arrow_ctx, is_mono_object, ker_cok_unit, psi0};
use repmodel::quiver::Quiver;
use repmodel::rep::{RepCtx, Representation};
use repmodel::resolution::ext_dim;
use serde_json::{json, Value};

const SEC: u64 = 1;
const MIN: u64 = 60;

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: Check,
}

fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs: u64, check: Check| Criterion { id, name, limit: Duration::from_secs(secs), check };
    vec![
        c(1, "adjunction identities", 60 * SEC, adjunction),
        c(2, "eta conditions vs Ext1", 5 * MIN, eta_conditions),
        c(3, "ext vs brute-force oracle", 60 * SEC, ext_oracle),
        c(4, "cofibrant replacement replay", 10 * SEC, replacement_replay),
        c(5, "homotopy vs cw-homotopy", 5 * MIN, homotopy_relations),
        c(6, "Ho dims vs derived Hom", 5 * MIN, ho_dims),
        c(7, "Ext preserved by psi0", 2 * MIN, ext_psi0),
        c(8, "known values", 10 * SEC, known_values),
        c(9, "CLI determinism", 10 * SEC, cli_determinism),
    ]
}

fn main() {
    let mut failed = Vec::new();
    for cr in criteria() {
        let t = Instant::now();
        let res = (cr.check)();
        let el = t.elapsed();
        let (ok, detail) = match res {
            Ok(d) if el <= cr.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        println!(
            "{} {} {:<30} {:>7.2}s / {:>3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            cr.id,
            cr.name,
            el.as_secs_f64(),
            cr.limit.as_secs(),
            detail
        );
        if !ok {
            failed.push(cr.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn params(nil: usize) -> Params {
    Params { nil, quiver: Quiver::a2(), max_dim: 2, max_window: 4, length: 4, ..Params::default() }
}

/// A report must pass, and with `exhaustive` it must not have fallen back to sampling.
fn suite(name: &str, p: &Params, exhaustive: bool) -> Result<SuiteReport, String> {
    let r = run_suite::<Gf2>(name, p).map_err(|e| e.to_string())?;
    if !r.passed() {
        let f = &r.failures[0];
        return Err(format!("{} of {} cases failed; first: {} {}", r.failures.len(), r.cases, f.reason, f.witness));
    }
    if r.cases == 0 {
        return Err("empty family".into());
    }
    if exhaustive && r.mode != "exhaustive" {
        return Err(format!("family was {}, not exhaustive", r.mode));
    }
    Ok(r)
}

fn summary(r: &SuiteReport) -> String {
    let tags: Vec<String> = r.tally.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("n={} {} cases ({}) {}", r.params["nil"], r.cases, r.mode, tags.join(" "))
}

fn adjunction() -> Result<String, String> {
    suite("check_adjunction", &params(2), true).map(|r| summary(&r))
}

fn eta_conditions() -> Result<String, String> {
    let r = suite("check_eta_criterion", &params(2), true)?;
    for tag in ["right_forward", "left_forward"] {
        if !r.tally.contains_key(tag) {
            return Err(format!("no case exercised {tag}"));
        }
    }
    Ok(summary(&r))
}

// Brute-force Ext over GF(2), sharing nothing with the library but the
// input modules. Free modules A^r have basis x^k e_j at index j·n + k; every
// resolution step takes all basis vectors of the kernel as generators.

type Mat = Vec<Vec<u8>>;

fn rank2(m: &Mat, cols: usize) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] == 1) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] == 1 {
                let row = a[r].clone();
                a[i].iter_mut().zip(row).for_each(|(x, y)| *x ^= y);
            }
        }
        r += 1;
    }
    r
}

fn nullspace2(m: &Mat, cols: usize) -> Vec<Vec<u8>> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] == 1) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] == 1 {
                let row = a[r].clone();
                a[i].iter_mut().zip(row).for_each(|(x, y)| *x ^= y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][f];
            }
            v
        })
        .collect()
}

fn apply(m: &Mat, v: &[u8]) -> Vec<u8> {
    m.iter().map(|row| row.iter().zip(v).fold(0, |s, (a, b)| s ^ (a & b))).collect()
}

fn op_of(m: &AModule<Gf2>) -> Mat {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.op().get(i, j).value() as u8).collect()).collect()
}

fn power(t: &Mat, k: usize) -> Mat {
    let d = t.len();
    let mut p: Mat = (0..d).map(|i| (0..d).map(|j| u8::from(i == j)).collect()).collect();
    for _ in 0..k {
        p = (0..d).map(|i| (0..d).map(|j| (0..d).fold(0, |s, l| s ^ (p[i][l] & t[l][j]))).collect()).collect();
    }
    p
}

/// Generators (as vectors of F_{i−1}) of each F_i, i = 0..=top.
fn redundant_resolution(m: &AModule<Gf2>, n: usize, top: usize) -> Vec<Vec<Vec<u8>>> {
    let t = op_of(m);
    let d = m.dim();
    // F_0 → M on generators e_j ↦ basis vector j.
    let gens0: Vec<Vec<u8>> = (0..d).map(|j| (0..d).map(|i| u8::from(i == j)).collect()).collect();
    let eps_cols: Vec<Vec<u8>> = (0..d).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| apply(&power(&t, k), &gens0[j])).collect();
    let mut out = vec![gens0];
    let mut map_cols = eps_cols;
    let mut target_dim = d;
    for _ in 0..top {
        let src_dim = map_cols.len();
        let rows: Mat = (0..target_dim).map(|i| map_cols.iter().map(|c| c[i]).collect()).collect();
        let kernel = nullspace2(&rows, src_dim);
        // Next map F_i → F_{i−1}: x^k e_l ↦ x^k v_l, x acting by the shift.
        let shift = |v: &[u8]| -> Vec<u8> {
            let mut w = vec![0u8; v.len()];
            for (idx, &b) in v.iter().enumerate() {
                if b == 1 && idx % n + 1 < n {
                    w[idx + 1] = 1;
                }
            }
            w
        };
        let mut cols = Vec::new();
        for v in &kernel {
            let mut cur = v.clone();
            for _ in 0..n {
                cols.push(cur.clone());
                cur = shift(&cur);
            }
        }
        out.push(kernel);
        map_cols = cols;
        target_dim = src_dim;
    }
    out
}

fn oracle_ext(m: &AModule<Gf2>, nmod: &AModule<Gf2>, n: usize, i: usize) -> usize {
    let gens = redundant_resolution(m, n, i + 1);
    let tn = op_of(nmod);
    let dn = nmod.dim();
    let pw: Vec<Mat> = (0..n).map(|k| power(&tn, k)).collect();
    // δ_j: Hom(F_{j−1}, N) = N^{r_{j−1}} → Hom(F_j, N) = N^{r_j}, block (l, g) = Σ_k c_{gkl} T_N^k.
    let delta = |j: usize| -> (Mat, usize) {
        let r_prev = gens[j - 1].len();
        let cols = r_prev * dn;
        let rows: Mat = gens[j]
            .iter()
            .flat_map(|v| {
                let pw = &pw;
                (0..dn).map(move |a| {
                    let mut row = vec![0u8; cols];
                    for g in 0..r_prev {
                        for k in 0..n {
                            if v[g * n + k] == 1 {
                                for b in 0..dn {
                                    row[g * dn + b] ^= pw[k][a][b];
                                }
                            }
                        }
                    }
                    row
                })
            })
            .collect();
        (rows, cols)
    };
    let (d_next, cols) = delta(i + 1);
    let cocycles = cols - rank2(&d_next, cols);
    let boundaries = if i == 0 {
        0
    } else {
        let (d, c) = delta(i);
        rank2(&d, c)
    };
    cocycles - boundaries
}

fn ext_oracle() -> Result<String, String> {
    let n = 2;
    let alg = BaseAlgebra::new(n).map_err(|e| e.to_string())?;
    let mods = all_modules::<Gf2>(alg, 2).ok_or("enumeration too large")?;
    let mut checked = 0;
    for a in &mods {
        for b in &mods {
            for i in 0..=2 {
                let lib = ext_dim(a, b, i, 4, CoverKind::Minimal).map_err(|e| e.to_string())?;
                let orc = oracle_ext(a, b, n, i);
                if lib != orc {
                    return Err(format!("Ext^{i}({}, {}): library {lib}, oracle {orc}", a.to_json(), b.to_json()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{} modules, {checked} triples agree", mods.len()))
}

fn replacement_replay() -> Result<String, String> {
    let alg = BaseAlgebra::new(2).map_err(|e| e.to_string())?;
    let fork = RepCtx::new(Quiver::fork(), alg);
    let mut rng = Params::default().rng();
    let mut xs: Vec<RepComplex<Gf2>> = gen_reps::<Gf2>(&fork, 1, None, &mut rng).iter().map(|r| Complex::concentrated(r, 0)).collect();
    let pool = gen_reps::<Gf2>(&fork, 2, Some(12), &mut rng);
    xs.extend((0..12).map(|_| random_complex(&fork, &pool, 3, -1, &mut rng)));
    for x in &xs {
        let cut = x.lo().min(0) - 6;
        let c = cofibrant_replacement(x, cut).map_err(|e| e.to_string())?;
        if !c.ok() {
            return Err(format!("fork flags {:?} on {}", c.flags, x.to_json()));
        }
    }
    let a2 = RepCtx::new(Quiver::a2(), alg);
    let k = AModule::<Gf2>::trivial(alg, 1);
    let s2 = Representation::new(&a2, vec![AModule::zero(&alg), k], vec![Matrix::zeros(1, 0)]).map_err(|e| e.to_string())?;
    let c = cofibrant_replacement(&Complex::concentrated(&s2, 0), -6).map_err(|e| e.to_string())?;
    if !c.ok() || c.window.0 != -5 {
        return Err(format!("(0→k)[0]: flags {:?}, window {:?}", c.flags, c.window));
    }
    Ok(format!("{} fork complexes certified; (0→k)[0] certified on {:?}", xs.len(), c.window))
}

fn homotopy_relations() -> Result<String, String> {
    let p = Params { random: Some(40), ..params(2) };
    suite("check_cw_homotopy", &p, false).map(|r| summary(&r))
}

fn ho_dims() -> Result<String, String> {
    let r1 = suite("check_ho_equivalence", &params(1), true)?;
    let r2 = suite("check_ho_equivalence", &params(2), false)?;
    Ok(format!("{}; {}", summary(&r1), summary(&r2)))
}

fn ext_psi0() -> Result<String, String> {
    let r = suite("check_psi0_ext", &params(2), true)?;
    if r.tally.get("ext_pair").copied().unwrap_or(0) == 0 {
        return Err("no Ext pairs compared".into());
    }
    Ok(summary(&r))
}

fn a2rep(alg: BaseAlgebra, d1: usize, d2: usize, f: Matrix<Gf2>) -> Representation<Gf2> {
    let ctx = arrow_ctx(alg);
    Representation::new(&ctx, vec![AModule::trivial(alg, d1), AModule::trivial(alg, d2)], vec![f]).expect("valid")
}

fn known_values() -> Result<String, String> {
    let mut n_checks = 0;
    let mut expect = |what: String, got: usize, want: usize| -> Result<(), String> {
        n_checks += 1;
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got}, want {want}"))
        }
    };
    let e = |x: &Representation<Gf2>, y: &Representation<Gf2>, i| ext_dim(x, y, i, 4, CoverKind::Minimal).map_err(|e| e.to_string());
    for n in [1, 2] {
        let alg = BaseAlgebra::new(n).map_err(|e| e.to_string())?;
        let s1 = a2rep(alg, 1, 0, Matrix::zeros(0, 1));
        let s2 = a2rep(alg, 0, 1, Matrix::zeros(1, 0));
        let kk = a2rep(alg, 1, 1, Matrix::identity(1));
        expect(format!("n={n} Ext1(S1,S2)"), e(&s1, &s2, 1)?, 1)?;
        expect(format!("n={n} Ext1(S2,S1)"), e(&s2, &s1, 1)?, 0)?;
        let p = psi0(&kk).map_err(|e| e.to_string())?;
        expect(format!("n={n} psi0(k→k) = (k→0)"), usize::from(p == s1), 1)?;
        let p = psi0(&s2).map_err(|e| e.to_string())?;
        expect(format!("n={n} psi0(0→k) = (k→k)"), usize::from(p == kk), 1)?;
    }
    let alg = BaseAlgebra::new(2).map_err(|e| e.to_string())?;
    let k = AModule::<Gf2>::trivial(alg, 1);
    for i in 0..=4 {
        expect(format!("Ext{i}(k,k) over k[x]/x²"), ext_dim(&k, &k, i, 4, CoverKind::Minimal).map_err(|e| e.to_string())?, 1)?;
    }
    let objs = gen_reps::<Gf2>(&arrow_ctx(alg), 2, None, &mut Params::default().rng());
    let monos: Vec<_> = objs.iter().filter(|x| is_mono_object(x)).collect();
    for x in &monos {
        let u = ker_cok_unit(x).map_err(|e| e.to_string())?;
        expect(format!("unit iso on {}", x.to_json()), usize::from(u.is_iso()), 1)?;
    }
    Ok(format!("{n_checks} exact checks, {} mono objects", monos.len()))
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).expect("write fixture");
    p
}

fn cli_determinism() -> Result<String, String> {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let q = json!({"vertices": [1, 2], "arrows": [{"id": "a", "s": 1, "t": 2}]});
    let k = json!({"dim": 1, "op": [[0]]});
    let s1 = write(&dir, "s1.json", &json!({"quiver": q, "modules": {"1": k}}));
    let s2 = write(&dir, "s2.json", &json!({"quiver": q, "modules": {"2": k}}));
    let kk = write(&dir, "kk.json", &json!({"quiver": q, "modules": {"1": k, "2": k}, "arrows": {"a": [[1]]}}));
    let m = write(&dir, "m.json", &json!({"dim": 2, "op": [[0, 0], [1, 0]]}));
    let s2c = write(&dir, "s2c.json", &json!({"quiver": q, "lo": 0, "hi": 0, "terms": [{"modules": {"2": k}}]}));
    let id = write(&dir, "id.json", &json!({"lo": 0, "comps": [{"1": [[1]], "2": []}]}));
    let zero = write(&dir, "zero.json", &json!({"lo": 0, "comps": [{"1": [[0]], "2": []}]}));
    let f = |p: &PathBuf| p.to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["resolve".into(), f(&m)],
        vec!["resolve".into(), f(&s2c)],
        vec!["ext".into(), "--i".into(), "1".into(), f(&s1), f(&s2)],
        vec!["dhom".into(), "--i".into(), "1".into(), f(&s1), f(&s2c)],
        vec!["cofib".into(), f(&s2c)],
        vec!["fib".into(), f(&s2c)],
        vec!["khom".into(), f(&s1), f(&s1)],
        vec!["--nil".into(), "1".into(), "khom".into(), f(&s1), f(&s1), "--f".into(), f(&id), "--g".into(), f(&zero)],
        vec!["psi0".into(), f(&kk)],
        vec!["psi0".into(), "--inverse".into(), f(&s1)],
        vec!["extcmp".into(), "--i".into(), "1".into(), f(&s2), f(&kk)],
        vec!["verify".into(), "check_adjunction".into(), "--seed".into(), "7".into()],
        vec!["verify".into(), "check_hovey".into(), "--samples".into(), "10".into(), "--seed".into(), "3".into()],
        vec!["enumerate".into(), "--samples".into(), "5".into(), "--seed".into(), "11".into()],
    ];
    let exe = env!("CARGO_BIN_EXE_repmodel");
    let run = |args: &[String]| Command::new(exe).args(args).output().map_err(|e| e.to_string());
    for args in &runs {
        let (a, b) = (run(args)?, run(args)?);
        if a.stdout != b.stdout || a.status.code() != b.status.code() {
            return Err(format!("`{}` is not reproducible", args.join(" ")));
        }
        if !a.status.success() {
            return Err(format!("`{}` exited {:?}: {}", args.join(" "), a.status.code(), String::from_utf8_lossy(&a.stderr)));
        }
    }
    let ext = run(&runs[2])?;
    if ext.stdout != b"{\"dim\":1}\n" {
        return Err(format!("ext S1 S2 printed {}", String::from_utf8_lossy(&ext.stdout)));
    }
    let p: Value = serde_json::from_slice(&run(&runs[8])?.stdout).map_err(|e| e.to_string())?;
    if p["modules"]["1"]["dim"] != 1 || p["modules"]["2"]["dim"] != 0 {
        return Err(format!("psi0 (k→k) printed {p}"));
    }
    let bad = write(&dir, "bad.json", &json!({"quiver": q, "modules": {"9": k}}));
    let code = run(&["ext".into(), "--i".into(), "0".into(), f(&bad), f(&s1)])?.status.code();
    if code != Some(2) {
        return Err(format!("malformed input exited {code:?}"));
    }
    Ok(format!("{} commands byte-identical across reruns", runs.len()))
}
