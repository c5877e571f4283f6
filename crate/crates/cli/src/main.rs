use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use repmodel::category::{Blocks, CoverKind, Morphism, Object};
use repmodel::complex::{ChainMap, Complex, GradedMap, TermCodec};
use repmodel::harness::gen::{gen_modules, gen_reps};
use repmodel::harness::{run_suite, Exec, Params};
use repmodel::json::render;
use repmodel::linalg::{Gf2, Gf3, Gf5, Gf7, Rational, Scalar};
use repmodel::model::{
    cofibrant_replacement, fibrant_replacement, homotopic_cw, homotopy_category_hom_dim, RepComplex,
};
use repmodel::module::{AModule, BaseAlgebra};
use repmodel::morphcat::{ext_compare, is_mono_object, psi0, psi0_inv};
use repmodel::quiver::Quiver;
use repmodel::rep::{RepCtx, Representation};
use repmodel::resolution::{derived_hom_dim, ext_dim, projective_resolution, resolve_complex};
use repmodel::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "repmodel", version, about = "Exact homological algebra for quiver representations over k[x]/(x^n)")]
struct Cli {
    /// Base field: gf:2, gf:3, gf:5, gf:7 or rat.
    #[arg(long, global = true, default_value = "gf:2")]
    base: String,
    /// Nilpotency index n of A = k[x]/(x^n).
    #[arg(long, global = true, default_value_t = 2)]
    nil: usize,
    /// Resolution length L.
    #[arg(long, global = true, default_value_t = 4)]
    length: usize,
    /// Degree window lo:hi; lo is where resolutions are cut.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Use a deliberately non-minimal projective cover.
    #[arg(long, global = true)]
    redundant: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Projective resolution of an object, or of a bounded complex.
    Resolve { input: PathBuf },
    /// dim Ext^i(X, Y).
    Ext {
        #[arg(long = "i")]
        i: usize,
        x: PathBuf,
        y: PathBuf,
    },
    /// dim Hom_D(X, Y[i]).
    Dhom {
        #[arg(long = "i", default_value_t = 0, allow_negative_numbers = true)]
        i: i64,
        x: PathBuf,
        y: PathBuf,
    },
    /// Cofibrant replacement with its certificate.
    Cofib { input: PathBuf },
    /// Fibrant replacement with its certificate.
    Fib { input: PathBuf },
    /// Hom in the homotopy category; with --f and --g, compare the two homotopy relations.
    Khom {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// psi0 of an object of the morphism category.
    Psi0 {
        input: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// (dim Ext^i(X, Y), dim Ext^i(psi0 X, psi0 Y)).
    Extcmp {
        #[arg(long = "i")]
        i: usize,
        x: PathBuf,
        y: PathBuf,
    },
    /// Run a verification suite and print its report.
    Verify {
        suite: String,
        #[arg(long, default_value = "a2")]
        quiver: String,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Cap on the number of degrees of generated complexes.
        #[arg(long, default_value_t = 4)]
        max_window: usize,
        /// Enumerate every instance (the default where feasible).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Draw this many seeded samples instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        sequential: bool,
        /// Include per-case wall time (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// List generated instances.
    Enumerate {
        #[arg(value_enum, default_value_t = Kind::Reps)]
        kind: Kind,
        #[arg(long, default_value = "a2")]
        quiver: String,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Modules,
    Reps,
}

/// Result of a command: the JSON document and whether the math checked out.
struct Output {
    value: Value,
    ok: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.base.as_str() {
        "gf:2" => run::<Gf2>(&cli),
        "gf:3" => run::<Gf3>(&cli),
        "gf:5" => run::<Gf5>(&cli),
        "gf:7" => run::<Gf7>(&cli),
        "rat" => run::<Rational>(&cli),
        b => Err(Error::Unsupported(format!("base `{b}` (expected gf:2, gf:3, gf:5, gf:7 or rat)"))),
    };
    match res {
        Ok(out) => {
            print!("{}", render(&out.value));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn cover(cli: &Cli) -> CoverKind {
    if cli.redundant {
        CoverKind::Redundant
    } else {
        CoverKind::Minimal
    }
}

fn window(cli: &Cli) -> Result<Option<(i64, i64)>> {
    let Some(w) = &cli.window else { return Ok(None) };
    let bad = || Error::Parse(format!("--window expects lo:hi, got `{w}`"));
    let (a, b) = w.split_once(':').ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Parse(format!("--window {w}: lo exceeds hi")));
    }
    Ok(Some((lo, hi)))
}

fn parse_quiver(s: &str) -> Result<Quiver> {
    match s {
        "a1" => Ok(Quiver::linear(1)),
        "a2" => Ok(Quiver::a2()),
        "a3" => Ok(Quiver::linear(3)),
        "fork" => Ok(Quiver::fork()),
        _ => {
            if let Some(m) = s.strip_prefix("linear:") {
                let m: usize = m.parse().map_err(|_| Error::Parse(format!("bad quiver `{s}`")))?;
                if m == 0 {
                    return Err(Error::Parse("linear quiver needs at least one vertex".into()));
                }
                return Ok(Quiver::linear(m));
            }
            let v = read_json(Path::new(s))?;
            Quiver::from_json(v.get("quiver").unwrap_or(&v))
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn root(path: &Path) -> String {
    format!("{}:$", path.display())
}

/// Anything the commands accept, told apart by its keys.
enum Input<S: Scalar> {
    Module(AModule<S>),
    Rep(Representation<S>),
    ModComplex(Complex<AModule<S>>),
    RepComplex(RepComplex<S>),
}

fn load<S: Scalar>(path: &Path, alg: BaseAlgebra) -> Result<Input<S>> {
    let v = read_json(path)?;
    let p = root(path);
    let obj = v.as_object().ok_or_else(|| Error::schema(&p, "expected an object"))?;
    if obj.contains_key("lo") {
        match obj.get("quiver") {
            Some(q) => {
                let ctx = RepCtx::new(Quiver::from_json(q)?, alg);
                Ok(Input::RepComplex(Complex::from_json(&v, &ctx, &p)?))
            }
            None => Ok(Input::ModComplex(Complex::from_json(&v, &alg, &p)?)),
        }
    } else if obj.contains_key("quiver") {
        Ok(Input::Rep(Representation::from_json(&v, alg, &p)?))
    } else if obj.contains_key("dim") {
        Ok(Input::Module(AModule::from_json(&v, alg, &p)?))
    } else {
        Err(Error::schema(p, "expected a module {dim, op}, a representation {quiver, modules, arrows} or a complex {lo, hi, terms, diffs}"))
    }
}

fn complex_json<O: Blocks + TermCodec>(x: &Complex<O>, quiver: Option<&Quiver>) -> Value {
    let mut v = x.to_json();
    if let Some(q) = quiver {
        v["quiver"] = q.to_json();
    }
    v
}

fn graded_json<O: Object + TermCodec>(s: &GradedMap<O>) -> Value {
    json!({"degree": s.degree, "lo": s.lo, "comps": s.comps.iter().map(O::mor_to_json).collect::<Vec<_>>()})
}

fn same_quiver<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<()> {
    if x.quiver() == y.quiver() {
        Ok(())
    } else {
        Err(Error::Shape("the two inputs live over different quivers".into()))
    }
}

fn mixed() -> Error {
    Error::Shape("the two inputs must be of the same kind".into())
}

/// A module as a representation of the one-vertex quiver.
fn module_as_rep<S: Scalar>(m: &AModule<S>) -> Representation<S> {
    let ctx = RepCtx::new(Quiver::linear(1), m.alg());
    Representation::new(&ctx, vec![m.clone()], vec![]).expect("no arrows to check")
}

fn rep_complex<S: Scalar>(x: Input<S>) -> RepComplex<S> {
    match x {
        Input::Module(m) => Complex::concentrated(&module_as_rep(&m), 0),
        Input::Rep(r) => Complex::concentrated(&r, 0),
        Input::ModComplex(c) => {
            let ctx = RepCtx::new(Quiver::linear(1), *c.ctx_ref());
            c.map(&ctx, module_as_rep, |f| {
                let (s, t) = (module_as_rep(f.source()), module_as_rep(f.target()));
                repmodel::rep::RepMorphism::new(&s, &t, vec![f.mat().clone()]).expect("single component")
            })
        }
        Input::RepComplex(c) => c,
    }
}

fn arrow_input<S: Scalar>(x: Input<S>, path: &Path) -> Result<Representation<S>> {
    let r = match x {
        Input::Rep(r) => r,
        _ => return Err(Error::schema(root(path), "expected a representation of the quiver 1 → 2")),
    };
    let q = r.quiver();
    if q.vertex_count() == 2 && q.arrows().len() == 1 && q.arrows()[0].s == 0 && q.arrows()[0].t == 1 {
        Ok(r)
    } else {
        Err(Error::schema(format!("{}.quiver", root(path)), "expected the quiver 1 → 2"))
    }
}

fn resolve_object<O: Blocks + TermCodec>(x: &O, cli: &Cli, quiver: Option<&Quiver>) -> Value {
    let res = projective_resolution(x, cli.length, cover(cli));
    json!({
        "length": cli.length,
        "complete": res.complete,
        "resolution": complex_json(&res.complex(), quiver),
        "augmentation": O::mor_to_json(&res.augmentation),
    })
}

fn resolve_cx<O: Blocks + TermCodec>(x: &Complex<O>, cli: &Cli, quiver: Option<&Quiver>) -> Result<Value> {
    let cut = match window(cli)? {
        Some((lo, _)) => lo,
        None => x.lo() - cli.length as i64,
    };
    let res = resolve_complex(x, cut, cover(cli));
    Ok(json!({
        "cut": res.cut,
        "complete": res.complete,
        "resolution": complex_json(&res.p, quiver),
        "rho": res.rho.to_json(),
    }))
}

fn dhom_of<O: Blocks + TermCodec>(x: &Complex<O>, y: &Complex<O>, i: i64, cli: &Cli) -> Result<Value> {
    let cut = window(cli)?.map(|w| w.0);
    let d = derived_hom_dim(x, y, i, cut, cover(cli))?;
    Ok(json!({"dim": d, "i": i}))
}

/// Degree where cofibrant replacement cuts: six degrees of certified window
/// by default, or the window's lower end.
fn cofib_cut<S: Scalar>(x: &RepComplex<S>, cli: &Cli) -> Result<i64> {
    Ok(match window(cli)? {
        Some((lo, _)) => lo - 1,
        None if x.is_empty() => -1,
        None => (x.hi() - 6).min(x.lo() - 1),
    })
}

fn run<S: Scalar>(cli: &Cli) -> Result<Output> {
    let alg = BaseAlgebra::new(cli.nil)?;
    match &cli.cmd {
        Cmd::Resolve { input } => {
            let v = match load::<S>(input, alg)? {
                Input::Module(m) => resolve_object(&m, cli, None),
                Input::Rep(r) => resolve_object(&r, cli, Some(r.quiver())),
                Input::ModComplex(c) => resolve_cx(&c, cli, None)?,
                Input::RepComplex(c) => {
                    let q = c.ctx_ref().quiver.clone();
                    resolve_cx(&c, cli, Some(&q))?
                }
            };
            Ok(Output::ok(v))
        }
        Cmd::Ext { i, x, y } => {
            let length = cli.length.max(*i);
            let d = match (load::<S>(x, alg)?, load::<S>(y, alg)?) {
                (Input::Module(a), Input::Module(b)) => ext_dim(&a, &b, *i, length, cover(cli))?,
                (Input::Rep(a), Input::Rep(b)) => {
                    same_quiver(&a, &b)?;
                    ext_dim(&a, &b, *i, length, cover(cli))?
                }
                _ => return Err(Error::Shape("ext takes two modules or two representations".into())),
            };
            Ok(Output::ok(json!({"dim": d})))
        }
        Cmd::Dhom { i, x, y } => {
            let (a, b) = (load::<S>(x, alg)?, load::<S>(y, alg)?);
            let v = match (a, b) {
                (a @ (Input::Module(_) | Input::ModComplex(_)), b @ (Input::Module(_) | Input::ModComplex(_))) => {
                    let lift = |z: Input<S>| match z {
                        Input::Module(m) => Complex::concentrated(&m, 0),
                        Input::ModComplex(c) => c,
                        _ => unreachable!(),
                    };
                    dhom_of(&lift(a), &lift(b), *i, cli)?
                }
                (a @ (Input::Rep(_) | Input::RepComplex(_)), b @ (Input::Rep(_) | Input::RepComplex(_))) => {
                    let (a, b) = (rep_complex(a), rep_complex(b));
                    if a.ctx_ref().quiver != b.ctx_ref().quiver {
                        return Err(Error::Shape("the two inputs live over different quivers".into()));
                    }
                    dhom_of(&a, &b, *i, cli)?
                }
                _ => return Err(mixed()),
            };
            Ok(Output::ok(v))
        }
        Cmd::Cofib { input } => {
            let x = rep_complex(load::<S>(input, alg)?);
            let cut = cofib_cut(&x, cli)?;
            let c = cofibrant_replacement(&x, cut)?;
            let mut v = c.to_json();
            v["object"]["quiver"] = x.ctx_ref().quiver.to_json();
            v["cut"] = json!(cut);
            Ok(Output { ok: c.ok(), value: v })
        }
        Cmd::Fib { input } => {
            let x = rep_complex(load::<S>(input, alg)?);
            let c = fibrant_replacement(&x);
            let mut v = c.to_json();
            v["object"]["quiver"] = x.ctx_ref().quiver.to_json();
            Ok(Output { ok: c.ok(), value: v })
        }
        Cmd::Khom { x, y, f, g } => {
            let (a, b) = (rep_complex(load::<S>(x, alg)?), rep_complex(load::<S>(y, alg)?));
            if a.ctx_ref().quiver != b.ctx_ref().quiver {
                return Err(Error::Shape("the two inputs live over different quivers".into()));
            }
            match (f, g) {
                (None, None) => Ok(Output::ok(json!({"dim": homotopy_category_hom_dim(&a, &b)?}))),
                (Some(fp), Some(gp)) => {
                    let fm = ChainMap::from_json(&read_json(fp)?, &a, &b, &root(fp))?;
                    let gm = ChainMap::from_json(&read_json(gp)?, &a, &b, &root(gp))?;
                    let v = homotopic_cw(&fm, &gm)?;
                    let consistent = v.homotopic() == v.cw_homotopic() && v.homotopic() == v.recovered;
                    Ok(Output {
                        ok: consistent,
                        value: json!({
                            "homotopic": v.homotopic(),
                            "cw_homotopic": v.cw_homotopic(),
                            "envelope_is_divide": v.envelope_is_divide,
                            "recovered": v.recovered,
                            "homotopy": v.homotopy.as_ref().map(graded_json),
                            "factorization": v.factorization.as_ref().map(ChainMap::to_json),
                            "envelope": complex_json(&v.envelope.object, Some(&a.ctx_ref().quiver)),
                        }),
                    })
                }
                _ => Err(Error::Parse("--f and --g go together".into())),
            }
        }
        Cmd::Psi0 { input, inverse } => {
            let x = arrow_input(load::<S>(input, alg)?, input)?;
            let y = if *inverse { psi0_inv(&x)? } else { psi0(&x)? };
            Ok(Output::ok(y.to_json()))
        }
        Cmd::Extcmp { i, x, y } => {
            let a = arrow_input(load::<S>(x, alg)?, x)?;
            let b = arrow_input(load::<S>(y, alg)?, y)?;
            let length = cli.length.max(*i);
            let (l, r) = ext_compare(&a, &b, *i, length)?;
            let in_s = is_mono_object(&a) && is_mono_object(&b);
            // Equality is only claimed on monomorphism objects.
            Ok(Output {
                ok: !in_s || l == r,
                value: json!({"i": i, "length": length, "dims": [l, r], "equal": l == r, "mono_inputs": in_s}),
            })
        }
        Cmd::Verify { suite, quiver, max_dim, max_window, exhaustive, samples, sequential, timing } => {
            let p = Params {
                nil: cli.nil,
                quiver: parse_quiver(quiver)?,
                max_dim: *max_dim,
                max_window: *max_window,
                length: cli.length,
                seed: cli.seed,
                random: if *exhaustive { None } else { *samples },
                exec: if *sequential { Exec::Sequential } else { Exec::Parallel },
                timing: *timing,
            };
            let r = run_suite::<S>(suite, &p)?;
            Ok(Output { ok: r.passed(), value: r.to_json() })
        }
        Cmd::Enumerate { kind, quiver, max_dim, exhaustive, samples } => {
            let mut rng = Params { seed: cli.seed, ..Params::default() }.rng();
            let random = if *exhaustive { None } else { *samples };
            let mode = if random.is_some() { "sampled" } else { "exhaustive" };
            let items: Vec<Value> = match kind {
                Kind::Modules => gen_modules::<S>(alg, *max_dim, random, &mut rng).iter().map(AModule::to_json).collect(),
                Kind::Reps => {
                    let ctx = RepCtx::new(parse_quiver(quiver)?, alg);
                    gen_reps::<S>(&ctx, *max_dim, random, &mut rng).iter().map(Representation::to_json).collect()
                }
            };
            Ok(Output::ok(json!({"count": items.len(), "mode": mode, "items": items})))
        }
    }
}
