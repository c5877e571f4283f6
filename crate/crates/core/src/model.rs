//! The componentwise projective model structure on complexes of
//! representations: class predicates, replacements with re-checked
//! certificates, and the two homotopy relations.

use serde_json::{json, Map, Value};

use crate::category::{extend_through_mono, lift_through_epi, Blocks, CoverKind, Morphism, Object};
use crate::complex::{check_homotopy, homotopic, ChainMap, Complex, HomComplex, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::module::AModule;
use crate::rep::{RepCtx, RepMorphism, Representation};
use crate::resolution::{eta_chain, resolve_complex, vertex_complex};

pub type RepComplex<S> = Complex<Representation<S>>;
pub type RepChainMap<S> = ChainMap<Representation<S>>;
type ModComplex<S> = Complex<AModule<S>>;
type ModChainMap<S> = ChainMap<AModule<S>>;

/// The chain map X•(a): X•_{s(a)} → X•_{t(a)}.
pub fn arrow_chain<S: Scalar>(x: &RepComplex<S>, a: usize) -> ModChainMap<S> {
    let q = x.ctx().quiver.clone();
    let ar = &q.arrows()[a];
    ChainMap::from_fn(&vertex_complex(x, ar.s), &vertex_complex(x, ar.t), |i| x.term(i).arrow_map(a))
}

/// Glues vertex complexes and arrow chain maps into a complex of representations.
pub fn assemble<S: Scalar>(ctx: &RepCtx, vc: &[ModComplex<S>], arrows: &[ModChainMap<S>]) -> RepComplex<S> {
    let w = vc.iter().filter_map(Complex::window).fold(None, |acc: Option<(i64, i64)>, (l, h)| {
        Some(acc.map_or((l, h), |(a, b)| (a.min(l), b.max(h))))
    });
    let Some((lo, hi)) = w else { return Complex::zero_complex(ctx) };
    let terms: Vec<Representation<S>> = (lo..=hi)
        .map(|i| {
            let modules = vc.iter().map(|c| c.term(i)).collect();
            let maps = arrows.iter().map(|m| m.comp(i).mat().clone()).collect();
            Representation::new(ctx, modules, maps).expect("arrow chain maps are A-linear")
        })
        .collect();
    let t = |i: i64| terms[(i - lo) as usize].clone();
    Complex::from_fn(ctx, lo, hi, t, |i| {
        let comps = vc.iter().map(|c| c.d(i).mat().clone()).collect();
        RepMorphism::new(&t(i), &t(i + 1), comps).expect("differentials commute with arrows")
    })
}

/// Glues per-vertex chain maps into a chain map of complexes of representations.
pub fn assemble_map<S: Scalar>(src: &RepComplex<S>, tgt: &RepComplex<S>, comps: &[ModChainMap<S>]) -> RepChainMap<S> {
    ChainMap::from_fn(src, tgt, |i| {
        let mats = comps.iter().map(|c| c.comp(i).mat().clone()).collect();
        RepMorphism::new(&src.term(i), &tgt.term(i), mats).expect("vertex maps commute with arrows")
    })
}

/// C = (Q, DGPrj): every vertex complex is termwise projective.
pub fn is_cofibrant_cw<S: Scalar>(x: &RepComplex<S>) -> bool {
    x.terms().iter().all(|r| r.modules().iter().all(AModule::is_projective))
}

/// F: η_{X•,v} is an epimorphism at every vertex.
pub fn is_fibrant_cw<S: Scalar>(x: &RepComplex<S>) -> bool {
    (0..x.ctx().quiver.vertex_count()).all(|v| eta_chain(x, v).is_epi())
}

/// W: exact at every vertex.
pub fn is_trivial_cw<S: Scalar>(x: &RepComplex<S>) -> bool {
    x.is_exact()
}

/// (÷): every vertex complex is a projective complex and every η is epi.
pub fn is_divide_class<S: Scalar>(x: &RepComplex<S>) -> bool {
    let nv = x.ctx().quiver.vertex_count();
    (0..nv).all(|v| vertex_complex(x, v).is_projective_complex()) && is_fibrant_cw(x)
}

/// A replacement together with the independently re-evaluated flags.
#[derive(Clone, Debug)]
pub struct Certificate<S: Scalar> {
    pub object: RepComplex<S>,
    /// ρ: QX → X for a cofibrant replacement, ι: X → RX for a fibrant one.
    pub map: RepChainMap<S>,
    /// Degrees in which exactness claims are made.
    pub window: (i64, i64),
    pub flags: Vec<(&'static str, bool)>,
}

impl<S: Scalar> Certificate<S> {
    pub fn ok(&self) -> bool {
        self.flags.iter().all(|(_, b)| *b)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| *n == name).map(|(_, b)| *b)
    }

    pub fn to_json(&self) -> Value {
        let flags: Map<String, Value> = self.flags.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect();
        json!({
            "object": self.object.to_json(),
            "map": self.map.to_json(),
            "window": [self.window.0, self.window.1],
            "flags": flags,
            "ok": self.ok(),
        })
    }
}

fn injection<S: Scalar>(alg: &crate::module::BaseAlgebra, first: &ModComplex<S>, rest: &[ModComplex<S>]) -> ModChainMap<S> {
    let mut parts = vec![first.clone()];
    parts.extend_from_slice(rest);
    Complex::block_morphism(alg, std::slice::from_ref(first), &parts, &|r, _| (r == 0).then(|| first.identity()))
}

/// Cofibrant replacement ρ: QX → X, resolving each vertex down to `cut`.
/// Step 1 resolves vertexwise, adds disks where ρ is not yet onto and lifts
/// the arrows; step 2 walks the vertices in reverse topological order and
/// adjoins at v projective covers of the successor kernels, so that η of
/// ker ρ becomes onto.
pub fn cofibrant_replacement<S: Scalar>(x: &RepComplex<S>, cut: i64) -> Result<Certificate<S>> {
    let ctx = x.ctx();
    let alg = ctx.alg;
    let q = ctx.quiver.clone();
    let nv = q.vertex_count();
    if !x.is_empty() && cut >= x.lo() {
        return Err(Error::InsufficientWindow(format!("cut {cut} must lie below the lowest degree {}", x.lo())));
    }
    let xv: Vec<ModComplex<S>> = (0..nv).map(|v| vertex_complex(x, v)).collect();

    let mut pv = Vec::with_capacity(nv);
    let mut rho = Vec::with_capacity(nv);
    for xc in &xv {
        let r = resolve_complex(xc, cut, CoverKind::Minimal);
        let mut parts = vec![r.p.clone()];
        let mut maps = vec![r.rho.clone()];
        for i in xc.degrees() {
            if !r.rho.comp(i).is_epi() {
                let cov = xc.term(i).projective_cover(CoverKind::Minimal);
                let disk = Complex::disk(cov.source(), i + 1);
                let m = ChainMap::from_fn(&disk, xc, |n| {
                    if n == i {
                        cov.clone()
                    } else if n == i + 1 {
                        xc.d(i).compose(&cov)
                    } else {
                        disk.term(n).zero_mor(&xc.term(n))
                    }
                });
                parts.push(disk);
                maps.push(m);
            }
        }
        let p = Complex::sum(&alg, &parts);
        rho.push(Complex::row(xc, &maps));
        pv.push(p);
    }
    let mut arr = Vec::with_capacity(q.arrows().len());
    for (a, ar) in q.arrows().iter().enumerate() {
        let phi = arrow_chain(x, a).compose(&rho[ar.s]);
        let lift = lift_through_epi(&phi, &rho[ar.t])
            .ok_or_else(|| Error::InsufficientWindow(format!("arrow `{}` does not lift within the window", ar.id)))?;
        arr.push(lift);
    }

    for v in q.reverse_topological_order() {
        let outs = q.out_arrows(v);
        if outs.is_empty() {
            continue;
        }
        let kv = rho[v].kernel();
        let kts: Vec<ModChainMap<S>> = outs.iter().map(|&a| rho[q.arrows()[a].t].kernel()).collect();
        let eta_k: Vec<ModChainMap<S>> = outs
            .iter()
            .zip(&kts)
            .map(|(&a, kt)| arr[a].compose(&kv).factor_through_mono(kt).expect("arrows preserve kernels"))
            .collect();
        if Complex::column(kv.source(), &eta_k).is_epi() {
            continue;
        }
        let covers: Vec<ModChainMap<S>> = kts.iter().map(|kt| kt.source().projective_cover(CoverKind::Minimal)).collect();
        let extra: Vec<ModComplex<S>> = covers.iter().map(|c| c.source().clone()).collect();
        let old = pv[v].clone();
        let inj = injection(&alg, &old, &extra);
        let mut all = vec![old.clone()];
        all.extend(extra.iter().cloned());
        pv[v] = Complex::sum(&alg, &all);
        for (k, &a) in outs.iter().enumerate() {
            let t = q.arrows()[a].t;
            let mut parts = vec![arr[a].clone()];
            for (j, e) in extra.iter().enumerate() {
                parts.push(if j == k { kts[k].compose(&covers[k]) } else { ChainMap::zero_between(e, &pv[t]) });
            }
            arr[a] = Complex::row(&pv[t], &parts);
        }
        for b in q.in_arrows(v) {
            arr[b] = inj.compose(&arr[b]);
        }
        let mut parts = vec![rho[v].clone()];
        parts.extend(extra.iter().map(|e| ChainMap::zero_between(e, &xv[v])));
        rho[v] = Complex::row(&xv[v], &parts);
    }

    let qx = assemble(&ctx, &pv, &arr);
    let map = assemble_map(&qx, x, &rho);
    let window = (cut + 1, qx.hi().max(x.hi()));
    let flags = cofibrant_flags(&qx, &map, window);
    Ok(Certificate { object: qx, map, window, flags })
}

/// Re-evaluates the cofibrant-replacement conditions from scratch.
pub fn cofibrant_flags<S: Scalar>(qx: &RepComplex<S>, rho: &RepChainMap<S>, window: (i64, i64)) -> Vec<(&'static str, bool)> {
    let nv = qx.ctx().quiver.vertex_count();
    let k = rho.kernel();
    let kc = k.source();
    let kernel_exact = (0..nv).all(|v| {
        let c = vertex_complex(kc, v);
        (window.0..=window.1).all(|i| c.is_exact_at(i))
    });
    let quasi = (0..nv).all(|v| {
        let m = ChainMap::from_fn(&vertex_complex(qx, v), &vertex_complex(rho.target(), v), |i| rho.comp(i).comp(v));
        crate::complex::is_quasi_iso_above(&m, window.0)
    });
    vec![
        ("cofibrant", is_cofibrant_cw(qx)),
        ("rho_epi", rho.is_epi()),
        ("kernel_exact", kernel_exact),
        ("kernel_eta_epi", is_fibrant_cw(kc)),
        ("rho_quasi_iso", quasi),
    ]
}

/// Fibrant replacement ι: X → RX. In reverse topological order, a vertex
/// whose η is not onto gets a projective complex D with π: D ↠ ⊕ RX_{t(a)}
/// added, and the arrows out of it are extended by the components of π.
pub fn fibrant_replacement<S: Scalar>(x: &RepComplex<S>) -> Certificate<S> {
    let ctx = x.ctx();
    let alg = ctx.alg;
    let q = ctx.quiver.clone();
    let nv = q.vertex_count();
    let mut vc: Vec<ModComplex<S>> = (0..nv).map(|v| vertex_complex(x, v)).collect();
    let mut arr: Vec<ModChainMap<S>> = (0..q.arrows().len()).map(|a| arrow_chain(x, a)).collect();
    let mut iota: Vec<ModChainMap<S>> = vc.iter().map(ChainMap::identity_of).collect();

    for v in q.reverse_topological_order() {
        let outs = q.out_arrows(v);
        if outs.is_empty() {
            continue;
        }
        let parts: Vec<ModChainMap<S>> = outs.iter().map(|&a| arr[a].clone()).collect();
        if Complex::column(&vc[v], &parts).is_epi() {
            continue;
        }
        let targets: Vec<ModComplex<S>> = outs.iter().map(|&a| vc[q.arrows()[a].t].clone()).collect();
        let sum = Complex::sum(&alg, &targets);
        let pi = sum.projective_cover(CoverKind::Minimal);
        let d = pi.source().clone();
        let old = vc[v].clone();
        let inj = injection(&alg, &old, std::slice::from_ref(&d));
        vc[v] = Complex::sum(&alg, &[old, d.clone()]);
        for (k, &a) in outs.iter().enumerate() {
            let proj = Complex::block_morphism(&alg, &targets, &targets[k..k + 1], &|_, c| (c == k).then(|| targets[k].identity()));
            arr[a] = Complex::row(&targets[k], &[arr[a].clone(), proj.compose(&pi)]);
        }
        for b in q.in_arrows(v) {
            arr[b] = inj.compose(&arr[b]);
        }
        iota[v] = inj.compose(&iota[v]);
    }

    let rx = assemble(&ctx, &vc, &arr);
    let map = assemble_map(x, &rx, &iota);
    let window = (rx.lo().min(x.lo()), rx.hi().max(x.hi()));
    let flags = fibrant_flags(&rx, &map);
    Certificate { object: rx, map, window, flags }
}

pub fn fibrant_flags<S: Scalar>(rx: &RepComplex<S>, iota: &RepChainMap<S>) -> Vec<(&'static str, bool)> {
    let nv = rx.ctx().quiver.vertex_count();
    let c = iota.cokernel();
    let cok = c.target();
    vec![
        ("fibrant", is_fibrant_cw(rx)),
        ("iota_mono", iota.is_mono()),
        ("cokernel_projective", (0..nv).all(|v| vertex_complex(cok, v).is_projective_complex())),
    ]
}

/// I(X) = ⊕_i disk(X^i, i) with the monomorphism α = (d, 1): X → I(X).
#[derive(Clone, Debug)]
pub struct Envelope<O: Object> {
    pub object: Complex<O>,
    pub alpha: ChainMap<O>,
    disks: Vec<(i64, Complex<O>)>,
}

pub fn envelope<O: Blocks>(x: &Complex<O>) -> Envelope<O> {
    let ctx = x.ctx();
    let disks: Vec<(i64, Complex<O>)> = x.degrees().map(|i| (i, Complex::disk(&x.term(i), i))).collect();
    let object = Complex::sum(&ctx, &disks.iter().map(|(_, d)| d.clone()).collect::<Vec<_>>());
    let alpha = ChainMap::from_fn(x, &object, |n| {
        let parts: Vec<O::Mor> = disks
            .iter()
            .map(|(i, d)| {
                if n == i - 1 {
                    x.d(n)
                } else if n == *i {
                    x.term(n).identity()
                } else {
                    x.term(n).zero_mor(&d.term(n))
                }
            })
            .collect();
        O::column(&x.term(n), &parts)
    });
    Envelope { object, alpha, disks }
}

impl<O: Blocks> Envelope<O> {
    /// β: I(X) → Y with β α = f − g, built from a homotopy s (s^i on disk(X^i, i)
    /// in degree i − 1 and d_Y s^i in degree i).
    pub fn beta_from_homotopy(&self, y: &Complex<O>, s: &Homotopy<O>) -> ChainMap<O> {
        let sc = |i: i64, src: &O| s.comp(i).cloned().unwrap_or_else(|| src.zero_mor(&y.term(i - 1)));
        ChainMap::from_fn(&self.object, y, |n| {
            let parts: Vec<O::Mor> = self
                .disks
                .iter()
                .map(|(i, d)| {
                    let xi = d.term(n);
                    if n == i - 1 {
                        sc(*i, &xi)
                    } else if n == *i {
                        y.d(n - 1).compose(&sc(*i, &xi))
                    } else {
                        xi.zero_mor(&y.term(n))
                    }
                })
                .collect();
            O::row(&y.term(n), &parts)
        })
    }
}

/// Given f − g = β α with α: X → P, β: P → Y and P contractible, the
/// homotopy s = β h α from a contraction h of P.
pub fn homotopy_from_factorization<O: Blocks>(alpha: &ChainMap<O>, beta: &ChainMap<O>) -> Option<Homotopy<O>> {
    let p = alpha.target();
    let h = homotopic(&p.identity(), &p.zero_mor(p)).ok()??;
    let x = alpha.source();
    let y = beta.target();
    let comps = x
        .degrees()
        .map(|n| match h.comp(n) {
            Some(hn) => beta.comp(n - 1).compose(hn).compose(&alpha.comp(n)),
            None => x.term(n).zero_mor(&y.term(n - 1)),
        })
        .collect();
    Some(Homotopy { degree: -1, lo: x.lo(), comps })
}

/// Outcome of comparing ∼ and ∼_cw on a pair of maps.
#[derive(Clone, Debug)]
pub struct CwVerdict<S: Scalar> {
    /// The ordinary homotopy solver's answer.
    pub homotopy: Option<Homotopy<Representation<S>>>,
    /// β with β α = f − g through the envelope, solved independently.
    pub factorization: Option<RepChainMap<S>>,
    pub envelope: Envelope<Representation<S>>,
    pub envelope_is_divide: bool,
    /// The homotopy recovered from the factorization re-substitutes.
    pub recovered: bool,
}

impl<S: Scalar> CwVerdict<S> {
    pub fn homotopic(&self) -> bool {
        self.homotopy.is_some()
    }

    /// ∼_cw witnessed: f − g factors through a (÷) object.
    pub fn cw_homotopic(&self) -> bool {
        self.factorization.is_some() && self.envelope_is_divide
    }
}

/// Both homotopy relations on maps between fibrant-cofibrant complexes.
pub fn homotopic_cw<S: Scalar>(f: &RepChainMap<S>, g: &RepChainMap<S>) -> Result<CwVerdict<S>> {
    let (x, y) = (f.source(), f.target());
    for (name, c) in [("source", x), ("target", y)] {
        if !is_cofibrant_cw(c) || !is_fibrant_cw(c) {
            return Err(Error::Precondition(format!("{name} is not fibrant and cofibrant")));
        }
    }
    let homotopy = homotopic(f, g)?;
    let env = envelope(x);
    let diff = f.sub(g);
    let factorization = extend_through_mono(&diff, &env.alpha);
    let recovered = match &factorization {
        Some(beta) => homotopy_from_factorization(&env.alpha, beta).is_some_and(|s| check_homotopy(f, g, &s)),
        None => false,
    };
    let envelope_is_divide = is_divide_class(&env.object);
    Ok(CwVerdict { homotopy, factorization, envelope: env, envelope_is_divide, recovered })
}

/// Ho(X, Y) as chain maps QX → RY modulo homotopy.
pub fn homotopy_category_hom_dim<S: Scalar>(x: &RepComplex<S>, y: &RepComplex<S>) -> Result<usize> {
    if x.is_empty() || y.is_empty() {
        return Ok(0);
    }
    let cut = x.lo().min(y.lo()) - 1;
    let qx = cofibrant_replacement(x, cut)?;
    let ry = fibrant_replacement(y);
    for (name, c) in [("cofibrant", &qx), ("fibrant", &ry)] {
        if !c.ok() {
            let bad: Vec<&str> = c.flags.iter().filter(|(_, b)| !b).map(|(n, _)| *n).collect();
            return Err(Error::InsufficientWindow(format!("{name} replacement failed its checks: {}", bad.join(", "))));
        }
    }
    Ok(HomComplex::new(&qx.object, &ry.object).homology_dim(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, Matrix};
    use crate::module::BaseAlgebra;
    use crate::quiver::Quiver;
    use crate::rep::e_rho;
    use crate::resolution::{derived_hom_dim, is_dgprj_op, Splitting};

    fn ctx(q: Quiver, n: usize) -> RepCtx {
        RepCtx::new(q, BaseAlgebra::new(n).unwrap())
    }

    fn a2rep(c: &RepCtx, d1: usize, d2: usize, f: Matrix<Gf2>) -> Representation<Gf2> {
        Representation::new(c, vec![AModule::trivial(c.alg, d1), AModule::trivial(c.alg, d2)], vec![f]).unwrap()
    }

    #[test]
    fn predicates_on_a2() {
        let c = ctx(Quiver::a2(), 1);
        let s1 = Complex::concentrated(&a2rep(&c, 1, 0, Matrix::zeros(0, 1)), 0);
        let s2 = Complex::concentrated(&a2rep(&c, 0, 1, Matrix::zeros(1, 0)), 0);
        assert!(is_cofibrant_cw(&s2));
        assert!(is_fibrant_cw(&s1));
        assert!(!is_fibrant_cw(&s2));
        assert!(!is_trivial_cw(&s1));
        assert!(is_divide_class(&Complex::<Representation<Gf2>>::zero_complex(&c)));
        assert!(!is_divide_class(&s1));
        let k2 = ctx(Quiver::a2(), 2);
        let kv = a2rep(&k2, 1, 0, Matrix::zeros(0, 1));
        assert!(!is_cofibrant_cw(&Complex::concentrated(&kv, 0)));
        let one = ctx(Quiver::linear(1), 2);
        let m = Representation::<Gf2>::new(&one, vec![AModule::trivial(one.alg, 2)], vec![]).unwrap();
        assert!(is_fibrant_cw(&Complex::concentrated(&m, 3)));
    }

    #[test]
    fn divide_objects_from_e_rho() {
        let c = ctx(Quiver::fork(), 2);
        let a = AModule::<Gf2>::free(c.alg, 1);
        let r = e_rho(&c, 1, &a);
        let r2 = e_rho(&c, 0, &a);
        let d = Complex::sum(&c, &[Complex::disk(&r, 0), Complex::disk(&r2, 2)]);
        assert!(is_divide_class(&d));
        let h = homotopic_cw(&d.identity(), &d.zero_mor(&d)).unwrap();
        assert!(h.homotopic() && h.cw_homotopic() && h.recovered);
    }

    #[test]
    fn cofibrant_replacement_examples() {
        let c = ctx(Quiver::a2(), 1);
        let s1 = Complex::concentrated(&a2rep(&c, 1, 0, Matrix::zeros(0, 1)), 0);
        let cert = cofibrant_replacement(&s1, -3).unwrap();
        assert!(cert.ok(), "{:?}", cert.flags);
        assert_eq!(cert.object, s1);

        let c2 = ctx(Quiver::a2(), 2);
        let x = Complex::concentrated(&a2rep(&c2, 0, 1, Matrix::zeros(1, 0)), 0);
        let cert = cofibrant_replacement(&x, -6).unwrap();
        assert!(cert.ok(), "{:?}", cert.flags);
        assert!(vertex_complex(&cert.object, 0).dim() > 0);
        assert!(matches!(cofibrant_replacement(&x, 0), Err(Error::InsufficientWindow(_))));
    }

    #[test]
    fn fork_replacement() {
        let c = ctx(Quiver::fork(), 2);
        let k = AModule::<Gf2>::trivial(c.alg, 1);
        let z = AModule::<Gf2>::trivial(c.alg, 0);
        let x = Representation::new(&c, vec![k.clone(), k.clone(), z], vec![Matrix::identity(1), Matrix::zeros(0, 1)]).unwrap();
        let xc = Complex::concentrated(&x, 0);
        let cert = cofibrant_replacement(&xc, -4).unwrap();
        assert!(cert.ok(), "{:?}", cert.flags);
        let f = fibrant_replacement(&xc);
        assert!(f.ok(), "{:?}", f.flags);
    }

    #[test]
    fn fibrant_replacement_examples() {
        let c = ctx(Quiver::a2(), 1);
        let s1 = Complex::concentrated(&a2rep(&c, 1, 0, Matrix::zeros(0, 1)), 0);
        let f = fibrant_replacement(&s1);
        assert_eq!(f.object, s1);
        let p2 = Complex::disk(&a2rep(&c, 0, 1, Matrix::zeros(1, 0)), 0);
        let f = fibrant_replacement(&p2);
        assert!(f.ok());
        assert!(vertex_complex(&f.object, 0).is_projective_complex());
        let z = Complex::<Representation<Gf2>>::zero_complex(&c);
        assert_eq!(fibrant_replacement(&z).object, z);
    }

    #[test]
    fn homotopy_relations() {
        let c = ctx(Quiver::a2(), 1);
        let s1 = Complex::concentrated(&a2rep(&c, 1, 0, Matrix::zeros(0, 1)), 0);
        let v = homotopic_cw(&s1.identity(), &s1.zero_mor(&s1)).unwrap();
        assert!(!v.homotopic() && !v.cw_homotopic());
        let same = homotopic_cw(&s1.identity(), &s1.identity()).unwrap();
        assert!(same.homotopic() && same.cw_homotopic());
        let s2 = Complex::concentrated(&a2rep(&c, 0, 1, Matrix::zeros(1, 0)), 0);
        assert!(homotopic_cw(&s2.identity(), &s2.identity()).is_err());
    }

    #[test]
    fn homotopy_category_dims() {
        let c = ctx(Quiver::a2(), 1);
        let s1 = Complex::concentrated(&a2rep(&c, 1, 0, Matrix::zeros(0, 1)), 0);
        let s2 = Complex::concentrated(&a2rep(&c, 0, 1, Matrix::zeros(1, 0)), 0);
        assert_eq!(homotopy_category_hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(homotopy_category_hom_dim(&s1, &s2.shift(1)).unwrap(), 1);
        let ex = Complex::disk(&a2rep(&c, 1, 1, Matrix::identity(1)), 0);
        assert_eq!(homotopy_category_hom_dim(&ex, &s1).unwrap(), 0);
        for (x, y) in [(&s1, &s2), (&s2, &s1), (&s2, &s2)] {
            for sh in -1..=1 {
                let ys = y.shift(sh);
                assert_eq!(
                    homotopy_category_hom_dim(x, &ys).unwrap(),
                    derived_hom_dim(x, &ys, 0, None, CoverKind::Minimal).unwrap()
                );
            }
        }
        assert!(is_dgprj_op(&s1, Splitting::ChainLevel));
    }

    mod props {
        use super::*;
        use crate::harness::gen::{gen_reps, random_combination, random_complex};
        use crate::linalg::Gf3;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn sample(q: Quiver, n: usize, cap: usize, window: usize, rng: &mut ChaCha8Rng) -> RepComplex<Gf3> {
            let c = ctx(q, n);
            let pool = gen_reps::<Gf3>(&c, cap, Some(6), rng);
            random_complex(&c, &pool, window, -1, rng)
        }

        fn quiver(fork: bool) -> Quiver {
            if fork {
                Quiver::fork()
            } else {
                Quiver::a2()
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn replacements_certify(seed in any::<u64>(), fork in any::<bool>(), n in 1usize..=2) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let x = sample(quiver(fork), n, 2, 3, &mut rng);
                let cut = x.lo() - 5;
                let q = cofibrant_replacement(&x, cut).unwrap();
                prop_assert!(q.ok(), "{:?}", q.flags);
                for v in 0..x.ctx().quiver.vertex_count() {
                    let (a, b) = (vertex_complex(&q.object, v), vertex_complex(&x, v));
                    for i in cut + 2..=x.hi() {
                        prop_assert_eq!(a.homology_dim(i), b.homology_dim(i));
                    }
                }
                let r = fibrant_replacement(&x);
                prop_assert!(r.ok(), "{:?}", r.flags);
                prop_assert!(r.map.is_mono() && is_fibrant_cw(&r.object));
            }

            #[test]
            fn ho_dim_is_derived_hom(seed in any::<u64>(), n in 1usize..=2, s in -1i64..=1) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let x = sample(Quiver::a2(), n, 1, 2, &mut rng);
                let y = sample(Quiver::a2(), n, 1, 2, &mut rng).shift(s);
                let ho = homotopy_category_hom_dim(&x, &y).unwrap();
                prop_assert_eq!(ho, derived_hom_dim(&x, &y, 0, None, CoverKind::Minimal).unwrap());
            }

            #[test]
            fn cw_homotopy_is_homotopy(seed in any::<u64>(), fork in any::<bool>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let c = ctx(quiver(fork), 1);
                let nv = c.quiver.vertex_count();
                let pool: Vec<Representation<Gf3>> = gen_reps::<Gf3>(&c, 2, Some(30), &mut rng)
                    .into_iter()
                    .filter(|r| (0..nv).all(|v| crate::rep::eta(r, v).is_epi()))
                    .collect();
                prop_assume!(!pool.is_empty());
                let x = random_complex(&c, &pool, 3, 0, &mut rng);
                let y = random_complex(&c, &pool, 3, -1, &mut rng);
                let basis = x.hom_basis(&y);
                let zero = x.zero_mor(&y);
                let f = random_combination(&zero, &basis, &mut rng);
                let g = random_combination(&zero, &basis, &mut rng);
                let v = homotopic_cw(&f, &g).unwrap();
                prop_assert_eq!(v.homotopic(), v.cw_homotopic());
                prop_assert_eq!(v.homotopic(), v.recovered);
                prop_assert!(v.envelope_is_divide);
            }
        }
    }
}
