//! Representations of a finite acyclic quiver in finite-dimensional
//! A-modules: vertex modules, arrow maps, natural transformations, the
//! evaluation adjoints e_λ ⊣ eval ⊣ e_ρ and the maps η, ξ.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::category::{section, retraction, Blocks, CoverKind, Morphism, Object};
use crate::error::{Error, Result};
use crate::json::{get, matrix_from_json, matrix_to_json};
use crate::linalg::{Matrix, Scalar};
use crate::module::{free_map, intertwiner_basis, AModule, BaseAlgebra, ModMorphism};
use crate::quiver::{Label, Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepCtx {
    pub quiver: Arc<Quiver>,
    pub alg: BaseAlgebra,
}

impl RepCtx {
    pub fn new(quiver: Quiver, alg: BaseAlgebra) -> Self {
        RepCtx { quiver: Arc::new(quiver), alg }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<S: Scalar> {
    ctx: RepCtx,
    modules: Vec<AModule<S>>,
    maps: Vec<Matrix<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism<S: Scalar> {
    source: Representation<S>,
    target: Representation<S>,
    comps: Vec<Matrix<S>>,
}

impl<S: Scalar> Representation<S> {
    pub fn new(ctx: &RepCtx, modules: Vec<AModule<S>>, maps: Vec<Matrix<S>>) -> Result<Self> {
        let q = &ctx.quiver;
        if modules.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::Shape(format!(
                "representation needs {} modules and {} arrow maps, got {} and {}",
                q.vertex_count(),
                q.arrows().len(),
                modules.len(),
                maps.len()
            )));
        }
        for (v, m) in modules.iter().enumerate() {
            if m.alg() != ctx.alg {
                return Err(Error::BaseMismatch(format!("module at vertex {}", q.vertices()[v])));
            }
        }
        for (i, a) in q.arrows().iter().enumerate() {
            ModMorphism::new(&modules[a.s], &modules[a.t], maps[i].clone()).map_err(|e| match e {
                Error::NotMorphism(_) => Error::NotMorphism(format!("arrow `{}` is not A-linear", a.id)),
                Error::Shape(m) => Error::Shape(format!("arrow `{}`: {m}", a.id)),
                e => e,
            })?;
        }
        Ok(Representation { ctx: ctx.clone(), modules, maps })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.ctx.quiver
    }

    pub fn alg(&self) -> BaseAlgebra {
        self.ctx.alg
    }

    /// X_v.
    pub fn module(&self, v: usize) -> &AModule<S> {
        &self.modules[v]
    }

    pub fn modules(&self) -> &[AModule<S>] {
        &self.modules
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix<S> {
        &self.maps[a]
    }

    /// X(a) as a module morphism.
    pub fn arrow_map(&self, a: usize) -> ModMorphism<S> {
        let ar = &self.quiver().arrows()[a];
        ModMorphism::new_unchecked(&self.modules[ar.s], &self.modules[ar.t], self.maps[a].clone())
    }

    /// X(p) for a path p.
    pub fn path_matrix(&self, p: &Path) -> Matrix<S> {
        let mut m = Matrix::identity(self.modules[p.start].dim());
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// The evaluation functor e^v.
    pub fn eval(&self, label: &Label) -> Result<&AModule<S>> {
        Ok(&self.modules[self.quiver().vertex_index(label)?])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(Object::dim).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.to_json_bare();
        v["quiver"] = self.quiver().to_json();
        v
    }

    /// Modules and arrows only, for use inside a complex that carries its quiver.
    pub fn to_json_bare(&self) -> Value {
        let q = self.quiver();
        let modules: Map<String, Value> =
            q.vertices().iter().zip(&self.modules).map(|(l, m)| (l.key(), m.to_json())).collect();
        let arrows: Map<String, Value> =
            q.arrows().iter().zip(&self.maps).map(|(a, m)| (a.id.key(), matrix_to_json(m))).collect();
        json!({"modules": modules, "arrows": arrows})
    }

    pub fn from_json(v: &Value, alg: BaseAlgebra, path: &str) -> Result<Self> {
        let q = Quiver::from_json(get(v, "quiver", path)?)?;
        Self::from_json_in(v, &RepCtx::new(q, alg), path)
    }

    /// Parses `{"modules": {v: module}, "arrows": {a: matrix}}` over a known
    /// quiver. Missing vertices are zero modules and missing arrows zero maps.
    pub fn from_json_in(v: &Value, ctx: &RepCtx, path: &str) -> Result<Self> {
        let q = &ctx.quiver;
        let mut modules = vec![AModule::zero(&ctx.alg); q.vertex_count()];
        if let Some(ms) = v.get("modules") {
            let ms = ms.as_object().ok_or_else(|| Error::schema(format!("{path}.modules"), "expected an object"))?;
            for (key, m) in ms {
                let idx = q.vertex_index(&Label::from_key(key))?;
                modules[idx] = AModule::from_json(m, ctx.alg, &format!("{path}.modules.{key}"))?;
            }
        }
        let mut maps: Vec<Matrix<S>> =
            q.arrows().iter().map(|a| Matrix::zeros(modules[a.t].dim(), modules[a.s].dim())).collect();
        if let Some(arr) = v.get("arrows") {
            let arr = arr.as_object().ok_or_else(|| Error::schema(format!("{path}.arrows"), "expected an object"))?;
            for (key, m) in arr {
                let idx = q.arrow_index(&Label::from_key(key))?;
                let a = &q.arrows()[idx];
                maps[idx] =
                    matrix_from_json(m, modules[a.t].dim(), modules[a.s].dim(), &format!("{path}.arrows.{key}"))?;
            }
        }
        Representation::new(ctx, modules, maps).map_err(|e| match e {
            Error::NotMorphism(m) => Error::schema(format!("{path}.arrows"), m),
            e => e,
        })
    }
}

impl<S: Scalar> RepMorphism<S> {
    pub fn new(source: &Representation<S>, target: &Representation<S>, comps: Vec<Matrix<S>>) -> Result<Self> {
        if source.ctx != target.ctx {
            return Err(Error::BaseMismatch("representations over different quivers or algebras".into()));
        }
        let q = source.quiver();
        if comps.len() != q.vertex_count() {
            return Err(Error::Shape(format!("expected {} vertex components", q.vertex_count())));
        }
        for (v, c) in comps.iter().enumerate() {
            ModMorphism::new(&source.modules[v], &target.modules[v], c.clone())
                .map_err(|e| Error::NotMorphism(format!("vertex {}: {e}", q.vertices()[v])))?;
        }
        for (i, a) in q.arrows().iter().enumerate() {
            if target.maps[i].mul(&comps[a.s]) != comps[a.t].mul(&source.maps[i]) {
                return Err(Error::NotMorphism(format!("square at arrow `{}` does not commute", a.id)));
            }
        }
        Ok(RepMorphism { source: source.clone(), target: target.clone(), comps })
    }

    pub(crate) fn new_unchecked(source: &Representation<S>, target: &Representation<S>, comps: Vec<Matrix<S>>) -> Self {
        debug_assert!(RepMorphism::new(source, target, comps.clone()).is_ok(), "not a representation morphism");
        RepMorphism { source: source.clone(), target: target.clone(), comps }
    }

    /// φ_v.
    pub fn comp(&self, v: usize) -> ModMorphism<S> {
        ModMorphism::new_unchecked(&self.source.modules[v], &self.target.modules[v], self.comps[v].clone())
    }

    pub fn comp_matrix(&self, v: usize) -> &Matrix<S> {
        &self.comps[v]
    }

    pub fn to_json(&self) -> Value {
        let q = self.source.quiver();
        let m: Map<String, Value> = q.vertices().iter().zip(&self.comps).map(|(l, c)| (l.key(), matrix_to_json(c))).collect();
        Value::Object(m)
    }

    pub fn from_json(v: &Value, source: &Representation<S>, target: &Representation<S>, path: &str) -> Result<Self> {
        let q = source.quiver();
        let obj = v.as_object().ok_or_else(|| Error::schema(path, "expected an object keyed by vertex"))?;
        let mut comps: Vec<Matrix<S>> =
            (0..q.vertex_count()).map(|i| Matrix::zeros(target.modules[i].dim(), source.modules[i].dim())).collect();
        for (key, m) in obj {
            let i = q.vertex_index(&Label::from_key(key))?;
            comps[i] = matrix_from_json(m, target.modules[i].dim(), source.modules[i].dim(), &format!("{path}.{key}"))?;
        }
        RepMorphism::new(source, target, comps).map_err(|e| Error::schema(path, e.to_string()))
    }
}

impl<S: Scalar> Object for Representation<S> {
    type S = S;
    type Ctx = RepCtx;
    type Mor = RepMorphism<S>;

    fn ctx(&self) -> RepCtx {
        self.ctx.clone()
    }

    fn zero(ctx: &RepCtx) -> Self {
        let q = &ctx.quiver;
        Representation {
            ctx: ctx.clone(),
            modules: vec![AModule::zero(&ctx.alg); q.vertex_count()],
            maps: vec![Matrix::zeros(0, 0); q.arrows().len()],
        }
    }

    fn dim(&self) -> usize {
        self.modules.iter().map(Object::dim).sum()
    }

    fn direct_sum(ctx: &RepCtx, parts: &[Self]) -> Self {
        let q = &ctx.quiver;
        let modules = (0..q.vertex_count())
            .map(|v| AModule::direct_sum(&ctx.alg, &parts.iter().map(|p| p.modules[v].clone()).collect::<Vec<_>>()))
            .collect();
        let maps = (0..q.arrows().len())
            .map(|a| Matrix::block_diag(&parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
            .collect();
        Representation { ctx: ctx.clone(), modules, maps }
    }

    fn identity(&self) -> RepMorphism<S> {
        let comps = self.modules.iter().map(|m| Matrix::identity(m.dim())).collect();
        RepMorphism { source: self.clone(), target: self.clone(), comps }
    }

    fn zero_mor(&self, target: &Self) -> RepMorphism<S> {
        let comps = self.modules.iter().zip(&target.modules).map(|(s, t)| Matrix::zeros(t.dim(), s.dim())).collect();
        RepMorphism { source: self.clone(), target: target.clone(), comps }
    }

    /// Solves the commuting-square system over ⊕_v Hom_A(X_v, Y_v).
    fn hom_basis(&self, target: &Self) -> Vec<RepMorphism<S>> {
        assert_eq!(self.ctx, target.ctx, "hom between representations in different categories");
        let q = self.quiver();
        let vb: Vec<Vec<Matrix<S>>> =
            (0..q.vertex_count()).map(|v| intertwiner_basis(self.modules[v].op(), target.modules[v].op())).collect();
        let mut offset = vec![0usize; q.vertex_count() + 1];
        for v in 0..q.vertex_count() {
            offset[v + 1] = offset[v] + vb[v].len();
        }
        let unknowns = offset[q.vertex_count()];
        if unknowns == 0 {
            return Vec::new();
        }
        let rows: usize = q.arrows().iter().map(|a| target.modules[a.t].dim() * self.modules[a.s].dim()).sum();
        let mut sys = Matrix::<S>::zeros(rows, unknowns);
        let mut r0 = 0;
        for (i, a) in q.arrows().iter().enumerate() {
            let h = target.modules[a.t].dim() * self.modules[a.s].dim();
            for (j, b) in vb[a.s].iter().enumerate() {
                let m = target.maps[i].mul(b);
                for (k, x) in m.data().iter().enumerate() {
                    let cur = sys.get(r0 + k, offset[a.s] + j).clone();
                    sys.set(r0 + k, offset[a.s] + j, cur + x.clone());
                }
            }
            for (j, b) in vb[a.t].iter().enumerate() {
                let m = b.mul(&self.maps[i]);
                for (k, x) in m.data().iter().enumerate() {
                    let cur = sys.get(r0 + k, offset[a.t] + j).clone();
                    sys.set(r0 + k, offset[a.t] + j, cur - x.clone());
                }
            }
            r0 += h;
        }
        let ker = sys.kernel_basis();
        (0..ker.cols())
            .map(|c| {
                let coeffs = ker.column(c);
                let comps = (0..q.vertex_count())
                    .map(|v| {
                        let mut m = Matrix::zeros(target.modules[v].dim(), self.modules[v].dim());
                        for (j, b) in vb[v].iter().enumerate() {
                            let x = &coeffs[offset[v] + j];
                            if !x.is_zero() {
                                m = m.add(&b.scale(x));
                            }
                        }
                        m
                    })
                    .collect();
                RepMorphism { source: self.clone(), target: target.clone(), comps }
            })
            .collect()
    }

    /// Projective iff the minimal projective cover is an isomorphism.
    fn is_projective(&self) -> bool {
        self.projective_cover(CoverKind::Minimal).source().dim() == self.dim()
    }

    /// Minimal: generators of the top X_v / (N X_v + Σ_{t(a)=v} im X(a)) at
    /// each vertex. Redundant: a module cover of every X_v, pushed through
    /// e^v_λ regardless of incoming arrows.
    fn projective_cover(&self, kind: CoverKind) -> RepMorphism<S> {
        let q = self.quiver();
        let parts: Vec<RepMorphism<S>> = (0..q.vertex_count())
            .map(|v| {
                let xv = &self.modules[v];
                let g = match kind {
                    CoverKind::Minimal => {
                        let mut blocks: Vec<&Matrix<S>> = vec![xv.op()];
                        let incoming = q.in_arrows(v);
                        blocks.extend(incoming.iter().map(|&a| &self.maps[a]));
                        let span = Matrix::hstack(xv.dim(), &blocks);
                        let gens: Vec<Vec<S>> = span
                            .cokernel_projection()
                            .echelon()
                            .pivots
                            .iter()
                            .map(|&p| (0..xv.dim()).map(|i| if i == p { S::one() } else { S::zero() }).collect())
                            .collect();
                        free_map(xv, &gens)
                    }
                    CoverKind::Redundant => xv.projective_cover(CoverKind::Minimal),
                };
                lambda_transpose(self, v, &g)
            })
            .collect();
        Representation::row(self, &parts)
    }
}

impl<S: Scalar> Morphism for RepMorphism<S> {
    type S = S;
    type Obj = Representation<S>;

    fn source(&self) -> &Representation<S> {
        &self.source
    }

    fn target(&self) -> &Representation<S> {
        &self.target
    }

    fn compose(&self, rhs: &Self) -> Self {
        debug_assert_eq!(rhs.target, self.source, "composition of non-composable representation maps");
        let comps = self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.mul(b)).collect();
        RepMorphism { source: rhs.source.clone(), target: self.target.clone(), comps }
    }

    fn add(&self, rhs: &Self) -> Self {
        let comps = self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.add(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    fn scale(&self, c: &S) -> Self {
        let comps = self.comps.iter().map(|a| a.scale(c)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    fn coords(&self) -> Vec<S> {
        self.comps.iter().flat_map(|c| c.data().iter().cloned()).collect()
    }

    fn rank(&self) -> usize {
        self.comps.iter().map(Matrix::rank).sum()
    }

    fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    fn kernel(&self) -> Self {
        let q = self.source.quiver();
        let ks: Vec<ModMorphism<S>> = (0..q.vertex_count()).map(|v| self.comp(v).kernel()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let rhs = self.source.maps[i].mul(ks[a.s].mat());
                ks[a.t].mat().solve(&rhs).expect("shapes").expect("kernel is a subrepresentation").particular
            })
            .collect();
        let modules = ks.iter().map(|k| k.source().clone()).collect();
        let krep = Representation { ctx: self.source.ctx.clone(), modules, maps };
        let comps = ks.iter().map(|k| k.mat().clone()).collect();
        RepMorphism { source: krep, target: self.source.clone(), comps }
    }

    fn cokernel(&self) -> Self {
        let q = self.source.quiver();
        let cs: Vec<ModMorphism<S>> = (0..q.vertex_count()).map(|v| self.comp(v).cokernel()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let rhs = cs[a.t].mat().mul(&self.target.maps[i]);
                cs[a.s]
                    .mat()
                    .transpose()
                    .solve(&rhs.transpose())
                    .expect("shapes")
                    .expect("image is a subrepresentation")
                    .particular
                    .transpose()
            })
            .collect();
        let modules = cs.iter().map(|c| c.target().clone()).collect();
        let crep = Representation { ctx: self.source.ctx.clone(), modules, maps };
        let comps = cs.iter().map(|c| c.mat().clone()).collect();
        RepMorphism { source: self.target.clone(), target: crep, comps }
    }

    fn factor_through_mono(&self, mono: &Self) -> Option<Self> {
        let comps = self
            .comps
            .iter()
            .zip(&mono.comps)
            .map(|(f, m)| m.solve(f).ok().flatten().map(|s| s.particular))
            .collect::<Option<Vec<_>>>()?;
        Some(RepMorphism { source: self.source.clone(), target: mono.source.clone(), comps })
    }

    fn factor_through_epi(&self, epi: &Self) -> Option<Self> {
        let comps = self
            .comps
            .iter()
            .zip(&epi.comps)
            .map(|(f, e)| e.transpose().solve(&f.transpose()).ok().flatten().map(|s| s.particular.transpose()))
            .collect::<Option<Vec<_>>>()?;
        Some(RepMorphism { source: epi.target.clone(), target: self.target.clone(), comps })
    }
}

impl<S: Scalar> Blocks for Representation<S> {
    fn block_morphism(
        ctx: &RepCtx,
        sources: &[Self],
        targets: &[Self],
        block: &dyn Fn(usize, usize) -> Option<RepMorphism<S>>,
    ) -> RepMorphism<S> {
        let source = Self::direct_sum(ctx, sources);
        let target = Self::direct_sum(ctx, targets);
        let mut comps: Vec<Matrix<S>> =
            source.modules.iter().zip(&target.modules).map(|(s, t)| Matrix::zeros(t.dim(), s.dim())).collect();
        let nv = ctx.quiver.vertex_count();
        let mut r0 = vec![0usize; nv];
        for (r, t) in targets.iter().enumerate() {
            let mut c0 = vec![0usize; nv];
            for (c, s) in sources.iter().enumerate() {
                if let Some(b) = block(r, c) {
                    for v in 0..nv {
                        comps[v].paste(r0[v], c0[v], &b.comps[v]);
                    }
                }
                for v in 0..nv {
                    c0[v] += s.modules[v].dim();
                }
            }
            for v in 0..nv {
                r0[v] += t.modules[v].dim();
            }
        }
        RepMorphism { source, target, comps }
    }
}

/// e^v_λ(M): ⊕_{Q(v,w)} M at w; arrow a sends summand p to summand a·p.
pub fn e_lambda<S: Scalar>(ctx: &RepCtx, v: usize, m: &AModule<S>) -> Representation<S> {
    let q = &ctx.quiver;
    let modules: Vec<AModule<S>> = (0..q.vertex_count())
        .map(|w| AModule::direct_sum(&ctx.alg, &vec![m.clone(); q.paths(v, w).len()]))
        .collect();
    let d = m.dim();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let mut mat = Matrix::zeros(modules[a.t].dim(), modules[a.s].dim());
            for (i, p) in q.paths(v, a.s).iter().enumerate() {
                let j = q.path_position(&q.extend_path(p, q.arrow_index(&a.id).expect("own arrow")));
                mat.paste(j * d, i * d, &Matrix::identity(d));
            }
            mat
        })
        .collect();
    Representation { ctx: ctx.clone(), modules, maps }
}

/// e^v_ρ(M): ⊕_{Q(w,v)} M at w; for a: w₁ → w₂ the component q ∈ Q(w₂,v)
/// of the image is the component q·a of the argument.
pub fn e_rho<S: Scalar>(ctx: &RepCtx, v: usize, m: &AModule<S>) -> Representation<S> {
    let q = &ctx.quiver;
    let modules: Vec<AModule<S>> = (0..q.vertex_count())
        .map(|w| AModule::direct_sum(&ctx.alg, &vec![m.clone(); q.paths(w, v).len()]))
        .collect();
    let d = m.dim();
    let maps = (0..q.arrows().len())
        .map(|ai| {
            let a = &q.arrows()[ai];
            let mut mat = Matrix::zeros(modules[a.t].dim(), modules[a.s].dim());
            for (i, qp) in q.paths(a.t, v).iter().enumerate() {
                let j = q.path_position(&q.prepend_arrow(ai, qp));
                mat.paste(i * d, j * d, &Matrix::identity(d));
            }
            mat
        })
        .collect();
    Representation { ctx: ctx.clone(), modules, maps }
}

/// The morphism e^v_λ(M) → X adjoint to `g: M → X_v`; on the summand p ∈
/// Q(v,w) it is X(p)∘g.
pub fn lambda_transpose<S: Scalar>(x: &Representation<S>, v: usize, g: &ModMorphism<S>) -> RepMorphism<S> {
    let ctx = &x.ctx;
    let q = &ctx.quiver;
    let src = e_lambda(ctx, v, g.source());
    let comps = (0..q.vertex_count())
        .map(|w| {
            let blocks: Vec<Matrix<S>> = q.paths(v, w).iter().map(|p| x.path_matrix(p).mul(g.mat())).collect();
            Matrix::hstack(x.modules[w].dim(), &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    RepMorphism::new_unchecked(&src, x, comps)
}

/// The morphism X → e^v_ρ(M) adjoint to `g: X_v → M`; the component q ∈
/// Q(w,v) at w is g∘X(q).
pub fn rho_transpose<S: Scalar>(x: &Representation<S>, v: usize, g: &ModMorphism<S>) -> RepMorphism<S> {
    let ctx = &x.ctx;
    let q = &ctx.quiver;
    let tgt = e_rho(ctx, v, g.target());
    let comps = (0..q.vertex_count())
        .map(|w| {
            let blocks: Vec<Matrix<S>> = q.paths(w, v).iter().map(|p| g.mat().mul(&x.path_matrix(p))).collect();
            Matrix::vstack(x.modules[w].dim(), &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    RepMorphism::new_unchecked(x, &tgt, comps)
}

/// ⊕_{s(a)=v} X_{t(a)}, summands in arrow-id order.
pub fn eta_target<S: Scalar>(x: &Representation<S>, v: usize) -> AModule<S> {
    let q = x.quiver();
    let parts: Vec<AModule<S>> = q.out_arrows(v).iter().map(|&a| x.modules[q.arrows()[a].t].clone()).collect();
    AModule::direct_sum(&x.ctx.alg, &parts)
}

/// ⊕_{t(a)=v} X_{s(a)}, summands in arrow-id order.
pub fn xi_source<S: Scalar>(x: &Representation<S>, v: usize) -> AModule<S> {
    let q = x.quiver();
    let parts: Vec<AModule<S>> = q.in_arrows(v).iter().map(|&a| x.modules[q.arrows()[a].s].clone()).collect();
    AModule::direct_sum(&x.ctx.alg, &parts)
}

/// η_{X,v}: X_v → ⊕_{s(a)=v} X_{t(a)}; the component at arrow a is X(a).
pub fn eta<S: Scalar>(x: &Representation<S>, v: usize) -> ModMorphism<S> {
    let out = x.quiver().out_arrows(v);
    let blocks: Vec<&Matrix<S>> = out.iter().map(|&a| &x.maps[a]).collect();
    let mat = Matrix::vstack(x.modules[v].dim(), &blocks);
    ModMorphism::new_unchecked(&x.modules[v], &eta_target(x, v), mat)
}

/// ξ_{X,v}: ⊕_{t(a)=v} X_{s(a)} → X_v; the component at arrow a is X(a).
pub fn xi<S: Scalar>(x: &Representation<S>, v: usize) -> ModMorphism<S> {
    let inc = x.quiver().in_arrows(v);
    let blocks: Vec<&Matrix<S>> = inc.iter().map(|&a| &x.maps[a]).collect();
    let mat = Matrix::hstack(x.modules[v].dim(), &blocks);
    ModMorphism::new_unchecked(&xi_source(x, v), &x.modules[v], mat)
}

/// Membership in (Q, F): every vertex module satisfies `pred`.
pub fn in_class<S: Scalar>(x: &Representation<S>, pred: impl Fn(&AModule<S>) -> bool) -> bool {
    x.modules.iter().all(pred)
}

/// Vertexwise projective with split-epi η at every vertex.
pub fn is_prj_op<S: Scalar>(x: &Representation<S>) -> bool {
    (0..x.quiver().vertex_count()).all(|v| x.modules[v].is_projective() && section(&eta(x, v)).is_some())
}

/// Vertexwise injective with split-mono ξ at every vertex.
pub fn is_inj_op<S: Scalar>(x: &Representation<S>) -> bool {
    (0..x.quiver().vertex_count()).all(|v| x.modules[v].is_injective() && retraction(&xi(x, v)).is_some())
}

/// The cover ⊕_v e^v_λ(P_v) with P_v a cover of X_v, without minimizing.
pub fn projective_epi_rep<S: Scalar>(x: &Representation<S>) -> RepMorphism<S> {
    x.projective_cover(CoverKind::Redundant)
}

fn require_field(ctx: &RepCtx) -> Result<()> {
    if ctx.alg.is_field() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "componentwise tensor is only defined over a field base (nil index 1, got {})",
            ctx.alg.nil
        )))
    }
}

/// (X ⊗_cw Y)_v = X_v ⊗ Y_v with arrow maps X(a) ⊗ Y(a).
pub fn tensor_cw<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<Representation<S>> {
    require_field(&x.ctx)?;
    if x.ctx != y.ctx {
        return Err(Error::BaseMismatch("tensor of representations of different quivers".into()));
    }
    let modules = x.modules.iter().zip(&y.modules).map(|(a, b)| AModule::trivial(x.ctx.alg, a.dim() * b.dim())).collect();
    let maps = x.maps.iter().zip(&y.maps).map(|(a, b)| a.kron(b)).collect();
    Ok(Representation { ctx: x.ctx.clone(), modules, maps })
}

/// The unit S: k at every vertex, identity arrows.
pub fn unit_rep<S: Scalar>(ctx: &RepCtx) -> Result<Representation<S>> {
    require_field(ctx)?;
    let q = &ctx.quiver;
    Ok(Representation {
        ctx: ctx.clone(),
        modules: vec![AModule::trivial(ctx.alg, 1); q.vertex_count()],
        maps: vec![Matrix::identity(1); q.arrows().len()],
    })
}

/// Per-vertex dimension table keyed by vertex label.
pub fn dims_json<S: Scalar>(x: &Representation<S>) -> Value {
    let m: BTreeMap<String, usize> = x.quiver().vertices().iter().zip(x.dims()).map(|(l, d)| (l.key(), d)).collect();
    json!(m)
}
