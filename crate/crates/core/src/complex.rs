//! Bounded cochain complexes over any [`Object`] category, with chain maps,
//! homology, Hom complexes and the homotopy relation. Differentials raise
//! degree: d^i: X^i → X^{i+1}.
//!
//! A complex is itself an [`Object`] (morphisms are chain maps), so the same
//! resolution and Ext code runs in C(𝔄).

use serde_json::{json, Value};

use crate::category::{coord_matrix, Blocks, CoverKind, Morphism, Object};
use crate::error::{Error, Result};
use crate::json::{get, get_i64, matrix_from_json, matrix_to_json};
use crate::module::{AModule, BaseAlgebra, ModMorphism};
use crate::rep::{RepCtx, RepMorphism, Representation};
use crate::linalg::{Matrix, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Complex<O: Object> {
    ctx: O::Ctx,
    lo: i64,
    terms: Vec<O>,
    // diffs[j]: terms[j] → terms[j + 1]
    diffs: Vec<O::Mor>,
}

/// Components f^i for every degree of the union of the two windows.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<O: Object> {
    source: Complex<O>,
    target: Complex<O>,
    lo: i64,
    comps: Vec<O::Mor>,
}

fn sign<S: Scalar>(n: i64) -> S {
    if n.rem_euclid(2) == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Smallest window containing both; `None` when both are empty.
fn union_window(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (None, None) => None,
        (Some(w), None) | (None, Some(w)) => Some(w),
        (Some((l1, h1)), Some((l2, h2))) => Some((l1.min(l2), h1.max(h2))),
    }
}

impl<O: Object> Complex<O> {
    /// Terms in degrees lo, lo+1, ...; `diffs[j]` goes from degree lo+j to
    /// lo+j+1. Checks composability and d² = 0, then trims zero end terms.
    pub fn new(ctx: &O::Ctx, lo: i64, terms: Vec<O>, diffs: Vec<O::Mor>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::Shape(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for (j, d) in diffs.iter().enumerate() {
            if d.source() != &terms[j] || d.target() != &terms[j + 1] {
                return Err(Error::Shape(format!("differential at degree {} has the wrong source or target", lo + j as i64)));
            }
        }
        for j in 1..diffs.len() {
            if !diffs[j].compose(&diffs[j - 1]).is_zero() {
                return Err(Error::NotComplex(lo + j as i64 - 1));
            }
        }
        Ok(Self::new_unchecked(ctx, lo, terms, diffs))
    }

    pub(crate) fn new_unchecked(ctx: &O::Ctx, lo: i64, mut terms: Vec<O>, mut diffs: Vec<O::Mor>) -> Self {
        let mut lo = lo;
        while terms.last().is_some_and(Object::is_zero) {
            terms.pop();
            diffs.pop();
        }
        let lead = terms.iter().take_while(|t| t.is_zero()).count();
        if lead > 0 {
            terms.drain(..lead);
            diffs.drain(..lead.min(diffs.len()));
            lo += lead as i64;
        }
        if terms.is_empty() {
            lo = 0;
            diffs.clear();
        }
        Complex { ctx: ctx.clone(), lo, terms, diffs }
    }

    /// Builds over [lo, hi] from closures; `d(i)` must go from term(i) to term(i+1).
    pub fn from_fn(ctx: &O::Ctx, lo: i64, hi: i64, term: impl Fn(i64) -> O, d: impl Fn(i64) -> O::Mor) -> Self {
        let terms: Vec<O> = (lo..=hi).map(term).collect();
        let diffs = (lo..hi).map(d).collect();
        Self::new_unchecked(ctx, lo, terms, diffs)
    }

    pub fn zero_complex(ctx: &O::Ctx) -> Self {
        Complex { ctx: ctx.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// M in degree `i`.
    pub fn concentrated(m: &O, i: i64) -> Self {
        Self::new_unchecked(&m.ctx(), i, vec![m.clone()], Vec::new())
    }

    /// The disk M̄[i]: M in degrees i−1 and i joined by the identity.
    pub fn disk(m: &O, i: i64) -> Self {
        Self::new_unchecked(&m.ctx(), i - 1, vec![m.clone(), m.clone()], vec![m.identity()])
    }

    pub fn ctx_ref(&self) -> &O::Ctx {
        &self.ctx
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo − 1` for the zero complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        (!self.is_empty()).then(|| (self.lo, self.hi()))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn term_ref(&self, i: i64) -> Option<&O> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.terms[(i - self.lo) as usize])
        }
    }

    /// X^i (zero outside the window).
    pub fn term(&self, i: i64) -> O {
        self.term_ref(i).cloned().unwrap_or_else(|| O::zero(&self.ctx))
    }

    pub fn terms(&self) -> &[O] {
        &self.terms
    }

    /// d^i: X^i → X^{i+1}.
    pub fn d(&self, i: i64) -> O::Mor {
        if i >= self.lo && i < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            self.term(i).zero_mor(&self.term(i + 1))
        }
    }

    /// X[n]^i = X^{i+n}, with differential (−1)^n d.
    pub fn shift(&self, n: i64) -> Self {
        let s = sign::<O::S>(n);
        let diffs = self.diffs.iter().map(|d| d.scale(&s)).collect();
        Complex { ctx: self.ctx.clone(), lo: if self.is_empty() { 0 } else { self.lo - n }, terms: self.terms.clone(), diffs }
    }

    /// Z^i = ker d^i with its inclusion.
    pub fn cycles(&self, i: i64) -> O::Mor {
        self.d(i).kernel()
    }

    /// H^i = Z^i / im d^{i−1}.
    pub fn homology(&self, i: i64) -> O {
        let z = self.cycles(i);
        let b = self.d(i - 1).factor_through_mono(&z).expect("d² = 0");
        b.cokernel().target().clone()
    }

    pub fn homology_dim(&self, i: i64) -> usize {
        self.term(i).dim() - self.d(i).rank() - self.d(i - 1).rank()
    }

    pub fn is_exact_at(&self, i: i64) -> bool {
        self.homology_dim(i) == 0
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().all(|i| self.is_exact_at(i))
    }

    /// Termwise membership in a class: C(F).
    pub fn in_c_of(&self, pred: impl Fn(&O) -> bool) -> bool {
        self.terms.iter().all(pred)
    }

    /// ex(F) = C(F) ∩ exact.
    pub fn in_ex(&self, pred: impl Fn(&O) -> bool) -> bool {
        self.in_c_of(pred) && self.is_exact()
    }

    /// F̃: exact with every cycle object in F. Cycles outside the window are
    /// zero, so the check is exact for bounded complexes.
    pub fn in_tilde(&self, pred: impl Fn(&O) -> bool) -> bool {
        self.is_exact() && self.degrees().all(|i| pred(self.cycles(i).source()))
    }

    /// Projective objects of C(𝔄): exact with projective cycles, equivalently a
    /// sum of disks on projectives.
    pub fn is_projective_complex(&self) -> bool {
        self.in_tilde(O::is_projective)
    }

    /// Termwise projective; complete for bounded complexes, which are bounded above.
    pub fn is_dg_projective_bounded(&self) -> bool {
        self.in_c_of(O::is_projective)
    }

    /// Per-degree homology dimensions over the window.
    pub fn homology_table(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|i| (i, self.homology_dim(i))).collect()
    }

    /// Applies a functor termwise given its action on objects and morphisms.
    pub fn map<P: Object>(&self, ctx: &P::Ctx, obj: impl Fn(&O) -> P, mor: impl Fn(&O::Mor) -> P::Mor) -> Complex<P> {
        Complex::new_unchecked(ctx, self.lo, self.terms.iter().map(obj).collect(), self.diffs.iter().map(mor).collect())
    }
}

impl<O: Object> ChainMap<O> {
    /// Components over the union window, `f(i)`: X^i → Y^i.
    pub fn from_fn(source: &Complex<O>, target: &Complex<O>, f: impl Fn(i64) -> O::Mor) -> Self {
        let (lo, comps) = match union_window(source.window(), target.window()) {
            None => (0, Vec::new()),
            Some((lo, hi)) => (lo, (lo..=hi).map(f).collect()),
        };
        ChainMap { source: source.clone(), target: target.clone(), lo, comps }
    }

    /// Checked construction from components indexed by degree.
    pub fn new(source: &Complex<O>, target: &Complex<O>, f: impl Fn(i64) -> O::Mor) -> Result<Self> {
        let m = Self::from_fn(source, target, f);
        for (k, c) in m.comps.iter().enumerate() {
            let i = m.lo + k as i64;
            if c.source() != &source.term(i) || c.target() != &target.term(i) {
                return Err(Error::Shape(format!("chain map component at degree {i} has the wrong source or target")));
            }
        }
        if let Some(i) = m.chain_defect() {
            return Err(Error::NotChainMap(i));
        }
        Ok(m)
    }

    /// First degree where f^{i+1} d_X^i ≠ d_Y^i f^i.
    pub fn chain_defect(&self) -> Option<i64> {
        let (lo, hi) = (self.lo, self.lo + self.comps.len() as i64 - 1);
        (lo - 1..=hi).find(|&i| !self.comp(i + 1).compose(&self.source.d(i)).sub(&self.target.d(i).compose(&self.comp(i))).is_zero())
    }

    /// f^i.
    pub fn comp(&self, i: i64) -> O::Mor {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            self.source.term(i).zero_mor(&self.target.term(i))
        }
    }

    pub fn identity_of(x: &Complex<O>) -> Self {
        Self::from_fn(x, x, |i| x.term(i).identity())
    }

    pub fn zero_between(x: &Complex<O>, y: &Complex<O>) -> Self {
        Self::from_fn(x, y, |i| x.term(i).zero_mor(&y.term(i)))
    }

    /// Induced map on H^i as a morphism of homology objects.
    pub fn homology_rank(&self, i: i64) -> usize {
        // rank of H^i(f) = dim of image of Z^i(X) in H^i(Y)
        let zx = self.source.cycles(i);
        let zy = self.target.cycles(i);
        let fz = self.comp(i).compose(&zx).factor_through_mono(&zy).expect("chain maps preserve cycles");
        let by = self.target.d(i - 1).factor_through_mono(&zy).expect("d² = 0");
        let q = by.cokernel();
        q.compose(&fz).rank()
    }
}

impl<O: Blocks> Complex<O> {
    /// cone(f)^i = X^{i+1} ⊕ Y^i with d = [[−d_X, 0], [f, d_Y]].
    pub fn cone(f: &ChainMap<O>) -> Self {
        let (x, y) = (&f.source, &f.target);
        let ctx = x.ctx.clone();
        let window = union_window(x.window().map(|(l, h)| (l - 1, h - 1)), y.window());
        let Some((lo, hi)) = window else { return Self::zero_complex(&ctx) };
        let term = |i: i64| O::direct_sum(&ctx, &[x.term(i + 1), y.term(i)]);
        let d = |i: i64| {
            let srcs = [x.term(i + 1), y.term(i)];
            let tgts = [x.term(i + 2), y.term(i + 1)];
            O::block_morphism(&ctx, &srcs, &tgts, &|r, c| match (r, c) {
                (0, 0) => Some(x.d(i + 1).neg()),
                (1, 0) => Some(f.comp(i + 1)),
                (1, 1) => Some(y.d(i)),
                _ => None,
            })
        };
        Self::from_fn(&ctx, lo, hi, term, d)
    }

    /// Termwise direct sum.
    pub fn sum(ctx: &O::Ctx, parts: &[Self]) -> Self {
        let w = parts.iter().fold(None, |acc, p| union_window(acc, p.window()));
        let Some((lo, hi)) = w else { return Self::zero_complex(ctx) };
        Self::from_fn(
            ctx,
            lo,
            hi,
            |i| O::direct_sum(ctx, &parts.iter().map(|p| p.term(i)).collect::<Vec<_>>()),
            |i| O::diagonal(&parts.iter().map(|p| p.d(i)).collect::<Vec<_>>(), ctx),
        )
    }
}

/// f is a quasi-isomorphism iff its cone is exact.
pub fn is_quasi_iso<O: Blocks>(f: &ChainMap<O>) -> bool {
    Complex::cone(f).is_exact()
}

/// Is f a quasi-isomorphism in degrees ≥ `from`? Uses the long exact sequence:
/// H^i(f) is iso for i ≥ from iff the cone is exact in degrees ≥ from − 1.
pub fn is_quasi_iso_above<O: Blocks>(f: &ChainMap<O>, from: i64) -> bool {
    let c = Complex::cone(f);
    c.degrees().filter(|&i| i >= from - 1).all(|i| c.is_exact_at(i))
}

/// The Hom complex: degree n is ∏_i Hom(X^i, Y^{i+n}) with
/// (Df)^i = d_Y f^i − (−1)^n f^{i+1} d_X.
pub struct HomComplex<O: Object> {
    x: Complex<O>,
    y: Complex<O>,
}

/// An element of Hom^n, components f^i: X^i → Y^{i+n} over X's window.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<O: Object> {
    pub degree: i64,
    pub lo: i64,
    pub comps: Vec<O::Mor>,
}

impl<O: Object> GradedMap<O> {
    pub fn comp(&self, i: i64) -> Option<&O::Mor> {
        let k = i - self.lo;
        (k >= 0 && (k as usize) < self.comps.len()).then(|| &self.comps[k as usize])
    }
}

impl<O: Object> HomComplex<O> {
    pub fn new(x: &Complex<O>, y: &Complex<O>) -> Self {
        HomComplex { x: x.clone(), y: y.clone() }
    }

    /// Degrees where Hom^n can be nonzero.
    pub fn degree_range(&self) -> std::ops::RangeInclusive<i64> {
        if self.x.is_empty() || self.y.is_empty() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        (self.y.lo() - self.x.hi())..=(self.y.hi() - self.x.lo())
    }

    /// (i, size of the ambient coordinate block of Hom(X^i, Y^{i+n})).
    fn layout(&self, n: i64) -> (Vec<usize>, usize) {
        let mut offs = Vec::new();
        let mut total = 0;
        for i in self.x.degrees() {
            offs.push(total);
            total += ambient(&self.x.term(i), &self.y.term(i + n));
        }
        (offs, total)
    }

    /// Basis of Hom^n as (i, b) with b: X^i → Y^{i+n}.
    pub fn basis(&self, n: i64) -> Vec<(i64, O::Mor)> {
        let mut out = Vec::new();
        for i in self.x.degrees() {
            if let Some(t) = self.y.term_ref(i + n) {
                for b in self.x.term(i).hom_basis(t) {
                    out.push((i, b));
                }
            }
        }
        out
    }

    pub fn dim(&self, n: i64) -> usize {
        self.basis(n).len()
    }

    /// Ambient coordinates of D^n applied to the basis element b at degree i.
    fn d_coords(&self, n: i64, i: i64, b: &O::Mor, layout: &(Vec<usize>, usize)) -> Vec<O::S> {
        let mut v = vec![O::S::zero(); layout.1];
        let x_lo = self.x.lo();
        // component at i: d_Y^{i+n} ∘ b
        if i >= x_lo && i <= self.x.hi() {
            let c = self.y.d(i + n).compose(b).coords();
            let o = layout.0[(i - x_lo) as usize];
            v[o..o + c.len()].clone_from_slice(&c);
        }
        // component at i−1: −(−1)^n b ∘ d_X^{i−1}
        if i - 1 >= x_lo && i - 1 <= self.x.hi() {
            let s: O::S = -sign::<O::S>(n);
            let c = b.compose(&self.x.d(i - 1)).scale(&s).coords();
            let o = layout.0[(i - 1 - x_lo) as usize];
            for (k, e) in c.into_iter().enumerate() {
                v[o + k] = v[o + k].clone() + e;
            }
        }
        v
    }

    /// D^n in ambient coordinates of Hom^{n+1}, one column per basis element.
    pub fn d_matrix(&self, n: i64) -> Matrix<O::S> {
        let basis = self.basis(n);
        let layout = self.layout(n + 1);
        let cols: Vec<Vec<O::S>> = basis.iter().map(|(i, b)| self.d_coords(n, *i, b, &layout)).collect();
        Matrix::from_columns(layout.1, &cols)
    }

    pub fn d_rank(&self, n: i64) -> usize {
        self.d_matrix(n).rank()
    }

    /// dim H^n = dim Hom^n − rank D^n − rank D^{n−1}.
    pub fn homology_dim(&self, n: i64) -> usize {
        self.dim(n) - self.d_rank(n) - self.d_rank(n - 1)
    }

    pub fn is_exact(&self) -> bool {
        self.degree_range().all(|n| self.homology_dim(n) == 0)
    }

    fn assemble(&self, n: i64, basis: &[(i64, O::Mor)], coeffs: &[O::S]) -> GradedMap<O> {
        let lo = self.x.lo();
        let mut comps: Vec<O::Mor> = self.x.degrees().map(|i| self.x.term(i).zero_mor(&self.y.term(i + n))).collect();
        for ((i, b), c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                let k = (i - lo) as usize;
                comps[k] = comps[k].add(&b.scale(c));
            }
        }
        GradedMap { degree: n, lo, comps }
    }

    /// Basis of the n-cocycles.
    pub fn cocycles(&self, n: i64) -> Vec<GradedMap<O>> {
        let basis = self.basis(n);
        if basis.is_empty() {
            return Vec::new();
        }
        let ker = self.d_matrix(n).kernel_basis();
        (0..ker.cols()).map(|c| self.assemble(n, &basis, &ker.column(c))).collect()
    }

    /// Some s ∈ Hom^{n−1} with D s = target (given in ambient coordinates of Hom^n).
    pub fn solve_boundary(&self, n: i64, target: &[O::S]) -> Option<GradedMap<O>> {
        let basis = self.basis(n - 1);
        let a = self.d_matrix(n - 1);
        let b = Matrix::from_columns(target.len(), &[target.to_vec()]);
        let sol = a.solve(&b).ok()??;
        Some(self.assemble(n - 1, &basis, &sol.particular.column(0)))
    }

    /// Ambient coordinates of a degree-0 element given by a chain map.
    pub fn chain_map_coords(&self, f: &ChainMap<O>) -> Vec<O::S> {
        self.x.degrees().flat_map(|i| f.comp(i).coords()).collect()
    }
}

fn ambient<O: Object>(a: &O, b: &O) -> usize {
    a.zero_mor(b).coords().len()
}

/// A null-homotopy witness: s^i: X^i → Y^{i−1} with f − g = d s + s d.
pub type Homotopy<O> = GradedMap<O>;

/// Solves f^n − g^n = d_Y^{n−1} s^n + s^{n+1} d_X^n for s.
pub fn homotopic<O: Blocks>(f: &ChainMap<O>, g: &ChainMap<O>) -> Result<Option<Homotopy<O>>> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::Shape("homotopy between maps with different source or target".into()));
    }
    let h = HomComplex::new(&f.source, &f.target);
    let diff = f.sub(g);
    Ok(h.solve_boundary(0, &h.chain_map_coords(&diff)))
}

/// Re-substitutes a homotopy into the defining identity.
pub fn check_homotopy<O: Object>(f: &ChainMap<O>, g: &ChainMap<O>, s: &Homotopy<O>) -> bool {
    let (x, y) = (&f.source, &f.target);
    let sc = |i: i64| match s.comp(i) {
        Some(m) => m.clone(),
        None => x.term(i).zero_mor(&y.term(i - 1)),
    };
    let (lo, hi) = match union_window(x.window(), y.window()) {
        None => return true,
        Some(w) => w,
    };
    (lo..=hi).all(|n| {
        let lhs = f.comp(n).sub(&g.comp(n));
        let rhs = y.d(n - 1).compose(&sc(n)).add(&sc(n + 1).compose(&x.d(n)));
        lhs == rhs
    })
}

/// dim of chain maps modulo homotopy: H⁰ of the Hom complex.
pub fn homotopy_classes_dim<O: Object>(x: &Complex<O>, y: &Complex<O>) -> usize {
    HomComplex::new(x, y).homology_dim(0)
}

impl<O: Blocks> Object for Complex<O> {
    type S = O::S;
    type Ctx = O::Ctx;
    type Mor = ChainMap<O>;

    fn ctx(&self) -> O::Ctx {
        self.ctx.clone()
    }

    fn zero(ctx: &O::Ctx) -> Self {
        Complex::zero_complex(ctx)
    }

    fn dim(&self) -> usize {
        self.terms.iter().map(Object::dim).sum()
    }

    fn direct_sum(ctx: &O::Ctx, parts: &[Self]) -> Self {
        Complex::sum(ctx, parts)
    }

    fn identity(&self) -> ChainMap<O> {
        ChainMap::identity_of(self)
    }

    fn zero_mor(&self, target: &Self) -> ChainMap<O> {
        ChainMap::zero_between(self, target)
    }

    /// Chain maps: the 0-cocycles of the Hom complex.
    fn hom_basis(&self, target: &Self) -> Vec<ChainMap<O>> {
        HomComplex::new(self, target)
            .cocycles(0)
            .into_iter()
            .map(|g| {
                ChainMap::from_fn(self, target, |i| match g.comp(i) {
                    Some(m) => m.clone(),
                    None => self.term(i).zero_mor(&target.term(i)),
                })
            })
            .collect()
    }

    fn is_projective(&self) -> bool {
        self.is_projective_complex()
    }

    /// ⊕_i disk(P^i, i+1) → X, where P^i → X^i covers each term; on the disk
    /// the map is p in degree i and d_X p in degree i+1.
    fn projective_cover(&self, kind: CoverKind) -> ChainMap<O> {
        let ctx = &self.ctx;
        let covers: Vec<(i64, O::Mor)> = self.degrees().map(|i| (i, self.term(i).projective_cover(kind))).collect();
        let disks: Vec<Complex<O>> = covers.iter().map(|(i, p)| Complex::disk(p.source(), i + 1)).collect();
        let sum = Complex::sum(ctx, &disks);
        ChainMap::from_fn(&sum, self, |n| {
            let srcs: Vec<O> = disks.iter().map(|d| d.term(n)).collect();
            let parts: Vec<O::Mor> = covers
                .iter()
                .zip(&srcs)
                .map(|((i, p), s)| {
                    if n == *i {
                        p.clone()
                    } else if n == i + 1 {
                        self.d(*i).compose(p)
                    } else {
                        s.zero_mor(&self.term(n))
                    }
                })
                .collect();
            O::row(&self.term(n), &parts)
        })
    }
}

impl<O: Blocks> Morphism for ChainMap<O> {
    type S = O::S;
    type Obj = Complex<O>;

    fn source(&self) -> &Complex<O> {
        &self.source
    }

    fn target(&self) -> &Complex<O> {
        &self.target
    }

    fn compose(&self, rhs: &Self) -> Self {
        ChainMap::from_fn(&rhs.source, &self.target, |i| self.comp(i).compose(&rhs.comp(i)))
    }

    fn add(&self, rhs: &Self) -> Self {
        ChainMap::from_fn(&self.source, &self.target, |i| self.comp(i).add(&rhs.comp(i)))
    }

    fn scale(&self, c: &O::S) -> Self {
        ChainMap { source: self.source.clone(), target: self.target.clone(), lo: self.lo, comps: self.comps.iter().map(|m| m.scale(c)).collect() }
    }

    fn coords(&self) -> Vec<O::S> {
        self.comps.iter().flat_map(Morphism::coords).collect()
    }

    fn rank(&self) -> usize {
        self.comps.iter().map(Morphism::rank).sum()
    }

    fn is_zero(&self) -> bool {
        self.comps.iter().all(Morphism::is_zero)
    }

    fn kernel(&self) -> Self {
        let x = &self.source;
        let Some((lo, hi)) = x.window() else { return ChainMap::zero_between(x, x) };
        let ks: Vec<O::Mor> = (lo..=hi).map(|i| self.comp(i).kernel()).collect();
        let k = |i: i64| ks[(i - lo) as usize].clone();
        let kc = Complex::from_fn(
            &x.ctx,
            lo,
            hi,
            |i| k(i).source().clone(),
            |i| x.d(i).compose(&k(i)).factor_through_mono(&k(i + 1)).expect("kernel is a subcomplex"),
        );
        ChainMap::from_fn(&kc, x, |i| if i >= lo && i <= hi { factor_source(&kc.term(i), &k(i)) } else { kc.term(i).zero_mor(&x.term(i)) })
    }

    fn cokernel(&self) -> Self {
        let y = &self.target;
        let Some((lo, hi)) = y.window() else { return ChainMap::zero_between(y, y) };
        let cs: Vec<O::Mor> = (lo..=hi).map(|i| self.comp(i).cokernel()).collect();
        let c = |i: i64| cs[(i - lo) as usize].clone();
        let cc = Complex::from_fn(
            &y.ctx,
            lo,
            hi,
            |i| c(i).target().clone(),
            |i| c(i + 1).compose(&y.d(i)).factor_through_epi(&c(i)).expect("image is a subcomplex"),
        );
        ChainMap::from_fn(y, &cc, |i| if i >= lo && i <= hi { factor_target(&c(i), &cc.term(i)) } else { y.term(i).zero_mor(&cc.term(i)) })
    }

    fn factor_through_mono(&self, mono: &Self) -> Option<Self> {
        let w = union_window(self.source.window(), mono.source.window());
        let comps = match w {
            None => Vec::new(),
            Some((lo, hi)) => (lo..=hi).map(|i| self.comp(i).factor_through_mono(&mono.comp(i))).collect::<Option<Vec<_>>>()?,
        };
        let lo = w.map_or(0, |w| w.0);
        Some(ChainMap::from_fn(&self.source, &mono.source, |i| comps.get((i - lo) as usize).cloned().unwrap_or_else(|| self.source.term(i).zero_mor(&mono.source.term(i)))))
    }

    fn factor_through_epi(&self, epi: &Self) -> Option<Self> {
        let w = union_window(epi.target.window(), self.target.window());
        let comps = match w {
            None => Vec::new(),
            Some((lo, hi)) => (lo..=hi).map(|i| self.comp(i).factor_through_epi(&epi.comp(i))).collect::<Option<Vec<_>>>()?,
        };
        let lo = w.map_or(0, |w| w.0);
        Some(ChainMap::from_fn(&epi.target, &self.target, |i| comps.get((i - lo) as usize).cloned().unwrap_or_else(|| epi.target.term(i).zero_mor(&self.target.term(i)))))
    }
}

// Trimming may replace a zero term by the canonical zero object; these keep
// the recorded source/target of a component in sync with the complex.
fn factor_source<O: Object>(src: &O, m: &O::Mor) -> O::Mor {
    if m.source() == src {
        m.clone()
    } else {
        src.zero_mor(m.target())
    }
}

fn factor_target<O: Object>(m: &O::Mor, tgt: &O) -> O::Mor {
    if m.target() == tgt {
        m.clone()
    } else {
        m.source().zero_mor(tgt)
    }
}

impl<O: Blocks> Blocks for Complex<O> {
    fn block_morphism(
        ctx: &O::Ctx,
        sources: &[Self],
        targets: &[Self],
        block: &dyn Fn(usize, usize) -> Option<ChainMap<O>>,
    ) -> ChainMap<O> {
        let source = Complex::sum(ctx, sources);
        let target = Complex::sum(ctx, targets);
        let blocks: Vec<Vec<Option<ChainMap<O>>>> =
            (0..targets.len()).map(|r| (0..sources.len()).map(|c| block(r, c)).collect()).collect();
        ChainMap::from_fn(&source, &target, |i| {
            let s: Vec<O> = sources.iter().map(|x| x.term(i)).collect();
            let t: Vec<O> = targets.iter().map(|x| x.term(i)).collect();
            O::block_morphism(ctx, &s, &t, &|r, c| blocks[r][c].as_ref().map(|m| m.comp(i)))
        })
    }
}

/// JSON encodings of terms and termwise morphisms.
pub trait TermCodec: Object {
    fn term_to_json(&self) -> Value;
    fn term_from_json(v: &Value, ctx: &Self::Ctx, path: &str) -> Result<Self>;
    fn mor_to_json(m: &Self::Mor) -> Value;
    fn mor_from_json(v: &Value, source: &Self, target: &Self, path: &str) -> Result<Self::Mor>;
}

impl<S: Scalar> TermCodec for AModule<S> {
    fn term_to_json(&self) -> Value {
        self.to_json()
    }

    fn term_from_json(v: &Value, ctx: &BaseAlgebra, path: &str) -> Result<Self> {
        AModule::from_json(v, *ctx, path)
    }

    fn mor_to_json(m: &ModMorphism<S>) -> Value {
        matrix_to_json(m.mat())
    }

    fn mor_from_json(v: &Value, source: &Self, target: &Self, path: &str) -> Result<ModMorphism<S>> {
        let mat = matrix_from_json(v, target.dim(), source.dim(), path)?;
        ModMorphism::new(source, target, mat).map_err(|e| Error::schema(path, e.to_string()))
    }
}

impl<S: Scalar> TermCodec for Representation<S> {
    fn term_to_json(&self) -> Value {
        self.to_json_bare()
    }

    fn term_from_json(v: &Value, ctx: &RepCtx, path: &str) -> Result<Self> {
        Representation::from_json_in(v, ctx, path)
    }

    fn mor_to_json(m: &RepMorphism<S>) -> Value {
        m.to_json()
    }

    fn mor_from_json(v: &Value, source: &Self, target: &Self, path: &str) -> Result<RepMorphism<S>> {
        RepMorphism::from_json(v, source, target, path)
    }
}

impl<O: Blocks + TermCodec> Complex<O> {
    pub fn to_json(&self) -> Value {
        json!({
            "lo": self.lo,
            "hi": self.hi(),
            "terms": self.terms.iter().map(O::term_to_json).collect::<Vec<_>>(),
            "diffs": self.diffs.iter().map(O::mor_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, ctx: &O::Ctx, path: &str) -> Result<Self> {
        let lo = get_i64(v, "lo", path)?;
        let hi = get_i64(v, "hi", path)?;
        if hi < lo - 1 {
            return Err(Error::schema(format!("{path}.hi"), "hi must be at least lo - 1"));
        }
        let n = (hi - lo + 1) as usize;
        let terms_v = get(v, "terms", path)?.as_array().ok_or_else(|| Error::schema(format!("{path}.terms"), "expected an array"))?;
        if terms_v.len() != n {
            return Err(Error::schema(format!("{path}.terms"), format!("window [{lo}, {hi}] needs {n} terms, found {}", terms_v.len())));
        }
        let terms = terms_v
            .iter()
            .enumerate()
            .map(|(k, t)| O::term_from_json(t, ctx, &format!("{path}.terms[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let empty = Vec::new();
        let diffs_v = match v.get("diffs") {
            None => &empty,
            Some(d) => d.as_array().ok_or_else(|| Error::schema(format!("{path}.diffs"), "expected an array"))?,
        };
        let need = n.saturating_sub(1);
        if diffs_v.len() != need {
            return Err(Error::schema(format!("{path}.diffs"), format!("expected {need} differentials, found {}", diffs_v.len())));
        }
        let diffs = diffs_v
            .iter()
            .enumerate()
            .map(|(k, d)| O::mor_from_json(d, &terms[k], &terms[k + 1], &format!("{path}.diffs[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        Complex::new(ctx, lo, terms, diffs).map_err(|e| match e {
            Error::NotComplex(i) => Error::schema(format!("{path}.diffs"), format!("d∘d ≠ 0 at degree {i}")),
            e => e,
        })
    }
}

impl<O: Blocks + TermCodec> ChainMap<O> {
    /// `{"lo": l, "comps": [...]}` over the union window.
    pub fn to_json(&self) -> Value {
        json!({"lo": self.lo, "comps": self.comps.iter().map(O::mor_to_json).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value, source: &Complex<O>, target: &Complex<O>, path: &str) -> Result<Self> {
        let lo = get_i64(v, "lo", path)?;
        let arr = get(v, "comps", path)?.as_array().ok_or_else(|| Error::schema(format!("{path}.comps"), "expected an array"))?;
        let mut comps = std::collections::BTreeMap::new();
        for (k, c) in arr.iter().enumerate() {
            let i = lo + k as i64;
            comps.insert(i, O::mor_from_json(c, &source.term(i), &target.term(i), &format!("{path}.comps[{k}]"))?);
        }
        ChainMap::new(source, target, |i| comps.get(&i).cloned().unwrap_or_else(|| source.term(i).zero_mor(&target.term(i))))
            .map_err(|e| Error::schema(path, e.to_string()))
    }
}

/// Coordinates of chain maps against a basis: used to count homotopy classes.
pub fn chain_map_matrix<O: Blocks>(maps: &[ChainMap<O>]) -> Matrix<O::S> {
    let amb = maps.first().map_or(0, |m| m.coords().len());
    coord_matrix(amb, maps)
}
