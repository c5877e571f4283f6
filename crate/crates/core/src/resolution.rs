//! Projective resolutions of objects and of bounded complexes, Ext and
//! derived Hom dimensions, and the DGPrj^op membership test.

use crate::category::{lift_through_epi, section, Blocks, CoverKind, Morphism, Object};
use crate::complex::{ChainMap, Complex, HomComplex};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::module::{AModule, ModMorphism};
use crate::rep::{eta, eta_target, Representation};

/// P^{−L} → ⋯ → P⁰ → X → 0, with the kernel of the last map kept so that
/// Ext can be read off in degree L as well.
#[derive(Clone, Debug)]
pub struct Resolution<O: Object> {
    /// terms[j] = P^{−j}
    pub terms: Vec<O>,
    /// diffs[j]: P^{−j−1} → P^{−j}
    pub diffs: Vec<O::Mor>,
    pub augmentation: O::Mor,
    /// Inclusion of ker(P^{−L} → P^{−L+1}) (ker of the augmentation when L = 0).
    pub kernel: O::Mor,
    pub length: usize,
    /// The kernel vanished before the requested length.
    pub complete: bool,
}

pub fn projective_resolution<O: Object>(x: &O, length: usize, kind: CoverKind) -> Resolution<O> {
    let rho = x.projective_cover(kind);
    let mut terms = vec![rho.source().clone()];
    let mut diffs = Vec::new();
    let mut k = rho.kernel();
    for _ in 0..length {
        if k.source().is_zero() {
            break;
        }
        let c = k.source().projective_cover(kind);
        diffs.push(k.compose(&c));
        terms.push(c.source().clone());
        k = c.kernel();
    }
    let complete = k.source().is_zero();
    Resolution { terms, diffs, augmentation: rho, kernel: k, length, complete }
}

impl<O: Object> Resolution<O> {
    /// P• in degrees −L..0.
    pub fn complex(&self) -> Complex<O> {
        let ctx = self.augmentation.target().ctx();
        let lo = -(self.terms.len() as i64 - 1);
        Complex::from_fn(&ctx, lo, 0, |i| self.terms[(-i) as usize].clone(), |i| self.diffs[(-i - 1) as usize].clone())
    }

    /// P• with the cut kernel appended in degree −L−1.
    pub fn complex_with_kernel(&self) -> Complex<O> {
        let ctx = self.augmentation.target().ctx();
        let n = self.terms.len() as i64;
        Complex::from_fn(
            &ctx,
            -n,
            0,
            |i| if i == -n { self.kernel.source().clone() } else { self.terms[(-i) as usize].clone() },
            |i| if i == -n { self.kernel.clone() } else { self.diffs[(-i - 1) as usize].clone() },
        )
    }

    /// Is P^{-L} → ⋯ → P⁰ → X → 0 exact and termwise projective?
    pub fn is_valid(&self) -> bool {
        let c = self.complex();
        let top_ok = c.homology_dim(0) == self.augmentation.target().dim() && self.augmentation.is_epi();
        top_ok
            && self.terms.iter().all(O::is_projective)
            && c.degrees().filter(|&i| i < 0 && i > c.lo()).all(|i| c.is_exact_at(i))
            && self.kernel.is_mono()
            && self.diffs.last().map_or_else(|| self.augmentation.compose(&self.kernel).is_zero(), |d| d.compose(&self.kernel).is_zero())
    }
}

/// dim Ext^i(X, Y), computed from a length-`length` resolution of X.
pub fn ext_dim<O: Object>(x: &O, y: &O, i: usize, length: usize, kind: CoverKind) -> Result<usize> {
    if i > length {
        return Err(Error::InsufficientWindow(format!("Ext^{i} needs resolution length at least {i}, got {length}")));
    }
    let res = projective_resolution(x, length, kind);
    Ok(ext_from_resolution(&res, y, i))
}

pub fn ext_from_resolution<O: Object>(res: &Resolution<O>, y: &O, i: usize) -> usize {
    let p = res.complex_with_kernel();
    HomComplex::new(&p, &Complex::concentrated(y, 0)).homology_dim(i as i64)
}

/// dim Ext^i(X, Y) for i = 0..=length.
pub fn ext_dims<O: Object>(x: &O, y: &O, length: usize, kind: CoverKind) -> Vec<usize> {
    let res = projective_resolution(x, length, kind);
    let h = HomComplex::new(&res.complex_with_kernel(), &Complex::concentrated(y, 0));
    (0..=length as i64).map(|i| h.homology_dim(i)).collect()
}

/// A termwise-projective P• with a chain map ρ: P• → X• that is a homology
/// isomorphism in degrees ≥ cut + 1 (all degrees when `complete`).
#[derive(Clone, Debug)]
pub struct ComplexResolution<O: Object> {
    pub p: Complex<O>,
    pub rho: ChainMap<O>,
    pub cut: i64,
    /// Inclusion of the image that d^{cut−1} would have in an uncut resolution.
    pub tail: Option<O::Mor>,
    pub complete: bool,
}

impl<O: Blocks> ComplexResolution<O> {
    /// P• with the tail image appended in degree cut − 1; Hom out of this
    /// complex agrees with the uncut one in Hom-degrees n with cut ≤ Y.lo − n.
    pub fn with_tail(&self) -> Complex<O> {
        match &self.tail {
            Some(t) if !t.source().is_zero() => {
                let ctx = self.p.ctx();
                let hi = self.p.hi().max(self.cut);
                Complex::from_fn(
                    &ctx,
                    self.cut - 1,
                    hi,
                    |i| if i == self.cut - 1 { t.source().clone() } else { self.p.term(i) },
                    |i| if i == self.cut - 1 { t.clone() } else { self.p.d(i) },
                )
            }
            _ => self.p.clone(),
        }
    }
}

/// Top-down construction through the cone M^i = P^{i+1} ⊕ X^i with
/// d(p, x) = (d_P p, ρp − d_X x): at each degree cover the cycles of M modulo
/// the image of X^{i−1}, which makes M exact there.
pub fn resolve_complex<O: Blocks>(x: &Complex<O>, cut: i64, kind: CoverKind) -> ComplexResolution<O> {
    let ctx = x.ctx();
    if x.is_empty() || x.is_dg_projective_bounded() {
        return ComplexResolution { p: x.clone(), rho: ChainMap::identity_of(x), cut, tail: None, complete: true };
    }
    let hi = x.hi();
    let cut = cut.min(hi);
    let zero = O::zero(&ctx);
    // index k ↔ degree hi − k
    let mut pt: Vec<O> = Vec::new();
    let mut dp: Vec<O::Mor> = Vec::new();
    let mut rh: Vec<O::Mor> = Vec::new();
    let mut complete = false;

    let get = |v: &Vec<O>, i: i64| -> O { if i > hi { zero.clone() } else { v.get((hi - i) as usize).cloned().unwrap_or_else(|| zero.clone()) } };

    // d_M^i: P^{i+1} ⊕ X^i → P^{i+2} ⊕ X^{i+1}
    let d_m = |pt: &Vec<O>, dp: &Vec<O::Mor>, rh: &Vec<O::Mor>, i: i64| -> O::Mor {
        let p1 = get(pt, i + 1);
        let p2 = get(pt, i + 2);
        let (dp1, rh1) = if i + 1 > hi {
            (p1.zero_mor(&p2), p1.zero_mor(&x.term(i + 1)))
        } else {
            (dp[(hi - i - 1) as usize].clone(), rh[(hi - i - 1) as usize].clone())
        };
        O::block_morphism(&ctx, &[p1, x.term(i)], &[p2, x.term(i + 1)], &|r, c| match (r, c) {
            (0, 0) => Some(dp1.clone()),
            (1, 0) => Some(rh1.clone()),
            (1, 1) => Some(x.d(i).neg()),
            _ => None,
        })
    };

    let mut i = hi;
    while i >= cut {
        let p1 = get(&pt, i + 1);
        let z = d_m(&pt, &dp, &rh, i).kernel();
        let b = O::block_morphism(&ctx, &[x.term(i - 1)], &[p1.clone(), x.term(i)], &|r, _| (r == 1).then(|| x.d(i - 1).neg()));
        let bz = b.factor_through_mono(&z).expect("image of X^{i-1} lies in the cycles");
        let q = bz.cokernel();
        let cov = q.target().projective_cover(kind);
        let g = lift_through_epi(&cov, &q).expect("projective objects lift along epimorphisms");
        let h = z.compose(&g);
        let parts = [p1.clone(), x.term(i)];
        let pr0 = O::block_morphism(&ctx, &parts, &parts[..1], &|_, c| (c == 0).then(|| p1.identity()));
        let pr1 = O::block_morphism(&ctx, &parts, &parts[1..], &|_, c| (c == 1).then(|| x.term(i).identity()));
        let c = cov.source().clone();
        dp.push(pr0.compose(&h));
        rh.push(pr1.compose(&h));
        pt.push(c.clone());
        if c.is_zero() && i <= x.lo() {
            complete = true;
            break;
        }
        i -= 1;
    }

    let tail = if complete {
        None
    } else {
        let p0 = get(&pt, cut);
        let z = d_m(&pt, &dp, &rh, cut - 1).kernel();
        let parts = [p0.clone(), x.term(cut - 1)];
        let pr0 = O::block_morphism(&ctx, &parts, &parts[..1], &|_, c| (c == 0).then(|| p0.identity()));
        let t = pr0.compose(&z).image();
        if t.source().is_zero() && cut <= x.lo() {
            complete = true;
            None
        } else {
            Some(t)
        }
    };

    let lo = hi - pt.len() as i64 + 1;
    let p = Complex::from_fn(&ctx, lo, hi, |i| get(&pt, i), |i| dp[(hi - i) as usize].clone());
    let rho = ChainMap::from_fn(&p, x, |i| {
        if i >= lo && i <= hi {
            let m = rh[(hi - i) as usize].clone();
            if m.source() == &p.term(i) {
                return m;
            }
        }
        p.term(i).zero_mor(&x.term(i))
    });
    ComplexResolution { p, rho, cut, tail, complete }
}

/// dim Hom_D(X•, Y•[i]) = H^i Hom(P•, Y•). With `cut = None` the resolution
/// is taken deep enough; an explicit cut that is too shallow is an error.
pub fn derived_hom_dim<O: Blocks>(x: &Complex<O>, y: &Complex<O>, i: i64, cut: Option<i64>, kind: CoverKind) -> Result<usize> {
    if x.is_empty() || y.is_empty() {
        return Ok(0);
    }
    let needed = y.lo() - i;
    let cut = cut.unwrap_or(needed);
    let res = resolve_complex(x, cut, kind);
    if !res.complete && res.cut > needed {
        return Err(Error::InsufficientWindow(format!(
            "degree {i} needs the resolution cut at {needed} or below, got {}",
            res.cut
        )));
    }
    Ok(HomComplex::new(&res.with_tail(), y).homology_dim(i))
}

/// X•_v as a complex of A-modules.
pub fn vertex_complex<S: Scalar>(x: &Complex<Representation<S>>, v: usize) -> Complex<AModule<S>> {
    x.map(&x.ctx().alg, |r| r.module(v).clone(), |m| m.comp(v))
}

/// The chain map η_{X•,v}: X•_v → ⊕_{s(a)=v} X•_{t(a)}.
pub fn eta_chain<S: Scalar>(x: &Complex<Representation<S>>, v: usize) -> ChainMap<AModule<S>> {
    let alg = x.ctx().alg;
    let q = x.ctx().quiver.clone();
    let out = q.out_arrows(v);
    let src = vertex_complex(x, v);
    let tgt = match x.window() {
        None => Complex::zero_complex(&alg),
        Some((lo, hi)) => Complex::from_fn(
            &alg,
            lo,
            hi,
            |i| eta_target(&x.term(i), v),
            |i| {
                let parts: Vec<ModMorphism<S>> = out.iter().map(|&a| x.d(i).comp(q.arrows()[a].t)).collect();
                AModule::diagonal(&parts, &alg)
            },
        ),
    };
    ChainMap::from_fn(&src, &tgt, |i| eta(&x.term(i), v))
}

/// Which notion of splitting to demand of η on complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Splitting {
    /// A section that is itself a chain map.
    #[default]
    ChainLevel,
    /// A section in each degree separately.
    Degreewise,
}

/// DGPrj^op: every vertex complex is termwise projective and every η_{X•,v}
/// is a split epimorphism.
pub fn is_dgprj_op<S: Scalar>(x: &Complex<Representation<S>>, split: Splitting) -> bool {
    let nv = x.ctx().quiver.vertex_count();
    if !x.terms().iter().all(|r| r.modules().iter().all(AModule::is_projective)) {
        return false;
    }
    (0..nv).all(|v| {
        let e = eta_chain(x, v);
        match split {
            Splitting::ChainLevel => section(&e).is_some(),
            Splitting::Degreewise => x.degrees().all(|i| section(&e.comp(i)).is_some()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, Gf3, Matrix};
    use crate::module::BaseAlgebra;
    use crate::quiver::Quiver;
    use crate::rep::RepCtx;
    use proptest::prelude::*;

    fn alg(n: usize) -> BaseAlgebra {
        BaseAlgebra::new(n).unwrap()
    }

    fn a2(n: usize) -> RepCtx {
        RepCtx::new(Quiver::a2(), alg(n))
    }

    fn rep(ctx: &RepCtx, d1: usize, d2: usize, f: Matrix<Gf2>) -> Representation<Gf2> {
        Representation::new(ctx, vec![AModule::trivial(ctx.alg, d1), AModule::trivial(ctx.alg, d2)], vec![f]).unwrap()
    }

    fn s1(ctx: &RepCtx) -> Representation<Gf2> {
        rep(ctx, 1, 0, Matrix::zeros(0, 1))
    }

    fn s2(ctx: &RepCtx) -> Representation<Gf2> {
        rep(ctx, 0, 1, Matrix::zeros(1, 0))
    }

    fn p1(ctx: &RepCtx) -> Representation<Gf2> {
        rep(ctx, 1, 1, Matrix::identity(1))
    }

    #[test]
    fn projective_resolves_to_itself() {
        let a = AModule::<Gf2>::free(alg(2), 2);
        let r = projective_resolution(&a, 3, CoverKind::Minimal);
        assert!(r.complete);
        assert_eq!(r.terms, vec![a.clone()]);
        assert!(r.is_valid());
        assert_eq!(ext_dim(&a, &AModule::trivial(alg(2), 1), 1, 1, CoverKind::Minimal).unwrap(), 0);
    }

    #[test]
    fn periodic_resolution_of_k() {
        let k = AModule::<Gf2>::trivial(alg(2), 1);
        let r = projective_resolution(&k, 4, CoverKind::Minimal);
        assert!(!r.complete);
        assert_eq!(r.terms.iter().map(Object::dim).collect::<Vec<_>>(), vec![2; 5]);
        assert!(r.is_valid());
        assert_eq!(ext_dims(&k, &k, 4, CoverKind::Minimal), vec![1; 5]);
        assert!(matches!(ext_dim(&k, &k, 3, 2, CoverKind::Minimal), Err(Error::InsufficientWindow(_))));
    }

    #[test]
    fn simple_a2_resolution_and_ext() {
        let ctx = a2(1);
        let r = projective_resolution(&s1(&ctx), 2, CoverKind::Minimal);
        assert!(r.complete);
        assert_eq!(r.terms, vec![p1(&ctx), s2(&ctx)]);
        assert_eq!(ext_dim(&s1(&ctx), &s2(&ctx), 1, 1, CoverKind::Minimal).unwrap(), 1);
        assert_eq!(ext_dim(&s2(&ctx), &s1(&ctx), 1, 1, CoverKind::Minimal).unwrap(), 0);
        assert_eq!(ext_dim(&s1(&ctx), &s2(&ctx), 1, 1, CoverKind::Redundant).unwrap(), 1);
    }

    #[test]
    fn complex_resolution_examples() {
        let k = AModule::<Gf2>::trivial(alg(2), 1);
        let a = AModule::<Gf2>::free(alg(2), 1);
        let pa = Complex::disk(&a, 2);
        let r = resolve_complex(&pa, -3, CoverKind::Minimal);
        assert!(r.complete);
        assert_eq!(r.p, pa);

        let m = Complex::concentrated(&k, 0);
        let r = resolve_complex(&m, -3, CoverKind::Minimal);
        assert_eq!(r.p.lo(), -3);
        assert_eq!(r.p.hi(), 0);
        assert!(r.p.terms().iter().all(|t| t.dim() == 2));
        assert!(crate::complex::is_quasi_iso_above(&r.rho, -2));

        let x = Complex::sum(&alg(2), &[m.clone(), Complex::disk(&k, 5)]);
        for i in 0..3 {
            assert_eq!(
                derived_hom_dim(&x, &m, i, None, CoverKind::Minimal).unwrap(),
                derived_hom_dim(&m, &m, i, None, CoverKind::Minimal).unwrap()
            );
        }
        assert!(matches!(derived_hom_dim(&m, &m, 2, Some(-1), CoverKind::Minimal), Err(Error::InsufficientWindow(_))));
    }

    #[test]
    fn derived_hom_examples() {
        let k = AModule::<Gf2>::trivial(alg(2), 1);
        let m = Complex::concentrated(&k, 0);
        assert_eq!(derived_hom_dim(&m, &m, 0, None, CoverKind::Minimal).unwrap(), 1);
        for i in 1..4 {
            assert_eq!(derived_hom_dim(&m, &m, i, None, CoverKind::Minimal).unwrap(), 1);
        }
        let ex = Complex::disk(&k, 1);
        assert_eq!(derived_hom_dim(&ex, &m, 0, None, CoverKind::Minimal).unwrap(), 0);
        assert_eq!(derived_hom_dim(&ex, &m, -1, None, CoverKind::Minimal).unwrap(), 0);
        // k → A → A → k exact, so the ends are linked by Ext²
        let ctx = a2(1);
        let x = Complex::concentrated(&s1(&ctx), 0);
        let y = Complex::concentrated(&s2(&ctx), 0);
        assert_eq!(derived_hom_dim(&x, &y, 1, None, CoverKind::Minimal).unwrap(), 1);
        assert_eq!(derived_hom_dim(&y, &x, 1, None, CoverKind::Minimal).unwrap(), 0);
    }

    #[test]
    fn dgprj_op_examples() {
        let ctx = a2(1);
        let c = |r: Representation<Gf2>| Complex::concentrated(&r, 0);
        assert!(is_dgprj_op(&c(s1(&ctx)), Splitting::ChainLevel));
        assert!(!is_dgprj_op(&c(s2(&ctx)), Splitting::ChainLevel));
        assert!(is_dgprj_op(&Complex::disk(&p1(&ctx), 0), Splitting::ChainLevel));
        assert!(is_dgprj_op(&Complex::disk(&p1(&ctx), 0), Splitting::Degreewise));
        let e = eta_chain(&Complex::disk(&s2(&ctx), 1), 0);
        assert!(e.chain_defect().is_none());
    }

    fn module_gf3(n: usize) -> impl Strategy<Value = AModule<Gf3>> {
        (0usize..3, 0usize..3, proptest::collection::vec(0i64..3, 36)).prop_map(move |(a, b, e)| {
            let al = BaseAlgebra::new(n).unwrap();
            let base = AModule::direct_sum(&al, &[AModule::free(al, a.min(1)), AModule::trivial(al, b), AModule::cyclic(al, 1.min(n))]);
            let d = base.dim();
            let g = Matrix::from_fn(d, d, |i, j| Gf3::new(if i == j { 1 } else { e[(i * 6 + j) % 36] }));
            match g.inverse() {
                Some(gi) => AModule::new(al, g.mul(base.op()).mul(&gi)).unwrap(),
                None => base,
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn ext_zero_is_hom(x in module_gf3(2), y in module_gf3(2)) {
            prop_assert_eq!(ext_dim(&x, &y, 0, 0, CoverKind::Minimal).unwrap(), x.hom_dim(&y));
        }

        #[test]
        fn ext_is_independent_of_the_resolution(x in module_gf3(3), y in module_gf3(3)) {
            prop_assert_eq!(ext_dims(&x, &y, 2, CoverKind::Minimal), ext_dims(&x, &y, 2, CoverKind::Redundant));
        }

        #[test]
        fn derived_hom_matches_ext(x in module_gf3(2), y in module_gf3(2), i in 0i64..3) {
            let e = ext_dim(&x, &y, i as usize, 2, CoverKind::Minimal).unwrap();
            let d = derived_hom_dim(&Complex::concentrated(&x, 0), &Complex::concentrated(&y, 0), i, None, CoverKind::Minimal).unwrap();
            prop_assert_eq!(e, d);
        }

        #[test]
        fn resolutions_are_valid(x in module_gf3(3)) {
            prop_assert!(projective_resolution(&x, 3, CoverKind::Minimal).is_valid());
            prop_assert!(projective_resolution(&x, 3, CoverKind::Redundant).is_valid());
        }
    }
}
