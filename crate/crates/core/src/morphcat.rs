//! The morphism category H(R) as representations of A₂ (vertex 0 carries
//! the top module A, vertex 1 the bottom module B, arrow 0 the map f), the
//! functors Cok and Ker, their complex-level extensions, ψ and ψ₀.

use crate::category::{CoverKind, Morphism, Object};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::module::{AModule, BaseAlgebra, ModMorphism};
use crate::quiver::Quiver;
use crate::rep::{RepCtx, RepMorphism, Representation};
use crate::resolution::{ext_dim, projective_resolution, resolve_complex};

pub type ArrowObject<S> = Representation<S>;
pub type ArrowMorphism<S> = RepMorphism<S>;

pub fn arrow_ctx(alg: BaseAlgebra) -> RepCtx {
    RepCtx::new(Quiver::a2(), alg)
}

fn check_a2(x: &ArrowObject<impl Scalar>) -> Result<()> {
    let q = x.quiver();
    if q.vertex_count() == 2 && q.arrows().len() == 1 && q.arrows()[0].s == 0 && q.arrows()[0].t == 1 {
        Ok(())
    } else {
        Err(Error::Precondition("morphism-category objects live on the quiver 1 → 2".into()))
    }
}

/// (A →f B) from its structure map.
pub fn arrow_object<S: Scalar>(ctx: &RepCtx, f: &ModMorphism<S>) -> ArrowObject<S> {
    Representation::new(ctx, vec![f.source().clone(), f.target().clone()], vec![f.mat().clone()])
        .expect("structure map is A-linear")
}

pub fn structure_map<S: Scalar>(x: &ArrowObject<S>) -> ModMorphism<S> {
    x.arrow_map(0)
}

fn arrow_morphism<S: Scalar>(x: &ArrowObject<S>, y: &ArrowObject<S>, top: &ModMorphism<S>, bot: &ModMorphism<S>) -> ArrowMorphism<S> {
    RepMorphism::new(x, y, vec![top.mat().clone(), bot.mat().clone()]).expect("square commutes")
}

/// S(R): the structure map is mono.
pub fn is_mono_object<S: Scalar>(x: &ArrowObject<S>) -> bool {
    structure_map(x).is_mono()
}

/// F(R): the structure map is epi.
pub fn is_epi_object<S: Scalar>(x: &ArrowObject<S>) -> bool {
    structure_map(x).is_epi()
}

/// (A →f B) ↦ (B → Coker f).
pub fn cok<S: Scalar>(x: &ArrowObject<S>) -> ArrowObject<S> {
    arrow_object(&x.ctx(), &structure_map(x).cokernel())
}

/// (A →g B) ↦ (Ker g → A).
pub fn ker<S: Scalar>(x: &ArrowObject<S>) -> ArrowObject<S> {
    arrow_object(&x.ctx(), &structure_map(x).kernel())
}

/// Cok on (α, β): top β, bottom the induced map of cokernels.
pub fn cok_mor<S: Scalar>(phi: &ArrowMorphism<S>) -> ArrowMorphism<S> {
    let (x, y) = (phi.source(), phi.target());
    let (cx, cy) = (structure_map(x).cokernel(), structure_map(y).cokernel());
    let beta = phi.comp(1);
    let gamma = cy.compose(&beta).factor_through_epi(&cx).expect("β maps im f into im f'");
    arrow_morphism(&cok(x), &cok(y), &beta, &gamma)
}

/// Ker on (α, β): top the induced map of kernels, bottom α.
pub fn ker_mor<S: Scalar>(phi: &ArrowMorphism<S>) -> ArrowMorphism<S> {
    let (x, y) = (phi.source(), phi.target());
    let (kx, ky) = (structure_map(x).kernel(), structure_map(y).kernel());
    let alpha = phi.comp(0);
    let delta = alpha.compose(&kx).factor_through_mono(&ky).expect("α maps ker g into ker g'");
    arrow_morphism(&ker(x), &ker(y), &delta, &alpha)
}

/// The isomorphism X → Ker(Cok X) for a mono object.
pub fn ker_cok_unit<S: Scalar>(x: &ArrowObject<S>) -> Result<ArrowMorphism<S>> {
    check_a2(x)?;
    let f = structure_map(x);
    if !f.is_mono() {
        return Err(Error::NotMono("structure map is not injective".into()));
    }
    let kc = ker(&cok(x));
    let k = structure_map(&kc);
    let top = f.factor_through_mono(&k).expect("im f = ker c");
    Ok(arrow_morphism(x, &kc, &top, &f.target().identity()))
}

/// The isomorphism Cok(Ker X) → X for an epi object.
pub fn cok_ker_counit<S: Scalar>(x: &ArrowObject<S>) -> Result<ArrowMorphism<S>> {
    check_a2(x)?;
    let g = structure_map(x);
    if !g.is_epi() {
        return Err(Error::NotEpi("structure map is not surjective".into()));
    }
    let ck = cok(&ker(x));
    let c = structure_map(&ck);
    let bot = g.factor_through_epi(&c).expect("ker c = ker g");
    Ok(arrow_morphism(&ck, x, &g.source().identity(), &bot))
}

/// Cok• on a complex with mono structure maps in every degree.
pub fn cok_complex<S: Scalar>(x: &Complex<ArrowObject<S>>) -> Result<Complex<ArrowObject<S>>> {
    termwise(x, is_mono_object, || Error::NotMono("a term has a non-injective structure map".into()), cok, cok_mor)
}

/// Ker• on a complex with epi structure maps in every degree.
pub fn ker_complex<S: Scalar>(x: &Complex<ArrowObject<S>>) -> Result<Complex<ArrowObject<S>>> {
    termwise(x, is_epi_object, || Error::NotEpi("a term has a non-surjective structure map".into()), ker, ker_mor)
}

fn termwise<S: Scalar>(
    x: &Complex<ArrowObject<S>>,
    pred: fn(&ArrowObject<S>) -> bool,
    err: fn() -> Error,
    obj: fn(&ArrowObject<S>) -> ArrowObject<S>,
    mor: fn(&ArrowMorphism<S>) -> ArrowMorphism<S>,
) -> Result<Complex<ArrowObject<S>>> {
    let ctx = x.ctx();
    check_a2(&Representation::<S>::zero(&ctx))?;
    if !x.terms().iter().all(pred) {
        return Err(err());
    }
    if x.is_empty() {
        return Ok(Complex::zero_complex(&ctx));
    }
    Ok(Complex::from_fn(&ctx, x.lo(), x.hi(), |i| obj(&x.term(i)), |i| mor(&x.d(i))))
}

/// ψ at the complex level: a termwise-projective resolution down to `cut`,
/// followed by Cok•.
pub fn psi<S: Scalar>(x: &Complex<ArrowObject<S>>, cut: i64) -> Result<Complex<ArrowObject<S>>> {
    let r = resolve_complex(x, cut, CoverKind::Minimal);
    cok_complex(&r.p)
}

/// ψ₀(X) = Cok(Cok•(P)₁ → Cok•(P)₀) for a minimal two-step projective
/// resolution P₁ → P₀ of X, taken componentwise.
pub fn psi0<S: Scalar>(x: &ArrowObject<S>) -> Result<ArrowObject<S>> {
    check_a2(x)?;
    let p = projective_resolution(x, 1, CoverKind::Minimal).complex();
    let c = cok_complex(&p)?;
    Ok(c.d(-1).cokernel().target().clone())
}

/// The k-dual of an object: (A →f B) ↦ (B* →fᵀ A*).
pub fn dual<S: Scalar>(x: &ArrowObject<S>) -> ArrowObject<S> {
    let f = structure_map(x);
    arrow_object(&x.ctx(), &dual_mod_mor(&f))
}

fn dual_module<S: Scalar>(m: &AModule<S>) -> AModule<S> {
    AModule::new(m.alg(), m.op().transpose()).expect("transpose of a nilpotent operator")
}

fn dual_mod_mor<S: Scalar>(f: &ModMorphism<S>) -> ModMorphism<S> {
    ModMorphism::new(&dual_module(f.target()), &dual_module(f.source()), f.mat().transpose()).expect("transpose is A-linear")
}

fn dual_mor<S: Scalar>(phi: &ArrowMorphism<S>) -> ArrowMorphism<S> {
    let (x, y) = (phi.source(), phi.target());
    RepMorphism::new(
        &dual(y),
        &dual(x),
        vec![phi.comp_matrix(1).transpose(), phi.comp_matrix(0).transpose()],
    )
    .expect("transpose of a morphism")
}

/// An injective coresolution I⁰ → I¹ of X, the dual of a projective
/// resolution of the dual.
pub fn injective_coresolution<S: Scalar>(x: &ArrowObject<S>, length: usize) -> Complex<ArrowObject<S>> {
    let p = projective_resolution(&dual(x), length, CoverKind::Minimal).complex();
    let ctx = x.ctx();
    if p.is_empty() {
        return Complex::zero_complex(&ctx);
    }
    Complex::from_fn(&ctx, -p.hi(), -p.lo(), |i| dual(&p.term(-i)), |i| dual_mor(&p.d(-i - 1)))
}

/// ψ₀⁻¹(X) = Ker(Ker•(I)⁰ → Ker•(I)¹) for a minimal injective coresolution.
pub fn psi0_inv<S: Scalar>(x: &ArrowObject<S>) -> Result<ArrowObject<S>> {
    check_a2(x)?;
    let c = ker_complex(&injective_coresolution(x, 1))?;
    Ok(c.d(0).kernel().source().clone())
}

/// (dim Extⁱ(X, Y), dim Extⁱ(ψ₀X, ψ₀Y)).
pub fn ext_compare<S: Scalar>(x: &ArrowObject<S>, y: &ArrowObject<S>, i: usize, length: usize) -> Result<(usize, usize)> {
    let (px, py) = (psi0(x)?, psi0(y)?);
    Ok((
        ext_dim(x, y, i, length, CoverKind::Minimal)?,
        ext_dim(&px, &py, i, length, CoverKind::Minimal)?,
    ))
}

/// The map ψ₀(X) → Cok(X) induced by Cok of the augmentation P₀ → X. Cok is
/// right exact, so this is an isomorphism for every X.
pub fn psi0_comparison<S: Scalar>(x: &ArrowObject<S>) -> Result<ArrowMorphism<S>> {
    check_a2(x)?;
    let r = projective_resolution(x, 1, CoverKind::Minimal);
    let p = r.complex();
    let q = cok_complex(&p)?.d(-1).cokernel();
    let ce = cok_mor(&r.augmentation);
    Ok(ce.factor_through_epi(&q).expect("Cok(ε) kills the image of Cok(d)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, Matrix};

    fn k(c: &RepCtx, d: usize) -> AModule<Gf2> {
        AModule::trivial(c.alg, d)
    }

    fn obj(c: &RepCtx, a: usize, b: usize, f: Matrix<Gf2>) -> ArrowObject<Gf2> {
        Representation::new(c, vec![k(c, a), k(c, b)], vec![f]).unwrap()
    }

    #[test]
    fn cok_and_ker_examples() {
        let c = arrow_ctx(BaseAlgebra::new(1).unwrap());
        let zk = obj(&c, 0, 1, Matrix::zeros(1, 0));
        let id = obj(&c, 1, 1, Matrix::identity(1));
        let k0 = obj(&c, 1, 0, Matrix::zeros(0, 1));
        assert_eq!(cok(&zk), id);
        assert_eq!(cok(&id), k0);
        assert_eq!(ker(&k0), id);
        assert_eq!(ker(&id), zk);
        let e1 = obj(&c, 1, 2, Matrix::from_i64(&[&[1], &[0]]));
        let ce = cok(&e1);
        assert_eq!(ce.dims(), vec![2, 1]);
        assert!(is_epi_object(&ce));
        assert_eq!(structure_map(&ce).compose(&structure_map(&e1)).rank(), 0);
    }

    #[test]
    fn psi0_examples() {
        let c = arrow_ctx(BaseAlgebra::new(1).unwrap());
        let zk = obj(&c, 0, 1, Matrix::zeros(1, 0));
        let id = obj(&c, 1, 1, Matrix::identity(1));
        let k0 = obj(&c, 1, 0, Matrix::zeros(0, 1));
        assert_eq!(psi0(&id).unwrap(), k0);
        assert_eq!(psi0(&zk).unwrap(), id);
        assert!(psi0(&k0).unwrap().is_zero());
        assert_eq!(psi0_inv(&k0).unwrap(), id);
        assert_eq!(psi0_inv(&id).unwrap(), zk);
        assert!(psi0_comparison(&zk).unwrap().is_iso());
        let zero_map = obj(&c, 1, 1, Matrix::zeros(1, 1));
        assert!(psi0_comparison(&zero_map).unwrap().is_iso());
        assert!(psi0_comparison(&k0).unwrap().is_iso());
    }

    #[test]
    fn cok_complex_on_resolution() {
        let c = arrow_ctx(BaseAlgebra::new(1).unwrap());
        let k0 = obj(&c, 1, 0, Matrix::zeros(0, 1));
        let p = projective_resolution(&k0, 2, CoverKind::Minimal).complex();
        let cc = cok_complex(&p).unwrap();
        assert_eq!(cc.term(-1), obj(&c, 1, 1, Matrix::identity(1)));
        assert_eq!(cc.term(0), k0);
        assert_eq!(cc.d(-1).comp_matrix(0), &Matrix::identity(1));
        assert_eq!(cc.homology_table(), vec![(-1, 1), (0, 0)]);
        let h = cc.homology(-1);
        assert_eq!(h.dims(), vec![0, 1]);
        let s = psi(&Complex::concentrated(&k0, 0), -3).unwrap();
        assert_eq!(s.homology_table(), cc.homology_table());
        assert!(psi(&Complex::<ArrowObject<Gf2>>::zero_complex(&c), -3).unwrap().is_empty());
        assert!(matches!(cok_complex(&Complex::concentrated(&k0, 0)), Err(Error::NotMono(_))));
        let d = Complex::disk(&obj(&c, 1, 2, Matrix::from_i64(&[&[1], &[1]])), 0);
        let cd = cok_complex(&d).unwrap();
        assert!(cd.is_exact());
        assert_eq!(cd.term(0).dims(), vec![2, 1]);
    }

    #[test]
    fn unit_and_counit_are_isos() {
        let c = arrow_ctx(BaseAlgebra::new(2).unwrap());
        let a = AModule::<Gf2>::free(c.alg, 1);
        let b = AModule::<Gf2>::free(c.alg, 1);
        let x = obj_mod(&c, &AModule::trivial(c.alg, 1), &b, Matrix::from_i64(&[&[0], &[1]]));
        assert!(ker_cok_unit(&x).unwrap().is_iso());
        let y = obj_mod(&c, &a, &AModule::trivial(c.alg, 1), Matrix::from_i64(&[&[1, 0]]));
        assert!(cok_ker_counit(&y).unwrap().is_iso());
        assert!(matches!(ker_cok_unit(&y), Err(Error::NotMono(_))));
    }

    fn obj_mod(c: &RepCtx, a: &AModule<Gf2>, b: &AModule<Gf2>, f: Matrix<Gf2>) -> ArrowObject<Gf2> {
        Representation::new(c, vec![a.clone(), b.clone()], vec![f]).unwrap()
    }

    #[test]
    fn ext_compare_examples() {
        let c = arrow_ctx(BaseAlgebra::new(1).unwrap());
        let zk = obj(&c, 0, 1, Matrix::zeros(1, 0));
        let id = obj(&c, 1, 1, Matrix::identity(1));
        assert_eq!(ext_compare(&zk, &zk, 0, 4).unwrap(), (1, 1));
        assert_eq!(ext_compare(&zk, &id, 1, 4).unwrap(), (0, 0));
        assert_eq!(ext_compare(&id, &id, 0, 4).unwrap(), (1, 1));
    }

    #[test]
    fn dual_is_involutive() {
        let c = arrow_ctx(BaseAlgebra::new(2).unwrap());
        let x = obj_mod(&c, &AModule::free(c.alg, 1), &AModule::cyclic(c.alg, 1), Matrix::from_i64(&[&[1, 0]]));
        assert_eq!(dual(&dual(&x)), x);
        let i = injective_coresolution(&x, 2);
        assert!(i.terms().iter().all(|t| t.modules().iter().all(AModule::is_injective)));
        assert_eq!(i.homology(0).dims(), x.dims());
    }

    mod props {
        use super::*;
        use crate::harness::gen::random_rep;
        use crate::linalg::Gf3;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn objects(seed: u64, n: usize, count: usize) -> Vec<ArrowObject<Gf3>> {
            let c = arrow_ctx(BaseAlgebra::new(n).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| random_rep(&c, 2, &mut rng)).collect()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn unit_counit_and_psi0(seed in any::<u64>(), n in 1usize..=2) {
                let x = objects(seed, n, 1).remove(0);
                prop_assert_eq!(ker_cok_unit(&x).is_ok(), is_mono_object(&x));
                prop_assert_eq!(cok_ker_counit(&x).is_ok(), is_epi_object(&x));
                if let Ok(u) = ker_cok_unit(&x) {
                    prop_assert!(u.is_iso());
                    prop_assert_eq!(psi0_inv(&psi0(&x).unwrap()).unwrap().dims(), x.dims());
                }
                if let Ok(c) = cok_ker_counit(&x) {
                    prop_assert!(c.is_iso());
                }
                prop_assert!(psi0_comparison(&x).unwrap().is_iso());
                prop_assert!(is_epi_object(&psi0(&x).unwrap()));
            }

            #[test]
            fn ext_preserved_on_mono_objects(seed in any::<u64>(), n in 1usize..=2, i in 0usize..=2) {
                let xs: Vec<_> = objects(seed, n, 6).into_iter().filter(is_mono_object).collect();
                prop_assume!(xs.len() >= 2);
                let (l, r) = ext_compare(&xs[0], &xs[1], i, 3).unwrap();
                prop_assert_eq!(l, r);
            }
        }
    }
}
