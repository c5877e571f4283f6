//! Instance generators: exhaustive over a finite field when feasible, seeded
//! sampling otherwise. Output order is a function of the parameters and seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category::{Morphism, Object};
use crate::complex::Complex;
use crate::linalg::{Matrix, Scalar};
use crate::module::{jordan_block, AModule, BaseAlgebra};
use crate::rep::{RepCtx, RepMorphism, Representation};

/// Largest span enumerated element by element.
pub const SPAN_LIMIT: usize = 1 << 12;

/// Every linear combination of `basis`, or `None` when the field is infinite
/// or the span exceeds [`SPAN_LIMIT`].
pub fn span<M: Morphism>(zero: &M, basis: &[M]) -> Option<Vec<M>> {
    let elems = M::S::elements()?;
    let total = elems.len().checked_pow(basis.len() as u32)?;
    if total > SPAN_LIMIT {
        return None;
    }
    let mut out = vec![zero.clone()];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for m in &out {
            for c in &elems {
                next.push(if c.is_zero() { m.clone() } else { m.add(&b.scale(c)) });
            }
        }
        out = next;
    }
    Some(out)
}

pub fn random_combination<M: Morphism>(zero: &M, basis: &[M], rng: &mut ChaCha8Rng) -> M {
    basis.iter().fold(zero.clone(), |acc, b| acc.add(&b.scale(&M::S::sample(rng))))
}

fn all_matrices<S: Scalar>(rows: usize, cols: usize) -> Option<Vec<Matrix<S>>> {
    let elems = S::elements()?;
    let n = rows * cols;
    let total = elems.len().checked_pow(n as u32)?;
    if total > SPAN_LIMIT {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let data = (0..n)
            .map(|_| {
                let e = elems[code % elems.len()].clone();
                code /= elems.len();
                e
            })
            .collect();
        out.push(Matrix::from_vec(rows, cols, data));
    }
    Some(out)
}

/// Every module of dimension ≤ `cap`, one per nilpotent operator matrix.
pub fn all_modules<S: Scalar>(alg: BaseAlgebra, cap: usize) -> Option<Vec<AModule<S>>> {
    let mut out = Vec::new();
    for d in 0..=cap {
        for m in all_matrices::<S>(d, d)? {
            if let Ok(a) = AModule::new(alg, m) {
                out.push(a);
            }
        }
    }
    Some(out)
}

fn random_invertible<S: Scalar>(d: usize, rng: &mut ChaCha8Rng) -> Matrix<S> {
    loop {
        let m = Matrix::from_fn(d, d, |_, _| S::sample(rng));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A module of dimension ≤ `cap` with a random Jordan type, in a random basis.
pub fn random_module<S: Scalar>(alg: BaseAlgebra, cap: usize, rng: &mut ChaCha8Rng) -> AModule<S> {
    let d = rng.gen_range(0..=cap);
    let mut blocks = Vec::new();
    let mut left = d;
    while left > 0 {
        let b = rng.gen_range(1..=left.min(alg.nil));
        blocks.push(jordan_block::<S>(b));
        left -= b;
    }
    let j = Matrix::block_diag(&blocks.iter().collect::<Vec<_>>());
    let p = random_invertible::<S>(d, rng);
    let op = p.mul(&j).mul(&p.inverse().expect("invertible"));
    AModule::new(alg, op).expect("conjugate of a nilpotent operator")
}

pub fn gen_modules<S: Scalar>(alg: BaseAlgebra, cap: usize, random: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<AModule<S>> {
    match random {
        None => all_modules(alg, cap).unwrap_or_default(),
        Some(count) => (0..count).map(|_| random_module(alg, cap, rng)).collect(),
    }
}

/// Every representation whose vertex modules come from `pool`, with every
/// A-linear choice of arrow maps. `None` if some hom space is too large.
pub fn all_reps<S: Scalar>(ctx: &RepCtx, pool: &[AModule<S>]) -> Option<Vec<Representation<S>>> {
    let q = ctx.quiver.clone();
    let nv = q.vertex_count();
    let mut out = Vec::new();
    let mut idx = vec![0usize; nv];
    if pool.is_empty() {
        return Some(out);
    }
    loop {
        let modules: Vec<AModule<S>> = idx.iter().map(|&i| pool[i].clone()).collect();
        let mut choices: Vec<Vec<Matrix<S>>> = Vec::new();
        for a in q.arrows() {
            let (s, t) = (&modules[a.s], &modules[a.t]);
            let maps = span(&s.zero_mor(t), &s.hom_basis(t))?;
            choices.push(maps.into_iter().map(|m| m.mat().clone()).collect());
        }
        for pick in product(&choices.iter().map(Vec::len).collect::<Vec<_>>()) {
            let maps = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            out.push(Representation::new(ctx, modules.clone(), maps).expect("maps are A-linear"));
        }
        let mut k = 0;
        loop {
            if k == nv {
                return Some(out);
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Mixed-radix enumeration of all index tuples below `sizes`.
fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        out = out.into_iter().flat_map(|p| (0..s).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

pub fn random_rep<S: Scalar>(ctx: &RepCtx, cap: usize, rng: &mut ChaCha8Rng) -> Representation<S> {
    let modules: Vec<AModule<S>> = (0..ctx.quiver.vertex_count()).map(|_| random_module(ctx.alg, cap, rng)).collect();
    let maps = ctx
        .quiver
        .arrows()
        .iter()
        .map(|a| {
            let (s, t) = (&modules[a.s], &modules[a.t]);
            random_combination(&s.zero_mor(t), &s.hom_basis(t), rng).mat().clone()
        })
        .collect();
    Representation::new(ctx, modules, maps).expect("maps are A-linear")
}

pub fn gen_reps<S: Scalar>(ctx: &RepCtx, cap: usize, random: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<Representation<S>> {
    match random {
        None => all_modules(ctx.alg, cap).and_then(|pool| all_reps(ctx, &pool)).unwrap_or_default(),
        Some(count) => (0..count).map(|_| random_rep(ctx, cap, rng)).collect(),
    }
}

/// Every complex in degrees lo..lo+w−1 (1 ≤ w ≤ `window`) with terms from
/// `pool` and nonzero end terms, and every choice of differentials. `None`
/// once the count passes `limit`.
pub fn all_complexes<O: Object>(ctx: &O::Ctx, pool: &[O], window: usize, lo: i64, limit: usize) -> Option<Vec<Complex<O>>> {
    let mut out = Vec::new();
    let nonzero = pool.iter().filter(|o| !o.is_zero()).count();
    for w in 1..=window {
        // Each admissible pick yields at least the complex with zero differentials.
        let picks = if w == 1 { Some(nonzero) } else { nonzero.checked_pow(2).and_then(|e| e.checked_mul(pool.len().checked_pow(w as u32 - 2)?)) };
        if picks.is_none_or(|c| out.len() + c > limit) {
            return None;
        }
        for pick in product(&vec![pool.len(); w]) {
            let terms: Vec<O> = pick.iter().map(|&i| pool[i].clone()).collect();
            if terms[0].is_zero() || terms[w - 1].is_zero() {
                continue;
            }
            let mut partial: Vec<Vec<O::Mor>> = vec![vec![]];
            for i in 0..w - 1 {
                let (s, t) = (&terms[i], &terms[i + 1]);
                let maps = span(&s.zero_mor(t), &s.hom_basis(t))?;
                partial = partial
                    .into_iter()
                    .flat_map(|ds| {
                        maps.iter()
                            .filter(|m| ds.last().is_none_or(|prev: &O::Mor| m.compose(prev).is_zero()))
                            .map(|m| [ds.clone(), vec![m.clone()]].concat())
                            .collect::<Vec<_>>()
                    })
                    .collect();
                if out.len() + partial.len() > limit {
                    return None;
                }
            }
            if out.len() + partial.len() > limit {
                return None;
            }
            for ds in partial {
                out.push(Complex::new(ctx, lo, terms.clone(), ds).expect("d² = 0 by construction"));
            }
        }
    }
    Some(out)
}

/// A complex with terms from `pool` in a random window of length ≤ `window`
/// starting at `lo`; each differential is a random map out of the cokernel
/// of the previous one.
pub fn random_complex<O: Object>(ctx: &O::Ctx, pool: &[O], window: usize, lo: i64, rng: &mut ChaCha8Rng) -> Complex<O> {
    let w = rng.gen_range(1..=window);
    let terms: Vec<O> = (0..w).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    let mut diffs: Vec<O::Mor> = Vec::new();
    for i in 0..w.saturating_sub(1) {
        let c = match diffs.last() {
            Some(prev) => prev.cokernel(),
            None => terms[i].identity(),
        };
        let t = &terms[i + 1];
        let g = random_combination(&c.target().zero_mor(t), &c.target().hom_basis(t), rng);
        diffs.push(g.compose(&c));
    }
    Complex::new(ctx, lo, terms, diffs).expect("d² = 0 by construction")
}

/// A random map between representations, for chain-map sampling.
pub fn random_rep_morphism<S: Scalar>(x: &Representation<S>, y: &Representation<S>, rng: &mut ChaCha8Rng) -> RepMorphism<S> {
    random_combination(&x.zero_mor(y), &x.hom_basis(y), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Gf2;
    use crate::quiver::Quiver;
    use rand::SeedableRng;

    #[test]
    fn enumeration_counts() {
        let alg1 = BaseAlgebra::new(1).unwrap();
        let alg2 = BaseAlgebra::new(2).unwrap();
        assert_eq!(all_modules::<Gf2>(alg1, 0).unwrap().len(), 1);
        assert_eq!(all_modules::<Gf2>(alg2, 2).unwrap().len(), 6);
        let c = RepCtx::new(Quiver::a2(), alg1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(gen_reps::<Gf2>(&c, 0, None, &mut rng).len(), 1);
        assert_eq!(gen_reps::<Gf2>(&c, 1, None, &mut rng).len(), 5);
        let c2 = RepCtx::new(Quiver::a2(), alg2);
        assert_eq!(gen_reps::<Gf2>(&c2, 2, None, &mut rng).len(), 109);
    }

    #[test]
    fn sampling_is_seeded() {
        let c = RepCtx::new(Quiver::fork(), BaseAlgebra::new(2).unwrap());
        let a: Vec<Representation<Gf2>> = gen_reps(&c, 2, Some(20), &mut ChaCha8Rng::seed_from_u64(3));
        let b: Vec<Representation<Gf2>> = gen_reps(&c, 2, Some(20), &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        let m = AModule::<Gf2>::free(c.alg, 1);
        let pool = vec![AModule::zero(&c.alg), m];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = random_complex(&c.alg, &pool, 4, -1, &mut rng);
            assert!(Complex::new(&c.alg, x.lo(), x.terms().to_vec(), x.degrees().take(x.terms().len().saturating_sub(1)).map(|i| x.d(i)).collect()).is_ok());
        }
    }

    #[test]
    fn complexes_enumerate() {
        let alg = BaseAlgebra::new(1).unwrap();
        let pool = all_modules::<Gf2>(alg, 1).unwrap();
        let all = all_complexes(&alg, &pool, 2, 0, 10).unwrap();
        // k; k → k with d ∈ {0, 1}
        assert_eq!(all.len(), 3);
        assert!(all_complexes(&alg, &pool, 2, 0, 2).is_none());
    }
}
