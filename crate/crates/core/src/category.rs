//! The abelian-category interface shared by modules, representations and
//! complexes. Everything is finite dimensional over an exact field, so every
//! Hom space is a finite k-vector space with an explicit basis, and every
//! morphism has a coordinate vector in a fixed ambient space.

use std::fmt::Debug;

use crate::linalg::{Matrix, Scalar};

/// Which projective cover to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoverKind {
    /// Rank equals the number of generators of the top.
    #[default]
    Minimal,
    /// A deliberately non-minimal cover; used as an independent resolution.
    Redundant,
}

pub trait Object: Clone + Debug + PartialEq + Send + Sync + 'static {
    type S: Scalar;
    type Ctx: Clone + Debug + PartialEq + Send + Sync + 'static;
    type Mor: Morphism<S = Self::S, Obj = Self>;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    /// Total dimension over the ground field.
    fn dim(&self) -> usize;
    fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    fn direct_sum(ctx: &Self::Ctx, parts: &[Self]) -> Self;
    fn identity(&self) -> Self::Mor;
    fn zero_mor(&self, target: &Self) -> Self::Mor;
    /// A k-basis of Hom(self, target).
    fn hom_basis(&self, target: &Self) -> Vec<Self::Mor>;
    fn is_projective(&self) -> bool;
    /// An epimorphism from a projective object onto `self`.
    fn projective_cover(&self, kind: CoverKind) -> Self::Mor;

    /// Dimension of Hom(self, target) over k.
    fn hom_dim(&self, target: &Self) -> usize {
        self.hom_basis(target).len()
    }
}

pub trait Morphism: Clone + Debug + PartialEq + Send + Sync + 'static {
    type S: Scalar;
    type Obj: Object<S = Self::S, Mor = Self>;

    fn source(&self) -> &Self::Obj;
    fn target(&self) -> &Self::Obj;
    /// `self ∘ rhs`.
    fn compose(&self, rhs: &Self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Self::S) -> Self;
    /// Coordinates in the ambient space of all k-linear maps source → target;
    /// two morphisms with the same source and target are equal iff their
    /// coordinates are.
    fn coords(&self) -> Vec<Self::S>;
    /// Rank of the underlying k-linear map.
    fn rank(&self) -> usize;
    /// Mono into the source with image `ker self`.
    fn kernel(&self) -> Self;
    /// Epi out of the target with kernel `im self`.
    fn cokernel(&self) -> Self;
    /// The unique `g` with `mono ∘ g = self`, if the image of `self` lies in
    /// the image of `mono`.
    fn factor_through_mono(&self, mono: &Self) -> Option<Self>;
    /// The unique `g` with `g ∘ epi = self`, if `self` vanishes on `ker epi`.
    fn factor_through_epi(&self, epi: &Self) -> Option<Self>;

    fn neg(&self) -> Self {
        self.scale(&-Self::S::one())
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn is_zero(&self) -> bool {
        self.coords().iter().all(Scalar::is_zero)
    }
    fn is_epi(&self) -> bool {
        self.rank() == self.target().dim()
    }
    fn is_mono(&self) -> bool {
        self.rank() == self.source().dim()
    }
    fn is_iso(&self) -> bool {
        self.is_epi() && self.is_mono()
    }
    /// Mono into the target with the same image as `self`.
    fn image(&self) -> Self {
        self.cokernel().kernel()
    }
}

/// Matrix whose columns are the coordinate vectors of `mors`.
pub fn coord_matrix<M: Morphism>(ambient: usize, mors: &[M]) -> Matrix<M::S> {
    let cols: Vec<Vec<M::S>> = mors.iter().map(Morphism::coords).collect();
    Matrix::from_columns(ambient, &cols)
}

/// Coefficients `c` with `Σ c_j basis_j = target`, if any.
pub fn solve_combination<M: Morphism>(basis: &[M], target: &M) -> Option<Vec<M::S>> {
    let rhs = target.coords();
    let a = coord_matrix(rhs.len(), basis);
    let b = Matrix::from_columns(rhs.len(), &[rhs]);
    let sol = a.solve(&b).ok()??;
    Some(sol.particular.column(0))
}

/// `Σ c_j basis_j`, or `zero` when the basis is empty.
pub fn combine<M: Morphism>(zero: &M, basis: &[M], coeffs: &[M::S]) -> M {
    let mut acc = zero.clone();
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Some `g: f.source → epi.source` with `epi ∘ g = f`.
pub fn lift_through_epi<M: Morphism>(f: &M, epi: &M) -> Option<M> {
    let basis = f.source().hom_basis(epi.source());
    let images: Vec<M> = basis.iter().map(|b| epi.compose(b)).collect();
    let c = solve_combination(&images, f)?;
    Some(combine(&f.source().zero_mor(epi.source()), &basis, &c))
}

/// Some `g: f.target → mono.target` with `g ∘ mono = f`.
pub fn extend_through_mono<M: Morphism>(f: &M, mono: &M) -> Option<M> {
    let basis = mono.target().hom_basis(f.target());
    let images: Vec<M> = basis.iter().map(|b| b.compose(mono)).collect();
    let c = solve_combination(&images, f)?;
    Some(combine(&mono.target().zero_mor(f.target()), &basis, &c))
}

/// A section `s` with `f ∘ s = id`, if one exists.
pub fn section<M: Morphism>(f: &M) -> Option<M> {
    if !f.is_epi() {
        return None;
    }
    lift_through_epi(&f.target().identity(), f)
}

/// A retraction `r` with `r ∘ f = id`, if one exists.
pub fn retraction<M: Morphism>(f: &M) -> Option<M> {
    if !f.is_mono() {
        return None;
    }
    extend_through_mono(&f.source().identity(), f)
}

pub fn is_split_epi<M: Morphism>(f: &M) -> bool {
    section(f).is_some()
}

pub fn is_split_mono<M: Morphism>(f: &M) -> bool {
    retraction(f).is_some()
}

/// Canonical inclusions and projections of `parts` into `⊕ parts`.
pub struct Biproduct<O: Object> {
    pub sum: O,
    pub injections: Vec<O::Mor>,
    pub projections: Vec<O::Mor>,
}

/// Types that can assemble block morphisms between direct sums.
pub trait Blocks: Object {
    /// The morphism `⊕ sources → ⊕ targets` whose (row, col) block is
    /// `block(row, col)` (`None` meaning zero).
    fn block_morphism(
        ctx: &Self::Ctx,
        sources: &[Self],
        targets: &[Self],
        block: &dyn Fn(usize, usize) -> Option<Self::Mor>,
    ) -> Self::Mor;

    fn biproduct(ctx: &Self::Ctx, parts: &[Self]) -> Biproduct<Self> {
        let sum = Self::direct_sum(ctx, parts);
        let injections = (0..parts.len())
            .map(|k| {
                Self::block_morphism(ctx, &parts[k..k + 1], parts, &|r, _| (r == k).then(|| parts[k].identity()))
            })
            .collect();
        let projections = (0..parts.len())
            .map(|k| {
                Self::block_morphism(ctx, parts, &parts[k..k + 1], &|_, c| (c == k).then(|| parts[k].identity()))
            })
            .collect();
        Biproduct { sum, injections, projections }
    }

    /// `(f_0, f_1, ...)ᵀ: X → ⊕ Y_j`.
    fn column(source: &Self, parts: &[Self::Mor]) -> Self::Mor {
        let targets: Vec<Self> = parts.iter().map(|m| m.target().clone()).collect();
        Self::block_morphism(&source.ctx(), std::slice::from_ref(source), &targets, &|r, _| Some(parts[r].clone()))
    }

    /// `(f_0, f_1, ...): ⊕ X_j → Y`.
    fn row(target: &Self, parts: &[Self::Mor]) -> Self::Mor {
        let sources: Vec<Self> = parts.iter().map(|m| m.source().clone()).collect();
        Self::block_morphism(&target.ctx(), &sources, std::slice::from_ref(target), &|_, c| Some(parts[c].clone()))
    }

    fn diagonal(parts: &[Self::Mor], ctx: &Self::Ctx) -> Self::Mor {
        let sources: Vec<Self> = parts.iter().map(|m| m.source().clone()).collect();
        let targets: Vec<Self> = parts.iter().map(|m| m.target().clone()).collect();
        Self::block_morphism(ctx, &sources, &targets, &|r, c| (r == c).then(|| parts[r].clone()))
    }
}
