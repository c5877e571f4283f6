//! Finite-dimensional modules over A = k[x]/(xⁿ), presented as a vector space
//! with a nilpotent operator N (the action of x).

use crate::category::{Blocks, CoverKind, Morphism, Object};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{get_usize, matrix_from_json, matrix_to_json};
use crate::linalg::{Matrix, Scalar};

/// The algebra k[x]/(xⁿ); the field is the scalar type parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseAlgebra {
    pub nil: usize,
}

impl BaseAlgebra {
    pub fn new(nil: usize) -> Result<Self> {
        if nil == 0 {
            return Err(Error::Precondition("nil index must be at least 1".into()));
        }
        Ok(BaseAlgebra { nil })
    }

    pub fn is_field(&self) -> bool {
        self.nil == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AModule<S: Scalar> {
    alg: BaseAlgebra,
    op: Matrix<S>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMorphism<S: Scalar> {
    source: AModule<S>,
    target: AModule<S>,
    mat: Matrix<S>,
}

/// Jordan block with ones on the subdiagonal: basis 1, x, ..., x^{m-1}.
pub fn jordan_block<S: Scalar>(m: usize) -> Matrix<S> {
    Matrix::from_fn(m, m, |i, j| if i == j + 1 { S::one() } else { S::zero() })
}

impl<S: Scalar> AModule<S> {
    pub fn new(alg: BaseAlgebra, op: Matrix<S>) -> Result<Self> {
        if !op.is_square() {
            return Err(Error::Shape(format!("module operator must be square, got {:?}", op.shape())));
        }
        if !op.pow(alg.nil).is_zero() {
            return Err(Error::NotNilpotent(alg.nil));
        }
        Ok(AModule { alg, op })
    }

    pub(crate) fn new_unchecked(alg: BaseAlgebra, op: Matrix<S>) -> Self {
        debug_assert!(op.is_square() && op.pow(alg.nil).is_zero());
        AModule { alg, op }
    }

    /// The free module A^r.
    pub fn free(alg: BaseAlgebra, r: usize) -> Self {
        let block = jordan_block::<S>(alg.nil);
        let blocks: Vec<&Matrix<S>> = (0..r).map(|_| &block).collect();
        AModule { alg, op: Matrix::block_diag(&blocks) }
    }

    /// k^d with zero action (d copies of the simple module).
    pub fn trivial(alg: BaseAlgebra, d: usize) -> Self {
        AModule { alg, op: Matrix::zeros(d, d) }
    }

    /// The cyclic module k[x]/(x^m), m ≤ n.
    pub fn cyclic(alg: BaseAlgebra, m: usize) -> Self {
        assert!(m <= alg.nil, "cyclic length exceeds nil index");
        AModule { alg, op: jordan_block(m) }
    }

    pub fn alg(&self) -> BaseAlgebra {
        self.alg
    }

    pub fn op(&self) -> &Matrix<S> {
        &self.op
    }

    /// Dimension of the top M / NM, the number of generators.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.op.rank()
    }

    /// Self-injectivity of k[x]/(xⁿ): injective and projective modules coincide.
    pub fn is_injective(&self) -> bool {
        self.is_projective()
    }

    pub fn to_json(&self) -> Value {
        json!({"dim": self.dim(), "op": matrix_to_json(&self.op)})
    }

    /// `{"dim": d, "op": [[...]]}`; a missing `op` means the zero operator.
    pub fn from_json(v: &Value, alg: BaseAlgebra, path: &str) -> Result<Self> {
        let d = get_usize(v, "dim", path)?;
        let op = match v.get("op") {
            None => Matrix::zeros(d, d),
            Some(o) => matrix_from_json(o, d, d, &format!("{path}.op"))?,
        };
        AModule::new(alg, op).map_err(|e| match e {
            Error::NotNilpotent(n) => Error::schema(format!("{path}.op"), format!("operator is not nilpotent of index {n}")),
            e => e,
        })
    }

    /// Sizes of the Jordan blocks of N, decreasing.
    pub fn jordan_type(&self) -> Vec<usize> {
        let d = self.dim();
        let mut ranks = vec![d];
        let mut p = Matrix::identity(d);
        for _ in 0..self.alg.nil {
            p = p.mul(&self.op);
            ranks.push(p.rank());
        }
        // number of blocks of size ≥ i is rank(N^{i-1}) - rank(N^i)
        let mut at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        at_least.push(0);
        let mut out = Vec::new();
        for i in (1..=self.alg.nil).rev() {
            let exactly = at_least[i - 1] - at_least[i];
            out.extend(std::iter::repeat(i).take(exactly));
        }
        out
    }
}

impl<S: Scalar> ModMorphism<S> {
    pub fn new(source: &AModule<S>, target: &AModule<S>, mat: Matrix<S>) -> Result<Self> {
        if source.alg != target.alg {
            return Err(Error::BaseMismatch(format!("nil indices {} and {}", source.alg.nil, target.alg.nil)));
        }
        if mat.shape() != (target.dim(), source.dim()) {
            return Err(Error::Shape(format!(
                "morphism matrix is {:?}, expected {}x{}",
                mat.shape(),
                target.dim(),
                source.dim()
            )));
        }
        if mat.mul(&source.op) != target.op.mul(&mat) {
            return Err(Error::NotMorphism("matrix does not commute with the module operators".into()));
        }
        Ok(ModMorphism { source: source.clone(), target: target.clone(), mat })
    }

    pub(crate) fn new_unchecked(source: &AModule<S>, target: &AModule<S>, mat: Matrix<S>) -> Self {
        debug_assert_eq!(mat.shape(), (target.dim(), source.dim()));
        debug_assert!(mat.mul(&source.op) == target.op.mul(&mat), "not A-linear");
        ModMorphism { source: source.clone(), target: target.clone(), mat }
    }

    pub fn mat(&self) -> &Matrix<S> {
        &self.mat
    }
}

/// Basis of the solutions F (rows×cols, row-major) of F·N₁ = N₂·F.
pub(crate) fn intertwiner_basis<S: Scalar>(n1: &Matrix<S>, n2: &Matrix<S>) -> Vec<Matrix<S>> {
    let (d2, d1) = (n2.rows(), n1.rows());
    if d1 == 0 || d2 == 0 {
        return Vec::new();
    }
    if n1.is_zero() && n2.is_zero() {
        return (0..d2 * d1)
            .map(|k| Matrix::from_fn(d2, d1, |i, j| if i * d1 + j == k { S::one() } else { S::zero() }))
            .collect();
    }
    let m = d2 * d1;
    let mut sys = Matrix::<S>::zeros(m, m);
    for i in 0..d2 {
        for j in 0..d1 {
            let row = i * d1 + j;
            for k in 0..d1 {
                let c = n1.get(k, j);
                if !c.is_zero() {
                    let col = i * d1 + k;
                    sys.set(row, col, sys.get(row, col).clone() + c.clone());
                }
            }
            for k in 0..d2 {
                let c = n2.get(i, k);
                if !c.is_zero() {
                    let col = k * d1 + j;
                    sys.set(row, col, sys.get(row, col).clone() - c.clone());
                }
            }
        }
    }
    let ker = sys.kernel_basis();
    (0..ker.cols()).map(|c| Matrix::from_vec(d2, d1, ker.column(c))).collect()
}

impl<S: Scalar> Object for AModule<S> {
    type S = S;
    type Ctx = BaseAlgebra;
    type Mor = ModMorphism<S>;

    fn ctx(&self) -> BaseAlgebra {
        self.alg
    }

    fn zero(ctx: &BaseAlgebra) -> Self {
        AModule { alg: *ctx, op: Matrix::zeros(0, 0) }
    }

    fn dim(&self) -> usize {
        self.op.rows()
    }

    fn direct_sum(ctx: &BaseAlgebra, parts: &[Self]) -> Self {
        let ops: Vec<&Matrix<S>> = parts.iter().map(|p| &p.op).collect();
        AModule { alg: *ctx, op: Matrix::block_diag(&ops) }
    }

    fn identity(&self) -> ModMorphism<S> {
        ModMorphism { source: self.clone(), target: self.clone(), mat: Matrix::identity(self.dim()) }
    }

    fn zero_mor(&self, target: &Self) -> ModMorphism<S> {
        ModMorphism { source: self.clone(), target: target.clone(), mat: Matrix::zeros(target.dim(), self.dim()) }
    }

    fn hom_basis(&self, target: &Self) -> Vec<ModMorphism<S>> {
        assert_eq!(self.alg, target.alg, "hom between modules over different algebras");
        intertwiner_basis(&self.op, &target.op)
            .into_iter()
            .map(|mat| ModMorphism { source: self.clone(), target: target.clone(), mat })
            .collect()
    }

    /// Free ⟺ rank(Nⁱ) = dim·(n−i)/n for all i.
    fn is_projective(&self) -> bool {
        let (d, n) = (self.dim(), self.alg.nil);
        if d % n != 0 {
            return false;
        }
        let mut p = Matrix::identity(d);
        for i in 0..=n {
            if p.rank() != d * (n - i) / n {
                return false;
            }
            p = p.mul(&self.op);
        }
        true
    }

    fn projective_cover(&self, kind: CoverKind) -> ModMorphism<S> {
        let top = self.op.cokernel_projection();
        let gens: Vec<usize> = top.echelon().pivots;
        let mut images: Vec<Vec<S>> = gens
            .iter()
            .map(|&p| (0..self.dim()).map(|i| if i == p { S::one() } else { S::zero() }).collect())
            .collect();
        if kind == CoverKind::Redundant {
            let extra = images.first().cloned().unwrap_or_default();
            images.push(extra);
        }
        free_map(self, &images)
    }
}

/// The A-linear map A^r → M sending the j-th generator to `images[j]`.
pub fn free_map<S: Scalar>(target: &AModule<S>, images: &[Vec<S>]) -> ModMorphism<S> {
    let n = target.alg.nil;
    let source = AModule::free(target.alg, images.len());
    let mut cols = Vec::with_capacity(images.len() * n);
    for img in images {
        let mut v = if img.is_empty() { vec![S::zero(); target.dim()] } else { img.clone() };
        for _ in 0..n {
            let next = target.op.mul_vec(&v);
            cols.push(std::mem::replace(&mut v, next));
        }
    }
    let mat = Matrix::from_columns(target.dim(), &cols);
    ModMorphism::new_unchecked(&source, target, mat)
}

impl<S: Scalar> Morphism for ModMorphism<S> {
    type S = S;
    type Obj = AModule<S>;

    fn source(&self) -> &AModule<S> {
        &self.source
    }

    fn target(&self) -> &AModule<S> {
        &self.target
    }

    fn compose(&self, rhs: &Self) -> Self {
        debug_assert_eq!(rhs.target, self.source, "composition of non-composable module maps");
        ModMorphism { source: rhs.source.clone(), target: self.target.clone(), mat: self.mat.mul(&rhs.mat) }
    }

    fn add(&self, rhs: &Self) -> Self {
        ModMorphism { source: self.source.clone(), target: self.target.clone(), mat: self.mat.add(&rhs.mat) }
    }

    fn scale(&self, c: &S) -> Self {
        ModMorphism { source: self.source.clone(), target: self.target.clone(), mat: self.mat.scale(c) }
    }

    fn coords(&self) -> Vec<S> {
        self.mat.data().to_vec()
    }

    fn rank(&self) -> usize {
        self.mat.rank()
    }

    fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    fn kernel(&self) -> Self {
        let k = self.mat.kernel_basis();
        let n1 = &self.source.op;
        let nk = k.solve(&n1.mul(&k)).expect("shapes agree").expect("kernel is N-stable").particular;
        let km = AModule::new_unchecked(self.source.alg, nk);
        ModMorphism { source: km, target: self.source.clone(), mat: k }
    }

    fn cokernel(&self) -> Self {
        let q = self.mat.cokernel_projection();
        let n2 = &self.target.op;
        let nc = q
            .transpose()
            .solve(&q.mul(n2).transpose())
            .expect("shapes agree")
            .expect("image is N-stable")
            .particular
            .transpose();
        let cm = AModule::new_unchecked(self.target.alg, nc);
        ModMorphism { source: self.target.clone(), target: cm, mat: q }
    }

    fn factor_through_mono(&self, mono: &Self) -> Option<Self> {
        let sol = mono.mat.solve(&self.mat).ok()??;
        Some(ModMorphism { source: self.source.clone(), target: mono.source.clone(), mat: sol.particular })
    }

    fn factor_through_epi(&self, epi: &Self) -> Option<Self> {
        let sol = epi.mat.transpose().solve(&self.mat.transpose()).ok()??;
        Some(ModMorphism { source: epi.target.clone(), target: self.target.clone(), mat: sol.particular.transpose() })
    }
}

impl<S: Scalar> Blocks for AModule<S> {
    fn block_morphism(
        ctx: &BaseAlgebra,
        sources: &[Self],
        targets: &[Self],
        block: &dyn Fn(usize, usize) -> Option<ModMorphism<S>>,
    ) -> ModMorphism<S> {
        let source = Self::direct_sum(ctx, sources);
        let target = Self::direct_sum(ctx, targets);
        let mut mat = Matrix::zeros(target.dim(), source.dim());
        let mut r0 = 0;
        for (r, t) in targets.iter().enumerate() {
            let mut c0 = 0;
            for (c, s) in sources.iter().enumerate() {
                if let Some(b) = block(r, c) {
                    debug_assert_eq!(b.mat.shape(), (t.dim(), s.dim()));
                    mat.paste(r0, c0, &b.mat);
                }
                c0 += s.dim();
            }
            r0 += t.dim();
        }
        ModMorphism { source, target, mat }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{is_split_epi, is_split_mono};
    use crate::linalg::{Gf2, Gf3, Rational};
    use proptest::prelude::*;

    fn alg(n: usize) -> BaseAlgebra {
        BaseAlgebra::new(n).unwrap()
    }

    #[test]
    fn hom_dimensions() {
        let a = AModule::<Gf2>::free(alg(2), 1);
        let k = AModule::<Gf2>::trivial(alg(2), 1);
        assert_eq!(a.hom_dim(&k), 1);
        let f = alg(1);
        assert_eq!(AModule::<Rational>::trivial(f, 2).hom_dim(&AModule::trivial(f, 3)), 6);
        assert_eq!(a.hom_dim(&AModule::zero(&alg(2))), 0);
    }

    #[test]
    fn kernel_cokernel_examples() {
        let a = AModule::<Gf3>::free(alg(2), 1);
        assert_eq!(a.identity().kernel().source().dim(), 0);
        let z = AModule::zero(&alg(2));
        let c = z.zero_mor(&a).cokernel();
        assert_eq!(c.target().dim(), 2);
        assert!(c.is_iso());
        let x = ModMorphism::new(&a, &a, a.op().clone()).unwrap();
        let q = x.cokernel();
        assert_eq!(q.target().dim(), 1);
        assert!(q.target().op().is_zero());
    }

    #[test]
    fn projectivity() {
        let a = AModule::<Gf2>::free(alg(2), 1);
        assert!(a.is_projective());
        assert!(!AModule::<Gf2>::trivial(alg(2), 1).is_projective());
        assert!(!AModule::<Gf2>::trivial(alg(2), 2).is_projective());
        assert!(AModule::<Gf2>::trivial(alg(1), 3).is_projective());
    }

    #[test]
    fn projective_covers() {
        let z = AModule::<Gf2>::zero(&alg(2));
        assert_eq!(z.projective_cover(CoverKind::Minimal).source().dim(), 0);
        let a = AModule::<Gf2>::free(alg(2), 2);
        let c = a.projective_cover(CoverKind::Minimal);
        assert!(c.is_iso());
        let k = AModule::<Gf2>::trivial(alg(2), 1);
        let c = k.projective_cover(CoverKind::Minimal);
        assert_eq!(c.source(), &AModule::free(alg(2), 1));
        assert_eq!(c.mat(), &Matrix::from_i64(&[&[1, 0]]));
        let r = k.projective_cover(CoverKind::Redundant);
        assert_eq!(r.source().dim(), 4);
        assert!(r.is_epi());
    }

    #[test]
    fn split_tests() {
        let a = AModule::<Gf2>::free(alg(2), 1);
        assert!(is_split_epi(&a.identity()) && is_split_mono(&a.identity()));
        let k = AModule::<Gf2>::trivial(alg(2), 1);
        let q = k.projective_cover(CoverKind::Minimal);
        assert!(q.is_epi());
        assert!(!is_split_epi(&q));
        let z = AModule::zero(&alg(2));
        assert!(is_split_epi(&a.zero_mor(&z)));
    }

    #[test]
    fn jordan_types() {
        let m = AModule::<Gf2>::direct_sum(&alg(3), &[AModule::cyclic(alg(3), 3), AModule::cyclic(alg(3), 1)]);
        assert_eq!(m.jordan_type(), vec![3, 1]);
    }

    #[test]
    fn rejects_non_nilpotent() {
        assert!(matches!(AModule::<Gf2>::new(alg(2), Matrix::identity(1)), Err(Error::NotNilpotent(2))));
    }

    /// Modules over k[x]/(x²) over GF(3) as direct sums of A and k.
    fn module() -> impl Strategy<Value = AModule<Gf3>> {
        (0usize..3, 0usize..3, proptest::collection::vec(0i64..3, 36)).prop_map(|(a, b, g)| {
            let m = AModule::direct_sum(&alg(2), &[AModule::free(alg(2), a), AModule::trivial(alg(2), b)]);
            // conjugate by a random invertible matrix when one is drawn
            let d = m.dim();
            let p = Matrix::from_fn(d, d, |i, j| Gf3::new(g[(i * 6 + j) % 36]));
            match p.inverse() {
                Some(pi) => AModule::new(alg(2), p.mul(m.op()).mul(&pi)).unwrap(),
                None => m,
            }
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_image(m1 in module(), m2 in module(), seed in 0usize..64) {
            let basis = m1.hom_basis(&m2);
            prop_assume!(!basis.is_empty());
            let f = &basis[seed % basis.len()];
            let k = f.kernel();
            prop_assert!(f.compose(&k).is_zero());
            prop_assert_eq!(k.source().dim() + f.rank(), m1.dim());
            let im = f.image();
            prop_assert_eq!(im.source().dim(), f.rank());
            let c = f.cokernel();
            prop_assert!(c.compose(f).is_zero());
            prop_assert_eq!(c.target().dim() + f.rank(), m2.dim());
        }

        #[test]
        fn projective_iff_injective_and_split(m in module()) {
            let c = m.projective_cover(CoverKind::Minimal);
            prop_assert!(c.is_epi());
            prop_assert!(c.source().is_projective());
            prop_assert_eq!(c.source().dim(), 2 * m.top_dim());
            prop_assert!(c.compose(&c.kernel()).is_zero());
            prop_assert_eq!(is_split_epi(&c), m.is_projective());
            if is_split_epi(&c) { prop_assert!(c.is_epi()); }
        }
    }
}
