//! Grothendieck group, trace and Chern character for `Vect`, the additive
//! envelope, Young idempotents and the Karoubi envelope.

use std::fmt::Debug;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, LinearCombination, Word};
use crate::matrix::{Matrix, MatrixError};
use crate::normalform::NormalizeError;
use crate::scalar::{ParamSet, Rational};

mod karoubi;
mod young;

pub use karoubi::{group_element_lc, KarMorphism, KarObject, Karoubi};
pub use young::{
    hook_length, induced_product_dim, partitions, row_reading_tableau, standard_tableaux, young_idempotent,
    GroupAlgebraElem, Partition, Tableau, YoungReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecatError {
    #[error("invalid partition `{0}`")]
    InvalidPartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("n = {0} is beyond the supported range")]
    TooLarge(usize),
    #[error("morphism is not idempotent")]
    NotIdempotent,
    #[error("idempotents do not match")]
    IdempotentMismatch,
    #[error("morphism does not satisfy f = e' ∘ f ∘ e")]
    TripleCondition,
    #[error("block ({row}, {col}) has the wrong type")]
    BlockType { row: usize, col: usize },
    #[error("coefficient `{0}` is not a rational number; assign the parameters first")]
    Parametric(String),
    #[error("formal sums have incompatible object lists")]
    ObjectMismatch,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// `Σ a_i dim V_i` for a formal combination of vector spaces.
pub fn k0_vect(items: &[(i64, usize)]) -> i64 {
    items.iter().map(|&(a, d)| a * d as i64).sum()
}

/// The class of an endomorphism in the trace of `Vect`, reduced to its
/// matrix trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceClass {
    pub representative: Matrix,
    pub reduced: Rational,
}

impl TraceClass {
    pub fn of(f: &Matrix) -> Result<TraceClass, DecatError> {
        Ok(TraceClass {
            reduced: f.trace()?,
            representative: f.clone(),
        })
    }

    /// Classes are equal exactly when the reduced traces agree.
    pub fn same_class(&self, other: &TraceClass) -> bool {
        self.reduced == other.reduced
    }
}

pub fn trace_vect(f: &Matrix) -> Result<Rational, DecatError> {
    Ok(f.trace()?)
}

/// `tr(f ⊕ g) = tr f + tr g`.
pub fn trace_sum_check(f: &Matrix, g: &Matrix) -> Result<bool, DecatError> {
    Ok(f.direct_sum(g).trace()? == f.trace()? + g.trace()?)
}

/// `[X] ↦ [1_X]`.
pub fn chern_vect(dim: usize) -> TraceClass {
    TraceClass::of(&Matrix::identity(dim)).expect("identity is square")
}

/// Morphisms of a linear category, as needed for formal direct sums.
pub trait AdditiveHom: Clone + PartialEq + Debug {
    type Obj: Clone + PartialEq + Debug;
    type Ctx;
    fn dom(&self) -> Self::Obj;
    fn cod(&self) -> Self::Obj;
    fn zero(ctx: &Self::Ctx, dom: &Self::Obj, cod: &Self::Obj) -> Self;
    fn identity(ctx: &Self::Ctx, obj: &Self::Obj) -> Self;
    /// `self ∘ below`.
    fn compose(&self, below: &Self) -> Result<Self, DecatError>;
    fn add(&self, other: &Self) -> Result<Self, DecatError>;
}

impl AdditiveHom for Matrix {
    type Obj = usize;
    type Ctx = ();
    fn dom(&self) -> usize {
        self.cols()
    }
    fn cod(&self) -> usize {
        self.rows()
    }
    fn zero(_: &(), dom: &usize, cod: &usize) -> Matrix {
        Matrix::zeros(*cod, *dom)
    }
    fn identity(_: &(), obj: &usize) -> Matrix {
        Matrix::identity(*obj)
    }
    fn compose(&self, below: &Matrix) -> Result<Matrix, DecatError> {
        Ok(self.checked_mul(below)?)
    }
    fn add(&self, other: &Matrix) -> Result<Matrix, DecatError> {
        Ok(self.checked_add(other)?)
    }
}

impl AdditiveHom for LinearCombination {
    type Obj = Word;
    type Ctx = Arc<ParamSet>;
    fn dom(&self) -> Word {
        LinearCombination::dom(self).clone()
    }
    fn cod(&self) -> Word {
        LinearCombination::cod(self).clone()
    }
    fn zero(ctx: &Arc<ParamSet>, dom: &Word, cod: &Word) -> LinearCombination {
        LinearCombination::zero(dom.clone(), cod.clone(), ctx)
    }
    fn identity(ctx: &Arc<ParamSet>, obj: &Word) -> LinearCombination {
        LinearCombination::from_diagram(Diagram::identity(obj.clone()), ctx)
    }
    fn compose(&self, below: &LinearCombination) -> Result<LinearCombination, DecatError> {
        Ok(LinearCombination::compose(self, below)?)
    }
    fn add(&self, other: &LinearCombination) -> Result<LinearCombination, DecatError> {
        Ok(LinearCombination::add(self, other)?)
    }
}

/// A morphism `⊕_i X_i -> ⊕_j Y_j` of the additive envelope, stored as the
/// matrix of its components; block `(j, i)` maps `X_i` to `Y_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSumMorphism<H: AdditiveHom> {
    sources: Vec<H::Obj>,
    targets: Vec<H::Obj>,
    blocks: Vec<Vec<H>>,
}

impl<H: AdditiveHom> FormalSumMorphism<H> {
    pub fn new(sources: Vec<H::Obj>, targets: Vec<H::Obj>, blocks: Vec<Vec<H>>) -> Result<Self, DecatError> {
        if blocks.len() != targets.len() {
            return Err(DecatError::ObjectMismatch);
        }
        for (j, row) in blocks.iter().enumerate() {
            if row.len() != sources.len() {
                return Err(DecatError::ObjectMismatch);
            }
            for (i, b) in row.iter().enumerate() {
                if b.dom() != sources[i] || b.cod() != targets[j] {
                    return Err(DecatError::BlockType { row: j, col: i });
                }
            }
        }
        Ok(FormalSumMorphism {
            sources,
            targets,
            blocks,
        })
    }

    /// A single morphism viewed as a `1 × 1` matrix.
    pub fn single(f: H) -> Self {
        FormalSumMorphism {
            sources: vec![f.dom()],
            targets: vec![f.cod()],
            blocks: vec![vec![f]],
        }
    }

    pub fn identity(ctx: &H::Ctx, objs: &[H::Obj]) -> Self {
        let blocks = (0..objs.len())
            .map(|j| {
                (0..objs.len())
                    .map(|i| {
                        if i == j {
                            H::identity(ctx, &objs[i])
                        } else {
                            H::zero(ctx, &objs[i], &objs[j])
                        }
                    })
                    .collect()
            })
            .collect();
        FormalSumMorphism {
            sources: objs.to_vec(),
            targets: objs.to_vec(),
            blocks,
        }
    }

    pub fn sources(&self) -> &[H::Obj] {
        &self.sources
    }

    pub fn targets(&self) -> &[H::Obj] {
        &self.targets
    }

    pub fn block(&self, row: usize, col: usize) -> &H {
        &self.blocks[row][col]
    }

    /// Matrix multiplication with composition of components.
    pub fn compose(&self, ctx: &H::Ctx, below: &Self) -> Result<Self, DecatError> {
        if below.targets != self.sources {
            return Err(DecatError::ObjectMismatch);
        }
        let mut blocks = Vec::new();
        for (j, row) in self.blocks.iter().enumerate() {
            let mut out_row = Vec::new();
            for i in 0..below.sources.len() {
                let mut acc = H::zero(ctx, &below.sources[i], &self.targets[j]);
                for (k, a) in row.iter().enumerate() {
                    acc = acc.add(&a.compose(&below.blocks[k][i])?)?;
                }
                out_row.push(acc);
            }
            blocks.push(out_row);
        }
        Ok(FormalSumMorphism {
            sources: below.sources.clone(),
            targets: self.targets.clone(),
            blocks,
        })
    }

    /// `f ⊕ g`, block diagonal.
    pub fn direct_sum(&self, ctx: &H::Ctx, other: &Self) -> Self {
        let sources: Vec<H::Obj> = self.sources.iter().chain(&other.sources).cloned().collect();
        let targets: Vec<H::Obj> = self.targets.iter().chain(&other.targets).cloned().collect();
        let (r1, c1) = (self.targets.len(), self.sources.len());
        let blocks = (0..targets.len())
            .map(|j| {
                (0..sources.len())
                    .map(|i| match (j < r1, i < c1) {
                        (true, true) => self.blocks[j][i].clone(),
                        (false, false) => other.blocks[j - r1][i - c1].clone(),
                        _ => H::zero(ctx, &sources[i], &targets[j]),
                    })
                    .collect()
            })
            .collect();
        FormalSumMorphism {
            sources,
            targets,
            blocks,
        }
    }

    /// Diagonal components of an endomorphism, whose classes sum to its trace.
    pub fn diagonal(&self) -> Result<Vec<H>, DecatError> {
        if self.sources != self.targets {
            return Err(DecatError::ObjectMismatch);
        }
        Ok((0..self.sources.len()).map(|i| self.blocks[i][i].clone()).collect())
    }
}

impl FormalSumMorphism<Matrix> {
    /// The ordinary matrix obtained by expanding the blocks.
    pub fn flatten(&self) -> Matrix {
        let rows: usize = self.targets.iter().sum();
        let cols: usize = self.sources.iter().sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for (j, row) in self.blocks.iter().enumerate() {
            let mut c0 = 0;
            for (i, b) in row.iter().enumerate() {
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        out.set(r0 + r, c0 + c, b.get(r, c).clone());
                    }
                }
                c0 += self.sources[i];
            }
            r0 += self.targets[j];
        }
        out
    }

    /// `Σ_i tr(f_ii)`.
    pub fn trace(&self) -> Result<Rational, DecatError> {
        self.diagonal()?
            .iter()
            .try_fold(Rational::from_integer(0.into()), |acc, b| Ok(acc + b.trace()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn vect_k0_and_chern() {
        assert_eq!(k0_vect(&[(1, 3)]), 3);
        assert_eq!(k0_vect(&[(2, 1), (-1, 2)]), 0);
        assert_eq!(chern_vect(5).reduced, rat(5));
        assert_eq!(chern_vect(0).reduced, rat(0));
        let sum = chern_vect(2).representative.direct_sum(&chern_vect(3).representative);
        assert_eq!(TraceClass::of(&sum).unwrap().reduced, chern_vect(2).reduced + chern_vect(3).reduced);
    }

    #[test]
    fn formal_sums_flatten_to_block_matrices() {
        let f = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let g = Matrix::from_ints(&[&[5]]);
        let fs = FormalSumMorphism::single(f.clone()).direct_sum(&(), &FormalSumMorphism::single(g.clone()));
        assert_eq!(fs.flatten(), f.direct_sum(&g));
        assert_eq!(fs.trace().unwrap(), rat(10));
        let sq = fs.compose(&(), &fs).unwrap();
        assert_eq!(sq.flatten(), &fs.flatten() * &fs.flatten());
        assert!(trace_sum_check(&f, &Matrix::zeros(0, 0)).unwrap());
    }
}
