use std::collections::BTreeMap;

use super::{DecatError, GroupAlgebraElem};
use crate::diagram::{Diagram, LinearCombination, Word};
use crate::matrix::Matrix;
use crate::normalform::{basis, coordinates, embed, normalize, sym_element, BasisElement};
use crate::presentation::Presentation;
use crate::scalar::{rat, Scalar};

/// `(X, e)` with `e ∘ e = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KarObject {
    pub base: Word,
    pub idempotent: LinearCombination,
}

/// `(e, f, e′)` with `f = e′ ∘ f ∘ e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KarMorphism {
    pub source: KarObject,
    pub map: LinearCombination,
    pub target: KarObject,
}

/// The Karoubi envelope of a preset whose hom-spaces have normal forms;
/// morphisms are compared after normalization.
pub struct Karoubi<'a> {
    pres: &'a Presentation,
}

impl<'a> Karoubi<'a> {
    pub fn new(pres: &'a Presentation) -> Karoubi<'a> {
        Karoubi { pres }
    }

    fn equal(&self, a: &LinearCombination, b: &LinearCombination) -> Result<bool, DecatError> {
        Ok(normalize(self.pres, a)? == normalize(self.pres, b)?)
    }

    pub fn object(&self, base: Word, e: LinearCombination) -> Result<KarObject, DecatError> {
        if e.dom() != &base || e.cod() != &base {
            return Err(DecatError::IdempotentMismatch);
        }
        if !self.equal(&e.compose(&e)?, &e)? {
            return Err(DecatError::NotIdempotent);
        }
        Ok(KarObject {
            base,
            idempotent: normalize(self.pres, &e)?,
        })
    }

    /// `X ↦ (X, 1_X)`.
    pub fn embed(&self, base: Word) -> KarObject {
        let id = LinearCombination::from_diagram(Diagram::identity(base.clone()), self.pres.params());
        KarObject { base, idempotent: id }
    }

    pub fn morphism(&self, source: &KarObject, f: LinearCombination, target: &KarObject) -> Result<KarMorphism, DecatError> {
        let sandwich = target.idempotent.compose(&f)?.compose(&source.idempotent)?;
        if !self.equal(&sandwich, &f)? {
            return Err(DecatError::TripleCondition);
        }
        Ok(KarMorphism {
            source: source.clone(),
            map: normalize(self.pres, &f)?,
            target: target.clone(),
        })
    }

    /// The identity `(e, e, e)`.
    pub fn identity(&self, obj: &KarObject) -> KarMorphism {
        KarMorphism {
            source: obj.clone(),
            map: obj.idempotent.clone(),
            target: obj.clone(),
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &KarMorphism, f: &KarMorphism) -> Result<KarMorphism, DecatError> {
        if f.target != g.source {
            return Err(DecatError::IdempotentMismatch);
        }
        let map = normalize(self.pres, &g.map.compose(&f.map)?)?;
        self.morphism(&f.source, map, &g.target)
    }

    /// `dim e · End(X) · e`, by the rank of `{e b e}` over a basis of `End(X)`.
    pub fn end_dim(&self, obj: &KarObject, degree: Option<u32>) -> Result<usize, DecatError> {
        let n = obj.base.len();
        let full = basis(self.pres, n, degree)?;
        let index: BTreeMap<&BasisElement, usize> =
            full.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut rows = Vec::new();
        for b in &full {
            let d = LinearCombination::from_diagram(embed(self.pres, b)?, self.pres.params());
            let ebe = obj.idempotent.compose(&d)?.compose(&obj.idempotent)?;
            let mut row = vec![rat(0); full.len()];
            for (e, c) in coordinates(self.pres, &ebe)? {
                let Some(&k) = index.get(&e) else { continue };
                row[k] = c.as_rational().ok_or_else(|| DecatError::Parametric(c.to_string()))?;
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(rows)?.rank())
    }
}

/// A group algebra element as a combination of permutation diagrams in S.
pub fn group_element_lc(p: &Presentation, e: &GroupAlgebraElem) -> Result<LinearCombination, DecatError> {
    let mut out = LinearCombination::zero(Word::up(e.n()), Word::up(e.n()), p.params());
    for (w, c) in e.coeffs() {
        out.add_term(embed(p, &sym_element(w))?, Scalar::constant(p.params(), c.clone()))?;
    }
    Ok(out)
}
