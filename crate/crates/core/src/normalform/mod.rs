//! Normal forms for the preset categories, basis enumeration and structure
//! constants of endomorphism algebras.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::dsl::render_diagram;
use crate::diagram::{Diagram, DiagramError, LinearCombination, Obj, Word};
use crate::presentation::{Presentation, Strategy};
use crate::scalar::{rat, Scalar, ScalarError};

mod affine;
mod braid;
mod hecke;
mod perm;
pub mod rewrite;
mod tl;

pub use affine::TokenDottedPerm;
pub use hecke::HeckeElem;
pub use perm::Permutation;
pub use tl::PlanarMatching;

/// Dot degree bound used when a caller supplies none.
pub const DEFAULT_DEGREE: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("strategy {strategy} does not support hom-space {dom} -> {cod}")]
    Unsupported {
        strategy: &'static str,
        dom: Word,
        cod: Word,
    },
    #[error("strategy {strategy} has no rule for generator `{gen}`")]
    UnsupportedGenerator { strategy: &'static str, gen: String },
    #[error("token label `{0}` is not a basis element of the Frobenius algebra")]
    UnknownToken(String),
    #[error("strategy {0} has no finite basis")]
    NoBasis(&'static str),
    #[error("strand counts differ: {0} and {1}")]
    StrandMismatch(usize, usize),
    #[error("basis element does not belong to strategy {0}")]
    WrongKind(&'static str),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A distinguished basis element of some hom-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// Permutations (S), dotted permutations (AH^dg), token permutations
    /// (W(A)) and token-dotted permutations (AW(A)).
    Affine(TokenDottedPerm),
    /// `T_w` in the Hecke algebra.
    Hecke(Permutation),
    Matching(PlanarMatching),
}

impl BasisElement {
    pub fn strands(&self) -> usize {
        match self {
            BasisElement::Affine(k) => k.strands(),
            BasisElement::Hecke(w) => w.len(),
            BasisElement::Matching(m) => m.bottom(),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Affine(k) => {
                write!(f, "{}", k.perm)?;
                if k.exps.iter().any(|&e| e > 0) {
                    let e: Vec<String> = k.exps.iter().map(|e| e.to_string()).collect();
                    write!(f, " x({})", e.join(","))?;
                }
                Ok(())
            }
            BasisElement::Hecke(w) => write!(f, "T{}", w),
            BasisElement::Matching(m) => write!(f, "{}", m),
        }
    }
}

fn is_up_word(w: &Word) -> bool {
    w.iter().all(|&o| o == Obj::Up)
}

fn supports(p: &Presentation, dom: &Word, cod: &Word) -> Result<(), NormalizeError> {
    let ok = match p.strategy() {
        Strategy::Ob => false,
        Strategy::Tl => (dom.len() + cod.len()) % 2 == 0,
        _ => dom == cod && is_up_word(dom),
    };
    if ok {
        Ok(())
    } else {
        Err(NormalizeError::Unsupported {
            strategy: p.strategy().as_str(),
            dom: dom.clone(),
            cod: cod.clone(),
        })
    }
}

/// Expands a single diagram in the basis of its hom-space.
fn expand(p: &Presentation, d: &Diagram) -> Result<Vec<(BasisElement, Scalar)>, NormalizeError> {
    supports(p, d.dom(), d.cod())?;
    let params = p.params();
    Ok(match p.strategy() {
        Strategy::Sym | Strategy::Daha | Strategy::Wreath | Strategy::AWreath => {
            affine::Engine::new(p)
                .fold(d)?
                .into_iter()
                .map(|(k, c)| (BasisElement::Affine(k), c))
                .collect()
        }
        Strategy::Hecke => hecke::fold(p, d)?
            .coeffs
            .into_iter()
            .map(|(w, c)| (BasisElement::Hecke(w), c))
            .collect(),
        Strategy::Tl => {
            let (m, loops) = tl::fold(p, d)?;
            let delta = Scalar::param_pow(params, "delta", loops as i32)?;
            vec![(BasisElement::Matching(m), delta)]
        }
        Strategy::BraidFree | Strategy::Ob => unreachable!("handled by caller"),
    })
}

/// The basis diagram of an element.
pub fn embed(p: &Presentation, e: &BasisElement) -> Result<Diagram, NormalizeError> {
    let kind = p.strategy().as_str();
    match (p.strategy(), e) {
        (Strategy::Sym | Strategy::Daha | Strategy::Wreath | Strategy::AWreath, BasisElement::Affine(k)) => {
            let engine = affine::Engine::new(p);
            if k.tokens.iter().any(|&t| t >= engine.alg.dim())
                || (p.generator("x").is_none() && k.exps.iter().any(|&x| x > 0))
            {
                return Err(NormalizeError::WrongKind(kind));
            }
            Ok(engine.embed(k))
        }
        (Strategy::Hecke, BasisElement::Hecke(w)) => Ok(hecke::embed(p, w)),
        (Strategy::Tl, BasisElement::Matching(m)) => Ok(tl::embed(p, m)),
        _ => Err(NormalizeError::WrongKind(kind)),
    }
}

/// Rewrites every term into the distinguished basis of its hom-space.
pub fn normalize(p: &Presentation, f: &LinearCombination) -> Result<LinearCombination, NormalizeError> {
    supports_or_braid(p, f.dom(), f.cod())?;
    let mut out = LinearCombination::zero(f.dom().clone(), f.cod().clone(), p.params());
    for (d, c) in f.terms() {
        if p.strategy() == Strategy::BraidFree {
            out.add_term(braid::reduce(p, d)?, c.clone())?;
            continue;
        }
        for (e, v) in expand(p, d)? {
            out.add_term(embed(p, &e)?, &v * c)?;
        }
    }
    Ok(out)
}

fn supports_or_braid(p: &Presentation, dom: &Word, cod: &Word) -> Result<(), NormalizeError> {
    if p.strategy() == Strategy::BraidFree {
        if dom == cod && is_up_word(dom) {
            return Ok(());
        }
        return Err(NormalizeError::Unsupported {
            strategy: p.strategy().as_str(),
            dom: dom.clone(),
            cod: cod.clone(),
        });
    }
    supports(p, dom, cod)
}

/// Coordinates of `f` in the basis of its hom-space.
pub fn coordinates(p: &Presentation, f: &LinearCombination) -> Result<BTreeMap<BasisElement, Scalar>, NormalizeError> {
    if p.strategy() == Strategy::BraidFree {
        return Err(NormalizeError::NoBasis(p.strategy().as_str()));
    }
    supports(p, f.dom(), f.cod())?;
    let mut out: BTreeMap<BasisElement, Scalar> = BTreeMap::new();
    for (d, c) in f.terms() {
        for (e, v) in expand(p, d)? {
            let v = &v * c;
            let sum = match out.get(&e) {
                Some(old) => old + &v,
                None => v,
            };
            if sum.is_zero() {
                out.remove(&e);
            } else {
                out.insert(e, sum);
            }
        }
    }
    Ok(out)
}

/// Basis of `End(↑^n)` (or `End(X^n)` for TL), in the documented order:
/// permutation lexicographic, then dot exponents, then token labels.
pub fn basis(p: &Presentation, n: usize, degree: Option<u32>) -> Result<Vec<BasisElement>, NormalizeError> {
    match p.strategy() {
        Strategy::Sym | Strategy::Daha | Strategy::Wreath | Strategy::AWreath => {
            let engine = affine::Engine::new(p);
            let degree = match p.strategy() {
                Strategy::Daha | Strategy::AWreath => Some(degree.unwrap_or(DEFAULT_DEGREE)),
                _ => None,
            };
            Ok(engine.basis(n, degree).into_iter().map(BasisElement::Affine).collect())
        }
        Strategy::Hecke => Ok(Permutation::all(n).into_iter().map(BasisElement::Hecke).collect()),
        Strategy::Tl => Ok(PlanarMatching::all(n, n).into_iter().map(BasisElement::Matching).collect()),
        Strategy::BraidFree | Strategy::Ob => Err(NormalizeError::NoBasis(p.strategy().as_str())),
    }
}

/// Basis of a TL hom-space `X^bottom -> X^top`.
pub fn tl_hom_basis(bottom: usize, top: usize) -> Vec<BasisElement> {
    PlanarMatching::all(bottom, top)
        .into_iter()
        .map(BasisElement::Matching)
        .collect()
}

pub fn hom_dim(p: &Presentation, n: usize, degree: Option<u32>) -> Result<usize, NormalizeError> {
    Ok(basis(p, n, degree)?.len())
}

/// `a · b`, i.e. `a` stacked on top of `b`, normalized.
pub fn multiply(p: &Presentation, a: &BasisElement, b: &BasisElement) -> Result<BTreeMap<BasisElement, Scalar>, NormalizeError> {
    if a.strands() != b.strands() {
        return Err(NormalizeError::StrandMismatch(a.strands(), b.strands()));
    }
    let da = embed(p, a)?;
    let db = embed(p, b)?;
    let prod = LinearCombination::from_diagram(da.compose(&db)?, p.params());
    coordinates(p, &prod)
}

/// Sparse multiplication table: `(i, j) -> [(k, c)]` with `b_i b_j = Σ c b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub basis: Vec<BasisElement>,
    pub table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    /// Set when a product left a degree-truncated basis; those terms are
    /// dropped from the table.
    pub truncated: bool,
}

impl StructureConstants {
    pub fn compute(p: &Presentation, n: usize, degree: Option<u32>) -> Result<StructureConstants, NormalizeError> {
        let basis = basis(p, n, degree)?;
        let index: BTreeMap<&BasisElement, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut table = BTreeMap::new();
        let mut truncated = false;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let prod = multiply(p, a, b)?;
                let mut row = Vec::new();
                for (e, c) in prod {
                    match index.get(&e) {
                        Some(&k) => row.push((k, c)),
                        None => truncated = true,
                    }
                }
                table.insert((i, j), row);
            }
        }
        Ok(StructureConstants {
            basis,
            table,
            truncated,
        })
    }

    pub fn to_json(&self, p: &Presentation, n: usize) -> serde_json::Value {
        let basis: Vec<String> = self
            .basis
            .iter()
            .map(|b| embed(p, b).map(|d| render_diagram(&d)).unwrap_or_default())
            .collect();
        let table: Vec<serde_json::Value> = self
            .table
            .iter()
            .filter(|(_, row)| !row.is_empty())
            .map(|((i, j), row)| {
                serde_json::json!({
                    "i": i,
                    "j": j,
                    "terms": row.iter().map(|(k, c)| serde_json::json!([k, c.to_string()])).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "preset": p.id().as_str(),
            "n": n,
            "basis": basis,
            "table": table,
            "truncated": self.truncated,
        })
    }
}

/// Result of comparing the Hecke table at `z = 0` with the symmetric group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationReport {
    pub n: usize,
    pub products: usize,
    pub mismatches: Vec<(Permutation, Permutation)>,
}

impl SpecializationReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every product `T_u T_v` at `z = 0` with `u ∘ v` in `S_n`.
pub fn specialize_hecke_to_sym(hecke: &Presentation, sym: &Presentation, n: usize) -> Result<SpecializationReport, NormalizeError> {
    let at_zero: BTreeMap<String, _> = [("z".to_string(), rat(0))].into_iter().collect();
    let perms = Permutation::all(n);
    let mut mismatches = Vec::new();
    for u in &perms {
        for v in &perms {
            let h = multiply(hecke, &BasisElement::Hecke(u.clone()), &BasisElement::Hecke(v.clone()))?;
            let mut h0: BTreeMap<Permutation, Scalar> = BTreeMap::new();
            for (e, c) in h {
                let BasisElement::Hecke(w) = e else { unreachable!() };
                let c0 = c.substitute(&at_zero)?;
                if !c0.is_zero() {
                    h0.insert(w, Scalar::constant(sym.params(), c0.as_rational().expect("z substituted")));
                }
            }
            let su = sym_element(u);
            let sv = sym_element(v);
            let s = multiply(sym, &su, &sv)?;
            let s: BTreeMap<Permutation, Scalar> = s
                .into_iter()
                .map(|(e, c)| match e {
                    BasisElement::Affine(k) => (k.perm, c),
                    _ => unreachable!(),
                })
                .collect();
            if h0 != s {
                mismatches.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(SpecializationReport {
        n,
        products: perms.len() * perms.len(),
        mismatches,
    })
}

/// The S basis element of a permutation.
pub fn sym_element(w: &Permutation) -> BasisElement {
    let n = w.len();
    BasisElement::Affine(TokenDottedPerm {
        perm: w.clone(),
        exps: vec![0; n],
        tokens: vec![0; n],
    })
}
