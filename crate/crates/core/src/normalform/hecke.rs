//! Iwahori–Hecke algebra in the T-basis, reached by folding a diagram into a
//! word of crossings and inverse crossings.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::perm::Permutation;
use super::NormalizeError;
use crate::diagram::{Diagram, Payload, Slice, Word};
use crate::presentation::Presentation;
use crate::scalar::{ParamSet, Scalar};

/// `Σ_w c_w T_w` with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElem {
    pub coeffs: BTreeMap<Permutation, Scalar>,
}

impl HeckeElem {
    pub fn basis_element(w: Permutation, params: &Arc<ParamSet>) -> HeckeElem {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, Scalar::one(params));
        HeckeElem { coeffs }
    }

    fn add(&mut self, w: Permutation, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.coeffs.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(w, c);
            }
        }
    }

    /// `T_{s_i} · self`, using `T_s T_w = T_{sw}` when the length goes up and
    /// `T_s T_w = z T_w + T_{sw}` otherwise.
    pub fn left_mul_simple(&self, i: usize, z: &Scalar) -> HeckeElem {
        let mut out = HeckeElem {
            coeffs: BTreeMap::new(),
        };
        for (w, c) in &self.coeffs {
            let sw = w.left_mul_simple(i);
            if w.has_left_descent(i) {
                out.add(w.clone(), c * z);
            }
            out.add(sw, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElem {
        let mut out = HeckeElem {
            coeffs: BTreeMap::new(),
        };
        for (w, v) in &self.coeffs {
            out.add(w.clone(), v * c);
        }
        out
    }

    pub fn plus(&self, other: &HeckeElem) -> HeckeElem {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add(w.clone(), c.clone());
        }
        out
    }
}

pub(crate) fn fold(p: &Presentation, d: &Diagram) -> Result<HeckeElem, NormalizeError> {
    let params = p.params();
    let z = Scalar::param(params, "z").expect("hecke presentation has z");
    let mut state = HeckeElem::basis_element(Permutation::identity(d.dom().len()), params);
    for slice in d.slices() {
        state = match slice.gen.payload {
            Payload::Crossing => state.left_mul_simple(slice.offset, &z),
            // σ⁻¹ = σ - z
            Payload::InverseCrossing => state
                .left_mul_simple(slice.offset, &z)
                .plus(&state.scale(&-&z)),
            _ => {
                return Err(NormalizeError::UnsupportedGenerator {
                    strategy: p.strategy().as_str(),
                    gen: slice.gen.display_name(),
                })
            }
        };
    }
    Ok(state)
}

/// `T_w` as a reduced word of positive crossings.
pub(crate) fn embed(p: &Presentation, w: &Permutation) -> Diagram {
    let s = p.generator("s").expect("crossing generator");
    let slices = w.reduced_word().into_iter().map(|k| Slice::new(k, &s)).collect();
    Diagram::from_slices(Word::up(w.len()), slices).expect("reduced word type-checks")
}
