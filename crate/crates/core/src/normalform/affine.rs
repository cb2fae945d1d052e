//! Shared engine for S, AH^dg, W(A) and AW(A): basis diagrams carry tokens
//! at the bottom, then dots, then a reduced-word permutation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::perm::Permutation;
use super::NormalizeError;
use crate::diagram::{Diagram, Payload, Slice};
use crate::presentation::Presentation;
use crate::scalar::{ParamSet, Rational, Scalar};

/// Tokens (Frobenius basis indices) at the bottom of each strand, dot
/// exponents above them, and the permutation on top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenDottedPerm {
    pub perm: Permutation,
    pub exps: Vec<u32>,
    pub tokens: Vec<usize>,
}

impl TokenDottedPerm {
    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

pub(crate) type State = BTreeMap<TokenDottedPerm, Scalar>;

/// Token algebra as seen by the engine. Presets without tokens use the
/// one-dimensional algebra whose single basis element is the unit.
pub(crate) struct TokenAlg {
    dim: usize,
    unit: Vec<Rational>,
    unit_index: Option<usize>,
    mult: Vec<Vec<Vec<Rational>>>,
    /// Terms `(b, q, c)` of `Σ_b b ⊗ b̌` written as `c · b ⊗ b_q`.
    casimir: Vec<(usize, usize, Rational)>,
    labels: Vec<String>,
}

impl TokenAlg {
    pub(crate) fn of(p: &Presentation) -> TokenAlg {
        match p.frobenius() {
            None => TokenAlg {
                dim: 1,
                unit: vec![Rational::one()],
                unit_index: Some(0),
                mult: vec![vec![vec![Rational::one()]]],
                casimir: vec![(0, 0, Rational::one())],
                labels: vec![String::new()],
            },
            Some(f) => {
                let d = f.data();
                let mut casimir = Vec::new();
                for b in 0..d.dim() {
                    for (q, c) in f.dual(b).iter().enumerate() {
                        if !c.is_zero() {
                            casimir.push((b, q, c.clone()));
                        }
                    }
                }
                TokenAlg {
                    dim: d.dim(),
                    unit: d.unit.clone(),
                    unit_index: d.unit_index(),
                    mult: d.mult.clone(),
                    casimir,
                    labels: d.labels.clone(),
                }
            }
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) struct Engine<'a> {
    pub(crate) pres: &'a Presentation,
    pub(crate) alg: TokenAlg,
    params: Arc<ParamSet>,
}

fn add_into(state: &mut State, key: TokenDottedPerm, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match state.get_mut(&key) {
        Some(v) => {
            let s = &*v + &c;
            if s.is_zero() {
                state.remove(&key);
            } else {
                *v = s;
            }
        }
        None => {
            state.insert(key, c);
        }
    }
}

impl<'a> Engine<'a> {
    pub(crate) fn new(pres: &'a Presentation) -> Engine<'a> {
        Engine {
            alg: TokenAlg::of(pres),
            params: pres.params().clone(),
            pres,
        }
    }

    fn constant(&self, q: &Rational) -> Scalar {
        Scalar::constant(&self.params, q.clone())
    }

    /// The identity on `n` strands, with the unit expanded in the token basis.
    pub(crate) fn identity(&self, n: usize) -> State {
        let mut state = State::new();
        state.insert(
            TokenDottedPerm {
                perm: Permutation::identity(n),
                exps: vec![0; n],
                tokens: vec![self.alg.unit_index.unwrap_or(0); n],
            },
            Scalar::one(&self.params),
        );
        if self.alg.unit_index.is_some() {
            return state;
        }
        for strand in 0..n {
            let mut next = State::new();
            for (key, c) in state {
                for (k, u) in self.alg.unit.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    let mut key2 = key.clone();
                    key2.tokens[strand] = k;
                    add_into(&mut next, key2, c.scale(u));
                }
            }
            state = next;
        }
        state
    }

    pub(crate) fn fold(&self, d: &Diagram) -> Result<State, NormalizeError> {
        let n = d.dom().len();
        let mut state = self.identity(n);
        for slice in d.slices() {
            state = self.apply(slice, &state)?;
        }
        Ok(state)
    }

    fn apply(&self, slice: &Slice, state: &State) -> Result<State, NormalizeError> {
        let mut out = State::new();
        match &slice.gen.payload {
            Payload::Crossing => {
                for (key, c) in state {
                    let mut k = key.clone();
                    k.perm = k.perm.left_mul_simple(slice.offset);
                    add_into(&mut out, k, c.clone());
                }
            }
            Payload::Dot => {
                for (key, c) in state {
                    for (k, v) in self.dot_on(slice.offset, key) {
                        add_into(&mut out, k, &v * c);
                    }
                }
            }
            Payload::Token(label) => {
                let a = self
                    .alg
                    .index(label)
                    .filter(|_| self.pres.frobenius().is_some())
                    .ok_or_else(|| NormalizeError::UnknownToken(label.clone()))?;
                for (key, c) in state {
                    for (k, v) in self.token_on(slice.offset, a, key) {
                        add_into(&mut out, k, &v * c);
                    }
                }
            }
            _ => {
                return Err(NormalizeError::UnsupportedGenerator {
                    strategy: self.pres.strategy().as_str(),
                    gen: slice.gen.display_name(),
                })
            }
        }
        Ok(out)
    }

    /// `tok_i(a) ∘ key`: the token slides down to the bottom of its strand,
    /// commuting with dots, and merges with the token already there.
    fn token_on(&self, i: usize, a: usize, key: &TokenDottedPerm) -> State {
        let j = key.perm.inverse().apply(i);
        let mut out = State::new();
        for (k, c) in self.alg.mult[a][key.tokens[j]].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut key2 = key.clone();
            key2.tokens[j] = k;
            add_into(&mut out, key2, self.constant(c));
        }
        out
    }

    /// `x_i ∘ key`, pushing the dot through the permutation one crossing at a
    /// time and collecting the correction terms.
    fn dot_on(&self, i: usize, key: &TokenDottedPerm) -> State {
        let mut out = State::new();
        let Some(k) = key.perm.first_left_descent() else {
            let mut key2 = key.clone();
            key2.exps[i] += 1;
            out.insert(key2, Scalar::one(&self.params));
            return out;
        };
        let mut rest = key.clone();
        rest.perm = rest.perm.left_mul_simple(k);
        let moved = if i == k {
            k + 1
        } else if i == k + 1 {
            k
        } else {
            i
        };
        for (mut key2, c) in self.dot_on(moved, &rest) {
            key2.perm = key2.perm.left_mul_simple(k);
            add_into(&mut out, key2, c);
        }
        if i == k || i == k + 1 {
            // x_k s = s x_{k+1} + Σ b ⊗ b̌ and x_{k+1} s = s x_k - Σ b̌ ⊗ b
            let sign = if i == k { Rational::one() } else { -Rational::one() };
            for (b, q, c) in &self.alg.casimir {
                let (left, right) = if i == k { (*b, *q) } else { (*q, *b) };
                let coeff = self.constant(&(c * &sign));
                for (k1, c1) in self.token_on(k, left, &rest) {
                    for (k2, c2) in self.token_on(k + 1, right, &k1) {
                        add_into(&mut out, k2, &(&c1 * &c2) * &coeff);
                    }
                }
            }
        }
        out
    }

    /// The basis diagram of a key.
    pub(crate) fn embed(&self, key: &TokenDottedPerm) -> Diagram {
        let n = key.strands();
        let mut slices = Vec::new();
        for (strand, &t) in key.tokens.iter().enumerate() {
            if self.alg.unit_index != Some(t) {
                let g = self.pres.token(self.alg.label(t)).expect("token generator");
                slices.push(Slice::new(strand, &g));
            }
        }
        if key.exps.iter().any(|&e| e > 0) {
            let dot = self.pres.generator("x").expect("dot generator");
            for (strand, &e) in key.exps.iter().enumerate() {
                for _ in 0..e {
                    slices.push(Slice::new(strand, &dot));
                }
            }
        }
        let word = key.perm.reduced_word();
        if !word.is_empty() {
            let s = self.pres.generator("s").expect("crossing generator");
            for k in word {
                slices.push(Slice::new(k, &s));
            }
        }
        Diagram::from_slices(crate::diagram::Word::up(n), slices).expect("basis diagram type-checks")
    }

    pub(crate) fn basis(&self, n: usize, degree: Option<u32>) -> Vec<TokenDottedPerm> {
        let has_dots = self.pres.generator("x").is_some();
        let d = if has_dots { degree.unwrap_or(0) } else { 0 };
        let mut exps_list = Vec::new();
        let mut cur = vec![0u32; n];
        fn exps_rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                exps_rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        exps_rec(0, d, &mut cur, &mut exps_list);
        let dim = self.alg.dim();
        let tokens_list: Vec<Vec<usize>> = if self.pres.frobenius().is_some() {
            let total = dim.pow(n as u32);
            (0..total)
                .map(|mut code| {
                    let mut t = vec![0; n];
                    for slot in t.iter_mut().rev() {
                        *slot = code % dim;
                        code /= dim;
                    }
                    t
                })
                .collect()
        } else {
            vec![vec![0; n]]
        };
        let mut out = Vec::new();
        for perm in Permutation::all(n) {
            for exps in &exps_list {
                for tokens in &tokens_list {
                    out.push(TokenDottedPerm {
                        perm: perm.clone(),
                        exps: exps.clone(),
                        tokens: tokens.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }
}
