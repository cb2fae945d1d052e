//! Evaluation of diagrams as exact matrices under monoidal functors into
//! vector spaces.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Generator, LinearCombination, Obj, Payload, Word};
use crate::matrix::{Matrix, MatrixError};
use crate::presentation::Presentation;
use crate::scalar::{Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("generator `{0}` has no assigned matrix")]
    Unassigned(String),
    #[error("object `{0}` has no assigned dimension")]
    UnassignedObject(char),
    #[error("matrix for `{gen}` is {found:?}, expected {expected:?}")]
    Shape {
        gen: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("generator `{0}` is not defined in this presentation")]
    MissingGenerator(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum GenModel {
    Matrix(Matrix),
    /// `Σ_{i,j} e_{i,j} ⊗ e_{j,i}` with the second factor acting on every
    /// tensor factor to the right, plus `shift` times the identity.
    GlDot { shift: Rational },
}

/// Object dimensions, generator matrices, an optional trailing context
/// `V^{⊗p}` and values for scalar parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelAssignment {
    obj_dim: BTreeMap<Obj, usize>,
    gens: BTreeMap<String, GenModel>,
    context: Vec<usize>,
    params: BTreeMap<String, Rational>,
}

fn flip(m: usize) -> Matrix {
    let mut s = Matrix::zeros(m * m, m * m);
    for a in 0..m {
        for b in 0..m {
            s.set(b * m + a, a * m + b, Rational::one());
        }
    }
    s
}

/// `Σ_v v ⊗ v` as an `m² × 1` column.
fn pairing_column(m: usize) -> Matrix {
    let mut c = Matrix::zeros(m * m, 1);
    for i in 0..m {
        c.set(i * m + i, 0, Rational::one());
    }
    c
}

impl ModelAssignment {
    pub fn new() -> ModelAssignment {
        ModelAssignment {
            obj_dim: BTreeMap::new(),
            gens: BTreeMap::new(),
            context: Vec::new(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_object(mut self, obj: Obj, dim: usize) -> ModelAssignment {
        self.obj_dim.insert(obj, dim);
        self
    }

    /// Assigns a matrix to the generator with this display name.
    pub fn with_generator(mut self, name: &str, m: Matrix) -> ModelAssignment {
        self.gens.insert(name.to_string(), GenModel::Matrix(m));
        self
    }

    pub fn with_param(mut self, name: &str, value: Rational) -> ModelAssignment {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_params(mut self, values: &BTreeMap<String, Rational>) -> ModelAssignment {
        self.params.extend(values.iter().map(|(k, v)| (k.clone(), v.clone())));
        self
    }

    pub fn context(&self) -> &[usize] {
        &self.context
    }

    pub fn context_dim(&self) -> usize {
        self.context.iter().product()
    }

    pub fn dim(&self, obj: Obj) -> Result<usize, EvalError> {
        self.obj_dim
            .get(&obj)
            .copied()
            .ok_or(EvalError::UnassignedObject(obj.glyph()))
    }

    pub fn word_dim(&self, w: &Word) -> Result<usize, EvalError> {
        w.iter().map(|&o| self.dim(o)).product()
    }

    pub fn generator_matrix(&self, name: &str) -> Option<&Matrix> {
        match self.gens.get(name) {
            Some(GenModel::Matrix(m)) => Some(m),
            _ => None,
        }
    }
}

impl Default for ModelAssignment {
    fn default() -> Self {
        ModelAssignment::new()
    }
}

/// `↑, ↓ ↦ k^m`; every cup is `Σ_v v ⊗ δ_v` in the appropriate order, every
/// cap is evaluation, the crossing is the flip.
pub fn model_ob(m: usize) -> ModelAssignment {
    assert!(m >= 1);
    let col = pairing_column(m);
    let row = col.transpose();
    ModelAssignment::new()
        .with_object(Obj::Up, m)
        .with_object(Obj::Down, m)
        .with_generator("s", flip(m))
        .with_generator("cup", col.clone())
        .with_generator("lcup", col)
        .with_generator("cap", row.clone())
        .with_generator("lcap", row)
}

/// The same assignment restricted to upward strands, for S.
pub fn model_sym(m: usize) -> ModelAssignment {
    assert!(m >= 1);
    ModelAssignment::new()
        .with_object(Obj::Up, m)
        .with_generator("s", flip(m))
}

/// `↑ ↦ V = k^m` with a trailing context `V^{⊗p}`; the dot on strand `t` acts
/// as `Σ_{i,j} e_{i,j} ⊗ e_{j,i}` with `e_{j,i}` acting on every factor to
/// the right of `t`, context included. With `shifted`, every dot also gets
/// `m · id`, which keeps the relations and makes the rightmost dot at `p = 0`
/// equal to `m · id` rather than zero.
pub fn model_daha(m: usize, p: usize, shifted: bool) -> ModelAssignment {
    assert!(m >= 1);
    let mut a = model_sym(m);
    a.context = vec![m; p];
    let shift = if shifted {
        Rational::from_integer(m.into())
    } else {
        Rational::zero()
    };
    a.gens.insert("x".into(), GenModel::GlDot { shift });
    a
}

type Sparse = HashMap<usize, Rational>;

fn add_entry(v: &mut Sparse, i: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&i);
    }
}

/// Mixed-radix digits, most significant (leftmost factor) first.
fn digits(mut index: usize, radix: &[usize]) -> Vec<usize> {
    let mut d = vec![0; radix.len()];
    for k in (0..radix.len()).rev() {
        d[k] = index % radix[k];
        index /= radix[k];
    }
    d
}

fn undigits(d: &[usize], radix: &[usize]) -> usize {
    d.iter().zip(radix).fold(0, |acc, (&x, &r)| acc * r + x)
}

struct SliceAction<'a> {
    gen: &'a Generator,
    model: &'a GenModel,
    offset: usize,
    before: Vec<usize>,
    after: Vec<usize>,
}

impl SliceAction<'_> {
    fn apply(&self, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        let k = self.gen.dom.len();
        for (&idx, c) in v {
            let d = digits(idx, &self.before);
            match self.model {
                GenModel::Matrix(m) => {
                    let col = undigits(&d[self.offset..self.offset + k], &self.before[self.offset..self.offset + k]);
                    let cod_radix = &self.after[self.offset..self.offset + self.gen.cod.len()];
                    for row in 0..m.rows() {
                        let e = m.get(row, col);
                        if e.is_zero() {
                            continue;
                        }
                        let mut nd = d[..self.offset].to_vec();
                        nd.extend(digits(row, cod_radix));
                        nd.extend_from_slice(&d[self.offset + k..]);
                        add_entry(&mut out, undigits(&nd, &self.after), c * e);
                    }
                }
                GenModel::GlDot { shift } => {
                    let t = self.offset;
                    add_entry(&mut out, idx, c * shift);
                    for u in t + 1..d.len() {
                        let mut nd = d.clone();
                        nd.swap(t, u);
                        add_entry(&mut out, undigits(&nd, &self.after), c.clone());
                    }
                }
            }
        }
        out
    }
}

fn radix(model: &ModelAssignment, w: &Word) -> Result<Vec<usize>, EvalError> {
    let mut r: Vec<usize> = w.iter().map(|&o| model.dim(o)).collect::<Result<_, _>>()?;
    r.extend_from_slice(&model.context);
    Ok(r)
}

/// The matrix of a single diagram on `dom ⊗ context -> cod ⊗ context`.
pub fn eval_diagram(model: &ModelAssignment, d: &Diagram) -> Result<Matrix, EvalError> {
    let seq = d.to_sequence();
    let levels = seq.levels();
    let mut actions = Vec::new();
    for (i, s) in d.slices().iter().enumerate() {
        let name = s.gen.display_name();
        let gm = model.gens.get(&name).ok_or_else(|| EvalError::Unassigned(name.clone()))?;
        if let GenModel::Matrix(m) = gm {
            let expected = (model.word_dim(&s.gen.cod)?, model.word_dim(&s.gen.dom)?);
            if (m.rows(), m.cols()) != expected {
                return Err(EvalError::Shape {
                    gen: name,
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
        } else if s.gen.payload != Payload::Dot || s.gen.dom.len() != 1 {
            return Err(EvalError::Unassigned(name));
        }
        actions.push(SliceAction {
            gen: &s.gen,
            model: gm,
            offset: s.offset,
            before: radix(model, &levels[i])?,
            after: radix(model, &levels[i + 1])?,
        });
    }
    let cols: usize = radix(model, d.dom())?.iter().product();
    let rows: usize = radix(model, d.cod())?.iter().product();
    let mut out = Matrix::zeros(rows, cols);
    for j in 0..cols {
        let mut v = Sparse::new();
        v.insert(j, Rational::one());
        for a in &actions {
            v = a.apply(&v);
            if v.is_empty() {
                break;
            }
        }
        for (i, c) in v {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// `Σ c_i · eval(d_i)`, with parameters replaced by the model's values.
pub fn eval(model: &ModelAssignment, f: &LinearCombination) -> Result<Matrix, EvalError> {
    let ctx = model.context_dim();
    let rows = model.word_dim(f.cod())? * ctx;
    let cols = model.word_dim(f.dom())? * ctx;
    let mut out = Matrix::zeros(rows, cols);
    for (d, c) in f.terms() {
        let q = c.evaluate(&model.params)?;
        out = out.checked_add(&eval_diagram(model, d)?.scale(&q))?;
    }
    Ok(out)
}

fn gen(p: &Presentation, name: &str) -> Result<Diagram, EvalError> {
    p.generator(name)
        .map(|g| Diagram::generator(&g))
        .ok_or_else(|| EvalError::MissingGenerator(name.to_string()))
}

fn whisker(left: &Word, d: &Diagram, right: &Word) -> Diagram {
    Diagram::identity(left.clone())
        .tensor(d)
        .tensor(&Diagram::identity(right.clone()))
}

/// Right cup `1 -> X* X`, nested from the outside in.
pub fn right_cup(p: &Presentation, x: &Word) -> Result<Diagram, EvalError> {
    if x.is_empty() {
        return Ok(Diagram::identity(Word::empty()));
    }
    let first = gen(p, if x[0] == Obj::Up { "cup" } else { "lcup" })?;
    let rest = x.slice(1, x.len());
    let inner = right_cup(p, &rest)?;
    Ok(whisker(&rest.dual(), &first, &rest).compose(&inner)?)
}

/// Right cap `X X* -> 1`.
pub fn right_cap(p: &Presentation, x: &Word) -> Result<Diagram, EvalError> {
    if x.is_empty() {
        return Ok(Diagram::identity(Word::empty()));
    }
    let first = gen(p, if x[0] == Obj::Up { "cap" } else { "lcap" })?;
    let rest = x.slice(1, x.len());
    let inner = right_cap(p, &rest)?;
    let w = whisker(&Word::new(vec![x[0]]), &inner, &Word::new(vec![x[0].dual()]));
    Ok(first.compose(&w)?)
}

/// Left cup `1 -> X X*`.
pub fn left_cup(p: &Presentation, x: &Word) -> Result<Diagram, EvalError> {
    if x.is_empty() {
        return Ok(Diagram::identity(Word::empty()));
    }
    let first = gen(p, if x[0] == Obj::Up { "lcup" } else { "cup" })?;
    let rest = x.slice(1, x.len());
    let inner = left_cup(p, &rest)?;
    let w = whisker(&Word::new(vec![x[0]]), &inner, &Word::new(vec![x[0].dual()]));
    Ok(w.compose(&first)?)
}

/// Left cap `X* X -> 1`.
pub fn left_cap(p: &Presentation, x: &Word) -> Result<Diagram, EvalError> {
    if x.is_empty() {
        return Ok(Diagram::identity(Word::empty()));
    }
    let first = gen(p, if x[0] == Obj::Up { "lcap" } else { "cap" })?;
    let rest = x.slice(1, x.len());
    let inner = left_cap(p, &rest)?;
    Ok(inner.compose(&whisker(&rest.dual(), &first, &rest))?)
}

/// Right mate `Y* -> X*` of `f: X -> Y`:
/// `(1_{X*} ⊗ rcap_Y)(1_{X*} ⊗ f ⊗ 1_{Y*})(rcup_X ⊗ 1_{Y*})`.
pub fn right_mate_diagram(p: &Presentation, f: &Diagram) -> Result<Diagram, EvalError> {
    let (x, y) = (f.dom(), f.cod());
    let (xs, ys) = (x.dual(), y.dual());
    let bottom = whisker(&Word::empty(), &right_cup(p, x)?, &ys);
    let middle = whisker(&xs, f, &ys);
    let top = whisker(&xs, &right_cap(p, y)?, &Word::empty());
    Ok(top.compose(&middle)?.compose(&bottom)?)
}

/// Left mate `Y* -> X*` of `f: X -> Y`:
/// `(lcap_Y ⊗ 1_{X*})(1_{Y*} ⊗ f ⊗ 1_{X*})(1_{Y*} ⊗ lcup_X)`.
pub fn left_mate_diagram(p: &Presentation, f: &Diagram) -> Result<Diagram, EvalError> {
    let (x, y) = (f.dom(), f.cod());
    let (xs, ys) = (x.dual(), y.dual());
    let bottom = whisker(&ys, &left_cup(p, x)?, &Word::empty());
    let middle = whisker(&ys, f, &xs);
    let top = whisker(&Word::empty(), &left_cap(p, y)?, &xs);
    Ok(top.compose(&middle)?.compose(&bottom)?)
}

/// Closed diagram `rcap_X ∘ (f ⊗ 1_{X*}) ∘ lcup_X` for `f: X -> X`.
pub fn bubble_diagram(p: &Presentation, f: &Diagram) -> Result<Diagram, EvalError> {
    let x = f.dom();
    let xs = x.dual();
    let body = whisker(&Word::empty(), f, &xs);
    Ok(right_cap(p, x)?.compose(&body)?.compose(&left_cup(p, x)?)?)
}

fn identity_matrix(model: &ModelAssignment, w: &Word) -> Result<Matrix, EvalError> {
    Ok(Matrix::identity(model.word_dim(w)?))
}

/// Matrix-level right mate of `f: X -> Y` in the model.
pub fn right_mate(
    p: &Presentation,
    model: &ModelAssignment,
    x: &Word,
    y: &Word,
    f: &Matrix,
) -> Result<Matrix, EvalError> {
    check_shape(model, x, y, f)?;
    let (xs, ys) = (x.dual(), y.dual());
    let cup = eval_diagram(model, &right_cup(p, x)?)?;
    let cap = eval_diagram(model, &right_cap(p, y)?)?;
    let bottom = cup.kron(&identity_matrix(model, &ys)?);
    let middle = identity_matrix(model, &xs)?.kron(f).kron(&identity_matrix(model, &ys)?);
    let top = identity_matrix(model, &xs)?.kron(&cap);
    Ok(top.checked_mul(&middle)?.checked_mul(&bottom)?)
}

/// Matrix-level left mate of `f: X -> Y` in the model.
pub fn left_mate(
    p: &Presentation,
    model: &ModelAssignment,
    x: &Word,
    y: &Word,
    f: &Matrix,
) -> Result<Matrix, EvalError> {
    check_shape(model, x, y, f)?;
    let (xs, ys) = (x.dual(), y.dual());
    let cup = eval_diagram(model, &left_cup(p, x)?)?;
    let cap = eval_diagram(model, &left_cap(p, y)?)?;
    let bottom = identity_matrix(model, &ys)?.kron(&cup);
    let middle = identity_matrix(model, &ys)?.kron(f).kron(&identity_matrix(model, &xs)?);
    let top = cap.kron(&identity_matrix(model, &xs)?);
    Ok(top.checked_mul(&middle)?.checked_mul(&bottom)?)
}

/// The bubble around `f: X -> X` evaluated as a `1 × 1` matrix.
pub fn bubble(p: &Presentation, model: &ModelAssignment, x: &Word, f: &Matrix) -> Result<Matrix, EvalError> {
    check_shape(model, x, x, f)?;
    let xs = x.dual();
    let cup = eval_diagram(model, &left_cup(p, x)?)?;
    let cap = eval_diagram(model, &right_cap(p, x)?)?;
    let body = f.kron(&identity_matrix(model, &xs)?);
    Ok(cap.checked_mul(&body)?.checked_mul(&cup)?)
}

fn check_shape(model: &ModelAssignment, x: &Word, y: &Word, f: &Matrix) -> Result<(), EvalError> {
    let expected = (model.word_dim(y)?, model.word_dim(x)?);
    if (f.rows(), f.cols()) != expected {
        return Err(EvalError::Shape {
            gen: "f".into(),
            expected,
            found: (f.rows(), f.cols()),
        });
    }
    Ok(())
}
