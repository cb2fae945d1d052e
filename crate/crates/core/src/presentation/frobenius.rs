//! Finite-dimensional symmetric Frobenius algebras given by structure
//! constants, as needed for token labels in wreath categories.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("table shapes do not match a basis of size {0}")]
    Shape(usize),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("the unit does not act as identity on `{0}`")]
    NotUnital(String),
    #[error("trace is not symmetric on ({0}, {1})")]
    NotSymmetric(String, String),
    #[error("trace form is degenerate")]
    DegenerateTrace,
}

/// Structure constants: `mult[i][j]` is the coefficient vector of `b_i b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusData {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<Vec<Rational>>>,
    pub unit: Vec<Rational>,
    pub trace: Vec<Rational>,
}

/// A validated algebra together with its dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frobenius {
    data: FrobeniusData,
    dual: Vec<Vec<Rational>>,
}

fn basis_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

impl FrobeniusData {
    /// The group algebra of Z/r with basis g^0..g^{r-1}, labelled `g0`, `g1`, ...
    /// and trace picking out the coefficient of the identity.
    pub fn cyclic_group(r: usize) -> FrobeniusData {
        assert!(r >= 1);
        let labels = (0..r).map(|i| format!("g{}", i)).collect();
        let mult = (0..r)
            .map(|i| (0..r).map(|j| basis_vec(r, (i + j) % r)).collect())
            .collect();
        FrobeniusData {
            labels,
            mult,
            unit: basis_vec(r, 0),
            trace: basis_vec(r, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for k in 0..n {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] += &xy * &self.mult[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn tr(&self, a: &[Rational]) -> Rational {
        a.iter().zip(&self.trace).map(|(x, t)| x * t).sum()
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        basis_vec(self.dim(), i)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of the unit if the unit is itself a basis element.
    pub fn unit_index(&self) -> Option<usize> {
        let ones: Vec<usize> = (0..self.dim()).filter(|&i| !self.unit[i].is_zero()).collect();
        match ones[..] {
            [i] if self.unit[i].is_one() => Some(i),
            _ => None,
        }
    }

    pub fn gram(&self) -> Matrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.tr(&self.mult[i][j]))
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows).expect("square")
    }

    /// Checks the axioms and derives the dual basis `b̌` with `tr(ǎ b) = δ_ab`.
    pub fn validate(&self) -> Result<Frobenius, FrobeniusError> {
        let n = self.dim();
        if n == 0
            || self.mult.len() != n
            || self.mult.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
            || self.unit.len() != n
            || self.trace.len() != n
        {
            return Err(FrobeniusError::Shape(n));
        }
        for (i, l) in self.labels.iter().enumerate() {
            if self.labels[..i].contains(l) {
                return Err(FrobeniusError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.product(&self.mult[i][j], &self.basis(k));
                    let right = self.product(&self.basis(i), &self.mult[j][k]);
                    if left != right {
                        return Err(FrobeniusError::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis(i);
            if self.product(&self.unit, &b) != b || self.product(&b, &self.unit) != b {
                return Err(FrobeniusError::NotUnital(self.labels[i].clone()));
            }
        }
        let gram = self.gram();
        for i in 0..n {
            for j in 0..n {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(FrobeniusError::NotSymmetric(
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                    ));
                }
            }
        }
        // tr(ǎ b) = δ_ab with ǎ = Σ_k D_ak b_k means D · Gram = I
        let inv = gram.inverse().map_err(|_| FrobeniusError::DegenerateTrace)?;
        let dual = (0..n).map(|a| inv.row(a).to_vec()).collect();
        Ok(Frobenius {
            data: self.clone(),
            dual,
        })
    }

    /// Re-expresses the algebra in the basis `b'_i = Σ_j p[i][j] b_j`.
    pub fn change_basis(&self, p: &Matrix) -> Result<FrobeniusData, FrobeniusError> {
        let n = self.dim();
        if p.rows() != n || !p.is_square() {
            return Err(FrobeniusError::Shape(n));
        }
        // old coordinates v = Pᵀ v', so v' = (Pᵀ)⁻¹ v
        let back = p.transpose().inverse().map_err(|_| FrobeniusError::Shape(n))?;
        let new_vec = |i: usize| p.row(i).to_vec();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| back.mul_vec(&self.product(&new_vec(i), &new_vec(j))))
                    .collect()
            })
            .collect();
        Ok(FrobeniusData {
            labels: (0..n).map(|i| format!("h{}", i)).collect(),
            mult,
            unit: back.mul_vec(&self.unit),
            trace: (0..n).map(|i| self.tr(&new_vec(i))).collect(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vec_json = |v: &[Rational]| -> serde_json::Value {
            v.iter().map(|x| serde_json::Value::String(format_rational(x))).collect()
        };
        serde_json::json!({
            "basis": self.labels,
            "unit": vec_json(&self.unit),
            "trace": vec_json(&self.trace),
            "mult": self.mult.iter().map(|row| row.iter().map(|v| vec_json(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl Frobenius {
    pub fn data(&self) -> &FrobeniusData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    /// Coefficients of the dual basis element `b̌_i`.
    pub fn dual(&self, i: usize) -> &[Rational] {
        &self.dual[i]
    }

    pub fn duals(&self) -> &[Vec<Rational>] {
        &self.dual
    }

    /// `Σ_b b ⊗ b̌` as the coefficient matrix of `b_p ⊗ b_q`.
    pub fn canonical_element(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            for q in 0..n {
                let v = m.get(b, q) + &self.dual[b][q];
                m.set(b, q, v);
            }
        }
        m
    }

    /// Compares `Σ_b (b x) ⊗ b̌` with `Σ_b b ⊗ (x b̌)` coefficientwise.
    pub fn teleport_check(&self, x: &[Rational]) -> bool {
        let n = self.dim();
        let mut lhs = Matrix::zeros(n, n);
        let mut rhs = Matrix::zeros(n, n);
        for b in 0..n {
            let bx = self.data.product(&self.data.basis(b), x);
            let xb = self.data.product(x, &self.dual[b]);
            for p in 0..n {
                for q in 0..n {
                    let l = lhs.get(p, q) + &bx[p] * &self.dual[b][q];
                    lhs.set(p, q, l);
                }
                let r = rhs.get(b, p) + &xb[p];
                rhs.set(b, p, r);
            }
        }
        lhs == rhs
    }
}
