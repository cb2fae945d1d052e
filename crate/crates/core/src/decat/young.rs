use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::DecatError;
use crate::matrix::Matrix;
use crate::normalform::Permutation;
use crate::scalar::{rat, Rational};

/// Largest `n` for which group-algebra computations are attempted.
pub const MAX_N: usize = 6;

/// A partition as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition, DecatError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(DecatError::InvalidPartition(format!("{:?}", parts)));
        }
        Ok(Partition(parts))
    }

    /// Parses `"3,1,1"`.
    pub fn parse(text: &str) -> Result<Partition, DecatError> {
        let bad = || DecatError::InvalidPartition(text.to_string());
        let parts = text
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|_| bad())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.0.first().copied().unwrap_or(0);
        (0..width).map(|c| self.0.iter().filter(|&&r| r > c).count()).collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Rows of a filling with entries `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau(Vec<Vec<usize>>);

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Tableau {
        Tableau(rows)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn shape(&self) -> Vec<usize> {
        self.0.iter().map(|r| r.len()).collect()
    }

    /// Checks shape and that rows and columns increase.
    pub fn check_standard(&self, lambda: &Partition) -> Result<(), DecatError> {
        if self.shape() != lambda.parts() {
            return Err(DecatError::InvalidTableau(format!("shape {:?} is not {}", self.shape(), lambda)));
        }
        let n = lambda.size();
        let mut seen = vec![false; n + 1];
        for row in &self.0 {
            for &x in row {
                if x == 0 || x > n || seen[x] {
                    return Err(DecatError::InvalidTableau(format!("entries must be 1..{} once each", n)));
                }
                seen[x] = true;
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DecatError::InvalidTableau("rows must increase".into()));
            }
        }
        for r in 1..self.0.len() {
            for c in 0..self.0[r].len() {
                if self.0[r - 1][c] >= self.0[r][c] {
                    return Err(DecatError::InvalidTableau("columns must increase".into()));
                }
            }
        }
        Ok(())
    }
}

/// Rows filled with `1..=n` in reading order.
pub fn row_reading_tableau(lambda: &Partition) -> Tableau {
    let mut next = 1;
    Tableau(
        lambda
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect(),
    )
}

/// All standard tableaux of shape `lambda`, sorted.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.size();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); lambda.parts().len()];
    fn rec(k: usize, n: usize, shape: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if k > n {
            out.push(Tableau(rows.clone()));
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(k + 1, n, shape, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(1, n, lambda.parts(), &mut rows, &mut out);
    out.sort();
    out
}

/// `n! / Π hooks`.
pub fn hook_length(lambda: &Partition) -> usize {
    let conj = lambda.conjugate();
    let mut num: u128 = (1..=lambda.size() as u128).product();
    let mut den: u128 = 1;
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            den *= ((len - c - 1) + (conj[c] - r - 1) + 1) as u128;
        }
    }
    num /= den;
    num as usize
}

/// An element of the group algebra `Q S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    n: usize,
    coeffs: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElem {
    pub fn zero(n: usize) -> GroupAlgebraElem {
        GroupAlgebraElem {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> GroupAlgebraElem {
        GroupAlgebraElem::basis(Permutation::identity(n))
    }

    pub fn basis(w: Permutation) -> GroupAlgebraElem {
        let mut e = GroupAlgebraElem::zero(w.len());
        e.coeffs.insert(w, Rational::one());
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Permutation, Rational> {
        &self.coeffs
    }

    pub fn coefficient(&self, w: &Permutation) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, w: Permutation, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn add(&self, other: &GroupAlgebraElem) -> GroupAlgebraElem {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero(self.n);
        for (w, v) in &self.coeffs {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Product with `self` on top, matching vertical composition of diagrams.
    pub fn mul(&self, other: &GroupAlgebraElem) -> GroupAlgebraElem {
        assert_eq!(self.n, other.n);
        let mut out = GroupAlgebraElem::zero(self.n);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                out.add_term(u.compose(v), a * b);
            }
        }
        out
    }

    /// Juxtaposition: `self` on the first strands, `other` on the rest.
    pub fn tensor(&self, other: &GroupAlgebraElem) -> GroupAlgebraElem {
        let n = self.n + other.n;
        let mut out = GroupAlgebraElem::zero(n);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                let mut images = u.images().to_vec();
                images.extend(v.images().iter().map(|&i| i + self.n));
                out.add_term(Permutation::from_images(images).expect("bijection"), a * b);
            }
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Rank of `x ↦ x · self` on the regular representation, the dimension of
    /// the left ideal generated by `self`.
    pub fn ideal_rank(&self) -> usize {
        let perms = Permutation::all(self.n);
        let index: BTreeMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut m = Matrix::zeros(perms.len(), perms.len());
        for (row, g) in perms.iter().enumerate() {
            let ge = GroupAlgebraElem::basis(g.clone()).mul(self);
            for (w, c) in &ge.coeffs {
                m.set(row, index[w], c.clone());
            }
        }
        m.rank()
    }
}

/// Sum over the permutations preserving each block, optionally signed.
fn block_sum(n: usize, blocks: &[Vec<usize>], signed: bool) -> GroupAlgebraElem {
    let mut acc = GroupAlgebraElem::one(n);
    for block in blocks {
        let mut s = GroupAlgebraElem::zero(n);
        for sub in Permutation::all(block.len()) {
            let mut images: Vec<usize> = (0..n).collect();
            for (a, &b) in sub.images().iter().enumerate() {
                images[block[a] - 1] = block[b] - 1;
            }
            let c = if signed { rat(sub.sign()) } else { rat(1) };
            s.add_term(Permutation::from_images(images).expect("bijection"), c);
        }
        acc = acc.mul(&s);
    }
    acc
}

/// `e = (f^λ / n!) · a · b` with `a` the row symmetrizer and `b` the signed
/// column antisymmetrizer of the tableau.
pub fn young_idempotent(lambda: &Partition, tableau: &Tableau) -> Result<GroupAlgebraElem, DecatError> {
    let n = lambda.size();
    if n > MAX_N {
        return Err(DecatError::TooLarge(n));
    }
    tableau.check_standard(lambda)?;
    let rows = tableau.rows().to_vec();
    let cols: Vec<Vec<usize>> = (0..lambda.parts().first().copied().unwrap_or(0))
        .map(|c| rows.iter().filter_map(|r| r.get(c).copied()).collect())
        .collect();
    let a = block_sum(n, &rows, false);
    let b = block_sum(n, &cols, true);
    let fact: u64 = (1..=n as u64).product();
    let norm = Rational::new((hook_length(lambda) as i64).into(), (fact as i64).into());
    Ok(a.mul(&b).scale(&norm))
}

/// Rank of the left ideal generated by `e_λ ⊗ e_μ` in `Q S_{m+n}`.
pub fn induced_product_dim(lambda: &Partition, mu: &Partition) -> Result<usize, DecatError> {
    let n = lambda.size() + mu.size();
    if n > MAX_N {
        return Err(DecatError::TooLarge(n));
    }
    let el = young_idempotent(lambda, &row_reading_tableau(lambda))?;
    let em = young_idempotent(mu, &row_reading_tableau(mu))?;
    Ok(el.tensor(&em).ideal_rank())
}

/// Summary used by the command-line front end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungReport {
    pub lambda: Partition,
    pub f_hook: usize,
    pub rank: usize,
    pub idempotent_ok: bool,
}

impl YoungReport {
    pub fn compute(lambda: &Partition, tableau: &Tableau) -> Result<YoungReport, DecatError> {
        let e = young_idempotent(lambda, tableau)?;
        Ok(YoungReport {
            lambda: lambda.clone(),
            f_hook: hook_length(lambda),
            rank: e.ideal_rank(),
            idempotent_ok: e.is_idempotent(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": self.lambda.parts(),
            "f_hook": self.f_hook,
            "rank": self.rank,
            "idempotent_ok": self.idempotent_ok,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn two_strand_idempotents() {
        let s1 = Permutation::transposition(2, 0);
        let sym = young_idempotent(&Partition::parse("2").unwrap(), &Tableau::new(vec![vec![1, 2]])).unwrap();
        assert_eq!(sym.coefficient(&Permutation::identity(2)), ratio(1, 2));
        assert_eq!(sym.coefficient(&s1), ratio(1, 2));
        let alt = young_idempotent(&Partition::parse("1,1").unwrap(), &Tableau::new(vec![vec![1], vec![2]])).unwrap();
        assert_eq!(alt.coefficient(&s1), ratio(-1, 2));
        assert!(sym.is_idempotent() && alt.is_idempotent());
    }

    #[test]
    fn hook_lengths() {
        let f = |s: &str| hook_length(&Partition::parse(s).unwrap());
        assert_eq!(f("3"), 1);
        assert_eq!(f("2,1"), 2);
        assert_eq!(f("3,2"), 5);
        assert_eq!(f("3,2,1"), 16);
        for n in 1..=6 {
            for l in partitions(n) {
                assert_eq!(hook_length(&l), standard_tableaux(&l).len());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::parse("1,2").is_err());
        assert!(Partition::parse("2,x").is_err());
        let l = Partition::parse("2,1").unwrap();
        assert!(young_idempotent(&l, &Tableau::new(vec![vec![2, 1], vec![3]])).is_err());
        assert!(young_idempotent(&l, &Tableau::new(vec![vec![1, 2, 3]])).is_err());
    }
}
