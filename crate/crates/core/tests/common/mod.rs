//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the normal-form engines.
#![allow(dead_code)]

use diagcat::matrix::Matrix;
use diagcat::scalar::{rat, Rational};
use rand::Rng;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    if rows == 0 {
        return Matrix::zeros(0, cols);
    }
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect())
        .collect();
    Matrix::from_rows(data).unwrap()
}

/// A random matrix with rational entries, invertible by construction
/// (unit upper triangular times unit lower triangular).
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut u = Matrix::identity(n);
    let mut l = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i < j {
                u.set(i, j, rat(rng.gen_range(-2..=2)));
            } else if i > j {
                l.set(i, j, rat(rng.gen_range(-2..=2)));
            }
        }
    }
    &u * &l
}

/// `a ∘ b` on image lists.
pub fn compose_images(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&j| a[j]).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Number of bijections of an `n`-set, counted among all self-maps.
pub fn count_bijections(n: usize) -> usize {
    let total = n.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut seen = vec![false; n];
            let mut c = code;
            for _ in 0..n {
                let v = c % n;
                c /= n;
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            true
        })
        .count()
}

/// Non-crossing perfect matchings of `2n` points on a line, by brute force
/// over all perfect matchings.
pub fn count_noncrossing(n: usize) -> usize {
    fn go(free: &mut Vec<usize>, arcs: &mut Vec<(usize, usize)>) -> usize {
        if free.is_empty() {
            let crossing = arcs.iter().any(|&(a, b)| arcs.iter().any(|&(c, d)| a < c && c < b && b < d));
            return usize::from(!crossing);
        }
        let a = free.remove(0);
        let mut total = 0;
        for k in 0..free.len() {
            let b = free.remove(k);
            arcs.push((a, b));
            total += go(free, arcs);
            arcs.pop();
            free.insert(k, b);
        }
        free.insert(0, a);
        total
    }
    go(&mut (0..2 * n).collect(), &mut Vec::new())
}

/// Standard Young tableaux of shape `lambda`, by removing the largest entry
/// from each corner.
pub fn count_syt(lambda: &[usize]) -> usize {
    let lambda: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if lambda.is_empty() {
        return 1;
    }
    let mut total = 0;
    for i in 0..lambda.len() {
        let next = lambda.get(i + 1).copied().unwrap_or(0);
        if lambda[i] > next {
            let mut smaller = lambda.clone();
            smaller[i] -= 1;
            total += count_syt(&smaller);
        }
    }
    total
}

pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The Temperley–Lieb generator `E_i` on `n` points as a partner list
/// (bottom points `0..n`, top points `n..2n`).
pub fn tl_generator(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..2 * n).map(|k| if k < n { k + n } else { k - n }).collect();
    p[i] = i + 1;
    p[i + 1] = i;
    p[n + i] = n + i + 1;
    p[n + i + 1] = n + i;
    p
}

/// Stacks matching `above` on `below` (both `n -> n`) by following strands
/// through the glued middle row; returns the partner list and the number of
/// closed loops.
pub fn glue_matchings(above: &[usize], below: &[usize], n: usize) -> (Vec<usize>, usize) {
    let mut visited = vec![false; n];
    let mut out = vec![usize::MAX; 2 * n];
    // (in_above, point)
    let walk = |mut upper: bool, mut pt: usize, visited: &mut Vec<bool>| -> usize {
        loop {
            let q = if upper { above[pt] } else { below[pt] };
            match (upper, q < n) {
                (false, true) => return q,
                (true, false) => return q,
                (false, false) => {
                    visited[q - n] = true;
                    upper = true;
                    pt = q - n;
                }
                (true, true) => {
                    visited[q] = true;
                    upper = false;
                    pt = q + n;
                }
            }
        }
    };
    for j in 0..n {
        if out[j] == usize::MAX {
            let end = walk(false, j, &mut visited);
            out[j] = end;
            out[end] = j;
        }
        if out[n + j] == usize::MAX {
            let end = walk(true, n + j, &mut visited);
            out[n + j] = end;
            out[end] = n + j;
        }
    }
    let mut loops = 0;
    for k in 0..n {
        if visited[k] {
            continue;
        }
        loops += 1;
        let mut cur = k;
        loop {
            visited[cur] = true;
            let b = above[cur];
            visited[b] = true;
            let next = below[n + b] - n;
            if next == k {
                break;
            }
            cur = next;
        }
    }
    (out, loops)
}

pub fn rational_trace(m: &Matrix) -> Rational {
    (0..m.rows()).map(|i| m.get(i, i).clone()).sum()
}
