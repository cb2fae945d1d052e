use std::fmt;

/// A permutation of `0..n`; `images[j]` is the top position of the strand
/// that starts at bottom position `j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    /// The simple transposition exchanging `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Permutation {
        assert!(i + 1 < n);
        let mut p = Permutation::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i] = j;
        }
        Permutation { images: inv }
    }

    /// `s_i ∘ self`, i.e. a crossing at offset `i` stacked on top.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        for v in p.images.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
        p
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `ℓ(s_i ∘ self) < ℓ(self)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.images[i] > inv.images[i + 1]
    }

    pub fn first_left_descent(&self) -> Option<usize> {
        let inv = self.inverse();
        (0..self.len().saturating_sub(1)).find(|&i| inv.images[i] > inv.images[i + 1])
    }

    /// A reduced word as crossing offsets listed bottom to top.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut top_first = Vec::new();
        while let Some(i) = w.first_left_descent() {
            top_first.push(i);
            w = w.left_mul_simple(i);
        }
        top_first.reverse();
        top_first
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    rec(n, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// One-line notation, e.g. `[1 0 2]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_rebuild_the_permutation() {
        for n in 0..6 {
            for p in Permutation::all(n) {
                let word = p.reduced_word();
                assert_eq!(word.len(), p.length());
                let mut q = Permutation::identity(n);
                for &i in &word {
                    q = q.left_mul_simple(i);
                }
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn composition_order() {
        let s0 = Permutation::transposition(3, 0);
        let s1 = Permutation::transposition(3, 1);
        // s0 on top of s1: strand 0 stays at 0 then moves to 1
        let p = s0.compose(&s1);
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
