//! Planar matchings for the Temperley–Lieb category.

use std::fmt;

use super::NormalizeError;
use crate::diagram::{Diagram, Payload, Slice, Word};
use crate::presentation::Presentation;

/// A crossingless perfect matching on `bottom + top` endpoints. Bottom point
/// `j` has index `j`, top point `j` has index `bottom + j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

impl PlanarMatching {
    pub fn identity(n: usize) -> PlanarMatching {
        let partner = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        PlanarMatching {
            bottom: n,
            top: n,
            partner,
        }
    }

    pub fn from_partner(bottom: usize, top: usize, partner: Vec<usize>) -> Option<PlanarMatching> {
        let m = PlanarMatching {
            bottom,
            top,
            partner,
        };
        let total = bottom + top;
        if m.partner.len() != total {
            return None;
        }
        for (i, &j) in m.partner.iter().enumerate() {
            if j >= total || j == i || m.partner[j] != i {
                return None;
            }
        }
        if !m.is_planar() {
            return None;
        }
        Some(m)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// Position of an endpoint when walking around the boundary: bottom left
    /// to right, then top right to left.
    fn circular(&self, i: usize) -> usize {
        if i < self.bottom {
            i
        } else {
            self.bottom + (self.top - 1 - (i - self.bottom))
        }
    }

    pub fn is_planar(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| {
                let (a, b) = (self.circular(i), self.circular(self.partner[i]));
                (a.min(b), a.max(b))
            })
            .collect();
        for &(a, b) in &chords {
            for &(c, d) in &chords {
                if a < c && c < b && b < d {
                    return false;
                }
            }
        }
        true
    }

    pub fn through_strands(&self) -> usize {
        (0..self.bottom).filter(|&i| self.partner[i] >= self.bottom).count()
    }

    /// All planar matchings `bottom -> top`, sorted.
    pub fn all(bottom: usize, top: usize) -> Vec<PlanarMatching> {
        let total = bottom + top;
        if total % 2 == 1 {
            return Vec::new();
        }
        // noncrossing matchings of 0..total in circular order
        fn rec(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
            if points.is_empty() {
                out.push(Vec::new());
                return;
            }
            let first = points[0];
            for k in (1..points.len()).step_by(2) {
                let mut inner = Vec::new();
                rec(&points[1..k], &mut inner);
                let mut outer = Vec::new();
                rec(&points[k + 1..], &mut outer);
                for a in &inner {
                    for b in &outer {
                        let mut m = vec![(first, points[k])];
                        m.extend(a.iter().copied());
                        m.extend(b.iter().copied());
                        out.push(m);
                    }
                }
            }
        }
        let points: Vec<usize> = (0..total).collect();
        let mut circ = Vec::new();
        rec(&points, &mut circ);
        let from_circular = |c: usize| {
            if c < bottom {
                c
            } else {
                bottom + (top - 1 - (c - bottom))
            }
        };
        let mut out: Vec<PlanarMatching> = circ
            .into_iter()
            .map(|pairs| {
                let mut partner = vec![0; total];
                for (a, b) in pairs {
                    let (x, y) = (from_circular(a), from_circular(b));
                    partner[x] = y;
                    partner[y] = x;
                }
                PlanarMatching {
                    bottom,
                    top,
                    partner,
                }
            })
            .collect();
        out.sort();
        out
    }

    /// `self ∘ below`, returning the matching and the number of closed loops.
    pub fn compose(&self, below: &PlanarMatching) -> Option<(PlanarMatching, usize)> {
        if below.top != self.bottom {
            return None;
        }
        let mut state = Walker::new(below);
        for cap_or_cup in self.as_moves() {
            state.apply(cap_or_cup);
        }
        Some(state.finish())
    }

    /// A sequence of caps then cups realising this matching on top of the
    /// identity, as (is_cup, offset) pairs.
    fn as_moves(&self) -> Vec<(bool, usize)> {
        let (caps, _) = arcs_to_caps(&self.bottom_arcs(), self.bottom);
        let (top_caps, _) = arcs_to_caps(&self.top_arcs(), self.top);
        let mut moves: Vec<(bool, usize)> = caps.into_iter().map(|o| (false, o)).collect();
        moves.extend(top_caps.into_iter().rev().map(|o| (true, o)));
        moves
    }

    fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        (0..self.bottom)
            .filter(|&i| self.partner[i] < self.bottom && i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }

    fn top_arcs(&self) -> Vec<(usize, usize)> {
        (0..self.top)
            .filter(|&j| {
                let p = self.partner[self.bottom + j];
                p >= self.bottom && j < p - self.bottom
            })
            .map(|j| (j, self.partner[self.bottom + j] - self.bottom))
            .collect()
    }
}

/// Offsets of caps (innermost first, leftmost first) that remove the given
/// nested arcs from `width` points, and the number of points left.
fn arcs_to_caps(arcs: &[(usize, usize)], width: usize) -> (Vec<usize>, usize) {
    let mut alive: Vec<usize> = (0..width).collect();
    let mut remaining: Vec<(usize, usize)> = arcs.to_vec();
    let mut caps = Vec::new();
    while !remaining.is_empty() {
        let idx = remaining
            .iter()
            .enumerate()
            .filter_map(|(k, &(a, b))| {
                let pa = alive.iter().position(|&x| x == a)?;
                (alive.get(pa + 1) == Some(&b)).then_some((pa, k))
            })
            .min()
            .expect("planar arcs always have an innermost one");
        let (pos, k) = idx;
        caps.push(pos);
        alive.remove(pos + 1);
        alive.remove(pos);
        remaining.remove(k);
    }
    (caps, alive.len())
}

/// Follows a matching from fixed bottom endpoints up to a moving top level.
/// Endpoints carry stable ids: bottom points are `0..bottom`, new top points
/// get fresh ids.
struct Walker {
    bottom: usize,
    top: Vec<usize>,
    partner: Vec<usize>,
    loops: usize,
}

impl Walker {
    fn new(m: &PlanarMatching) -> Walker {
        Walker {
            bottom: m.bottom,
            top: (m.bottom..m.bottom + m.top).collect(),
            partner: m.partner.clone(),
            loops: 0,
        }
    }

    fn apply(&mut self, (is_cup, o): (bool, usize)) {
        if is_cup {
            let a = self.partner.len();
            self.partner.push(a + 1);
            self.partner.push(a);
            self.top.insert(o, a + 1);
            self.top.insert(o, a);
        } else {
            let (a, b) = (self.top[o], self.top[o + 1]);
            self.top.drain(o..o + 2);
            if self.partner[a] == b {
                self.loops += 1;
            } else {
                let (pa, pb) = (self.partner[a], self.partner[b]);
                self.partner[pa] = pb;
                self.partner[pb] = pa;
            }
        }
    }

    fn finish(self) -> (PlanarMatching, usize) {
        let mut index = vec![usize::MAX; self.partner.len()];
        for i in 0..self.bottom {
            index[i] = i;
        }
        for (j, &id) in self.top.iter().enumerate() {
            index[id] = self.bottom + j;
        }
        let total = self.bottom + self.top.len();
        let mut partner = vec![0; total];
        for i in 0..self.bottom {
            partner[i] = index[self.partner[i]];
        }
        for (j, &id) in self.top.iter().enumerate() {
            partner[self.bottom + j] = index[self.partner[id]];
        }
        (
            PlanarMatching {
                bottom: self.bottom,
                top: self.top.len(),
                partner,
            },
            self.loops,
        )
    }
}

/// Folds a cup/cap diagram into a matching and a loop count.
pub(crate) fn fold(p: &Presentation, d: &Diagram) -> Result<(PlanarMatching, usize), NormalizeError> {
    let mut w = Walker::new(&PlanarMatching::identity(d.dom().len()));
    for s in d.slices() {
        match s.gen.payload {
            Payload::Cup => w.apply((true, s.offset)),
            Payload::Cap => w.apply((false, s.offset)),
            _ => {
                return Err(NormalizeError::UnsupportedGenerator {
                    strategy: p.strategy().as_str(),
                    gen: s.gen.display_name(),
                })
            }
        }
    }
    Ok(w.finish())
}

/// Caps along the bottom, then cups along the top.
pub(crate) fn embed(p: &Presentation, m: &PlanarMatching) -> Diagram {
    let cup = p.generator("cup").expect("cup generator");
    let cap = p.generator("cap").expect("cap generator");
    let slices = m
        .as_moves()
        .into_iter()
        .map(|(is_cup, o)| Slice::new(o, if is_cup { &cup } else { &cap }))
        .collect();
    Diagram::from_slices(Word::up(m.bottom), slices).expect("matching diagram type-checks")
}

/// Chords as pairs of endpoints, e.g. `b0-t1 b1-b2 t0-t2`.
impl fmt::Display for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| {
            if i < self.bottom {
                format!("b{}", i)
            } else {
                format!("t{}", i - self.bottom)
            }
        };
        let chords: Vec<String> = (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| format!("{}-{}", name(i), name(self.partner[i])))
            .collect();
        if chords.is_empty() {
            f.write_str("empty")
        } else {
            f.write_str(&chords.join(" "))
        }
    }
}

impl fmt::Debug for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
