//! Morphisms of free strict monoidal categories as sequences of one-generator
//! slices, kept in a canonical form under the interchange law, plus formal
//! linear combinations of them.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{ParamSet, Rational, Scalar, ScalarError};

pub mod dsl;

/// A generating object. `Up` is also used for the single self-dual object
/// of the Temperley-Lieb category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Obj {
    Up,
    Down,
}

impl Obj {
    pub fn dual(self) -> Obj {
        match self {
            Obj::Up => Obj::Down,
            Obj::Down => Obj::Up,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Obj::Up => '^',
            Obj::Down => 'v',
        }
    }
}

/// A tensor product of generating objects; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Obj>);

impl Word {
    pub fn new(objs: Vec<Obj>) -> Word {
        Word(objs)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn up(n: usize) -> Word {
        Word(vec![Obj::Up; n])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The dual word: letters dualized and order reversed.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|o| o.dual()).collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Parses `^`, `v` and `1` glyphs; `1` contributes nothing.
    pub fn parse(text: &str) -> Option<Word> {
        let mut v = Vec::new();
        for c in text.chars() {
            match c {
                '^' => v.push(Obj::Up),
                'v' => v.push(Obj::Down),
                '1' => {}
                c if c.is_whitespace() => {}
                _ => return None,
            }
        }
        Some(Word(v))
    }
}

impl Deref for Word {
    type Target = [Obj];
    fn deref(&self) -> &[Obj] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for o in &self.0 {
            write!(f, "{}", o.glyph())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    None,
    Dot,
    Token(String),
    Cup,
    Cap,
    Crossing,
    InverseCrossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub payload: Payload,
    pub dom: Word,
    pub cod: Word,
}

impl Generator {
    pub fn new(name: &str, payload: Payload, dom: Word, cod: Word) -> Arc<Generator> {
        Arc::new(Generator {
            name: name.to_string(),
            payload,
            dom,
            cod,
        })
    }

    /// Name as written in the expression language, e.g. `tok[g1]`.
    pub fn display_name(&self) -> String {
        match &self.payload {
            Payload::Token(l) => format!("{}[{}]", self.name, l),
            _ => self.name.clone(),
        }
    }
}

/// One generator whiskered by `offset` identity strands on its left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice {
    pub offset: usize,
    pub gen: Arc<Generator>,
}

impl Slice {
    pub fn new(offset: usize, gen: &Arc<Generator>) -> Slice {
        Slice {
            offset,
            gen: gen.clone(),
        }
    }

    pub fn dom_len(&self) -> usize {
        self.gen.dom.len()
    }

    pub fn cod_len(&self) -> usize {
        self.gen.cod.len()
    }

    fn is_nullary(&self) -> bool {
        self.gen.dom.is_empty() && self.gen.cod.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("cannot compose: upper morphism expects {expected} but lower one produces {found}")]
    ComposeMismatch { expected: Word, found: Word },
    #[error("slice at height {height}: `{gen}` at offset {offset} needs {expected} but the word there is {found}")]
    SliceType {
        height: usize,
        gen: String,
        offset: usize,
        expected: Word,
        found: Word,
    },
    #[error("combinations of different types: {left} vs {right}")]
    LcTypeMismatch { left: String, right: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn apply_slice(word: &Word, height: usize, s: &Slice) -> Result<Word, DiagramError> {
    let end = s.offset + s.dom_len();
    if end > word.len() || word[s.offset..end] != s.gen.dom[..] {
        let found = if end > word.len() {
            word.slice(s.offset.min(word.len()), word.len())
        } else {
            word.slice(s.offset, end)
        };
        return Err(DiagramError::SliceType {
            height,
            gen: s.gen.display_name(),
            offset: s.offset,
            expected: s.gen.dom.clone(),
            found,
        });
    }
    let mut v = word.0[..s.offset].to_vec();
    v.extend_from_slice(&s.gen.cod);
    v.extend_from_slice(&word[end..]);
    Ok(Word(v))
}

/// A raw, not necessarily canonical, slice sequence. Exposed so that
/// callers can explore interchange moves explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceSequence {
    dom: Word,
    slices: Vec<Slice>,
}

impl SliceSequence {
    pub fn new(dom: Word, slices: Vec<Slice>) -> Result<SliceSequence, DiagramError> {
        let mut w = dom.clone();
        for (h, s) in slices.iter().enumerate() {
            w = apply_slice(&w, h, s)?;
        }
        Ok(SliceSequence { dom, slices })
    }

    pub fn dom(&self) -> &Word {
        &self.dom
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// The words between slices, from the bottom (`dom`) to the top (`cod`).
    pub fn levels(&self) -> Vec<Word> {
        let mut out = vec![self.dom.clone()];
        for (h, s) in self.slices.iter().enumerate() {
            let next = apply_slice(out.last().unwrap(), h, s).expect("checked on construction");
            out.push(next);
        }
        out
    }

    pub fn cod(&self) -> Word {
        self.levels().pop().unwrap()
    }

    /// All sequences obtained by one interchange move exchanging slices
    /// `i` and `i + 1`. Zero-width interfaces may allow two distinct moves.
    pub fn swaps_at(&self, i: usize) -> Vec<SliceSequence> {
        let mut out = Vec::new();
        if i + 1 >= self.slices.len() {
            return out;
        }
        let (a, b) = (&self.slices[i], &self.slices[i + 1]);
        for pair in [swap_left(a, b), swap_right(a, b)].into_iter().flatten() {
            let mut slices = self.slices.clone();
            slices[i] = pair.0;
            slices[i + 1] = pair.1;
            let seq = SliceSequence {
                dom: self.dom.clone(),
                slices,
            };
            if !out.contains(&seq) {
                out.push(seq);
            }
        }
        out
    }

    pub fn all_swaps(&self) -> Vec<SliceSequence> {
        (0..self.slices.len().saturating_sub(1))
            .flat_map(|i| self.swaps_at(i))
            .collect()
    }

    pub fn canonicalize(&self) -> Diagram {
        let cod = self.cod();
        Diagram {
            dom: self.dom.clone(),
            cod,
            slices: canonical_slices(self.dom.len(), self.slices.clone()),
        }
    }
}

/// Moves the upper slice `b` below `a` when `b` sits entirely to the left.
fn swap_left(a: &Slice, b: &Slice) -> Option<(Slice, Slice)> {
    if b.offset + b.dom_len() <= a.offset {
        Some((
            Slice {
                offset: b.offset,
                gen: b.gen.clone(),
            },
            Slice {
                offset: a.offset - b.dom_len() + b.cod_len(),
                gen: a.gen.clone(),
            },
        ))
    } else {
        None
    }
}

/// Moves the upper slice `b` below `a` when `b` sits entirely to the right.
fn swap_right(a: &Slice, b: &Slice) -> Option<(Slice, Slice)> {
    if b.offset >= a.offset + a.cod_len() {
        Some((
            Slice {
                offset: b.offset - a.cod_len() + a.dom_len(),
                gen: b.gen.clone(),
            },
            Slice {
                offset: a.offset,
                gen: a.gen.clone(),
            },
        ))
    } else {
        None
    }
}

/// Left-greedy bubbling: an upper slice lying left of the slice below it is
/// moved down until no such pair remains. `tags` is permuted alongside.
fn greedy(slices: &mut [Slice], tags: &mut [usize]) {
    let limit = 4 * slices.len() * slices.len() + 16;
    for _ in 0..limit {
        let mut changed = false;
        for i in 0..slices.len().saturating_sub(1) {
            let (a, b) = (&slices[i], &slices[i + 1]);
            if a.is_nullary() && b.is_nullary() {
                if b < a {
                    slices.swap(i, i + 1);
                    tags.swap(i, i + 1);
                    changed = true;
                }
                continue;
            }
            if let Some((lo, hi)) = swap_left(a, b) {
                slices[i] = lo;
                slices[i + 1] = hi;
                tags.swap(i, i + 1);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
    panic!("interchange canonicalization failed to converge");
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn canonical_slices(dom_len: usize, slices: Vec<Slice>) -> Vec<Slice> {
    // a closed component needs a lowest slice with empty domain
    if slices.iter().all(|s| s.dom_len() > 0) {
        let mut slices = slices;
        let mut tags: Vec<usize> = (0..slices.len()).collect();
        greedy(&mut slices, &mut tags);
        return slices;
    }
    Layout::analyse(dom_len, &slices).render()
}

/// Where a closed component sits: the face of its parent (the anchored part
/// of the diagram, or an enclosing closed component) that contains it.
/// Labels are `(0, k, 0)` for the face at bottom gap `k`, or `(1, p, j)`
/// for the face born in gap `j` of the canonical parent's slice `p`.
type FaceLabel = (u8, usize, usize);

struct Node {
    base: Vec<Slice>,
    children: BTreeMap<FaceLabel, Vec<usize>>,
}

struct Layout {
    nodes: Vec<Node>,
}

impl Layout {
    fn analyse(dom_len: usize, slices: &[Slice]) -> Layout {
        let n = slices.len();
        let boundary = n;
        let mut comps = UnionFind::new(n + 1);
        let mut owners: Vec<usize> = vec![boundary; dom_len];
        let mut owners_at = Vec::with_capacity(n);
        let mut lens = vec![dom_len];
        for (i, s) in slices.iter().enumerate() {
            owners_at.push(owners.clone());
            let consumed: Vec<usize> = owners
                .splice(s.offset..s.offset + s.dom_len(), std::iter::repeat_n(i, s.cod_len()))
                .collect();
            for u in consumed {
                comps.union(i, u);
            }
            lens.push(owners.len());
        }
        for &u in &owners {
            comps.union(u, boundary);
        }
        let comp: Vec<usize> = (0..=n).map(|i| comps.find(i)).collect();
        let anchored = comp[boundary];

        // node 0 is the anchored part; one node per closed component
        let mut roots = vec![anchored];
        for i in 0..n {
            if !roots.contains(&comp[i]) {
                roots.push(comp[i]);
            }
        }
        let node_of = |root: usize| roots.iter().position(|&r| r == root).unwrap();

        let mut pos = vec![0usize; n];
        let mut nodes = Vec::new();
        for &root in &roots {
            let mut sub = Vec::new();
            let mut tags = Vec::new();
            for i in 0..n {
                if comp[i] != root {
                    continue;
                }
                let s = &slices[i];
                let offset = owners_at[i][..s.offset]
                    .iter()
                    .filter(|&&u| comp[u] == root)
                    .count();
                sub.push(Slice {
                    offset,
                    gen: s.gen.clone(),
                });
                tags.push(i);
            }
            greedy(&mut sub, &mut tags);
            for (p, &i) in tags.iter().enumerate() {
                pos[i] = p;
            }
            nodes.push(Node {
                base: sub,
                children: BTreeMap::new(),
            });
        }

        // faces of the full diagram, as classes of gaps between strands
        let mut base = Vec::with_capacity(n + 1);
        let mut total = 0;
        for &l in &lens {
            base.push(total);
            total += l + 1;
        }
        let mut level_of = vec![0usize; total];
        for t in 0..=n {
            for k in 0..=lens[t] {
                level_of[base[t] + k] = t;
            }
        }
        let mut faces = UnionFind::new(total);
        let mut births = Vec::new();
        for (i, s) in slices.iter().enumerate() {
            let (o, d, c) = (s.offset, s.dom_len(), s.cod_len());
            for k in 0..=lens[i] {
                if k <= o {
                    faces.union(base[i] + k, base[i + 1] + k);
                }
                if k >= o + d {
                    faces.union(base[i] + k, base[i + 1] + k - d + c);
                }
            }
            for j in 1..c {
                births.push((i, j, base[i + 1] + o + j));
            }
        }
        let mut min_level: BTreeMap<usize, usize> = BTreeMap::new();
        for g in 0..total {
            let f = faces.find(g);
            let e = min_level.entry(f).or_insert(usize::MAX);
            *e = (*e).min(level_of[g]);
        }
        // the outer boundary of a face is the component that gives birth to
        // its lowest gaps; faces reaching the bottom belong to the anchored part
        let mut outer: BTreeMap<usize, usize> = BTreeMap::new();
        for (&f, &lvl) in &min_level {
            outer.insert(f, if lvl == 0 { anchored } else { comp[lvl - 1] });
        }
        let mut label: BTreeMap<usize, FaceLabel> = BTreeMap::new();
        let offer = |f: usize, owner: usize, cand: FaceLabel, label: &mut BTreeMap<usize, FaceLabel>| {
            if outer[&f] == owner {
                let e = label.entry(f).or_insert(cand);
                if cand < *e {
                    *e = cand;
                }
            }
        };
        for k in 0..=dom_len {
            let f = faces.find(k);
            offer(f, anchored, (0, k, 0), &mut label);
        }
        for &(i, j, g) in &births {
            let f = faces.find(g);
            offer(f, comp[i], (1, pos[i], j), &mut label);
        }

        for (idx, &root) in roots.iter().enumerate().skip(1) {
            let first = (0..n).find(|&i| comp[i] == root).unwrap();
            let f = faces.find(base[first] + slices[first].offset);
            let parent = node_of(outer[&f]);
            nodes[parent]
                .children
                .entry(label[&f])
                .or_default()
                .push(idx);
        }
        Layout { nodes }
    }

    fn render(&self) -> Vec<Slice> {
        self.render_node(0)
    }

    fn render_node(&self, idx: usize) -> Vec<Slice> {
        let node = &self.nodes[idx];
        let mut inserts: BTreeMap<usize, Vec<(usize, Vec<Slice>)>> = BTreeMap::new();
        for (label, kids) in &node.children {
            let (level, gap) = match *label {
                (0, k, _) => (0, k),
                (_, p, j) => (p + 1, node.base[p].offset + j),
            };
            let mut rendered: Vec<Vec<Slice>> = kids.iter().map(|&k| self.render_node(k)).collect();
            rendered.sort();
            for r in rendered {
                inserts.entry(level).or_default().push((gap, r));
            }
        }
        let mut out = Vec::new();
        for level in 0..=node.base.len() {
            if let Some(list) = inserts.get(&level) {
                for (gap, seq) in list {
                    out.extend(seq.iter().map(|s| Slice {
                        offset: s.offset + gap,
                        gen: s.gen.clone(),
                    }));
                }
            }
            if level < node.base.len() {
                out.push(node.base[level].clone());
            }
        }
        out
    }
}

/// A morphism term, always stored in canonical interchange form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    dom: Word,
    cod: Word,
    slices: Vec<Slice>,
}

impl Diagram {
    pub fn identity(w: Word) -> Diagram {
        Diagram {
            cod: w.clone(),
            dom: w,
            slices: Vec::new(),
        }
    }

    pub fn generator(g: &Arc<Generator>) -> Diagram {
        Diagram {
            dom: g.dom.clone(),
            cod: g.cod.clone(),
            slices: vec![Slice::new(0, g)],
        }
    }

    /// `1_left ⊗ g ⊗ 1_right`.
    pub fn whiskered(left: &Word, g: &Arc<Generator>, right: &Word) -> Diagram {
        let dom = left.concat(&g.dom).concat(right);
        Diagram {
            cod: left.concat(&g.cod).concat(right),
            dom,
            slices: vec![Slice::new(left.len(), g)],
        }
    }

    pub fn from_slices(dom: Word, slices: Vec<Slice>) -> Result<Diagram, DiagramError> {
        Ok(SliceSequence::new(dom, slices)?.canonicalize())
    }

    pub fn dom(&self) -> &Word {
        &self.dom
    }

    pub fn cod(&self) -> &Word {
        &self.cod
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_identity(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn to_sequence(&self) -> SliceSequence {
        SliceSequence {
            dom: self.dom.clone(),
            slices: self.slices.clone(),
        }
    }

    /// `self ∘ below`: `below` is drawn underneath.
    pub fn compose(&self, below: &Diagram) -> Result<Diagram, DiagramError> {
        if below.cod != self.dom {
            return Err(DiagramError::ComposeMismatch {
                expected: self.dom.clone(),
                found: below.cod.clone(),
            });
        }
        let mut slices = below.slices.clone();
        slices.extend(self.slices.iter().cloned());
        Ok(Diagram {
            dom: below.dom.clone(),
            cod: self.cod.clone(),
            slices: canonical_slices(below.dom.len(), slices),
        })
    }

    /// `above ∘ self`.
    pub fn then(&self, above: &Diagram) -> Result<Diagram, DiagramError> {
        above.compose(self)
    }

    /// Horizontal juxtaposition with `right` placed to the right.
    pub fn tensor(&self, right: &Diagram) -> Diagram {
        let shift = self.cod.len();
        let mut slices = self.slices.clone();
        slices.extend(right.slices.iter().map(|s| Slice {
            offset: s.offset + shift,
            gen: s.gen.clone(),
        }));
        let dom = self.dom.concat(&right.dom);
        Diagram {
            slices: canonical_slices(dom.len(), slices),
            dom,
            cod: self.cod.concat(&right.cod),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &Arc<Generator>> {
        self.slices.iter().map(|s| &s.gen)
    }
}

/// A finite formal sum of diagrams sharing a domain and codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCombination {
    dom: Word,
    cod: Word,
    params: Arc<ParamSet>,
    terms: BTreeMap<Diagram, Scalar>,
}

impl LinearCombination {
    pub fn zero(dom: Word, cod: Word, params: &Arc<ParamSet>) -> LinearCombination {
        LinearCombination {
            dom,
            cod,
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram, params: &Arc<ParamSet>) -> LinearCombination {
        LinearCombination::term(d, Scalar::one(params))
    }

    pub fn term(d: Diagram, c: Scalar) -> LinearCombination {
        let mut lc = LinearCombination::zero(d.dom.clone(), d.cod.clone(), c.params());
        lc.push(d, c);
        lc
    }

    pub fn dom(&self) -> &Word {
        &self.dom
    }

    pub fn cod(&self) -> &Word {
        &self.cod
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &Diagram) -> Scalar {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.params))
    }

    /// Adds `c · d`; panics on type or parameter mismatch, which callers
    /// inside the crate rule out beforehand.
    pub(crate) fn push(&mut self, d: Diagram, c: Scalar) {
        debug_assert!(d.dom == self.dom && d.cod == self.cod);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add_term(&mut self, d: Diagram, c: Scalar) -> Result<(), DiagramError> {
        if d.dom != self.dom || d.cod != self.cod {
            return Err(DiagramError::LcTypeMismatch {
                left: format!("{} -> {}", self.dom, self.cod),
                right: format!("{} -> {}", d.dom, d.cod),
            });
        }
        if c.params().names() != self.params.names() {
            return Err(ScalarError::ParamMismatch {
                left: self.params.names().join(","),
                right: c.params().names().join(","),
            }
            .into());
        }
        self.push(d, c);
        Ok(())
    }

    fn check_params(&self, other: &LinearCombination) -> Result<(), DiagramError> {
        if self.params.names() != other.params.names() {
            return Err(ScalarError::ParamMismatch {
                left: self.params.names().join(","),
                right: other.params.names().join(","),
            }
            .into());
        }
        Ok(())
    }

    pub fn add(&self, other: &LinearCombination) -> Result<LinearCombination, DiagramError> {
        self.check_params(other)?;
        if self.dom != other.dom || self.cod != other.cod {
            return Err(DiagramError::LcTypeMismatch {
                left: format!("{} -> {}", self.dom, self.cod),
                right: format!("{} -> {}", other.dom, other.cod),
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.push(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinearCombination) -> Result<LinearCombination, DiagramError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearCombination {
        LinearCombination {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            params: self.params.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<LinearCombination, DiagramError> {
        let mut out = LinearCombination::zero(self.dom.clone(), self.cod.clone(), &self.params);
        for (d, v) in &self.terms {
            out.push(d.clone(), v.checked_mul(c)?);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, q: &Rational) -> LinearCombination {
        let mut out = LinearCombination::zero(self.dom.clone(), self.cod.clone(), &self.params);
        for (d, v) in &self.terms {
            out.push(d.clone(), v.scale(q));
        }
        out
    }

    /// `self ∘ below`, extended bilinearly.
    pub fn compose(&self, below: &LinearCombination) -> Result<LinearCombination, DiagramError> {
        self.check_params(below)?;
        if below.cod != self.dom {
            return Err(DiagramError::ComposeMismatch {
                expected: self.dom.clone(),
                found: below.cod.clone(),
            });
        }
        let mut out = LinearCombination::zero(below.dom.clone(), self.cod.clone(), &self.params);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &below.terms {
                out.push(d1.compose(d2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, right: &LinearCombination) -> Result<LinearCombination, DiagramError> {
        self.check_params(right)?;
        let mut out = LinearCombination::zero(
            self.dom.concat(&right.dom),
            self.cod.concat(&right.cod),
            &self.params,
        );
        for (d1, c1) in &self.terms {
            for (d2, c2) in &right.terms {
                out.push(d1.tensor(d2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> Result<LinearCombination, DiagramError> {
        let mut out = LinearCombination::zero(self.dom.clone(), self.cod.clone(), &self.params);
        for (d, c) in &self.terms {
            out.push(d.clone(), c.substitute(assignment)?);
        }
        Ok(out)
    }

    /// All generator names used, for error reporting in evaluators.
    pub fn generator_names(&self) -> HashSet<String> {
        self.terms
            .keys()
            .flat_map(|d| d.generators().map(|g| g.display_name()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> (Arc<Generator>, Arc<Generator>, Arc<Generator>) {
        let s = Generator::new("s", Payload::Crossing, Word::up(2), Word::up(2));
        let cup = Generator::new("cup", Payload::Cup, Word::empty(), Word::up(2));
        let cap = Generator::new("cap", Payload::Cap, Word::up(2), Word::empty());
        (s, cup, cap)
    }

    #[test]
    fn interchange_of_distant_crossings() {
        let (s, _, _) = gens();
        let a = Diagram::from_slices(Word::up(4), vec![Slice::new(0, &s), Slice::new(2, &s)]).unwrap();
        let b = Diagram::from_slices(Word::up(4), vec![Slice::new(2, &s), Slice::new(0, &s)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.slices()[0].offset, 0);
    }

    #[test]
    fn compose_type_mismatch() {
        let (s, cup, _) = gens();
        let err = Diagram::generator(&cup)
            .compose(&Diagram::identity(Word::up(1)))
            .unwrap_err();
        assert!(matches!(err, DiagramError::ComposeMismatch { .. }));
        let ss = Diagram::generator(&s).compose(&Diagram::generator(&s)).unwrap();
        assert_eq!(ss.len(), 2);
    }

    #[test]
    fn closed_components_commute() {
        let (_, cup, cap) = gens();
        let circle = Diagram::generator(&cap).compose(&Diagram::generator(&cup)).unwrap();
        let c = Generator::new("c", Payload::None, Word::empty(), Word::empty());
        let coupon = Diagram::generator(&c);
        assert_eq!(circle.tensor(&coupon), coupon.tensor(&circle));
        assert_eq!(
            circle.tensor(&circle),
            circle.compose(&circle).unwrap()
        );
    }

    #[test]
    fn cap_then_cup_equals_cup_beside_cap() {
        let (_, cup, cap) = gens();
        let e = Diagram::generator(&cup).compose(&Diagram::generator(&cap)).unwrap();
        let side = Diagram::generator(&cup).tensor(&Diagram::generator(&cap));
        let other = Diagram::generator(&cap).tensor(&Diagram::generator(&cup));
        assert_eq!(e, side);
        assert_eq!(e, other);
    }
}
