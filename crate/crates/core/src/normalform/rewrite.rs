//! Rewriting with the presentation's relations at randomly chosen sites.
//! Used to test that normal forms do not depend on the order in which
//! relations are applied.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{Diagram, DiagramError, LinearCombination, Slice, SliceSequence, Word};
use crate::presentation::Presentation;

/// A rewrite rule oriented for application: `pattern` is replaced by
/// `replacement`.
#[derive(Clone, Debug)]
pub struct OrientedRule {
    pub name: String,
    pub forward: bool,
    pub pattern: Diagram,
    pub replacement: LinearCombination,
}

/// Operational rules in both directions where the right-hand side is a single
/// non-identity diagram with coefficient one.
pub fn oriented_rules(p: &Presentation, with_reverse: bool) -> Vec<OrientedRule> {
    let mut out = Vec::new();
    for r in p.relations().iter().filter(|r| r.operational) {
        out.push(OrientedRule {
            name: r.name.clone(),
            forward: true,
            pattern: r.lhs.clone(),
            replacement: r.rhs.clone(),
        });
        if !with_reverse {
            continue;
        }
        let mut terms = r.rhs.terms();
        if let (Some((d, c)), None) = (terms.next(), terms.next()) {
            if c.is_one() && !d.is_identity() {
                out.push(OrientedRule {
                    name: r.name.clone(),
                    forward: false,
                    pattern: d.clone(),
                    replacement: LinearCombination::from_diagram(r.lhs.clone(), p.params()),
                });
            }
        }
    }
    out
}

/// Start index and horizontal shift of every contiguous occurrence of
/// `pattern` in `seq`.
pub fn find_matches(seq: &SliceSequence, pattern: &Diagram) -> Vec<(usize, usize)> {
    let k = pattern.len();
    let slices = seq.slices();
    if k == 0 || k > slices.len() {
        return Vec::new();
    }
    let levels = seq.levels();
    let pdom = pattern.dom();
    let mut out = Vec::new();
    for i in 0..=slices.len() - k {
        let first = &pattern.slices()[0];
        if slices[i].offset < first.offset {
            continue;
        }
        let shift = slices[i].offset - first.offset;
        let fits = pattern
            .slices()
            .iter()
            .zip(&slices[i..i + k])
            .all(|(p, s)| s.offset == p.offset + shift && s.gen == p.gen);
        if !fits {
            continue;
        }
        let level = &levels[i];
        if shift + pdom.len() <= level.len() && level.slice(shift, shift + pdom.len()) == *pdom {
            out.push((i, shift));
        }
    }
    out
}

/// Replaces the window `[start, start + pattern.len())` of `seq`, shifted by
/// `shift`, with the rule's replacement.
pub fn rewrite_at(
    seq: &SliceSequence,
    start: usize,
    shift: usize,
    rule: &OrientedRule,
) -> Result<LinearCombination, DiagramError> {
    let params = rule.replacement.params();
    let k = rule.pattern.len();
    let levels = seq.levels();
    let slices = seq.slices();
    let bottom = Diagram::from_slices(seq.dom().clone(), slices[..start].to_vec())?;
    let top = Diagram::from_slices(levels[start + k].clone(), slices[start + k..].to_vec())?;
    let level = &levels[start];
    let width = rule.pattern.dom().len();
    let left = LinearCombination::from_diagram(Diagram::identity(level.slice(0, shift)), params);
    let right = LinearCombination::from_diagram(
        Diagram::identity(level.slice(shift + width, level.len())),
        params,
    );
    let middle = left.tensor(&rule.replacement)?.tensor(&right)?;
    LinearCombination::from_diagram(top, params)
        .compose(&middle)?
        .compose(&LinearCombination::from_diagram(bottom, params))
}

/// A random linearization of the interchange class of `d`.
pub fn shuffle<R: Rng>(d: &Diagram, rng: &mut R) -> SliceSequence {
    let mut seq = d.to_sequence();
    let steps = 3 * seq.slices().len();
    for _ in 0..steps {
        if seq.slices().len() < 2 {
            break;
        }
        let i = rng.gen_range(0..seq.slices().len() - 1);
        let options = seq.swaps_at(i);
        if let Some(next) = options.choose(rng) {
            seq = next.clone();
        }
    }
    seq
}

/// Linearizations of the interchange class of `d`, breadth first from the
/// canonical one, at most `cap` of them.
pub fn linearizations(d: &Diagram, cap: usize) -> Vec<SliceSequence> {
    let start = d.to_sequence();
    let mut seen = vec![start.clone()];
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(seq) = queue.pop_front() {
        for next in seq.all_swaps() {
            if seen.len() >= cap {
                return seen;
            }
            if !seen.contains(&next) {
                seen.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Applies one randomly chosen rule at a random site of a random term.
/// Returns `None` when no rule applies in any linearization examined.
pub fn random_step<R: Rng>(
    f: &LinearCombination,
    rules: &[OrientedRule],
    rng: &mut R,
) -> Result<Option<LinearCombination>, DiagramError> {
    let terms: Vec<(&Diagram, _)> = f.terms().collect();
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.shuffle(rng);
    for t in order {
        let (d, c) = terms[t];
        let mut seqs = linearizations(d, 48);
        seqs.push(shuffle(d, rng));
        let mut sites = Vec::new();
        for (q, seq) in seqs.iter().enumerate() {
            for (r, rule) in rules.iter().enumerate() {
                for (start, shift) in find_matches(seq, &rule.pattern) {
                    sites.push((q, r, start, shift));
                }
            }
        }
        if let Some(&(q, r, start, shift)) = sites.choose(rng) {
            let replaced = rewrite_at(&seqs[q], start, shift, &rules[r])?.scale(c)?;
            let mut rest = f.clone();
            rest.add_term(d.clone(), -c)?;
            return Ok(Some(rest.add(&replaced)?));
        }
    }
    Ok(None)
}

/// `steps` random rule applications, in either direction.
pub fn random_walk<R: Rng>(
    p: &Presentation,
    f: &LinearCombination,
    steps: usize,
    rng: &mut R,
) -> Result<LinearCombination, DiagramError> {
    let rules = oriented_rules(p, true);
    let mut cur = f.clone();
    for _ in 0..steps {
        match random_step(&cur, &rules, rng)? {
            Some(next) => cur = next,
            None => break,
        }
    }
    Ok(cur)
}

/// Forward rule applications in random order until none applies or the
/// budget runs out; returns the result and whether a fixpoint was reached.
pub fn random_reduce<R: Rng>(
    p: &Presentation,
    f: &LinearCombination,
    budget: usize,
    rng: &mut R,
) -> Result<(LinearCombination, bool), DiagramError> {
    let rules = oriented_rules(p, false);
    let mut cur = f.clone();
    for _ in 0..budget {
        match random_step(&cur, &rules, rng)? {
            Some(next) => cur = next,
            None => return Ok((cur, true)),
        }
    }
    Ok((cur, false))
}

/// A random well-typed diagram of `len` generators starting at `dom`, never
/// wider than `max_width`. Generators whose domain fits nowhere are skipped.
pub fn random_diagram<R: Rng>(
    p: &Presentation,
    dom: &Word,
    len: usize,
    max_width: usize,
    rng: &mut R,
) -> Diagram {
    let gens = p.generators();
    let mut level = dom.clone();
    let mut slices = Vec::new();
    for _ in 0..len {
        let mut options = Vec::new();
        for g in gens {
            if level.len() + g.cod.len() > max_width + g.dom.len() {
                continue;
            }
            for o in 0..=level.len().saturating_sub(g.dom.len()) {
                if o + g.dom.len() <= level.len() && level.slice(o, o + g.dom.len()) == g.dom {
                    options.push(Slice::new(o, g));
                }
            }
        }
        let Some(s) = options.choose(rng).cloned() else {
            break;
        };
        let w = level.slice(0, s.offset)
            .concat(&s.gen.cod)
            .concat(&level.slice(s.offset + s.gen.dom.len(), level.len()));
        level = w;
        slices.push(s);
    }
    Diagram::from_slices(dom.clone(), slices).expect("generated slices type-check")
}
