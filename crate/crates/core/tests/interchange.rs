use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use diagcat::diagram::{Diagram, Generator, Payload, Slice, SliceSequence, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn signature() -> Vec<Arc<Generator>> {
    vec![
        Generator::new("s", Payload::Crossing, Word::up(2), Word::up(2)),
        Generator::new("cup", Payload::Cup, Word::empty(), Word::up(2)),
        Generator::new("cap", Payload::Cap, Word::up(2), Word::empty()),
        Generator::new("x", Payload::Dot, Word::up(1), Word::up(1)),
        Generator::new("c", Payload::None, Word::empty(), Word::empty()),
        Generator::new("m", Payload::None, Word::up(2), Word::up(1)),
        Generator::new("d", Payload::None, Word::up(1), Word::up(2)),
    ]
}

fn random_sequence(rng: &mut ChaCha8Rng, max_len: usize, max_width: usize) -> SliceSequence {
    let gens = signature();
    let mut width = rng.gen_range(0..3);
    let dom = Word::up(width);
    let mut slices = Vec::new();
    let len = rng.gen_range(0..=max_len);
    while slices.len() < len {
        let g = &gens[rng.gen_range(0..gens.len())];
        let (d, c) = (g.dom.len(), g.cod.len());
        if d > width || width - d + c > max_width {
            continue;
        }
        let offset = rng.gen_range(0..=width - d);
        slices.push(Slice::new(offset, g));
        width = width - d + c;
    }
    SliceSequence::new(dom, slices).unwrap()
}

/// Every sequence reachable by interchange moves, in both directions.
fn interchange_class(seq: &SliceSequence, limit: usize) -> Option<BTreeSet<SliceSequence>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seq.clone());
    queue.push_back(seq.clone());
    while let Some(s) = queue.pop_front() {
        for t in s.all_swaps() {
            if seen.insert(t.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(t);
            }
        }
    }
    Some(seen)
}

#[test]
fn canonical_form_is_a_class_invariant_and_a_class_member() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..1500 {
        let seq = random_sequence(&mut rng, 7, 5);
        let Some(class) = interchange_class(&seq, 4000) else { continue };
        let canon = seq.canonicalize();
        let as_seq = canon.to_sequence();
        assert!(class.contains(&as_seq), "canonical form left its class: {:?}", seq);
        for other in &class {
            assert_eq!(other.canonicalize(), canon, "class member disagrees: {:?}", other);
        }
        checked += 1;
    }
    assert!(checked > 1200, "{checked}");
}

#[test]
fn canonicalize_is_idempotent_on_long_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let seq = random_sequence(&mut rng, 14, 6);
        let d = seq.canonicalize();
        assert_eq!(d.to_sequence().canonicalize(), d);
        // a random walk of interchange moves stays in the class
        let mut walk = seq.clone();
        for _ in 0..40 {
            let moves = walk.all_swaps();
            if moves.is_empty() {
                break;
            }
            walk = moves[rng.gen_range(0..moves.len())].clone();
        }
        assert_eq!(walk.canonicalize(), d);
    }
}

#[test]
fn tensor_and_compose_are_strictly_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let a = random_sequence(&mut rng, 4, 4).canonicalize();
        let b = random_sequence(&mut rng, 4, 4).canonicalize();
        let c = random_sequence(&mut rng, 4, 4).canonicalize();
        assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        let ida = Diagram::identity(a.cod().clone());
        assert_eq!(ida.compose(&a).unwrap(), a);
        assert_eq!(a.tensor(&Diagram::identity(Word::empty())), a);
        // interchange: (f ⊗ 1)(1 ⊗ g) = (1 ⊗ g)(f ⊗ 1)
        let f1 = a.tensor(&Diagram::identity(b.dom().clone()));
        let g1 = Diagram::identity(a.cod().clone()).tensor(&b);
        let lhs = g1.compose(&f1).unwrap();
        let f2 = a.tensor(&Diagram::identity(b.cod().clone()));
        let g2 = Diagram::identity(a.dom().clone()).tensor(&b);
        let rhs = f2.compose(&g2).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, a.tensor(&b));
    }
}
