use diagcat::diagram::{LinearCombination, Word};
use diagcat::normalform::normalize;
use diagcat::normalform::rewrite::{random_diagram, random_reduce, random_walk};
use diagcat::presentation::{preset, PresetId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn trials(id: PresetId, r: Option<usize>, count: usize, seed: u64) {
    let p = preset(id, r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rewritten = 0;
    for _ in 0..count {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=6);
        let d = random_diagram(&p, &Word::up(n), len, n, &mut rng);
        let f = LinearCombination::from_diagram(d, p.params());
        let expected = normalize(&p, &f).unwrap();
        let walked = random_walk(&p, &f, rng.gen_range(1..=4), &mut rng).unwrap();
        let (reduced, _) = random_reduce(&p, &walked, 40, &mut rng).unwrap();
        if reduced != f {
            rewritten += 1;
        }
        assert_eq!(normalize(&p, &reduced).unwrap(), expected, "{:?}", f);
        assert_eq!(normalize(&p, &expected).unwrap(), expected);
    }
    assert!(rewritten > count / 4, "only {} trials rewrote anything", rewritten);
}

#[test]
fn symmetric() {
    trials(PresetId::S, None, 300, 1);
}

#[test]
fn degenerate_affine() {
    trials(PresetId::Ahdeg, None, 300, 2);
}

#[test]
fn hecke() {
    trials(PresetId::Hecke, None, 300, 3);
}

#[test]
fn braid() {
    trials(PresetId::Braid, None, 300, 4);
}

#[test]
fn wreath() {
    trials(PresetId::Wreath, Some(2), 200, 5);
    trials(PresetId::Wreath, Some(3), 200, 6);
}

#[test]
fn affine_wreath() {
    trials(PresetId::AWreath, Some(1), 150, 7);
    trials(PresetId::AWreath, Some(2), 150, 8);
    trials(PresetId::AWreath, Some(3), 150, 9);
}

#[test]
fn temperley_lieb() {
    let p = preset(PresetId::Tl, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut rewritten = 0;
    for _ in 0..300 {
        let n = rng.gen_range(0..=4);
        let len = rng.gen_range(0..=7);
        let d = random_diagram(&p, &Word::up(n), len, n + 2, &mut rng);
        let f = LinearCombination::from_diagram(d, p.params());
        let expected = normalize(&p, &f).unwrap();
        let walked = random_walk(&p, &f, 3, &mut rng).unwrap();
        let (reduced, done) = random_reduce(&p, &walked, 40, &mut rng).unwrap();
        assert!(done);
        if reduced != f {
            rewritten += 1;
        }
        assert_eq!(normalize(&p, &reduced).unwrap(), expected);
        assert_eq!(reduced, expected, "zigzag and circle rules alone reach the basis");
    }
    assert!(rewritten > 50);
}
