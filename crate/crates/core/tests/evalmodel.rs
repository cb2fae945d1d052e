mod common;

use common::*;
use diagcat::diagram::{Diagram, LinearCombination, Word};
use diagcat::evalmodel::{
    eval, eval_diagram, left_mate, left_mate_diagram, model_daha, model_ob, model_sym, right_mate,
    right_mate_diagram, EvalError,
};
use diagcat::matrix::Matrix;
use diagcat::normalform::normalize;
use diagcat::normalform::rewrite::random_diagram;
use diagcat::presentation::{preset, PresetId};
use diagcat::scalar::rat;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ob_model_examples() {
    let ob = preset(PresetId::Ob, None).unwrap();
    let zig = ob.parse("id(^) * cup ; cap * id(^)").unwrap();
    assert_eq!(eval(&model_ob(2), &zig).unwrap(), Matrix::identity(2));
    assert_eq!(eval(&model_ob(3), &ob.parse("lcup ; rcap").unwrap()).unwrap(), Matrix::scalar(1, rat(3)));
    let one = model_ob(1);
    for g in ["cup", "cap", "lcup", "lcap", "s"] {
        assert_eq!(eval(&one, &ob.parse(g).unwrap()).unwrap(), Matrix::identity(1), "{g}");
    }
    assert_eq!(eval(&model_ob(2), &ob.parse("id(^^)").unwrap()).unwrap(), Matrix::identity(4));
}

#[test]
fn mate_examples() {
    let ob = preset(PresetId::Ob, None).unwrap();
    let m = model_ob(2);
    let up = Word::up(1);
    let e01 = Matrix::unit(2, 2, 0, 1);
    assert_eq!(right_mate(&ob, &m, &up, &up, &e01).unwrap(), Matrix::unit(2, 2, 1, 0));
    assert_eq!(right_mate(&ob, &m, &up, &up, &Matrix::identity(2)).unwrap(), Matrix::identity(2));
    // the same composite built as a diagram
    let s = ob.parse_diagram("s").unwrap();
    let rs = eval_diagram(&m, &right_mate_diagram(&ob, &s).unwrap()).unwrap();
    let ls = eval_diagram(&m, &left_mate_diagram(&ob, &s).unwrap()).unwrap();
    assert_eq!(rs, ls);
    let flip = eval_diagram(&m, &s).unwrap();
    assert_eq!(rs, right_mate(&ob, &m, &Word::up(2), &Word::up(2), &flip).unwrap());
    assert!(matches!(
        right_mate(&ob, &m, &up, &up, &Matrix::identity(3)),
        Err(EvalError::Shape { .. })
    ));
}

#[test]
fn dot_examples() {
    let d = preset(PresetId::Ahdeg, None).unwrap();
    let x = d.parse("x").unwrap();
    for m in 1..=3 {
        assert_eq!(eval(&model_daha(m, 0, true), &x).unwrap(), Matrix::scalar(m, rat(m as i64)));
    }
    let lhs = d.parse("s ; x * id(^)").unwrap();
    let rhs = d.parse("id(^) * x ; s + id(^^)").unwrap();
    let a = eval(&model_daha(2, 1, false), &lhs).unwrap();
    assert_eq!((a.rows(), a.cols()), (8, 8));
    assert_eq!(a, eval(&model_daha(2, 1, false), &rhs).unwrap());
    assert_eq!(eval(&model_daha(2, 0, false), &lhs).unwrap(), eval(&model_daha(2, 0, false), &rhs).unwrap());
}

#[test]
fn relations_hold_in_models() {
    let s = preset(PresetId::S, None).unwrap();
    let d = preset(PresetId::Ahdeg, None).unwrap();
    let ob = preset(PresetId::Ob, None).unwrap();
    for m in 1..=3 {
        for rel in s.relations() {
            let l = eval_diagram(&model_sym(m), &rel.lhs).unwrap();
            assert_eq!(l, eval(&model_sym(m), &rel.rhs).unwrap(), "{}", rel.name);
        }
        for p in 0..=1 {
            let model = model_daha(m, p, false);
            for rel in d.relations() {
                for left in 0..=1 {
                    let pad = |f: &LinearCombination| {
                        LinearCombination::from_diagram(Diagram::identity(Word::up(left)), d.params())
                            .tensor(f)
                            .unwrap()
                    };
                    let l = pad(&LinearCombination::from_diagram(rel.lhs.clone(), d.params()));
                    if l.dom().len() > 4 {
                        continue;
                    }
                    assert_eq!(eval(&model, &l).unwrap(), eval(&model, &pad(&rel.rhs)).unwrap(), "{}", rel.name);
                }
            }
        }
        for rel in ob.relations() {
            let l = eval_diagram(&model_ob(m), &rel.lhs).unwrap();
            assert_eq!(l, eval(&model_ob(m), &rel.rhs).unwrap(), "{} m={m}", rel.name);
        }
    }
}

#[test]
fn normal_forms_evaluate_like_their_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let s = preset(PresetId::S, None).unwrap();
    let d = preset(PresetId::Ahdeg, None).unwrap();
    for k in 0..200 {
        let (p, model) = if k % 2 == 0 { (&s, model_sym(2)) } else { (&d, model_daha(2, 1, true)) };
        let n = 1 + k % 3;
        let f = LinearCombination::from_diagram(random_diagram(p, &Word::up(n), 6, n, &mut rng), p.params());
        assert_eq!(eval(&model, &normalize(p, &f).unwrap()).unwrap(), eval(&model, &f).unwrap());
    }
}

#[test]
fn missing_data_is_reported() {
    let d = preset(PresetId::Ahdeg, None).unwrap();
    assert_eq!(eval(&model_sym(2), &d.parse("x").unwrap()), Err(EvalError::Unassigned("x".into())));
    let ob = preset(PresetId::Ob, None).unwrap();
    assert!(matches!(eval(&model_sym(2), &ob.parse("cup").unwrap()), Err(EvalError::UnassignedObject('v'))));
    let h = preset(PresetId::Hecke, None).unwrap();
    let model = model_sym(2).with_generator("si", Matrix::identity(4));
    assert!(matches!(eval(&model, &h.parse("{z} s").unwrap()), Err(EvalError::Scalar(_))));
    let model = model.with_param("z", rat(0));
    assert_eq!(eval(&model, &h.parse("{z} s").unwrap()).unwrap(), Matrix::zeros(4, 4));
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let data = v.chunks(cols.max(1)).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        if rows == 0 {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(data).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eval_is_monoidal(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = preset(PresetId::Ahdeg, None).unwrap();
        let model = model_daha(2, 0, true);
        let f = random_diagram(&d, &Word::up(n), 4, n, &mut rng);
        let g = random_diagram(&d, &Word::up(n), 4, n, &mut rng);
        let h = random_diagram(&d, &Word::up(1), 2, 1, &mut rng);
        let ef = eval_diagram(&model, &f).unwrap();
        let eg = eval_diagram(&model, &g).unwrap();
        prop_assert_eq!(eval_diagram(&model, &f.compose(&g).unwrap()).unwrap(), &ef * &eg);
        let sym = model_sym(2);
        let s = preset(PresetId::S, None).unwrap();
        let a = random_diagram(&s, &Word::up(n), 4, n, &mut rng);
        let b = random_diagram(&s, &Word::up(2), 3, 2, &mut rng);
        prop_assert_eq!(
            eval_diagram(&sym, &a.tensor(&b)).unwrap(),
            eval_diagram(&sym, &a).unwrap().kron(&eval_diagram(&sym, &b).unwrap())
        );
        // a strand to the right acts like one context factor
        let eh = eval_diagram(&model, &h).unwrap();
        let left = h.tensor(&Diagram::identity(Word::up(1)));
        let with_context = model_daha(2, 1, true);
        prop_assert_eq!(eval_diagram(&model, &left).unwrap(), eval_diagram(&with_context, &h).unwrap());
        prop_assert_eq!(eh.rows(), 2);
    }

    #[test]
    fn equal_mates_in_ob_model(m in 1usize..=3, f in matrix_strategy(4, 4)) {
        let ob = preset(PresetId::Ob, None).unwrap();
        let model = model_ob(m);
        let x = Word::parse("^").unwrap();
        let f = Matrix::from_rows((0..m).map(|i| (0..m).map(|j| f.get(i, j).clone()).collect()).collect()).unwrap();
        let r = right_mate(&ob, &model, &x, &x, &f).unwrap();
        prop_assert_eq!(&r, &left_mate(&ob, &model, &x, &x, &f).unwrap());
        prop_assert_eq!(r, f.transpose());
    }

    #[test]
    fn crossing_is_an_involution(m in 1usize..=4) {
        let s = preset(PresetId::S, None).unwrap();
        let e = eval(&model_sym(m), &s.parse("s").unwrap()).unwrap();
        prop_assert_eq!(&e * &e, Matrix::identity(m * m));
        prop_assert_eq!(rational_trace(&e), rat(m as i64));
    }
}
