use super::*;
use crate::rational;

fn ints(v: &[i64]) -> LGroupElement {
    LGroupElement::Ints(v.to_vec())
}

#[test]
fn abs_examples() {
    let z1 = LGroupU::scaled_int(1).unwrap();
    assert_eq!(abs(&z1, &LGroupElement::Int(-3)).unwrap(), LGroupElement::Int(3));
    let z2 = LGroupU::free_pointwise(vec![1, 1]).unwrap();
    assert_eq!(abs(&z2, &ints(&[2, -1])).unwrap(), ints(&[2, 1]));
    let lex = LGroupU::lex2((1, 0));
    assert_eq!(abs(&lex, &ints(&[0, -5])).unwrap(), ints(&[0, 5]));
    assert!(abs(&lex, &LGroupElement::Int(1)).is_err());
}

#[test]
fn positive_and_negative_parts() {
    let z1 = LGroupU::scaled_int(1).unwrap();
    assert_eq!(pos_part(&z1, &LGroupElement::Int(-2)).unwrap(), LGroupElement::Int(0));
    assert_eq!(neg_part(&z1, &LGroupElement::Int(-2)).unwrap(), LGroupElement::Int(2));
    let z2 = LGroupU::free_pointwise(vec![1, 1]).unwrap();
    assert_eq!(pos_part(&z2, &ints(&[2, -1])).unwrap(), ints(&[2, 0]));
    assert_eq!(neg_part(&z2, &ints(&[2, -1])).unwrap(), ints(&[0, 1]));
    let lex = LGroupU::lex2((1, 0));
    assert_eq!(pos_part(&lex, &ints(&[0, 3])).unwrap(), ints(&[0, 3]));
    // (1,-4) > 0 lexicographically, so it is its own positive part
    assert_eq!(pos_part(&lex, &ints(&[1, -4])).unwrap(), ints(&[1, -4]));
    assert!(neg_part(&z2, &ints(&[1])).is_err());
}

#[test]
fn unit_bounds_are_minimal_on_positive_elements() {
    let z2 = LGroupU::free_pointwise(vec![1, 2]).unwrap();
    assert_eq!(z2.unit_bound(&ints(&[3, 5])), Some(3));
    assert_eq!(z2.unit_bound(&ints(&[0, 0])), Some(0));
    let lex = LGroupU::lex2((1, 0));
    // x = (a, b) ≥ 0 gives max(a, 0) + 1
    assert_eq!(lex.unit_bound(&ints(&[2, 7])), Some(3));
    assert_eq!(lex.unit_bound(&ints(&[0, 9])), Some(1));
    // and |x| for negative x
    assert_eq!(lex.unit_bound(&ints(&[-2, 7])), Some(3));
    let z3 = LGroupU::scaled_int(3).unwrap();
    assert_eq!(z3.unit_bound(&LGroupElement::Int(7)), Some(3));
    assert_eq!(z3.unit_bound(&LGroupElement::Int(-6)), Some(2));
    let bad = LGroupU::free_pointwise(vec![1, 0]).unwrap();
    assert!(bad.flagged_non_strong());
    assert_eq!(bad.unit_bound(&ints(&[0, 1])), None);
    assert_eq!(bad.unit_bound(&ints(&[4, 0])), Some(4));
}

#[test]
fn axioms_hold_on_the_group_zoo() {
    let b = Budget::default();
    let groups = vec![
        LGroupU::scaled_int(1).unwrap(),
        LGroupU::scaled_int(4).unwrap(),
        LGroupU::free_pointwise(vec![1, 1]).unwrap(),
        LGroupU::lex2((1, 0)),
        LGroupU::rational_vec(vec![rational::int(1)]).unwrap(),
        LGroupU::rational_vec(vec![rational::q(1, 2), rational::int(3)]).unwrap(),
    ];
    for g in &groups {
        let rep = check_lu_axioms(g, &b);
        assert!(rep.is_pass(), "{rep}");
        assert!(rep.checked > 1000);
    }
}

#[test]
fn non_strong_unit_fails_axiom_14_at_basis_vector() {
    let g = LGroupU::free_pointwise(vec![1, 0]).unwrap();
    let rep = check_lu_axioms(&g, &Budget::default());
    assert!(rep.is_fail());
    let fail = rep.failure.unwrap();
    assert!(fail.law.starts_with("axiom 14"), "{}", fail.law);
    assert_eq!(fail.value("x"), Some("(0,1)"));
}

#[test]
fn lex_with_non_strong_unit_fails() {
    let g = LGroupU::lex2((0, 1));
    let rep = check_lu_axioms(&g, &Budget::default());
    assert!(rep.is_fail());
    assert!(rep.law().unwrap().starts_with("axiom 14"));
}

#[test]
fn torsion() {
    let b = Budget::default();
    assert!(check_torsion_free(&LGroupU::scaled_int(1).unwrap(), &b, TORSION_MULTIPLIER).is_pass());
    assert!(check_torsion_free(&LGroupU::free_pointwise(vec![1, 1]).unwrap(), &b, 50).is_pass());
    let rep = check_torsion_free(&FiniteAbelian::new(vec![4]), &b, 50);
    assert!(rep.is_fail());
    let fail = rep.failure.unwrap();
    // first nonzero element is 1, which has order 4
    assert_eq!(fail.value("x"), Some("(1)"));
    assert_eq!(fail.value("n"), Some("4"));
}

#[test]
fn finite_abelian_classes() {
    let gs = FiniteAbelian::all_up_to(6);
    let names: Vec<String> = gs.iter().map(|g| g.describe()).collect();
    for n in ["trivial group", "ℤ/2", "ℤ/2×ℤ/2", "ℤ/2×ℤ/3", "ℤ/6", "ℤ/5", "ℤ/4"] {
        assert!(names.contains(&n.to_string()), "{names:?}");
    }
    assert!(gs.iter().all(|g| g.order() <= 6));
    let b = Budget::default();
    for g in gs {
        let rep = check_torsion_free(&g, &b, 6);
        assert_eq!(rep.is_pass(), g.order() == 1, "{rep}");
    }
}

#[test]
fn times_matches_repeated_addition() {
    let g = LGroupU::lex2((1, 0));
    let x = ints(&[2, -3]);
    let mut acc = g.zero();
    for n in 0..10u64 {
        assert_eq!(g.times(n, &x), acc);
        assert_eq!(AbelianGroup::times(&FiniteAbelian::new(vec![5]), n, &vec![2]), vec![(2 * n) % 5]);
        acc = g.add(&acc, &x);
    }
}
