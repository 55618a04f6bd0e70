mod common;

use common::*;
use num::{One, Zero};
use qca::blade::{self, Blade};
use qca::exterior::*;
use qca::scalar::int;
use qca::{Multivector, Scalar, TensorPoly};

#[test]
fn wedge_matches_permutation_oracle() {
    let mut r = rng(101);
    for dim in 1..=5 {
        for _ in 0..20 {
            let (u, v) = (mv(&mut r, dim), mv(&mut r, dim));
            assert_eq!(wedge(&u, &v).unwrap(), wedge_oracle(&u, &v), "dim {dim}: {u} ^ {v}");
        }
    }
}

#[test]
fn wedge_of_generators() {
    assert_eq!(wedge(&e(3, "e2"), &e(3, "e1")).unwrap(), -e(3, "e1we2"));
    assert!(wedge(&e(3, "e1we2"), &e(3, "e2we3")).unwrap().is_zero());
    assert_eq!(wedge(&e(3, "e1we3"), &e(3, "e2")).unwrap(), -e(3, "e1we2we3"));
}

#[test]
fn wedge_rejects_mixed_dimensions() {
    assert!(wedge(&e(2, "e1"), &e(3, "e2")).is_err());
}

#[test]
fn gco_matches_subset_oracle() {
    let mut r = rng(102);
    for dim in 1..=5 {
        for _ in 0..10 {
            let u = mv(&mut r, dim);
            assert_eq!(gco(&u), gco_oracle(&u));
        }
    }
}

#[test]
fn gco_of_top_blade_has_all_splits() {
    for dim in 1..=6 {
        let t = gco(&Multivector::blade(dim, blade::top(dim)));
        assert_eq!(t.len(), 1 << dim);
        // every split wedges back to the blade
        assert_eq!(wedge_legs(&t), Multivector::blade(dim, blade::top(dim)).scale(&int(1 << dim)));
    }
}

#[test]
fn grade_involution_and_reversion_signs() {
    for b in blade::basis(4) {
        let x = Multivector::blade(4, b);
        let k = b.grade();
        let gi = if k % 2 == 0 { int(1) } else { int(-1) };
        let rv = if (k * (k.saturating_sub(1)) / 2) % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(grade_involution(&x), x.scale(&gi));
        assert_eq!(reversion_wedge(&x), x.scale(&rv));
    }
}

#[test]
fn reversion_is_an_anti_homomorphism() {
    let mut r = rng(103);
    for _ in 0..30 {
        let (u, v) = (mv(&mut r, 4), mv(&mut r, 4));
        let lhs = reversion_wedge(&wedge(&u, &v).unwrap());
        let rhs = wedge(&reversion_wedge(&v), &reversion_wedge(&u)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn grade_projection_partitions() {
    let mut r = rng(104);
    let u = mv(&mut r, 4);
    let sum = (0..=4).fold(Multivector::zero(4), |acc, k| acc + grade_project(&u, k));
    assert_eq!(sum, u);
}

#[test]
fn counit_reads_scalar_part() {
    let u = e(2, "e1") + Multivector::scalar(2, int(5));
    assert_eq!(counit(&u), int(5));
    assert_eq!(counit_blade(Blade::ID), Scalar::one());
    assert!(counit_blade(Blade::gen(1)).is_zero());
}

#[test]
fn switch_sign_table() {
    assert_eq!(switch_sign(1, 1), -1);
    assert_eq!(switch_sign(1, 2), 1);
    assert_eq!(switch_sign(3, 3), -1);
    assert_eq!(switch_sign(0, 5), 1);
}

#[test]
fn graded_switch_is_an_involution() {
    let mut r = rng(105);
    let t = TensorPoly::product(&[mv(&mut r, 3), mv(&mut r, 3)]).unwrap();
    assert_eq!(graded_switch(&graded_switch(&t)), t);
}

#[test]
fn graded_tensor_wedge_sign() {
    // (Id ⊗ e1)(e2 ⊗ Id) picks up the sign of moving e1 past e2
    let a = TensorPoly::basis_term(2, vec![Blade::ID, Blade::gen(1)], int(1));
    let b = TensorPoly::basis_term(2, vec![Blade::gen(2), Blade::ID], int(1));
    let got = graded_tensor_wedge(&a, &b);
    assert_eq!(got, TensorPoly::basis_term(2, vec![Blade::gen(2), Blade::gen(1)], int(-1)));
}
