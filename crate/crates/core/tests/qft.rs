mod common;

use common::*;
use num::{One, Zero};
use qca::blade::Blade;
use qca::exterior::wedge;
use qca::hopf::{Endo, Side};
use qca::pairing::{self, VectorForm, WickDirection};
use qca::qft::*;
use qca::scalar::{frac, int};
use qca::{Multivector, QcaError, Scalar};

fn jj(l: usize, m: usize) -> Blade {
    Blade::from_indices(&[l, m])
}

/// `φ`: the wedge homomorphism sending `e_I` to `ψ^op_I(Id)`.
fn phi(x: &Multivector, ops: &[Endo]) -> Multivector {
    let dim = x.dim();
    let gens: Vec<Multivector> = ops.iter().map(|o| o.apply(&Multivector::one(dim)).unwrap()).collect();
    let mut m = Multivector::zero(dim);
    for (b, c) in x.terms() {
        let w = b.indices().iter().fold(Multivector::one(dim), |acc, &i| wedge(&acc, &gens[i - 1]).unwrap());
        m.axpy(c, &w);
    }
    m
}

#[test]
fn vertex_monomial_matches_field_operators() {
    let mut r = rng(601);
    for dim in 2..=4 {
        let q = QuantForm::new(form(&mut r, dim));
        let ops: Vec<Endo> = (1..=dim)
            .map(|i| field_op(i, &QuantForm::new(q.f().scale(&int(2))), Side::Right).unwrap())
            .collect();
        for idx in [vec![1, 2], vec![2, 1], (1..=dim).collect::<Vec<_>>()] {
            let v = vertex_monomial(&idx, &q).unwrap();
            let chain = idx.iter().fold(Endo::identity(dim), |acc, &i| acc.compose(&ops[i - 1]).unwrap());
            assert_eq!(phi(&v, &ops), chain.apply(&Multivector::one(dim)).unwrap(), "{idx:?}");
        }
    }
}

#[test]
fn vertex_monomial_three_factor_display() {
    let mut r = rng(602);
    let q = QuantForm::new(form(&mut r, 3));
    let f = q.f();
    let v = vertex_monomial(&[1, 2, 3], &q).unwrap();
    let want = e(3, "e1we2we3") - e(3, "e3").scale(f.get(1, 2)) - e(3, "e1").scale(f.get(2, 3)) - e(3, "e2").scale(f.get(3, 1));
    assert_eq!(v, want);
    // the same expansion as the inversion formula under F
    let vs: Vec<Multivector> = (1..=3).map(|i| Multivector::gen(3, i)).collect();
    let neg = f.scale(&int(-1));
    assert_eq!(v, pairing::cmul_all(3, &vs, &neg).unwrap());
}

#[test]
fn field_operators_anticommute_to_the_metric() {
    let mut r = rng(603);
    for dim in 1..=4 {
        let q = QuantForm::new(form(&mut r, dim));
        for side in [Side::Left, Side::Right] {
            let ops: Vec<Endo> = (1..=dim).map(|i| field_op(i, &q, side).unwrap()).collect();
            for i in 0..dim {
                for j in 0..dim {
                    let a = ops[i].compose(&ops[j]).unwrap().add(&ops[j].compose(&ops[i]).unwrap());
                    let g = q.g();
                    let want = if side == Side::Left { g.get(i + 1, j + 1).clone() } else { -g.get(i + 1, j + 1).clone() };
                    assert_eq!(a, Endo::identity(dim).scale(&want), "{side:?} {i},{j}");
                }
            }
        }
    }
    assert!(field_op(3, &QuantForm::new(VectorForm::zero(2)), Side::Left).is_err());
}

#[test]
fn left_and_right_fields_anticommute() {
    let mut r = rng(604);
    let q = QuantForm::new(form(&mut r, 3));
    for i in 1..=3 {
        for j in 1..=3 {
            let (a, b) = (field_op(i, &q, Side::Left).unwrap(), field_op(j, &q, Side::Right).unwrap());
            let anti = a.compose(&b).unwrap().add(&b.compose(&a).unwrap());
            assert!(anti.is_zero(), "{i},{j}");
        }
    }
}

#[test]
fn normal_order_round_trip() {
    let mut r = rng(605);
    let q = QuantForm::new(form(&mut r, 3));
    let op = field_op(1, &q, Side::Left).unwrap().compose(&field_op(2, &q, Side::Right).unwrap()).unwrap();
    let nf = normal_order(&op);
    assert_eq!(nf.to_endo(), op);
    assert!(normal_order(&Endo::zero(3)).is_empty());
}

#[test]
fn source_operators() {
    let d = source_derivative(2, 1).unwrap();
    let j = source_mul(2, 2).unwrap();
    assert_eq!(d.apply(&e(2, "e1we2")).unwrap(), e(2, "e2"));
    assert_eq!(j.apply(&e(2, "e1")).unwrap(), -e(2, "e1we2"));
    assert!(source_derivative(2, 0).is_err());
}

/// Normal form of `H[ψ^op] − H[ψ]` for `H = Σ h_IJ ψ_I ψ_J`, written out
/// by hand: a constant, a `j ∂` part and a `j j` part.
fn quadratic_oracle(h: &VectorForm, p: &VectorForm) -> NormalForm {
    let n = h.dim();
    let g = p.symmetric_part();
    let mut nf = NormalForm::zero(n);
    let mut c = Scalar::zero();
    for i in 1..=n {
        for j in 1..=n {
            c -= h.get(i, j) * g.get(i, j);
        }
    }
    nf.add_term(Blade::ID, Blade::ID, c);
    for m in 1..=n {
        for k in 1..=n {
            let mut s = Scalar::zero();
            for j in 1..=n {
                s += h.get(k, j) * g.get(m, j);
                s -= h.get(j, k) * g.get(j, m);
            }
            nf.add_term(Blade::gen(m), Blade::gen(k), s);
        }
    }
    let quarter = frac(1, 4);
    for l in 1..=n {
        for m in l + 1..=n {
            let mut s = Scalar::zero();
            for i in 1..=n {
                for j in 1..=n {
                    let t = p.get(l, i) * p.get(m, j) - p.get(i, l) * p.get(j, m) - p.get(m, i) * p.get(l, j) + p.get(i, m) * p.get(j, l);
                    s += h.get(i, j) * t;
                }
            }
            nf.add_term(jj(l, m), Blade::ID, s * &quarter);
        }
    }
    nf
}

#[test]
fn quadratic_hamiltonian_matches_oracle() {
    let mut r = rng(606);
    for dim in 1..=4 {
        for _ in 0..3 {
            let h = form(&mut r, dim);
            let q = QuantForm::new(form(&mut r, dim));
            let got = functional_hamiltonian(&Hamiltonian::quadratic(&h), &q).unwrap();
            assert_eq!(got, quadratic_oracle(&h, q.p()), "dim {dim}");
        }
    }
}

fn sigma_x() -> VectorForm {
    VectorForm::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap()
}

#[test]
fn doubled_hamiltonian_example() {
    let k = int(3);
    let d = VectorForm::new(vec![vec![-k.clone(), int(0)], vec![int(0), k.clone()]]).unwrap();
    let h = Hamiltonian::quadratic(&sigma_x().mul(&d).scale(&frac(1, 2)));
    let q = QuantForm::doubled(&VectorForm::zero(2)).unwrap();
    let got = functional_hamiltonian(&h, &q).unwrap();
    assert_eq!(got.to_string(), "3/2*j1*d1 - 3/2*j2*d2");
}

#[test]
fn antisymmetric_shift_is_invisible_in_two_dimensions() {
    // A F A^T = det(A) F for 2x2 matrices, so the j j part cancels
    let k = int(3);
    let d = VectorForm::new(vec![vec![-k.clone(), int(1)], vec![int(2), k.clone()]]).unwrap();
    let h = Hamiltonian::quadratic(&sigma_x().mul(&d).scale(&frac(1, 2)));
    let f = VectorForm::new(vec![vec![int(0), int(2)], vec![int(-2), int(0)]]).unwrap();
    let plain = functional_hamiltonian(&h, &QuantForm::doubled(&VectorForm::zero(2)).unwrap()).unwrap();
    let shifted = functional_hamiltonian(&h, &QuantForm::doubled(&f).unwrap()).unwrap();
    assert_eq!(plain, shifted);
    assert_eq!(QuantForm::doubled(&sigma_x()), Err(QcaError::NotAntisymmetric));
}

#[test]
fn antisymmetric_shift_adds_source_pairs() {
    let mut r = rng(609);
    let hm = form(&mut r, 4);
    let h = Hamiltonian::quadratic(&hm);
    let f = antisym(&mut r, 4);
    let plain = functional_hamiltonian(&h, &QuantForm::doubled(&VectorForm::zero(4)).unwrap()).unwrap();
    let q = QuantForm::doubled(&f).unwrap();
    let shifted = functional_hamiltonian(&h, &q).unwrap();
    // F changes only the j j part
    assert!(plain.terms().all(|(_, j, _)| j.grade() <= 1));
    assert!(shifted.terms().any(|(_, j, _)| j.grade() == 2));
    for (c, j, d) in plain.terms() {
        assert_eq!(&shifted.coeff(j, d), c);
    }
    assert_eq!(shifted, quadratic_oracle(&hm, q.p()));
}

#[test]
fn hamiltonian_input_validation() {
    let mut h = Hamiltonian::new(2).unwrap();
    assert!(h.add_term(vec![3], int(1)).is_err());
    h.add_dense(2, &[int(1), int(0), int(0), int(1)]).unwrap();
    assert!(h.add_dense(2, &[int(1)]).is_err());
    assert!(!h.is_zero());
    assert_eq!(h.terms().count(), 2);
}

#[test]
fn ordering_transform_is_the_transposed_wick_map() {
    let mut r = rng(607);
    for dim in 2..=3 {
        let f = antisym(&mut r, dim);
        let tn = Endo::from_fn(dim, |b| ordering_transform(&Multivector::blade(dim, b), &f, OrderingDirection::TimeToNormal).unwrap());
        let wick = Endo::from_fn(dim, |b| pairing::wick_transform(&Multivector::blade(dim, b), &f, WickDirection::FromDotted).unwrap());
        let t = tn.matrix();
        let w = wick.matrix();
        for (i, row) in t.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x, &w[j][i]);
            }
        }
        let u = mv(&mut r, dim);
        let there = ordering_transform(&u, &f, OrderingDirection::TimeToNormal).unwrap();
        assert_eq!(ordering_transform(&there, &f, OrderingDirection::NormalToTime).unwrap(), u);
    }
}

#[test]
fn exponential_of_a_bivector() {
    let f = VectorForm::new(vec![vec![int(0), frac(1, 2)], vec![frac(-1, 2), int(0)]]).unwrap();
    let b = propagator_bivector(&f).unwrap();
    assert_eq!(b, e(2, "e1we2").scale(&frac(1, 2)));
    assert_eq!(exp_wedge(&b).unwrap(), Multivector::one(2) + b.clone());
    assert!(exp_wedge(&Multivector::one(2)).is_err());
    // exp(x + y) = exp(x) ∧ exp(y) for commuting even elements
    let (x, y) = (e(4, "e1we2"), e(4, "e3we4").scale(&int(3)));
    assert_eq!(exp_wedge(&(&x + &y)).unwrap(), wedge(&exp_wedge(&x).unwrap(), &exp_wedge(&y).unwrap()).unwrap());
}

#[test]
fn expectations_follow_wick() {
    let mut r = rng(608);
    let b = form(&mut r, 4);
    assert!(expectation(&[], &b).unwrap().is_one());
    assert_eq!(expectation(&[1, 2], &b).unwrap(), b.get(1, 2).clone());
    let want = b.get(1, 2) * b.get(3, 4) - b.get(1, 3) * b.get(2, 4) + b.get(1, 4) * b.get(2, 3);
    assert_eq!(expectation(&[1, 2, 3, 4], &b).unwrap(), want);
    assert!(expectation(&[1, 2, 3], &b).unwrap().is_zero());
}

#[test]
fn u1_vacuum() {
    let nu = frac(2, 7);
    let b = u1_matrix(&nu);
    assert_eq!(expectation(&[1, 2], &b).unwrap(), nu);
    assert_eq!(expectation(&[2, 1], &b).unwrap(), Scalar::one() - &nu);
}

#[test]
fn u2_states() {
    let z = Scalar::zero;
    let fock = U2Params { r: int(1), s: int(1), q: z(), t: z(), u: z(), m: z() };
    let a = u2_analysis(&fock).unwrap();
    assert!(a.positive && a.quasifree && !a.interior);
    let inner = U2Params { r: frac(1, 2), s: frac(1, 2), q: z(), t: z(), u: z(), m: frac(-1, 8) };
    let a = u2_analysis(&inner).unwrap();
    assert_eq!(a.w, frac(1, 4));
    assert!(a.positive && a.quasifree && a.interior);
    let strict = U2Params { m: z(), q: frac(1, 10), t: frac(1, 10), ..inner.clone() };
    let a = u2_analysis(&strict).unwrap();
    assert!(a.interior && a.positive && !a.quasifree);
    let outside = U2Params { r: int(2), s: int(2), ..inner };
    assert!(!u2_analysis(&outside).unwrap().positive);
    assert_eq!(u2_matrix(&fock).dim(), 4);
    let broken = U2Params { s: int(0), ..fock };
    assert_eq!(u2_analysis(&broken), Err(QcaError::NotU2Invariant));
}
