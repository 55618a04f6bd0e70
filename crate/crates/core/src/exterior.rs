//! Graßmann algebra and co-algebra: wedge, grades, involutions,
//! co-product and counit.

use num::{One, Zero};

use crate::blade::Blade;
use crate::error::{same_dim, Result};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tensor::TensorPoly;

/// `a ∧ b` on blades as `(sign, blade)`.
pub fn wedge_blades(a: Blade, b: Blade) -> Option<(i8, Blade)> {
    a.wedge_sign(b).map(|s| (s, a.union(b)))
}

pub(crate) fn wedge_unchecked(u: &Multivector, v: &Multivector) -> Multivector {
    let mut m = Multivector::zero(u.dim());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            if let Some((s, c)) = wedge_blades(*a, *b) {
                m.add_signed(c, s, &(x * y));
            }
        }
    }
    m
}

pub fn wedge(u: &Multivector, v: &Multivector) -> Result<Multivector> {
    same_dim(u.dim(), v.dim())?;
    Ok(wedge_unchecked(u, v))
}

/// Wedge of a list; the unit for an empty list.
pub fn wedge_all(dim: usize, factors: &[Multivector]) -> Result<Multivector> {
    let mut acc = Multivector::one(dim);
    for f in factors {
        acc = wedge(&acc, f)?;
    }
    Ok(acc)
}

pub fn grade_project(u: &Multivector, r: usize) -> Multivector {
    let mut m = Multivector::zero(u.dim());
    for (b, c) in u.terms().filter(|(b, _)| b.grade() == r) {
        m.add_term(*b, c.clone());
    }
    m
}

fn map_sign(u: &Multivector, sign: impl Fn(usize) -> bool) -> Multivector {
    let mut m = Multivector::zero(u.dim());
    for (b, c) in u.terms() {
        m.add_term(*b, if sign(b.grade()) { -c.clone() } else { c.clone() });
    }
    m
}

/// `(-1)^k` on grade `k`.
pub fn grade_involution(u: &Multivector) -> Multivector {
    map_sign(u, |k| k % 2 == 1)
}

/// `(-1)^{k(k-1)/2}` on grade `k`.
pub fn reversion_wedge(u: &Multivector) -> Multivector {
    map_sign(u, |k| (k * k.saturating_sub(1) / 2) % 2 == 1)
}

/// Graßmann co-product of a single blade.
pub fn gco_blade(dim: usize, b: Blade) -> TensorPoly {
    let mut t = TensorPoly::zero(dim, 2);
    for (s, b1, b2) in b.splits() {
        t.add_term(vec![b1, b2], crate::scalar::sign(s));
    }
    t
}

/// `Δ(S) = Σ sgn(S1,S2) S1 ⊗ S2` over ordered bipartitions.
pub fn gco(u: &Multivector) -> TensorPoly {
    let mut t = TensorPoly::zero(u.dim(), 2);
    for (b, c) in u.terms() {
        for (s, b1, b2) in b.splits() {
            t.add_term(vec![b1, b2], if s > 0 { c.clone() } else { -c.clone() });
        }
    }
    t
}

/// Coefficient of `Id`.
pub fn counit(u: &Multivector) -> Scalar {
    u.coeff(Blade::ID)
}

pub fn counit_blade(b: Blade) -> Scalar {
    if b.is_id() {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Koszul sign of swapping blades of grades `p` and `q`.
pub fn switch_sign(p: usize, q: usize) -> i8 {
    if p * q % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a`.
pub fn graded_switch(t: &TensorPoly) -> TensorPoly {
    assert_eq!(t.rank(), 2);
    t.swap_legs(0, true)
}

/// Product on `A ⊗ A` with the graded switch on the inner legs:
/// `(a⊗b)(c⊗d) = (-1)^{|b||c|} (a∧c) ⊗ (b∧d)`.
pub fn graded_tensor_wedge(s: &TensorPoly, t: &TensorPoly) -> TensorPoly {
    assert!(s.rank() == 2 && t.rank() == 2);
    let mut out = TensorPoly::zero(s.dim(), 2);
    for (l, x) in s.terms() {
        for (r, y) in t.terms() {
            let (Some((s1, ac)), Some((s2, bd))) = (wedge_blades(l[0], r[0]), wedge_blades(l[1], r[1])) else {
                continue;
            };
            let sign = s1 * s2 * switch_sign(l[1].grade(), r[0].grade());
            let v = x * y;
            out.add_term(vec![ac, bd], if sign > 0 { v } else { -v });
        }
    }
    out
}

/// Applies `wedge` to every term of a rank-2 tensor and sums.
pub fn wedge_legs(t: &TensorPoly) -> Multivector {
    t.contract(|l| {
        let mut m = Multivector::zero(t.dim());
        if let Some((s, b)) = wedge_blades(l[0], l[1]) {
            m.add_term(b, crate::scalar::sign(s));
        }
        m
    })
}
