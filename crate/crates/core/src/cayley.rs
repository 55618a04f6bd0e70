//! Graßmann–Cayley layer: the Peano bracket through the top-grade
//! integral, the Hopf meet, Ergänzung, and the meet co-product.

use num::{One, Zero};

use crate::blade::{self, Blade};
use crate::error::{same_dim, Result};
use crate::exterior::{gco, wedge_blades, wedge_unchecked};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tensor::TensorPoly;

/// The integral `μ`: coefficient of the top blade `e1w…wn`.
pub fn mu(u: &Multivector) -> Scalar {
    u.coeff(blade::top(u.dim()))
}

/// `μ(a1 ∧ … ∧ ak)`.
pub fn bracket(args: &[Multivector]) -> Result<Scalar> {
    let Some(first) = args.first() else {
        return Ok(Scalar::zero());
    };
    let mut acc = first.clone();
    for a in &args[1..] {
        same_dim(acc.dim(), a.dim())?;
        acc = wedge_unchecked(&acc, a);
    }
    Ok(mu(&acc))
}

/// `μ(a ∧ b)` on blades.
fn mu_wedge(dim: usize, a: Blade, b: Blade) -> i8 {
    match wedge_blades(a, b) {
        Some((s, c)) if c == blade::top(dim) => s,
        _ => 0,
    }
}

/// `x ∨ y = Σ x₍₁₎ μ(y ∧ x₍₂₎)`.
pub fn meet(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    let dim = same_dim(x.dim(), y.dim())?;
    let mut m = Multivector::zero(dim);
    for (l, c) in gco(x).terms() {
        for (b, d) in y.terms() {
            let s = mu_wedge(dim, *b, l[1]);
            if s != 0 {
                m.add_signed(l[0], s, &(c * d));
            }
        }
    }
    Ok(m)
}

/// `x ∨ y = Σ μ(y₍₁₎ ∧ x) y₍₂₎`; agrees with [`meet`].
pub fn vee(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    let dim = same_dim(x.dim(), y.dim())?;
    let mut m = Multivector::zero(dim);
    for (l, c) in gco(y).terms() {
        for (a, d) in x.terms() {
            let s = mu_wedge(dim, l[0], *a);
            if s != 0 {
                m.add_signed(l[1], s, &(c * d));
            }
        }
    }
    Ok(m)
}

/// Signed complement `|b` with `μ(b ∧ |b) = 1`, extended linearly.
pub fn erganzung(u: &Multivector) -> Multivector {
    let dim = u.dim();
    let top = blade::top(dim);
    let mut m = Multivector::zero(dim);
    for (b, c) in u.terms() {
        let comp = top.minus(*b);
        m.add_signed(comp, mu_wedge(dim, *b, comp), c);
    }
    m
}

/// Inverse of [`erganzung`].
pub fn erganzung_inverse(u: &Multivector) -> Multivector {
    let dim = u.dim();
    let top = blade::top(dim);
    let mut m = Multivector::zero(dim);
    for (b, c) in u.terms() {
        // |a = b with a = top∖b and sign μ(a ∧ b)
        let a = top.minus(*b);
        m.add_signed(a, mu_wedge(dim, a, *b), c);
    }
    m
}

/// Orientation convention for [`meet_classical`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeetOrientation {
    /// Graßmann's `|(A ∨ B) = |A ∧ |B` as it stands.
    Complement,
    /// Rescaled by [`meet_sign`] so that it agrees with [`meet`].
    Hopf,
}

/// Ratio between the Hopf meet and the complement meet on blades of
/// grades `p`, `q` in dimension `n`: `(-1)^{(n-p)(n-q)}`.
pub fn meet_sign(n: usize, p: usize, q: usize) -> i8 {
    if (n - p) * (n - q) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The meet through double Ergänzung, `|⁻¹(|x ∧ |y)`.
pub fn meet_classical(x: &Multivector, y: &Multivector, o: MeetOrientation) -> Result<Multivector> {
    let dim = same_dim(x.dim(), y.dim())?;
    let mut m = Multivector::zero(dim);
    for (a, c) in x.terms() {
        for (b, d) in y.terms() {
            let w = wedge_unchecked(
                &erganzung(&Multivector::blade(dim, *a)),
                &erganzung(&Multivector::blade(dim, *b)),
            );
            let mut v = erganzung_inverse(&w).scale(&(c * d));
            if o == MeetOrientation::Hopf && meet_sign(dim, a.grade(), b.grade()) < 0 {
                v = -v;
            }
            m.axpy(&Scalar::one(), &v);
        }
    }
    Ok(m)
}

/// Co-product dual to the meet: the structure constants of `∨` read
/// backwards, `Δ_∨(x) = Σ_{y,z} [x](y ∨ z) · y ⊗ z`. Under the
/// identification `a ↦ ⟨a, ·⟩`, `⟨a, b⟩ = μ(a ∧ b)`, this is the transpose
/// of the meet; its counit is `μ`.
pub fn meet_coproduct(x: &Multivector) -> TensorPoly {
    let dim = x.dim();
    let top = blade::top(dim);
    let mut t = TensorPoly::zero(dim, 2);
    for (b, c) in x.terms() {
        // y ∨ z can only hit b when y ∩ z = b and y ∪ z = top
        let free = top.minus(*b);
        for a in free.subsets() {
            let y = b.union(a);
            let z = b.union(free.minus(a));
            let m = meet(&Multivector::blade(dim, y), &Multivector::blade(dim, z)).expect("same dim");
            t.add_term(vec![y, z], c * m.coeff(*b));
        }
    }
    t
}

/// The product rebuilt from [`meet_coproduct`] the way the meet is built
/// from the wedge co-product, with `ε` (the integral of the meet) in place
/// of `μ`: `x ⋆ y = Σ x₍₁₎ ε(y ∨ x₍₂₎)`. Equals the wedge.
pub fn lotze_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    let dim = same_dim(x.dim(), y.dim())?;
    let mut m = Multivector::zero(dim);
    for (l, c) in meet_coproduct(x).terms() {
        let e = crate::exterior::counit(&meet(y, &Multivector::blade(dim, l[1]))?);
        if !e.is_zero() {
            m.add_term(l[0], c * e);
        }
    }
    Ok(m)
}

/// Sign with which the meet of the blades `x`, `y` compares to the
/// complement meet, or `None` where both vanish.
pub fn observed_meet_sign(dim: usize, x: Blade, y: Blade) -> Option<i8> {
    let (a, b) = (Multivector::blade(dim, x), Multivector::blade(dim, y));
    let h = meet(&a, &b).ok()?;
    let c = meet_classical(&a, &b, MeetOrientation::Complement).ok()?;
    if h.is_zero() && c.is_zero() {
        None
    } else if h == c {
        Some(1)
    } else if h == -c {
        Some(-1)
    } else {
        Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, name: &str) -> Multivector {
        Multivector::blade(dim, Blade::parse(name).unwrap())
    }

    #[test]
    fn complements_dim3() {
        assert_eq!(erganzung(&e(3, "e1")), e(3, "e2we3"));
        assert_eq!(erganzung(&e(3, "e2")), -e(3, "e1we3"));
        for b in blade::basis(3) {
            let u = Multivector::blade(3, b);
            assert_eq!(erganzung_inverse(&erganzung(&u)), u);
        }
    }

    #[test]
    fn lotze_probe() {
        for n in 1..=4 {
            for x in blade::basis(n) {
                let xm = Multivector::blade(n, x);
                let t = meet_coproduct(&xm);
                let back = t.contract(|l| Multivector::blade(n, l[1]).scale(&mu(&Multivector::blade(n, l[0]))));
                assert_eq!(back, xm, "counit left {x}");
                for y in blade::basis(n) {
                    let ym = Multivector::blade(n, y);
                    assert_eq!(lotze_product(&xm, &ym).unwrap(), wedge_unchecked(&xm, &ym), "n={n} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn meet_sign_table_matches_observation() {
        for n in 1..=5 {
            for x in blade::basis(n) {
                for y in blade::basis(n) {
                    if let Some(s) = observed_meet_sign(n, x, y) {
                        assert_eq!(s, meet_sign(n, x.grade(), y.grade()), "n={n} {x} {y}");
                    }
                }
            }
        }
    }
}
