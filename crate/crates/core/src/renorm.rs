//! Cliffordization by free pairings on `∧V × ∧V`, the checks that decide
//! whether such a product is unital, associative and CAR-preserving, and
//! the group of normalized ordering forms with their coboundaries.

use num::{One, Zero};

use crate::blade::{self, Blade};
use crate::error::{same_dim, QcaError, Result};
use crate::exterior::{counit_blade, wedge_blades};
use crate::hopf::{Endo, LinForm};
use crate::linalg::Matrix;
use crate::multivector::Multivector;
use crate::pairing::{GradedPairing, VectorForm};
use crate::scalar::Scalar;

/// A free bilinear form on `∧V`, `BF(e_a, e_b)` at row `a`, column `b`
/// in graded-lexicographic blade order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPairing {
    dim: usize,
    m: Matrix,
    pos: Vec<usize>,
}

impl GeneralPairing {
    pub fn new(dim: usize, m: Matrix) -> Result<Self> {
        if dim == 0 || dim > crate::MAX_DIM {
            return Err(QcaError::BadDim(dim));
        }
        let n = 1 << dim;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(QcaError::Shape(format!("pairing must be {n}x{n}")));
        }
        Ok(GeneralPairing {
            dim,
            m,
            pos: blade::positions(dim),
        })
    }

    pub fn from_fn(dim: usize, f: impl Fn(Blade, Blade) -> Scalar) -> Self {
        let basis = blade::basis(dim);
        let m = basis.iter().map(|&a| basis.iter().map(|&b| f(a, b)).collect()).collect();
        GeneralPairing {
            dim,
            m,
            pos: blade::positions(dim),
        }
    }

    pub fn from_graded(g: &GradedPairing) -> Self {
        Self::from_fn(g.dim(), |a, b| g.value(a, b))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn value(&self, a: Blade, b: Blade) -> &Scalar {
        &self.m[self.pos[a.0 as usize]][self.pos[b.0 as usize]]
    }

    pub fn set(&mut self, a: Blade, b: Blade, v: Scalar) {
        let (i, j) = (self.pos[a.0 as usize], self.pos[b.0 as usize]);
        self.m[i][j] = v;
    }

    pub fn eval(&self, u: &Multivector, v: &Multivector) -> Scalar {
        let mut s = Scalar::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                s += x * y * self.value(*a, *b);
            }
        }
        s
    }
}

fn rmul_blades(dim: usize, a: Blade, b: Blade, bf: &GeneralPairing) -> Multivector {
    let mut m = Multivector::zero(dim);
    for (s1, a1, a2) in a.splits() {
        for (s2, b1, b2) in b.splits() {
            let p = bf.value(a2, b1);
            if p.is_zero() {
                continue;
            }
            if let Some((s3, c)) = wedge_blades(a1, b2) {
                m.add_signed(c, s1 * s2 * s3, p);
            }
        }
    }
    m
}

/// `u &r v = Σ BF(u₍₂₎, v₍₁₎) u₍₁₎ ∧ v₍₂₎`.
pub fn rmul(u: &Multivector, v: &Multivector, bf: &GeneralPairing) -> Result<Multivector> {
    same_dim(u.dim(), v.dim())?;
    same_dim(u.dim(), bf.dim)?;
    let mut m = Multivector::zero(u.dim());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            m.axpy(&(x * y), &rmul_blades(u.dim(), *a, *b, bf));
        }
    }
    Ok(m)
}

/// `BF(Id, X) = ε(X) = BF(X, Id)` for every blade `X`.
pub fn check_unit(bf: &GeneralPairing) -> bool {
    blade::basis(bf.dim).into_iter().all(|x| {
        let e = counit_blade(x);
        *bf.value(Blade::ID, x) == e && *bf.value(x, Blade::ID) == e
    })
}

/// First basis triple violating associativity, if any.
pub fn assoc_witness(bf: &GeneralPairing) -> Option<(Blade, Blade, Blade)> {
    let dim = bf.dim;
    let basis = blade::basis(dim);
    let table: Vec<Vec<Multivector>> = basis
        .iter()
        .map(|&a| basis.iter().map(|&b| rmul_blades(dim, a, b, bf)).collect())
        .collect();
    let pos = blade::positions(dim);
    let mul = |u: &Multivector, k: usize, left: bool| {
        let mut m = Multivector::zero(dim);
        for (b, c) in u.terms() {
            let j = pos[b.0 as usize];
            m.axpy(c, if left { &table[j][k] } else { &table[k][j] });
        }
        m
    };
    for (i, &a) in basis.iter().enumerate() {
        for (j, &b) in basis.iter().enumerate() {
            for (k, &c) in basis.iter().enumerate() {
                let lhs = mul(&table[i][j], k, true);
                let rhs = mul(&table[j][k], i, false);
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// `(u &r v) &r w == u &r (v &r w)` on all basis triples.
pub fn check_assoc(bf: &GeneralPairing) -> bool {
    assoc_witness(bf).is_none()
}

/// `e_i &r e_j + e_j &r e_i == (BF(e_i,e_j) + BF(e_j,e_i)) Id` for all `i, j`.
pub fn check_car(bf: &GeneralPairing) -> bool {
    let dim = bf.dim;
    (1..=dim).all(|i| {
        (1..=dim).all(|j| {
            let (a, b) = (Blade::gen(i), Blade::gen(j));
            let lhs = &rmul_blades(dim, a, b, bf) + &rmul_blades(dim, b, a, bf);
            let want = bf.value(a, b) + bf.value(b, a);
            lhs == Multivector::scalar(dim, want)
        })
    })
}

/// Convolution of linear forms through the Graßmann co-product,
/// `(α ⋆ β)(x) = Σ α(x₍₁₎) β(x₍₂₎)`.
pub fn form_convolve(a: &LinForm, b: &LinForm) -> Result<LinForm> {
    let dim = same_dim(a.dim(), b.dim())?;
    Ok(LinForm::from_fn(dim, |x| {
        x.splits()
            .map(|(s, x1, x2)| {
                let v = a.value(x1) * b.value(x2);
                if s > 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }))
}

/// Convolution inverse of a linear form with `p(Id) ≠ 0`.
pub fn form_inverse(p: &LinForm) -> Result<LinForm> {
    let dim = p.dim();
    let p0 = p.value(Blade::ID);
    if p0.is_zero() {
        return Err(QcaError::NotInvertible);
    }
    let inv0 = Scalar::one() / &p0;
    let mut vals: std::collections::HashMap<Blade, Scalar> = std::collections::HashMap::new();
    // grade order guarantees every proper part is already known
    for x in blade::basis(dim) {
        let v = if x.is_id() {
            inv0.clone()
        } else {
            let mut acc = Scalar::zero();
            for (s, x1, x2) in x.splits() {
                if x1.is_id() {
                    continue;
                }
                let t = p.value(x1) * &vals[&x2];
                if s > 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            -acc * &inv0
        };
        vals.insert(x, v);
    }
    Ok(LinForm::from_fn(dim, |x| vals[&x].clone()))
}

/// A normalized ordering form: `Z(Id) = 1`, `Z(e_i) = 0`, and, if `even`,
/// zero on every odd grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingForm {
    z: LinForm,
    even: bool,
}

impl OrderingForm {
    pub fn new(z: LinForm, even: bool) -> Result<Self> {
        let dim = z.dim();
        if z.value(Blade::ID) != Scalar::one() {
            return Err(QcaError::BadOrderingForm("Z(Id) must be 1".into()));
        }
        if (1..=dim).any(|i| !z.value(Blade::gen(i)).is_zero()) {
            return Err(QcaError::BadOrderingForm("Z must vanish on generators".into()));
        }
        if even && blade::basis(dim).into_iter().any(|b| b.grade() % 2 == 1 && !z.value(b).is_zero()) {
            return Err(QcaError::BadOrderingForm("even Z must vanish on odd grades".into()));
        }
        Ok(OrderingForm { z, even })
    }

    /// `Z = ε`.
    pub fn counit(dim: usize) -> Self {
        OrderingForm {
            z: LinForm::counit(dim),
            even: true,
        }
    }

    pub fn form(&self) -> &LinForm {
        &self.z
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn dim(&self) -> usize {
        self.z.dim()
    }
}

/// `Z⁻¹` with `Σ Z(x₍₁₎) Z⁻¹(x₍₂₎) = ε(x)`.
pub fn z_inverse(z: &OrderingForm) -> OrderingForm {
    let inv = form_inverse(&z.z).expect("Z(Id) = 1");
    OrderingForm { z: inv, even: z.even }
}

/// `∂Z(u, v) = Σ Z(u₍₁₎) Z⁻¹(u₍₂₎ ∧ v₍₁₎) Z(v₍₂₎)`.
pub fn z_coboundary(z: &OrderingForm) -> GeneralPairing {
    coboundary_of(&z.z, &z_inverse(z).z)
}

fn coboundary_of(p: &LinForm, pinv: &LinForm) -> GeneralPairing {
    let dim = p.dim();
    GeneralPairing::from_fn(dim, |u, v| {
        let mut acc = Scalar::zero();
        for (s1, u1, u2) in u.splits() {
            let zu = p.value(u1);
            if zu.is_zero() {
                continue;
            }
            for (s2, v1, v2) in v.splits() {
                let zv = p.value(v2);
                if zv.is_zero() {
                    continue;
                }
                let Some((s3, w)) = wedge_blades(u2, v1) else {
                    continue;
                };
                let t = &zu * &zv * pinv.value(w);
                if s1 * s2 * s3 > 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
        }
        acc
    })
}

/// `BF(u, v) = Σ ∂Z(u₍₁₎, v₍₂₎) B^∧(u₍₂₎, v₍₁₎)`.
pub fn combined_pairing(b: &VectorForm, z: &OrderingForm) -> Result<GeneralPairing> {
    let dim = same_dim(b.dim(), z.dim())?;
    let dz = z_coboundary(z);
    let bw = crate::pairing::extend_pairing(b);
    Ok(GeneralPairing::from_fn(dim, |u, v| {
        let mut acc = Scalar::zero();
        for (s1, u1, u2) in u.splits() {
            for (s2, v1, v2) in v.splits() {
                let Some(bv) = bw.value_ref(u2, v1) else {
                    continue;
                };
                let t = dz.value(u1, v2) * bv;
                if s1 * s2 > 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
        }
        acc
    }))
}

/// `P(x) = Σ p(x₍₁₎) x₍₂₎`.
pub fn ordering_operator(p: &LinForm) -> Result<Endo> {
    if p.value(Blade::ID).is_zero() {
        return Err(QcaError::NotInvertible);
    }
    let dim = p.dim();
    Ok(Endo::from_fn(dim, |x| {
        let mut m = Multivector::zero(dim);
        for (s, x1, x2) in x.splits() {
            m.add_signed(x2, s, &p.value(x1));
        }
        m
    }))
}

/// Checks `P(x ∘ y) = P(x) ∧ P(y)` on all basis pairs, where `∘` is
/// [`rmul`] under `∂p`. Holds for even `p`; odd parts break it.
pub fn ordering_homomorphism_holds(p: &LinForm) -> Result<bool> {
    let dim = p.dim();
    let op = ordering_operator(p)?;
    let dp = form_coboundary(p)?;
    let img: Vec<Multivector> = blade::basis(dim).into_iter().map(|b| op.image(b)).collect();
    for (i, &x) in blade::basis(dim).iter().enumerate() {
        for (j, &y) in blade::basis(dim).iter().enumerate() {
            let prod = rmul_blades(dim, x, y, &dp);
            if op.apply(&prod)? != crate::exterior::wedge_unchecked(&img[i], &img[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The coboundary `∂p` of an arbitrary invertible linear form.
pub fn form_coboundary(p: &LinForm) -> Result<GeneralPairing> {
    Ok(coboundary_of(p, &form_inverse(p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn z_inverse_one_step() {
        // Z(e1we2) = λ and zero above grade 0 otherwise
        let lam = frac(3, 7);
        let z = LinForm::from_fn(2, |b| match b.grade() {
            0 => int(1),
            2 => lam.clone(),
            _ => int(0),
        });
        let zi = z_inverse(&OrderingForm::new(z, true).unwrap());
        assert_eq!(zi.form().value(Blade(3)), -lam);
    }

    #[test]
    fn coboundary_on_generators() {
        let z = LinForm::from_fn(3, |b| match b.grade() {
            0 => int(1),
            2 => int(b.0 as i64),
            _ => int(0),
        });
        let z = OrderingForm::new(z, true).unwrap();
        let dz = z_coboundary(&z);
        assert_eq!(*dz.value(Blade::gen(1), Blade::gen(2)), -z.form().value(Blade(3)));
        for x in blade::basis(3) {
            assert_eq!(*dz.value(Blade::ID, x), counit_blade(x));
        }
    }
}
