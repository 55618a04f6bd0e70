//! Fermionic operator ordering on the algebra of Schwinger sources
//! `j_1 … j_n` (the generators `e_i`): field operators as Clifford maps,
//! functional Hamiltonians in normal form, time/normal ordering, and the
//! U(1)/U(2) vacuum states.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::blade::{self, Blade};
use crate::error::{same_dim, QcaError, Result};
use crate::exterior::{counit, wedge_blades, wedge_unchecked};
use crate::hopf::{Endo, Side};
use crate::multivector::Multivector;
use crate::pairing::{cmul_all, VectorForm};
use crate::scalar::{frac, int, Scalar};

/// Quantization form `P = g + F` on the source space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantForm {
    p: VectorForm,
}

impl QuantForm {
    pub fn new(p: VectorForm) -> Self {
        QuantForm { p }
    }

    /// `g + F` with the doubled-index metric `2 g_ij = δ_{i, n+1-j}`.
    pub fn doubled(f: &VectorForm) -> Result<Self> {
        if !f.is_antisymmetric() {
            return Err(QcaError::NotAntisymmetric);
        }
        let n = f.dim();
        let g = VectorForm::from_fn(n, |i, j| if i + j == n + 1 { frac(1, 2) } else { int(0) });
        Ok(QuantForm { p: g.add(f) })
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn p(&self) -> &VectorForm {
        &self.p
    }

    /// Symmetric part `g`.
    pub fn g(&self) -> VectorForm {
        self.p.symmetric_part()
    }

    /// Antisymmetric part `F`.
    pub fn f(&self) -> VectorForm {
        self.p.antisymmetric_part()
    }
}

fn check_index(i: usize, dim: usize) -> Result<()> {
    if i == 0 || i > dim {
        Err(QcaError::IndexOutOfRange { index: i, dim })
    } else {
        Ok(())
    }
}

/// `∂_i`, the left derivation `∂_i(e_B) = (-1)^{#{b ∈ B : b < i}} e_{B∖i}`.
pub fn source_derivative(dim: usize, i: usize) -> Result<Endo> {
    check_index(i, dim)?;
    let g = Blade::gen(i);
    Ok(Endo::from_fn(dim, |b| {
        if !b.contains(i) {
            return Multivector::zero(dim);
        }
        let rest = b.minus(g);
        let (s, _) = wedge_blades(g, rest).expect("disjoint");
        Multivector::term(dim, rest, int(s as i64))
    }))
}

/// `j_i ∧ ·`.
pub fn source_mul(dim: usize, i: usize) -> Result<Endo> {
    check_index(i, dim)?;
    let g = Multivector::gen(dim, i);
    Ok(Endo::from_fn(dim, |b| wedge_unchecked(&g, &Multivector::blade(dim, b))))
}

/// `ψ_I = ∂_I + ½ Σ_L P_IL j_L ∧` on the left, and
/// `ψ^op_I = ∂_I − ½ Σ_L P_LI j_L ∧` for the opposite product.
pub fn field_op(i: usize, q: &QuantForm, side: Side) -> Result<Endo> {
    let dim = q.dim();
    let mut op = source_derivative(dim, i)?;
    let half = frac(1, 2);
    for l in 1..=dim {
        let c = match side {
            Side::Left => &half * q.p().get(i, l),
            Side::Right => -&half * q.p().get(l, i),
        };
        if !c.is_zero() {
            op = op.add(&source_mul(dim, l)?.scale(&c));
        }
    }
    Ok(op)
}

/// `ψ_{I1} ∘ … ∘ ψ_{Ik}` applied to `Id`, in the wedge basis. Only the
/// antisymmetric part `F` of `P` enters, as the Clifford product under
/// `-F`, so no diagonal entry `P_II` ever appears.
pub fn vertex_monomial(indices: &[usize], q: &QuantForm) -> Result<Multivector> {
    let dim = q.dim();
    for &i in indices {
        check_index(i, dim)?;
    }
    let gens: Vec<Multivector> = indices.iter().map(|&i| Multivector::gen(dim, i)).collect();
    cmul_all(dim, &gens, &q.f().scale(&int(-1)))
}

/// A polynomial `Σ h_{I1…Ik} ψ_{I1} … ψ_{Ik}` in abstract fields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hamiltonian {
    dim: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Hamiltonian {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > crate::MAX_DIM {
            return Err(QcaError::BadDim(dim));
        }
        Ok(Hamiltonian {
            dim,
            terms: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, indices: Vec<usize>, c: Scalar) -> Result<()> {
        for &i in &indices {
            check_index(i, self.dim)?;
        }
        let e = self.terms.entry(indices).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    /// Adds a dense coefficient tensor of the given degree, row-major over
    /// `1..=dim` in every slot.
    pub fn add_dense(&mut self, degree: usize, coeffs: &[Scalar]) -> Result<()> {
        let n = self.dim;
        let len = n.pow(degree as u32);
        if coeffs.len() != len {
            return Err(QcaError::Shape(format!("degree-{degree} tensor needs {len} entries")));
        }
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut idx = vec![0; degree];
            let mut r = k;
            for slot in idx.iter_mut().rev() {
                *slot = r % n + 1;
                r /= n;
            }
            self.add_term(idx, c.clone())?;
        }
        Ok(())
    }

    /// `Σ h_IJ ψ_I ψ_J`.
    pub fn quadratic(h: &VectorForm) -> Self {
        let dim = h.dim();
        let mut ham = Hamiltonian::new(dim).expect("valid dim");
        for i in 1..=dim {
            for j in 1..=dim {
                let c = h.get(i, j);
                if !c.is_zero() {
                    ham.terms.insert(vec![i, j], c.clone());
                }
            }
        }
        ham
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// An endomorphism written as `Σ c · j_A ∂_B`, sources left of
/// derivations, where `j_A ∂_B (x) = e_A ∧ ∂_{b1}(… ∂_{bm}(x))` for
/// `B = {b1 < … < bm}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    dim: usize,
    terms: BTreeMap<(Blade, Blade), Scalar>,
}

impl NormalForm {
    pub fn zero(dim: usize) -> Self {
        NormalForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, j: Blade, d: Blade, c: Scalar) {
        let e = self.terms.entry((j, d)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(j, d));
        }
    }

    /// Coefficient of `j_A ∂_B`.
    pub fn coeff(&self, j: Blade, d: Blade) -> Scalar {
        self.terms.get(&(j, d)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `(coefficient, j-blade, ∂-blade)` triples.
    pub fn terms(&self) -> impl Iterator<Item = (&Scalar, Blade, Blade)> {
        self.terms.iter().map(|((j, d), c)| (c, *j, *d))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_endo(&self) -> Endo {
        let dim = self.dim;
        Endo::from_fn(dim, |x| {
            let mut m = Multivector::zero(dim);
            for ((j, d), c) in &self.terms {
                if let Some((s, rest)) = derive_blade(*d, x) {
                    if let Some((s2, out)) = wedge_blades(*j, rest) {
                        m.add_signed(out, s * s2, c);
                    }
                }
            }
            m
        })
    }
}

/// `∂_{b1} ∘ … ∘ ∂_{bm}` applied to the blade `x`.
fn derive_blade(d: Blade, x: Blade) -> Option<(i8, Blade)> {
    if !d.is_subset_of(x) {
        return None;
    }
    let mut s = 1i8;
    let mut cur = x;
    for i in d.indices().into_iter().rev() {
        let g = Blade::gen(i);
        cur = cur.minus(g);
        s *= wedge_blades(g, cur).expect("disjoint").0;
    }
    Some((s, cur))
}

/// The unique normal form of an endomorphism. Derivation blades are fixed
/// in order of increasing grade: on `e_B` only monomials `j_A ∂_C` with
/// `C ⊆ B` act, and `∂_B e_B = ±Id`.
pub fn normal_order(e: &Endo) -> NormalForm {
    let dim = e.dim();
    let mut nf = NormalForm::zero(dim);
    for b in blade::basis(dim) {
        let mut rest = e.image(b);
        for ((j, d), c) in &nf.terms {
            if let Some((s, r)) = derive_blade(*d, b) {
                if let Some((s2, out)) = wedge_blades(*j, r) {
                    rest.add_signed(out, -(s * s2), c);
                }
            }
        }
        let (s, _) = derive_blade(b, b).expect("b ⊆ b");
        for (a, c) in rest.terms() {
            nf.terms.insert((*a, b), if s > 0 { c.clone() } else { -c });
        }
    }
    nf
}

fn substitute(h: &Hamiltonian, ops: &[Endo]) -> Endo {
    let dim = h.dim;
    let mut acc = Endo::zero(dim);
    for (idx, c) in &h.terms {
        let mono = idx.iter().fold(Endo::identity(dim), |m, &i| {
            m.compose(&ops[i - 1]).expect("same dim")
        });
        acc = acc.add(&mono.scale(c));
    }
    acc
}

/// `H[ψ^op] − H[ψ]` as an operator on source functionals, normal ordered.
pub fn functional_hamiltonian(h: &Hamiltonian, q: &QuantForm) -> Result<NormalForm> {
    let dim = same_dim(h.dim(), q.dim())?;
    let left: Vec<Endo> = (1..=dim).map(|i| field_op(i, q, Side::Left)).collect::<Result<_>>()?;
    let right: Vec<Endo> = (1..=dim).map(|i| field_op(i, q, Side::Right)).collect::<Result<_>>()?;
    let e = substitute(h, &right).sub(&substitute(h, &left));
    Ok(normal_order(&e))
}

/// `exp∧(x) = Σ x^∧k / k!` for `x` without scalar part (nilpotent).
pub fn exp_wedge(x: &Multivector) -> Result<Multivector> {
    if !x.coeff(Blade::ID).is_zero() {
        return Err(QcaError::Shape("exp∧ needs an argument without scalar part".into()));
    }
    let dim = x.dim();
    let mut sum = Multivector::one(dim);
    let mut pow = Multivector::one(dim);
    let mut k = 1i64;
    loop {
        pow = wedge_unchecked(&pow, x).scale(&frac(1, k));
        if pow.is_zero() {
            return Ok(sum);
        }
        sum = &sum + &pow;
        k += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingDirection {
    /// Time ordered to normal ordered: `∧ exp∧(+½ F_IJ j_I ∧ j_J)`.
    TimeToNormal,
    /// Normal ordered to time ordered: `∧ exp∧(−½ F_IJ j_I ∧ j_J)`.
    NormalToTime,
}

/// `½ Σ_{I,J} F_IJ j_I ∧ j_J`.
pub fn propagator_bivector(f: &VectorForm) -> Result<Multivector> {
    if !f.is_antisymmetric() {
        return Err(QcaError::NotAntisymmetric);
    }
    let dim = f.dim();
    let mut m = Multivector::zero(dim);
    for i in 1..=dim {
        for j in i + 1..=dim {
            m.add_term(Blade::from_indices(&[i, j]), f.get(i, j).clone());
        }
    }
    Ok(m)
}

pub fn ordering_transform(u: &Multivector, f: &VectorForm, dir: OrderingDirection) -> Result<Multivector> {
    same_dim(u.dim(), f.dim())?;
    let mut x = propagator_bivector(f)?;
    if dir == OrderingDirection::NormalToTime {
        x = -x;
    }
    Ok(wedge_unchecked(u, &exp_wedge(&x)?))
}

/// Vacuum expectation `ε(e_{i1} ∘ … ∘ e_{ik})` under `B`.
pub fn expectation(word: &[usize], b: &VectorForm) -> Result<Scalar> {
    let dim = b.dim();
    for &i in word {
        check_index(i, dim)?;
    }
    let gens: Vec<Multivector> = word.iter().map(|&i| Multivector::gen(dim, i)).collect();
    Ok(counit(&cmul_all(dim, &gens, b)?))
}

/// U(1) state: `B = [[0, ν], [1−ν, 0]]` with `a = e1`, `a† = e2`.
pub fn u1_matrix(nu: &Scalar) -> VectorForm {
    VectorForm::from_fn(2, |i, j| match (i, j) {
        (1, 2) => nu.clone(),
        (2, 1) => Scalar::one() - nu,
        _ => int(0),
    })
}

/// Parameters of a U(2)-invariant state. `a_1, a_2, a_2†, a_1†` are
/// `e1, e2, e3, e4`; invariance requires `r == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U2Params {
    pub r: Scalar,
    pub s: Scalar,
    pub q: Scalar,
    pub t: Scalar,
    pub u: Scalar,
    pub m: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U2Analysis {
    pub nu: Scalar,
    pub w: Scalar,
    pub propagator: VectorForm,
    /// `0 ≤ w ≤ ν ≤ 1` and `2ν − 1 ≤ w`; boundary states count.
    pub positive: bool,
    /// The same inequalities, strict.
    pub interior: bool,
    /// `w == ν²`.
    pub quasifree: bool,
}

pub fn u2_matrix(p: &U2Params) -> VectorForm {
    let one = Scalar::one();
    let z = Scalar::zero();
    let U2Params { r, s, q, t, u, m } = p;
    VectorForm::new(vec![
        vec![z.clone(), u.clone(), q.clone(), r.clone()],
        vec![-u, z.clone(), s.clone(), t.clone()],
        vec![-q, &one - s, z.clone(), m.clone()],
        vec![&one - r, -t, -m, z],
    ])
    .expect("4x4")
}

pub fn u2_analysis(p: &U2Params) -> Result<U2Analysis> {
    if p.r != p.s {
        return Err(QcaError::NotU2Invariant);
    }
    let b = u2_matrix(p);
    let nu = expectation(&[1, 4], &b)?;
    let w = expectation(&[1, 2, 3, 4], &b)?;
    let half = frac(1, 2);
    let propagator = VectorForm::new(vec![
        vec![&half - &p.r, p.q.clone()],
        vec![p.t.clone(), &half - &p.s],
    ])
    .expect("2x2");
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let lower = &nu + &nu - &one;
    let positive = zero <= w && w <= nu && nu <= one && lower <= w;
    let interior = zero < w && w < nu && nu < one && lower < w;
    let quasifree = w == &nu * &nu;
    Ok(U2Analysis {
        nu,
        w,
        propagator,
        positive,
        interior,
        quasifree,
    })
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let name = |p: char, b: Blade| {
            b.indices().iter().map(|i| format!("{p}{i}")).collect::<Vec<_>>().join("w")
        };
        for (k, ((j, d), c)) in self.terms.iter().enumerate() {
            let neg = crate::scalar::is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = [name('j', *j), name('d', *d)].into_iter().filter(|s| !s.is_empty()).collect();
            if mono.is_empty() {
                write!(f, "{}", crate::scalar::fmt_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", crate::scalar::fmt_scalar(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations_anticommute_with_sources() {
        let dim = 3;
        for i in 1..=dim {
            for l in 1..=dim {
                let d = source_derivative(dim, i).unwrap();
                let j = source_mul(dim, l).unwrap();
                let anti = d.compose(&j).unwrap().add(&j.compose(&d).unwrap());
                let want = if i == l { Endo::identity(dim) } else { Endo::zero(dim) };
                assert_eq!(anti, want);
            }
        }
    }

    #[test]
    fn normal_order_round_trip() {
        let dim = 3;
        let e = Endo::from_fn(dim, |b| {
            Multivector::from_terms(dim, blade::basis(dim).into_iter().map(|c| (c, int((b.0 * 7 + c.0 * 3) as i64 % 5 - 2)))).unwrap()
        });
        assert_eq!(normal_order(&e).to_endo(), e);
    }

    #[test]
    fn display() {
        let mut nf = NormalForm::zero(2);
        nf.add_term(Blade(1), Blade(1), int(3));
        nf.add_term(Blade(2), Blade(2), int(-1));
        nf.add_term(Blade::ID, Blade::ID, frac(1, 2));
        assert_eq!(nf.to_string(), "1/2 + 3*j1*d1 - j2*d2");
    }
}
