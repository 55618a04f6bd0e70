//! Bilinear forms, their graded extension to `∧V`, contractions, and the
//! Clifford product / co-product obtained by cliffordization.

use std::collections::HashMap;

use num::{One, Zero};

use crate::blade::{self, Blade};
use crate::error::{same_dim, QcaError, Result};
use crate::exterior::{gco, wedge_blades, wedge_unchecked};
use crate::linalg::{self, Matrix};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::tensor::TensorPoly;

/// An `n×n` matrix `B(e_i, e_j) = B_ij` of arbitrary symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorForm {
    m: Matrix,
}

impl VectorForm {
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.len();
        if n == 0 || n > crate::MAX_DIM {
            return Err(QcaError::BadDim(n));
        }
        if m.iter().any(|r| r.len() != n) {
            return Err(QcaError::Shape(format!("form must be {n}x{n}")));
        }
        Ok(VectorForm { m })
    }

    pub fn zero(dim: usize) -> Self {
        VectorForm {
            m: linalg::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        VectorForm {
            m: linalg::identity(dim),
        }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        VectorForm {
            m: (1..=dim).map(|i| (1..=dim).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    /// `B_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.m[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn transpose(&self) -> Self {
        VectorForm {
            m: linalg::transpose(&self.m),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_fn(self.dim(), |i, j| self.get(i, j) * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.dim(), |i, j| self.get(i, j) + o.get(i, j))
    }

    /// `(B + Bᵀ)/2`.
    pub fn symmetric_part(&self) -> Self {
        let h = Scalar::new(1.into(), 2.into());
        Self::from_fn(self.dim(), |i, j| (self.get(i, j) + self.get(j, i)) * &h)
    }

    /// `(B - Bᵀ)/2`.
    pub fn antisymmetric_part(&self) -> Self {
        let h = Scalar::new(1.into(), 2.into());
        Self::from_fn(self.dim(), |i, j| (self.get(i, j) - self.get(j, i)) * &h)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (1..=n).all(|i| (1..=n).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        VectorForm {
            m: linalg::mat_mul(&self.m, &o.m),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        linalg::inverse(&self.m).map(|m| VectorForm { m })
    }

    pub fn det(&self) -> Scalar {
        linalg::det(&self.m)
    }

    pub fn trace(&self) -> Scalar {
        (1..=self.dim()).map(|i| self.get(i, i).clone()).sum()
    }

    /// Value on two grade-1 multivectors (other grades are ignored).
    pub fn eval_vectors(&self, x: &Multivector, y: &Multivector) -> Scalar {
        let mut s = Scalar::zero();
        for (a, c) in x.terms().filter(|(b, _)| b.grade() == 1) {
            for (b, d) in y.terms().filter(|(b, _)| b.grade() == 1) {
                s += c * d * self.get(a.max_index(), b.max_index());
            }
        }
        s
    }
}

/// The graded extension `B^∧` of a [`VectorForm`], tabulated on all
/// equal-grade blade pairs at construction.
#[derive(Clone, Debug)]
pub struct GradedPairing {
    dim: usize,
    table: HashMap<(Blade, Blade), Scalar>,
}

impl GradedPairing {
    pub fn new(b: &VectorForm) -> Self {
        let dim = b.dim();
        let mut by_grade: Vec<Vec<Blade>> = vec![Vec::new(); dim + 1];
        for x in blade::basis(dim) {
            by_grade[x.grade()].push(x);
        }
        let mut table = HashMap::new();
        table.insert((Blade::ID, Blade::ID), Scalar::one());
        for r in 1..=dim {
            for &x in &by_grade[r] {
                // peel the lowest generator e_i off x = e_i ∧ x'
                let i = x.indices()[0];
                let rest = x.minus(Blade::gen(i));
                for &y in &by_grade[r] {
                    let mut v = Scalar::zero();
                    for j in y.indices() {
                        let bij = b.get(i, j);
                        if bij.is_zero() {
                            continue;
                        }
                        let yj = y.minus(Blade::gen(j));
                        let Some(inner) = table.get(&(rest, yj)) else {
                            continue;
                        };
                        let t = bij * inner;
                        // sign of (y∖j) ∧ e_j relative to y
                        if yj.wedge_sign(Blade::gen(j)) == Some(1) {
                            v += t;
                        } else {
                            v -= t;
                        }
                    }
                    if !v.is_zero() {
                        table.insert((x, y), v);
                    }
                }
            }
        }
        GradedPairing { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, x: Blade, y: Blade) -> Scalar {
        self.table.get(&(x, y)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn value_ref(&self, x: Blade, y: Blade) -> Option<&Scalar> {
        self.table.get(&(x, y))
    }

    /// Nonzero entries.
    pub fn entries(&self) -> impl Iterator<Item = (&(Blade, Blade), &Scalar)> {
        self.table.iter()
    }

    pub fn eval(&self, u: &Multivector, v: &Multivector) -> Scalar {
        let mut s = Scalar::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                if let Some(p) = self.value_ref(*a, *b) {
                    s += x * y * p;
                }
            }
        }
        s
    }
}

/// `B^∧`: value 1 on `(Id,Id)`, `B_ij` on generators, Laplace recursion
/// on higher grades, zero across grades.
pub fn extend_pairing(b: &VectorForm) -> GradedPairing {
    GradedPairing::new(b)
}

/// The closed form `(-1)^{r(r-1)/2} det(B_IJ)` on blades of grade `r`.
pub fn pairing_by_determinant(b: &VectorForm, x: Blade, y: Blade) -> Scalar {
    if x.grade() != y.grade() {
        return Scalar::zero();
    }
    let r = x.grade();
    let (xi, yi) = (x.indices(), y.indices());
    let sub: Matrix = xi
        .iter()
        .map(|&i| yi.iter().map(|&j| b.get(i, j).clone()).collect())
        .collect();
    let d = if r == 0 { Scalar::one() } else { linalg::det(&sub) };
    if (r * r.saturating_sub(1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

fn check(u: &Multivector, v: &Multivector, b: &VectorForm) -> Result<()> {
    same_dim(u.dim(), v.dim())?;
    same_dim(u.dim(), b.dim())?;
    Ok(())
}

/// `u ⌋ v = Σ B^∧(u, v₍₁₎) v₍₂₎`.
pub fn left_contract(u: &Multivector, v: &Multivector, b: &VectorForm) -> Result<Multivector> {
    check(u, v, b)?;
    Ok(left_contract_with(u, v, &extend_pairing(b)))
}

pub fn left_contract_with(u: &Multivector, v: &Multivector, bf: &GradedPairing) -> Multivector {
    let mut m = Multivector::zero(v.dim());
    for (b, y) in v.terms() {
        for (s, b1, b2) in b.splits() {
            let p = bf.eval(u, &Multivector::blade(v.dim(), b1));
            if !p.is_zero() {
                m.add_signed(b2, s, &(p * y));
            }
        }
    }
    m
}

/// `u ⌊ v = Σ u₍₁₎ B^∧(u₍₂₎, v)`.
pub fn right_contract(u: &Multivector, v: &Multivector, b: &VectorForm) -> Result<Multivector> {
    check(u, v, b)?;
    let bf = extend_pairing(b);
    let mut m = Multivector::zero(u.dim());
    for (a, x) in u.terms() {
        for (s, a1, a2) in a.splits() {
            let p = bf.eval(&Multivector::blade(u.dim(), a2), v);
            if !p.is_zero() {
                m.add_signed(a1, s, &(p * x));
            }
        }
    }
    Ok(m)
}

/// Clifford product of two blades under a tabulated `B^∧`.
pub fn cmul_blades(dim: usize, a: Blade, b: Blade, bf: &GradedPairing) -> Multivector {
    let mut m = Multivector::zero(dim);
    for (s1, a1, a2) in a.splits() {
        for (s2, b1, b2) in b.splits() {
            let Some(p) = bf.value_ref(a2, b1) else {
                continue;
            };
            if let Some((s3, c)) = wedge_blades(a1, b2) {
                m.add_signed(c, s1 * s2 * s3, p);
            }
        }
    }
    m
}

pub fn cmul_with(u: &Multivector, v: &Multivector, bf: &GradedPairing) -> Multivector {
    let mut m = Multivector::zero(u.dim());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            m.axpy(&(x * y), &cmul_blades(u.dim(), *a, *b, bf));
        }
    }
    m
}

/// `u ∘ v = Σ B^∧(u₍₂₎, v₍₁₎) u₍₁₎ ∧ v₍₂₎`.
pub fn cmul(u: &Multivector, v: &Multivector, b: &VectorForm) -> Result<Multivector> {
    check(u, v, b)?;
    Ok(cmul_with(u, v, &extend_pairing(b)))
}

/// Clifford product of a list, left to right; `Id` for an empty list.
pub fn cmul_all(dim: usize, factors: &[Multivector], b: &VectorForm) -> Result<Multivector> {
    let bf = extend_pairing(b);
    let mut acc = Multivector::one(dim);
    for f in factors {
        check(&acc, f, b)?;
        acc = cmul_with(&acc, f, &bf);
    }
    Ok(acc)
}

/// `γ_x u = x ⌋ u + x ∧ u` for a grade-1 `x`.
pub fn clifford_map(x: &Multivector, u: &Multivector, b: &VectorForm) -> Result<Multivector> {
    check(x, u, b)?;
    if x.homogeneous_grade().is_some_and(|g| g != 1) {
        return Err(QcaError::NotVector);
    }
    Ok(&left_contract(x, u, b)? + &wedge_unchecked(x, u))
}

/// Clifford co-product `Δ_C(a) = Σ (a₍₁₎ ∧ C₍₁₎) ⊗ (C₍₂₎ ∧ a₍₂₎)` with the
/// cap `C₍₁₎ ⊗ C₍₂₎ = Σ C^∧(e_I, e_J) e_I ⊗ e_J`.
pub fn cco(u: &Multivector, c: &VectorForm) -> Result<TensorPoly> {
    same_dim(u.dim(), c.dim())?;
    Ok(cco_with(u, &extend_pairing(c)))
}

pub fn cco_with(u: &Multivector, cap: &GradedPairing) -> TensorPoly {
    let dim = u.dim();
    let mut t = TensorPoly::zero(dim, 2);
    for (l, x) in gco(u).terms() {
        for (&(ci, cj), cv) in cap.entries() {
            let (Some((s1, p)), Some((s2, q))) = (wedge_blades(l[0], ci), wedge_blades(cj, l[1])) else {
                continue;
            };
            let v = x * cv;
            t.add_term(vec![p, q], if s1 * s2 > 0 { v } else { -v });
        }
    }
    t
}

/// `x ∧̇ y`: the Clifford product by an antisymmetric form.
pub fn dotted_wedge(u: &Multivector, v: &Multivector, f: &VectorForm) -> Result<Multivector> {
    if !f.is_antisymmetric() {
        return Err(QcaError::NotAntisymmetric);
    }
    cmul(u, v, f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WickDirection {
    /// Wedge coordinates to dotted-wedge coordinates.
    ToDotted,
    /// Dotted-wedge coordinates to wedge coordinates.
    FromDotted,
}

/// The Clifford word `e_{a1} ∘ … ∘ e_{ak}` for the ascending indices of `b`.
fn word_product(dim: usize, word: &[usize], bf: &GradedPairing) -> Multivector {
    word.iter().fold(Multivector::one(dim), |acc, &i| {
        cmul_with(&acc, &Multivector::gen(dim, i), bf)
    })
}

/// Expands `u` in a basis `{W_b}` with `W_b = b + lower grades`,
/// returning the coordinates as a multivector.
fn triangular_coords(u: &Multivector, basis_elem: impl Fn(Blade) -> Multivector) -> Multivector {
    let mut coords = Multivector::zero(u.dim());
    let mut rest = u.clone();
    while let Some((&b, c)) = rest.terms().max_by_key(|(b, _)| **b) {
        let c = c.clone();
        coords.add_term(b, c.clone());
        rest.axpy(&-c, &basis_elem(b));
    }
    coords
}

/// Change between the wedge basis and the dotted-wedge basis
/// `{e_{a1} ∧̇ … ∧̇ e_{ak}}`.
pub fn wick_transform(u: &Multivector, f: &VectorForm, dir: WickDirection) -> Result<Multivector> {
    same_dim(u.dim(), f.dim())?;
    if !f.is_antisymmetric() {
        return Err(QcaError::NotAntisymmetric);
    }
    let bf = extend_pairing(f);
    let dim = u.dim();
    let dotted = |b: Blade| word_product(dim, &b.indices(), &bf);
    Ok(match dir {
        WickDirection::FromDotted => {
            let mut m = Multivector::zero(dim);
            for (b, c) in u.terms() {
                m.axpy(c, &dotted(*b));
            }
            m
        }
        WickDirection::ToDotted => triangular_coords(u, dotted),
    })
}

/// Anti-automorphism of `cmul(·,·,B)` fixing `Id ⊕ V`, computed by
/// expanding in ascending Clifford words and reversing them.
pub fn reversion_clifford(u: &Multivector, b: &VectorForm) -> Result<Multivector> {
    same_dim(u.dim(), b.dim())?;
    let bf = extend_pairing(b);
    let dim = u.dim();
    let coords = triangular_coords(u, |x| word_product(dim, &x.indices(), &bf));
    let mut m = Multivector::zero(dim);
    for (x, c) in coords.terms() {
        let mut w = x.indices();
        w.reverse();
        m.axpy(c, &word_product(dim, &w, &bf));
    }
    Ok(m)
}

/// One term of the inversion formula: `coeff` times the Clifford product
/// of the input vectors at `positions` (in order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionTerm {
    pub coeff: Scalar,
    pub positions: Vec<usize>,
}

fn sign_of_permutation(p: &[usize]) -> i8 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Partial pairings of `0..k`: disjoint pairs `(a,b)`, `a < b`.
fn partial_pairings(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(acc.clone());
        // extend with pairs whose first element is beyond the last pair's first
        let start = acc.last().map_or(0, |p| p.0 + 1);
        for (ia, &a) in free.iter().enumerate() {
            if a < start {
                continue;
            }
            for &b in &free[ia + 1..] {
                let rest: Vec<usize> = free.iter().copied().filter(|&x| x != a && x != b).collect();
                acc.push((a, b));
                go(&rest, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&(0..k).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// `x1 ∧ … ∧ xk` as a combination of Clifford monomials of sub-words:
/// a sum over partial pairings with `(-1)^{#pairs} Π B(x_a, x_b)`.
pub fn inversion_terms(vectors: &[Multivector], b: &VectorForm) -> Result<Vec<InversionTerm>> {
    for v in vectors {
        same_dim(v.dim(), b.dim())?;
        if v.homogeneous_grade().is_some_and(|g| g != 1) {
            return Err(QcaError::NotVector);
        }
    }
    let k = vectors.len();
    let mut out = Vec::new();
    for pairing in partial_pairings(k) {
        let used: Vec<usize> = pairing.iter().flat_map(|&(a, b)| [a, b]).collect();
        let rest: Vec<usize> = (0..k).filter(|i| !used.contains(i)).collect();
        let perm: Vec<usize> = used.iter().chain(&rest).copied().collect();
        let mut c = Scalar::one();
        for &(a, bb) in &pairing {
            c *= -b.eval_vectors(&vectors[a], &vectors[bb]);
        }
        if sign_of_permutation(&perm) < 0 {
            c = -c;
        }
        if !c.is_zero() {
            out.push(InversionTerm {
                coeff: c,
                positions: rest,
            });
        }
    }
    Ok(out)
}

/// Evaluates [`inversion_terms`] with Clifford products; the result is the
/// wedge of the inputs.
pub fn inversion_wedge_from_clifford(vectors: &[Multivector], b: &VectorForm) -> Result<Multivector> {
    let dim = b.dim();
    let bf = extend_pairing(b);
    let mut m = Multivector::zero(dim);
    for t in inversion_terms(vectors, b)? {
        let w = t.positions.iter().fold(Multivector::one(dim), |acc, &p| cmul_with(&acc, &vectors[p], &bf));
        m.axpy(&t.coeff, &w);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn e(dim: usize, name: &str) -> Multivector {
        Multivector::blade(dim, Blade::parse(name).unwrap())
    }

    fn form(rows: &[&[i64]]) -> VectorForm {
        VectorForm::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn top_pairing_dim2() {
        // a=2 b=3 c=5 d=7: bc - ad = 1
        let b = form(&[&[2, 3], &[5, 7]]);
        let bf = extend_pairing(&b);
        assert_eq!(bf.value(Blade(3), Blade(3)), int(1));
        assert_eq!(pairing_by_determinant(&b, Blade(3), Blade(3)), int(1));
    }

    #[test]
    fn partial_pairings_count() {
        // telephone numbers 1, 1, 2, 4, 10
        let n: Vec<usize> = (0..5).map(|k| partial_pairings(k).len()).collect();
        assert_eq!(n, vec![1, 1, 2, 4, 10]);
    }

    #[test]
    fn clifford_vs_wedge_small() {
        let id = VectorForm::identity(2);
        assert_eq!(cmul(&e(2, "e2"), &e(2, "e1we2"), &id).unwrap(), -e(2, "e1"));
        assert_eq!(left_contract(&e(2, "e1we2"), &e(2, "e1we2"), &id).unwrap(), -e(2, "Id"));
        assert_eq!(right_contract(&e(2, "e1we2"), &e(2, "e2"), &id).unwrap(), e(2, "e1"));
    }
}
