//! Convolution algebra of endomorphisms of `∧V`: convolution, unit,
//! antipodes, the antipode-derived crossing, integrals and cointegrals.

use num::{One, Zero};

use crate::blade::{self, Blade};
use crate::error::{same_dim, QcaError, Result};
use crate::exterior::{self, gco_blade, wedge_blades};
use crate::linalg::{self, Dependency, Matrix};
use crate::multivector::Multivector;
use crate::pairing::{cco_with, cmul_blades, extend_pairing, VectorForm};
use crate::scalar::Scalar;
use crate::tensor::TensorPoly;

/// Linear operator on `∧V`. Column `k` is the image of the `k`-th basis
/// blade in graded-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    dim: usize,
    cols: Vec<Vec<Scalar>>,
}

impl Endo {
    pub fn zero(dim: usize) -> Self {
        let n = 1 << dim;
        Endo {
            dim,
            cols: vec![vec![Scalar::zero(); n]; n],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |b| Multivector::blade(dim, b))
    }

    /// The operator sending each basis blade to `f(blade)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(Blade) -> Multivector) -> Self {
        Endo {
            dim,
            cols: blade::basis(dim).into_iter().map(|b| f(b).to_dense()).collect(),
        }
    }

    /// From a row-major matrix (row = output blade).
    pub fn from_matrix(dim: usize, m: &Matrix) -> Result<Self> {
        let n = 1 << dim;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(QcaError::Shape(format!("endomorphism must be {n}x{n}")));
        }
        Ok(Endo {
            dim,
            cols: linalg::transpose(m),
        })
    }

    /// Row-major matrix (row = output blade, column = input blade).
    pub fn matrix(&self) -> Matrix {
        linalg::transpose(&self.cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix entry `(output, input)`.
    pub fn entry(&self, out: Blade, input: Blade) -> Scalar {
        let pos = blade::positions(self.dim);
        self.cols[pos[input.0 as usize]][pos[out.0 as usize]].clone()
    }

    pub fn image(&self, b: Blade) -> Multivector {
        let pos = blade::positions(self.dim);
        Multivector::from_dense(self.dim, &self.cols[pos[b.0 as usize]])
    }

    pub fn apply(&self, u: &Multivector) -> Result<Multivector> {
        same_dim(self.dim, u.dim())?;
        let pos = blade::positions(self.dim);
        let mut acc = vec![Scalar::zero(); 1 << self.dim];
        for (b, c) in u.terms() {
            for (a, x) in acc.iter_mut().zip(&self.cols[pos[b.0 as usize]]) {
                if !x.is_zero() {
                    *a += c * x;
                }
            }
        }
        Ok(Multivector::from_dense(self.dim, &acc))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Endo) -> Result<Endo> {
        same_dim(self.dim, other.dim)?;
        let n = 1 << self.dim;
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut out = vec![Scalar::zero(); n];
                for (k, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (o, y) in out.iter_mut().zip(&self.cols[k]) {
                        if !y.is_zero() {
                            *o += x * y;
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Endo { dim: self.dim, cols })
    }

    pub fn add(&self, other: &Endo) -> Endo {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Endo) -> Endo {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Endo {
        Endo {
            dim: self.dim,
            cols: self.cols.iter().map(|c| c.iter().map(|x| x * s).collect()).collect(),
        }
    }

    fn zip(&self, other: &Endo, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Endo {
        assert_eq!(self.dim, other.dim);
        Endo {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(|x| x.is_zero())
    }

    fn flat(&self) -> Vec<Scalar> {
        self.cols.iter().flatten().cloned().collect()
    }
}

/// A linear form on `∧V`, given by its values on the basis blades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl LinForm {
    pub fn new(dim: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != 1 << dim {
            return Err(QcaError::Shape(format!("linear form needs {} values", 1 << dim)));
        }
        Ok(LinForm { dim, coeffs })
    }

    pub fn from_fn(dim: usize, f: impl Fn(Blade) -> Scalar) -> Self {
        LinForm {
            dim,
            coeffs: blade::basis(dim).into_iter().map(f).collect(),
        }
    }

    pub fn counit(dim: usize) -> Self {
        Self::from_fn(dim, exterior::counit_blade)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn value(&self, b: Blade) -> Scalar {
        let pos = blade::positions(self.dim);
        self.coeffs[pos[b.0 as usize]].clone()
    }

    pub fn eval(&self, u: &Multivector) -> Scalar {
        let pos = blade::positions(self.dim);
        u.terms().map(|(b, c)| c * &self.coeffs[pos[b.0 as usize]]).sum()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        LinForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|x| x * s).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Product {
    Wedge,
    Clifford(VectorForm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coproduct {
    Grassmann,
    Clifford(VectorForm),
}

type Sparse = Vec<(usize, Scalar)>;

/// A product/co-product pair on the same `∧V`, with tabulated structure
/// constants in basis-index space.
#[derive(Clone, Debug)]
pub struct ConvCtx {
    dim: usize,
    product: Product,
    coproduct: Coproduct,
    basis: Vec<Blade>,
    /// `prod[a][b]` = `e_a · e_b`
    prod: Vec<Vec<Sparse>>,
    /// `coprod[x]` = `Δ(e_x)` as `(coeff, left, right)`
    coprod: Vec<Vec<(Scalar, usize, usize)>>,
}

impl ConvCtx {
    pub fn new(dim: usize, product: Product, coproduct: Coproduct) -> Result<Self> {
        if dim == 0 || dim > crate::MAX_DIM {
            return Err(QcaError::BadDim(dim));
        }
        if let Product::Clifford(b) = &product {
            same_dim(dim, b.dim())?;
        }
        if let Coproduct::Clifford(c) = &coproduct {
            same_dim(dim, c.dim())?;
        }
        let basis = blade::basis(dim);
        let pos = blade::positions(dim);
        let idx = |b: &Blade| pos[b.0 as usize];
        let bf = match &product {
            Product::Wedge => None,
            Product::Clifford(b) => Some(extend_pairing(b)),
        };
        let prod = basis
            .iter()
            .map(|&a| {
                basis
                    .iter()
                    .map(|&b| match &bf {
                        None => match wedge_blades(a, b) {
                            Some((s, c)) => vec![(idx(&c), crate::scalar::sign(s))],
                            None => vec![],
                        },
                        Some(bf) => cmul_blades(dim, a, b, bf).terms().map(|(c, x)| (idx(c), x.clone())).collect(),
                    })
                    .collect()
            })
            .collect();
        let cap = match &coproduct {
            Coproduct::Grassmann => None,
            Coproduct::Clifford(c) => Some(extend_pairing(c)),
        };
        let coprod = basis
            .iter()
            .map(|&x| {
                let t = match &cap {
                    None => gco_blade(dim, x),
                    Some(cap) => cco_with(&Multivector::blade(dim, x), cap),
                };
                t.terms().map(|(l, c)| (c.clone(), idx(&l[0]), idx(&l[1]))).collect()
            })
            .collect();
        Ok(ConvCtx {
            dim,
            product,
            coproduct,
            basis,
            prod,
            coprod,
        })
    }

    /// Wedge product with the Graßmann co-product.
    pub fn grassmann(dim: usize) -> Result<Self> {
        Self::new(dim, Product::Wedge, Coproduct::Grassmann)
    }

    /// `Cl(B,C)`: Clifford product by `B`, Clifford co-product by `C`.
    pub fn clifford(b: &VectorForm, c: &VectorForm) -> Result<Self> {
        Self::new(b.dim(), Product::Clifford(b.clone()), Coproduct::Clifford(c.clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn coproduct(&self) -> &Coproduct {
        &self.coproduct
    }

    fn n(&self) -> usize {
        self.basis.len()
    }

    /// Product of two dense coefficient vectors.
    fn mul_dense(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xa * yb;
                for (c, v) in &self.prod[a][b] {
                    out[*c] += &xy * v;
                }
            }
        }
        out
    }

    fn unit_dense(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.n()];
        v[k] = Scalar::one();
        v
    }

    pub fn mul(&self, u: &Multivector, v: &Multivector) -> Multivector {
        Multivector::from_dense(self.dim, &self.mul_dense(&u.to_dense(), &v.to_dense()))
    }

    pub fn comul(&self, u: &Multivector) -> TensorPoly {
        let pos = blade::positions(self.dim);
        let mut t = TensorPoly::zero(self.dim, 2);
        for (b, c) in u.terms() {
            for (x, l, r) in &self.coprod[pos[b.0 as usize]] {
                t.add_term(vec![self.basis[*l], self.basis[*r]], c * x);
            }
        }
        t
    }
}

/// `f ⋆ g = m ∘ (f ⊗ g) ∘ Δ`.
pub fn convolve(f: &Endo, g: &Endo, ctx: &ConvCtx) -> Result<Endo> {
    same_dim(f.dim, ctx.dim)?;
    same_dim(g.dim, ctx.dim)?;
    let n = ctx.n();
    let cols = (0..n)
        .map(|x| {
            let mut out = vec![Scalar::zero(); n];
            for (c, l, r) in &ctx.coprod[x] {
                let p = ctx.mul_dense(&f.cols[*l], &g.cols[*r]);
                for (o, v) in out.iter_mut().zip(p) {
                    if !v.is_zero() {
                        *o += c * v;
                    }
                }
            }
            out
        })
        .collect();
    Ok(Endo { dim: ctx.dim, cols })
}

/// `u = η ∘ ε`: `x ↦ ε(x) Id`.
pub fn conv_unit(ctx: &ConvCtx) -> Endo {
    let dim = ctx.dim;
    Endo::from_fn(dim, |b| Multivector::scalar(dim, exterior::counit_blade(b)))
}

/// Convolution inverse of the identity in the Graßmann case, by the
/// proper-cut recursion `S(x) = -x - Σ' x₍₁₎ ∧ S(x₍₂₎)`.
pub fn grassmann_antipode(u: &Multivector) -> Multivector {
    fn on_blade(dim: usize, b: Blade, memo: &mut std::collections::HashMap<Blade, Multivector>) -> Multivector {
        if let Some(m) = memo.get(&b) {
            return m.clone();
        }
        let m = if b.is_id() {
            Multivector::one(dim)
        } else {
            let mut m = -Multivector::blade(dim, b);
            for (s, b1, b2) in b.splits() {
                if b1.is_id() || b2.is_id() {
                    continue;
                }
                let rest = on_blade(dim, b2, memo);
                let w = exterior::wedge_unchecked(&Multivector::blade(dim, b1), &rest);
                m.axpy(&-crate::scalar::sign(s), &w);
            }
            m
        };
        memo.insert(b, m.clone());
        m
    }
    let mut memo = std::collections::HashMap::new();
    let mut out = Multivector::zero(u.dim());
    for (b, c) in u.terms() {
        out.axpy(c, &on_blade(u.dim(), *b, &mut memo));
    }
    out
}

/// Convolution inverse of the identity for `Cl(B,C)`.
///
/// The powers `id^{⋆k}` are fed into an exact echelon basis until the
/// first linear dependency, which is the minimal polynomial `p` of `id`
/// in the convolution algebra. `id` is invertible iff `p(0) ≠ 0`; then
/// `S = -(p(id) - p(0)) / (p(0) id)`. The result is checked against both
/// antipode equations before it is returned.
pub fn antipode_solve(b: &VectorForm, c: &VectorForm) -> Result<Endo> {
    same_dim(b.dim(), c.dim())?;
    let ctx = ConvCtx::clifford(b, c)?;
    antipode_in(&ctx)
}

pub fn antipode_in(ctx: &ConvCtx) -> Result<Endo> {
    let id = Endo::identity(ctx.dim);
    let unit = conv_unit(ctx);
    let mut powers = vec![unit.clone()];
    let mut dep = Dependency::new();
    let mut poly = dep.push(unit.flat());
    while poly.is_none() {
        let next = convolve(powers.last().unwrap(), &id, ctx)?;
        poly = dep.push(next.flat());
        powers.push(next);
    }
    let p = poly.unwrap();
    if p[0].is_zero() {
        return Err(QcaError::NoAntipode);
    }
    let mut s = Endo::zero(ctx.dim);
    for (k, a) in p.iter().enumerate().skip(1) {
        s = s.add(&powers[k - 1].scale(a));
    }
    let s = s.scale(&(-Scalar::one() / &p[0]));
    debug_assert!(is_antipode(&s, ctx));
    Ok(s)
}

/// Both antipode equations `S ⋆ id = u = id ⋆ S`.
pub fn is_antipode(s: &Endo, ctx: &ConvCtx) -> bool {
    let id = Endo::identity(ctx.dim);
    let u = conv_unit(ctx);
    convolve(s, &id, ctx).is_ok_and(|l| l == u) && convolve(&id, s, ctx).is_ok_and(|r| r == u)
}

/// The antipode equations solved directly as one linear system in the
/// `4^n` matrix entries of `S`. Practical for `dim <= 2`; used to
/// cross-check [`antipode_solve`].
pub fn antipode_solve_direct(ctx: &ConvCtx) -> Result<Endo> {
    let n = ctx.n();
    // unknown S[a][y] (output a, input y) at column a*n + y
    let var = |a: usize, y: usize| a * n + y;
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    for left in [true, false] {
        for x in 0..n {
            let mut eqs = vec![vec![Scalar::zero(); n * n]; n];
            for (c, l, r) in &ctx.coprod[x] {
                // left: S(e_l) · e_r ; right: e_l · S(e_r)
                for a in 0..n {
                    let terms = if left { &ctx.prod[a][*r] } else { &ctx.prod[*l][a] };
                    let y = if left { *l } else { *r };
                    for (o, v) in terms {
                        eqs[*o][var(a, y)] += c * v;
                    }
                }
            }
            for (o, row) in eqs.into_iter().enumerate() {
                let want = if o == 0 && x == 0 { Scalar::one() } else { Scalar::zero() };
                rows.push(row);
                rhs.push(want);
            }
        }
    }
    let sol = linalg::solve(&rows, &rhs).ok_or(QcaError::NoAntipode)?;
    let cols = (0..n).map(|y| (0..n).map(|a| sol[var(a, y)].clone()).collect()).collect();
    Ok(Endo { dim: ctx.dim, cols })
}

/// The antipode-derived crossing
/// `a ⊗ b ↦ Σ S(a₍₁₎) c₍₁₎ ⊗ c₍₂₎ S(b₍₂₎)` with `c = a₍₂₎ b₍₁₎`, all products
/// and co-products taken in `Cl(B,C)`.
pub fn crossing(t: &TensorPoly, b: &VectorForm, c: &VectorForm) -> Result<TensorPoly> {
    let ctx = ConvCtx::clifford(b, c)?;
    let s = antipode_in(&ctx)?;
    crossing_in(t, &ctx, &s)
}

/// [`crossing`] with a precomputed context and antipode.
pub fn crossing_in(t: &TensorPoly, ctx: &ConvCtx, s: &Endo) -> Result<TensorPoly> {
    same_dim(t.dim(), ctx.dim)?;
    if t.rank() != 2 {
        return Err(QcaError::Shape("crossing needs a rank-2 tensor".into()));
    }
    let pos = blade::positions(ctx.dim);
    let n = ctx.n();
    let mut acc = vec![vec![Scalar::zero(); n]; n];
    for (legs, coef) in t.terms() {
        let (ia, ib) = (pos[legs[0].0 as usize], pos[legs[1].0 as usize]);
        for (ca, a1, a2) in &ctx.coprod[ia] {
            for (cb, b1, b2) in &ctx.coprod[ib] {
                let k0 = coef * ca * cb;
                for (cm, cv) in &ctx.prod[*a2][*b1] {
                    let k1 = &k0 * cv;
                    for (cc, c1, c2) in &ctx.coprod[*cm] {
                        let k2 = &k1 * cc;
                        let left = ctx.mul_dense(&s.cols[*a1], &ctx.unit_dense(*c1));
                        let right = ctx.mul_dense(&ctx.unit_dense(*c2), &s.cols[*b2]);
                        for (p, x) in left.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            let kx = &k2 * x;
                            for (q, y) in right.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                                acc[p][q] += &kx * y;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = TensorPoly::zero(ctx.dim, 2);
    for (p, row) in acc.into_iter().enumerate() {
        for (q, v) in row.into_iter().enumerate() {
            out.add_term(vec![ctx.basis[p], ctx.basis[q]], v);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Basis of integrals: right `(id ⊗ μ) Δ(x) = μ(x) Id`, left
/// `(μ ⊗ id) Δ(x) = μ(x) Id`.
pub fn integral_space(ctx: &ConvCtx, side: Side) -> Vec<LinForm> {
    let n = ctx.n();
    let mut rows: Matrix = Vec::new();
    for x in 0..n {
        let mut eqs = vec![vec![Scalar::zero(); n]; n];
        for (c, l, r) in &ctx.coprod[x] {
            let (out, arg) = match side {
                Side::Right => (*l, *r),
                Side::Left => (*r, *l),
            };
            eqs[out][arg] += c;
        }
        eqs[0][x] -= Scalar::one();
        rows.extend(eqs);
    }
    linalg::nullspace(&rows, n)
        .into_iter()
        .map(|v| LinForm { dim: ctx.dim, coeffs: v })
        .collect()
}

/// Basis of cointegrals: right `x · e = ε(x) e`, left `e · x = ε(x) e`.
pub fn cointegral_space(ctx: &ConvCtx, side: Side) -> Vec<Multivector> {
    let n = ctx.n();
    let mut rows: Matrix = Vec::new();
    for x in 0..n {
        let mut eqs = vec![vec![Scalar::zero(); n]; n];
        for b in 0..n {
            let terms = match side {
                Side::Right => &ctx.prod[x][b],
                Side::Left => &ctx.prod[b][x],
            };
            for (o, v) in terms {
                eqs[*o][b] += v;
            }
            if x == 0 {
                eqs[b][b] -= Scalar::one();
            }
        }
        rows.extend(eqs);
    }
    linalg::nullspace(&rows, n)
        .into_iter()
        .map(|v| Multivector::from_dense(ctx.dim, &v))
        .collect()
}

/// `T ⋆ T == u` exactly.
pub fn verify_unipotent(t: &Endo, ctx: &ConvCtx) -> bool {
    convolve(t, t, ctx).is_ok_and(|tt| tt == conv_unit(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn grassmann_antipode_dim3() {
        let got: Vec<String> = blade::basis(3)
            .into_iter()
            .map(|b| grassmann_antipode(&Multivector::blade(3, b)).to_string())
            .collect();
        assert_eq!(
            got,
            ["Id", "-e1", "-e2", "-e3", "e1we2", "e1we3", "e2we3", "-e1we2we3"]
        );
    }

    #[test]
    fn grassmann_solve_is_grade_involution() {
        let ctx = ConvCtx::grassmann(3).unwrap();
        let s = antipode_in(&ctx).unwrap();
        assert_eq!(s, Endo::from_fn(3, |b| exterior::grade_involution(&Multivector::blade(3, b))));
    }

    #[test]
    fn unit_law() {
        let b = VectorForm::from_fn(2, |i, j| int((i * 3 + j) as i64));
        let ctx = ConvCtx::clifford(&b, &VectorForm::zero(2)).unwrap();
        let f = Endo::from_fn(2, |x| Multivector::blade(2, x).scale(&int(x.0 as i64 + 2)));
        let u = conv_unit(&ctx);
        assert_eq!(convolve(&u, &f, &ctx).unwrap(), f);
        assert_eq!(convolve(&f, &u, &ctx).unwrap(), f);
    }
}
