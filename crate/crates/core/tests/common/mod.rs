//! Seeded random inputs and independent reference implementations.
//!
//! The oracles here work on index lists and explicit permutations rather
//! than bitmasks, so they share no sign logic with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{One, Zero};
use qca::blade::{self, Blade};
use qca::hopf::LinForm;
use qca::pairing::VectorForm;
use qca::renorm::OrderingForm;
use qca::scalar::{frac, int};
use qca::{Multivector, Scalar, TensorPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seed() -> u64 {
    std::env::var("QCA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn rat(r: &mut impl Rng) -> Scalar {
    frac(r.gen_range(-9..=9), r.gen_range(1..=5))
}

pub fn nonzero_rat(r: &mut impl Rng) -> Scalar {
    loop {
        let x = rat(r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn form(r: &mut impl Rng, dim: usize) -> VectorForm {
    VectorForm::new((0..dim).map(|_| (0..dim).map(|_| rat(r)).collect()).collect()).unwrap()
}

pub fn antisym(r: &mut impl Rng, dim: usize) -> VectorForm {
    let f = form(r, dim);
    f.add(&f.transpose().scale(&int(-1)))
}

pub fn invertible_form(r: &mut impl Rng, dim: usize) -> VectorForm {
    loop {
        let f = form(r, dim);
        if !f.det().is_zero() {
            return f;
        }
    }
}

pub fn mv(r: &mut impl Rng, dim: usize) -> Multivector {
    let mut m = Multivector::zero(dim);
    for b in blade::basis(dim) {
        if r.gen_bool(0.6) {
            m.add_term(b, rat(r));
        }
    }
    m
}

/// Even normalized ordering form with random higher even-grade values.
pub fn even_z(r: &mut impl Rng, dim: usize) -> OrderingForm {
    let vals: BTreeMap<Blade, Scalar> = blade::basis(dim).into_iter().map(|b| (b, rat(r))).collect();
    let z = LinForm::from_fn(dim, |b| match b.grade() {
        0 => int(1),
        g if g % 2 == 1 => int(0),
        _ => vals[&b].clone(),
    });
    OrderingForm::new(z, true).unwrap()
}

pub fn e(dim: usize, name: &str) -> Multivector {
    Multivector::blade(dim, Blade::parse(name).unwrap())
}

/// Parity of the permutation sorting `seq` (distinct entries), by counting
/// inversions pairwise.
pub fn perm_sign(seq: &[usize]) -> Scalar {
    let inv = (0..seq.len())
        .flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| seq[i] > seq[j])
        .count();
    if inv % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Wedge of index lists: zero on repeats, otherwise the sorting sign.
pub fn wedge_words(dim: usize, a: &[usize], b: &[usize]) -> Multivector {
    let mut seq = a.to_vec();
    seq.extend_from_slice(b);
    let mut sorted = seq.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != seq.len() {
        return Multivector::zero(dim);
    }
    Multivector::term(dim, Blade::from_indices(&sorted), perm_sign(&seq))
}

pub fn wedge_oracle(u: &Multivector, v: &Multivector) -> Multivector {
    let mut m = Multivector::zero(u.dim());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            m.axpy(&(x * y), &wedge_words(u.dim(), &a.indices(), &b.indices()));
        }
    }
    m
}

/// Co-product by enumerating index subsets with shuffle signs.
pub fn gco_oracle(u: &Multivector) -> TensorPoly {
    let dim = u.dim();
    let mut t = TensorPoly::zero(dim, 2);
    for (b, c) in u.terms() {
        let idx = b.indices();
        let k = idx.len();
        for mask in 0..(1u32 << k) {
            let left: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| idx[i]).collect();
            let right: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 0).map(|i| idx[i]).collect();
            let mut seq = left.clone();
            seq.extend_from_slice(&right);
            t.add_term(vec![Blade::from_indices(&left), Blade::from_indices(&right)], c * perm_sign(&seq));
        }
    }
    t
}

/// Leibniz determinant over all permutations.
pub fn leibniz_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut total = Scalar::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut prod = perm_sign(p);
        for (i, &j) in p.iter().enumerate() {
            prod *= &m[i][j];
        }
        total += prod;
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Graded pairing on blades: `(-1)^{r(r-1)/2} det(B[x_i, y_j])`.
pub fn pairing_oracle(b: &VectorForm, x: Blade, y: Blade) -> Scalar {
    let (xi, yi) = (x.indices(), y.indices());
    if xi.len() != yi.len() {
        return Scalar::zero();
    }
    let r = xi.len();
    let sub: Vec<Vec<Scalar>> = xi.iter().map(|&i| yi.iter().map(|&j| b.get(i, j).clone()).collect()).collect();
    let d = leibniz_det(&sub);
    if (r * r.saturating_sub(1) / 2) % 2 == 0 {
        d
    } else {
        -d
    }
}

/// `e_i ⌋ e_A` for the vector `e_i`: Σ_k (-1)^k B(i, a_k) e_{A∖a_k}.
pub fn vector_contract(b: &VectorForm, i: usize, u: &Multivector) -> Multivector {
    let dim = u.dim();
    let mut m = Multivector::zero(dim);
    for (a, c) in u.terms() {
        let idx = a.indices();
        for (k, &ak) in idx.iter().enumerate() {
            let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != ak).collect();
            let s = if k % 2 == 0 { b.get(i, ak).clone() } else { -b.get(i, ak).clone() };
            m.add_term(Blade::from_indices(&rest), c * s);
        }
    }
    m
}

/// Clifford product through the Chevalley representation: `L(e_i) =
/// e_i⌋ + e_i∧`, extended by `L(e_i ∧ x) = L(e_i) L(x) − L(e_i ⌋ x)`.
pub fn cmul_oracle(u: &Multivector, v: &Multivector, b: &VectorForm) -> Multivector {
    let mut m = Multivector::zero(u.dim());
    for (a, c) in u.terms() {
        m.axpy(c, &left_action(b, &a.indices(), v));
    }
    m
}

fn gamma(b: &VectorForm, i: usize, v: &Multivector) -> Multivector {
    let g = Multivector::gen(v.dim(), i);
    &vector_contract(b, i, v) + &wedge_oracle(&g, v)
}

fn left_action(b: &VectorForm, word: &[usize], v: &Multivector) -> Multivector {
    let dim = v.dim();
    let Some((&i, rest)) = word.split_first() else {
        return v.clone();
    };
    let inner = left_action(b, rest, v);
    let mut out = gamma(b, i, &inner);
    let tail = Multivector::blade(dim, Blade::from_indices(rest));
    for (x, c) in vector_contract(b, i, &tail).terms() {
        out.axpy(&-c.clone(), &left_action(b, &x.indices(), v));
    }
    out
}
