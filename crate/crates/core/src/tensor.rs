use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num::{One, Zero};

use crate::blade::Blade;
use crate::error::{same_dim, QcaError, Result};
use crate::multivector::{write_terms, Multivector};
use crate::scalar::Scalar;

/// Sparse element of `(∧V)^{⊗k}`: blade tuple → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorPoly {
    dim: usize,
    rank: usize,
    terms: BTreeMap<Vec<Blade>, Scalar>,
}

impl TensorPoly {
    pub fn zero(dim: usize, rank: usize) -> Self {
        assert!(rank >= 1);
        TensorPoly {
            dim,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_term(dim: usize, legs: Vec<Blade>, s: Scalar) -> Self {
        let mut t = Self::zero(dim, legs.len());
        t.add_term(legs, s);
        t
    }

    /// `a ⊗ b ⊗ …` of multivectors.
    pub fn product(factors: &[Multivector]) -> Result<Self> {
        let dim = factors.first().ok_or(QcaError::Shape("empty tensor".into()))?.dim();
        for f in factors {
            same_dim(dim, f.dim())?;
        }
        let mut acc = vec![(Vec::new(), Scalar::one())];
        for f in factors {
            let mut next = Vec::new();
            for (legs, c) in &acc {
                for (b, d) in f.terms() {
                    let mut l: Vec<Blade> = legs.clone();
                    l.push(*b);
                    next.push((l, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero(dim, factors.len());
        for (l, c) in acc {
            t.add_term(l, c);
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, legs: Vec<Blade>, s: Scalar) {
        assert_eq!(legs.len(), self.rank, "tensor rank mismatch");
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(legs.clone()).or_insert_with(Scalar::zero);
        *e += s;
        if e.is_zero() {
            self.terms.remove(&legs);
        }
    }

    pub fn coeff(&self, legs: &[Blade]) -> Scalar {
        self.terms.get(legs).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Blade>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut t = Self::zero(self.dim, self.rank);
        for (l, c) in &self.terms {
            t.add_term(l.clone(), c * s);
        }
        t
    }

    pub fn axpy(&mut self, s: &Scalar, other: &TensorPoly) {
        assert_eq!(self.rank, other.rank);
        for (l, c) in &other.terms {
            self.add_term(l.clone(), c * s);
        }
    }

    /// Applies a linear map to leg `k`, the map given on blades.
    pub fn map_leg<F: FnMut(Blade) -> Multivector>(&self, k: usize, mut f: F) -> Self {
        let mut t = Self::zero(self.dim, self.rank);
        for (l, c) in &self.terms {
            for (b, d) in f(l[k]).terms() {
                let mut l2 = l.clone();
                l2[k] = *b;
                t.add_term(l2, c * d);
            }
        }
        t
    }

    /// Replaces leg `k` by the legs of a tensor, raising the rank.
    pub fn expand_leg<F: FnMut(Blade) -> TensorPoly>(&self, k: usize, mut f: F) -> Self {
        let mut out: Option<TensorPoly> = None;
        for (l, c) in &self.terms {
            let sub = f(l[k]);
            let o = out.get_or_insert_with(|| Self::zero(self.dim, self.rank - 1 + sub.rank));
            for (sl, d) in sub.terms() {
                let mut l2: Vec<Blade> = l[..k].to_vec();
                l2.extend_from_slice(sl);
                l2.extend_from_slice(&l[k + 1..]);
                o.add_term(l2, c * d);
            }
        }
        out.unwrap_or_else(|| Self::zero(self.dim, self.rank + 1))
    }

    /// Swaps legs `k` and `k + 1`, with the Koszul sign if `graded`.
    pub fn swap_legs(&self, k: usize, graded: bool) -> Self {
        assert!(k + 1 < self.rank, "leg {k} has no right neighbour");
        let mut t = Self::zero(self.dim, self.rank);
        for (l, c) in &self.terms {
            let mut l2 = l.clone();
            l2.swap(k, k + 1);
            let odd = graded && l[k].grade() * l[k + 1].grade() % 2 == 1;
            t.add_term(l2, if odd { -c.clone() } else { c.clone() });
        }
        t
    }

    /// Multiplies legs `k` and `k + 1` together with a product given on
    /// blades, lowering the rank by one.
    pub fn merge_legs<F: FnMut(Blade, Blade) -> Multivector>(&self, k: usize, mut f: F) -> Self {
        assert!(k + 1 < self.rank, "leg {k} has no right neighbour");
        let mut t = Self::zero(self.dim, self.rank - 1);
        for (l, c) in &self.terms {
            for (b, d) in f(l[k], l[k + 1]).terms() {
                let mut l2: Vec<Blade> = l[..k].to_vec();
                l2.push(*b);
                l2.extend_from_slice(&l[k + 2..]);
                t.add_term(l2, c * d);
            }
        }
        t
    }

    /// Evaluates legs `k` and `k + 1` with a bilinear form on blades,
    /// lowering the rank by two.
    pub fn contract_legs<F: FnMut(Blade, Blade) -> Scalar>(&self, k: usize, mut f: F) -> Self {
        assert!(k + 1 < self.rank && self.rank >= 3, "need a leg left over");
        let mut t = Self::zero(self.dim, self.rank - 2);
        for (l, c) in &self.terms {
            let v = f(l[k], l[k + 1]);
            if !v.is_zero() {
                let mut l2: Vec<Blade> = l[..k].to_vec();
                l2.extend_from_slice(&l[k + 2..]);
                t.add_term(l2, c * v);
            }
        }
        t
    }

    /// Contracts all legs to a multivector via a multilinear map on blades.
    pub fn contract<F: FnMut(&[Blade]) -> Multivector>(&self, mut f: F) -> Multivector {
        let mut m = Multivector::zero(self.dim);
        for (l, c) in &self.terms {
            m.axpy(c, &f(l));
        }
        m
    }

    /// Contracts all legs to a scalar via a multilinear form on blades.
    pub fn evaluate<F: FnMut(&[Blade]) -> Scalar>(&self, mut f: F) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, (l, c)| acc + c * f(l))
    }
}

impl Add for &TensorPoly {
    type Output = TensorPoly;
    fn add(self, rhs: &TensorPoly) -> TensorPoly {
        let mut t = self.clone();
        t.axpy(&Scalar::one(), rhs);
        t
    }
}

impl Sub for &TensorPoly {
    type Output = TensorPoly;
    fn sub(self, rhs: &TensorPoly) -> TensorPoly {
        let mut t = self.clone();
        t.axpy(&-Scalar::one(), rhs);
        t
    }
}

/// Legs are written as `&t(e1,e2)`, the expression-language tensor constructor.
impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(l, c)| {
                let legs: Vec<String> = l.iter().map(|b| b.name()).collect();
                (format!("&t({})", legs.join(",")), c)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn product_and_display() {
        let a = Multivector::gen(2, 1);
        let b = &Multivector::one(2) - &Multivector::gen(2, 2);
        let t = TensorPoly::product(&[a, b]).unwrap();
        assert_eq!(t.to_string(), "&t(e1,Id) - &t(e1,e2)");
        assert_eq!(t.coeff(&[Blade::gen(1), Blade::gen(2)]), int(-1));
    }
}
