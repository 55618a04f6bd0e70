use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{One, Signed, Zero};

use crate::blade::{self, Blade};
use crate::error::{same_dim, QcaError, Result};
use crate::scalar::{self, Scalar};

/// Sparse element of `∧V`: blade → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, s: Scalar) -> Self {
        Self::term(dim, Blade::ID, s)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    pub fn blade(dim: usize, b: Blade) -> Self {
        Self::term(dim, b, Scalar::one())
    }

    /// The generator `e_i`.
    pub fn gen(dim: usize, i: usize) -> Self {
        Self::blade(dim, Blade::gen(i))
    }

    pub fn term(dim: usize, b: Blade, s: Scalar) -> Self {
        let mut m = Self::zero(dim);
        m.add_term(b, s);
        m
    }

    /// Checks that every blade fits in `dim`.
    pub fn from_terms<I: IntoIterator<Item = (Blade, Scalar)>>(dim: usize, it: I) -> Result<Self> {
        let mut m = Self::zero(dim);
        for (b, s) in it {
            if b.max_index() > dim {
                return Err(QcaError::IndexOutOfRange {
                    index: b.max_index(),
                    dim,
                });
            }
            m.add_term(b, s);
        }
        Ok(m)
    }

    /// Dense coefficients in [`blade::basis`] order.
    pub fn from_dense(dim: usize, coeffs: &[Scalar]) -> Self {
        let mut m = Self::zero(dim);
        for (b, c) in blade::basis(dim).into_iter().zip(coeffs) {
            m.add_term(b, c.clone());
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        blade::basis(self.dim).into_iter().map(|b| self.coeff(b)).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, b: Blade, s: Scalar) {
        if s.is_zero() {
            return;
        }
        debug_assert!(b.max_index() <= self.dim);
        let e = self.terms.entry(b).or_insert_with(Scalar::zero);
        *e += s;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_signed(&mut self, b: Blade, sign: i8, s: &Scalar) {
        if sign >= 0 {
            self.add_term(b, s.clone());
        } else {
            self.add_term(b, -s.clone());
        }
    }

    pub fn coeff(&self, b: Blade) -> Scalar {
        self.terms.get(&b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
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
        let mut m = Self::zero(self.dim);
        for (b, c) in &self.terms {
            m.add_term(*b, c * s);
        }
        m
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &Scalar, other: &Multivector) {
        for (b, c) in &other.terms {
            self.add_term(*b, c * s);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(self + other)
    }

    /// Grade of every term, if they all agree.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.grade());
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    pub fn max_grade(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.grade()).max()
    }

    /// Same coefficients on a larger generating space.
    pub fn embed(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        Multivector {
            dim,
            terms: self.terms.clone(),
        }
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut m = self.clone();
        m.axpy(&Scalar::one(), rhs);
        m
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut m = self.clone();
        m.axpy(&-Scalar::one(), rhs);
        m
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(&-Scalar::one())
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

/// Writes `coeff*name` terms joined by ` + ` / ` - `, e.g. `-4*e1we2 + e1`.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, it: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut first = true;
    for (name, c) in it {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if a.is_one() {
            f.write_str(&name)?;
        } else {
            write!(f, "{}*{}", scalar::fmt_scalar(&a), name)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(b, c)| (b.name(), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn no_zero_terms() {
        let mut m = Multivector::gen(2, 1);
        m.add_term(Blade::gen(1), int(-1));
        assert!(m.is_zero());
        assert_eq!(m.to_string(), "0");
    }

    #[test]
    fn display() {
        let mut m = Multivector::zero(2);
        m.add_term(Blade(3), int(-4));
        m.add_term(Blade::gen(1), frac(3, 2));
        m.add_term(Blade::ID, int(1));
        assert_eq!(m.to_string(), "Id + 3/2*e1 - 4*e1we2");
    }

    #[test]
    fn index_check() {
        assert!(Multivector::from_terms(2, [(Blade::gen(3), int(1))]).is_err());
    }
}
