//! Basis blades of the Graßmann algebra as bitmasks.
//!
//! Bit `k-1` set means generator `e_k` is present. Indices are kept in
//! ascending order implicitly, so every mask is already canonical.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{QcaError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const ID: Blade = Blade(0);

    /// The generator `e_i` (1-based).
    pub fn gen(i: usize) -> Blade {
        assert!(i >= 1 && i <= 32, "generator index {i} out of range");
        Blade(1 << (i - 1))
    }

    /// Builds a blade from indices in any order, discarding the sign.
    /// Repeated indices collapse; use [`Blade::from_word`] when the sign
    /// and nilpotency matter.
    pub fn from_indices(indices: &[usize]) -> Blade {
        indices.iter().fold(Blade::ID, |b, &i| Blade(b.0 | Blade::gen(i).0))
    }

    /// The wedge of the generators in `word`, as `(sign, blade)`; `None`
    /// if an index repeats.
    pub fn from_word(word: &[usize]) -> Option<(i8, Blade)> {
        let mut acc = (1i8, Blade::ID);
        for &i in word {
            let g = Blade::gen(i);
            let s = acc.1.wedge_sign(g)?;
            acc = (acc.0 * s, Blade(acc.1 .0 | g.0));
        }
        Some(acc)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_id(self) -> bool {
        self.0 == 0
    }

    /// Ascending 1-based generator indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|k| self.0 >> k & 1 == 1).map(|k| k + 1).collect()
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & Blade::gen(i).0 != 0
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn minus(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    /// Sign of `self ∧ other` relative to the canonical blade of the
    /// union, or `None` when they share a generator.
    pub fn wedge_sign(self, other: Blade) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (self.0 >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some(if swaps % 2 == 0 { 1 } else { -1 })
    }

    /// All sub-blades `s ⊆ self`, starting from `Id`.
    pub fn subsets(self) -> impl Iterator<Item = Blade> {
        let full = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(Blade(s))
        })
    }

    /// Ordered bipartitions `(sign, s1, s2)` with `s1 ∧ s2 = sign · self`.
    pub fn splits(self) -> impl Iterator<Item = (i8, Blade, Blade)> {
        self.subsets().map(move |s1| {
            let s2 = self.minus(s1);
            (s1.wedge_sign(s2).unwrap(), s1, s2)
        })
    }

    /// Canonical name: `Id`, `e3`, `e1we2we5`.
    pub fn name(self) -> String {
        if self.is_id() {
            return "Id".to_string();
        }
        self.indices()
            .iter()
            .map(|i| format!("e{i}"))
            .collect::<Vec<_>>()
            .join("w")
    }

    /// Parses a canonical name. Indices must be ascending and distinct.
    pub fn parse(name: &str) -> Result<Blade> {
        let bad = || QcaError::Parse {
            pos: 0,
            msg: format!("not a blade name: {name:?}"),
        };
        if name == "Id" {
            return Ok(Blade::ID);
        }
        let mut last = 0usize;
        let mut b = Blade::ID;
        for part in name.split('w') {
            let digits = part.strip_prefix('e').ok_or_else(bad)?;
            let i: usize = digits.parse().map_err(|_| bad())?;
            if i == 0 || i <= last || i > crate::MAX_DIM {
                return Err(bad());
            }
            last = i;
            b = b.union(Blade::gen(i));
        }
        Ok(b)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Graded-lexicographic: by grade, then by the ascending index lists.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `2^dim` basis blades in graded-lexicographic order.
pub fn basis(dim: usize) -> Vec<Blade> {
    let mut v: Vec<Blade> = (0..1u32 << dim).map(Blade).collect();
    v.sort();
    v
}

/// Position lookup for [`basis`]: `pos[mask] = index in basis order`.
pub fn positions(dim: usize) -> Vec<usize> {
    let mut pos = vec![0; 1 << dim];
    for (k, b) in basis(dim).into_iter().enumerate() {
        pos[b.0 as usize] = k;
    }
    pos
}

/// The top blade `e1w…wn`.
pub fn top(dim: usize) -> Blade {
    Blade((1u32 << dim) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for b in basis(5) {
            assert_eq!(Blade::parse(&b.name()).unwrap(), b);
        }
        assert_eq!(Blade::from_indices(&[5, 1, 2]).name(), "e1we2we5");
        assert!(Blade::parse("e2we1").is_err());
        assert!(Blade::parse("e1we1").is_err());
    }

    #[test]
    fn order_is_graded_lex() {
        let names: Vec<String> = basis(3).iter().map(|b| b.name()).collect();
        assert_eq!(
            names,
            ["Id", "e1", "e2", "e3", "e1we2", "e1we3", "e2we3", "e1we2we3"]
        );
    }

    #[test]
    fn merge_signs() {
        let (e1, e2, e3) = (Blade::gen(1), Blade::gen(2), Blade::gen(3));
        assert_eq!(e1.wedge_sign(e2), Some(1));
        assert_eq!(e2.wedge_sign(e1), Some(-1));
        assert_eq!(e1.wedge_sign(e1), None);
        // e3 ∧ e1we2 = e1we2we3 (two transpositions)
        assert_eq!(e3.wedge_sign(e1.union(e2)), Some(1));
        assert_eq!(e2.wedge_sign(e1.union(e3)), Some(-1));
        assert_eq!(Blade::from_word(&[3, 1, 2]), Some((1, Blade(7))));
        assert_eq!(Blade::from_word(&[2, 1]), Some((-1, Blade(3))));
        assert_eq!(Blade::from_word(&[2, 2]), None);
    }

    #[test]
    fn splits_of_e1we2() {
        let s: Vec<_> = Blade(3).splits().collect();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&(-1, Blade::gen(2), Blade::gen(1))));
        assert!(s.contains(&(1, Blade::gen(1), Blade::gen(2))));
    }
}
