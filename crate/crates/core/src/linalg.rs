//! Exact dense linear algebra over the rationals.

use num::{One, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut c = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    c[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    c
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Scalar::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    if !a[r][j].is_zero() {
                        let d = &f * &a[r][j];
                        a[i][j] -= d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, i)| r.iter().cloned().chain(i).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rank(a: &Matrix) -> usize {
    rref(&mut a.clone()).len()
}

pub fn det(a: &Matrix) -> Scalar {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

/// Incrementally built echelon basis that also records how each reduced
/// row combines the inserted vectors, to extract linear dependencies.
pub struct Dependency {
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    count: usize,
}

impl Default for Dependency {
    fn default() -> Self {
        Self::new()
    }
}

impl Dependency {
    pub fn new() -> Self {
        Dependency {
            rows: Vec::new(),
            count: 0,
        }
    }

    /// Inserts `v`. If it depends on the earlier vectors, returns
    /// coefficients `a` with `Σ a_k v_k = 0` and `a_last = 1`.
    pub fn push(&mut self, v: Vec<Scalar>) -> Option<Vec<Scalar>> {
        let k = self.count;
        self.count += 1;
        let mut v = v;
        let mut combo = vec![Scalar::zero(); k + 1];
        combo[k] = Scalar::one();
        for (p, row, rc) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(p) => {
                let inv = Scalar::one() / &v[p];
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in combo.iter_mut() {
                    *x *= &inv;
                }
                self.rows.push((p, v, combo));
                None
            }
        }
    }
}
